//! Window-certified decision procedures: left Ore, good Ore, schematic
//! witnesses, compatibility of ideals and condition (*).
//!
//! Every accept carries certificates: identities `Σ a_i b_i = Σ c_j d_j`
//! between products of ring elements plus membership side conditions.
//! [`reverify`] recomputes them from scratch.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::field::Field;
use crate::freealg::Element;
use crate::glin::{self, GradedSubspace, Matrix, SpanTracker, Subspace};
use crate::sgcore::{QuotientRing, SgRing};
use crate::SgkError;

/// Default bound on the powers of `s` tried by the Ore searches.
pub const DEFAULT_KMAX: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

/// `S = {s^k}` for a homogeneous `s`.
#[derive(Clone, Debug)]
pub struct OreSetSpec<F> {
    name: String,
    s: Element<F>,
    kmax: usize,
}

impl<F: Field> OreSetSpec<F> {
    pub fn new(name: &str, s: Element<F>, kmax: usize) -> Result<Self, SgkError> {
        if s.is_zero() || !s.is_homogeneous() {
            return Err(SgkError::NotHomogeneous(format!("Ore set {name} needs a nonzero homogeneous element")));
        }
        Ok(OreSetSpec {
            name: name.to_string(),
            s,
            kmax: kmax.max(1),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn element(&self) -> &Element<F> {
        &self.s
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn degree(&self) -> usize {
        self.s.max_degree().unwrap_or(0) as usize
    }

    /// Contains an element of positive degree.
    pub fn is_nontrivial(&self) -> bool {
        self.degree() >= 1
    }
}

/// An Ore set that passed [`check_left_ore`]; required by κ_S.
#[derive(Clone, Debug)]
pub struct VerifiedOre<F> {
    ring: Arc<SgRing<F>>,
    spec: OreSetSpec<F>,
}

impl<F: Field> VerifiedOre<F> {
    pub fn ring(&self) -> &Arc<SgRing<F>> {
        &self.ring
    }

    pub fn name(&self) -> &str {
        self.spec.name()
    }

    pub fn element(&self) -> &Element<F> {
        self.spec.element()
    }

    pub fn kmax(&self) -> usize {
        self.spec.kmax()
    }
}

/// `element ∈ space`, checked by membership on the window.
#[derive(Clone, Debug)]
pub struct Membership<F> {
    pub element: Element<F>,
    pub space_name: String,
    pub space: GradedSubspace<F>,
}

#[derive(Clone, Debug)]
pub struct Certificate<F> {
    pub claim: String,
    pub lhs: Vec<(Element<F>, Element<F>)>,
    pub rhs: Vec<(Element<F>, Element<F>)>,
    pub memberships: Vec<Membership<F>>,
}

impl<F: Field> Certificate<F> {
    fn identity(claim: String, lhs: Vec<(Element<F>, Element<F>)>, rhs: Vec<(Element<F>, Element<F>)>) -> Self {
        Certificate {
            claim,
            lhs,
            rhs,
            memberships: Vec::new(),
        }
    }

    pub fn to_json(&self, ring: &SgRing<F>) -> Value {
        let g = ring.gens();
        let side = |v: &[(Element<F>, Element<F>)]| -> Vec<Value> {
            v.iter().map(|(a, b)| json!([a.display(g), b.display(g)])).collect()
        };
        json!({
            "claim": self.claim,
            "lhs": side(&self.lhs),
            "rhs": side(&self.rhs),
            "memberships": self.memberships.iter().map(|m| json!([m.element.display(g), m.space_name])).collect::<Vec<_>>(),
        })
    }
}

/// Recomputes a certificate by exact multiplication and membership.
pub fn reverify<F: Field>(ring: &SgRing<F>, cert: &Certificate<F>) -> bool {
    let sum = |v: &[(Element<F>, Element<F>)]| {
        v.iter().fold(Element::zero(), |acc, (a, b)| acc.add(&ring.multiply(a, b)))
    };
    if sum(&cert.lhs) != sum(&cert.rhs) {
        return false;
    }
    cert.memberships.iter().all(|m| {
        ring.to_vector(&m.element)
            .ok()
            .and_then(|v| m.space.contains(&v).ok())
            .unwrap_or(false)
    })
}

/// Uniform result of every checker.
#[derive(Clone, Debug)]
pub struct CheckReport<F> {
    pub check: &'static str,
    pub verdict: Verdict,
    pub bound: usize,
    pub witness: Option<String>,
    pub certificates: Vec<Certificate<F>>,
    pub details: Value,
}

impl<F: Field> CheckReport<F> {
    fn new(check: &'static str, bound: usize) -> Self {
        CheckReport {
            check,
            verdict: Verdict::Pass,
            bound,
            witness: None,
            certificates: Vec::new(),
            details: json!({}),
        }
    }

    fn fail(&mut self, witness: String) {
        self.verdict = self.verdict.and(Verdict::Fail);
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }

    fn inconclusive(&mut self, note: String) {
        self.verdict = self.verdict.and(Verdict::Inconclusive);
        if self.verdict == Verdict::Inconclusive && self.witness.is_none() {
            self.witness = Some(note);
        }
    }

    pub fn all_certificates_verify(&self, ring: &SgRing<F>) -> bool {
        self.certificates.iter().all(|c| reverify(ring, c))
    }
}

fn display_product<F: Field>(ring: &SgRing<F>, a: &Element<F>, b: &Element<F>) -> String {
    let g = ring.gens();
    let wrap = |e: &Element<F>| {
        let s = e.display(g);
        if e.len() > 1 {
            format!("({s})")
        } else {
            s
        }
    };
    format!("{}*{}", wrap(a), wrap(b))
}

/// Left Ore for `S = {s^k}`: for every algebra generator `g` some
/// `s^a g ∈ R s` with `a ≤ kmax`. Sums and products of elements with this
/// property keep it, so generators suffice.
pub fn check_left_ore<F: Field>(ring: &Arc<SgRing<F>>, spec: &OreSetSpec<F>) -> (CheckReport<F>, Option<VerifiedOre<F>>) {
    let bound = ring.bound();
    let mut report = CheckReport::new("ore", bound);
    let s = spec.element();
    let ds = spec.degree();
    let gens = ring.gens().clone();
    let mut witnesses = Vec::new();
    if ds > bound {
        report.inconclusive(format!("{} does not fit the window", s.display(&gens)));
        return (report, None);
    }
    let cols = ring.multiplication_columns(s, bound - ds, false);
    let mut tracker = SpanTracker::new(ring.ext().total());
    for c in &cols {
        tracker.offer(c);
    }
    let kept: Vec<usize> = tracker.independent().to_vec();
    for g in 0..gens.len() {
        let x = Element::generator(&gens, g);
        let dg = gens.degree(g) as usize;
        let mut all_fit = true;
        let mut found = None;
        for a in 0..=spec.kmax() {
            if a * ds + dg > bound {
                all_fit = false;
                break;
            }
            let sa = ring.presentation().power(s, a as u32);
            let target = ring.multiply(&sa, &x);
            if let Some(coef) = tracker.express(&ring.ext_vector(&target)) {
                let mut u = Element::zero();
                for (c, &i) in coef.iter().zip(&kept) {
                    u.add_term(ring.monomial(i).clone(), c.clone());
                }
                found = Some((sa, u));
                break;
            }
        }
        match found {
            Some((sa, u)) => {
                let claim = format!("{} = {}", display_product(ring, &sa, &x), display_product(ring, &u, s));
                witnesses.push(claim.clone());
                report.certificates.push(Certificate::identity(claim, vec![(sa, x)], vec![(u, s.clone())]));
            }
            None if all_fit => report.fail(format!(
                "no a <= {} with {}^a*{} in R*{}",
                spec.kmax(),
                s.display(&gens),
                gens.name(g),
                s.display(&gens)
            )),
            None => report.inconclusive(format!("powers of {} leave the window before {} is resolved", s.display(&gens), gens.name(g))),
        }
    }
    report.details = json!({ "ore_set": spec.name(), "witnesses": witnesses });
    let verified = (report.verdict == Verdict::Pass).then(|| VerifiedOre {
        ring: ring.clone(),
        spec: spec.clone(),
    });
    (report, verified)
}

/// Good Ore: left Ore, (i) every `s^k ∈ R″`, (ii) for `r ∈ R′` and `s^a`
/// some `u ∈ R′` and `s^b` with `u·s^a = s^b·r`.
pub fn check_good_ore<F: Field>(ring: &Arc<SgRing<F>>, spec: &OreSetSpec<F>) -> CheckReport<F> {
    let bound = ring.bound();
    let (ore, _) = check_left_ore(ring, spec);
    let mut report = CheckReport::new("good-ore", bound);
    report.verdict = ore.verdict;
    report.witness = ore.witness.clone();
    report.certificates = ore.certificates;
    let gens = ring.gens().clone();
    let s = spec.element();
    let ds = spec.degree();
    let rw = ring.window().clone();
    // (i)
    let mut condition_i = true;
    for k in 1..=spec.kmax() {
        if k * ds > bound {
            break;
        }
        let sk = ring.presentation().power(s, k as u32);
        let v = ring.to_vector(&sk).expect("degree bounded");
        if ring.r_double_prime(k * ds).contains(&rw.block(&v, k * ds)) {
            continue;
        }
        condition_i = false;
        let msg = match ring.double_prime_witness(&sk) {
            Some(w) => {
                let prod = if w.left_side {
                    display_product(ring, &w.factor, &sk)
                } else {
                    display_product(ring, &sk, &w.factor)
                };
                format!("{prod} = {} ∉ R_{}", w.product.display(&gens), w.degree)
            }
            None => format!("{} ∉ R''", sk.display(&gens)),
        };
        report.verdict = Verdict::Fail;
        report.witness = Some(msg);
        break;
    }
    // (ii)
    let mut uncertified = 0;
    let mut checked = 0;
    let primes: Vec<Subspace<F>> = (0..=bound).map(|n| ring.r_prime(n)).collect();
    if condition_i {
        'outer: for n in 0..=bound {
            for r in primes[n].basis() {
                let re = ring.element(&rw.embed(r, n));
                for a in 1..=spec.kmax() {
                    if n + a * ds > bound {
                        continue;
                    }
                    let sa = ring.presentation().power(s, a as u32);
                    let mut found = None;
                    for b in 0..=spec.kmax() {
                        let top = n + b * ds;
                        if top > bound || b < a && n < (a - b) * ds {
                            continue;
                        }
                        let du = n + b * ds - a * ds;
                        let sb = ring.presentation().power(s, b as u32);
                        let target = ring.to_vector(&ring.multiply(&sb, &re)).expect("degree bounded");
                        let basis: Vec<Element<F>> = primes[du]
                            .basis()
                            .iter()
                            .map(|u| ring.element(&rw.embed(u, du)))
                            .collect();
                        let cols: Vec<Vec<F>> = basis
                            .iter()
                            .map(|u| ring.to_vector(&ring.multiply(u, &sa)).expect("degree bounded"))
                            .collect();
                        let m = Matrix::from_columns(&cols, rw.total());
                        if let Some(c) = glin::solve_particular(&m, &target) {
                            let u = basis.iter().zip(&c).fold(Element::zero(), |acc, (e, x)| acc.add(&e.scale(x)));
                            found = Some((u, sb));
                            break;
                        }
                    }
                    checked += 1;
                    match found {
                        Some((u, sb)) => {
                            let claim = format!("{} = {}", display_product(ring, &u, &sa), display_product(ring, &sb, &re));
                            let mut cert = Certificate::identity(claim, vec![(u.clone(), sa)], vec![(sb, re.clone())]);
                            cert.memberships.push(Membership {
                                element: u,
                                space_name: "R'".into(),
                                space: ring.r_prime_space(),
                            });
                            report.certificates.push(cert);
                        }
                        None => {
                            uncertified += 1;
                            report.inconclusive(format!(
                                "no exchange found for r = {} and s^{a} within the window",
                                re.display(&gens)
                            ));
                            if uncertified > 16 {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
    report.details = json!({
        "ore_set": spec.name(),
        "left_ore": ore.verdict,
        "condition_i": condition_i,
        "exchange_pairs_checked": checked,
        "exchange_pairs_uncertified": uncertified,
    });
    report
}

/// Left ideal `Σ R·x` on the window, with coefficient tracking.
struct LeftIdealSpan<F> {
    tracker: SpanTracker<F>,
    /// For each offered column: (monomial index, sample index).
    origin: Vec<(usize, usize)>,
}

impl<F: Field> LeftIdealSpan<F> {
    fn new(ring: &SgRing<F>, xs: &[Element<F>]) -> Self {
        let bound = ring.bound();
        let w = ring.window();
        let mut tracker = SpanTracker::new(w.total());
        let mut origin = Vec::new();
        for (k, x) in xs.iter().enumerate() {
            let dx = x.max_degree().unwrap_or(0) as usize;
            if dx > bound {
                continue;
            }
            for i in 0..w.range(bound - dx).end {
                let p = ring.multiply(&Element::monomial(ring.monomial(i).clone()), x);
                let (v, _) = ring.clip(&p);
                tracker.offer(&v);
                origin.push((i, k));
            }
        }
        LeftIdealSpan { tracker, origin }
    }

    /// Coefficients `r_k` with `v = Σ r_k x_k`.
    fn express(&self, ring: &SgRing<F>, v: &[F], count: usize) -> Option<Vec<Element<F>>> {
        let c = self.tracker.express(v)?;
        let mut out = vec![Element::zero(); count];
        for (x, &j) in c.iter().zip(self.tracker.independent()) {
            let (i, k) = self.origin[j];
            out[k].add_term(ring.monomial(i).clone(), x.clone());
        }
        Some(out)
    }
}

/// Window spaces of `(R_{≥t})^m`, computed on demand.
pub struct PowerCache<'a, F> {
    ring: &'a SgRing<F>,
    cache: HashMap<usize, Vec<Subspace<F>>>,
    mmax: usize,
}

impl<'a, F: Field> PowerCache<'a, F> {
    pub fn new(ring: &'a SgRing<F>, mmax: usize) -> Self {
        PowerCache {
            ring,
            cache: HashMap::new(),
            mmax,
        }
    }

    pub fn get(&mut self, t: usize, m: usize) -> &Subspace<F> {
        let ring = self.ring;
        let mmax = self.mmax.max(m);
        let entry = self.cache.entry(t).or_insert_with(|| ring.ideal_powers(&ring.r_geq(t).space, mmax));
        if entry.len() < m {
            *entry = ring.ideal_powers(&ring.r_geq(t).space, m);
        }
        &entry[m - 1]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SchematicWitness {
    pub sample: Vec<String>,
    pub t: usize,
    pub m: usize,
    pub monotone: bool,
}

/// Schematic witness search. Each sample tuple holds one element from each
/// Ore set; the tuple of the generating elements is always added.
pub fn check_schematic<F: Field>(
    ring: &Arc<SgRing<F>>,
    ore_sets: &[OreSetSpec<F>],
    samples: &[Vec<Element<F>>],
    mmax: usize,
) -> Result<CheckReport<F>, SgkError> {
    let bound = ring.bound();
    let gens = ring.gens().clone();
    let mut report = CheckReport::new("schematic", bound);
    for spec in ore_sets {
        if !spec.is_nontrivial() {
            report.fail(format!("Ore set {} is trivial", spec.name()));
        }
    }
    let mut good = Vec::new();
    for spec in ore_sets {
        let g = check_good_ore(ring, spec);
        good.push(json!({ "ore_set": spec.name(), "verdict": g.verdict }));
        match g.verdict {
            Verdict::Pass => report.certificates.extend(g.certificates),
            Verdict::Fail => report.fail(format!("Ore set {} is not good: {}", spec.name(), g.witness.unwrap_or_default())),
            Verdict::Inconclusive => report.inconclusive(format!("Ore set {} is not certified good", spec.name())),
        }
    }
    let mut tuples: Vec<Vec<Element<F>>> = Vec::new();
    for sample in samples {
        if sample.len() != ore_sets.len() {
            return Err(SgkError::InvalidArgument(format!(
                "sample has {} entries but {} Ore sets were given",
                sample.len(),
                ore_sets.len()
            )));
        }
        for (x, spec) in sample.iter().zip(ore_sets) {
            let in_set = (0..=bound).any(|k| &ring.presentation().power(spec.element(), k as u32) == x);
            if !in_set {
                return Err(SgkError::InvalidArgument(format!(
                    "{} is not a power of {}",
                    x.display(&gens),
                    spec.element().display(&gens)
                )));
            }
        }
        tuples.push(sample.clone());
    }
    let generating: Vec<Element<F>> = ore_sets.iter().map(|s| s.element().clone()).collect();
    if !tuples.contains(&generating) {
        tuples.push(generating);
    }
    let mut cache = PowerCache::new(ring, mmax);
    let mut found = Vec::new();
    let w = ring.window().clone();
    for tuple in &tuples {
        let names: Vec<String> = tuple.iter().map(|x| x.display(&gens)).collect();
        let span = LeftIdealSpan::new(ring, tuple);
        let mut hit = None;
        let mut uncovered = None;
        'search: for m in 1..=mmax {
            for t in 1..=bound {
                let p = cache.get(t, m).clone();
                if p.is_zero() {
                    continue;
                }
                let mut certs = Vec::new();
                let mut miss = None;
                for v in p.basis() {
                    match span.express(ring, v, tuple.len()) {
                        Some(coef) => {
                            let pe = ring.element(v);
                            let rhs: Vec<(Element<F>, Element<F>)> = coef.into_iter().zip(tuple.iter().cloned()).filter(|(c, _)| !c.is_zero()).collect();
                            let claim = format!("{} ∈ {}", pe.display(&gens), names.iter().map(|n| format!("R*{n}")).collect::<Vec<_>>().join(" + "));
                            certs.push(Certificate::identity(claim, vec![(pe, Element::one(&gens))], rhs));
                        }
                        None => {
                            miss = Some(ring.display(v));
                            break;
                        }
                    }
                }
                if let Some(mv) = miss {
                    if t == bound && m == 1 {
                        uncovered = Some(mv);
                    }
                    continue;
                }
                let next = cache.get(t + 1, m).clone();
                let monotone = next.basis().iter().all(|v| span.tracker.contains(v)) && next.is_subspace_of(&p);
                report.certificates.extend(certs);
                hit = Some(SchematicWitness {
                    sample: names.clone(),
                    t,
                    m,
                    monotone,
                });
                break 'search;
            }
        }
        let _ = &w;
        match hit {
            Some(h) => found.push(h),
            None => report.fail(format!(
                "sample ({}): {} ∉ {}",
                names.join(", "),
                uncovered.unwrap_or_else(|| "?".into()),
                names.iter().map(|n| format!("R*{n}")).collect::<Vec<_>>().join(" + ")
            )),
        }
    }
    report.details = json!({
        "good_ore": good,
        "witnesses": found,
    });
    Ok(report)
}

/// Compatibility: the image of `R′` in `R/J` equals `(R/J)′`, degreewise.
pub fn check_compatible<F: Field>(q: &QuotientRing<F>) -> CheckReport<F> {
    let ring = q.ring();
    let bound = ring.bound();
    let gens = ring.gens().clone();
    let mut report = CheckReport::new("compatible", bound);
    let rw = ring.window().clone();
    let qg = q.grading().clone();
    let prime_space = ring.r_prime_space();
    let mut dims = Vec::new();
    for n in 0..=bound {
        let image = q.r_prime_image(n);
        let inside = q.r_prime(n);
        dims.push(json!([image.dim(), inside.dim()]));
        if image != inside {
            let extra = inside
                .basis()
                .iter()
                .find(|v| !image.contains(v))
                .map(|v| (v, "in (R/J)' but not in the image of R'"))
                .or_else(|| image.basis().iter().find(|v| !inside.contains(v)).map(|v| (v, "in the image of R' but not in (R/J)'")));
            let (v, why) = extra.expect("different subspaces");
            report.fail(format!("degree {n}: {} is {why}", q.display(&qg.embed(v, n))));
            continue;
        }
        let rp = ring.r_prime(n);
        let slice = q.ideal().space().slice(n);
        let images: Vec<Vec<F>> = rp.basis().iter().map(|r| slice.quotient_coords(r)).collect();
        let m = Matrix::from_columns(&images, qg.dim(n));
        for b in inside.basis() {
            let c = glin::solve_particular(&m, b).expect("same subspace");
            let mut r = vec![F::zero(); rw.dim(n)];
            for (ci, ri) in c.iter().zip(rp.basis()) {
                glin::add_scaled(&mut r, ci, ri);
            }
            let re = ring.element(&rw.embed(&r, n));
            let lifted = ring.element(&q.lift(&qg.embed(b, n)));
            let j = lifted.sub(&re);
            let one = Element::one(&gens);
            let mut cert = Certificate::identity(
                format!("{} = {} + ({})", lifted.display(&gens), re.display(&gens), j.display(&gens)),
                vec![(lifted, one.clone())],
                vec![(re.clone(), one.clone()), (j.clone(), one)],
            );
            cert.memberships.push(Membership {
                element: re,
                space_name: "R'".into(),
                space: prime_space.clone(),
            });
            cert.memberships.push(Membership {
                element: j,
                space_name: q.ideal().name().to_string(),
                space: q.ideal().space().clone(),
            });
            report.certificates.push(cert);
        }
    }
    report.details = json!({ "ideal": q.ideal().name(), "dims_image_vs_quotient_prime": dims });
    report
}

/// Sampling bounds for [`check_star`].
#[derive(Clone, Debug)]
pub struct StarBounds {
    pub samples: Vec<(usize, usize)>,
    pub tx_max: usize,
    pub nx_max: usize,
}

impl Default for StarBounds {
    fn default() -> Self {
        let mut samples = Vec::new();
        for t in 1..=3 {
            for n in 1..=3 {
                samples.push((t, n));
            }
        }
        StarBounds { samples, tx_max: 3, nx_max: 3 }
    }
}

/// Condition (*): for `x ∈ J ∩ (R_{≥t})^n` some `(R_{≥t_x})^{n_x}·x ⊆
/// J·(R_{≥t})^n`, checked on products that stay in the window. An element
/// is rejected only when every `(t_x, n_x)` in the search range was tested
/// and failed; if some pair had no product inside the window it is counted
/// as uncertified instead.
pub fn check_star<F: Field>(q: &QuotientRing<F>, bounds: &StarBounds) -> CheckReport<F> {
    let ring = q.ring();
    let bound = ring.bound();
    let gens = ring.gens().clone();
    let w = ring.window().clone();
    let mut report = CheckReport::new("star", bound);
    let mut cache = PowerCache::new(ring, 3);
    let j_flat = q.ideal().space().to_flat();
    let j_basis: Vec<(usize, Element<F>)> = q
        .ideal()
        .space()
        .graded_basis()
        .into_iter()
        .map(|(d, v)| (d, ring.element(&v)))
        .collect();
    let mut per_sample = Vec::new();
    let mut beyond = 0usize;
    for &(t, n) in &bounds.samples {
        let p = cache.get(t, n).clone();
        let x_space = j_flat.intersect(&p).expect("same ambient");
        let mut tracker = SpanTracker::new(w.total());
        let mut origin = Vec::new();
        for (dj, j) in &j_basis {
            for pv in p.basis() {
                let dp = w.max_degree(pv).unwrap_or(0);
                if dj + dp > bound {
                    continue;
                }
                let pe = ring.element(pv);
                let prod = ring.multiply(j, &pe);
                tracker.offer(&ring.to_vector(&prod).expect("degree bounded"));
                origin.push((j.clone(), pe));
            }
        }
        let mut results = Vec::new();
        for x in x_space.basis() {
            let xe = ring.element(x);
            let dx = w.max_degree(x).unwrap_or(0);
            let mut outcome = None;
            let mut untestable = false;
            'search: for nx in 1..=bounds.nx_max {
                for tx in 1..=bounds.tx_max {
                    let qs = cache.get(tx, nx).clone();
                    let fitting: Vec<&Vec<F>> = qs.basis().iter().filter(|v| w.max_degree(v).unwrap_or(0) + dx <= bound).collect();
                    if fitting.is_empty() {
                        untestable = true;
                        continue;
                    }
                    let mut certs = Vec::new();
                    let mut ok = true;
                    for qv in fitting {
                        let qe = ring.element(qv);
                        let prod = ring.multiply(&qe, &xe);
                        match tracker.express(&ring.to_vector(&prod).expect("degree bounded")) {
                            Some(c) => {
                                let rhs: Vec<(Element<F>, Element<F>)> = c
                                    .iter()
                                    .zip(tracker.independent())
                                    .filter(|(ci, _)| !ci.is_zero())
                                    .map(|(ci, &k)| (origin[k].0.scale(ci), origin[k].1.clone()))
                                    .collect();
                                certs.push(Certificate::identity(
                                    format!("{} ∈ J*(R_>={t})^{n}", display_product(ring, &qe, &xe)),
                                    vec![(qe, xe.clone())],
                                    rhs,
                                ));
                            }
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok {
                        report.certificates.extend(certs);
                        outcome = Some((tx, nx));
                        break 'search;
                    }
                }
            }
            match outcome {
                Some((tx, nx)) => results.push(json!({ "x": xe.display(&gens), "t_x": tx, "n_x": nx })),
                None if untestable => beyond += 1,
                None => report.fail(format!(
                    "(t, n) = ({t}, {n}): no (t_x, n_x) with t_x <= {}, n_x <= {} pushes {} into J*(R_>={t})^{n}",
                    bounds.tx_max,
                    bounds.nx_max,
                    xe.display(&gens)
                )),
            }
        }
        per_sample.push(json!({ "t": t, "n": n, "elements": results }));
    }
    report.details = json!({
        "ideal": q.ideal().name(),
        "samples": per_sample,
        "beyond_window": beyond,
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::*;
    use crate::sgcore::{SgIdeal, Side};
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    fn ring(p: crate::Presentation<Q>, d: usize) -> Arc<SgRing<Q>> {
        Arc::new(SgRing::new(p, d).unwrap())
    }

    fn mono(r: &SgRing<Q>, e: &[u32]) -> Element<Q> {
        Element::monomial(r.gens().monomial(e.to_vec()))
    }

    fn ore(r: &SgRing<Q>, name: &str, e: &[u32]) -> OreSetSpec<Q> {
        OreSetSpec::new(name, mono(r, e), DEFAULT_KMAX).unwrap()
    }

    #[test]
    fn left_ore_examples() {
        let qp = ring(quantum_plane(q(2)), 8);
        let (r, v) = check_left_ore(&qp, &ore(&qp, "Sx", &[1, 0]));
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(v.is_some());
        assert!(r.all_certificates_verify(&qp));
        let a1 = ring(weyl_algebra(), 6);
        let (r, _) = check_left_ore(&a1, &ore(&a1, "Sx", &[1, 0]));
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.all_certificates_verify(&a1));
        let claims: Vec<&str> = r.certificates.iter().map(|c| c.claim.as_str()).collect();
        assert!(claims.contains(&"x^2*y = (x*y - 1)*x"), "{claims:?}");
        let kxy = ring(polynomial_ring(&["x", "y"]), 6);
        assert_eq!(check_left_ore(&kxy, &ore(&kxy, "Sx", &[1, 0])).0.verdict, Verdict::Pass);
        let z = ring(annihilating_plane(), 6);
        assert_eq!(check_left_ore(&z, &ore(&z, "Sx", &[1, 0])).0.verdict, Verdict::Fail);
    }

    #[test]
    fn good_ore_examples() {
        let qp = ring(quantum_plane(q(2)), 8);
        let r = check_good_ore(&qp, &ore(&qp, "Sx", &[1, 0]));
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.all_certificates_verify(&qp));
        let a1 = ring(weyl_algebra(), 6);
        let r = check_good_ore(&a1, &ore(&a1, "Sx", &[1, 0]));
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witness.as_deref(), Some("y*x = x*y + 1 ∉ R_2"));
        let kxy = ring(polynomial_ring(&["x", "y"]), 6);
        assert_eq!(check_good_ore(&kxy, &ore(&kxy, "Sxy", &[1, 1])).verdict, Verdict::Pass);
    }

    #[test]
    fn schematic_examples() {
        let qp = ring(quantum_plane(q(2)), 8);
        let sets = vec![ore(&qp, "Sx", &[1, 0]), ore(&qp, "Sy", &[0, 1])];
        let sample = vec![mono(&qp, &[2, 0]), mono(&qp, &[0, 3])];
        let r = check_schematic(&qp, &sets, &[sample], 3).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.details["witnesses"][0]["t"], 4);
        assert_eq!(r.details["witnesses"][0]["m"], 1);
        assert_eq!(r.details["witnesses"][0]["monotone"], true);
        assert!(r.all_certificates_verify(&qp));
        let kxy = ring(polynomial_ring(&["x", "y"]), 6);
        let sets = vec![ore(&kxy, "Sx", &[1, 0]), ore(&kxy, "Sy", &[0, 1])];
        let r = check_schematic(&kxy, &sets, &[], 3).unwrap();
        assert_eq!(r.details["witnesses"][0]["t"], 1);
        assert_eq!(r.details["witnesses"][0]["m"], 1);
        let r = check_schematic(&qp, &[ore(&qp, "Sx", &[1, 0])], &[], 3).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.witness.unwrap().contains("y^8 ∉ R*x"));
    }

    #[test]
    fn compatible_examples() {
        let qp = ring(quantum_plane(q(2)), 6);
        let j = SgIdeal::generated(&qp, "Jx", Side::TwoSided, &[mono(&qp, &[1, 0])]).unwrap();
        let quo = QuotientRing::new(qp.clone(), j).unwrap();
        let r = check_compatible(&quo);
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.all_certificates_verify(&qp));
        let a1 = ring(weyl_algebra(), 6);
        let j = SgIdeal::generated(&a1, "J", Side::TwoSided, &[mono(&a1, &[1, 0])]).unwrap();
        assert_eq!(check_compatible(&QuotientRing::new(a1.clone(), j).unwrap()).verdict, Verdict::Pass);
        let zero = QuotientRing::new(a1.clone(), SgIdeal::zero(&a1)).unwrap();
        assert_eq!(check_compatible(&zero).verdict, Verdict::Pass);
        let lie = ring(lie_plane(), 6);
        let j = SgIdeal::generated(&lie, "Jx", Side::TwoSided, &[mono(&lie, &[1, 0])]).unwrap();
        let r = check_compatible(&QuotientRing::new(lie.clone(), j).unwrap());
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.witness.unwrap().starts_with("degree 1: y"));
    }

    #[test]
    fn star_examples() {
        let kxy = ring(polynomial_ring(&["x", "y"]), 6);
        let j = SgIdeal::generated(&kxy, "Jx", Side::TwoSided, &[mono(&kxy, &[1, 0])]).unwrap();
        let r = check_star(&QuotientRing::new(kxy.clone(), j).unwrap(), &StarBounds::default());
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.all_certificates_verify(&kxy));
        let qp = ring(quantum_plane(q(2)), 6);
        let j = SgIdeal::generated(&qp, "Jx", Side::TwoSided, &[mono(&qp, &[1, 0])]).unwrap();
        let r = check_star(&QuotientRing::new(qp.clone(), j).unwrap(), &StarBounds::default());
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.all_certificates_verify(&qp));
        let zero = QuotientRing::new(qp.clone(), SgIdeal::zero(&qp)).unwrap();
        assert_eq!(check_star(&zero, &StarBounds::default()).verdict, Verdict::Pass);
        // x^2 needs t_x = 1, n_x = 2, which leaves a window of size 3
        let k3 = ring(polynomial_ring(&["x", "y", "z"]), 3);
        let j = SgIdeal::generated(&k3, "J", Side::TwoSided, &[mono(&k3, &[2, 0, 0])]).unwrap();
        let r = check_star(&QuotientRing::new(k3.clone(), j).unwrap(), &StarBounds::default());
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.details["beyond_window"].as_u64().unwrap() > 0);
        // y*x = 0: x*y is never pushed into J*(R_>=1), and D = 10 tests every pair
        let z = ring(annihilating_plane(), 10);
        let j = SgIdeal::generated(&z, "Jy", Side::TwoSided, &[mono(&z, &[0, 1])]).unwrap();
        let r = check_star(&QuotientRing::new(z.clone(), j).unwrap(), &StarBounds::default());
        assert_eq!(r.verdict, Verdict::Fail);
        let small = ring(annihilating_plane(), 6);
        let j = SgIdeal::generated(&small, "Jy", Side::TwoSided, &[mono(&small, &[0, 1])]).unwrap();
        let r = check_star(&QuotientRing::new(small.clone(), j).unwrap(), &StarBounds::default());
        assert_ne!(r.verdict, Verdict::Fail);
    }
}
