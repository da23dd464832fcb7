//! SG modules on a window: presented modules, submodules and quotients,
//! the degreewise tests, LSG verification, torsion and κ_S.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::checkers::VerifiedOre;
use crate::field::Field;
use crate::freealg::{Element, Monomial};
use crate::glin::{self, GradedMap, GradedSubspace, Grading, Matrix, Subspace};
use crate::sgcore::{plain_closure, sg_closure, QuotientRing, Side, SgRing, WindowActions};
use crate::SgkError;

/// Which ring the module is considered over.
#[derive(Clone, Debug)]
pub enum Scalars<F> {
    Ring,
    /// A module over `R/J`, stored as an `R`-module annihilated by `J`.
    Quotient(Arc<QuotientRing<F>>),
}

/// A left SG module truncated to degrees `0..=D`. Generator actions are
/// stored with the part above the window dropped; `spill` records where
/// that happened.
#[derive(Clone)]
pub struct SgModule<F> {
    name: String,
    ring: Arc<SgRing<F>>,
    grading: Grading,
    labels: Vec<String>,
    actions: Vec<Matrix<F>>,
    spill: Vec<Vec<bool>>,
    graded: bool,
    truncated: bool,
    scalars: Scalars<F>,
}

impl<F: Field> std::fmt::Debug for SgModule<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SgModule")
            .field("name", &self.name)
            .field("dims", &self.grading.dims())
            .field("actions", &self.actions)
            .field("graded", &self.graded)
            .field("truncated", &self.truncated)
            .finish()
    }
}

impl<F: Field> SgModule<F> {
    /// Free module on generators `(name, degree)`.
    pub fn free(ring: Arc<SgRing<F>>, name: &str, gens: &[(String, usize)]) -> Result<Self, SgkError> {
        Self::presented(ring, name, gens, &[])
    }

    /// `R` as a left module over itself, labelled by monomials.
    pub fn regular(ring: Arc<SgRing<F>>) -> Self {
        let mut m = Self::free(ring, "R", &[("1".into(), 0)]).expect("degree 0 generator fits");
        m.labels = (0..m.grading.total())
            .map(|i| m.ring.monomial(i).display(m.ring.gens()))
            .collect();
        m
    }

    /// Quotient of the free module on `gens` by the SG closure of the
    /// relations; each relation is a list of `(ring element, generator)`.
    pub fn presented(
        ring: Arc<SgRing<F>>,
        name: &str,
        gens: &[(String, usize)],
        relations: &[Vec<(Element<F>, usize)>],
    ) -> Result<Self, SgkError> {
        let bound = ring.bound();
        let rw = ring.window().clone();
        let mut dims = vec![0; bound + 1];
        let mut labels = Vec::new();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut cells = Vec::new();
        for d in 0..=bound {
            for (i, (gname, gd)) in gens.iter().enumerate() {
                if *gd > d {
                    continue;
                }
                for r in rw.range(d - gd) {
                    let m = ring.monomial(r);
                    index.insert((i, r), cells.len());
                    cells.push((i, r));
                    labels.push(if m.is_one() {
                        gname.clone()
                    } else {
                        format!("{}*{}", m.display(ring.gens()), gname)
                    });
                    dims[d] += 1;
                }
            }
        }
        let grading = Grading::new(dims);
        let total = grading.total();
        let mut actions = Vec::new();
        let mut spill = Vec::new();
        for g in 0..ring.gens().len() {
            let mut cols = Vec::with_capacity(total);
            let mut sp = Vec::with_capacity(total);
            for &(i, r) in &cells {
                let mut e = vec![F::zero(); rw.total()];
                e[r] = F::one();
                let w = ring.left_generator(g, &e);
                let mut col = vec![F::zero(); total];
                let mut dropped = false;
                for (k, c) in w.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    match index.get(&(i, k)) {
                        Some(&j) => col[j] = c.clone(),
                        None => dropped = true,
                    }
                }
                cols.push(col);
                sp.push(dropped);
            }
            actions.push(Matrix::from_columns(&cols, total));
            spill.push(sp);
        }
        let free = SgModule {
            name: name.to_string(),
            graded: ring.is_graded(),
            ring: ring.clone(),
            grading,
            labels,
            actions,
            spill,
            truncated: false,
            scalars: Scalars::Ring,
        };
        if relations.is_empty() {
            return Ok(free);
        }
        let mut vecs = Vec::new();
        for rel in relations {
            let mut v = vec![F::zero(); total];
            for (e, i) in rel {
                for (m, c) in e.terms() {
                    let r = ring.index_of(m).filter(|&r| r < rw.total());
                    let cell = r.and_then(|r| index.get(&(*i, r)));
                    let Some(&j) = cell else {
                        return Err(SgkError::WindowOverflow(format!(
                            "relation term {}*{} is above degree {bound}",
                            m.display(ring.gens()),
                            gens[*i].0
                        )));
                    };
                    v[j] = v[j].clone() + c.clone();
                }
            }
            vecs.push(v);
        }
        let closure = sg_closure(&free, &vecs);
        let mut q = free.quotient(&closure.space)?;
        q.truncated = closure.truncated;
        Ok(q)
    }

    /// Module with an explicit homogeneous basis `(label, degree)` and one
    /// action matrix per ring generator (columns are images of basis
    /// vectors). Checks the SG condition and the ring relations on the
    /// window.
    pub fn from_action(
        ring: Arc<SgRing<F>>,
        name: &str,
        basis: &[(String, usize)],
        actions: &[Matrix<F>],
    ) -> Result<Self, SgkError> {
        let bound = ring.bound();
        if let Some((l, d)) = basis.iter().find(|(_, d)| *d > bound) {
            return Err(SgkError::WindowOverflow(format!("basis element {l} has degree {d} > {bound}")));
        }
        if actions.len() != ring.gens().len() {
            return Err(SgkError::InvalidArgument("one action matrix per generator is required".into()));
        }
        let n = basis.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (basis[i].1, i));
        let mut pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let mut dims = vec![0; bound + 1];
        for (_, d) in basis {
            dims[*d] += 1;
        }
        let grading = Grading::new(dims);
        let labels = order.iter().map(|&i| basis[i].0.clone()).collect();
        let mut acts = Vec::new();
        let mut graded = true;
        for (g, a) in actions.iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return Err(SgkError::InvalidArgument(format!("action of generator {g} is not {n}x{n}")));
            }
            let dg = ring.gens().degree(g) as usize;
            let mut m = Matrix::zeros(n, n);
            for j in 0..n {
                for i in 0..n {
                    let c = a.get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    if basis[i].1 > basis[j].1 + dg {
                        return Err(SgkError::InvalidArgument(format!(
                            "{} * {} has a component of degree above {}",
                            ring.gens().name(g),
                            basis[j].0,
                            basis[j].1 + dg
                        )));
                    }
                    if basis[i].1 != basis[j].1 + dg {
                        graded = false;
                    }
                    m.set(pos[i], pos[j], c.clone());
                }
            }
            acts.push(m);
        }
        let module = SgModule {
            name: name.to_string(),
            graded: graded && ring.is_graded(),
            spill: vec![vec![false; n]; actions.len()],
            ring,
            grading,
            labels,
            actions: acts,
            truncated: false,
            scalars: Scalars::Ring,
        };
        module.check_relations()?;
        Ok(module)
    }

    fn check_relations(&self) -> Result<(), SgkError> {
        let gens = self.ring.gens();
        for rule in self.ring.presentation().rules() {
            let (j, i) = rule.lhs;
            let dl = (gens.degree(j) + gens.degree(i)) as usize;
            for b in 0..self.grading.total() {
                if self.grading.degree_of(b) + dl > self.ring.bound() {
                    continue;
                }
                let e = unit::<F>(self.grading.total(), b);
                let lhs = self.actions[j].apply(&self.actions[i].apply(&e));
                let (rhs, _) = self.act(&rule.rhs, &e);
                if lhs != rhs {
                    return Err(SgkError::InvalidPresentation(format!(
                        "action violates {}*{} -> {} on {}",
                        gens.name(j),
                        gens.name(i),
                        rule.rhs.display(gens),
                        self.labels[b]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn ring(&self) -> &Arc<SgRing<F>> {
        &self.ring
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn dims(&self) -> Vec<usize> {
        self.grading.dims().to_vec()
    }

    pub fn total(&self) -> usize {
        self.grading.total()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn action(&self, g: usize) -> &Matrix<F> {
        &self.actions[g]
    }

    pub fn actions(&self) -> &[Matrix<F>] {
        &self.actions
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// Whether the relation closure hit products above the window in a
    /// non-graded situation.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub(crate) fn with_truncated(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }

    pub fn scalars(&self) -> &Scalars<F> {
        &self.scalars
    }

    pub fn quotient_ring(&self) -> Option<&Arc<QuotientRing<F>>> {
        match &self.scalars {
            Scalars::Quotient(q) => Some(q),
            Scalars::Ring => None,
        }
    }

    /// Considers the module over `R/J`, checking that `J` acts as zero on
    /// the window.
    pub fn over_quotient(mut self, q: Arc<QuotientRing<F>>) -> Result<Self, SgkError> {
        if !Arc::ptr_eq(q.ring(), &self.ring) {
            return Err(SgkError::RingMismatch(format!("{} is not over the ring of the quotient", self.name)));
        }
        if let Some((j, b)) = self.annihilation_failure(q.ideal().space()) {
            return Err(SgkError::RingMismatch(format!(
                "{} is not annihilated by {}: ({}) * {} != 0",
                self.name,
                q.ideal().name(),
                j,
                b
            )));
        }
        self.scalars = Scalars::Quotient(q);
        Ok(self)
    }

    /// Forgets the quotient structure.
    pub fn over_ring(mut self) -> Self {
        self.scalars = Scalars::Ring;
        self
    }

    fn annihilation_failure(&self, ideal: &GradedSubspace<F>) -> Option<(String, String)> {
        for (dj, j) in ideal.graded_basis() {
            let je = self.ring.element(&j);
            for b in 0..self.total() {
                if dj + self.grading.degree_of(b) > self.ring.bound() {
                    continue;
                }
                let (w, _) = self.act(&je, &unit(self.total(), b));
                if !glin::is_zero_vec(&w) {
                    return Some((self.ring.display(&j), self.labels[b].clone()));
                }
            }
        }
        None
    }

    /// `r·v` by composing generator actions; the flag reports dropped
    /// components above the window.
    pub fn act(&self, r: &Element<F>, v: &[F]) -> (Vec<F>, bool) {
        let mut out = vec![F::zero(); self.total()];
        let mut dropped = false;
        let mut memo: HashMap<Monomial, (Vec<F>, bool)> = HashMap::new();
        for (m, c) in r.terms() {
            let (w, d) = self.act_monomial(m, v, &mut memo);
            dropped |= d;
            glin::add_scaled(&mut out, c, &w);
        }
        (out, dropped)
    }

    fn act_monomial(&self, m: &Monomial, v: &[F], memo: &mut HashMap<Monomial, (Vec<F>, bool)>) -> (Vec<F>, bool) {
        if let Some(x) = memo.get(m) {
            return x.clone();
        }
        let word = m.word();
        let out = match word.letters().split_first() {
            None => (v.to_vec(), false),
            Some((&g, _)) => {
                let mut rest = m.exponents().to_vec();
                rest[g] -= 1;
                let rest = self.ring.gens().monomial(rest);
                let (w, d) = self.act_monomial(&rest, v, memo);
                let (x, d2) = self.apply_operator(g, &w);
                (x, d || d2)
            }
        };
        memo.insert(m.clone(), out.clone());
        out
    }

    /// Highest degree first, matching ring element display.
    pub fn display(&self, v: &[F]) -> String {
        let mut terms = Vec::new();
        for d in (0..self.grading.degrees()).rev() {
            for i in self.grading.range(d) {
                if !v[i].is_zero() {
                    terms.push((v[i].clone(), self.labels[i].clone()));
                }
            }
        }
        format_terms(&terms)
    }

    /// Quotient by an operator-closed graded subspace.
    pub fn quotient(&self, n: &GradedSubspace<F>) -> Result<Self, SgkError> {
        self.check_closed(n)?;
        let grading = n.quotient_grading();
        let total = grading.total();
        let mut keep = Vec::new();
        for d in 0..self.grading.degrees() {
            for i in n.slice(d).non_pivots() {
                keep.push(self.grading.range(d).start + i);
            }
        }
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let mut actions = Vec::new();
        let mut spill = Vec::new();
        for g in 0..self.actions.len() {
            let cols: Vec<Vec<F>> = keep
                .iter()
                .map(|&i| n.quotient_coords(&self.actions[g].column(i)))
                .collect();
            actions.push(Matrix::from_columns(&cols, total));
            spill.push(keep.iter().map(|&i| self.spill[g][i]).collect());
        }
        Ok(SgModule {
            name: format!("{}/N", self.name),
            ring: self.ring.clone(),
            grading,
            labels,
            actions,
            spill,
            graded: self.graded,
            truncated: self.truncated,
            scalars: self.scalars.clone(),
        })
    }

    /// The canonical projection onto [`Self::quotient`] by `n`.
    pub fn projection(&self, n: &GradedSubspace<F>) -> GradedMap<F> {
        let q = n.quotient_grading();
        let blocks = (0..self.grading.degrees())
            .map(|d| {
                let slice = n.slice(d);
                let cols: Vec<Vec<F>> = (0..self.grading.dim(d))
                    .map(|i| slice.quotient_coords(&unit(self.grading.dim(d), i)))
                    .collect();
                Matrix::from_columns(&cols, q.dim(d))
            })
            .collect();
        GradedMap::new(&self.grading, &q, blocks).expect("shapes match")
    }

    /// The submodule carried by an operator-closed graded subspace, and its
    /// inclusion.
    pub fn submodule(&self, n: &GradedSubspace<F>) -> Result<(Self, GradedMap<F>), SgkError> {
        self.check_closed(n)?;
        let grading = Grading::new(n.dims());
        let basis = n.graded_basis();
        let total = grading.total();
        let coords = |w: &[F]| -> Vec<F> {
            let mut out = Vec::with_capacity(total);
            for d in 0..self.grading.degrees() {
                out.extend(n.slice(d).coordinates(&self.grading.block(w, d)).expect("closed"));
            }
            out
        };
        let mut actions = Vec::new();
        let mut spill = Vec::new();
        for g in 0..self.actions.len() {
            let mut cols = Vec::new();
            let mut sp = Vec::new();
            for (_, v) in &basis {
                let (w, dropped) = self.apply_operator(g, v);
                cols.push(coords(&w));
                sp.push(dropped);
            }
            actions.push(Matrix::from_columns(&cols, total));
            spill.push(sp);
        }
        let labels = basis.iter().map(|(_, v)| self.display(v)).collect();
        let blocks = (0..self.grading.degrees())
            .map(|d| Matrix::from_columns(n.slice(d).basis(), self.grading.dim(d)))
            .collect();
        let inclusion = GradedMap::new(&grading, &self.grading, blocks)?;
        let sub = SgModule {
            name: format!("{}'", self.name),
            ring: self.ring.clone(),
            grading,
            labels,
            actions,
            spill,
            graded: self.graded,
            truncated: self.truncated,
            scalars: self.scalars.clone(),
        };
        Ok((sub, inclusion))
    }

    fn check_closed(&self, n: &GradedSubspace<F>) -> Result<(), SgkError> {
        if n.grading() != &self.grading {
            return Err(SgkError::WindowMismatch(format!("subspace window {:?} vs module {:?}", n.dims(), self.dims())));
        }
        for (_, v) in n.graded_basis() {
            for g in 0..self.actions.len() {
                let (w, _) = self.apply_operator(g, &v);
                if !n.contains(&w)? {
                    return Err(SgkError::NotActionClosed {
                        generator: self.ring.gens().name(g).to_string(),
                        element: self.display(&v),
                    });
                }
            }
        }
        Ok(())
    }

    /// `N = ⟨xs⟩^SG`.
    pub fn sg_closure(&self, xs: &[Vec<F>]) -> GradedSubspace<F> {
        sg_closure(self, xs).space
    }

    /// Submodule generated by `xs` without taking components.
    pub fn plain_closure(&self, xs: &[Vec<F>]) -> Subspace<F> {
        plain_closure(self, xs)
    }
}

impl<F: Field> WindowActions<F> for SgModule<F> {
    fn grading(&self) -> &Grading {
        &self.grading
    }

    fn operator_count(&self) -> usize {
        self.actions.len()
    }

    fn operator_degree(&self, k: usize) -> usize {
        self.ring.gens().degree(k) as usize
    }

    fn operator_name(&self, k: usize) -> String {
        self.ring.gens().name(k).to_string()
    }

    fn apply_operator(&self, k: usize, v: &[F]) -> (Vec<F>, bool) {
        let dropped = v.iter().zip(&self.spill[k]).any(|(x, &s)| s && !x.is_zero());
        (self.actions[k].apply(v), dropped)
    }

    fn is_graded(&self) -> bool {
        self.graded
    }
}

fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

pub(crate) fn format_terms<F: Field>(terms: &[(F, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, label)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if label == "1" {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(label);
        } else {
            out.push_str(&format!("{abs}*{label}"));
        }
    }
    out
}

/// Outcome of the degreewise test for an action-closed subspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SgTest {
    pub is_sg: bool,
    /// An element of the subspace and a component of it outside.
    pub witness: Option<(String, String)>,
}

/// Whether an action-closed flat subspace is an SG submodule. Action
/// closure is checked first on products that stay in the window.
pub fn is_sg_submodule<F: Field>(m: &SgModule<F>, n: &Subspace<F>) -> Result<SgTest, SgkError> {
    let grading = m.grading();
    for v in n.basis() {
        let Some(md) = grading.max_degree(v) else { continue };
        for g in 0..m.operator_count() {
            if md + m.operator_degree(g) > m.ring().bound() {
                continue;
            }
            let (w, _) = m.apply_operator(g, v);
            if !n.contains(&w) {
                return Err(SgkError::NotActionClosed {
                    generator: m.operator_name(g),
                    element: m.display(v),
                });
            }
        }
    }
    // search N ∩ M_{≤k} for growing k so the witness has the lowest degree
    let total = grading.total();
    for k in 0..grading.degrees() {
        let low = Subspace::span(total, (0..grading.range(k).end).map(|i| unit(total, i)));
        let part = n.intersect(&low).expect("same ambient");
        for v in part.basis() {
            for d in grading.support(v) {
                let c = grading.component(v, d);
                if !n.contains(&c) {
                    return Ok(SgTest {
                        is_sg: false,
                        witness: Some((m.display(v), m.display(&c))),
                    });
                }
            }
        }
    }
    Ok(SgTest { is_sg: true, witness: None })
}

/// `N = ⊕ (N ∩ M_d)`, by dimension count.
pub fn is_degreewise<F: Field>(grading: &Grading, n: &Subspace<F>) -> bool {
    GradedSubspace::degreewise_part(grading, n).dim() == n.dim()
}

/// Every homogeneous component of every element of `N` lies in `N`.
pub fn is_component_closed<F: Field>(grading: &Grading, n: &Subspace<F>) -> bool {
    n.basis()
        .iter()
        .all(|v| grading.support(v).into_iter().all(|d| n.contains(&grading.component(v, d))))
}

/// `M/N = ⊕ (M_d + N)/N`, by comparing dimensions.
pub fn is_quotient_consistent<F: Field>(grading: &Grading, n: &Subspace<F>) -> bool {
    let total = grading.total();
    let pieces: usize = (0..grading.degrees())
        .map(|d| {
            let block = Subspace::span(total, grading.range(d).map(|i| unit(total, i)));
            n.sum(&block).expect("same ambient").dim() - n.dim()
        })
        .sum();
    pieces == total - n.dim()
}

/// `M/N` for an SG submodule given as a flat subspace.
pub fn quotient_module<F: Field>(m: &SgModule<F>, n: &Subspace<F>) -> Result<SgModule<F>, SgkError> {
    let t = is_sg_submodule(m, n)?;
    if let Some((element, component)) = t.witness {
        return Err(SgkError::NotSgClosed { element, component });
    }
    m.quotient(&GradedSubspace::degreewise_part(m.grading(), n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LsgReport {
    pub lsg: bool,
    pub bound: usize,
    /// `(r, m, r·m)` with `r ∈ R′_n`, `m ∈ M_k` and `r·m ∉ M_{n+k}`.
    pub witness: Option<(String, String, String)>,
}

/// `R′_n M_k ⊆ M_{n+k}` for window-certified `R′_n` and `n + k ≤ D`.
pub fn is_lsg<F: Field>(m: &SgModule<F>) -> LsgReport {
    let ring = m.ring();
    let bound = ring.bound();
    let rw = ring.window();
    for n in 0..=bound {
        let slice = ring.r_prime(n);
        for r in slice.basis() {
            let re = ring.element(&rw.embed(r, n));
            for k in 0..=bound - n {
                for b in m.grading().range(k) {
                    let (w, _) = m.act(&re, &unit(m.total(), b));
                    if m.grading().support(&w).iter().any(|&d| d != n + k) {
                        return LsgReport {
                            lsg: false,
                            bound,
                            witness: Some((re.display(ring.gens()), m.labels()[b].clone(), m.display(&w))),
                        };
                    }
                }
            }
        }
    }
    LsgReport { lsg: true, bound, witness: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionWitness {
    pub degree: usize,
    pub element: String,
    pub t: usize,
    pub n: usize,
}

#[derive(Clone, Debug)]
pub struct TorsionReport<F> {
    pub space: GradedSubspace<F>,
    pub witnesses: Vec<TorsionWitness>,
    pub bound: usize,
    pub truncated: bool,
}

/// Kernel in `M_d` of the action of every element of `gens`.
fn common_kernel<F: Field>(m: &SgModule<F>, d: usize, gens: &[Element<F>]) -> Subspace<F> {
    let range = m.grading().range(d);
    let dim = range.len();
    let mut rows = Vec::new();
    for r in gens {
        let cols: Vec<Vec<F>> = range.clone().map(|b| m.act(r, &unit(m.total(), b)).0).collect();
        for i in 0..m.total() {
            rows.push(cols.iter().map(|c| c[i].clone()).collect());
        }
    }
    let a = Matrix::from_rows(rows, dim);
    Subspace::span(dim, glin::solve(&a))
}

/// Homogeneous torsion elements `m ∈ M_d` with `(R_{≥t})^n m = 0`.
///
/// For each degree `d` and each `(t, n)` the ideal `I = (R_{≥t})^n` is cut
/// down to `G = I ∩ R_{≤D-d}`. The pair is used only if `G` generates `I`
/// as a left ideal on the window, in which case `G·m = 0` is equivalent to
/// `I·m = 0` and every product involved stays in the window.
pub fn torsion<F: Field>(m: &SgModule<F>) -> TorsionReport<F> {
    let ring = m.ring();
    let bound = ring.bound();
    let rw = ring.window();
    let total = rw.total();
    let mut powers = Vec::new();
    for t in 1..=bound {
        let base = ring.r_geq(t).space;
        let all = ring.ideal_powers(&base, bound);
        for (i, p) in all.iter().enumerate() {
            if p.is_zero() || (i > 0 && &all[i - 1] == p) {
                break;
            }
            powers.push((t, i + 1, p.clone()));
        }
    }
    // prefer the smallest exponent, then the smallest threshold
    powers.sort_by_key(|(t, n, _)| (*n, *t));
    let mut slices = Vec::new();
    let mut witnesses = Vec::new();
    for d in 0..=bound {
        let dim = m.grading().dim(d);
        let mut td = Subspace::zero(dim);
        if dim == 0 {
            slices.push(td);
            continue;
        }
        let low = Subspace::span(total, (0..rw.range(bound - d).end).map(|i| unit(total, i)));
        for (t, n, ideal) in &powers {
            if td.dim() == dim {
                break;
            }
            let g = ideal.intersect(&low).expect("same ambient");
            if g.is_zero() {
                continue;
            }
            if &plain_closure(&ring.actions(Side::Left), g.basis()) != ideal {
                continue;
            }
            let gens: Vec<Element<F>> = g.basis().iter().map(|v| ring.element(v)).collect();
            let k = common_kernel(m, d, &gens);
            for v in k.basis() {
                if td.insert(v) {
                    witnesses.push(TorsionWitness {
                        degree: d,
                        element: m.display(&m.grading().embed(v, d)),
                        t: *t,
                        n: *n,
                    });
                }
            }
        }
        slices.push(td);
    }
    TorsionReport {
        space: GradedSubspace::from_slices(m.grading(), slices),
        witnesses,
        bound,
        truncated: m.truncated(),
    }
}

/// `κ_S(M)` on the window: homogeneous `m ∈ M_d` with `s^k m = 0` for some
/// `k ≤ kmax` such that `d + k·deg s ≤ D`.
pub fn kappa<F: Field>(ore: &VerifiedOre<F>, m: &SgModule<F>) -> Result<GradedSubspace<F>, SgkError> {
    let ring = m.ring();
    if !Arc::ptr_eq(ore.ring(), ring) {
        return Err(SgkError::RingMismatch(format!("Ore set {} is over another ring", ore.name())));
    }
    let s = ore.element();
    let ds = s.max_degree().unwrap_or(0) as usize;
    let bound = ring.bound();
    let mut slices = Vec::new();
    for d in 0..=bound {
        let dim = m.grading().dim(d);
        let mut kd = Subspace::zero(dim);
        for k in 1..=ore.kmax() {
            if d + k * ds > bound || kd.dim() == dim {
                break;
            }
            let sk = ring.presentation().power(s, k as u32);
            for v in common_kernel(m, d, &[sk]).basis() {
                kd.insert(v);
            }
        }
        slices.push(kd);
    }
    Ok(GradedSubspace::from_slices(m.grading(), slices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::*;
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

    fn e(name: &str, d: usize) -> (String, usize) {
        (name.to_string(), d)
    }

    #[test]
    fn presented_examples() {
        let kx = ring(univariate(1), 8);
        let free = SgModule::free(kx.clone(), "F", &[e("e", 0)]).unwrap();
        assert_eq!(free.dims(), vec![1; 9]);
        let m = SgModule::presented(kx.clone(), "M", &[e("e", 0)], &[vec![(mono(&kx, &[2]), 0)]]).unwrap();
        assert_eq!(m.dims(), vec![1, 1, 0, 0, 0, 0, 0, 0, 0]);
        let qp = ring(quantum_plane(q(2)), 8);
        let m = SgModule::presented(qp.clone(), "M", &[e("e", 0)], &[vec![(mono(&qp, &[1, 0]), 0)]]).unwrap();
        assert_eq!(m.dims(), vec![1; 9]);
        assert!(m.action(0).is_zero());
        let y = m.action(1);
        for d in 0..8 {
            assert_eq!(y.get(d + 1, d), &q(1));
        }
    }

    #[test]
    fn weyl_left_ideal_is_not_sg() {
        let a1 = ring(weyl_algebra(), 6);
        let m = SgModule::regular(a1.clone());
        let x = a1.to_vector(&mono(&a1, &[1, 0])).unwrap();
        let n = m.plain_closure(&[x]);
        let t = is_sg_submodule(&m, &n).unwrap();
        assert!(!t.is_sg);
        let (elem, comp) = t.witness.unwrap();
        assert_eq!(comp, "1");
        assert_eq!(elem, "x*y + 1");
    }

    #[test]
    fn non_closed_subspace_is_an_error() {
        let kx = ring(univariate(1), 4);
        let m = SgModule::regular(kx.clone());
        let n = Subspace::span(m.total(), [unit(m.total(), 1)]);
        assert!(matches!(is_sg_submodule(&m, &n), Err(SgkError::NotActionClosed { .. })));
    }

    #[test]
    fn lsg_examples() {
        let a1 = ring(weyl_algebra(), 6);
        assert!(is_lsg(&SgModule::regular(a1)).lsg);
        let qp = ring(quantum_plane(q(2)), 6);
        assert!(is_lsg(&SgModule::regular(qp)).lsg);
        let kx = ring(univariate(1), 4);
        let x = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(0), q(0)]], 2);
        let m = SgModule::from_action(kx, "drop", &[e("e0", 0), e("e1", 1)], &[x]).unwrap();
        let r = is_lsg(&m);
        assert!(!r.lsg);
        assert_eq!(r.witness.unwrap().1, "e1");
    }

    #[test]
    fn from_action_checks_relations() {
        let qp = ring(quantum_plane(q(2)), 4);
        // x and y both acting as the same shift violates yx = 2xy
        let shift = Matrix::from_rows(vec![vec![q(0), q(0), q(0)], vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]], 3);
        let res = SgModule::from_action(qp, "bad", &[e("a", 0), e("b", 1), e("c", 2)], &[shift.clone(), shift]);
        assert!(matches!(res, Err(SgkError::InvalidPresentation(_))));
    }

    #[test]
    fn torsion_examples() {
        let kx = ring(univariate(1), 8);
        let m = SgModule::presented(kx.clone(), "M", &[e("e", 0)], &[vec![(mono(&kx, &[2]), 0)]]).unwrap();
        let t = torsion(&m);
        assert_eq!(t.space, GradedSubspace::full(m.grading()));
        let w0 = t.witnesses.iter().find(|w| w.degree == 0).unwrap();
        assert_eq!((w0.t, w0.n), (2, 1));
        let w1 = t.witnesses.iter().find(|w| w.degree == 1).unwrap();
        assert_eq!((w1.t, w1.n), (1, 1));
        let free = SgModule::regular(kx.clone());
        assert!(torsion(&free).space.is_zero());
        let qp = ring(quantum_plane(q(2)), 8);
        let m = SgModule::presented(qp.clone(), "M", &[e("e", 0)], &[vec![(mono(&qp, &[1, 0]), 0)]]).unwrap();
        assert!(torsion(&m).space.is_zero());
    }

    #[test]
    fn quotient_dimensions_subtract() {
        let qp = ring(quantum_plane(q(2)), 6);
        let m = SgModule::regular(qp.clone());
        let n = m.sg_closure(&[qp.to_vector(&mono(&qp, &[1, 1])).unwrap()]);
        let quo = m.quotient(&n).unwrap();
        for d in 0..=6 {
            assert_eq!(quo.dims()[d] + n.dims()[d], m.dims()[d]);
        }
    }
}
