//! Semi-graded rings on a degree window: components, closures, R_{≥t},
//! R′ and R″, SG ideals, quotient rings and localization at a normal
//! element.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::field::Field;
use crate::freealg::{Element, GeneratorTable, Monomial, Presentation};
use crate::glin::{self, GradedMap, GradedSubspace, Grading, Matrix, Subspace};
use crate::SgkError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// A finite family of linear operators on a window, each of a fixed degree
/// bound. Rings act on themselves through generators; modules through the
/// ring generators.
pub trait WindowActions<F: Field> {
    fn grading(&self) -> &Grading;
    fn operator_count(&self) -> usize;
    fn operator_degree(&self, k: usize) -> usize;
    fn operator_name(&self, k: usize) -> String;
    /// Window part of the image and whether a nonzero component above the
    /// window was dropped.
    fn apply_operator(&self, k: usize, v: &[F]) -> (Vec<F>, bool);
    /// True when every operator is degree-additive, so that dropping the part
    /// above the window is exact.
    fn is_graded(&self) -> bool;
}

/// An SG closure together with its honesty flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure<F> {
    pub space: GradedSubspace<F>,
    /// Set when a non-graded product had components above the window; the
    /// space is then a lower bound for the true closure.
    pub truncated: bool,
}

/// Least degreewise, operator-closed subspace containing `xs`.
pub fn sg_closure<F: Field, A: WindowActions<F> + ?Sized>(a: &A, xs: &[Vec<F>]) -> Closure<F> {
    extend_sg_closure(a, GradedSubspace::zero(a.grading()), xs)
}

/// SG closure of `start + span(xs)`; `start` must already be closed.
pub fn extend_sg_closure<F: Field, A: WindowActions<F> + ?Sized>(
    a: &A,
    start: GradedSubspace<F>,
    xs: &[Vec<F>],
) -> Closure<F> {
    let grading = a.grading().clone();
    let mut space = start;
    let mut queue = VecDeque::new();
    for x in xs {
        for d in grading.support(x) {
            let block = grading.block(x, d);
            if space.insert_block(d, &block) {
                queue.push_back((d, block));
            }
        }
    }
    let mut truncated = false;
    while let Some((d, block)) = queue.pop_front() {
        let v = grading.embed(&block, d);
        for k in 0..a.operator_count() {
            let (w, dropped) = a.apply_operator(k, &v);
            if dropped && !a.is_graded() {
                truncated = true;
            }
            for e in grading.support(&w) {
                let b = grading.block(&w, e);
                if space.insert_block(e, &b) {
                    queue.push_back((e, b));
                }
            }
        }
    }
    Closure { space, truncated }
}

/// Span of `xs` closed under the operators, using only products that stay
/// inside the window. Not degreewise in general.
pub fn plain_closure<F: Field, A: WindowActions<F> + ?Sized>(a: &A, xs: &[Vec<F>]) -> Subspace<F> {
    let grading = a.grading();
    let top = grading.top();
    let mut space = Subspace::zero(grading.total());
    let mut queue = VecDeque::new();
    for x in xs {
        if space.insert(x) {
            queue.push_back(x.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        let Some(md) = grading.max_degree(&v) else { continue };
        for k in 0..a.operator_count() {
            if md + a.operator_degree(k) > top {
                continue;
            }
            let (w, _) = a.apply_operator(k, &v);
            if space.insert(&w) {
                queue.push_back(w);
            }
        }
    }
    space
}

type SparseColumn<F> = Vec<(usize, F)>;

/// A presented SG ring together with its window `0..=D` and an extended
/// window `0..=D+E` (E the largest generator degree) that holds every
/// product of a window element with a generator.
#[derive(Clone, Debug)]
pub struct SgRing<F> {
    pres: Presentation<F>,
    bound: usize,
    window: Grading,
    ext: Grading,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    left: Vec<Vec<SparseColumn<F>>>,
    right: Vec<Vec<SparseColumn<F>>>,
    graded: bool,
}

impl<F: Field> SgRing<F> {
    /// Requires an accepted presentation that is confluent on the extended
    /// window.
    pub fn new(pres: Presentation<F>, bound: usize) -> Result<Self, SgkError> {
        let report = pres.validate();
        if let Some(v) = report.violations.first() {
            return Err(SgkError::InvalidPresentation(v.to_string()));
        }
        let gens = pres.gens().clone();
        let e = gens.max_degree() as usize;
        let conf = pres.check_confluence((bound + e) as u32);
        if let Some(u) = conf.unresolved.first() {
            return Err(SgkError::InvalidPresentation(format!(
                "overlap {} resolves to {} and {}",
                u.word, u.left, u.right
            )));
        }
        let mut basis = Vec::new();
        let mut dims = Vec::new();
        for d in 0..=bound + e {
            let ms = gens.monomials_of_degree(d as u32);
            dims.push(ms.len());
            basis.extend(ms);
        }
        let ext = Grading::new(dims);
        let window = ext.truncate(bound);
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for g in 0..gens.len() {
            let x = Element::generator(&gens, g);
            let mut lcols = Vec::with_capacity(window.total());
            let mut rcols = Vec::with_capacity(window.total());
            for m in &basis[..window.total()] {
                let mu = Element::monomial(m.clone());
                lcols.push(sparse(&index, &pres.multiply(&x, &mu)));
                rcols.push(sparse(&index, &pres.multiply(&mu, &x)));
            }
            left.push(lcols);
            right.push(rcols);
        }
        let graded = pres.is_graded();
        Ok(SgRing {
            pres,
            bound,
            window,
            ext,
            basis,
            index,
            left,
            right,
            graded,
        })
    }

    pub fn presentation(&self) -> &Presentation<F> {
        &self.pres
    }

    pub fn gens(&self) -> &GeneratorTable {
        self.pres.gens()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn window(&self) -> &Grading {
        &self.window
    }

    pub fn ext(&self) -> &Grading {
        &self.ext
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// Basis monomial at a flat (extended) index.
    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.basis[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// The PBW basis of `R_n`.
    pub fn component(&self, n: usize) -> Result<Vec<Monomial>, SgkError> {
        if n > self.bound {
            return Err(SgkError::WindowOverflow(format!("degree {n} exceeds the window bound {}", self.bound)));
        }
        Ok(self.basis[self.window.range(n)].to_vec())
    }

    pub fn fits(&self, e: &Element<F>) -> bool {
        e.max_degree().is_none_or(|d| d as usize <= self.bound)
    }

    pub fn to_vector(&self, e: &Element<F>) -> Result<Vec<F>, SgkError> {
        if !self.fits(e) {
            return Err(SgkError::WindowOverflow(format!(
                "{} has degree above {}",
                e.display(self.gens()),
                self.bound
            )));
        }
        let mut v = vec![F::zero(); self.window.total()];
        for (m, c) in e.terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    /// Element from a window or extended-window vector.
    pub fn element(&self, v: &[F]) -> Element<F> {
        let mut e = Element::zero();
        for (i, c) in v.iter().enumerate() {
            e.add_term(self.basis[i].clone(), c.clone());
        }
        e
    }

    pub fn display(&self, v: &[F]) -> String {
        self.element(v).display(self.gens())
    }

    pub fn multiply(&self, a: &Element<F>, b: &Element<F>) -> Element<F> {
        self.pres.multiply(a, b)
    }

    /// `g·v` on the extended window (exact).
    pub fn left_generator(&self, g: usize, v: &[F]) -> Vec<F> {
        apply_sparse(&self.left[g], v, self.ext.total())
    }

    /// `v·g` on the extended window (exact).
    pub fn right_generator(&self, g: usize, v: &[F]) -> Vec<F> {
        apply_sparse(&self.right[g], v, self.ext.total())
    }

    pub fn actions(&self, side: Side) -> RingActions<'_, F> {
        RingActions { ring: self, side }
    }

    pub fn sg_closure(&self, side: Side, xs: &[Element<F>]) -> Result<Closure<F>, SgkError> {
        let vs = xs.iter().map(|x| self.to_vector(x)).collect::<Result<Vec<_>, _>>()?;
        Ok(sg_closure(&self.actions(side), &vs))
    }

    pub fn plain_closure(&self, side: Side, xs: &[Element<F>]) -> Result<Subspace<F>, SgkError> {
        let vs = xs.iter().map(|x| self.to_vector(x)).collect::<Result<Vec<_>, _>>()?;
        Ok(plain_closure(&self.actions(side), &vs))
    }

    /// `R_{≥t}` on the window: the two-sided SG closure of all monomials of
    /// degree at least `t`.
    pub fn r_geq(&self, t: usize) -> Closure<F> {
        let n = self.window.total();
        let xs: Vec<Vec<F>> = (t.min(self.bound + 1)..=self.bound)
            .flat_map(|d| self.window.range(d))
            .map(|i| unit(n, i))
            .collect();
        sg_closure(&self.actions(Side::TwoSided), &xs)
    }

    /// `R′_n`: elements `r ∈ R_n` with `r·h ∈ R_{n+m}` for every window
    /// monomial `h ∈ R_m`, `m ≤ D - n`.
    pub fn r_prime(&self, n: usize) -> Subspace<F> {
        self.prime_slice(n, false)
    }

    /// `R″_n`: as [`Self::r_prime`] with the mirrored condition on `h·r`.
    pub fn r_double_prime(&self, n: usize) -> Subspace<F> {
        self.prime_slice(n, true)
    }

    pub fn r_prime_space(&self) -> GradedSubspace<F> {
        GradedSubspace::from_slices(&self.window, (0..=self.bound).map(|n| self.r_prime(n)).collect())
    }

    pub fn r_double_prime_space(&self) -> GradedSubspace<F> {
        GradedSubspace::from_slices(&self.window, (0..=self.bound).map(|n| self.r_double_prime(n)).collect())
    }

    fn prime_slice(&self, n: usize, both: bool) -> Subspace<F> {
        let comp = self.basis[self.window.range(n)].to_vec();
        let mut rows: Vec<Vec<F>> = Vec::new();
        for m in 0..=self.bound - n {
            for h in &self.basis[self.window.range(m)] {
                let h = Element::monomial(h.clone());
                let mut products = vec![comp.iter().map(|mu| self.multiply(&Element::monomial(mu.clone()), &h)).collect::<Vec<_>>()];
                if both {
                    products.push(comp.iter().map(|mu| self.multiply(&h, &Element::monomial(mu.clone()))).collect());
                }
                for cols in products {
                    off_degree_rows(&cols, (n + m) as u32, &mut rows);
                }
            }
        }
        let a = Matrix::from_rows(rows, comp.len());
        Subspace::span(comp.len(), glin::solve(&a))
    }

    /// A product certifying that the homogeneous element `r` is not in
    /// `R″`: `(h, r·h)` or `(h, h·r)` with an inhomogeneous result.
    pub fn double_prime_witness(&self, r: &Element<F>) -> Option<PrimeWitness<F>> {
        let n = r.max_degree()? as usize;
        for m in 0..=self.bound.saturating_sub(n) {
            for h in &self.basis[self.window.range(m)] {
                let h = Element::monomial(h.clone());
                let hr = self.multiply(&h, r);
                if !hr.is_zero() && !hr.is_homogeneous() || hr.min_degree().is_some_and(|d| d as usize != n + m) {
                    return Some(PrimeWitness { factor: h, left_side: true, product: hr, degree: n + m });
                }
                let rh = self.multiply(r, &h);
                if !rh.is_zero() && !rh.is_homogeneous() || rh.min_degree().is_some_and(|d| d as usize != n + m) {
                    return Some(PrimeWitness { factor: h, left_side: false, product: rh, degree: n + m });
                }
            }
        }
        None
    }

    /// Linear map `u ↦ u·s` (or `s·u`) from `R_{≤top}` into the extended
    /// window, as columns indexed by window monomials of degree ≤ `top`.
    pub(crate) fn multiplication_columns(&self, s: &Element<F>, top: usize, s_on_left: bool) -> Vec<Vec<F>> {
        let n = self.window.range(top.min(self.bound)).end;
        (0..n)
            .map(|i| {
                let mu = Element::monomial(self.basis[i].clone());
                let p = if s_on_left { self.multiply(s, &mu) } else { self.multiply(&mu, s) };
                self.ext_vector(&p)
            })
            .collect()
    }

    /// Vector on the extended window; panics outside it.
    pub(crate) fn ext_vector(&self, e: &Element<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.ext.total()];
        for (m, c) in e.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Window part of a product, flagging dropped nonzero components.
    pub(crate) fn clip(&self, e: &Element<F>) -> (Vec<F>, bool) {
        let mut v = vec![F::zero(); self.window.total()];
        let mut dropped = false;
        for (m, c) in e.terms() {
            if m.degree() as usize <= self.bound {
                v[self.index[m]] = c.clone();
            } else {
                dropped = true;
            }
        }
        (v, dropped)
    }

    /// Window spaces of `I, I^2, ..., I^nmax` for a two-sided ideal `I`
    /// given by its window space, built from products of spanning vectors
    /// whose degrees stay in the window.
    pub fn ideal_powers(&self, ideal: &GradedSubspace<F>, nmax: usize) -> Vec<Subspace<F>> {
        let base: Vec<(usize, Element<F>)> = ideal
            .graded_basis()
            .into_iter()
            .map(|(d, v)| (d, self.element(&v)))
            .collect();
        let total = self.window.total();
        let mut out = vec![ideal.to_flat()];
        let mut gens = base.clone();
        while out.len() < nmax {
            let mut space = Subspace::zero(total);
            let mut next = Vec::new();
            for (da, a) in &base {
                for (db, b) in &gens {
                    if da + db > self.bound {
                        continue;
                    }
                    let p = self.multiply(a, b);
                    let v = self.to_vector(&p).expect("degree bounded");
                    if space.insert(&v) {
                        next.push((p.max_degree().unwrap_or(0) as usize, p));
                    }
                }
            }
            gens = next;
            out.push(space);
        }
        out
    }

    pub fn ideal_power(&self, ideal: &GradedSubspace<F>, n: usize) -> Subspace<F> {
        self.ideal_powers(ideal, n.max(1)).pop().expect("at least one power")
    }
}

fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

fn sparse<F: Field>(index: &HashMap<Monomial, usize>, e: &Element<F>) -> SparseColumn<F> {
    e.terms().map(|(m, c)| (index[m], c.clone())).collect()
}

fn apply_sparse<F: Field>(cols: &[SparseColumn<F>], v: &[F], n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (j, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (i, c) in &cols[j] {
            out[*i] = out[*i].clone() + x.clone() * c.clone();
        }
    }
    out
}

/// Rows forcing the off-degree coefficients of `Σ c_i cols[i]` to vanish.
fn off_degree_rows<F: Field>(cols: &[Element<F>], degree: u32, rows: &mut Vec<Vec<F>>) {
    let mut monos: Vec<&Monomial> = cols
        .iter()
        .flat_map(|e| e.terms().map(|(m, _)| m))
        .filter(|m| m.degree() != degree)
        .collect();
    monos.sort();
    monos.dedup();
    for m in monos {
        rows.push(cols.iter().map(|e| e.coefficient(m)).collect());
    }
}

/// `factor·r` (left side) or `r·factor` with an inhomogeneous product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeWitness<F> {
    pub factor: Element<F>,
    pub left_side: bool,
    pub product: Element<F>,
    pub degree: usize,
}

/// Generator multiplications on the ring window from a chosen side.
pub struct RingActions<'a, F> {
    ring: &'a SgRing<F>,
    side: Side,
}

impl<F: Field> WindowActions<F> for RingActions<'_, F> {
    fn grading(&self) -> &Grading {
        &self.ring.window
    }

    fn operator_count(&self) -> usize {
        let g = self.ring.gens().len();
        if self.side == Side::TwoSided {
            2 * g
        } else {
            g
        }
    }

    fn operator_degree(&self, k: usize) -> usize {
        self.ring.gens().degree(k % self.ring.gens().len()) as usize
    }

    fn operator_name(&self, k: usize) -> String {
        let g = self.ring.gens().len();
        let name = self.ring.gens().name(k % g);
        match (self.side, k < g) {
            (Side::Right, _) | (Side::TwoSided, false) => format!("*{name}"),
            _ => format!("{name}*"),
        }
    }

    fn apply_operator(&self, k: usize, v: &[F]) -> (Vec<F>, bool) {
        let g = self.ring.gens().len();
        let w = match (self.side, k < g) {
            (Side::Right, _) | (Side::TwoSided, false) => self.ring.right_generator(k % g, v),
            _ => self.ring.left_generator(k % g, v),
        };
        let n = self.ring.window.total();
        let dropped = w[n..].iter().any(|x| !x.is_zero());
        (w[..n].to_vec(), dropped)
    }

    fn is_graded(&self) -> bool {
        self.ring.graded
    }
}

/// A one- or two-sided SG ideal given by its window space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgIdeal<F> {
    name: String,
    side: Side,
    space: GradedSubspace<F>,
    generators: Vec<Element<F>>,
    truncated: bool,
}

impl<F: Field> SgIdeal<F> {
    /// `⟨gens⟩^SG` on the requested side.
    pub fn generated(ring: &SgRing<F>, name: &str, side: Side, gens: &[Element<F>]) -> Result<Self, SgkError> {
        let c = ring.sg_closure(side, gens)?;
        Ok(SgIdeal {
            name: name.to_string(),
            side,
            space: c.space,
            generators: gens.to_vec(),
            truncated: c.truncated,
        })
    }

    pub fn zero(ring: &SgRing<F>) -> Self {
        SgIdeal {
            name: "0".into(),
            side: Side::TwoSided,
            space: GradedSubspace::zero(ring.window()),
            generators: vec![],
            truncated: false,
        }
    }

    /// Checks that a flat window subspace is an SG ideal: closed under the
    /// side's generator products that stay in the window, then degreewise.
    pub fn verify(ring: &SgRing<F>, name: &str, side: Side, flat: &Subspace<F>) -> Result<Self, SgkError> {
        let acts = ring.actions(side);
        let grading = ring.window();
        for v in flat.basis() {
            let Some(md) = grading.max_degree(v) else { continue };
            for k in 0..acts.operator_count() {
                if md + acts.operator_degree(k) > ring.bound() {
                    continue;
                }
                let (w, _) = acts.apply_operator(k, v);
                if !flat.contains(&w) {
                    return Err(SgkError::NotActionClosed {
                        generator: acts.operator_name(k),
                        element: ring.display(v),
                    });
                }
            }
        }
        for v in flat.basis() {
            for d in grading.support(v) {
                let c = grading.component(v, d);
                if !flat.contains(&c) {
                    return Err(SgkError::NotSgClosed {
                        element: ring.display(v),
                        component: ring.display(&c),
                    });
                }
            }
        }
        Ok(SgIdeal {
            name: name.to_string(),
            side,
            space: GradedSubspace::degreewise_part(grading, flat),
            generators: flat.basis().iter().map(|v| ring.element(v)).collect(),
            truncated: false,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn space(&self) -> &GradedSubspace<F> {
        &self.space
    }

    pub fn generators(&self) -> &[Element<F>] {
        &self.generators
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn contains(&self, ring: &SgRing<F>, e: &Element<F>) -> Result<bool, SgkError> {
        self.space.contains(&ring.to_vector(e)?)
    }
}

/// `R/J` on the window, with `(R/J)_n = (R_n + J)/J`.
#[derive(Clone, Debug)]
pub struct QuotientRing<F> {
    ring: Arc<SgRing<F>>,
    ideal: SgIdeal<F>,
    grading: Grading,
}

impl<F: Field> QuotientRing<F> {
    pub fn new(ring: Arc<SgRing<F>>, ideal: SgIdeal<F>) -> Result<Self, SgkError> {
        if ideal.side() != Side::TwoSided {
            return Err(SgkError::InvalidArgument(format!("ideal {} is not two-sided", ideal.name())));
        }
        let grading = ideal.space().quotient_grading();
        Ok(QuotientRing { ring, ideal, grading })
    }

    pub fn ring(&self) -> &Arc<SgRing<F>> {
        &self.ring
    }

    pub fn ideal(&self) -> &SgIdeal<F> {
        &self.ideal
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn dims(&self) -> Vec<usize> {
        self.grading.dims().to_vec()
    }

    pub fn project(&self, v: &[F]) -> Vec<F> {
        self.ideal.space().quotient_coords(v)
    }

    pub fn lift(&self, q: &[F]) -> Vec<F> {
        self.ideal.space().quotient_lift(q)
    }

    /// The canonical map `R → R/J` on the window.
    pub fn canonical_map(&self) -> GradedMap<F> {
        let w = self.ring.window();
        let blocks = (0..w.degrees())
            .map(|d| {
                let slice = self.ideal.space().slice(d);
                let cols: Vec<Vec<F>> = (0..w.dim(d))
                    .map(|i| {
                        let mut e = vec![F::zero(); w.dim(d)];
                        e[i] = F::one();
                        slice.quotient_coords(&e)
                    })
                    .collect();
                Matrix::from_columns(&cols, self.grading.dim(d))
            })
            .collect();
        GradedMap::new(w, &self.grading, blocks).expect("shapes match")
    }

    /// Labels of the quotient basis: the surviving monomials.
    pub fn basis_labels(&self) -> Vec<String> {
        let w = self.ring.window();
        let mut out = Vec::new();
        for d in 0..w.degrees() {
            for i in self.ideal.space().slice(d).non_pivots() {
                out.push(self.ring.monomial(w.range(d).start + i).display(self.ring.gens()));
            }
        }
        out
    }

    /// `ā·b̄`, or `None` when the product of the lifts leaves the window.
    pub fn multiply(&self, a: &[F], b: &[F]) -> Option<Vec<F>> {
        let p = self.ring.multiply(&self.ring.element(&self.lift(a)), &self.ring.element(&self.lift(b)));
        if !self.ring.fits(&p) {
            return None;
        }
        Some(self.project(&self.ring.to_vector(&p).ok()?))
    }

    /// `(R/J)′_n` computed inside the quotient, in degree-`n` coordinates.
    pub fn r_prime(&self, n: usize) -> Subspace<F> {
        let q = &self.grading;
        let dim = q.dim(n);
        let total = q.total();
        let mut rows = Vec::new();
        for m in 0..=self.ring.bound() - n {
            for j in q.range(m) {
                let h = unit::<F>(total, j);
                let cols: Vec<Vec<F>> = q
                    .range(n)
                    .map(|i| self.multiply(&unit(total, i), &h).expect("degree bounded"))
                    .collect();
                for (idx, _) in (0..total).enumerate().filter(|&(i, _)| q.degree_of(i) != n + m) {
                    rows.push(cols.iter().map(|c| c[idx].clone()).collect());
                }
            }
        }
        let a = Matrix::from_rows(rows, dim);
        Subspace::span(dim, glin::solve(&a))
    }

    /// Image of `R′_n` under the canonical map, in degree-`n` coordinates.
    pub fn r_prime_image(&self, n: usize) -> Subspace<F> {
        let slice = self.ideal.space().slice(n);
        Subspace::span(self.grading.dim(n), self.ring.r_prime(n).basis().iter().map(|v| slice.quotient_coords(v)))
    }

    pub fn display(&self, q: &[F]) -> String {
        self.ring.display(&self.lift(q))
    }
}

/// `s^{-power}·numerator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction<F> {
    pub power: usize,
    pub numerator: Element<F>,
}

/// Windowed model of `S⁻¹R` for `S = {s^k}` with `s` normal, homogeneous
/// and regular.
#[derive(Clone, Debug)]
pub struct Localization<F> {
    ring: Arc<SgRing<F>>,
    s: Element<F>,
    ds: usize,
    kmax: usize,
    /// `g′` with `s·g′ = g·s`.
    left_twist: Vec<Element<F>>,
    /// `g″` with `s·g = g″·s`.
    right_twist: Vec<Element<F>>,
}

/// Solves `u·s = target` (or `s·u = target`) for `u` of degree ≤ `top`.
fn divide<F: Field>(ring: &SgRing<F>, s: &Element<F>, target: &Element<F>, top: usize, s_on_left: bool) -> Option<Element<F>> {
    let cols = ring.multiplication_columns(s, top, s_on_left);
    let a = Matrix::from_columns(&cols, ring.ext().total());
    let u = glin::solve_particular(&a, &ring.ext_vector(target))?;
    let mut v = vec![F::zero(); ring.window().total()];
    v[..u.len()].clone_from_slice(&u);
    Some(ring.element(&v))
}

pub fn localize_at_normal<F: Field>(ring: Arc<SgRing<F>>, s: &Element<F>, kmax: usize) -> Result<Localization<F>, SgkError> {
    let gens = ring.gens().clone();
    let shown = s.display(&gens);
    if s.is_zero() || !s.is_homogeneous() {
        return Err(SgkError::NotHomogeneous(shown));
    }
    let ds = s.max_degree().unwrap_or(0) as usize;
    if ds == 0 {
        return Err(SgkError::InvalidArgument("denominator must have positive degree".into()));
    }
    let bound = ring.bound();
    for g in 0..gens.len() {
        if ds + gens.degree(g) as usize > bound {
            return Err(SgkError::WindowOverflow(format!("{shown} times a generator exceeds degree {bound}")));
        }
    }
    let top = bound - ds;
    // regularity on the window
    for s_on_left in [true, false] {
        let cols = ring.multiplication_columns(s, top, s_on_left);
        let a = Matrix::from_columns(&cols, ring.ext().total());
        if let Some(k) = a.nullspace().first() {
            let mut v = vec![F::zero(); ring.window().total()];
            v[..k.len()].clone_from_slice(k);
            return Err(SgkError::ZeroDivisor {
                element: shown,
                witness: ring.display(&v),
            });
        }
    }
    let mut left_twist = Vec::new();
    let mut right_twist = Vec::new();
    for g in 0..gens.len() {
        let x = Element::generator(&gens, g);
        let dg = gens.degree(g) as usize;
        let not_normal = || SgkError::NotNormal {
            element: shown.clone(),
            generator: gens.name(g).to_string(),
        };
        left_twist.push(divide(&ring, s, &ring.multiply(&x, s), dg, true).ok_or_else(not_normal)?);
        right_twist.push(divide(&ring, s, &ring.multiply(s, &x), dg, false).ok_or_else(not_normal)?);
    }
    // s·R_m ⊆ R_{m+ds} and R_m·s ⊆ R_{m+ds}
    for i in 0..ring.window().range(top).end {
        let mu = Element::monomial(ring.monomial(i).clone());
        for p in [ring.multiply(s, &mu), ring.multiply(&mu, s)] {
            if p.terms().any(|(m, _)| m.degree() as usize != ds + mu.max_degree().unwrap_or(0) as usize) {
                return Err(SgkError::NotHomogeneous(format!(
                    "{shown} does not shift degrees: product with {} is {}",
                    mu.display(&gens),
                    p.display(&gens)
                )));
            }
        }
    }
    Ok(Localization {
        ring,
        s: s.clone(),
        ds,
        kmax,
        left_twist,
        right_twist,
    })
}

impl<F: Field> Localization<F> {
    pub fn denominator(&self) -> &Element<F> {
        &self.s
    }

    pub fn left_twist(&self) -> &[Element<F>] {
        &self.left_twist
    }

    pub fn right_twist(&self) -> &[Element<F>] {
        &self.right_twist
    }

    pub fn degree(&self, f: &Fraction<F>) -> Option<i64> {
        f.numerator.max_degree().map(|d| d as i64 - (f.power * self.ds) as i64)
    }

    /// `ρ(f)` with `ρ(f)·s = s·f`.
    fn conjugate(&self, f: &Element<F>) -> Result<Element<F>, SgkError> {
        let top = f.max_degree().unwrap_or(0) as usize;
        if top + self.ds > self.ring.bound() {
            return Err(SgkError::WindowOverflow(format!("twist of {} leaves the window", f.display(self.ring.gens()))));
        }
        let target = self.ring.multiply(&self.s, f);
        divide(&self.ring, &self.s, &target, top, false)
            .ok_or_else(|| SgkError::InvalidArgument("twist has no solution".into()))
    }

    /// `(s^{-k} f)(s^{-l} g) = s^{-(k+l)} ρ^l(f) g`.
    pub fn multiply(&self, a: &Fraction<F>, b: &Fraction<F>) -> Result<Fraction<F>, SgkError> {
        let mut f = a.numerator.clone();
        for _ in 0..b.power {
            f = self.conjugate(&f)?;
        }
        let numerator = self.ring.multiply(&f, &b.numerator);
        Ok(self.normalize(&Fraction {
            power: a.power + b.power,
            numerator,
        }))
    }

    /// Cancels powers of `s` from the left of the numerator.
    pub fn normalize(&self, f: &Fraction<F>) -> Fraction<F> {
        let mut out = f.clone();
        while out.power > 0 {
            if out.numerator.is_zero() {
                out.power = 0;
                break;
            }
            let top = out.numerator.max_degree().unwrap_or(0) as usize;
            if top < self.ds || top > self.ring.bound() {
                break;
            }
            match divide(&self.ring, &self.s, &out.numerator, top - self.ds, true) {
                Some(u) => {
                    out.numerator = u;
                    out.power -= 1;
                }
                None => break,
            }
        }
        out
    }

    pub fn equal(&self, a: &Fraction<F>, b: &Fraction<F>) -> bool {
        let (a, b) = (self.normalize(a), self.normalize(b));
        let k = a.power.max(b.power);
        let lift = |f: &Fraction<F>| {
            let sk = self.ring.presentation().power(&self.s, (k - f.power) as u32);
            self.ring.multiply(&sk, &f.numerator)
        };
        lift(&a) == lift(&b)
    }

    /// Basis of `(S⁻¹R)_n` using denominators up to `s^kmax` and numerators
    /// in the window.
    pub fn degree_basis(&self, n: i64) -> Vec<Fraction<F>> {
        let mut out = Vec::new();
        let w = self.ring.window();
        for k in 0..=self.kmax {
            let m = n + (k * self.ds) as i64;
            if m < 0 || m as usize > self.ring.bound() {
                continue;
            }
            let m = m as usize;
            let range = w.range(m);
            let monos: Vec<Monomial> = range.clone().map(|i| self.ring.monomial(i).clone()).collect();
            if k == 0 || m < self.ds {
                out.extend(monos.into_iter().map(|mu| Fraction {
                    power: k,
                    numerator: Element::monomial(mu),
                }));
                continue;
            }
            let image = Subspace::span(
                monos.len(),
                w.range(m - self.ds).map(|i| {
                    let p = self.ring.multiply(&self.s, &Element::monomial(self.ring.monomial(i).clone()));
                    let v = self.ring.to_vector(&p).expect("degree bounded");
                    v[range.clone()].to_vec()
                }),
            );
            for i in image.non_pivots() {
                out.push(Fraction {
                    power: k,
                    numerator: Element::monomial(monos[i].clone()),
                });
            }
        }
        out
    }

    pub fn display(&self, f: &Fraction<F>) -> String {
        let gens = self.ring.gens();
        let num = f.numerator.display(gens);
        if f.power == 0 {
            return num;
        }
        let s = self.s.display(gens);
        let den = if s.contains(['*', '+', '-', ' ']) && !s.starts_with('-') || s.contains(' ') {
            format!("({s})^-{}", f.power)
        } else if let Some((base, e)) = s.split_once('^') {
            let e: usize = e.parse().unwrap_or(1);
            format!("{base}^-{}", e * f.power)
        } else {
            format!("{s}^-{}", f.power)
        };
        if num == "1" {
            den
        } else if f.numerator.len() > 1 {
            format!("{den}*({num})")
        } else {
            format!("{den}*{num}")
        }
    }
}
