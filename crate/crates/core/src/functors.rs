//! The functors along the canonical map `f: R → R/J`: restriction of
//! scalars `f_*`, the largest part killed by `J` (`f^!`) and extension
//! `f^*(M) = M/⟨JM⟩^SG`, plus homogeneous hom spaces and explicit checks of
//! both adjunctions.

use std::sync::Arc;

use serde::Serialize;

use crate::field::Field;
use crate::glin::{self, GradedMap, GradedSubspace, Grading, Matrix, Subspace};
use crate::sgcore::{QuotientRing, SgIdeal, SgRing, WindowActions};
use crate::sgmod::SgModule;
use crate::SgkError;

/// `R`, `J`, `R/J` and the canonical map between their windows.
#[derive(Clone)]
pub struct QuotientContext<F> {
    ring: Arc<SgRing<F>>,
    quotient: Arc<QuotientRing<F>>,
    f: GradedMap<F>,
}

impl<F: Field> QuotientContext<F> {
    pub fn new(ring: Arc<SgRing<F>>, ideal: SgIdeal<F>) -> Result<Self, SgkError> {
        let quotient = Arc::new(QuotientRing::new(ring.clone(), ideal)?);
        Ok(Self::from_quotient(quotient))
    }

    pub fn from_quotient(quotient: Arc<QuotientRing<F>>) -> Self {
        QuotientContext {
            ring: quotient.ring().clone(),
            f: quotient.canonical_map(),
            quotient,
        }
    }

    pub fn ring(&self) -> &Arc<SgRing<F>> {
        &self.ring
    }

    pub fn ideal(&self) -> &SgIdeal<F> {
        self.quotient.ideal()
    }

    pub fn quotient(&self) -> &Arc<QuotientRing<F>> {
        &self.quotient
    }

    pub fn canonical_map(&self) -> &GradedMap<F> {
        &self.f
    }

    fn is_over_quotient(&self, m: &SgModule<F>) -> bool {
        m.quotient_ring().is_some_and(|q| Arc::ptr_eq(q, &self.quotient))
    }

    fn check_over_ring(&self, m: &SgModule<F>) -> Result<(), SgkError> {
        if !Arc::ptr_eq(m.ring(), &self.ring) {
            return Err(SgkError::RingMismatch(format!("{} is over another ring", m.name())));
        }
        Ok(())
    }

    fn check_over_quotient(&self, m: &SgModule<F>) -> Result<(), SgkError> {
        if !self.is_over_quotient(m) {
            return Err(SgkError::RingMismatch(format!(
                "{} is not a module over R/{}",
                m.name(),
                self.ideal().name()
            )));
        }
        Ok(())
    }
}

/// Degree-preserving maps commuting with every generator action.
#[derive(Clone)]
pub struct HomSpace<F> {
    source: Grading,
    target: Grading,
    basis: Vec<GradedMap<F>>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GradedMap<F>] {
        &self.basis
    }

    pub fn source(&self) -> &Grading {
        &self.source
    }

    pub fn target(&self) -> &Grading {
        &self.target
    }

    /// Coordinates of `map` in the basis, or `None` if it is not in the space.
    pub fn coordinates(&self, map: &GradedMap<F>) -> Option<Vec<F>> {
        if map.source() != &self.source || map.target() != &self.target {
            return None;
        }
        let cols: Vec<Vec<F>> = self.basis.iter().map(flatten).collect();
        let m = Matrix::from_columns(&cols, unknowns(&self.source, &self.target));
        glin::solve_particular(&m, &flatten(map))
    }

    pub fn contains(&self, map: &GradedMap<F>) -> bool {
        self.coordinates(map).is_some()
    }
}

fn unknowns(source: &Grading, target: &Grading) -> usize {
    (0..source.degrees()).map(|d| source.dim(d) * target.dim(d)).sum()
}

fn flatten<F: Field>(map: &GradedMap<F>) -> Vec<F> {
    let mut out = Vec::new();
    for b in map.blocks() {
        for r in 0..b.rows() {
            out.extend_from_slice(b.row(r));
        }
    }
    out
}

fn unflatten<F: Field>(source: &Grading, target: &Grading, v: &[F]) -> GradedMap<F> {
    let mut at = 0;
    let blocks = (0..source.degrees())
        .map(|d| {
            let (rows, cols) = (target.dim(d), source.dim(d));
            let rows_v = (0..rows)
                .map(|r| v[at + r * cols..at + (r + 1) * cols].to_vec())
                .collect();
            at += rows * cols;
            Matrix::from_rows(rows_v, cols)
        })
        .collect();
    GradedMap::new(source, target, blocks).expect("shapes match")
}

/// Homogeneous module maps `M → N` on the window: `φ(M_d) ⊆ N_d` and
/// `φ(g·b) = g·φ(b)` whenever `deg b + deg g ≤ D`.
pub fn hom_sg<F: Field>(m: &SgModule<F>, n: &SgModule<F>) -> Result<HomSpace<F>, SgkError> {
    if !Arc::ptr_eq(m.ring(), n.ring()) {
        return Err(SgkError::RingMismatch(format!("{} and {} are over different rings", m.name(), n.name())));
    }
    let (gm, gn) = (m.grading(), n.grading());
    if gm.degrees() != gn.degrees() {
        return Err(SgkError::WindowMismatch(format!("{:?} vs {:?}", gm.dims(), gn.dims())));
    }
    let bound = m.ring().bound();
    let mut offset = vec![0];
    for d in 0..gm.degrees() {
        offset.push(offset[d] + gm.dim(d) * gn.dim(d));
    }
    let var = |d: usize, r: usize, c: usize| offset[d] + r * gm.dim(d) + c;
    let nvars = offset[gm.degrees()];
    let mut rows: Vec<Vec<F>> = Vec::new();
    for b in 0..gm.total() {
        let d = gm.degree_of(b);
        let i = b - gm.range(d).start;
        for g in 0..m.operator_count() {
            if d + m.operator_degree(g) > bound {
                continue;
            }
            let gb = m.action(g).column(b);
            let ng = n.action(g);
            for t in 0..gn.total() {
                let dt = gn.degree_of(t);
                let r = t - gn.range(dt).start;
                let mut row = vec![F::zero(); nvars];
                for c in 0..gm.dim(dt) {
                    let x = &gb[gm.range(dt).start + c];
                    if !x.is_zero() {
                        row[var(dt, r, c)] = row[var(dt, r, c)].clone() + x.clone();
                    }
                }
                for s in 0..gn.dim(d) {
                    let x = ng.get(t, gn.range(d).start + s);
                    if !x.is_zero() {
                        row[var(d, s, i)] = row[var(d, s, i)].clone() - x.clone();
                    }
                }
                if !glin::is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let sols = if rows.is_empty() {
        (0..nvars)
            .map(|k| {
                let mut v = vec![F::zero(); nvars];
                v[k] = F::one();
                v
            })
            .collect()
    } else {
        glin::solve(&Matrix::from_rows(rows, nvars))
    };
    Ok(HomSpace {
        source: gm.clone(),
        target: gn.clone(),
        basis: sols.iter().map(|v| unflatten(gm, gn, v)).collect(),
    })
}

/// `f_*`: the same window with `R` acting through `f`.
pub fn restrict_scalars<F: Field>(ctx: &QuotientContext<F>, m: &SgModule<F>) -> Result<SgModule<F>, SgkError> {
    ctx.check_over_quotient(m)?;
    Ok(m.clone().over_ring())
}

/// `f^!(N)` with its inclusion into `N`.
#[derive(Clone)]
pub struct Shriek<F> {
    pub module: SgModule<F>,
    pub inclusion: GradedMap<F>,
}

/// Largest action-closed degreewise subspace of `N` killed by every window
/// element of `J`. A product `j·v` that leaves the window is not known to
/// vanish, so such `v` are excluded.
pub fn shriek<F: Field>(ctx: &QuotientContext<F>, n: &SgModule<F>) -> Result<Shriek<F>, SgkError> {
    ctx.check_over_ring(n)?;
    let kernel = j_kernel(ctx, n, false)?;
    // Elements whose J-products leave the window are kept, which is what
    // makes the adjunction exact against hom_sg; flag the result when that
    // choice mattered.
    let strict = j_kernel(ctx, n, true)?;
    let (sub, inclusion) = n.submodule(&kernel)?;
    let module = sub
        .with_name(&format!("f^!({})", n.name()))
        .over_quotient(ctx.quotient.clone())?
        .with_truncated(n.truncated() || strict != kernel);
    Ok(Shriek { module, inclusion })
}

/// Largest SG submodule of `n` on which every element of J acts by zero
/// inside the window. With `strict`, elements with a J-product leaving the
/// window are excluded as well.
fn j_kernel<F: Field>(ctx: &QuotientContext<F>, n: &SgModule<F>, strict: bool) -> Result<GradedSubspace<F>, SgkError> {
    let total = n.total();
    let grading = n.grading().clone();
    let mut constraints: Vec<Vec<F>> = Vec::new();
    for (_, j) in ctx.ideal().space().graded_basis() {
        let je = ctx.ring().element(&j);
        let mut product = Matrix::zeros(total, total);
        for (mono, c) in je.terms() {
            let mut acc = Matrix::identity(total);
            for &g in mono.word().letters().iter().rev() {
                if strict {
                    for (col, &spills) in spill_columns(n, g).iter().enumerate() {
                        if spills {
                            constraints.push(acc.row(col).to_vec());
                        }
                    }
                }
                acc = n.action(g).mul(&acc);
            }
            product = product.add(&acc.scale(c));
        }
        for r in 0..total {
            constraints.push(product.row(r).to_vec());
        }
    }
    constraints.retain(|r| !glin::is_zero_vec(r));
    let mut k = if constraints.is_empty() {
        Subspace::full(total)
    } else {
        Subspace::span(total, glin::solve(&Matrix::from_rows(constraints, total)))
    };
    loop {
        let mut next = GradedSubspace::degreewise_part(&grading, &k).to_flat();
        for g in 0..n.operator_count() {
            next = next.intersect(&preimage(n.action(g), &next))?;
        }
        if next == k {
            break;
        }
        k = next;
    }
    Ok(GradedSubspace::degreewise_part(&grading, &k))
}

fn spill_columns<F: Field>(n: &SgModule<F>, g: usize) -> Vec<bool> {
    (0..n.total())
        .map(|i| {
            let mut e = vec![F::zero(); n.total()];
            e[i] = F::one();
            n.apply_operator(g, &e).1
        })
        .collect()
}

/// `{v : A v ∈ k}`.
fn preimage<F: Field>(a: &Matrix<F>, k: &Subspace<F>) -> Subspace<F> {
    let cols: Vec<Vec<F>> = (0..a.cols()).map(|i| k.quotient_coords(&a.column(i))).collect();
    let rows = k.ambient() - k.dim();
    if rows == 0 {
        return Subspace::full(a.cols());
    }
    Subspace::span(a.cols(), glin::solve(&Matrix::from_columns(&cols, rows)))
}

/// `f^*(M)` with the projection `M → f^*(M)`, a section of it and the
/// kernel `⟨JM⟩^SG`.
#[derive(Clone)]
pub struct UpperStar<F> {
    pub module: SgModule<F>,
    pub projection: GradedMap<F>,
    pub lift: GradedMap<F>,
    pub kernel: GradedSubspace<F>,
}

pub fn upper_star<F: Field>(ctx: &QuotientContext<F>, m: &SgModule<F>) -> Result<UpperStar<F>, SgkError> {
    ctx.check_over_ring(m)?;
    let mut products = Vec::new();
    for (_, j) in ctx.ideal().space().graded_basis() {
        let je = ctx.ring().element(&j);
        for b in 0..m.total() {
            let mut e = vec![F::zero(); m.total()];
            e[b] = F::one();
            let (w, _) = m.act(&je, &e);
            if !glin::is_zero_vec(&w) {
                products.push(w);
            }
        }
    }
    let kernel = m.sg_closure(&products);
    let module = m
        .quotient(&kernel)?
        .with_name(&format!("f^*({})", m.name()))
        .over_quotient(ctx.quotient.clone())?;
    let projection = m.projection(&kernel);
    let q = module.grading().clone();
    let blocks = (0..q.degrees())
        .map(|d| {
            let slice = kernel.slice(d);
            let cols: Vec<Vec<F>> = (0..q.dim(d))
                .map(|i| {
                    let mut e = vec![F::zero(); q.dim(d)];
                    e[i] = F::one();
                    slice.quotient_lift(&e)
                })
                .collect();
            Matrix::from_columns(&cols, m.grading().dim(d))
        })
        .collect();
    let lift = GradedMap::new(&q, m.grading(), blocks)?;
    Ok(UpperStar {
        module,
        projection,
        lift,
        kernel,
    })
}

/// `X` with `inclusion ∘ X = map`, degreewise; `None` if the image of `map`
/// is not inside the image of `inclusion`.
pub fn factor_through<F: Field>(map: &GradedMap<F>, inclusion: &GradedMap<F>) -> Option<GradedMap<F>> {
    if map.target() != inclusion.target() {
        return None;
    }
    let mut blocks = Vec::new();
    for d in 0..map.source().degrees() {
        let (a, b) = (inclusion.block(d), map.block(d));
        let mut cols = Vec::new();
        for c in 0..b.cols() {
            cols.push(glin::solve_particular(a, &b.column(c))?);
        }
        blocks.push(Matrix::from_columns(&cols, inclusion.source().dim(d)));
    }
    GradedMap::new(map.source(), inclusion.source(), blocks).ok()
}

/// `f^!(β) = β|_{f^!(N)}`.
pub fn shriek_morphism<F: Field>(src: &Shriek<F>, dst: &Shriek<F>, beta: &GradedMap<F>) -> Result<GradedMap<F>, SgkError> {
    let restricted = beta.compose(&src.inclusion)?;
    factor_through(&restricted, &dst.inclusion)
        .ok_or_else(|| SgkError::InvalidArgument("morphism does not preserve the J-killed part".into()))
}

/// `f^*(α)(m̄) = α(m)‾`.
pub fn upper_star_morphism<F: Field>(src: &UpperStar<F>, dst: &UpperStar<F>, alpha: &GradedMap<F>) -> Result<GradedMap<F>, SgkError> {
    for (_, v) in src.kernel.graded_basis() {
        if !dst.kernel.contains(&alpha.apply(&v))? {
            return Err(SgkError::InvalidArgument("morphism does not preserve <JM>^SG".into()));
        }
    }
    dst.projection.compose(&alpha.compose(&src.lift)?)
}

/// Outcome of an adjunction check.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AdjunctionReport {
    pub left_dim: usize,
    pub right_dim: usize,
    pub bijective: bool,
    pub round_trip: bool,
    pub squares_checked: usize,
    pub failures: Vec<String>,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.round_trip && self.failures.is_empty()
    }
}

/// Deliberate perturbation of the comparison map; used by negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Corruption {
    #[default]
    None,
    /// Adds one to the first entry of the first nonempty block of the image
    /// of the first basis map.
    FirstEntry,
}

fn corrupt<F: Field>(map: &GradedMap<F>) -> GradedMap<F> {
    let mut blocks = map.blocks().to_vec();
    if let Some(b) = blocks.iter_mut().find(|b| b.rows() > 0 && b.cols() > 0) {
        let x = b.get(0, 0).clone() + F::one();
        b.set(0, 0, x);
    }
    GradedMap::new(map.source(), map.target(), blocks).expect("shapes unchanged")
}

/// Is `images` a basis of `space`?
fn is_basis_of<F: Field>(images: &[GradedMap<F>], space: &HomSpace<F>) -> bool {
    if images.len() != space.dim() {
        return false;
    }
    let mut span = Subspace::zero(unknowns(space.source(), space.target()));
    images.iter().all(|m| space.contains(m) && span.insert(&flatten(m)))
}

/// `Hom_{R/J}(M, f^!N) ≅ Hom_R(f_*M, N)` via `μ(g) = ι∘g`, with inverse by
/// factoring through `ι`. Naturality is checked on endomorphism bases in
/// each variable separately.
pub fn verify_adjunction_shriek<F: Field>(
    ctx: &QuotientContext<F>,
    m: &SgModule<F>,
    n: &SgModule<F>,
    corruption: Corruption,
) -> Result<AdjunctionReport, SgkError> {
    ctx.check_over_quotient(m)?;
    ctx.check_over_ring(n)?;
    let sh = shriek(ctx, n)?;
    let fm = restrict_scalars(ctx, m)?;
    let left = hom_sg(m, &sh.module)?;
    let right = hom_sg(&fm, n)?;
    let mu = |g: &GradedMap<F>, k: usize| -> GradedMap<F> {
        let out = sh.inclusion.compose(g).expect("composable");
        if k == 0 && corruption == Corruption::FirstEntry {
            corrupt(&out)
        } else {
            out
        }
    };
    let mut report = AdjunctionReport {
        left_dim: left.dim(),
        right_dim: right.dim(),
        round_trip: true,
        ..Default::default()
    };
    let images: Vec<GradedMap<F>> = left.basis().iter().enumerate().map(|(k, g)| mu(g, k)).collect();
    report.bijective = is_basis_of(&images, &right);
    for (k, (g, img)) in left.basis().iter().zip(&images).enumerate() {
        match factor_through(img, &sh.inclusion) {
            Some(back) if &back == g => {}
            Some(_) => {
                report.round_trip = false;
                report.failures.push(format!("mu^-1(mu(g_{k})) != g_{k}"));
            }
            None => {
                report.round_trip = false;
                report.failures.push(format!("mu(g_{k}) does not factor through f^!N"));
            }
        }
    }
    for (k, h) in right.basis().iter().enumerate() {
        match factor_through(h, &sh.inclusion) {
            Some(g) if left.contains(&g) => {
                if sh.inclusion.compose(&g)? != *h {
                    report.round_trip = false;
                    report.failures.push(format!("mu(mu^-1(h_{k})) != h_{k}"));
                }
            }
            _ => {
                report.round_trip = false;
                report.failures.push(format!("h_{k} has no preimage under mu"));
            }
        }
    }
    // naturality in M: mu(g∘α) = mu(g)∘f_*(α)
    let end_m = hom_sg(m, m)?;
    for (a, alpha) in end_m.basis().iter().enumerate() {
        for (k, g) in left.basis().iter().enumerate() {
            report.squares_checked += 1;
            let lhs = mu(&g.compose(alpha)?, usize::MAX);
            if lhs != images[k].compose(alpha)? {
                report.failures.push(format!("naturality in M fails for (alpha_{a}, g_{k})"));
            }
        }
    }
    // naturality in N: mu(f^!(β)∘g) = β∘mu(g)
    let end_n = hom_sg(n, n)?;
    for (b, beta) in end_n.basis().iter().enumerate() {
        let restricted = match shriek_morphism(&sh, &sh, beta) {
            Ok(r) => r,
            Err(_) => {
                report.failures.push(format!("beta_{b} does not restrict to f^!N"));
                continue;
            }
        };
        for (k, g) in left.basis().iter().enumerate() {
            report.squares_checked += 1;
            let lhs = mu(&restricted.compose(g)?, usize::MAX);
            if lhs != beta.compose(&images[k])? {
                report.failures.push(format!("naturality in N fails for (beta_{b}, g_{k})"));
            }
        }
    }
    Ok(report)
}

/// `Hom_R(M, f_*N) ≅ Hom_{R/J}(f^*M, N)` via `λ(h) = h∘lift` and
/// `λ′(g) = g∘π`; both composites and naturality in each variable are
/// checked.
pub fn verify_adjunction_star<F: Field>(
    ctx: &QuotientContext<F>,
    m: &SgModule<F>,
    n: &SgModule<F>,
    corruption: Corruption,
) -> Result<AdjunctionReport, SgkError> {
    ctx.check_over_ring(m)?;
    ctx.check_over_quotient(n)?;
    let us = upper_star(ctx, m)?;
    let fn_ = restrict_scalars(ctx, n)?;
    let left = hom_sg(m, &fn_)?;
    let right = hom_sg(&us.module, n)?;
    let lambda = |h: &GradedMap<F>, k: usize| -> GradedMap<F> {
        let out = h.compose(&us.lift).expect("composable");
        if k == 0 && corruption == Corruption::FirstEntry {
            corrupt(&out)
        } else {
            out
        }
    };
    let lambda_prime = |g: &GradedMap<F>| g.compose(&us.projection).expect("composable");
    let mut report = AdjunctionReport {
        left_dim: left.dim(),
        right_dim: right.dim(),
        round_trip: true,
        ..Default::default()
    };
    for (k, h) in left.basis().iter().enumerate() {
        if us.kernel.graded_basis().iter().any(|(_, v)| !glin::is_zero_vec(&h.apply(v))) {
            report.failures.push(format!("h_{k} does not vanish on <JM>^SG"));
        }
    }
    let images: Vec<GradedMap<F>> = left.basis().iter().enumerate().map(|(k, h)| lambda(h, k)).collect();
    report.bijective = is_basis_of(&images, &right);
    for (k, (h, img)) in left.basis().iter().zip(&images).enumerate() {
        if &lambda_prime(img) != h {
            report.round_trip = false;
            report.failures.push(format!("lambda'(lambda(h_{k})) != h_{k}"));
        }
    }
    for (k, g) in right.basis().iter().enumerate() {
        if &lambda(&lambda_prime(g), usize::MAX) != g {
            report.round_trip = false;
            report.failures.push(format!("lambda(lambda'(g_{k})) != g_{k}"));
        }
    }
    // naturality in M: λ(h∘α) = λ(h)∘f^*(α)
    let end_m = hom_sg(m, m)?;
    for (a, alpha) in end_m.basis().iter().enumerate() {
        let star_alpha = match upper_star_morphism(&us, &us, alpha) {
            Ok(x) => x,
            Err(_) => {
                report.failures.push(format!("alpha_{a} does not preserve <JM>^SG"));
                continue;
            }
        };
        for (k, h) in left.basis().iter().enumerate() {
            report.squares_checked += 1;
            if lambda(&h.compose(alpha)?, usize::MAX) != images[k].compose(&star_alpha)? {
                report.failures.push(format!("naturality in M fails for (alpha_{a}, h_{k})"));
            }
        }
    }
    // naturality in N: λ(f_*(β)∘h) = β∘λ(h)
    let end_n = hom_sg(n, n)?;
    for (b, beta) in end_n.basis().iter().enumerate() {
        for (k, h) in left.basis().iter().enumerate() {
            report.squares_checked += 1;
            if lambda(&beta.compose(h)?, usize::MAX) != beta.compose(&images[k])? {
                report.failures.push(format!("naturality in N fails for (beta_{b}, h_{k})"));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::*;
    use crate::freealg::Element;
    use crate::sgcore::Side;
    use num_rational::BigRational;

    type Q = BigRational;

    fn ring(p: crate::Presentation<Q>, d: usize) -> Arc<SgRing<Q>> {
        Arc::new(SgRing::new(p, d).unwrap())
    }

    fn mono(r: &SgRing<Q>, e: &[u32]) -> Element<Q> {
        Element::monomial(r.gens().monomial(e.to_vec()))
    }

    fn ctx(r: &Arc<SgRing<Q>>, gens: &[Element<Q>]) -> QuotientContext<Q> {
        let j = SgIdeal::generated(r, "J", Side::TwoSided, gens).unwrap();
        QuotientContext::new(r.clone(), j).unwrap()
    }

    fn cyclic(r: &Arc<SgRing<Q>>, name: &str, rels: &[Element<Q>]) -> SgModule<Q> {
        let rels: Vec<Vec<(Element<Q>, usize)>> = rels.iter().map(|e| vec![(e.clone(), 0)]).collect();
        SgModule::presented(r.clone(), name, &[("e".into(), 0)], &rels).unwrap()
    }

    fn trim(dims: Vec<usize>) -> Vec<usize> {
        let mut d = dims;
        while d.last() == Some(&0) {
            d.pop();
        }
        d
    }

    #[test]
    fn hom_examples() {
        let kx = ring(univariate(1), 5);
        let free = SgModule::regular(kx.clone());
        assert_eq!(hom_sg(&free, &free).unwrap().dim(), 1);
        let k = cyclic(&kx, "k", &[mono(&kx, &[1])]);
        assert_eq!(hom_sg(&k, &free).unwrap().dim(), 0);
        assert_eq!(hom_sg(&k, &k).unwrap().dim(), 1);
        let h = hom_sg(&free, &k).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(h.contains(&h.basis()[0].scale(&Q::from_i64(3))));
    }

    #[test]
    fn shriek_examples() {
        let kx = ring(univariate(1), 5);
        let c = ctx(&kx, &[mono(&kx, &[1])]);
        let free = SgModule::regular(kx.clone());
        // x^5 looks annihilated from inside the window
        let s = shriek(&c, &free).unwrap();
        assert_eq!(trim(s.module.dims()), vec![0, 0, 0, 0, 0, 1]);
        assert!(s.module.truncated());
        let m = cyclic(&kx, "M", &[mono(&kx, &[2])]);
        let s = shriek(&c, &m).unwrap();
        assert_eq!(trim(s.module.dims()), vec![0, 1]);
        assert!(!s.module.truncated());
    }

    #[test]
    fn upper_star_examples() {
        let qp = ring(quantum_plane(Q::from_i64(2)), 5);
        let c = ctx(&qp, &[mono(&qp, &[0, 1])]);
        let free = SgModule::free(qp.clone(), "F", &[("e".into(), 0)]).unwrap();
        let us = upper_star(&c, &free).unwrap();
        assert_eq!(us.module.dims(), vec![1; 6]);
        assert_eq!(us.module.dims(), c.quotient().dims());
        let a1 = ring(weyl_algebra(), 5);
        let c = ctx(&a1, &[mono(&a1, &[1, 0])]);
        assert_eq!(upper_star(&c, &SgModule::regular(a1.clone())).unwrap().module.total(), 0);
    }

    #[test]
    fn adjunction_examples() {
        let kx = ring(univariate(1), 5);
        let c = ctx(&kx, &[mono(&kx, &[1])]);
        let k = cyclic(&kx, "k", &[mono(&kx, &[1])]);
        let kq = k.clone().over_quotient(c.quotient().clone()).unwrap();
        let n = cyclic(&kx, "N", &[mono(&kx, &[2])]);
        let r = verify_adjunction_shriek(&c, &kq, &n, Corruption::None).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!((r.left_dim, r.right_dim), (0, 0));
        let r = verify_adjunction_shriek(&c, &kq, &k, Corruption::None).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!((r.left_dim, r.right_dim), (1, 1));
        let bad = verify_adjunction_shriek(&c, &kq, &k, Corruption::FirstEntry).unwrap();
        assert!(!bad.holds());
        let free = SgModule::regular(kx.clone());
        let r = verify_adjunction_star(&c, &free, &kq, Corruption::None).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!((r.left_dim, r.right_dim), (1, 1));
        assert!(!verify_adjunction_star(&c, &free, &kq, Corruption::FirstEntry).unwrap().holds());
    }
}
