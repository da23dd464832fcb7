//! Random generators and brute-force oracles shared by the integration
//! suites. Nothing here calls the closure or prime-set code under test.

#![allow(dead_code)]

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sgk::examples;
use sgk::field::Field;
use sgk::glin::{self, Grading, Matrix, Subspace};
use sgk::sgcore::{SgIdeal, Side};
use sgk::{Element, GeneratorTable, Presentation, QuotientRing, Rational, SgModule, SgRing};

pub type Q = Rational;

pub fn q(v: i64) -> Q {
    Q::from_i64(v)
}

pub fn ring(p: Presentation<Q>, d: usize) -> Arc<SgRing<Q>> {
    Arc::new(SgRing::new(p, d).expect("valid presentation"))
}

pub fn mono(gens: &GeneratorTable, e: &[u32]) -> Element<Q> {
    Element::monomial(gens.monomial(e.to_vec()))
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = q(1);
    v
}

/// Small nonzero integer.
pub fn coef(rng: &mut ChaCha8Rng) -> Q {
    let v = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    q(v)
}

/// Random nonzero homogeneous element of degree `d` with up to `terms` terms.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, r: &SgRing<Q>, d: usize, terms: usize) -> Element<Q> {
    let comp = r.component(d).expect("degree in window");
    loop {
        let mut e = Element::zero();
        for _ in 0..rng.gen_range(1..=terms) {
            let m = comp[rng.gen_range(0..comp.len())].clone();
            e.add_term(m, coef(rng));
        }
        if !e.is_zero() {
            return e;
        }
    }
}

/// Random window vector supported in degrees `lo..=hi`.
pub fn random_vector(rng: &mut ChaCha8Rng, g: &Grading, lo: usize, hi: usize, terms: usize) -> Vec<Q> {
    let start = g.range(lo).start;
    let end = g.range(hi).end;
    let mut v = vec![Q::zero(); g.total()];
    if start == end {
        return v;
    }
    for _ in 0..terms {
        let i = rng.gen_range(start..end);
        v[i] = v[i].clone() + coef(rng);
    }
    v
}

/// A random skew polynomial ring on `n` generators with nonzero integer
/// twists.
pub fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> Presentation<Q> {
    let names: Vec<&str> = ["x", "y", "z"][..n].to_vec();
    let mut tw = vec![vec![q(1); n]; n];
    for j in 0..n {
        for i in 0..j {
            tw[j][i] = q([1, 2, 3, -1, -2][rng.gen_range(0..5)]);
        }
    }
    examples::skew_polynomial(&names, &tw)
}

/// Three generators with `yx = 2xy`, `zx = 3xz`, `zy = -yz`.
pub fn three_generator_skew() -> Presentation<Q> {
    examples::skew_polynomial(
        &["x", "y", "z"],
        &[vec![q(1), q(1), q(1)], vec![q(2), q(1), q(1)], vec![q(3), q(-1), q(1)]],
    )
}

/// Cyclic or two-generator module with random homogeneous relations; when
/// `ideal` is given, `J·e` is added to the relations for each generator so
/// the result is a module over `R/J`.
pub fn random_module(
    rng: &mut ChaCha8Rng,
    r: &Arc<SgRing<Q>>,
    ideal: Option<&SgIdeal<Q>>,
    max_rels: usize,
) -> SgModule<Q> {
    let ngens = rng.gen_range(1..=2);
    let gens: Vec<(String, usize)> = (0..ngens).map(|i| (format!("e{i}"), rng.gen_range(0..=1))).collect();
    let bound = r.bound();
    let mut rels: Vec<Vec<(Element<Q>, usize)>> = Vec::new();
    for _ in 0..rng.gen_range(0..=max_rels) {
        let mut rel = Vec::new();
        let d = rng.gen_range(1..=bound.min(3));
        for (i, (_, gd)) in gens.iter().enumerate() {
            if d >= *gd && (rel.is_empty() || rng.gen_bool(0.5)) {
                rel.push((random_homogeneous(rng, r, d - gd, 2), i));
            }
        }
        if !rel.is_empty() {
            rels.push(rel);
        }
    }
    if let Some(j) = ideal {
        for (dj, v) in j.space().graded_basis() {
            let je = r.element(&v);
            for (i, (_, gd)) in gens.iter().enumerate() {
                if dj + gd <= bound {
                    rels.push(vec![(je.clone(), i)]);
                }
            }
        }
    }
    SgModule::presented(r.clone(), "M", &gens, &rels).expect("relations fit the window")
}

pub fn two_sided(r: &Arc<SgRing<Q>>, name: &str, gens: &[Element<Q>]) -> SgIdeal<Q> {
    SgIdeal::generated(r, name, Side::TwoSided, gens).expect("ideal fits")
}

pub fn quotient(r: &Arc<SgRing<Q>>, j: SgIdeal<Q>) -> Arc<QuotientRing<Q>> {
    Arc::new(QuotientRing::new(r.clone(), j).expect("two-sided"))
}

/// Smallest subspace containing `seed` and closed under taking homogeneous
/// components and under `ops`, by naive iteration to a fixpoint.
pub fn fixpoint_closure(g: &Grading, seed: &[Vec<Q>], ops: &[&dyn Fn(&[Q]) -> Vec<Q>]) -> Subspace<Q> {
    let mut span = Subspace::zero(g.total());
    let mut queue: Vec<Vec<Q>> = Vec::new();
    for v in seed {
        for d in g.support(v) {
            queue.push(g.component(v, d));
        }
    }
    while let Some(v) = queue.pop() {
        if !span.insert(&v) {
            continue;
        }
        for op in ops {
            let w = op(&v);
            for d in g.support(&w) {
                queue.push(g.component(&w, d));
            }
        }
    }
    span
}

/// `{r ∈ R_n : r·h (and h·r when `both`) is homogeneous of degree n + deg h
/// for every window monomial h}`, by brute force on coefficient vectors.
pub fn prime_oracle(r: &SgRing<Q>, n: usize, both: bool) -> Subspace<Q> {
    let comp = r.component(n).expect("in window");
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for m in 0..=r.bound() - n {
        for h in r.component(m).expect("in window") {
            let h = Element::monomial(h);
            let mut sides = vec![true];
            if both {
                sides.push(false);
            }
            for left in sides {
                let prods: Vec<Element<Q>> = comp
                    .iter()
                    .map(|mu| {
                        let mu = Element::monomial(mu.clone());
                        if left {
                            r.multiply(&mu, &h)
                        } else {
                            r.multiply(&h, &mu)
                        }
                    })
                    .collect();
                let mut keys = Vec::new();
                for p in &prods {
                    for (mm, _) in p.terms() {
                        if mm.degree() as usize != n + m && !keys.contains(mm) {
                            keys.push(mm.clone());
                        }
                    }
                }
                for k in keys {
                    rows.push(prods.iter().map(|p| p.coefficient(&k)).collect());
                }
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(comp.len());
    }
    Subspace::span(comp.len(), glin::solve(&Matrix::from_rows(rows, comp.len())))
}
