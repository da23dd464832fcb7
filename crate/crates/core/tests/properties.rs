//! Invariants checked on randomly generated inputs. Each case draws a seed
//! and builds its inputs with the shared ChaCha generators.

mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sgk::examples;
use sgk::format::parse_element;
use sgk::functors::{self, QuotientContext};
use sgk::glin::{GradedSubspace, Matrix, Subspace};
use sgk::sgcore::Side;
use sgk::sgmod::{self, is_sg_submodule};
use sgk::{Element, SgModule, SgRing, Word, WordCombination};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sample_ring(seed: u64, d: usize) -> Arc<SgRing<Q>> {
    match seed % 4 {
        0 => ring(examples::weyl_algebra(), d),
        1 => ring(examples::quantum_plane(q(2)), d),
        2 => ring(examples::jordan_plane(), d),
        _ => ring(random_skew(&mut rng(seed), 2), d),
    }
}

fn random_element(r: &mut ChaCha8Rng, ring: &SgRing<Q>, max_deg: usize) -> Element<Q> {
    let mut e = Element::zero();
    for _ in 0..r.gen_range(1..=3) {
        let d = r.gen_range(0..=max_deg);
        e = e.add(&random_homogeneous(r, ring, d, 2));
    }
    e
}

fn random_word(r: &mut ChaCha8Rng, letters: usize, max_len: usize) -> Word {
    let len = r.gen_range(0..=max_len);
    Word((0..len).map(|_| r.gen_range(0..letters)).collect())
}

fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix<Q> {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| if r.gen_bool(0.4) { coef(r) } else { q(0) }).collect())
        .collect();
    Matrix::from_rows(data, cols)
}

fn random_subspace(r: &mut ChaCha8Rng, n: usize) -> Subspace<Q> {
    let k = r.gen_range(0..=n);
    Subspace::span(n, (0..k).map(|_| (0..n).map(|_| if r.gen_bool(0.5) { coef(r) } else { q(0) }).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normal_form_is_idempotent_and_degree_bounded(seed in any::<u64>()) {
        let p = sample_ring(seed, 6).presentation().clone();
        let mut r = rng(seed);
        let w = random_word(&mut r, 2, 6);
        let nf = p.normal_form(&WordCombination::word(w.clone()));
        prop_assert_eq!(p.normal_form_element(&nf), nf.clone());
        prop_assert!(nf.max_degree().unwrap_or(0) <= p.gens().word_degree(&w));
        for (m, _) in nf.terms() {
            prop_assert!(m.word().is_normal());
        }
    }

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        let ring = sample_ring(seed, 9);
        let p = ring.presentation();
        let mut r = rng(seed ^ 1);
        let (a, b, c) = (random_element(&mut r, &ring, 2), random_element(&mut r, &ring, 2), random_element(&mut r, &ring, 2));
        prop_assert_eq!(p.multiply(&p.multiply(&a, &b), &c), p.multiply(&a, &p.multiply(&b, &c)));
    }

    #[test]
    fn graded_products_add_degrees(seed in any::<u64>()) {
        let ring = ring(random_skew(&mut rng(seed), 3), 6);
        let mut r = rng(seed ^ 2);
        let (da, db) = (r.gen_range(0..=3), r.gen_range(0..=3));
        let a = random_homogeneous(&mut r, &ring, da, 2);
        let b = random_homogeneous(&mut r, &ring, db, 2);
        let ab = ring.multiply(&a, &b);
        prop_assert!(ab.is_homogeneous());
        prop_assert_eq!(ab.min_degree().unwrap_or((da + db) as u32), (da + db) as u32);
    }

    #[test]
    fn display_parses_back(seed in any::<u64>()) {
        let ring = sample_ring(seed, 6);
        let e = random_element(&mut rng(seed ^ 3), &ring, 4);
        let text = e.display(ring.gens());
        prop_assert_eq!(parse_element(ring.presentation(), &text).unwrap(), e);
    }

    #[test]
    fn rank_nullity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(1..=6), r.gen_range(1..=6));
        let a = random_matrix(&mut r, rows, cols);
        let null = a.nullspace();
        prop_assert_eq!(a.rank() + null.len(), cols);
        for v in &null {
            prop_assert!(a.apply(v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn subspace_lattice_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=6);
        let (u, v) = (random_subspace(&mut r, n), random_subspace(&mut r, n));
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(&s, &v.sum(&u).unwrap());
        prop_assert_eq!(&i, &v.intersect(&u).unwrap());
        prop_assert_eq!(&u.sum(&u).unwrap(), &u);
        prop_assert_eq!(&u.intersect(&u).unwrap(), &u);
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(i.is_subspace_of(&u) && u.is_subspace_of(&s));
    }

    #[test]
    fn closure_is_extensive_idempotent_and_monotone(seed in any::<u64>()) {
        let ring = sample_ring(seed, 6);
        let m = SgModule::regular(ring.clone());
        let g = m.grading().clone();
        let mut r = rng(seed ^ 4);
        let x = random_vector(&mut r, &g, 0, 4, 3);
        let y = random_vector(&mut r, &g, 0, 4, 3);
        let cx = m.sg_closure(std::slice::from_ref(&x));
        let cxy = m.sg_closure(&[x.clone(), y]);
        prop_assert!(cx.contains(&x).unwrap());
        prop_assert_eq!(&m.sg_closure(&cx.flat_basis()), &cx);
        prop_assert!(cx.is_subspace_of(&cxy));
        prop_assert!(m.plain_closure(&[x]).is_subspace_of(&cx.to_flat()));
    }

    #[test]
    fn r_geq_is_antitone(seed in any::<u64>()) {
        let ring = sample_ring(seed, 6);
        let t = (seed % 5) as usize + 1;
        let upper = ring.r_geq(t + 1).space;
        let lower = ring.r_geq(t).space;
        prop_assert!(upper.is_subspace_of(&lower));
        for d in t..=ring.bound() {
            prop_assert_eq!(lower.slice(d).dim(), ring.window().dim(d));
        }
    }

    #[test]
    fn double_prime_inside_prime(seed in any::<u64>()) {
        let ring = sample_ring(seed, 5);
        for n in 0..=ring.bound() {
            let p = ring.r_prime(n);
            prop_assert!(ring.r_double_prime(n).is_subspace_of(&p));
            prop_assert_eq!(p, prime_oracle(&ring, n, false));
        }
    }

    #[test]
    fn quotient_ring_dimensions_add_up(seed in any::<u64>()) {
        let ring = ring(random_skew(&mut rng(seed), 2), 6);
        let mut r = rng(seed ^ 5);
        let d = r.gen_range(1..=2);
        let j = two_sided(&ring, "J", &[random_homogeneous(&mut r, &ring, d, 2)]);
        let jd = j.space().dims();
        let quo = quotient(&ring, j);
        for (k, qd) in quo.dims().into_iter().enumerate() {
            prop_assert_eq!(qd + jd[k], ring.window().dim(k));
        }
    }

    #[test]
    fn graded_rings_have_full_prime_components(seed in any::<u64>()) {
        let ring = ring(random_skew(&mut rng(seed), 2), 6);
        for n in 0..=ring.bound() {
            prop_assert_eq!(ring.r_prime(n).dim(), ring.window().dim(n));
        }
        let mut r = rng(seed ^ 6);
        // in a graded ring the SG closure is the plain closure of the components
        let x = random_element(&mut r, &ring, 3);
        let c = ring.sg_closure(Side::Left, std::slice::from_ref(&x)).unwrap();
        prop_assert!(!c.truncated);
        let parts: Vec<Element<Q>> = x.degree_decompose().into_values().collect();
        prop_assert_eq!(c.space.to_flat(), ring.plain_closure(Side::Left, &parts).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn torsion_is_an_sg_submodule(seed in any::<u64>()) {
        let qp = ring(examples::quantum_plane(q(2)), 5);
        let mut r = rng(seed);
        let m = random_module(&mut r, &qp, None, 2);
        let t = sgmod::torsion(&m).space;
        let flat = t.to_flat();
        prop_assert!(is_sg_submodule(&m, &flat).unwrap().is_sg);
        for v in flat.basis() {
            for g in 0..2 {
                let (w, _) = m.act(&Element::generator(qp.gens(), g), v);
                prop_assert!(flat.contains(&w));
            }
        }
    }

    #[test]
    fn module_quotient_dimensions_subtract(seed in any::<u64>()) {
        let ring = sample_ring(seed, 5);
        let mut r = rng(seed ^ 7);
        let m = random_module(&mut r, &ring, None, 1);
        let xs: Vec<Vec<Q>> = (0..2).map(|_| random_vector(&mut r, m.grading(), 0, 3, 2)).collect();
        let n = m.sg_closure(&xs);
        let quo = m.quotient(&n).unwrap();
        let nd = n.dims();
        for (k, d) in quo.dims().iter().enumerate() {
            prop_assert_eq!(d + nd[k], m.grading().dim(k));
        }
        let p = m.projection(&n);
        for v in n.flat_basis() {
            prop_assert!(p.apply(&v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn sg_submodules_equal_their_closure(seed in any::<u64>()) {
        let ring = sample_ring(seed, 5);
        let m = SgModule::regular(ring.clone());
        let mut r = rng(seed ^ 8);
        let x = random_vector(&mut r, m.grading(), 0, 3, 3);
        let n = m.plain_closure(&[x]);
        let test = is_sg_submodule(&m, &n).unwrap();
        let closed = m.sg_closure(n.basis()).to_flat() == n;
        prop_assert_eq!(test.is_sg, closed);
        prop_assert_eq!(test.witness.is_none(), test.is_sg);
    }

    #[test]
    fn shriek_is_the_largest_annihilated_submodule(seed in any::<u64>()) {
        let kx = ring(examples::quantum_plane(q(2)), 4);
        let ctx = QuotientContext::new(kx.clone(), two_sided(&kx, "Jy", &[mono(kx.gens(), &[0, 1])])).unwrap();
        let mut r = rng(seed);
        let n = random_module(&mut r, &kx, None, 2);
        let sh = functors::shriek(&ctx, &n).unwrap();
        let image = sh.inclusion.image();
        let y = Element::generator(kx.gens(), 1);
        for v in image.flat_basis() {
            prop_assert!(n.act(&y, &v).0.iter().all(|c| *c == q(0)));
        }
        // anything SG and killed by y inside the window sits in the image
        let killed = GradedSubspace::degreewise_part(n.grading(), &Subspace::span(n.total(), n.action(1).nullspace()));
        let closure = n.sg_closure(&killed.flat_basis());
        let all_killed = closure.flat_basis().iter().all(|v| n.act(&y, v).0.iter().all(|c| *c == q(0)));
        if all_killed {
            prop_assert!(closure.is_subspace_of(&image));
        }
    }

    #[test]
    fn upper_star_kernel_is_closure_of_jm(seed in any::<u64>()) {
        let qp = ring(examples::quantum_plane(q(2)), 4);
        let ctx = QuotientContext::new(qp.clone(), two_sided(&qp, "Jx", &[mono(qp.gens(), &[1, 0])])).unwrap();
        let mut r = rng(seed);
        let m = random_module(&mut r, &qp, None, 2);
        let us = functors::upper_star(&ctx, &m).unwrap();
        let x = Element::generator(qp.gens(), 0);
        let jm: Vec<Vec<Q>> = (0..m.total()).map(|i| m.act(&x, &unit(m.total(), i)).0).collect();
        let expected = m.sg_closure(&jm);
        prop_assert_eq!(&us.kernel, &expected);
        prop_assert_eq!(us.projection.kernel(), expected);
        prop_assert_eq!(us.module.total() + us.kernel.dim(), m.total());
    }

    #[test]
    fn adjunction_hom_dimensions_agree(seed in any::<u64>()) {
        let kx = ring(examples::univariate(1), 4);
        let ctx = QuotientContext::new(kx.clone(), two_sided(&kx, "Jx", &[mono(kx.gens(), &[1])])).unwrap();
        let mut r = rng(seed);
        let mq = random_module(&mut r, &kx, Some(ctx.ideal()), 1).over_quotient(ctx.quotient().clone()).unwrap();
        let n = random_module(&mut r, &kx, None, 2);
        let sh = functors::shriek(&ctx, &n).unwrap();
        let fm = functors::restrict_scalars(&ctx, &mq).unwrap();
        prop_assert_eq!(functors::hom_sg(&mq, &sh.module).unwrap().dim(), functors::hom_sg(&fm, &n).unwrap().dim());
        let m = random_module(&mut r, &kx, None, 2);
        let us = functors::upper_star(&ctx, &m).unwrap();
        let fn_ = functors::restrict_scalars(&ctx, &mq).unwrap();
        prop_assert_eq!(functors::hom_sg(&us.module, &mq).unwrap().dim(), functors::hom_sg(&m, &fn_).unwrap().dim());
    }

    #[test]
    fn functors_preserve_composition(seed in any::<u64>()) {
        let kx = ring(examples::univariate(1), 4);
        let ctx = QuotientContext::new(kx.clone(), two_sided(&kx, "Jx", &[mono(kx.gens(), &[1])])).unwrap();
        let mut r = rng(seed);
        let m = random_module(&mut r, &kx, None, 2);
        let end = functors::hom_sg(&m, &m).unwrap();
        let basis = end.basis();
        prop_assume!(!basis.is_empty());
        let a = &basis[r.gen_range(0..basis.len())];
        let b = &basis[r.gen_range(0..basis.len())];
        let us = functors::upper_star(&ctx, &m).unwrap();
        let fa = functors::upper_star_morphism(&us, &us, a).unwrap();
        let fb = functors::upper_star_morphism(&us, &us, b).unwrap();
        let fab = functors::upper_star_morphism(&us, &us, &b.compose(a).unwrap()).unwrap();
        prop_assert_eq!(fab, fb.compose(&fa).unwrap());
        let sh = functors::shriek(&ctx, &m).unwrap();
        let sa = functors::shriek_morphism(&sh, &sh, a).unwrap();
        let sb = functors::shriek_morphism(&sh, &sh, b).unwrap();
        let sab = functors::shriek_morphism(&sh, &sh, &b.compose(a).unwrap()).unwrap();
        prop_assert_eq!(sab, sb.compose(&sa).unwrap());
    }
}
