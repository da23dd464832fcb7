//! Built-in presentations used by tests, the acceptance suite and docs.

use crate::field::Field;
use crate::freealg::{Element, GeneratorTable, Presentation, RewriteRule};

fn table(names: &[&str]) -> GeneratorTable {
    GeneratorTable::new(names.iter().map(|n| (n.to_string(), 1)).collect()).expect("distinct names")
}

fn mono<F: Field>(gens: &GeneratorTable, exps: &[u32]) -> Element<F> {
    Element::monomial(gens.monomial(exps.to_vec()))
}

/// `g_j g_i -> q_{ji} g_i g_j` for every pair; `q` is indexed `[j][i]`.
pub fn skew_polynomial<F: Field>(names: &[&str], q: &[Vec<F>]) -> Presentation<F> {
    let gens = table(names);
    let n = gens.len();
    let mut rules = Vec::new();
    for j in 0..n {
        for i in 0..j {
            let mut e = vec![0; n];
            e[i] = 1;
            e[j] = 1;
            rules.push(RewriteRule {
                lhs: (j, i),
                rhs: mono::<F>(&gens, &e).scale(&q[j][i]),
            });
        }
    }
    Presentation::new("skew", gens, rules).expect("complete rule set")
}

/// Commutative polynomial ring on the given generators (all degree 1).
pub fn polynomial_ring<F: Field>(names: &[&str]) -> Presentation<F> {
    let n = names.len();
    let q = vec![vec![F::one(); n]; n];
    let mut p = skew_polynomial(names, &q);
    p = Presentation::new(&format!("k[{}]", names.join(",")), p.gens().clone(), p.rules().to_vec())
        .expect("complete rule set");
    p
}

/// `yx -> xy + 1`.
pub fn weyl_algebra<F: Field>() -> Presentation<F> {
    let gens = table(&["x", "y"]);
    let rhs = mono::<F>(&gens, &[1, 1]).add(&Element::one(&gens));
    Presentation::new("A1", gens, vec![RewriteRule { lhs: (1, 0), rhs }]).expect("complete rule set")
}

/// `yx -> q xy`.
pub fn quantum_plane<F: Field>(q: F) -> Presentation<F> {
    let gens = table(&["x", "y"]);
    let rhs = mono::<F>(&gens, &[1, 1]).scale(&q);
    Presentation::new("qplane", gens, vec![RewriteRule { lhs: (1, 0), rhs }]).expect("complete rule set")
}

/// `yx -> xy + x^2`.
pub fn jordan_plane<F: Field>() -> Presentation<F> {
    let gens = table(&["x", "y"]);
    let rhs = mono::<F>(&gens, &[1, 1]).add(&mono(&gens, &[2, 0]));
    Presentation::new("jordan", gens, vec![RewriteRule { lhs: (1, 0), rhs }]).expect("complete rule set")
}

/// Enveloping algebra of the two-dimensional non-abelian Lie algebra:
/// `yx -> xy + x`.
pub fn lie_plane<F: Field>() -> Presentation<F> {
    let gens = table(&["x", "y"]);
    let rhs = mono::<F>(&gens, &[1, 1]).add(&mono(&gens, &[1, 0]));
    Presentation::new("lie2", gens, vec![RewriteRule { lhs: (1, 0), rhs }]).expect("complete rule set")
}

/// `yx -> 0`.
pub fn annihilating_plane<F: Field>() -> Presentation<F> {
    let gens = table(&["x", "y"]);
    Presentation::new("yx0", gens, vec![RewriteRule { lhs: (1, 0), rhs: Element::zero() }])
        .expect("complete rule set")
}

/// Single-generator polynomial ring with `x` in the given degree.
pub fn univariate<F: Field>(degree: u32) -> Presentation<F> {
    let gens = GeneratorTable::new(vec![("x".into(), degree)]).expect("one name");
    Presentation::new("k[x]", gens, vec![]).expect("no pairs")
}
