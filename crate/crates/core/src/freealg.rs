//! Words over a generator table, PBW presentations and rewriting to normal
//! form.
//!
//! A presentation has one rule `g_j g_i -> rhs` for every descending pair
//! `j > i`. Normal words are the weakly increasing ones, identified with
//! exponent vectors ([`Monomial`]).
//!
//! Termination: words are ordered by (degree, length, lexicographic), which
//! is a well-order compatible with concatenation because every generator has
//! degree at least one. Validation requires every rhs monomial to be smaller
//! than its lhs in this order, so each rewrite replaces a word by a
//! combination of strictly smaller words.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::field::Field;
use crate::SgkError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    names: Vec<String>,
    degrees: Vec<u32>,
}

impl GeneratorTable {
    /// Order of `gens` is the PBW order. Names must be distinct; degrees are
    /// checked by [`Presentation::validate`].
    pub fn new(gens: Vec<(String, u32)>) -> Result<Self, SgkError> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for (n, d) in gens {
            if names.contains(&n) {
                return Err(SgkError::InvalidPresentation(format!("duplicate generator `{n}`")));
            }
            names.push(n);
            degrees.push(d);
        }
        Ok(GeneratorTable { names, degrees })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn word_degree(&self, w: &Word) -> u32 {
        w.0.iter().map(|&g| self.degrees[g]).sum()
    }

    pub fn monomial(&self, exps: Vec<u32>) -> Monomial {
        let degree = exps.iter().zip(&self.degrees).map(|(e, d)| e * d).sum();
        Monomial { degree, exps }
    }

    pub fn generator_monomial(&self, g: usize) -> Monomial {
        let mut e = vec![0; self.len()];
        e[g] = 1;
        self.monomial(e)
    }

    pub fn one(&self) -> Monomial {
        self.monomial(vec![0; self.len()])
    }

    /// All PBW monomials of total degree `d`, in display order (x^2, xy, y^2).
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.len()];
        self.fill(0, d, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    fn fill(&self, i: usize, rest: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.len() {
            if rest == 0 {
                out.push(self.monomial(exps.clone()));
            }
            return;
        }
        let d = self.degrees[i];
        if d == 0 {
            // a degree-0 generator has infinitely many monomials; refuse to enumerate
            return;
        }
        let mut e = 0;
        while e * d <= rest {
            exps[i] = e;
            self.fill(i + 1, rest - e * d, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
}

/// A word in the free monoid on the generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn is_normal(&self) -> bool {
        self.0.windows(2).all(|p| p[0] <= p[1])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn display(&self, gens: &GeneratorTable) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0.iter().map(|&g| gens.name(g).to_string()).collect::<Vec<_>>().join("*")
    }
}

/// A PBW monomial `x_1^{a_1} ... x_g^{a_g}`. Ordered by degree first, then
/// lexicographically on the exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn word(&self) -> Word {
        let mut w = Vec::new();
        for (g, &e) in self.exps.iter().enumerate() {
            w.extend(std::iter::repeat_n(g, e as usize));
        }
        Word(w)
    }

    pub fn display(&self, gens: &GeneratorTable) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(g, &e)| {
                if e == 1 {
                    gens.name(g).to_string()
                } else {
                    format!("{}^{}", gens.name(g), e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A linear combination of arbitrary words; what the parser produces before
/// rewriting.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WordCombination<F> {
    terms: BTreeMap<Word, F>,
}

impl<F: Field> WordCombination<F> {
    pub fn zero() -> Self {
        WordCombination { terms: BTreeMap::new() }
    }

    pub fn scalar(c: F) -> Self {
        let mut w = Self::zero();
        w.add_term(Word::default(), c);
        w
    }

    pub fn word(w: Word) -> Self {
        let mut out = Self::zero();
        out.add_term(w, F::one());
        out
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&w) {
            Some(x) => x.clone() + c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.clone() * c.clone());
        }
        out
    }

    /// Concatenation product (no rewriting).
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x.clone() * y.clone());
            }
        }
        out
    }

    /// Interprets the combination as an element when every word is normal.
    pub fn to_element(&self, gens: &GeneratorTable) -> Option<Element<F>> {
        let mut e = Element::zero();
        for (w, c) in &self.terms {
            if !w.is_normal() {
                return None;
            }
            let mut exps = vec![0; gens.len()];
            for &g in w.letters() {
                exps[g] += 1;
            }
            e.add_term(gens.monomial(exps), c.clone());
        }
        Some(e)
    }
}

/// An element of the presented ring: nonzero coefficients on PBW monomials.
/// The map is canonical, so structural equality is ring equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Element<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Element<F> {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn scalar(gens: &GeneratorTable, c: F) -> Self {
        Self::term(gens.one(), c)
    }

    pub fn one(gens: &GeneratorTable) -> Self {
        Self::scalar(gens, F::one())
    }

    pub fn generator(gens: &GeneratorTable, g: usize) -> Self {
        Self::monomial(gens.generator_monomial(g))
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(x) => x.clone() + c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.clone() * c.clone());
        }
        out
    }

    /// Homogeneous components keyed by degree; only degrees present appear.
    pub fn degree_decompose(&self) -> BTreeMap<u32, Element<F>> {
        let mut out: BTreeMap<u32, Element<F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree).or_insert_with(Element::zero).add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn component(&self, d: u32) -> Element<F> {
        let mut out = Self::zero();
        for (m, c) in self.terms.iter().filter(|(m, _)| m.degree == d) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn to_words(&self) -> WordCombination<F> {
        let mut w = WordCombination::zero();
        for (m, c) in &self.terms {
            w.add_term(m.word(), c.clone());
        }
        w
    }

    /// Highest degree first, then lexicographically larger exponents first.
    pub fn display(&self, gens: &GeneratorTable) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.display(gens));
            } else {
                out.push_str(&format!("{}*{}", abs, m.display(gens)));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule<F> {
    /// `(j, i)` with `j > i`: the word `g_j g_i`.
    pub lhs: (usize, usize),
    pub rhs: Element<F>,
}

impl<F: Field> RewriteRule<F> {
    pub fn lhs_word(&self) -> Word {
        Word(vec![self.lhs.0, self.lhs.1])
    }
}

/// A violated presentation requirement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    NonPositiveDegree { generator: String },
    DegreeIncrease { rule: String, monomial: String, monomial_degree: u32, lhs_degree: u32 },
    Unoriented { rule: String, monomial: String },
    DuplicateRule { lhs: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositiveDegree { generator } => {
                write!(f, "generator {generator} has degree 0")
            }
            Violation::DegreeIncrease { rule, monomial, monomial_degree, lhs_degree } => write!(
                f,
                "rule {rule}: rhs monomial {monomial} has degree {monomial_degree} > {lhs_degree}"
            ),
            Violation::Unoriented { rule, monomial } => {
                write!(f, "rule {rule}: rhs monomial {monomial} is not smaller than the lhs")
            }
            Violation::DuplicateRule { lhs } => write!(f, "more than one rule for {lhs}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

/// An overlap whose two reductions disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unresolved {
    pub word: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfluenceReport {
    pub bound: u32,
    pub overlaps_checked: usize,
    pub unresolved: Vec<Unresolved>,
}

impl ConfluenceReport {
    pub fn confluent(&self) -> bool {
        self.unresolved.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation<F> {
    name: String,
    gens: GeneratorTable,
    rules: Vec<RewriteRule<F>>,
}

impl<F: Field> Presentation<F> {
    /// Every descending pair needs at least one rule, and each lhs must be
    /// descending. Semantic conditions are left to [`Self::validate`].
    pub fn new(name: &str, gens: GeneratorTable, rules: Vec<RewriteRule<F>>) -> Result<Self, SgkError> {
        let n = gens.len();
        for r in &rules {
            let (j, i) = r.lhs;
            if j >= n || i >= n || j <= i {
                return Err(SgkError::InvalidPresentation(format!(
                    "rule lhs must be a descending pair of generators, got ({j}, {i})"
                )));
            }
            if r.rhs.terms().any(|(m, _)| m.exponents().len() != n) {
                return Err(SgkError::InvalidPresentation("rhs uses a foreign generator table".into()));
            }
        }
        for j in 0..n {
            for i in 0..j {
                if !rules.iter().any(|r| r.lhs == (j, i)) {
                    return Err(SgkError::InvalidPresentation(format!(
                        "missing rule for {}*{}",
                        gens.name(j),
                        gens.name(i)
                    )));
                }
            }
        }
        Ok(Presentation {
            name: name.to_string(),
            gens,
            rules,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gens(&self) -> &GeneratorTable {
        &self.gens
    }

    pub fn rules(&self) -> &[RewriteRule<F>] {
        &self.rules
    }

    fn rule(&self, j: usize, i: usize) -> &RewriteRule<F> {
        self.rules
            .iter()
            .find(|r| r.lhs == (j, i))
            .expect("presentation has a rule for every descending pair")
    }

    /// True when every rule is homogeneous of the lhs degree.
    pub fn is_graded(&self) -> bool {
        self.rules.iter().all(|r| {
            let d = self.gens.word_degree(&r.lhs_word());
            r.rhs.terms().all(|(m, _)| m.degree() == d)
        })
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (g, &d) in self.gens.degrees().iter().enumerate() {
            if d == 0 {
                violations.push(Violation::NonPositiveDegree {
                    generator: self.gens.name(g).to_string(),
                });
            }
        }
        for (k, r) in self.rules.iter().enumerate() {
            let lhs = r.lhs_word();
            let lhs_deg = self.gens.word_degree(&lhs);
            let rule = format!("{} -> {}", lhs.display(&self.gens), r.rhs.display(&self.gens));
            for (m, _) in r.rhs.terms() {
                if m.degree() > lhs_deg {
                    violations.push(Violation::DegreeIncrease {
                        rule: rule.clone(),
                        monomial: m.display(&self.gens),
                        monomial_degree: m.degree(),
                        lhs_degree: lhs_deg,
                    });
                } else if m.degree() == lhs_deg && !word_less(&m.word(), &lhs) {
                    violations.push(Violation::Unoriented {
                        rule: rule.clone(),
                        monomial: m.display(&self.gens),
                    });
                }
            }
            if self.rules[..k].iter().any(|s| s.lhs == r.lhs) {
                violations.push(Violation::DuplicateRule {
                    lhs: lhs.display(&self.gens),
                });
            }
        }
        ValidationReport { violations }
    }

    /// Normal form of a single word.
    pub fn normal_form_word(&self, w: &Word) -> Element<F> {
        let mut memo = HashMap::new();
        self.nf_word(w, &mut memo)
    }

    /// Normal form of a combination of words; linear in the input.
    pub fn normal_form(&self, e: &WordCombination<F>) -> Element<F> {
        let mut memo = HashMap::new();
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let n = self.nf_word(w, &mut memo);
            out = out.add(&n.scale(c));
        }
        out
    }

    /// Re-reduces an element; the identity on valid elements.
    pub fn normal_form_element(&self, e: &Element<F>) -> Element<F> {
        self.normal_form(&e.to_words())
    }

    pub fn multiply(&self, a: &Element<F>, b: &Element<F>) -> Element<F> {
        let mut memo = HashMap::new();
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let n = self.nf_word(&ma.word().concat(&mb.word()), &mut memo);
                out = out.add(&n.scale(&(ca.clone() * cb.clone())));
            }
        }
        out
    }

    pub fn power(&self, a: &Element<F>, k: u32) -> Element<F> {
        let mut acc = Element::one(&self.gens);
        for _ in 0..k {
            acc = self.multiply(&acc, a);
        }
        acc
    }

    fn nf_word(&self, w: &Word, memo: &mut HashMap<Word, Element<F>>) -> Element<F> {
        if let Some(e) = memo.get(w) {
            return e.clone();
        }
        let letters = w.letters();
        let out = match letters.windows(2).position(|p| p[0] > p[1]) {
            None => {
                let mut exps = vec![0; self.gens.len()];
                for &g in letters {
                    exps[g] += 1;
                }
                Element::monomial(self.gens.monomial(exps))
            }
            Some(i) => {
                let rule = self.rule(letters[i], letters[i + 1]);
                let mut acc = Element::zero();
                for (m, c) in rule.rhs.terms() {
                    let mut nw = letters[..i].to_vec();
                    nw.extend_from_slice(m.word().letters());
                    nw.extend_from_slice(&letters[i + 2..]);
                    let n = self.nf_word(&Word(nw), memo);
                    acc = acc.add(&n.scale(c));
                }
                acc
            }
        };
        memo.insert(w.clone(), out.clone());
        out
    }

    /// Resolves every overlap `g_k g_j g_i` (k > j > i) of degree at most
    /// `bound`, plus any pair that carries two different rules.
    pub fn check_confluence(&self, bound: u32) -> ConfluenceReport {
        let mut memo = HashMap::new();
        let mut unresolved = Vec::new();
        let mut checked = 0;
        let n = self.gens.len();
        for j in 0..n {
            for i in 0..j {
                let rules: Vec<_> = self.rules.iter().filter(|r| r.lhs == (j, i)).collect();
                for r in &rules[1..] {
                    checked += 1;
                    if r.rhs != rules[0].rhs {
                        unresolved.push(Unresolved {
                            word: Word(vec![j, i]).display(&self.gens),
                            left: rules[0].rhs.display(&self.gens),
                            right: r.rhs.display(&self.gens),
                        });
                    }
                }
            }
        }
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let w = Word(vec![k, j, i]);
                    if self.gens.word_degree(&w) > bound {
                        continue;
                    }
                    checked += 1;
                    let first = self.rule(k, j);
                    let second = self.rule(j, i);
                    let mut left = Element::zero();
                    for (m, c) in first.rhs.terms() {
                        let nw = m.word().concat(&Word(vec![i]));
                        left = left.add(&self.nf_word(&nw, &mut memo).scale(c));
                    }
                    let mut right = Element::zero();
                    for (m, c) in second.rhs.terms() {
                        let nw = Word(vec![k]).concat(&m.word());
                        right = right.add(&self.nf_word(&nw, &mut memo).scale(c));
                    }
                    if left != right {
                        unresolved.push(Unresolved {
                            word: w.display(&self.gens),
                            left: left.display(&self.gens),
                            right: right.display(&self.gens),
                        });
                    }
                }
            }
        }
        ConfluenceReport {
            bound,
            overlaps_checked: checked,
            unresolved,
        }
    }
}

/// The (degree, length, lex) order restricted to words of equal degree.
fn word_less(a: &Word, b: &Word) -> bool {
    (a.0.len(), &a.0) < (b.0.len(), &b.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{jordan_plane, quantum_plane, weyl_algebra};
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn validate_examples() {
        assert!(weyl_algebra::<Q>().validate().accepted());
        assert!(quantum_plane::<Q>(q(2)).validate().accepted());
        let gens = GeneratorTable::new(vec![("x".into(), 1), ("y".into(), 1)]).unwrap();
        let xy2 = Element::<Q>::monomial(gens.monomial(vec![1, 2]));
        let p = Presentation::new("bad", gens, vec![RewriteRule { lhs: (1, 0), rhs: xy2 }]).unwrap();
        let report = p.validate();
        assert!(!report.accepted());
        assert!(matches!(
            report.violations[0],
            Violation::DegreeIncrease { monomial_degree: 3, lhs_degree: 2, .. }
        ));
    }

    #[test]
    fn unoriented_rule_is_rejected() {
        let gens = GeneratorTable::new(vec![("x".into(), 1), ("y".into(), 1)]).unwrap();
        let y2 = Element::<Q>::monomial(gens.monomial(vec![0, 2]));
        let p = Presentation::new("loop", gens, vec![RewriteRule { lhs: (1, 0), rhs: y2 }]).unwrap();
        assert!(matches!(p.validate().violations[0], Violation::Unoriented { .. }));
    }

    #[test]
    fn missing_rule_is_structural_error() {
        let gens = GeneratorTable::new(vec![("x".into(), 1), ("y".into(), 1)]).unwrap();
        assert!(Presentation::<Q>::new("free", gens, vec![]).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let a1 = weyl_algebra::<Q>();
        let g = a1.gens().clone();
        assert_eq!(a1.normal_form_word(&Word(vec![1, 0])).display(&g), "x*y + 1");
        assert_eq!(a1.normal_form_word(&Word(vec![1, 1, 0])).display(&g), "x*y^2 + 2*y");
        let qp = quantum_plane::<Q>(q(2));
        assert_eq!(qp.normal_form_word(&Word(vec![1, 0])).display(qp.gens()), "2*x*y");
    }

    #[test]
    fn multiply_examples() {
        let a1 = weyl_algebra::<Q>();
        let g = a1.gens().clone();
        let x = Element::generator(&g, 0);
        let y = Element::generator(&g, 1);
        assert_eq!(a1.multiply(&x, &y).display(&g), "x*y");
        assert_eq!(a1.multiply(&y, &x).display(&g), "x*y + 1");
        let qp = quantum_plane::<Q>(q(2));
        let g = qp.gens().clone();
        let y2 = Element::monomial(g.monomial(vec![0, 2]));
        let x = Element::generator(&g, 0);
        assert_eq!(qp.multiply(&y2, &x).display(&g), "4*x*y^2");
    }

    #[test]
    fn confluence_examples() {
        assert!(weyl_algebra::<Q>().check_confluence(8).confluent());
        assert!(quantum_plane::<Q>(q(2)).check_confluence(8).confluent());
        assert!(jordan_plane::<Q>().check_confluence(8).confluent());
        let gens = GeneratorTable::new(vec![("x".into(), 1), ("y".into(), 1), ("z".into(), 1)]).unwrap();
        let mono = |e: Vec<u32>| Element::<Q>::monomial(gens.monomial(e));
        let rules = vec![
            RewriteRule { lhs: (1, 0), rhs: mono(vec![1, 1, 0]) },
            RewriteRule { lhs: (1, 0), rhs: mono(vec![1, 1, 0]).add(&mono(vec![0, 0, 0])) },
            RewriteRule { lhs: (2, 0), rhs: mono(vec![1, 0, 1]) },
            RewriteRule { lhs: (2, 1), rhs: mono(vec![0, 1, 1]) },
        ];
        let p = Presentation::new("contradictory", gens.clone(), rules).unwrap();
        let report = p.check_confluence(8);
        assert!(!report.confluent());
        assert!(!p.validate().accepted());
    }

    #[test]
    fn degree_decompose_examples() {
        let a1 = weyl_algebra::<Q>();
        let g = a1.gens().clone();
        let e = a1.normal_form_word(&Word(vec![1, 0]));
        let parts = e.degree_decompose();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(parts[&2].display(&g), "x*y");
        assert_eq!(parts[&0].display(&g), "1");
        assert!(Element::<Q>::zero().degree_decompose().is_empty());
        let e = a1.normal_form_word(&Word(vec![1, 1, 0]));
        let parts = e.degree_decompose();
        assert_eq!(parts[&3].display(&g), "x*y^2");
        assert_eq!(parts[&1].display(&g), "2*y");
    }

    #[test]
    fn monomial_enumeration() {
        let qp = quantum_plane::<Q>(q(2));
        let names: Vec<String> = qp.gens().monomials_of_degree(2).iter().map(|m| m.display(qp.gens())).collect();
        assert_eq!(names, vec!["x^2", "x*y", "y^2"]);
    }

    #[test]
    fn display_signs_and_fractions() {
        let a1 = weyl_algebra::<Q>();
        let g = a1.gens().clone();
        let e = Element::generator(&g, 0)
            .scale(&Q::new(3.into(), 2.into()))
            .sub(&Element::one(&g));
        assert_eq!(e.display(&g), "3/2*x - 1");
        assert_eq!(Element::<Q>::one(&g).neg().display(&g), "-1");
    }
}
