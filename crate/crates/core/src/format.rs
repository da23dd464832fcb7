//! Text formats: `.sgr` files declare a ring with its ideals and Ore sets,
//! `.sgm` files declare a module. Parsing is field-agnostic; [`RingFile::build`]
//! and [`ModuleFile::build`] instantiate the objects over a chosen field.
//!
//! ```text
//! ring qplane
//! field QQ
//! gen x : 1
//! gen y : 1
//! rel y*x -> 2*x*y
//! ideal Jx in qplane
//!   twosided
//!   gen x
//! ore Sx = powers(x)
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::checkers::{OreSetSpec, DEFAULT_KMAX};
use crate::field::Field;
use crate::freealg::{Element, GeneratorTable, Presentation, RewriteRule, Word, WordCombination};
use crate::glin::Matrix;
use crate::sgcore::{SgIdeal, SgRing, Side};
use crate::sgmod::SgModule;
use crate::SgkError;

fn perr(line: usize, column: usize, message: impl Into<String>) -> SgkError {
    SgkError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Coefficient field named in a ring file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    fn parse(text: &str, line: usize, column: usize) -> Result<Self, SgkError> {
        let t = text.trim();
        if t == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let p = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|r| r.trim().parse::<u64>().ok())
            .ok_or_else(|| perr(line, column, format!("expected QQ or GF(p), found `{t}`")))?;
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(perr(line, column, format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }
}

// ---------- expressions ----------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>, SgkError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(perr(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Num(BigInt, BigInt),
    Ident(String, usize),
    Sum(Vec<(bool, Ast)>),
    Product(Vec<Ast>),
    Power(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> SgkError {
        perr(self.line, self.col(), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Ast, SgkError> {
        let mut terms = Vec::new();
        let mut neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            terms.push((neg, self.product()?));
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 && !terms[0].0 {
            terms.pop().expect("one term").1
        } else {
            Ast::Sum(terms)
        })
    }

    fn product(&mut self) -> Result<Ast, SgkError> {
        let mut factors = vec![self.power()?];
        while self.eat('*') {
            factors.push(self.power()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            Ast::Product(factors)
        })
    }

    fn power(&mut self) -> Result<Ast, SgkError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
                    Ok(Ast::Power(Box::new(base), e))
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ast, SgkError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            self.pos += 1;
                            Ok(Ast::Num(n, d))
                        }
                        _ => Err(self.err("expected a denominator")),
                    }
                } else {
                    Ok(Ast::Num(n, BigInt::one()))
                }
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Ast::Ident(s, col))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(t) => Err(self.err(format!("unexpected {}", describe(&t)))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
    }
}

fn parse_ast(text: &str, line: usize, col0: usize) -> Result<Ast, SgkError> {
    let toks = tokenize(text, line, col0)?;
    let end = col0 + text.chars().count();
    let mut p = Parser { toks, pos: 0, line, end };
    let ast = p.sum()?;
    if p.pos < p.toks.len() {
        return Err(p.err(format!("unexpected {}", describe(&p.toks[p.pos].0))));
    }
    Ok(ast)
}

fn scalar<F: Field>(n: &BigInt, d: &BigInt, line: usize) -> Result<F, SgkError> {
    if d.is_zero() {
        return Err(perr(line, 0, "zero denominator"));
    }
    F::from_ratio(n, d).ok_or_else(|| perr(line, 0, format!("{n}/{d} is not defined over {}", F::tag())))
}

fn eval<F: Field>(ast: &Ast, gens: &GeneratorTable, line: usize) -> Result<WordCombination<F>, SgkError> {
    Ok(match ast {
        Ast::Num(n, d) => WordCombination::scalar(scalar(n, d, line)?),
        Ast::Ident(s, col) => match gens.index(s) {
            Some(g) => WordCombination::word(Word(vec![g])),
            None => return Err(perr(line, *col, format!("unknown generator `{s}`"))),
        },
        Ast::Sum(terms) => {
            let mut acc = WordCombination::zero();
            for (neg, t) in terms {
                let v = eval(t, gens, line)?;
                acc = acc.add(&if *neg { v.scale(&-F::one()) } else { v });
            }
            acc
        }
        Ast::Product(fs) => {
            let mut acc = WordCombination::scalar(F::one());
            for f in fs {
                acc = acc.concat(&eval(f, gens, line)?);
            }
            acc
        }
        Ast::Power(b, e) => {
            let base = eval(b, gens, line)?;
            let mut acc = WordCombination::scalar(F::one());
            for _ in 0..*e {
                acc = acc.concat(&base);
            }
            acc
        }
    })
}

/// Parses a ring expression and reduces it to normal form.
pub fn parse_element<F: Field>(pres: &Presentation<F>, text: &str) -> Result<Element<F>, SgkError> {
    parse_element_at(pres, text, 1, 1)
}

fn parse_element_at<F: Field>(pres: &Presentation<F>, text: &str, line: usize, col: usize) -> Result<Element<F>, SgkError> {
    let ast = parse_ast(text, line, col)?;
    Ok(pres.normal_form(&eval(&ast, pres.gens(), line)?))
}

/// Comma-separated list of ring expressions, parentheses respected.
pub fn parse_element_list<F: Field>(pres: &Presentation<F>, text: &str) -> Result<Vec<Element<F>>, SgkError> {
    split_top_level(text)
        .into_iter()
        .map(|(s, col)| parse_element_at(pres, s, 1, col + 1))
        .collect()
}

fn split_top_level(text: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((&text[start..i], start));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((&text[start..], start));
    out
}

/// Module expression: a sum of terms, each ending in a module generator.
fn eval_module<F: Field>(
    ast: &Ast,
    gens: &GeneratorTable,
    module_gens: &[String],
    line: usize,
) -> Result<Vec<(WordCombination<F>, usize)>, SgkError> {
    let terms: Vec<(bool, &Ast)> = match ast {
        Ast::Sum(ts) => ts.iter().map(|(n, t)| (*n, t)).collect(),
        other => vec![(false, other)],
    };
    let mut out = Vec::new();
    for (neg, t) in terms {
        let factors: Vec<&Ast> = match t {
            Ast::Product(fs) => fs.iter().collect(),
            other => vec![other],
        };
        let (last, rest) = factors.split_last().expect("nonempty product");
        let g = match last {
            Ast::Ident(s, col) => module_gens
                .iter()
                .position(|m| m == s)
                .ok_or_else(|| perr(line, *col, format!("term must end in a module generator, found `{s}`")))?,
            _ => return Err(perr(line, 0, "each term must end in a module generator")),
        };
        let mut coef = WordCombination::scalar(if neg { -F::one() } else { F::one() });
        for f in rest {
            coef = coef.concat(&eval(f, gens, line)?);
        }
        out.push((coef, g));
    }
    Ok(out)
}

// ---------- ring files ----------

#[derive(Clone, Debug)]
struct Located {
    text: String,
    line: usize,
    column: usize,
}

#[derive(Clone, Debug)]
pub struct IdealDecl {
    pub name: String,
    pub side: Side,
    gens: Vec<Located>,
}

#[derive(Clone, Debug)]
pub struct OreDecl {
    pub name: String,
    expr: Located,
}

/// A parsed `.sgr` file, not yet bound to a field.
#[derive(Clone, Debug)]
pub struct RingFile {
    pub name: String,
    pub field: FieldSpec,
    pub gens: Vec<(String, u32)>,
    rels: Vec<(String, String, Located, usize)>,
    pub ideals: Vec<IdealDecl>,
    pub ores: Vec<OreDecl>,
}

/// A ring with its declared ideals and Ore sets over a concrete field.
#[derive(Clone)]
pub struct RingWorkspace<F> {
    pub ring: Arc<SgRing<F>>,
    pub ideals: BTreeMap<String, SgIdeal<F>>,
    pub ores: BTreeMap<String, OreSetSpec<F>>,
}

impl<F: Field> RingWorkspace<F> {
    pub fn ideal(&self, name: &str) -> Result<&SgIdeal<F>, SgkError> {
        self.ideals
            .get(name)
            .ok_or_else(|| SgkError::Missing(format!("ideal {name} is not declared in ring {}", self.ring.presentation().name())))
    }

    pub fn ore(&self, name: &str) -> Result<&OreSetSpec<F>, SgkError> {
        self.ores
            .get(name)
            .ok_or_else(|| SgkError::Missing(format!("Ore set {name} is not declared in ring {}", self.ring.presentation().name())))
    }
}

/// Splits off a trailing `#` comment and returns the statement with its
/// starting column.
fn statement(raw: &str) -> Option<(&str, usize)> {
    let body = raw.split('#').next().unwrap_or("");
    let trimmed = body.trim_start();
    let col = body.len() - trimmed.len() + 1;
    let t = trimmed.trim_end();
    (!t.is_empty()).then_some((t, col))
}

fn keyword(stmt: &str) -> (&str, &str, usize) {
    match stmt.find(char::is_whitespace) {
        Some(i) => {
            let rest = &stmt[i..];
            let trimmed = rest.trim_start();
            (&stmt[..i], trimmed, i + rest.len() - trimmed.len())
        }
        None => (stmt, "", stmt.len()),
    }
}

fn parse_name(text: &str, line: usize, col: usize) -> Result<String, SgkError> {
    let ok = !text.is_empty()
        && text.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && text.chars().all(|c| c.is_alphanumeric() || "_'/.-".contains(c));
    if !ok {
        return Err(perr(line, col, format!("invalid name `{text}`")));
    }
    Ok(text.to_string())
}

fn parse_decl(rest: &str, line: usize, col: usize) -> Result<(String, usize), SgkError> {
    let (name, deg) = rest
        .split_once(':')
        .ok_or_else(|| perr(line, col, "expected `<name> : <degree>`"))?;
    let name = parse_name(name.trim(), line, col)?;
    let deg = deg
        .trim()
        .parse::<usize>()
        .map_err(|_| perr(line, col + rest.find(':').unwrap_or(0) + 1, format!("invalid degree `{}`", deg.trim())))?;
    Ok((name, deg))
}

impl RingFile {
    pub fn parse(text: &str) -> Result<Self, SgkError> {
        let mut name = None;
        let mut field = FieldSpec::Rationals;
        let mut gens = Vec::new();
        let mut rels = Vec::new();
        let mut ideals: Vec<IdealDecl> = Vec::new();
        let mut ores = Vec::new();
        let mut in_ideal = false;
        for (ln, raw) in text.lines().enumerate() {
            let line = ln + 1;
            let Some((stmt, col)) = statement(raw) else { continue };
            let (kw, rest, off) = keyword(stmt);
            let rcol = col + off;
            match kw {
                "ring" => {
                    if name.is_some() {
                        return Err(perr(line, col, "duplicate `ring` line"));
                    }
                    name = Some(parse_name(rest, line, rcol)?);
                    in_ideal = false;
                }
                "field" => {
                    field = FieldSpec::parse(rest, line, rcol)?;
                    in_ideal = false;
                }
                "gen" if in_ideal => {
                    ideals.last_mut().expect("in ideal").gens.push(Located {
                        text: rest.to_string(),
                        line,
                        column: rcol,
                    });
                }
                "gen" => {
                    if !rels.is_empty() {
                        return Err(perr(line, col, "generators must be declared before relations"));
                    }
                    let (g, d) = parse_decl(rest, line, rcol)?;
                    gens.push((g, u32::try_from(d).map_err(|_| perr(line, rcol, "degree too large"))?));
                }
                "rel" => {
                    in_ideal = false;
                    let (lhs, rhs) = rest.split_once("->").ok_or_else(|| perr(line, rcol, "expected `<gj>*<gi> -> <expression>`"))?;
                    let (j, i) = lhs
                        .trim()
                        .split_once('*')
                        .ok_or_else(|| perr(line, rcol, "left-hand side must be a product of two generators"))?;
                    let rhs_col = rcol + rest.find("->").expect("found") + 2;
                    rels.push((
                        j.trim().to_string(),
                        i.trim().to_string(),
                        Located {
                            text: rhs.to_string(),
                            line,
                            column: rhs_col,
                        },
                        rcol,
                    ));
                }
                "ideal" => {
                    let (iname, ring) = rest.split_once(" in ").ok_or_else(|| perr(line, rcol, "expected `ideal <Name> in <Ring>`"))?;
                    let ring = ring.trim();
                    if name.as_deref() != Some(ring) {
                        return Err(perr(line, rcol, format!("ideal declared in unknown ring `{ring}`")));
                    }
                    let iname = parse_name(iname.trim(), line, rcol)?;
                    if ideals.iter().any(|d| d.name == iname) {
                        return Err(perr(line, rcol, format!("duplicate ideal `{iname}`")));
                    }
                    ideals.push(IdealDecl {
                        name: iname,
                        side: Side::TwoSided,
                        gens: Vec::new(),
                    });
                    in_ideal = true;
                }
                "twosided" | "left" if in_ideal => {
                    ideals.last_mut().expect("in ideal").side = if kw == "left" { Side::Left } else { Side::TwoSided };
                }
                "ore" => {
                    in_ideal = false;
                    let (oname, expr) = rest.split_once('=').ok_or_else(|| perr(line, rcol, "expected `ore <Name> = powers(<expression>)`"))?;
                    let oname = parse_name(oname.trim(), line, rcol)?;
                    let e = expr.trim();
                    let inner = e
                        .strip_prefix("powers(")
                        .and_then(|r| r.strip_suffix(')'))
                        .ok_or_else(|| perr(line, rcol, "Ore sets are declared as `powers(<expression>)`"))?;
                    let inner_col = rcol + rest.find("powers(").unwrap_or(0) + "powers(".len();
                    if ores.iter().any(|o: &OreDecl| o.name == oname) {
                        return Err(perr(line, rcol, format!("duplicate Ore set `{oname}`")));
                    }
                    ores.push(OreDecl {
                        name: oname,
                        expr: Located {
                            text: inner.to_string(),
                            line,
                            column: inner_col,
                        },
                    });
                }
                other => return Err(perr(line, col, format!("unknown statement `{other}`"))),
            }
        }
        let name = name.ok_or_else(|| perr(1, 1, "missing `ring <Name>` line"))?;
        if gens.is_empty() {
            return Err(perr(1, 1, "no generators declared"));
        }
        Ok(RingFile {
            name,
            field,
            gens,
            rels,
            ideals,
            ores,
        })
    }

    /// Builds the presentation alone.
    pub fn presentation<F: Field>(&self) -> Result<Presentation<F>, SgkError> {
        let table = GeneratorTable::new(self.gens.clone())?;
        let mut rules = Vec::new();
        for (j, i, rhs, col) in &self.rels {
            let gj = table.index(j).ok_or_else(|| perr(rhs.line, *col, format!("unknown generator `{j}`")))?;
            let gi = table.index(i).ok_or_else(|| perr(rhs.line, *col, format!("unknown generator `{i}`")))?;
            let ast = parse_ast(&rhs.text, rhs.line, rhs.column)?;
            let words = eval::<F>(&ast, &table, rhs.line)?;
            let rhs_el = words
                .to_element(&table)
                .ok_or_else(|| perr(rhs.line, rhs.column, "right-hand side must be written in normal form"))?;
            rules.push(RewriteRule { lhs: (gj, gi), rhs: rhs_el });
        }
        Presentation::new(&self.name, table, rules)
    }

    /// Builds the ring on the window `0..=bound`, then its ideals and Ore sets.
    pub fn build<F: Field>(&self, bound: usize) -> Result<RingWorkspace<F>, SgkError> {
        let pres = self.presentation::<F>()?;
        let ring = Arc::new(SgRing::new(pres, bound)?);
        let mut ideals = BTreeMap::new();
        for decl in &self.ideals {
            let gens = decl
                .gens
                .iter()
                .map(|g| parse_element_at(ring.presentation(), &g.text, g.line, g.column))
                .collect::<Result<Vec<_>, _>>()?;
            ideals.insert(decl.name.clone(), SgIdeal::generated(&ring, &decl.name, decl.side, &gens)?);
        }
        let mut ores = BTreeMap::new();
        for decl in &self.ores {
            let e = &decl.expr;
            let s = parse_element_at(ring.presentation(), &e.text, e.line, e.column)?;
            ores.insert(decl.name.clone(), OreSetSpec::new(&decl.name, s, DEFAULT_KMAX)?);
        }
        Ok(RingWorkspace { ring, ideals, ores })
    }
}

// ---------- module files ----------

#[derive(Clone, Debug)]
enum ModuleBody {
    Presented {
        gens: Vec<(String, usize)>,
        rels: Vec<Located>,
    },
    Explicit {
        basis: Vec<(String, usize)>,
        acts: Vec<(String, String, Located, usize)>,
    },
}

/// A parsed `.sgm` file.
#[derive(Clone, Debug)]
pub struct ModuleFile {
    pub name: String,
    pub over: String,
    body: ModuleBody,
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<Self, SgkError> {
        let mut header = None;
        let mut gens = Vec::new();
        let mut rels = Vec::new();
        let mut basis = Vec::new();
        let mut acts = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = ln + 1;
            let Some((stmt, col)) = statement(raw) else { continue };
            let (kw, rest, off) = keyword(stmt);
            let rcol = col + off;
            match kw {
                "module" => {
                    let (n, r) = rest.split_once(" over ").ok_or_else(|| perr(line, rcol, "expected `module <Name> over <Ring>`"))?;
                    header = Some((parse_name(n.trim(), line, rcol)?, r.trim().to_string()));
                }
                "gen" => gens.push(parse_decl(rest, line, rcol)?),
                "rel" => rels.push(Located {
                    text: rest.to_string(),
                    line,
                    column: rcol,
                }),
                "basis" => basis.push(parse_decl(rest, line, rcol)?),
                "act" => {
                    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| perr(line, rcol, "expected `act <gen> * <basis> = <expression>`"))?;
                    let (g, b) = lhs
                        .split_once('*')
                        .ok_or_else(|| perr(line, rcol, "left-hand side must be `<gen> * <basis>`"))?;
                    let rhs_col = rcol + rest.find('=').expect("found") + 1;
                    acts.push((
                        g.trim().to_string(),
                        b.trim().to_string(),
                        Located {
                            text: rhs.to_string(),
                            line,
                            column: rhs_col,
                        },
                        rcol,
                    ));
                }
                other => return Err(perr(line, col, format!("unknown statement `{other}`"))),
            }
        }
        let (name, over) = header.ok_or_else(|| perr(1, 1, "missing `module <Name> over <Ring>` line"))?;
        let body = match (gens.is_empty() && rels.is_empty(), basis.is_empty() && acts.is_empty()) {
            (_, true) => ModuleBody::Presented { gens, rels },
            (true, false) => ModuleBody::Explicit { basis, acts },
            (false, false) => return Err(perr(1, 1, "a module uses either gen/rel or basis/act lines, not both")),
        };
        Ok(ModuleFile { name, over, body })
    }

    pub fn build<F: Field>(&self, ring: &Arc<SgRing<F>>) -> Result<SgModule<F>, SgkError> {
        let pres = ring.presentation();
        if self.over != pres.name() {
            return Err(SgkError::RingMismatch(format!(
                "module {} is over {} but the ring is {}",
                self.name,
                self.over,
                pres.name()
            )));
        }
        match &self.body {
            ModuleBody::Presented { gens, rels } => {
                let names: Vec<String> = gens.iter().map(|(n, _)| n.clone()).collect();
                let mut relations = Vec::new();
                for r in rels {
                    let ast = parse_ast(&r.text, r.line, r.column)?;
                    let terms = eval_module::<F>(&ast, pres.gens(), &names, r.line)?;
                    relations.push(terms.into_iter().map(|(w, g)| (pres.normal_form(&w), g)).collect());
                }
                SgModule::presented(ring.clone(), &self.name, gens, &relations)
            }
            ModuleBody::Explicit { basis, acts } => {
                let n = basis.len();
                let names: Vec<String> = basis.iter().map(|(b, _)| b.clone()).collect();
                let mut mats = vec![Matrix::<F>::zeros(n, n); pres.gens().len()];
                for (g, b, rhs, col) in acts {
                    let gi = pres.gens().index(g).ok_or_else(|| perr(rhs.line, *col, format!("unknown generator `{g}`")))?;
                    let bi = names
                        .iter()
                        .position(|x| x == b)
                        .ok_or_else(|| perr(rhs.line, *col, format!("unknown basis element `{b}`")))?;
                    let ast = parse_ast(&rhs.text, rhs.line, rhs.column)?;
                    let is_zero = matches!(&ast, Ast::Num(z, _) if z.is_zero());
                    if is_zero {
                        continue;
                    }
                    for (w, t) in eval_module::<F>(&ast, pres.gens(), &names, rhs.line)? {
                        let c = match w.to_element(pres.gens()) {
                            Some(e) if e.terms().all(|(m, _)| m.is_one()) => e.coefficient(&pres.gens().one()),
                            _ => return Err(perr(rhs.line, rhs.column, "action values are scalar combinations of basis elements")),
                        };
                        let x = mats[gi].get(t, bi).clone() + c;
                        mats[gi].set(t, bi, x);
                    }
                }
                SgModule::from_action(ring.clone(), &self.name, basis, &mats)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    const QPLANE: &str = "\
ring qplane   # q = 2
field QQ
gen x : 1
gen y : 1
rel y*x -> 2*x*y
ideal Jx in qplane
  twosided
  gen x
ore Sx = powers(x)
";

    #[test]
    fn ring_file_round_trip() {
        let f = RingFile::parse(QPLANE).unwrap();
        assert_eq!(f.field, FieldSpec::Rationals);
        let ws = f.build::<Q>(4).unwrap();
        let p = ws.ring.presentation();
        assert_eq!(parse_element(p, "y*x").unwrap().display(p.gens()), "2*x*y");
        assert_eq!(parse_element(p, "(x + y)^2 - 1/2*y^2").unwrap().display(p.gens()), "x^2 + 3*x*y + 1/2*y^2");
        assert_eq!(ws.ideal("Jx").unwrap().space().dims(), vec![0, 1, 2, 3, 4]);
        assert_eq!(ws.ore("Sx").unwrap().degree(), 1);
        assert!(ws.ideal("J").is_err());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let bad = "ring r\ngen x : 1\ngen y : 1\nrel y*x -> x*y + z\n";
        let err = RingFile::parse(bad).unwrap().presentation::<Q>().unwrap_err();
        assert_eq!(
            err,
            SgkError::Parse {
                line: 4,
                column: 18,
                message: "unknown generator `z`".into()
            }
        );
        assert!(matches!(RingFile::parse("ring r\nfield GF(4)\n"), Err(SgkError::Parse { line: 2, .. })));
        assert!(matches!(RingFile::parse("ring r\ngen x 1\n"), Err(SgkError::Parse { line: 2, .. })));
        let p = RingFile::parse(QPLANE).unwrap().presentation::<Q>().unwrap();
        assert!(matches!(parse_element(&p, "x*(y"), Err(SgkError::Parse { column: 5, .. })));
        assert!(matches!(parse_element(&p, "x $ y"), Err(SgkError::Parse { column: 3, .. })));
    }

    #[test]
    fn non_normal_rule_rhs_is_rejected() {
        let bad = "ring r\ngen x : 1\ngen y : 1\nrel y*x -> y*x\n";
        assert!(matches!(RingFile::parse(bad).unwrap().presentation::<Q>(), Err(SgkError::Parse { .. })));
    }

    #[test]
    fn module_files() {
        let ws = RingFile::parse("ring kx\ngen x : 1\n").unwrap().build::<Q>(5).unwrap();
        let m = ModuleFile::parse("module M over kx\ngen e : 0\nrel x^2*e\n").unwrap();
        assert_eq!(m.build(&ws.ring).unwrap().dims(), vec![1, 1, 0, 0, 0, 0]);
        let k = ModuleFile::parse("module k over kx\nbasis b : 0\nact x * b = 0\n").unwrap();
        assert_eq!(k.build(&ws.ring).unwrap().total(), 1);
        let drop = ModuleFile::parse("module drop over kx\nbasis e0 : 0\nbasis e1 : 1\nact x * e1 = e0\n").unwrap();
        let dm = drop.build(&ws.ring).unwrap();
        assert!(!dm.is_graded());
        let other = ModuleFile::parse("module M over A1\ngen e : 0\n").unwrap();
        assert!(matches!(other.build(&ws.ring), Err(SgkError::RingMismatch(_))));
        assert!(ModuleFile::parse("module M over kx\ngen e : 0\nrel x^2\n").unwrap().build(&ws.ring).is_err());
    }

    #[test]
    fn prime_fields() {
        let f = RingFile::parse("ring r\nfield GF(7)\ngen x : 1\ngen y : 1\nrel y*x -> 3*x*y\n").unwrap();
        assert_eq!(f.field, FieldSpec::Prime(7));
        let ws = f.build::<crate::Fp<7>>(3).unwrap();
        let p = ws.ring.presentation();
        assert_eq!(parse_element(p, "y^2*x").unwrap().display(p.gens()), "2*x*y^2");
        assert!(parse_element(p, "1/7*x").is_err());
    }
}
