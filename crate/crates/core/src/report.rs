//! Command-line front end: argument definitions, command execution and the
//! structured report printed by the `sgk` binary.
//!
//! Every invocation produces one [`Report`]. With `--json` it is printed as
//! a single JSON document with keys `command`, `status`, `bound`,
//! `truncated` and `payload`; otherwise the human-readable lines are
//! printed. Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 usage or input
//! error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::checkers::{self, CheckReport, StarBounds, Verdict};
use crate::field::{Field, Fp};
use crate::format::{parse_element, parse_element_list, FieldSpec, ModuleFile, RingFile, RingWorkspace};
use crate::functors::{self, Corruption, QuotientContext};
use crate::glin::GradedSubspace;
use crate::sgcore::QuotientRing;
use crate::sgmod::{self, SgModule};
use crate::{SgkError, DEFAULT_BOUND};

/// Exit code for usage and input errors.
pub const EXIT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sgk", version, about = "Exact computations with semi-graded rings on a finite degree window")]
pub struct Cli {
    /// Degree bound D of the window.
    #[arg(short = 'D', long = "bound", global = true, env = "SGK_DEFAULT_D", default_value_t = DEFAULT_BOUND)]
    pub bound: usize,
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include full certificates in the report.
    #[arg(long, global = true)]
    pub certificates: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RingArg {
    /// Ring file (.sgr).
    #[arg(long)]
    pub ring: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of an expression.
    Nf {
        #[command(flatten)]
        ring: RingArg,
        expr: String,
    },
    /// Homogeneous components of an expression, highest degree first.
    Decompose {
        #[command(flatten)]
        ring: RingArg,
        expr: String,
    },
    /// Structural checks on a presentation: degrees, orientation, duplicates.
    Validate {
        #[command(flatten)]
        ring: RingArg,
    },
    /// Run a checker.
    Check {
        kind: CheckKind,
        #[command(flatten)]
        ring: RingArg,
        /// Ideal name from the ring file.
        #[arg(long)]
        ideal: Option<String>,
        /// Comma-separated Ore set names.
        #[arg(long, value_delimiter = ',')]
        ore: Vec<String>,
        /// Sample tuple for the schematic check, one element per Ore set.
        #[arg(long)]
        sample: Vec<String>,
        /// Module file (.sgm).
        #[arg(long)]
        module: Option<PathBuf>,
        /// Largest power of s tried by the Ore searches.
        #[arg(long, default_value_t = checkers::DEFAULT_KMAX)]
        kmax: usize,
    },
    /// Apply f_*, f^! or f^* along R -> R/J.
    Functor {
        kind: FunctorKind,
        #[command(flatten)]
        ring: RingArg,
        /// Ideal name from the ring file.
        #[arg(long)]
        ideal: String,
        /// Module file (.sgm).
        #[arg(long)]
        module: PathBuf,
        /// Include the action matrices of the result.
        #[arg(long)]
        matrices: bool,
    },
    /// Verify an adjunction on a pair of modules (M, N).
    Adjoint {
        kind: AdjointKind,
        #[command(flatten)]
        ring: RingArg,
        /// Ideal name from the ring file.
        #[arg(long)]
        ideal: String,
        /// Exactly two module files: M then N.
        #[arg(long, num_args = 1, required = true)]
        module: Vec<PathBuf>,
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Torsion submodule on the window.
    Torsion {
        #[command(flatten)]
        ring: RingArg,
        /// Module file (.sgm).
        #[arg(long)]
        module: PathBuf,
    },
    /// Kernel of the powers of a verified Ore set on a module.
    Kappa {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        ore: String,
        /// Module file (.sgm).
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = checkers::DEFAULT_KMAX)]
        kmax: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Confluence,
    Ore,
    GoodOre,
    Schematic,
    Compatible,
    Star,
    Lsg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctorKind {
    Restrict,
    Shriek,
    Star,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjointKind {
    Shriek,
    Star,
}

/// The structured result of one invocation.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub status: Verdict,
    pub bound: usize,
    pub truncated: bool,
    pub payload: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    fn new(bound: usize) -> Self {
        Report {
            command: Vec::new(),
            status: Verdict::Pass,
            bound,
            truncated: false,
            payload: json!({}),
            lines: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        if self.truncated {
            out.push_str(&format!("note: window-truncated; the result is only certified in degrees <= {}\n", self.bound));
        }
        out
    }
}

/// Parses the arguments (program name first), runs the command and returns
/// the report.
pub fn execute(cli: &Cli, argv: &[String]) -> Result<Report, SgkError> {
    let ring_path = match &cli.command {
        Command::Nf { ring, .. }
        | Command::Decompose { ring, .. }
        | Command::Validate { ring }
        | Command::Check { ring, .. }
        | Command::Functor { ring, .. }
        | Command::Adjoint { ring, .. }
        | Command::Torsion { ring, .. }
        | Command::Kappa { ring, .. } => ring.ring.clone(),
    };
    let file = RingFile::parse(&read(&ring_path)?)?;
    let mut report = match file.field {
        FieldSpec::Rationals => run::<BigRational>(cli, &file),
        FieldSpec::Prime(p) => dispatch_prime(p, cli, &file),
    }?;
    report.command = argv.iter().skip(1).cloned().collect();
    Ok(report)
}

macro_rules! primes {
    ($p:expr, $cli:expr, $file:expr; $($q:literal)*) => {
        match $p {
            $($q => run::<Fp<$q>>($cli, $file),)*
            other => Err(SgkError::InvalidArgument(format!("GF({other}) is not supported; supported primes: {}", [$($q.to_string()),*].join(", ")))),
        }
    };
}

fn dispatch_prime(p: u64, cli: &Cli, file: &RingFile) -> Result<Report, SgkError> {
    primes!(p, cli, file; 2 3 5 7 11 13 17 19 23 29 31 37 41 43 47 53 59 61 67 71 73 79 83 89 97 101 103 107 109 113 127 32003 65521)
}

fn read(path: &Path) -> Result<String, SgkError> {
    std::fs::read_to_string(path).map_err(|e| SgkError::Missing(format!("{}: {e}", path.display())))
}

fn load_module<F: Field>(ws: &RingWorkspace<F>, path: &Path) -> Result<SgModule<F>, SgkError> {
    ModuleFile::parse(&read(path)?)?.build(&ws.ring)
}

fn dims_text(dims: &[usize]) -> String {
    let mut d = dims.to_vec();
    while d.len() > 1 && d.last() == Some(&0) {
        d.pop();
    }
    format!("({})", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn subspace_basis<F: Field>(m: &SgModule<F>, s: &GradedSubspace<F>) -> Vec<String> {
    s.graded_basis().iter().map(|(_, v)| m.display(v)).collect()
}

fn run<F: Field>(cli: &Cli, file: &RingFile) -> Result<Report, SgkError> {
    let bound = cli.bound;
    let mut r = Report::new(bound);
    match &cli.command {
        Command::Nf { expr, .. } => {
            let pres = file.presentation::<F>()?;
            let e = parse_element(&pres, expr)?;
            let nf = e.display(pres.gens());
            r.payload = json!({ "normal_form": nf });
            r.lines.push(nf);
        }
        Command::Decompose { expr, .. } => {
            let pres = file.presentation::<F>()?;
            let e = parse_element(&pres, expr)?;
            let parts: Vec<(u32, String)> = e
                .degree_decompose()
                .into_iter()
                .rev()
                .map(|(d, c)| (d, c.display(pres.gens())))
                .collect();
            r.payload = json!({ "components": parts.iter().map(|(d, c)| json!({ "degree": d, "component": c })).collect::<Vec<_>>() });
            let body: Vec<String> = parts.iter().map(|(d, c)| format!("{d}: {c}")).collect();
            r.lines.push(format!("{{{}}}", body.join(", ")));
        }
        Command::Validate { .. } => {
            let pres = file.presentation::<F>()?;
            let v = pres.validate();
            if !v.accepted() {
                r.status = Verdict::Fail;
            }
            r.lines.push(format!("presentation {}: {}", pres.name(), if v.accepted() { "valid" } else { "invalid" }));
            for x in &v.violations {
                r.lines.push(format!("  {}", serde_json::to_string(x).expect("serializes")));
            }
            r.payload = json!({ "ring": pres.name(), "graded": pres.is_graded(), "violations": v.violations });
        }
        Command::Check {
            kind,
            ideal,
            ore,
            sample,
            module,
            kmax,
            ..
        } => check::<F>(cli, file, &mut r, *kind, ideal.as_deref(), ore, sample, module.as_deref(), *kmax)?,
        Command::Functor {
            kind, ideal, module, matrices, ..
        } => {
            let ws = file.build::<F>(bound)?;
            let ctx = QuotientContext::new(ws.ring.clone(), ws.ideal(ideal)?.clone())?;
            let m = load_module(&ws, module)?;
            let compatible = checkers::check_compatible(ctx.quotient()).verdict;
            let out = match kind {
                FunctorKind::Restrict => functors::restrict_scalars(&ctx, &m.over_quotient(ctx.quotient().clone())?)?,
                FunctorKind::Shriek => functors::shriek(&ctx, &m)?.module,
                FunctorKind::Star => functors::upper_star(&ctx, &m)?.module,
            };
            let dims = out.dims();
            r.truncated = out.truncated();
            r.lines.push(format!("dims {}", dims_text(&dims)));
            r.lines.push(format!("basis [{}]", out.labels().join(", ")));
            r.payload = json!({
                "functor": format!("{kind:?}").to_lowercase(),
                "module": out.name(),
                "dims": dims,
                "basis": out.labels(),
                "ideal_compatible": compatible,
            });
            if *matrices {
                let mats: Vec<Value> = (0..out.actions().len())
                    .map(|g| {
                        let a = out.action(g);
                        json!({
                            "generator": ws.ring.gens().name(g),
                            "rows": (0..a.rows()).map(|i| a.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                r.payload["actions"] = Value::Array(mats);
            }
        }
        Command::Adjoint {
            kind, ideal, module, corrupt, ..
        } => {
            if module.len() != 2 {
                return Err(SgkError::InvalidArgument("adjoint needs exactly two --module files (M then N)".into()));
            }
            let ws = file.build::<F>(bound)?;
            let ctx = QuotientContext::new(ws.ring.clone(), ws.ideal(ideal)?.clone())?;
            let m = load_module(&ws, &module[0])?;
            let n = load_module(&ws, &module[1])?;
            let corruption = if *corrupt { Corruption::FirstEntry } else { Corruption::None };
            let rep = match kind {
                AdjointKind::Shriek => functors::verify_adjunction_shriek(&ctx, &m.over_quotient(ctx.quotient().clone())?, &n, corruption)?,
                AdjointKind::Star => functors::verify_adjunction_star(&ctx, &m, &n.over_quotient(ctx.quotient().clone())?, corruption)?,
            };
            r.status = if rep.holds() { Verdict::Pass } else { Verdict::Fail };
            r.lines.push(format!(
                "hom dims {} / {}, bijective {}, round trip {}, squares {}",
                rep.left_dim, rep.right_dim, rep.bijective, rep.round_trip, rep.squares_checked
            ));
            for f in &rep.failures {
                r.lines.push(format!("  {f}"));
            }
            r.lines.push(status_line(r.status).into());
            r.payload = serde_json::to_value(&rep).expect("serializes");
        }
        Command::Torsion { module, .. } => {
            let ws = file.build::<F>(bound)?;
            let m = load_module(&ws, module)?;
            let t = sgmod::torsion(&m);
            r.truncated = t.truncated;
            r.lines.push(format!("T(M) dims {}", dims_text(&t.space.dims())));
            r.lines.push(format!("basis [{}]", subspace_basis(&m, &t.space).join(", ")));
            r.payload = json!({
                "dims": t.space.dims(),
                "basis": subspace_basis(&m, &t.space),
                "witnesses": t.witnesses,
            });
        }
        Command::Kappa { ore, module, kmax, .. } => {
            let ws = file.build::<F>(bound)?;
            let m = load_module(&ws, module)?;
            let spec = checkers::OreSetSpec::new(ore, ws.ore(ore)?.element().clone(), *kmax)?;
            let (rep, verified) = checkers::check_left_ore(&ws.ring, &spec);
            match verified {
                Some(v) => {
                    let k = sgmod::kappa(&v, &m)?;
                    r.lines.push(format!("kappa_{ore}(M) dims {}", dims_text(&k.dims())));
                    r.lines.push(format!("basis [{}]", subspace_basis(&m, &k).join(", ")));
                    r.payload = json!({ "dims": k.dims(), "basis": subspace_basis(&m, &k) });
                }
                None => {
                    r.status = rep.verdict;
                    r.lines.push(format!("{ore} is not a verified left Ore set: {}", rep.witness.clone().unwrap_or_default()));
                    r.payload = json!({ "ore_check": check_payload(&ws, &rep, cli.certificates) });
                }
            }
        }
    }
    Ok(r)
}

fn status_line(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Inconclusive => "INCONCLUSIVE",
    }
}

fn check_payload<F: Field>(ws: &RingWorkspace<F>, rep: &CheckReport<F>, full: bool) -> Value {
    let mut v = json!({
        "check": rep.check,
        "verdict": rep.verdict,
        "witness": rep.witness,
        "details": rep.details,
        "certificate_count": rep.certificates.len(),
        "certificates_verified": rep.all_certificates_verify(&ws.ring),
    });
    if full {
        v["certificates"] = Value::Array(rep.certificates.iter().map(|c| c.to_json(&ws.ring)).collect());
    }
    v
}

fn push_check<F: Field>(r: &mut Report, ws: &RingWorkspace<F>, rep: &CheckReport<F>, label: &str) {
    r.status = r.status.and(rep.verdict);
    let mut line = format!("{label}: {}", status_line(rep.verdict));
    if let Some(w) = &rep.witness {
        line.push_str(&format!(" ({w})"));
    }
    r.lines.push(line);
    if rep.verdict == Verdict::Pass && !rep.all_certificates_verify(&ws.ring) {
        r.status = Verdict::Fail;
        r.lines.push("  certificate re-verification failed".into());
    }
}

#[allow(clippy::too_many_arguments)]
fn check<F: Field>(
    cli: &Cli,
    file: &RingFile,
    r: &mut Report,
    kind: CheckKind,
    ideal: Option<&str>,
    ore: &[String],
    sample: &[String],
    module: Option<&Path>,
    kmax: usize,
) -> Result<(), SgkError> {
    let bound = cli.bound;
    if kind == CheckKind::Confluence {
        let pres = file.presentation::<F>()?;
        let c = pres.check_confluence(bound as u32);
        r.status = if c.confluent() { Verdict::Pass } else { Verdict::Fail };
        r.lines.push(format!("confluence up to degree {bound}: {} overlaps checked", c.overlaps_checked));
        if let Some(u) = c.unresolved.first() {
            r.lines.push(format!("  {} reduces to {} and to {}", u.word, u.left, u.right));
        }
        r.lines.push(status_line(r.status).into());
        r.payload = serde_json::to_value(&c).expect("serializes");
        return Ok(());
    }
    let ws = file.build::<F>(bound)?;
    let need_ideal = || ideal.ok_or_else(|| SgkError::InvalidArgument("--ideal is required".into()));
    let ore_specs = || -> Result<Vec<checkers::OreSetSpec<F>>, SgkError> {
        if ore.is_empty() {
            return Err(SgkError::InvalidArgument("--ore is required".into()));
        }
        ore.iter()
            .map(|n| checkers::OreSetSpec::new(n, ws.ore(n)?.element().clone(), kmax))
            .collect()
    };
    match kind {
        CheckKind::Confluence => unreachable!("handled above"),
        CheckKind::Ore | CheckKind::GoodOre => {
            let mut payloads = Vec::new();
            for spec in ore_specs()? {
                let rep = if kind == CheckKind::Ore {
                    checkers::check_left_ore(&ws.ring, &spec).0
                } else {
                    checkers::check_good_ore(&ws.ring, &spec)
                };
                push_check(r, &ws, &rep, spec.name());
                payloads.push(check_payload(&ws, &rep, cli.certificates));
            }
            r.payload = json!({ "reports": payloads });
        }
        CheckKind::Schematic => {
            let specs = ore_specs()?;
            let samples = sample
                .iter()
                .map(|s| parse_element_list(ws.ring.presentation(), s))
                .collect::<Result<Vec<_>, _>>()?;
            let rep = checkers::check_schematic(&ws.ring, &specs, &samples, 3)?;
            push_check(r, &ws, &rep, "schematic");
            if let Some(ws_list) = rep.details["witnesses"].as_array() {
                for w in ws_list {
                    r.lines.push(format!(
                        "  sample ({}): t={}, m={}",
                        w["sample"].as_array().map(|a| a.iter().filter_map(|x| x.as_str()).collect::<Vec<_>>().join(", ")).unwrap_or_default(),
                        w["t"],
                        w["m"]
                    ));
                }
            }
            r.payload = check_payload(&ws, &rep, cli.certificates);
        }
        CheckKind::Compatible | CheckKind::Star => {
            let j = ws.ideal(need_ideal()?)?.clone();
            r.truncated = j.truncated();
            let q = QuotientRing::new(ws.ring.clone(), j)?;
            let rep = if kind == CheckKind::Compatible {
                checkers::check_compatible(&q)
            } else {
                checkers::check_star(&q, &StarBounds::default())
            };
            push_check(r, &ws, &rep, if kind == CheckKind::Compatible { "compatible" } else { "star" });
            r.payload = check_payload(&ws, &rep, cli.certificates);
        }
        CheckKind::Lsg => {
            let path = module.ok_or_else(|| SgkError::InvalidArgument("--module is required".into()))?;
            let m = load_module(&ws, path)?;
            let rep = sgmod::is_lsg(&m);
            r.truncated = m.truncated();
            r.status = if rep.lsg { Verdict::Pass } else { Verdict::Fail };
            let mut line = format!("lsg: {}", status_line(r.status));
            if let Some((a, b, c)) = &rep.witness {
                line.push_str(&format!(" ({a} * {b} = {c})"));
            }
            r.lines.push(line);
            r.payload = json!({ "lsg": rep.lsg, "witness": rep.witness });
        }
    }
    Ok(())
}
