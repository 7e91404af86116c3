//! The `resolver-lab` command line.
//!
//! Exit statuses: 0 success, 1 suite failure, 2 bad input (parse errors,
//! malformed flags, invalid parameters), 3 a size cap was hit, 4 Gin was not
//! confident, 5 I/O or internal errors.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::betti::{multigraded_betti, BettiTable};
use crate::ek::{ek_graded_betti, ek_json};
use crate::error::{Error, Result};
use crate::families::{
    borel_closure, enumerate_strongly_stable, remark_family, sample_strongly_stable, universal_lex_family,
};
use crate::format::{ideal_from_json, parse_ideal, render_ideal, IdealJson};
use crate::gin::{gin_revlex, GinConfig};
use crate::hilbert::{default_probe_degree, hilbert_profile, is_gotzmann, lexify_with_stop, lexsegment_class};
use crate::ideal::{Limits, MonomialIdeal, StabilityClass, DEFAULT_LEX_DEGREE_CAP, DEFAULT_MAX_GENS};
use crate::invariants::grade;
use crate::linalg::Field;
use crate::suite::{run_suite, SuiteConfig};
use crate::taylor::taylor_bound_report;
use crate::verdict::{verdicts, Statement, Verdict, VerdictContext};

pub const EXIT_SUITE_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_GIN: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "resolver-lab", version, about = "Resolutions and invariants of monomial ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Graded and multigraded Betti numbers from Taylor homology.
    Betti(IdealCmd),
    /// Betti numbers of a stable ideal from the Eliahou–Kervaire formula.
    Ek(IdealCmd),
    /// Taylor complex ranks against the Betti numbers.
    Taylor(IdealCmd),
    /// Hilbert function of I up to a degree, and the series numerator.
    Hilbert(IdealCmd),
    /// The lexsegment ideal with the same Hilbert function.
    Lexify(IdealCmd),
    /// Stability, lexsegment class, grade and related flags.
    Classify(IdealCmd),
    /// Generic initial ideal for revlex, by sampled coordinate changes.
    Gin(IdealCmd),
    /// Check statements on one ideal.
    Verdict(VerdictCmd),
    /// Construct members of the suite families.
    Family(FamilyCmd),
    /// Run every family through every check.
    Suite(SuiteCmd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Ideal in the text grammar (`n=2; x1^2, x1*x2`) or JSON.
    #[arg(long, conflicts_with = "file")]
    pub ideal: Option<String>,
    /// Read the ideal from a file; without --ideal or --file, stdin is read.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Field characteristic: 0 or a prime.
    #[arg(long, default_value_t = 0)]
    pub field: u64,
    /// Gin trials.
    #[arg(long, default_value_t = crate::gin::DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Generator cap for subset-lattice algorithms.
    #[arg(long, default_value_t = DEFAULT_MAX_GENS)]
    pub max_gens: usize,
    /// Degree bound: probe degree for `hilbert`, stop-rule cap for lexification.
    #[arg(long)]
    pub max_degree: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl CommonArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_gens: self.max_gens,
            lex_degree_cap: self.max_degree.unwrap_or(DEFAULT_LEX_DEGREE_CAP),
            ..Limits::default()
        }
    }

    fn gin(&self) -> GinConfig {
        GinConfig {
            trials: self.trials,
            seed: self.seed,
            field_char: self.field,
            ..GinConfig::default()
        }
    }
}

#[derive(Args, Debug)]
pub struct IdealCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct VerdictCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// A statement id such as thm-1.5, or `all`.
    #[arg(long, default_value = "all")]
    pub statement: String,
}

#[derive(Args, Debug)]
pub struct FamilyCmd {
    #[command(subcommand)]
    pub kind: FamilyKind,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum FamilyKind {
    /// `(x1y1, ..., x_{s-1}y_{s-1}, y1...yi)` in z-variables.
    Remark {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        i: usize,
    },
    /// Universal lexsegment with the given generator degrees.
    UniversalLex {
        /// Nondecreasing, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long)]
        n: usize,
    },
    /// Smallest strongly stable ideal containing the input generators.
    Borel {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Seeded Borel closures of random monomials.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_GENS)]
        max_gens: usize,
    },
    /// Every strongly stable ideal within the bounds.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_GENS)]
        max_gens: usize,
    },
}

#[derive(Args, Debug)]
pub struct SuiteCmd {
    /// JSON file with SuiteConfig fields; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub field: Option<u64>,
    #[arg(long)]
    pub max_gens: Option<usize>,
    /// Degree bound of the exhaustive strongly stable population.
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Number of sampled strongly stable ideals.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Worker threads (overrides RESOLVER_LAB_THREADS).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Also write the JSON report here.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GeneratorCap { .. } | Error::StopRuleNotReached { .. } | Error::ExponentOverflow => EXIT_CAP,
        Error::GinNotConfident(_) | Error::SingularChange { .. } => EXIT_GIN,
        Error::Io(_) | Error::Internal(_) => EXIT_IO,
        _ => EXIT_INPUT,
    }
}

fn read_ideal(input: &InputArgs, stdin: &mut dyn Read) -> Result<MonomialIdeal> {
    let text = match (&input.ideal, &input.file) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => std::fs::read_to_string(p)?,
        (None, None) => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        ideal_from_json(trimmed)
    } else {
        parse_ideal(trimmed)
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable output")
}

/// Macaulay2-style table: rows `j - i`, columns `i`.
fn betti_table_text(t: &BettiTable) -> String {
    let cols = t.total.len();
    let mut rows: std::collections::BTreeMap<u32, Vec<u64>> = std::collections::BTreeMap::new();
    for (&(i, j), &v) in &t.graded {
        rows.entry(j - i as u32).or_insert_with(|| vec![0; cols])[i] = v;
    }
    let cell = |v: u64| if v == 0 { ".".to_string() } else { v.to_string() };
    let width = t.total.iter().map(|v| v.to_string().len()).max().unwrap_or(1).max(1);
    let mut out = String::new();
    let _ = write!(out, "{:>7}", "");
    for i in 0..cols {
        let _ = write!(out, " {:>width$}", i);
    }
    let _ = writeln!(out);
    let _ = write!(out, "{:>7}", "total:");
    for v in &t.total {
        let _ = write!(out, " {:>width$}", v);
    }
    let _ = writeln!(out);
    for (r, vals) in rows {
        let _ = write!(out, "{:>7}", format!("{r}:"));
        for &v in &vals {
            let _ = write!(out, " {:>width$}", cell(v));
        }
        let _ = writeln!(out);
    }
    out
}

#[derive(Serialize)]
struct Classification {
    ideal: IdealJson,
    s: usize,
    stability: StabilityClass,
    lexsegment: crate::hilbert::LexClass,
    complete_intersection: bool,
    in_m_squared: bool,
    grade: usize,
    max_m: usize,
    m_counts: Vec<usize>,
    gotzmann: Option<bool>,
}

fn verdict_table(vs: &[Verdict]) -> String {
    let mut out = String::new();
    for v in vs {
        let _ = writeln!(
            out,
            "{:<8} literal {:<5} restricted {:<5}",
            v.statement, v.literal, v.restricted
        );
        for (k, b) in &v.hypotheses {
            let _ = writeln!(out, "  hyp  {k}: {b}");
        }
        for (k, b) in &v.conditions {
            let _ = writeln!(out, "  cond {k}: {b}");
        }
    }
    out
}

/// Run one command; returns the text to print and the exit status.
fn execute(cli: Cli, stdin: &mut dyn Read) -> Result<(String, i32)> {
    match cli.command {
        Command::Betti(c) => {
            let i = read_ideal(&c.input, stdin)?;
            let field = Field::from_characteristic(c.common.field)?;
            let t = multigraded_betti(&i, field, &c.common.limits())?;
            Ok(match c.common.format {
                Format::Json => (json(&t.to_json()), 0),
                Format::Table => (betti_table_text(&t), 0),
            })
        }
        Command::Ek(c) => {
            let i = read_ideal(&c.input, stdin)?;
            Ok(match c.common.format {
                Format::Json => (json(&ek_json(&i)?), 0),
                Format::Table => (betti_table_text(&ek_graded_betti(&i)?), 0),
            })
        }
        Command::Taylor(c) => {
            let i = read_ideal(&c.input, stdin)?;
            let limits = c.common.limits();
            let field = Field::from_characteristic(c.common.field)?;
            let b = multigraded_betti(&i, field, &limits)?;
            let r = taylor_bound_report(&i, &b.total, &limits)?;
            Ok(match c.common.format {
                Format::Json => (json(&r), 0),
                Format::Table => {
                    let mut out = format!("s = {}  taylor minimal: {}\n", r.s, r.taylor_minimal);
                    for row in &r.bounds {
                        let _ = writeln!(
                            out,
                            "  i={:<3} C(s,i+1)={:<8} beta={:<8} {}",
                            row.i,
                            row.binom,
                            row.beta,
                            if row.equal { "=" } else { "<" }
                        );
                    }
                    let _ = writeln!(out, "prefix property: {}", r.prefix_property_holds);
                    (out, 0)
                }
            })
        }
        Command::Hilbert(c) => {
            let i = read_ideal(&c.input, stdin)?;
            let limits = Limits {
                lex_degree_cap: DEFAULT_LEX_DEGREE_CAP,
                ..c.common.limits()
            };
            let deg = match c.common.max_degree {
                Some(d) => d,
                None => default_probe_degree(&i, &limits)?,
            };
            let p = hilbert_profile(&i, deg, &limits)?;
            Ok(match c.common.format {
                Format::Json => (json(&p.to_json()), 0),
                Format::Table => {
                    let mut out = "   d  dim I_d  dim (S/I)_d\n".to_string();
                    for (&d, &v) in &p.dims {
                        let _ = writeln!(out, "{d:>4} {v:>8} {:>12}", p.quotient_dim(d).unwrap_or(0));
                    }
                    let _ = writeln!(out, "numerator {:?}", p.numerator);
                    (out, 0)
                }
            })
        }
        Command::Lexify(c) => {
            let i = read_ideal(&c.input, stdin)?;
            let l = lexify_with_stop(&i, &c.common.limits())?;
            Ok(match c.common.format {
                Format::Json => (json(&IdealJson::from(&l.ideal)), 0),
                Format::Table => (format!("{}\nstop degree {}\n", render_ideal(&l.ideal), l.stop_degree), 0),
            })
        }
        Command::Classify(c) => {
            let i = read_ideal(&c.input, stdin)?;
            let gotzmann = match is_gotzmann(&i, &c.common.limits()) {
                Ok(g) => Some(g),
                Err(e) if exit_code(&e) == EXIT_CAP => None,
                Err(e) => return Err(e),
            };
            let r = Classification {
                ideal: IdealJson::from(&i),
                s: i.num_gens(),
                stability: i.stability_class(),
                lexsegment: lexsegment_class(&i),
                complete_intersection: i.is_complete_intersection(),
                in_m_squared: i.in_m_squared(),
                grade: grade(&i),
                max_m: i.max_m(),
                m_counts: i.m_counts(),
                gotzmann,
            };
            Ok(match c.common.format {
                Format::Json => (json(&r), 0),
                Format::Table => {
                    let g = r.gotzmann.map_or("unknown (cap)".to_string(), |g| g.to_string());
                    (
                        format!(
                            "ideal       {}\nstability   {}\nlexsegment  {}\nci          {}\nin m^2      {}\ngrade       {}\nmax m       {}\nm counts    {:?}\ngotzmann    {}\n",
                            render_ideal(&i),
                            r.stability,
                            r.lexsegment,
                            r.complete_intersection,
                            r.in_m_squared,
                            r.grade,
                            r.max_m,
                            r.m_counts,
                            g
                        ),
                        0,
                    )
                }
            })
        }
        Command::Gin(c) => {
            let i = read_ideal(&c.input, stdin)?;
            let g = gin_revlex(&i, &c.common.gin(), &c.common.limits())?;
            let code = if g.confident() { 0 } else { EXIT_GIN };
            Ok(match c.common.format {
                Format::Json => (json(&g.to_json()), code),
                Format::Table => (
                    format!(
                        "gin         {}\nconfident   {}\n{}\n",
                        render_ideal(&g.gin),
                        g.confident(),
                        g.diagnosis()
                    ),
                    code,
                ),
            })
        }
        Command::Verdict(c) => {
            let i = read_ideal(&c.input, stdin)?;
            let ctx = VerdictContext {
                gin: c.common.gin(),
                limits: c.common.limits(),
                trust_borel_fixed: false,
            };
            let all = c.statement == "all";
            let statements: Vec<Statement> = if all {
                Statement::ALL.to_vec()
            } else {
                vec![c.statement.parse()?]
            };
            let vs = verdicts(&i, &statements, ctx)?;
            Ok(match c.common.format {
                Format::Json if all => (json(&vs), 0),
                Format::Json => (json(&vs[0]), 0),
                Format::Table => (verdict_table(&vs), 0),
            })
        }
        Command::Family(c) => {
            let ideals = match c.kind {
                FamilyKind::Remark { s, i } => vec![remark_family(s, i)?],
                FamilyKind::UniversalLex { degrees, n } => vec![universal_lex_family(&degrees, n)?],
                FamilyKind::Borel { input } => {
                    let i = read_ideal(&input, stdin)?;
                    vec![borel_closure(i.gens().iter().cloned())?]
                }
                FamilyKind::Sample {
                    n,
                    max_degree,
                    count,
                    seed,
                    max_gens,
                } => {
                    if n == 0 || max_degree == 0 || max_gens == 0 {
                        return Err(Error::InvalidParameter("n, max-degree and max-gens must be positive".into()));
                    }
                    sample_strongly_stable(n, max_degree, count, seed, max_gens)
                }
                FamilyKind::Enumerate { n, max_degree, max_gens } => {
                    if n == 0 {
                        return Err(Error::InvalidParameter("n must be positive".into()));
                    }
                    enumerate_strongly_stable(n, max_degree, max_gens)
                }
            };
            Ok(match c.format {
                Format::Json if ideals.len() == 1 => (json(&IdealJson::from(&ideals[0])), 0),
                Format::Json => (json(&ideals.iter().map(IdealJson::from).collect::<Vec<_>>()), 0),
                Format::Table => (ideals.iter().map(|i| render_ideal(i) + "\n").collect(), 0),
            })
        }
        Command::Suite(c) => {
            let mut config: SuiteConfig = match &c.config {
                Some(p) => serde_json::from_str(&std::fs::read_to_string(p)?)
                    .map_err(|e| Error::InvalidParameter(format!("suite config: {e}")))?,
                None => SuiteConfig::default(),
            };
            if let Some(v) = c.seed {
                config.seed = v;
            }
            if let Some(v) = c.trials {
                config.gin_trials = v;
            }
            if let Some(v) = c.field {
                config.field_char = v;
            }
            if let Some(v) = c.max_gens {
                config.max_gens = v;
            }
            if let Some(v) = c.max_degree {
                config.exhaustive_max_degree = v;
            }
            if let Some(v) = c.samples {
                config.samples = v;
            }
            config.threads = c.threads.or(config.threads);
            config.output = c.output.or(config.output);
            let report = run_suite(&config)?;
            let code = if report.pass { 0 } else { EXIT_SUITE_FAILURE };
            Ok(match c.format {
                Format::Json => (report.to_json(), code),
                Format::Table => (report.to_table(), code),
            })
        }
    }
}

/// Parse `args` (program name first), run, write to `out`/`err`, and return
/// the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, stdin) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            if !text.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
