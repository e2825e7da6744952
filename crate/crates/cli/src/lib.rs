//! `ginvlab` command line. Matrices come from JSON files, reports go to
//! stdout unless `--out` is given.
//!
//! Exit codes: 0 ok, 1 usage or I/O error, 2 a precondition of the request
//! failed (any report is still written), 3 a suite disagreed with itself.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ginvlab_core::addabs::Verdict;
use ginvlab_core::decomp;
use ginvlab_core::geninv::{self, Kind};
use ginvlab_core::harness::rng::InstanceRng;
use ginvlab_core::harness::{self, FuzzConfig, Instance};
use ginvlab_core::weakdrazin::{WdiSample, WeakDrazinBase};
use ginvlab_core::{Error, Mat};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "ginvlab",
    version,
    about = "Exact generalized inverses and additive-property checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a generalized inverse
    Inv {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one condition suite on matrices read from files
    Check(CheckArgs),
    /// Run randomized suites and report disagreements
    Fuzz {
        /// Suite id, or `all`
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        index_max: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        entry_bound: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample T_l(a), T_r(a) or E_l(a)
    SampleTwdi {
        #[arg(long)]
        a: PathBuf,
        /// Parameter matrix; mutually exclusive with --seed
        #[arg(long, conflicts_with = "seed", required_unless_present = "seed")]
        z: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1, requires = "seed")]
        count: usize,
        #[arg(long, value_enum, default_value_t = Side::Left)]
        side: Side,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Core-nilpotent decomposition, optionally with the blocks of b
    Decompose {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    a: Option<PathBuf>,
    #[arg(long)]
    b: Option<PathBuf>,
    #[arg(long)]
    f: Option<PathBuf>,
    #[arg(long)]
    aplus: Option<PathBuf>,
    #[arg(long)]
    apm: Option<PathBuf>,
    #[arg(long)]
    x: Option<PathBuf>,
    #[arg(long)]
    y: Option<PathBuf>,
    #[arg(long)]
    fplus: Option<PathBuf>,
    #[arg(long)]
    e: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CheckArgs {
    fn path(&self, name: &str) -> Option<&PathBuf> {
        match name {
            "a" => self.a.as_ref(),
            "b" => self.b.as_ref(),
            "f" => self.f.as_ref(),
            "aplus" => self.aplus.as_ref(),
            "apm" => self.apm.as_ref(),
            "x" => self.x.as_ref(),
            "y" => self.y.as_ref(),
            "fplus" => self.fplus.as_ref(),
            "e" => self.e.as_ref(),
            _ => None,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    Drazin,
    Group,
    Mp,
    Core,
    CoreEp,
    DualCoreEp,
    WeakGroup,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Drazin => Kind::Drazin,
            KindArg::Group => Kind::Group,
            KindArg::Mp => Kind::MoorePenrose,
            KindArg::Core => Kind::Core,
            KindArg::CoreEp => Kind::PseudoCore,
            KindArg::DualCoreEp => Kind::DualPseudoCore,
            KindArg::WeakGroup => Kind::WeakGroup,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
    Idempotent,
}

/// A failed command: exit code plus the message for stderr.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_)
            | Error::NotGroupInvertible { .. }
            | Error::NotCoreInvertible { .. } => EXIT_PRECONDITION,
            _ => EXIT_USAGE,
        };
        Failure(code, e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "ginvlab: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Inv { kind, input, out } => inv(kind.into(), &input, out.as_deref(), stdout),
        Command::Check(args) => check(&args, stdout),
        Command::Fuzz {
            theorem,
            n,
            index_max,
            trials,
            seed,
            entry_bound,
            out,
        } => {
            let cfg = FuzzConfig {
                n_max: n,
                index_max,
                entry_bound,
                seed,
            };
            fuzz(&theorem, &cfg, trials, out.as_deref(), stdout)
        }
        Command::SampleTwdi {
            a,
            z,
            seed,
            count,
            side,
            out,
        } => sample(&a, z.as_deref(), seed, count, side, out.as_deref(), stdout),
        Command::Decompose { a, b, out } => decompose(&a, b.as_deref(), out.as_deref(), stdout),
    }
}

fn read_matrix(path: &Path) -> Result<Mat, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        let near = if e.is_syntax() || e.is_eof() {
            format!(" near `{}`", token_at(&text, e.line(), e.column()))
        } else {
            // data errors already quote the offending scalar
            String::new()
        };
        Failure(EXIT_USAGE, format!("{}: {e}{near}", path.display()))
    })
}

/// The whitespace-delimited token around a 1-based line and column.
fn token_at(text: &str, line: usize, column: usize) -> String {
    let Some(l) = text.lines().nth(line.saturating_sub(1)) else {
        return "<end of input>".into();
    };
    let chars: Vec<char> = l.chars().collect();
    if chars.is_empty() {
        return "<end of input>".into();
    }
    let at = column.saturating_sub(1).min(chars.len() - 1);
    let stop = |c: &char| c.is_whitespace();
    let start = chars[..at].iter().rposition(stop).map_or(0, |i| i + 1);
    let end = chars[at..]
        .iter()
        .position(stop)
        .map_or(chars.len(), |i| at + i);
    let tok: String = chars[start..end.max(start)].iter().collect();
    if tok.is_empty() {
        "<end of input>".into()
    } else {
        tok
    }
}

fn emit(
    value: &impl serde::Serialize,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure(EXIT_USAGE, format!("stdout: {e}"))),
    }
}

fn inv(kind: Kind, input: &Path, out: Option<&Path>, stdout: &mut dyn Write) -> Outcome {
    let a = read_matrix(input)?;
    let g = geninv::compute(&a, kind)?;
    emit(&g.inverse, out, stdout)?;
    Ok(EXIT_OK)
}

fn check(args: &CheckArgs, stdout: &mut dyn Write) -> Outcome {
    let (names, needs_s) = harness::fuzz::inputs(&args.theorem)?;
    if needs_s && args.s.is_none() {
        return Err(Failure(EXIT_USAGE, format!("{} needs --s", args.theorem)));
    }
    let mut inst = Instance {
        s: if needs_s { args.s } else { None },
        ..Instance::default()
    };
    for name in names {
        let path = args
            .path(name)
            .ok_or_else(|| Failure(EXIT_USAGE, format!("{} needs --{name}", args.theorem)))?;
        inst.matrices.insert(name.to_string(), read_matrix(path)?);
    }
    let report = harness::evaluate(&args.theorem, &inst)?;
    emit(&report, args.out.as_deref(), stdout)?;
    Ok(match report.verdict() {
        Verdict::Agree => EXIT_OK,
        Verdict::Skipped => EXIT_PRECONDITION,
        Verdict::Disagree => EXIT_DISAGREEMENT,
    })
}

fn fuzz(
    theorem: &str,
    cfg: &FuzzConfig,
    trials: usize,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Outcome {
    let (value, clean) = if theorem == "all" {
        let reports = harness::fuzz_all(cfg, trials)?;
        let clean = reports.iter().all(|r| r.is_clean());
        let total: usize = reports.iter().map(|r| r.disagreements.len()).sum();
        let value = json!({
            "config": cfg,
            "trials": trials,
            "disagreements": total,
            "reports": reports,
        });
        (value, clean)
    } else {
        let report = harness::fuzz_theorem(theorem, cfg, trials)?;
        let clean = report.is_clean();
        (serde_json::to_value(report).map_err(Error::from)?, clean)
    };
    emit(&value, out, stdout)?;
    Ok(if clean { EXIT_OK } else { EXIT_DISAGREEMENT })
}

fn sample_one(base: &WeakDrazinBase, z: &Mat, side: Side) -> Result<Value, Failure> {
    let value = match side {
        Side::Left => serde_json::to_value(base.tl_sample(z)?),
        Side::Right => serde_json::to_value(WdiSample {
            base: base.base().clone(),
            parameter: z.clone(),
            value: base.tr_sample(z)?,
        }),
        Side::Idempotent => serde_json::to_value(base.el_sample(z)?),
    };
    Ok(value.map_err(Error::from)?)
}

fn sample(
    a: &Path,
    z: Option<&Path>,
    seed: Option<u64>,
    count: usize,
    side: Side,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Outcome {
    let a = read_matrix(a)?;
    let base = WeakDrazinBase::new(&a)?;
    let n = a.rows();
    let value = match (z, seed) {
        (Some(path), _) => {
            let z = read_matrix(path)?;
            if z.shape() != (n, n) {
                return Err(Failure(
                    EXIT_USAGE,
                    format!("{}: expected a {n}x{n} parameter", path.display()),
                ));
            }
            sample_one(&base, &z, side)?
        }
        (None, Some(seed)) => {
            let samples = (0..count as u64)
                .map(|i| {
                    let z = InstanceRng::for_trial(seed, "sample-twdi", i).matrix(n, n, 3);
                    sample_one(&base, &z, side)
                })
                .collect::<Result<Vec<_>, _>>()?;
            Value::Array(samples)
        }
        (None, None) => unreachable!("clap requires --z or --seed"),
    };
    emit(&value, out, stdout)?;
    Ok(EXIT_OK)
}

fn decompose(a: &Path, b: Option<&Path>, out: Option<&Path>, stdout: &mut dyn Write) -> Outcome {
    let a = read_matrix(a)?;
    let form = decomp::core_nilpotent(&a)?;
    let mut value = json!({ "form": form });
    if let Some(path) = b {
        let b = read_matrix(path)?;
        let split = decomp::blocks(&form, &b)?;
        value["block_condition"] = json!(decomp::block_condition(&form, &split));
        value["blocks"] = json!(split);
    }
    emit(&value, out, stdout)?;
    Ok(EXIT_OK)
}
