//! Batch front end for `qergodic`: read a walk configuration, run one analysis, and
//! write JSON or CSV.

pub mod config;
pub mod report;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use qergodic::ergodicity::{
    baraquin_check, cesaro_support_chain, classify, cyclic_comultiplication_residuals, freslon_check,
    quasi_subgroup_is_subgroup, zhang_criterion, Verdict,
};
use qergodic::hopf::{find_group_like_projections, FiniteQuantumGroup};
use qergodic::walks::{distances_to_random, StochasticOperator, WalkState, PERIPHERAL_TOL};
use serde::Serialize;

use config::{load_config, SCHEMA_VERSION};
use report::{complex, format_float, Element, Num};

pub const DEFAULT_KMAX: u64 = 50;

#[derive(Debug)]
pub enum CliError {
    /// Malformed or invalid configuration (exit 2).
    Config(String),
    /// A valid request the library cannot answer (exit 3).
    Unsupported(String),
    /// The destination could not be written (exit 4).
    Output(String),
    /// Any other failure inside the library (exit 1).
    Library(qergodic::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Output(_) => 4,
            CliError::Library(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Unsupported(m) => write!(f, "unsupported: {m}"),
            CliError::Output(m) => write!(f, "output error: {m}"),
            CliError::Library(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<qergodic::Error> for CliError {
    fn from(e: qergodic::Error) -> Self {
        match e {
            qergodic::Error::Unsupported(m) => CliError::Unsupported(m),
            other => CliError::Library(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Block dimensions, Hopf axiom residuals, Haar weights.
    Describe,
    /// Distances of `ν^{⋆k}` to the Haar state for `k = 1..=kmax`.
    Trace,
    /// Ergodic, reducible or periodic, with certificate.
    Verdict,
    /// Eigenvalues of the stochastic operator.
    Spectrum,
    /// Group-like projections of the quantum group.
    Grouplikes,
    /// Probes for the Cesàro support chain and cyclic comultiplication.
    Experiment,
    /// Convergence test for states charging the identity.
    Zhang,
    /// Dual-group criterion for states on a group algebra.
    Freslon,
    /// Central-state criterion.
    Baraquin,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Describe => "describe",
            Command::Trace => "trace",
            Command::Verdict => "verdict",
            Command::Spectrum => "spectrum",
            Command::Grouplikes => "grouplikes",
            Command::Experiment => "experiment",
            Command::Zhang => "zhang",
            Command::Freslon => "freslon",
            Command::Baraquin => "baraquin",
        }
    }

    fn default_format(self) -> Format {
        match self {
            Command::Trace | Command::Spectrum => Format::Csv,
            _ => Format::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qergodic", version, about = "Random walks on finite quantum groups")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub kmax: Option<u64>,
    /// Eigenvalue clustering and Hopf residual tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write `<command>.<format>` here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// A rendered result, ready to be printed or written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rendered {
    pub file_name: String,
    pub contents: String,
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = String::from(header);
    s.push('\n');
    for row in rows {
        let _ = writeln!(s, "{}", row.join(","));
    }
    s
}

struct Context {
    group: std::sync::Arc<FiniteQuantumGroup>,
    state: WalkState,
    kmax: Option<u64>,
    tol: f64,
}

fn describe(cx: &Context) -> Result<report::Describe, CliError> {
    let g = &cx.group;
    let hopf = g.verify_hopf_axioms(cx.tol);
    Ok(report::Describe {
        schema: SCHEMA_VERSION,
        group: g.label().to_string(),
        kind: g.origin().kind().to_string(),
        dims: g.algebra().dims().to_vec(),
        dimension: g.order(),
        counit_block: g.counit_block(),
        haar_weights: g.haar_weights().iter().map(|&w| Num(w)).collect(),
        hopf: report::HopfSummary {
            passed: hopf.passed(),
            tol: Num(hopf.tol),
            residuals: hopf
                .residuals
                .iter()
                .map(|r| report::NamedValue { name: r.name.to_string(), value: Num(r.value) })
                .collect(),
        },
        state: report::StateSummary {
            mass_at_identity: Num(cx.state.mass_at_identity()),
            faithful: cx.state.is_faithful()?,
            support_rank: cx.state.support_projection()?.projection_rank(),
        },
    })
}

fn trace(cx: &Context) -> Result<Vec<report::TraceRow>, CliError> {
    let kmax = cx.kmax.unwrap_or(DEFAULT_KMAX);
    if kmax == 0 {
        return Err(CliError::Config("kmax must be at least 1".into()));
    }
    Ok(distances_to_random(&cx.state, kmax)?
        .into_iter()
        .map(|r| report::TraceRow { k: r.k, tv: Num(r.tv), l2: Num(r.l2), qsd: Num(r.qsd) })
        .collect())
}

fn verdict(cx: &Context) -> Result<report::Verdict, CliError> {
    let v = classify(&cx.state)?;
    let certificate = match &v.verdict {
        Verdict::Ergodic => report::Certificate::Ergodic {},
        Verdict::Reducible { quasi_subgroup } => report::Certificate::QuasiSubgroup {
            projection: Element::from(quasi_subgroup),
            rank: quasi_subgroup.projection_rank(),
            central: quasi_subgroup_is_subgroup(&cx.group, quasi_subgroup)?,
        },
        Verdict::Periodic { partition } => report::Certificate::CyclicPartition {
            projections: partition.projections.iter().map(Element::from).collect(),
        },
    };
    Ok(report::Verdict {
        schema: SCHEMA_VERSION,
        tag: v.tag().to_string(),
        d: v.period(),
        certificate,
        peripheral: v.peripheral.iter().map(|&z| complex(z)).collect(),
        cesaro_support: Element::from(&v.cesaro_support),
        tv_samples: v.tv_samples.iter().map(|&(k, tv)| report::TvSample { k, tv: Num(tv) }).collect(),
    })
}

fn spectrum(cx: &Context) -> Result<Vec<report::SpectrumRow>, CliError> {
    let op = StochasticOperator::new(&cx.state)?;
    Ok(op
        .spectrum_with_multiplicity(cx.tol)
        .into_iter()
        .map(|(z, m)| report::SpectrumRow { re: Num(z.re), im: Num(z.im), multiplicity: m })
        .collect())
}

fn grouplikes(cx: &Context) -> Result<report::GroupLikes, CliError> {
    let g = &cx.group;
    let found = find_group_like_projections(g)?;
    let grouplikes = found
        .iter()
        .map(|p| {
            Ok(report::GroupLike {
                rank: p.projection_rank(),
                haar_mass: Num(g.haar().apply(p).re),
                central: quasi_subgroup_is_subgroup(g, p)?,
                projection: Element::from(p),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(report::GroupLikes { schema: SCHEMA_VERSION, group: g.label().to_string(), count: grouplikes.len(), grouplikes })
}

fn strict_until_stable(ranks: &[usize]) -> bool {
    let stable = ranks.windows(2).position(|w| w[0] == w[1]).unwrap_or(ranks.len());
    ranks[..stable.min(ranks.len())].windows(2).all(|w| w[0] < w[1])
        && ranks[stable.min(ranks.len())..].windows(2).all(|w| w[0] == w[1])
}

fn experiment(cx: &Context) -> Result<report::Experiment, CliError> {
    let n = cx.kmax.unwrap_or(cx.group.order() as u64).max(1);
    let chain = cesaro_support_chain(&cx.state, n)?;
    let ranks: Vec<usize> = chain.iter().map(|&(_, r)| r).collect();
    let cyclic_partition = match classify(&cx.state)?.verdict {
        Verdict::Periodic { partition } => Some(report::PartitionProbe {
            period: partition.period,
            comultiplication_residuals: cyclic_comultiplication_residuals(&cx.group, &partition)?
                .into_iter()
                .map(Num)
                .collect(),
        }),
        _ => None,
    };
    Ok(report::Experiment {
        schema: SCHEMA_VERSION,
        cesaro_support_chain: chain.into_iter().map(|(m, rank)| report::ChainEntry { m, rank }).collect(),
        chain_strict_until_stable: strict_until_stable(&ranks),
        cyclic_partition,
    })
}

fn zhang(cx: &Context) -> Result<report::Zhang, CliError> {
    let r = zhang_criterion(&cx.state)?;
    Ok(report::Zhang {
        schema: SCHEMA_VERSION,
        nu_eta: Num(r.nu_eta),
        applies: r.applies,
        spectral_ball_ok: r.spectral_ball_ok,
        converges: r.converges,
    })
}

fn freslon(cx: &Context) -> Result<report::Freslon, CliError> {
    let r = freslon_check(&cx.state)?;
    let group = cx.group.origin().group().expect("the dual criterion only succeeds on group algebras");
    Ok(report::Freslon {
        schema: SCHEMA_VERSION,
        ergodic: r.ergodic,
        witness: r.witness.map(|w| w.iter().map(|&s| group.name(s).to_string()).collect()),
    })
}

fn baraquin(cx: &Context) -> Result<report::Baraquin, CliError> {
    let r = baraquin_check(&cx.state)?;
    Ok(report::Baraquin {
        schema: SCHEMA_VERSION,
        central: r.central,
        ergodic: r.ergodic,
        coefficients: r
            .coefficients
            .into_iter()
            .map(|c| report::CharacterCoefficient {
                label: c.label,
                dim: c.dim,
                trivial: c.trivial,
                coefficient: complex(c.coefficient),
            })
            .collect(),
    })
}

/// Runs one command and renders its output; nothing is written.
pub fn run(args: &Args) -> Result<Rendered, CliError> {
    let (cfg, base) = load_config(&args.config)?;
    let tol = args.tol.or(cfg.tol).unwrap_or(PERIPHERAL_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Config(format!("tolerance must be positive, got {tol}")));
    }
    let group = cfg.group.resolve(&base)?;
    let state = cfg.state.resolve(&group)?;
    let cx = Context { group, state, kmax: args.kmax.or(cfg.kmax), tol };

    let format = args.format.unwrap_or(args.command.default_format());
    let contents = match (args.command, format) {
        (Command::Trace, Format::Csv) => csv(
            "k,tv,l2,qsd",
            trace(&cx)?
                .into_iter()
                .map(|r| vec![r.k.to_string(), format_float(r.tv.0), format_float(r.l2.0), format_float(r.qsd.0)]),
        ),
        (Command::Trace, Format::Json) => json(&report::Trace { schema: SCHEMA_VERSION, rows: trace(&cx)? })?,
        (Command::Spectrum, Format::Csv) => csv(
            "re,im,multiplicity",
            spectrum(&cx)?
                .into_iter()
                .map(|r| vec![format_float(r.re.0), format_float(r.im.0), r.multiplicity.to_string()]),
        ),
        (Command::Spectrum, Format::Json) => json(&report::Spectrum { schema: SCHEMA_VERSION, rows: spectrum(&cx)? })?,
        (command, Format::Csv) => {
            return Err(CliError::Config(format!("{} has no CSV form; use --format json", command.name())));
        }
        (Command::Describe, _) => json(&describe(&cx)?)?,
        (Command::Verdict, _) => json(&verdict(&cx)?)?,
        (Command::Grouplikes, _) => json(&grouplikes(&cx)?)?,
        (Command::Experiment, _) => json(&experiment(&cx)?)?,
        (Command::Zhang, _) => json(&zhang(&cx)?)?,
        (Command::Freslon, _) => json(&freslon(&cx)?)?,
        (Command::Baraquin, _) => json(&baraquin(&cx)?)?,
    };
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    Ok(Rendered { file_name: format!("{}.{ext}", args.command.name()), contents })
}

/// Writes to `--out` when given, otherwise to standard output. Returns the written path.
pub fn emit(rendered: &Rendered, out: Option<&PathBuf>) -> Result<Option<PathBuf>, CliError> {
    match out {
        None => {
            print!("{}", rendered.contents);
            Ok(None)
        }
        Some(dir) => {
            let fail = |e: std::io::Error| CliError::Output(format!("cannot write to {}: {e}", dir.display()));
            fs::create_dir_all(dir).map_err(fail)?;
            let path = dir.join(&rendered.file_name);
            fs::write(&path, &rendered.contents).map_err(fail)?;
            Ok(Some(path))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_shapes() {
        assert!(strict_until_stable(&[1, 2, 3, 3, 3]));
        assert!(strict_until_stable(&[4, 4]));
        assert!(strict_until_stable(&[1, 2, 3]));
        assert!(!strict_until_stable(&[1, 2, 2, 3]));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Config(String::new()).exit_code(), 2);
        assert_eq!(CliError::from(qergodic::Error::Unsupported(String::new())).exit_code(), 3);
        assert_eq!(CliError::Output(String::new()).exit_code(), 4);
        assert_eq!(CliError::from(qergodic::Error::Numeric(String::new())).exit_code(), 1);
    }
}
