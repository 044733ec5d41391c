//! Command-line front end behind the `uavg` binary.
//!
//! Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 verification
//! failure.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::channels::states::{maximally_mixed, preset};
use crate::channels::{
    beta_weights, compact_finite_twirl, haar_projection_twirl, mc_cartan_twirl, mc_haar_twirl,
    mc_tolerance, noncompact_finite_twirl, select_convention, AbelianFamily, BetaWeights,
    Convention, ConventionSelection, DensityMatrix, IdentityFamily, Sl2Filtering, TwirlResult,
};
use crate::error::{Error, Result};
use crate::numerics::{QuadratureSpec, TolerancePolicy};
use crate::opbasis::SchurOperatorSet;
use crate::schur::{build_schur_basis_with, SchurBasis};
use crate::sizes::{emit_table, table_to_csv, table_to_json};
use crate::verify::{run_suite, VerifyConfig, STRUCTURE_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "uavg",
    version,
    about = "Finite averaging over collective group actions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a Schur basis and print its sector dimensions.
    Schur(SchurArgs),
    /// Twirl a state with a finite channel or one of its oracles.
    Twirl(TwirlArgs),
    /// Integrate the sector weights of a non-compact family.
    Beta(BetaArgs),
    /// Emit the averaging-set size table.
    Sizes(SizesArgs),
    /// Run the invariant suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 4)]
    pub t: usize,
    /// Write the main output here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = TolerancePolicy::DEFAULT_EQ_TOL)]
    pub eq_tol: f64,
    #[arg(long, default_value_t = TolerancePolicy::DEFAULT_RANK_TOL)]
    pub rank_tol: f64,
}

impl CommonArgs {
    fn policy(&self) -> Result<TolerancePolicy> {
        TolerancePolicy::new(self.eq_tol, self.rank_tol)
    }

    fn basis(&self) -> Result<SchurBasis> {
        build_schur_basis_with(self.d, self.t, &self.policy()?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct SamplingArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct QuadratureArgs {
    #[arg(long, default_value_t = 40.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,
}

impl QuadratureArgs {
    fn spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            x_max: self.x_max,
            nodes: self.nodes,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Auto,
    Raw,
    Normalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelArg {
    /// Finite sum over Heisenberg-Weyl bases, `p_k = 1`.
    Compact,
    /// Finite sum with `p_k` from the SL(2) sector weights.
    Noncompact,
    /// Closed-form Haar projection.
    Haar,
    /// Monte-Carlo Haar average.
    McHaar,
    /// Monte-Carlo Cartan average for the SL(2) family.
    McCartan,
}

#[derive(Debug, Clone, Args)]
pub struct SchurArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TwirlArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    pub quadrature: QuadratureArgs,
    /// State file `{dim, entries: [[re, im], ...]}`.
    #[arg(long, conflicts_with = "preset")]
    pub state: Option<PathBuf>,
    /// ghz<t>, zero<t>, mixed or singlet-pair.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_enum, default_value_t = ChannelArg::Compact)]
    pub channel: ChannelArg,
    #[arg(long, value_enum, default_value_t = ConventionArg::Auto)]
    pub convention: ConventionArg,
    /// Also run the matching oracle and report the max entry deviation.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BetaArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    pub quadrature: QuadratureArgs,
    #[arg(long, value_enum, default_value_t = ConventionArg::Auto)]
    pub convention: ConventionArg,
    /// Use `A_n ≡ I` instead of the SL(2) filtering family.
    #[arg(long)]
    pub identity_family: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SizesArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    pub quadrature: QuadratureArgs,
    /// Random states per `t` in the compact oracle comparison.
    #[arg(long, default_value_t = 20)]
    pub states: usize,
    /// Check this Schur basis file instead of freshly built bases.
    #[arg(long)]
    pub basis: Option<PathBuf>,
    /// Write the report as JSON here.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = TolerancePolicy::DEFAULT_EQ_TOL)]
    pub eq_tol: f64,
    #[arg(long, default_value_t = TolerancePolicy::DEFAULT_RANK_TOL)]
    pub rank_tol: f64,
}

/// Maps a library error to an exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NonFinite
        | Error::LinearDependence { .. }
        | Error::QuadratureNotConverged { .. }
        | Error::ConventionRequired
        | Error::ConventionUndetermined { .. }
        | Error::InsufficientSamples { .. } => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

/// Output of a command: the primary document plus human-readable notes.
#[derive(Debug, Default)]
pub struct Outcome {
    pub document: String,
    pub notes: Vec<String>,
    pub code: i32,
}

/// Writes to stdout, treating a closed pipe (`uavg ... | head`) as success.
fn print_stdout(text: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn lines(notes: &[String]) -> String {
    notes.iter().map(|n| format!("{n}\n")).collect()
}

fn emit(outcome: Outcome, output: Option<&Path>) -> Result<i32> {
    match output {
        Some(path) => {
            std::fs::write(path, &outcome.document)?;
            print_stdout(&lines(&outcome.notes))?;
        }
        None => {
            let mut doc = outcome.document;
            if !doc.ends_with('\n') {
                doc.push('\n');
            }
            print_stdout(&doc)?;
            for n in &outcome.notes {
                eprintln!("{n}");
            }
        }
    }
    Ok(outcome.code)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let output = match &cli.command {
        Command::Schur(a) => a.common.output.clone(),
        Command::Twirl(a) => a.common.output.clone(),
        Command::Beta(a) => a.common.output.clone(),
        Command::Sizes(a) => a.output.clone(),
        Command::Verify(a) => a.output.clone(),
    };
    let result = execute(&cli.command).and_then(|o| {
        if matches!(cli.command, Command::Verify(_)) && output.is_none() {
            // the report lines are the output; JSON only goes to files
            print_stdout(&lines(&o.notes))?;
            return Ok(o.code);
        }
        emit(o, output.as_deref())
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs a parsed command without touching stdout or the filesystem output.
pub fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Schur(a) => cmd_schur(a),
        Command::Twirl(a) => cmd_twirl(a),
        Command::Beta(a) => cmd_beta(a),
        Command::Sizes(a) => cmd_sizes(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

pub fn cmd_schur(a: &SchurArgs) -> Result<Outcome> {
    let basis = a.common.basis()?;
    let mut notes = vec![format!(
        "d = {}, t = {}: {} sectors",
        basis.d,
        basis.t,
        basis.sectors().len()
    )];
    for s in basis.sectors() {
        notes.push(format!(
            "k = {}  D_G = {}  D_C = {}  diagram {:?}",
            s.k,
            s.d_g,
            s.d_c,
            s.diagram.row_lengths()
        ));
    }
    Ok(Outcome {
        document: basis.to_json()?,
        notes,
        code: EXIT_OK,
    })
}

fn load_state(a: &TwirlArgs) -> Result<DensityMatrix> {
    match (&a.state, &a.preset) {
        (Some(path), _) => DensityMatrix::from_file_json(&std::fs::read_to_string(path)?),
        (None, Some(name)) => preset(name, a.common.t),
        (None, None) => Err(Error::InvalidArgument(
            "pass --state FILE or --preset NAME".into(),
        )),
    }
}

fn family(identity: bool) -> &'static dyn AbelianFamily {
    if identity {
        &IdentityFamily
    } else {
        &Sl2Filtering
    }
}

fn resolve_convention(
    arg: ConventionArg,
    probe: &DensityMatrix,
    s: &SchurOperatorSet,
    beta: &BetaWeights,
    fam: &dyn AbelianFamily,
    sampling: &SamplingArgs,
) -> Result<(Convention, Option<ConventionSelection>)> {
    match arg {
        ConventionArg::Raw => Ok((Convention::Raw, None)),
        ConventionArg::Normalized => Ok((Convention::Normalized, None)),
        ConventionArg::Auto => {
            let hw = s.heisenberg_weyl_bases();
            let sel = select_convention(probe, s, &hw, beta, fam, sampling.samples, sampling.seed)?;
            Ok((sel.convention, Some(sel)))
        }
    }
}

pub fn cmd_twirl(a: &TwirlArgs) -> Result<Outcome> {
    let rho = load_state(a)?;
    let basis = a.common.basis()?;
    if rho.dim() != basis.dim() {
        return Err(Error::InvalidArgument(format!(
            "state has dimension {}, expected {} for d = {}, t = {}",
            rho.dim(),
            basis.dim(),
            a.common.d,
            a.common.t
        )));
    }
    let t = a.common.t;
    let s = SchurOperatorSet::new(basis);
    let hw = s.heisenberg_weyl_bases();
    let (n, seed) = (a.sampling.samples, a.sampling.seed);
    let mut notes = Vec::new();
    let needs_beta = matches!(a.channel, ChannelArg::Noncompact)
        || (a.verify && matches!(a.channel, ChannelArg::McCartan));
    let beta = if needs_beta {
        Some(beta_weights(&s, &Sl2Filtering, t, &a.quadrature.spec())?)
    } else {
        None
    };

    let (mut result, oracle, tol): (TwirlResult, Option<TwirlResult>, f64) = match a.channel {
        ChannelArg::Compact => {
            let r = compact_finite_twirl(&rho, &s, &hw)?;
            let o = a
                .verify
                .then(|| haar_projection_twirl(&rho, &s))
                .transpose()?;
            (r, o, STRUCTURE_TOL)
        }
        ChannelArg::Haar => {
            let r = haar_projection_twirl(&rho, &s)?;
            let o = a
                .verify
                .then(|| compact_finite_twirl(&rho, &s, &hw))
                .transpose()?;
            (r, o, STRUCTURE_TOL)
        }
        ChannelArg::McHaar => {
            let r = mc_haar_twirl(&rho, t, n, seed)?.with_sector_weights(&s)?;
            let o = a
                .verify
                .then(|| haar_projection_twirl(&rho, &s))
                .transpose()?;
            (r, o, mc_tolerance(n))
        }
        ChannelArg::Noncompact => {
            let beta = beta.as_ref().expect("computed above");
            let (c, sel) =
                resolve_convention(a.convention, &rho, &s, beta, &Sl2Filtering, &a.sampling)?;
            if let Some(sel) = &sel {
                notes.push(format!(
                    "convention {} selected by Monte Carlo (raw delta {:.3e}, normalized delta {:.3e}, tolerance {:.3e})",
                    sel.convention, sel.delta_raw, sel.delta_normalized, sel.tolerance
                ));
            }
            let r = noncompact_finite_twirl(&rho, &s, &hw, beta, Some(c))?;
            let o = a
                .verify
                .then(|| mc_cartan_twirl(&rho, t, &Sl2Filtering, n, seed))
                .transpose()?;
            (r, o, mc_tolerance(n))
        }
        ChannelArg::McCartan => {
            let mut r =
                mc_cartan_twirl(&rho, t, &Sl2Filtering, n, seed)?.with_sector_weights(&s)?;
            let o = match &beta {
                Some(beta) => {
                    let (c, _) = resolve_convention(
                        a.convention,
                        &rho,
                        &s,
                        beta,
                        &Sl2Filtering,
                        &a.sampling,
                    )?;
                    r.convention = Some(c);
                    Some(noncompact_finite_twirl(&rho, &s, &hw, beta, Some(c))?)
                }
                None => None,
            };
            (r, o, mc_tolerance(n))
        }
    };

    let mut code = EXIT_OK;
    if let Some(o) = oracle {
        let delta = result.compare_with(&o.state);
        let ok = delta <= tol;
        notes.push(format!(
            "{} oracle delta {delta:.3e} (tolerance {tol:.2e})",
            if ok { "PASS" } else { "FAIL" }
        ));
        if !ok {
            code = EXIT_VERIFICATION;
        }
    }
    notes.push(format!(
        "total trace {:.12}, sector weights [{}]",
        result.total_trace,
        result
            .sector_weights
            .iter()
            // round-off below the printed precision would show as -0.000000
            .map(|&w| format!("{:.6}", if w.abs() < 5e-7 { 0.0 } else { w }))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    Ok(Outcome {
        document: result.to_json()?,
        notes,
        code,
    })
}

/// JSON document written by `uavg beta`.
#[derive(Debug, Serialize)]
pub struct BetaReport {
    pub weights: BetaWeights,
    pub p_raw: Vec<f64>,
    pub p_normalized: Vec<f64>,
    pub convention: Convention,
    pub selection: Option<ConventionSelection>,
}

pub fn cmd_beta(a: &BetaArgs) -> Result<Outcome> {
    let s = SchurOperatorSet::new(a.common.basis()?);
    let fam = family(a.identity_family);
    let weights = beta_weights(&s, fam, a.common.t, &a.quadrature.spec())?;
    let probe = maximally_mixed(a.common.t);
    let (convention, selection) =
        resolve_convention(a.convention, &probe, &s, &weights, fam, &a.sampling)?;
    let notes = vec![
        format!(
            "normalized weights {:?}",
            weights
                .normalized
                .iter()
                .map(|v| format!("{v:.5}"))
                .collect::<Vec<_>>()
        ),
        format!(
            "refinement delta {:.2e}, convention {convention}",
            weights.refinement_delta
        ),
    ];
    let report = BetaReport {
        p_raw: weights.probabilities(Convention::Raw),
        p_normalized: weights.probabilities(Convention::Normalized),
        weights,
        convention,
        selection,
    };
    Ok(Outcome {
        document: serde_json::to_string_pretty(&report)?,
        notes,
        code: EXIT_OK,
    })
}

pub fn cmd_sizes(a: &SizesArgs) -> Result<Outcome> {
    let rows = emit_table();
    let document = match a.format {
        Format::Json => table_to_json(&rows)?,
        Format::Csv => table_to_csv(&rows),
    };
    Ok(Outcome {
        document,
        notes: vec![format!("{} rows", rows.len())],
        code: EXIT_OK,
    })
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let basis = a
        .basis
        .as_ref()
        .map(|p| SchurBasis::from_json(&std::fs::read_to_string(p)?))
        .transpose()?;
    let cfg = VerifyConfig {
        samples: a.sampling.samples,
        seed: a.sampling.seed,
        states: a.states,
        quadrature: a.quadrature.spec(),
        policy: TolerancePolicy::new(a.eq_tol, a.rank_tol)?,
        basis,
    };
    let report = run_suite(&cfg);
    let mut notes: Vec<String> = report.checks.iter().map(|c| c.line()).collect();
    let passed = report.checks.iter().filter(|c| c.passed).count();
    notes.push(format!("{passed}/{} checks passed", report.checks.len()));
    Ok(Outcome {
        document: serde_json::to_string_pretty(&report)?,
        notes,
        code: if report.all_passed() {
            EXIT_OK
        } else {
            EXIT_VERIFICATION
        },
    })
}
