//! Argument grammar and command execution.
//!
//! Each subcommand resolves its parameters (filling defaults, deriving
//! values, rejecting contradictions), runs the library, and assembles one
//! [`Doc`] holding the tool version, the full resolved parameter set, and
//! the results. Exit codes: 0 success, 1 domain error (one-line reason on
//! stderr), 2 usage error (argument parsing).

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use lrc_core::bounds;
use lrc_core::characterize::{characterize_with_profile, l_window_ok, CharacterizedPcm};
use lrc_core::code::{DistanceRoute, EnumerationCaps, LinearCode, LocalityRoute};
use lrc_core::construct::{
    search_alphas, Construction, Family, SearchBudget, SearchOutcome, SearchSpec,
};
use lrc_core::gf::{factor_prime_power, Field};
use lrc_core::repair::simulate;
use lrc_core::verify::{verify, NecessaryCase, VerifyReport};

use crate::report::{Doc, OutputFormat};
use crate::textfmt;

/// Locally repairable code toolkit: construct codes from parameterized
/// families, verify locality and distance exhaustively, evaluate bounds,
/// and simulate single-erasure repair.
#[derive(Debug, Parser)]
#[command(name = "lrc", version)]
pub struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code from a family, verify it, and emit it with a report.
    Construct(ConstructArgs),
    /// Exhaustively verify locality, distance, rank, and optimality.
    Verify(VerifyArgs),
    /// Evaluate distance, dimension, and availability bounds.
    Bounds(BoundsArgs),
    /// Rewrite a parity-check matrix into locality rows plus completions.
    Characterize(CharacterizeArgs),
    /// Run seeded single-erasure repair trials on a code file.
    Simulate(SimulateArgs),
    /// Search for an evaluation grid reaching a target distance.
    Search(SearchArgs),
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| {
        format!(
            "unknown family {s:?} (expected linearized, vdm_d4, vdm_d5, d3_variant, \
             or r2_d5_variant)"
        )
    })
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// Family: linearized | vdm_d4 | vdm_d5 | d3_variant | r2_d5_variant.
    #[arg(long, value_parser = parse_family)]
    pub family: Family,

    /// Field order (the base-field order for --family linearized).
    #[arg(long)]
    pub q: u64,

    /// Extension degree over GF(q); linearized family only.
    #[arg(long)]
    pub m: Option<usize>,

    /// Block length; must be a multiple of r + 1.
    #[arg(long)]
    pub n: usize,

    /// Locality target (fixed to 2 for r2_d5_variant).
    #[arg(long)]
    pub r: Option<usize>,

    /// Dimension; required for linearized, derived and checked otherwise.
    #[arg(long)]
    pub k: Option<usize>,

    /// Evaluation-grid file replacing the family's automatic grid.
    #[arg(long)]
    pub alphas: Option<PathBuf>,

    /// Write the code file here instead of printing it before the report.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Echoed into the report; builders themselves are deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Code file to verify.
    #[arg(long)]
    pub code: PathBuf,

    /// Locality target; defaults to the computed all-symbol locality.
    #[arg(long)]
    pub r: Option<usize>,
}

/// Which distance/dimension estimator backs the table-driven bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum EstimatorArg {
    /// Minimum of the Singleton, Plotkin, and Griesmer closed forms.
    ClosedForm,
    /// Exact optimum by exhaustive scan; tiny parameters only.
    Exhaustive,
}

impl EstimatorArg {
    fn mode(self) -> bounds::EstimatorMode {
        match self {
            EstimatorArg::ClosedForm => bounds::EstimatorMode::ClosedForm,
            EstimatorArg::Exhaustive => bounds::EstimatorMode::Exhaustive,
        }
    }

    fn name(self) -> &'static str {
        match self {
            EstimatorArg::ClosedForm => "closed-form",
            EstimatorArg::Exhaustive => "exhaustive",
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Block length.
    #[arg(long)]
    pub n: usize,

    /// Dimension.
    #[arg(long)]
    pub k: usize,

    /// Locality target.
    #[arg(long)]
    pub r: usize,

    /// Field order.
    #[arg(long)]
    pub q: u64,

    /// Distance for the dimension bound; defaults to the general bound value.
    #[arg(long)]
    pub d: Option<usize>,

    /// Availability level; adds the availability bound when present.
    #[arg(long)]
    pub s: Option<usize>,

    /// Estimator behind the shortening and dimension bounds.
    #[arg(long, value_enum, default_value = "closed-form")]
    pub estimator: EstimatorArg,
}

#[derive(Debug, Args)]
pub struct CharacterizeArgs {
    /// Code file to characterize.
    #[arg(long)]
    pub code: PathBuf,

    /// Locality target; defaults to the computed all-symbol locality.
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Code file to simulate repairs on.
    #[arg(long)]
    pub code: PathBuf,

    /// Number of (message, erasure) trials.
    #[arg(long)]
    pub trials: u64,

    /// Seed; replays are bit-identical.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Field order the grid lives in.
    #[arg(long)]
    pub q: u64,

    /// Block length; must be a multiple of r + 1.
    #[arg(long)]
    pub n: usize,

    /// Locality target.
    #[arg(long)]
    pub r: usize,

    /// Power rows appended after the group rows.
    #[arg(long)]
    pub extra_rows: usize,

    /// Exact minimum distance the found code must reach.
    #[arg(long)]
    pub target_d: usize,

    /// Seed for the random-sampling phase.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Write the found grid here as an evaluation-grid file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Execute a parsed invocation; the returned string is the whole stdout.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Construct(args) => run_construct(args, cli.format),
        Command::Verify(args) => run_verify(args, cli.format),
        Command::Bounds(args) => run_bounds(args, cli.format),
        Command::Characterize(args) => run_characterize(args, cli.format),
        Command::Simulate(args) => run_simulate(args, cli.format),
        Command::Search(args) => run_search(args, cli.format),
    }
}

fn prologue(command: &str) -> Doc {
    let mut doc = Doc::new();
    doc.push("tool", "lrc");
    doc.push("version", env!("CARGO_PKG_VERSION"));
    doc.push("command", command);
    doc
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            anyhow!("file not found: {}", path.display())
        } else {
            anyhow!("cannot read {}: {e}", path.display())
        }
    })
}

fn load_code(path: &Path) -> Result<LinearCode> {
    let text = read_file(path)?;
    textfmt::parse_code(&text).with_context(|| format!("bad code file {}", path.display()))
}

fn opt_path(path: &Option<PathBuf>) -> String {
    path.as_ref().map_or_else(|| "none".to_string(), |p| p.display().to_string())
}

fn join<T: Display>(items: &[T]) -> String {
    items.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn distance_route_name(route: DistanceRoute) -> &'static str {
    match route {
        DistanceRoute::CodewordEnumeration => "codeword-enumeration",
        DistanceRoute::ColumnSearch => "column-search",
    }
}

fn locality_route_name(route: LocalityRoute) -> &'static str {
    match route {
        LocalityRoute::DualEnumeration => "dual-enumeration",
        LocalityRoute::ColumnSearch => "column-search",
    }
}

fn necessary_case_name(case: NecessaryCase) -> &'static str {
    match case {
        NecessaryCase::RDividesK => "r_divides_k",
        NecessaryCase::RNotDividesK => "r_not_divides_k",
        NecessaryCase::NotApplicable => "not_applicable",
    }
}

/// Push the full verification result under its stable field names.
fn push_verify_fields(doc: &mut Doc, rep: &VerifyReport, field: &Field) {
    doc.push("n", rep.n);
    doc.push("k", rep.k);
    doc.push("r", rep.r);
    doc.push("q", rep.q);
    doc.push("field", textfmt::field_header(field));
    doc.push("d_exact", rep.distance.value);
    doc.push("singleton_like", rep.singleton_like);
    doc.push("optimal", rep.optimal);
    doc.push("full_rank", rep.full_rank);
    doc.push("locality_ok", rep.locality_ok);
    doc.push("all_symbol_locality", rep.locality.all_symbol());
    doc.push("per_symbol_locality", join(&rep.locality.per_symbol));
    doc.push("distance_route", distance_route_name(rep.distance.route));
    doc.push("distance_witness_columns", join(&rep.distance.witness.columns));
    doc.push("distance_witness_coefficients", join(&rep.distance.witness.coefficients));
    doc.push("locality_route", locality_route_name(rep.locality.route));
    for (i, witness) in rep.locality.witnesses.iter().enumerate() {
        doc.push(format!("locality_witness.{i}"), join(witness));
    }
    doc.push("necessary_case", necessary_case_name(rep.necessary.case));
    doc.push_opt("necessary_ok", rep.necessary.ok);
    doc.push_opt("necessary_note", rep.necessary.note);
    for (j, violation) in rep.necessary.violations.iter().enumerate() {
        doc.push(format!("necessary_violation.{j}"), violation);
    }
}

/// The field a construction evaluates its grid in (mirrors the builder).
fn construction_field(cons: &Construction) -> Result<Field> {
    let field = match *cons {
        Construction::Linearized { base, ext_degree, .. } => {
            let (p, t) = factor_prime_power(base)
                .ok_or_else(|| anyhow!("base order {base} is not a prime power"))?;
            Field::new(p, t * ext_degree)
        }
        Construction::VdmD4 { q, .. }
        | Construction::VdmD5 { q, .. }
        | Construction::D3 { q, .. }
        | Construction::R2D5 { q, .. } => Field::of_order(q),
    };
    field.map_err(|e| anyhow!("bad field parameters: {e}"))
}

fn resolve_r(family: Family, r: Option<usize>) -> Result<usize> {
    match (family, r) {
        (Family::R2D5, None | Some(2)) => Ok(2),
        (Family::R2D5, Some(other)) => {
            bail!("family r2_d5_variant fixes r=2; got --r {other}")
        }
        (_, Some(r)) => Ok(r),
        (_, None) => bail!("missing --r (required for this family)"),
    }
}

fn run_construct(args: &ConstructArgs, format: OutputFormat) -> Result<String> {
    let family = args.family;
    let r = resolve_r(family, args.r)?;
    if family != Family::Linearized && args.m.is_some() {
        bail!("--m only applies to --family linearized");
    }
    let cons = match family {
        Family::Linearized => {
            let m = args.m.ok_or_else(|| anyhow!("--family linearized requires --m"))?;
            let k = args.k.ok_or_else(|| anyhow!("--family linearized requires --k"))?;
            Construction::Linearized { base: args.q, ext_degree: m, n: args.n, k, r }
        }
        Family::VdmD4 => Construction::VdmD4 { q: args.q, n: args.n, r },
        Family::VdmD5 => Construction::VdmD5 { q: args.q, n: args.n, r },
        Family::D3 => Construction::D3 { q: args.q, n: args.n, r },
        Family::R2D5 => Construction::R2D5 { q: args.q, n: args.n },
    };
    let built = match &args.alphas {
        None => cons.build().map_err(|e| anyhow!("construction failed: {e}"))?,
        Some(path) => {
            let text = read_file(path)?;
            let (grid_field, grid) = textfmt::parse_alphas(&text)
                .with_context(|| format!("bad evaluation-grid file {}", path.display()))?;
            let expected = construction_field(&cons)?;
            let got_header = textfmt::field_header(&grid_field);
            let want_header = textfmt::field_header(&expected);
            if got_header != want_header {
                bail!(
                    "evaluation grid is over \"{got_header}\" but the construction \
                     needs \"{want_header}\""
                );
            }
            cons.build_with_alphas(&grid).map_err(|e| anyhow!("construction failed: {e}"))?
        }
    };
    if let Some(k) = args.k {
        if k != built.code.k() {
            bail!(
                "--k {k} contradicts the derived dimension {} for family {}",
                built.code.k(),
                family.as_str()
            );
        }
    }
    let caps = EnumerationCaps::default();
    let rep = verify(&built.code, built.r, &caps)
        .map_err(|e| anyhow!("verification failed: {e}"))?;

    let code_text = textfmt::render_code(&built.code);
    if let Some(out) = &args.out {
        fs::write(out, &code_text).with_context(|| format!("cannot write {}", out.display()))?;
    }

    let mut doc = prologue("construct");
    doc.push("param.family", family.as_str());
    doc.push("param.q", args.q);
    doc.push_opt("param.m", args.m);
    doc.push("param.n", args.n);
    doc.push("param.r", built.r);
    doc.push("param.k", built.code.k());
    doc.push("param.alphas", opt_path(&args.alphas));
    doc.push("param.out", opt_path(&args.out));
    doc.push("param.seed", args.seed);
    doc.push("family", family.as_str());
    doc.push("base_field_order", built.base);
    doc.push("groups", built.l);
    doc.push("claimed_d", built.claimed_d);
    for (i, row) in built.alphas.iter().enumerate() {
        doc.push(format!("alpha.{i}"), join(row));
    }
    for check in &built.hypotheses.checks {
        doc.push(
            format!("hypothesis.{}", check.name),
            if check.passed { "pass" } else { "fail" },
        );
    }
    let pcm = built.code.pcm();
    doc.push("pcm_rows", pcm.rows());
    for i in 0..pcm.rows() {
        doc.push(format!("pcm.{i}"), join(pcm.row(i)));
    }
    push_verify_fields(&mut doc, &rep, built.code.field());

    let report_text = doc.render(format);
    Ok(match (format, &args.out) {
        (OutputFormat::Text, None) => format!("{code_text}\n{report_text}"),
        _ => report_text,
    })
}

fn run_verify(args: &VerifyArgs, format: OutputFormat) -> Result<String> {
    let code = load_code(&args.code)?;
    let caps = EnumerationCaps::default();
    let r = match args.r {
        Some(r) => r,
        None => {
            let profile = code
                .locality_profile(&caps)
                .map_err(|e| anyhow!("locality scan failed: {e}"))?;
            profile.all_symbol()
        }
    };
    let rep = verify(&code, r, &caps).map_err(|e| anyhow!("verification failed: {e}"))?;
    let mut doc = prologue("verify");
    doc.push("param.code", args.code.display());
    doc.push("param.r", r);
    push_verify_fields(&mut doc, &rep, code.field());
    Ok(doc.render(format))
}

fn run_bounds(args: &BoundsArgs, format: OutputFormat) -> Result<String> {
    let (n, k, r, q) = (args.n, args.k, args.r, args.q);
    let mode = args.estimator.mode();
    let singleton =
        bounds::singleton_like(n, k, r).map_err(|e| anyhow!("bad parameters: {e}"))?;
    let general = if k > r {
        Some(bounds::general_bound(n, k, r, q, mode).map_err(|e| anyhow!("general bound: {e}"))?)
    } else {
        None
    };
    let d_used = args.d.or(general.map(|(value, _)| value));
    let dimension = match d_used {
        Some(d) if k > r && d >= 1 => Some((
            bounds::cm_bound_k(n, d, r, q, k, mode)
                .map_err(|e| anyhow!("dimension bound: {e}"))?,
            d,
        )),
        _ => None,
    };
    let availability = match args.s {
        Some(s) => Some(
            bounds::availability_bound(n, k, r, s)
                .map_err(|e| anyhow!("availability bound: {e}"))?,
        ),
        None => None,
    };

    let mut doc = prologue("bounds");
    doc.push("param.n", n);
    doc.push("param.k", k);
    doc.push("param.r", r);
    doc.push("param.q", q);
    doc.push_opt("param.d", args.d);
    doc.push_opt("param.s", args.s);
    doc.push("param.estimator", args.estimator.name());
    doc.push("singleton_like", singleton);
    doc.push_opt("general_bound", general.map(|(value, _)| value));
    doc.push_opt("general_bound_t", general.map(|(_, t)| t));
    doc.push_opt("cm_bound_k", dimension.map(|((value, _), _)| value));
    doc.push_opt("cm_bound_t", dimension.map(|((_, t), _)| t));
    doc.push_opt("cm_bound_d", dimension.map(|(_, d)| d));
    doc.push("rate_ok", bounds::rate_ok(n, k, r));
    doc.push_opt("availability_bound", availability);
    doc.push("estimators", args.estimator.name());
    Ok(doc.render(format))
}

fn run_characterize(args: &CharacterizeArgs, format: OutputFormat) -> Result<String> {
    let code = load_code(&args.code)?;
    let caps = EnumerationCaps::default();
    let profile = code
        .locality_profile(&caps)
        .map_err(|e| anyhow!("locality scan failed: {e}"))?;
    let r = args.r.unwrap_or_else(|| profile.all_symbol());
    let ch: CharacterizedPcm = characterize_with_profile(&code, r, &profile)
        .map_err(|e| anyhow!("characterization failed: {e}"))?;

    let mut doc = prologue("characterize");
    doc.push("param.code", args.code.display());
    doc.push("param.r", r);
    doc.push("n", code.n());
    doc.push("k", code.k());
    doc.push("r", r);
    doc.push("field", textfmt::field_header(code.field()));
    doc.push("l", ch.l());
    doc.push("window_ok", l_window_ok(code.n(), code.k(), r, ch.l()));

    match format {
        OutputFormat::Structured => {
            doc.push("h1.rows", ch.h1.rows());
            for i in 0..ch.h1.rows() {
                doc.push(format!("h1.{i}"), join(ch.h1.row(i)));
            }
            doc.push("h2.rows", ch.h2.rows());
            for i in 0..ch.h2.rows() {
                doc.push(format!("h2.{i}"), join(ch.h2.row(i)));
            }
            for (g, covered) in ch.coverage.iter().enumerate() {
                doc.push(format!("coverage.{g}"), join(covered));
            }
            Ok(doc.render_structured())
        }
        OutputFormat::Text => {
            let mut out = doc.render_text();
            out.push('\n');
            out.push_str("H1\n");
            out.push_str(&textfmt::render_matrix(&ch.h1));
            out.push_str("H2\n");
            out.push_str(&textfmt::render_matrix(&ch.h2));
            for (g, covered) in ch.coverage.iter().enumerate() {
                out.push_str(&format!("coverage {g}: {}\n", join(covered)));
            }
            Ok(out)
        }
    }
}

fn run_simulate(args: &SimulateArgs, format: OutputFormat) -> Result<String> {
    let code = load_code(&args.code)?;
    let caps = EnumerationCaps::default();
    let profile = code
        .locality_profile(&caps)
        .map_err(|e| anyhow!("locality scan failed: {e}"))?;
    let metrics = simulate(&code, &profile, args.trials, args.seed)
        .map_err(|e| anyhow!("simulation failed: {e}"))?;

    let mut doc = prologue("simulate");
    doc.push("param.code", args.code.display());
    doc.push("param.trials", args.trials);
    doc.push("param.seed", args.seed);
    doc.push("n", code.n());
    doc.push("k", code.k());
    doc.push("q", code.field().size());
    if metrics.trials == 0 {
        doc.push("success_rate", "none");
        doc.push("mean_reads", "none");
    } else {
        doc.push_f64("success_rate", metrics.success_rate());
        doc.push_f64("mean_reads", metrics.mean_reads());
    }
    doc.push("baseline_reads", metrics.baseline_reads);
    doc.push("successes", metrics.successes);
    doc.push("total_reads", metrics.total_reads);
    doc.push("trials", metrics.trials);
    doc.push("seed", metrics.seed);
    Ok(doc.render(format))
}

fn run_search(args: &SearchArgs, format: OutputFormat) -> Result<String> {
    let spec = SearchSpec {
        q: args.q,
        n: args.n,
        r: args.r,
        extra_rows: args.extra_rows,
        target_d: args.target_d,
        seed: args.seed,
        budget: SearchBudget::default(),
    };
    let outcome = search_alphas(&spec).map_err(|e| anyhow!("search failed: {e}"))?;

    let mut doc = prologue("search");
    doc.push("param.q", args.q);
    doc.push("param.n", args.n);
    doc.push("param.r", args.r);
    doc.push("param.extra_rows", args.extra_rows);
    doc.push("param.target_d", args.target_d);
    doc.push("param.seed", args.seed);
    doc.push("param.out", opt_path(&args.out));
    match outcome {
        SearchOutcome::Found(hit) => {
            doc.push("outcome", "found");
            doc.push("distance", hit.distance);
            doc.push("nodes", hit.nodes);
            doc.push("candidates", hit.candidates);
            for (i, row) in hit.alphas.iter().enumerate() {
                doc.push(format!("alpha.{i}"), join(row));
            }
            if let Some(out) = &args.out {
                let field =
                    Field::of_order(args.q).map_err(|e| anyhow!("bad field order: {e}"))?;
                fs::write(out, textfmt::render_alphas(&field, &hit.alphas))
                    .with_context(|| format!("cannot write {}", out.display()))?;
            }
        }
        SearchOutcome::NotFound(miss) => {
            doc.push("outcome", "not_found");
            doc.push("reason", miss.reason);
            doc.push("nodes", miss.nodes);
            doc.push("candidates", miss.candidates);
        }
    }
    Ok(doc.render(format))
}
