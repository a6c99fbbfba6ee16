//! `wiener`: build trees with a prescribed Wiener index and inspect the
//! caterpillar families behind the construction.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use wiener_core::audit::{audit_family, AuditGrid};
use wiener_core::fit::{default_fit_grid, default_holdout_grid, fit_with, DegreeCaps, FitTarget};
use wiener_core::oracle;
use wiener_core::spectrum::{self, Witness};
use wiener_core::transform::schedule;
use wiener_core::{
    construct, parse_edge_list, to_edge_list, wiener, wiener_reference, CaterpillarSpec, Error,
    Family, Tree,
};

mod exit;

use exit::Failure;

/// Default and hard limits on `n` for the index-backed commands.
const INDEX_SOFT_MAX_N: usize = 200;
const INDEX_HARD_MAX_N: usize = 400;
/// Default limit for exhaustive enumeration; the hard limit is the oracle's.
const ORACLE_SOFT_MAX_N: usize = 18;
/// Default and hard limits for `construct --random`.
const RANDOM_SOFT_MAX_N: usize = 100_000;
const RANDOM_HARD_MAX_N: usize = 10_000_000;
/// Emitted trees up to this size are also checked with the all-pairs algorithm.
const REFERENCE_CHECK_MAX_N: usize = 2000;

#[derive(Parser)]
#[command(
    name = "wiener",
    version,
    about = "Trees with a prescribed Wiener index"
)]
struct Cli {
    /// Structured JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Raise the default size guard (refused above the hard cap).
    #[arg(long, global = true, value_name = "N")]
    max_n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family caterpillar (optionally after `t` leaf moves) or a random tree.
    Construct(ConstructArgs),
    /// Wiener index of an edge list read from a file or stdin.
    Wiener(WienerArgs),
    /// Find a tree on `n` vertices with Wiener index `w`.
    Solve(SolveArgs),
    /// Longest contiguous run of constructible values for `n`.
    Interval(IntervalArgs),
    /// Every value reached by the constructive index for `n`.
    Spectrum(SpectrumArgs),
    /// Exact Wiener spectrum of all trees on `n` vertices.
    Oracle(OracleArgs),
    /// Compare the printed closed forms with constructed trees.
    Audit(AuditArgs),
    /// Fit an exact polynomial to a family's Wiener index.
    Fit(FitArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, required_unless_present = "random")]
    family: Option<Family>,
    #[arg(long, required_unless_present = "random")]
    n: Option<usize>,
    #[arg(long, required_unless_present = "random")]
    d: Option<usize>,
    #[arg(long, required_unless_present = "random")]
    x: Option<usize>,
    /// Seed position (G families).
    #[arg(long, allow_negative_numbers = true)]
    s: Option<i64>,
    /// Number of canonical leaf moves to apply.
    #[arg(long, default_value_t = 0)]
    t: u64,
    /// Emit a uniformly random labeled tree on this many vertices instead.
    #[arg(long, value_name = "N", conflicts_with_all = ["family", "n", "d", "x", "s"])]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Graphviz output instead of an edge list.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct WienerArgs {
    /// Edge-list file; stdin when omitted.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Use the all-pairs BFS algorithm.
    #[arg(long)]
    reference: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    w: u64,
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct IntervalArgs {
    #[arg(long)]
    n: usize,
    /// Exact interval from exhaustive enumeration.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    n: usize,
    /// List the progressions instead of the values.
    #[arg(long)]
    progressions: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    family: Family,
    /// Smallest `n` of the grid (default: family minimum).
    #[arg(long)]
    n_min: Option<usize>,
    /// Largest `n` of the grid (default: minimum + 22).
    #[arg(long)]
    n_max: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Direct,
    Increment,
    Printed,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, value_enum, default_value = "direct")]
    target: TargetArg,
    /// Per-variable maximum powers `n,d,x,s` (default: 3,3,2 plus s for G).
    #[arg(long, value_name = "N,D,X,S")]
    caps: Option<String>,
    /// Total-degree cap (default 3; 0 disables it).
    #[arg(long)]
    total: Option<u32>,
    /// Also fit the printed closed form and list differing coefficients.
    #[arg(long)]
    compare: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(failure) => failure.report(cli.json),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Construct(a) => cmd_construct(cli, a),
        Command::Wiener(a) => cmd_wiener(cli, a),
        Command::Solve(a) => cmd_solve(cli, a),
        Command::Interval(a) => cmd_interval(cli, a),
        Command::Spectrum(a) => cmd_spectrum(cli, a),
        Command::Oracle(a) => cmd_oracle(cli, a),
        Command::Audit(a) => cmd_audit(cli, a),
        Command::Fit(a) => cmd_fit(cli, a),
    }
}

/// Applies `--max-n` to a soft/hard cap pair.
fn guard(cli: &Cli, n: usize, soft: usize, hard: usize) -> Result<(), Failure> {
    let limit = match cli.max_n {
        Some(m) if m > hard => {
            return Err(Failure::usage(format!(
                "--max-n {m} is above the hard cap {hard}"
            )))
        }
        Some(m) => m,
        None => soft,
    };
    if n > limit {
        return Err(Failure::usage(format!(
            "n = {n} is above the limit {limit} (raise with --max-n, up to {hard})"
        )));
    }
    Ok(())
}

/// Round-trips `tree` through the edge-list format and recomputes its Wiener
/// index with both algorithms before anything is printed.
fn reverify(tree: &Tree, expected: Option<u64>) -> Result<u64, Failure> {
    let text = to_edge_list(tree);
    let parsed = parse_edge_list(&text).map_err(Failure::internal)?;
    if &parsed != tree {
        return Err(Failure::internal("edge list did not round-trip"));
    }
    let w = wiener(&parsed)?;
    if tree.n() <= REFERENCE_CHECK_MAX_N {
        let r = wiener_reference(&parsed)?;
        if r != w {
            return Err(Failure::internal(format!(
                "algorithms disagree: {w} vs {r}"
            )));
        }
    }
    match expected {
        Some(e) if e != w => Err(Error::WitnessMismatch {
            expected: e,
            got: w,
        }
        .into()),
        _ => Ok(w),
    }
}

fn edges_json(tree: &Tree) -> serde_json::Value {
    json!(tree
        .edges()
        .iter()
        .map(|&(u, v)| [u, v])
        .collect::<Vec<_>>())
}

fn dot(tree: &Tree, title: &str) -> String {
    let mut out = format!("graph \"{title}\" {{\n");
    for v in 0..tree.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for &(u, v) in tree.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

fn to_json(value: &impl serde::Serialize) -> String {
    serde_json::to_string(value).expect("serializable") + "\n"
}

fn cmd_construct(cli: &Cli, a: &ConstructArgs) -> Result<String, Failure> {
    let (tree, label, spec) = if let Some(n) = a.random {
        guard(cli, n, RANDOM_SOFT_MAX_N, RANDOM_HARD_MAX_N)?;
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let tree = Tree::random(n, &mut rng)?;
        (tree, format!("random n={n} seed={}", a.seed), None)
    } else {
        let family = a.family.expect("required by clap");
        let spec = CaterpillarSpec {
            family,
            n: a.n.expect("required by clap"),
            d: a.d.expect("required by clap"),
            x: a.x.expect("required by clap"),
            s: a.s,
        };
        guard(cli, spec.n, INDEX_SOFT_MAX_N, INDEX_HARD_MAX_N)?;
        let tree = if a.t == 0 {
            construct(&spec)?
        } else {
            schedule(&spec, a.t)?
        };
        (tree, format!("{spec} t={}", a.t), Some(spec))
    };
    let w = reverify(&tree, None)?;
    if cli.json {
        return Ok(to_json(&json!({
            "spec": spec,
            "t": a.t,
            "n": tree.n(),
            "wiener": w,
            "edges": edges_json(&tree),
        })));
    }
    if a.dot {
        return Ok(dot(&tree, &label));
    }
    Ok(format!("# {label} wiener={w}\n{}", to_edge_list(&tree)))
}

fn cmd_wiener(cli: &Cli, a: &WienerArgs) -> Result<String, Failure> {
    let text = match &a.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::usage(format!("stdin: {e}")))?;
            buf
        }
    };
    let tree = parse_edge_list(&text)?;
    let w = if a.reference {
        wiener_reference(&tree)?
    } else {
        wiener(&tree)?
    };
    if cli.json {
        Ok(to_json(&json!({ "n": tree.n(), "wiener": w })))
    } else {
        Ok(format!("{w}\n"))
    }
}

fn witness_json(witness: &Witness, n: usize, w: u64) -> serde_json::Value {
    match witness {
        Witness::Caterpillar { spec, t } => json!({
            "kind": "caterpillar",
            "family": spec.family,
            "n": n,
            "d": spec.d,
            "x": spec.x,
            "s": spec.s,
            "t": t,
            "wiener": w,
        }),
        other => {
            let kind = match other {
                Witness::Path => "path",
                Witness::Star => "star",
                _ => "oracle",
            };
            json!({
                "kind": kind,
                "family": null,
                "n": n,
                "d": null,
                "x": null,
                "s": null,
                "t": null,
                "wiener": w,
            })
        }
    }
}

fn cmd_solve(cli: &Cli, a: &SolveArgs) -> Result<String, Failure> {
    guard(cli, a.n, INDEX_SOFT_MAX_N, INDEX_HARD_MAX_N)?;
    let solution = spectrum::solve(a.n, a.w)?;
    reverify(&solution.tree, Some(a.w))?;
    let witness = witness_json(&solution.witness, a.n, a.w);
    if cli.json {
        return Ok(to_json(&json!({
            "witness": witness,
            "edges": edges_json(&solution.tree),
        })));
    }
    if a.dot {
        return Ok(dot(&solution.tree, &format!("n={} w={}", a.n, a.w)));
    }
    Ok(format!("# {witness}\n{}", to_edge_list(&solution.tree)))
}

fn cmd_interval(cli: &Cli, a: &IntervalArgs) -> Result<String, Failure> {
    let report = if a.exact {
        guard(cli, a.n, ORACLE_SOFT_MAX_N, oracle::MAX_N)?;
        oracle::exact_interval(a.n)?
    } else {
        guard(cli, a.n, INDEX_SOFT_MAX_N, INDEX_HARD_MAX_N)?;
        spectrum::build_index(a.n)?.measured_interval()?
    };
    if cli.json {
        return Ok(to_json(&report));
    }
    let opt = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
    let mut out = String::new();
    out.push_str(&format!("n {}\n", report.n));
    out.push_str(&format!("parity_step {}\n", report.parity_step));
    out.push_str(&format!(
        "measured {} {}\n",
        report.measured_lo, report.measured_hi
    ));
    out.push_str(&format!("run_length {}\n", report.run_length));
    out.push_str(&format!(
        "claimed {} {}\n",
        opt(report.claimed_lo),
        opt(report.claimed_hi)
    ));
    out.push_str(&format!("claimed_length {}\n", opt(report.claimed_length)));
    out.push_str(&format!("gaps {}\n", report.gaps.len()));
    out.push_str(&format!("distinct_values {}\n", report.distinct_values));
    out.push_str(&format!("progression_count {}\n", report.progression_count));
    if let Some(c) = report.asymptotic_claim {
        out.push_str(&format!("asymptotic_claim {c:.1}\n"));
    }
    Ok(out)
}

fn cmd_spectrum(cli: &Cli, a: &SpectrumArgs) -> Result<String, Failure> {
    guard(cli, a.n, INDEX_SOFT_MAX_N, INDEX_HARD_MAX_N)?;
    let index = spectrum::build_index(a.n)?;
    if a.progressions {
        if cli.json {
            return Ok(to_json(&index.progressions));
        }
        let mut out = format!("# n={} progressions={}\n", a.n, index.progressions.len());
        for p in &index.progressions {
            out.push_str(&format!(
                "{} {} {} {}\n",
                p.witness, p.base_w, p.step, p.count
            ));
        }
        return Ok(out);
    }
    let values = index.values();
    if cli.json {
        return Ok(to_json(&json!({
            "n": a.n,
            "count": values.len(),
            "progression_count": index.progressions.len(),
            "values": values,
        })));
    }
    let mut out = format!(
        "# n={} count={} progressions={}\n",
        a.n,
        values.len(),
        index.progressions.len()
    );
    for v in values {
        out.push_str(&format!("{v}\n"));
    }
    Ok(out)
}

fn cmd_oracle(cli: &Cli, a: &OracleArgs) -> Result<String, Failure> {
    guard(cli, a.n, ORACLE_SOFT_MAX_N, oracle::MAX_N)?;
    let spectrum = oracle::exact_spectrum(a.n)?;
    if cli.json {
        Ok(to_json(&spectrum))
    } else {
        Ok(spectrum.dump())
    }
}

fn cmd_audit(cli: &Cli, a: &AuditArgs) -> Result<String, Failure> {
    let lo = a.n_min.unwrap_or(a.family.min_n());
    let hi = a.n_max.unwrap_or(lo + 22);
    guard(cli, hi, INDEX_SOFT_MAX_N, INDEX_HARD_MAX_N)?;
    let grid = AuditGrid::over_n(a.family, lo..=hi)?;
    let report = audit_family(a.family, &grid)?;
    if cli.json {
        Ok(to_json(&report))
    } else {
        Ok(report.to_table())
    }
}

fn parse_caps(text: &str) -> Result<[u32; 4], Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Failure::usage(format!(
            "--caps needs four numbers, got `{text}`"
        )));
    }
    let mut out = [0; 4];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p
            .parse()
            .map_err(|_| Failure::usage(format!("bad degree `{p}` in --caps")))?;
    }
    Ok(out)
}

fn cmd_fit(cli: &Cli, a: &FitArgs) -> Result<String, Failure> {
    let mut caps = DegreeCaps::default_for(a.family);
    if let Some(text) = &a.caps {
        let [n, d, x, s] = parse_caps(text)?;
        caps = DegreeCaps { n, d, x, s, ..caps };
    }
    if let Some(t) = a.total {
        caps.total = (t > 0).then_some(t);
    }
    let target = match a.target {
        TargetArg::Direct => FitTarget::Direct,
        TargetArg::Increment => FitTarget::Increment,
        TargetArg::Printed => FitTarget::Printed,
    };
    let fit_grid = default_fit_grid(a.family)?;
    let holdout = default_holdout_grid(a.family)?;
    let form = fit_with(a.family, target, caps, &fit_grid, &holdout)?;
    let printed = if a.compare {
        Some(fit_with(
            a.family,
            FitTarget::Printed,
            caps,
            &fit_grid,
            &holdout,
        )?)
    } else {
        None
    };
    let diffs = printed.as_ref().map(|p| form.differences(p));
    if cli.json {
        return Ok(to_json(&json!({
            "form": form.to_string(),
            "fit": form,
            "printed": printed.as_ref().map(|p| p.to_string()),
            "differences": diffs.as_ref().map(|d| d
                .iter()
                .map(|(m, a, b)| json!({"monomial": m.to_string(), "fitted": a, "printed": b}))
                .collect::<Vec<_>>()),
        })));
    }
    let mut out = format!(
        "# {} {:?} fit over {} points, verified on {} held-out points\n{form}\n",
        a.family, target, form.fit_points, form.verified_points
    );
    if let (Some(p), Some(diffs)) = (printed, diffs) {
        out.push_str(&format!("# printed\n{p}\n"));
        out.push_str(&format!("# {} coefficients differ\n", diffs.len()));
        for (m, fitted, printed) in diffs {
            out.push_str(&format!("{m}: fitted {fitted}, printed {printed}\n"));
        }
    }
    Ok(out)
}
