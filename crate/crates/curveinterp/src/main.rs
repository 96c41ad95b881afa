//! Command-line surface: feasibility reports, the genus-0 incidence solver,
//! splitting types, single verification rows, and parameter sweeps. JSON
//! output is the source of truth; the text renderings are projections.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use curveinterp::field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
use curveinterp::numerology;
use curveinterp::rational_maps::{
    random_map, solve_through_points, solve_through_points_hyperplane, IncidenceProblem,
    IncidenceSolution, ParamPoint, ProjPoint, RationalMap,
};
use curveinterp::rng::SeededRng;
use curveinterp::verify::{self, CampaignConfig, Mode};
use curveinterp::{euler_model, Error};

#[derive(Parser)]
#[command(name = "curveinterp", version, about = "Exact feasibility, interpolation solving, and desk-scale verification for curves in projective space")]
struct Cli {
    /// Field characteristic: a prime, or 0 for the rationals (solver only).
    /// Defaults to CURVEINTERP_PRIME or 1000003.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Master seed for all randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Divisor samples per distribution in certificate runs.
    #[arg(long, global = true, default_value_t = 5)]
    trials: usize,
    /// Emit JSON instead of the text projection.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form feasibility of an incidence problem.
    Feasibility(FeasibilityArgs),
    /// Solve for a rational curve through prescribed points (JSON in).
    Solve(SolveArgs),
    /// Splitting type of the restricted tangent bundle of a rational curve.
    Splitting(SplittingArgs),
    /// Build one degeneration and run its interpolation certificate.
    Verify(VerifyArgs),
    /// Cross-product campaign over (d, g, r) ranges and modes.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct FeasibilityArgs {
    #[arg(long)]
    d: i64,
    #[arg(long)]
    g: i64,
    #[arg(long)]
    r: i64,
    /// Number of general points to pass through (default 0: pure existence).
    #[arg(long)]
    n: Option<i64>,
    /// Constrain the first d points to a hyperplane.
    #[arg(long)]
    hyperplane: bool,
    /// Also classify the twist -k.
    #[arg(long)]
    k: Option<i64>,
}

#[derive(Args)]
struct SolveArgs {
    /// JSON input file: {r, d, pairs: [{p, q: [...]}], hyperplane_count}.
    /// Reads stdin when absent. "inf" denotes the point at infinity.
    #[arg(long, value_name = "FILE")]
    input: Option<String>,
}

#[derive(Args)]
struct SplittingArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    d: usize,
    /// Explicit coefficient rows as JSON (row-major, (r+1) x (d+1));
    /// a random map from the seed when absent.
    #[arg(long)]
    coeffs: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    d: i64,
    #[arg(long)]
    g: i64,
    #[arg(long)]
    r: i64,
    /// tangent, twisted, or remark.
    #[arg(long)]
    mode: String,
    /// Twist magnitude for remark mode.
    #[arg(long, default_value_t = 2)]
    k: i64,
}

#[derive(Args)]
struct SweepArgs {
    /// Degree range "lo:hi" or single value.
    #[arg(long, default_value = "1:5")]
    d: String,
    /// Genus range.
    #[arg(long, default_value = "0:2")]
    g: String,
    /// Target dimension range.
    #[arg(long, default_value = "2:2")]
    r: String,
    /// Comma-separated modes: tangent,twisted,remark.
    #[arg(long, default_value = "tangent")]
    modes: String,
    #[arg(long, default_value_t = 2)]
    k: i64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::InvalidInput(_) | Error::Field(_) | Error::Infeasible(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn field_spec(cli: &Cli) -> Result<FieldSpec, Error> {
    let characteristic = match cli.prime {
        Some(p) => p,
        None => match std::env::var("CURVEINTERP_PRIME") {
            Ok(s) => s
                .parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("CURVEINTERP_PRIME is not an integer: {s}")))?,
            Err(_) => DEFAULT_PRIME,
        },
    };
    let spec = FieldSpec { characteristic };
    spec.validate()?;
    Ok(spec)
}

fn emit(cli: &Cli, json: serde_json::Value, text: String) -> Result<(), Error> {
    let payload = if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&json).expect("serializable"))
    } else {
        text
    };
    match &cli.out {
        Some(path) => fs::write(path, payload)
            .map_err(|e| Error::InvalidInput(format!("cannot write {path}: {e}"))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Feasibility(args) => run_feasibility(cli, args),
        Command::Solve(args) => run_solve(cli, args),
        Command::Splitting(args) => run_splitting(cli, args),
        Command::Verify(args) => run_verify(cli, args),
        Command::Sweep(args) => run_sweep(cli, args),
    }
}

fn run_feasibility(cli: &Cli, args: &FeasibilityArgs) -> Result<ExitCode, Error> {
    field_spec(cli)?; // arithmetic is field-free, but reject malformed flags
    let prob = numerology::Problem { d: args.d, g: args.g, r: args.r, n: args.n, k: args.k };
    prob.validate().map_err(Error::InvalidInput)?;
    let report = if args.hyperplane {
        numerology::feasibility_hyperplane(args.d, args.g, args.r, args.n.unwrap_or(0))
    } else {
        numerology::feasibility_unconstrained(args.d, args.g, args.r, args.n)
    };
    let twist = args.k.map(|k| numerology::twist_classification(args.d, args.g, args.r, k));
    let mut json = serde_json::to_value(&report).expect("serializable");
    if let Some(t) = twist {
        json["twist_classification"] = serde_json::to_value(t).expect("serializable");
    }
    let mut text = format!(
        "rho = {}, chi(T) = {}, chi(T(-1)) = {}, max_n = {}\nfeasible: {}{}\n",
        report.rho,
        report.chi_tangent,
        report.chi_twisted,
        report.max_n,
        report.feasible,
        report
            .failing_condition
            .map(|c| format!(" (failing: {c:?})"))
            .unwrap_or_default()
    );
    if let Some(t) = twist {
        text.push_str(&format!("twist -{} classification: {:?}\n", args.k.unwrap(), t));
    }
    emit(cli, json, text)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Deserialize)]
struct SolveInput {
    r: usize,
    d: usize,
    pairs: Vec<SolvePair>,
    #[serde(default)]
    hyperplane_count: usize,
}

#[derive(Deserialize)]
struct SolvePair {
    p: serde_json::Value,
    q: Vec<i64>,
}

fn parse_param<F: Field>(field: &F, v: &serde_json::Value) -> Result<ParamPoint<F>, Error> {
    if let Some(n) = v.as_i64() {
        return Ok(ParamPoint::Affine(field.from_i64(n)));
    }
    if v.as_str() == Some("inf") {
        return Ok(ParamPoint::Infinity);
    }
    Err(Error::InvalidInput(format!("parameter point must be an integer or \"inf\", got {v}")))
}

fn run_solve(cli: &Cli, args: &SolveArgs) -> Result<ExitCode, Error> {
    let raw = match &args.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::InvalidInput(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    let input: SolveInput =
        serde_json::from_str(&raw).map_err(|e| Error::InvalidInput(format!("bad solve input: {e}")))?;
    let spec = field_spec(cli)?;
    let mut rng = SeededRng::new(cli.seed);
    let (json, text) = if spec.characteristic == 0 {
        solve_over(&Rationals, &spec, &input, &mut rng)?
    } else {
        solve_over(&spec.prime_field()?, &spec, &input, &mut rng)?
    };
    emit(cli, json, text)?;
    Ok(ExitCode::SUCCESS)
}

fn solve_over<F: Field>(
    field: &F,
    spec: &FieldSpec,
    input: &SolveInput,
    rng: &mut SeededRng,
) -> Result<(serde_json::Value, String), Error> {
    let pairs = input
        .pairs
        .iter()
        .map(|pair| {
            let p = parse_param(field, &pair.p)?;
            let q = ProjPoint::new(field, pair.q.iter().map(|&c| field.from_i64(c)).collect())?;
            Ok((p, q))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let prob = IncidenceProblem { r: input.r, d: input.d, pairs, hyperplane_count: input.hyperplane_count };
    let sol = if input.hyperplane_count == 0 {
        solve_through_points(field, &prob, rng)?
    } else {
        solve_through_points_hyperplane(field, &prob, rng)?
    };
    Ok(render_solution(field, spec, rng.seed(), &sol))
}

fn render_solution<F: Field>(
    field: &F,
    spec: &FieldSpec,
    seed: u64,
    sol: &IncidenceSolution<F>,
) -> (serde_json::Value, String) {
    let basis: Vec<Vec<String>> = sol
        .basis
        .iter()
        .map(|v| v.iter().map(|e| field.format(e)).collect())
        .collect();
    let witness: Option<Vec<Vec<String>>> = sol.witness.as_ref().map(|w| {
        w.coeff_rows().iter().map(|row| row.iter().map(|e| field.format(e)).collect()).collect()
    });
    let json = json!({
        "field": spec,
        "seed": seed,
        "kernel_dim": sol.kernel_dim,
        "basis": basis,
        "witness": witness,
        "witness_valid": sol.witness_valid,
        "defects": sol.defects,
    });
    let mut text = format!("kernel_dim: {}\nwitness_valid: {}\n", sol.kernel_dim, sol.witness_valid);
    if let Some(w) = &witness {
        text.push_str("witness coefficient rows (ascending degree):\n");
        for row in w {
            text.push_str(&format!("  [{}]\n", row.join(", ")));
        }
    } else {
        text.push_str(&format!("defects: {:?}\n", sol.defects));
    }
    (json, text)
}

fn run_splitting(cli: &Cli, args: &SplittingArgs) -> Result<ExitCode, Error> {
    let spec = field_spec(cli)?;
    let field = spec.prime_field()?;
    let mut rng = SeededRng::new(cli.seed);
    let map: RationalMap<PrimeField> = match &args.coeffs {
        Some(raw) => {
            let rows: Vec<Vec<i64>> = serde_json::from_str(raw)
                .map_err(|e| Error::InvalidInput(format!("bad coefficient table: {e}")))?;
            let rows = rows
                .into_iter()
                .map(|row| row.into_iter().map(|c| field.from_i64(c)).collect())
                .collect();
            RationalMap::new(field, args.r, args.d, rows)?
        }
        None => random_map(&field, args.r, args.d, &mut rng)?,
    };
    let st = euler_model::splitting_type(&map)?;
    let scan_max = (args.r + 1) * args.d + 1;
    let h0_table: Vec<(usize, usize)> =
        (0..=scan_max).map(|m| (m, euler_model::omega_h0(&map, m))).collect();
    let coeffs: Vec<Vec<String>> = map
        .coeff_rows()
        .iter()
        .map(|row| row.iter().map(|e| field.format(e)).collect())
        .collect();
    let json = json!({
        "field": spec,
        "seed": cli.seed,
        "r": args.r,
        "d": args.d,
        "coeffs": coeffs,
        "degrees": st.degrees,
        "balanced": st.is_balanced(),
        "h0_table": h0_table,
    });
    let text = format!(
        "splitting type: [{}]\nbalanced: {}\n",
        st.degrees.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "),
        st.is_balanced()
    );
    emit(cli, json, text)?;
    Ok(ExitCode::SUCCESS)
}

fn campaign_config(cli: &Cli, modes: Vec<Mode>, remark_k: i64) -> Result<CampaignConfig, Error> {
    let spec = field_spec(cli)?;
    spec.prime_field()?; // verification campaigns run over a prime field
    Ok(CampaignConfig {
        field: spec,
        seed: cli.seed,
        trials: cli.trials,
        distribution_cap: 8,
        modes,
        remark_k,
        ..CampaignConfig::default()
    })
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> Result<ExitCode, Error> {
    let mode = parse_mode(&args.mode)?;
    let cfg = campaign_config(cli, vec![mode], args.k)?;
    let mut rng = SeededRng::new(cli.seed);
    let row = match mode {
        Mode::Tangent => verify::verify_main(args.d, args.g, args.r, &cfg, &mut rng)?,
        Mode::Twisted => verify::verify_twisted(args.d, args.g, args.r, &cfg, &mut rng)?,
        Mode::Remark => verify::verify_remark(args.d, args.g, args.r, args.k, &cfg, &mut rng)?,
    };
    let json = serde_json::to_value(&row).expect("serializable");
    let mut text = format!(
        "(d, g, r) = ({}, {}, {}), mode {:?}: {:?}\n{}\n",
        row.d, row.g, row.r, row.mode, row.status, row.note
    );
    if let Some(cert) = &row.certificate {
        text.push_str(&format!(
            "chi = {}, h0 = {}, h1 = {}, verdict: {:?}\n",
            cert.chi, cert.h0, cert.h1, cert.verdict
        ));
        for rec in &cert.records {
            text.push_str(&format!(
                "  e = {:<3} expected {:<4} achieved {:?} {}\n",
                rec.e,
                rec.expected,
                rec.achieved,
                if rec.pass { "ok" } else { "MISS" }
            ));
        }
    }
    emit(cli, json, text)?;
    Ok(if row.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_sweep(cli: &Cli, args: &SweepArgs) -> Result<ExitCode, Error> {
    let modes = args
        .modes
        .split(',')
        .map(|m| parse_mode(m.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut cfg = campaign_config(cli, modes, args.k)?;
    cfg.d_range = parse_range(&args.d)?;
    cfg.g_range = parse_range(&args.g)?;
    cfg.r_range = parse_range(&args.r)?;
    let report = verify::sweep(&cfg)?;
    let json = serde_json::to_value(&report).expect("serializable");
    let text = verify::render_table(&report);
    emit(cli, json, text)?;
    Ok(if report.all_expected { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn parse_mode(s: &str) -> Result<Mode, Error> {
    match s {
        "tangent" => Ok(Mode::Tangent),
        "twisted" => Ok(Mode::Twisted),
        "remark" => Ok(Mode::Remark),
        other => Err(Error::InvalidInput(format!("unknown mode {other:?}"))),
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), Error> {
    let parse = |t: &str| {
        t.parse::<i64>()
            .map_err(|_| Error::InvalidInput(format!("bad range component {t:?}")))
    };
    match s.split_once(':') {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => {
            let v = parse(s)?;
            Ok((v, v))
        }
    }
}
