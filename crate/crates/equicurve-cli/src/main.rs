//! Command-line interface: dimensions, faithfulness verdicts, bases,
//! Riemann-Roch spaces, Goppa codes, deformation dimensions, and the full
//! cross-validation pipeline.
//!
//! Exit codes: 0 success, 2 formula/oracle mismatch, 64 usage or parse error,
//! 65 hypothesis violation.

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use equicurve::check::{check_curve, RunConfig};
use equicurve::criteria::{
    divisor_verdict, faithful_polydiff, faithful_polydiff_concrete, VerdictKind,
};
use equicurve::curve::{CurveAutomorphism, Divisor, HyperellipticModel};
use equicurve::deformation::{
    check_groups_hypothesis, deformation_dim, GroupRepresentation, GroupShape,
};
use equicurve::differentials::{action_on_polydiff, basis_polydiff, crosscheck_mkx, verify_holomorphic};
use equicurve::goppa::{auto_evaluation_set, code_action, export_alist, min_distance_bruteforce};
use equicurve::ramification::{profile_from_curve, ProfileJson};
use equicurve::rrspace::{
    action_on_rr, invariant_dim_concrete, invariant_dim_formula,
    invariant_dim_formula_unchecked, invariant_dim_polydiff, rr_basis,
};
use equicurve::Error;

const EXIT_MISMATCH: i32 = 2;
const EXIT_USAGE: i32 = 64;
const EXIT_HYPOTHESIS: i32 = 65;

#[derive(Parser)]
#[command(name = "equicurve", version, about = "Equivariant Riemann-Roch data for hyperelliptic curves over finite fields")]
struct Cli {
    /// Output format: json or table.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Seed for randomized sweeps (EQUICURVE_SEED overrides the default).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Total and invariant dimensions for a divisor or a polydifferential order.
    Dims(DimsArgs),
    /// Faithfulness/triviality verdict for a group action.
    Faithful(FaithfulArgs),
    /// Explicit polydifferential basis and the involution action on it.
    Basis(BasisArgs),
    /// Riemann-Roch basis for a divisor.
    Rr(RrArgs),
    /// Geometric Goppa code, permutation action, and injectivity certificate.
    Goppa(GoppaArgs),
    /// Equivariant deformation dimension.
    Deform(DeformArgs),
    /// Full cross-validation of every formula against the oracles.
    Check(CheckArgs),
}

#[derive(Args)]
struct DimsArgs {
    #[arg(long)]
    curve: Option<String>,
    #[arg(long)]
    profile: Option<String>,
    /// Polydifferential order m.
    #[arg(long)]
    m: Option<u64>,
    /// Divisor JSON path (concrete mode).
    #[arg(long)]
    divisor: Option<String>,
    /// Evaluate the formula even when the degree hypothesis fails.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct FaithfulArgs {
    #[arg(long)]
    curve: Option<String>,
    #[arg(long)]
    profile: Option<String>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    divisor: Option<String>,
    /// Characteristic (profile mode with --m only).
    #[arg(long)]
    p: Option<u64>,
    /// Whether the group contains a hyperelliptic involution (profile mode).
    #[arg(long)]
    hyperelliptic: Option<bool>,
}

#[derive(Args)]
struct BasisArgs {
    #[arg(long)]
    curve: String,
    #[arg(long)]
    m: u64,
}

#[derive(Args)]
struct RrArgs {
    #[arg(long)]
    curve: String,
    #[arg(long)]
    divisor: String,
}

#[derive(Args)]
struct GoppaArgs {
    #[arg(long)]
    curve: String,
    #[arg(long)]
    divisor: String,
    /// Point selection: only "auto" is supported.
    #[arg(long, default_value = "auto")]
    points: String,
    /// Minimal extension degree for the evaluation set.
    #[arg(long, default_value_t = 1)]
    ext: u32,
    /// Skip the brute-force minimum distance.
    #[arg(long)]
    no_distance: bool,
    /// Also print the generator in the alist-style text format.
    #[arg(long)]
    alist: bool,
}

#[derive(Args)]
struct DeformArgs {
    #[arg(long)]
    curve: Option<String>,
    #[arg(long)]
    profile: Option<String>,
    /// Group-shape metadata, e.g. '{"N":1,"cyclicQuotient":2}'.
    #[arg(long)]
    group_shape: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    curve: String,
    /// Number of sweep divisors.
    #[arg(long, default_value_t = 25)]
    sweep: usize,
    /// Extra diagonal generator "alpha,beta,lambda" (odd characteristic);
    /// the group is the closure of it with the hyperelliptic involution.
    #[arg(long)]
    diagonal: Option<String>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Let clap print its message, but keep the documented usage code.
            let _ = e.print();
            std::process::exit(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let code = run(cli);
    std::process::exit(code);
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::NotPrime(_) => EXIT_USAGE,
        _ => EXIT_HYPOTHESIS,
    }
}

fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Dims(a) => cmd_dims(&cli, a),
        Command::Faithful(a) => cmd_faithful(&cli, a),
        Command::Basis(a) => cmd_basis(&cli, a),
        Command::Rr(a) => cmd_rr(&cli, a),
        Command::Goppa(a) => cmd_goppa(&cli, a),
        Command::Deform(a) => cmd_deform(&cli, a),
        Command::Check(a) => cmd_check(&cli, a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            exit_code_for(&e)
        }
    }
}

fn read_file(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {}", path, e)))
}

fn load_curve(path: &str) -> Result<HyperellipticModel, Error> {
    HyperellipticModel::from_json(&read_file(path)?)
}

fn sigma_group(model: &HyperellipticModel) -> Vec<CurveAutomorphism> {
    vec![
        CurveAutomorphism::identity(model),
        CurveAutomorphism::hyperelliptic_involution(model),
    ]
}

fn emit(cli: &Cli, value: &serde_json::Value) {
    if cli.format == "table" {
        print_table(value, 0);
    } else {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    }
}

fn print_table(value: &serde_json::Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                match v {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        println!("{}{}:", pad, k);
                        print_table(v, indent + 1);
                    }
                    _ => println!("{}{}: {}", pad, k, v),
                }
            }
        }
        serde_json::Value::Array(items) => {
            for v in items {
                print_table(v, indent);
            }
        }
        other => println!("{}{}", pad, other),
    }
}

fn cmd_dims(cli: &Cli, a: &DimsArgs) -> Result<i32, Error> {
    match (&a.curve, &a.profile) {
        (Some(curve_path), None) => {
            let model = load_curve(curve_path)?;
            let group = sigma_group(&model);
            if let Some(m) = a.m {
                let report = crosscheck_mkx(&model, &group, m)?;
                let out = json!({
                    "schema": 1,
                    "mode": "curve",
                    "m": m,
                    "total_dim": report.rr_dim,
                    "basis_size": report.basis_size,
                    "invariant_formula": report.invariant_formula,
                    "invariant_oracle_rr": report.invariant_rr,
                    "invariant_oracle_polydiff": report.invariant_polydiff,
                    "consistent": report.consistent,
                });
                emit(cli, &out);
                return Ok(if report.consistent { 0 } else { EXIT_MISMATCH });
            }
            let divisor_path = a.divisor.as_ref().ok_or_else(|| {
                Error::Parse("dims needs --m or --divisor".into())
            })?;
            let conc = profile_from_curve(&model, &group)?;
            let d = Divisor::from_json(&conc.model, &read_file(divisor_path)?)?;
            let rr = rr_basis(&conc.model, &d)?;
            let action = action_on_rr(&conc.model, &conc.group, &rr)?;
            let oracle = invariant_dim_concrete(&action) as i64;
            let spec = conc.divisor_spec(&d)?;
            let (formula, outside) = match invariant_dim_formula(&conc.profile, &spec) {
                Ok(v) => (Some(v), false),
                Err(Error::DegreeTooSmall { .. }) if a.force => (
                    Some(invariant_dim_formula_unchecked(&conc.profile, &spec)),
                    true,
                ),
                Err(Error::DegreeTooSmall { deg, bound }) => {
                    return Err(Error::DegreeTooSmall { deg, bound })
                }
                Err(e) => return Err(e),
            };
            let consistent = outside || formula == Some(oracle);
            let out = json!({
                "schema": 1,
                "mode": "curve",
                "deg": d.degree(),
                "total_dim": rr.dim,
                "invariant_oracle": oracle,
                "invariant_formula": formula,
                "outside_hypothesis": outside,
                "consistent": consistent,
            });
            emit(cli, &out);
            Ok(if consistent { 0 } else { EXIT_MISMATCH })
        }
        (None, Some(profile_path)) => {
            let text = read_file(profile_path)?;
            let dto: ProfileJson =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let profile = dto.profile()?;
            if let Some(m) = a.m {
                let value = invariant_dim_polydiff(&profile, m)?;
                let out = json!({
                    "schema": 1,
                    "mode": "profile",
                    "m": m,
                    "invariant_formula": value,
                    "gY": profile.g_y,
                    "gX": profile.validate()?,
                });
                emit(cli, &out);
                return Ok(0);
            }
            let spec = dto.divisor_spec()?;
            let (formula, outside) = match invariant_dim_formula(&profile, &spec) {
                Ok(v) => (v, false),
                Err(Error::DegreeTooSmall { .. }) if a.force => {
                    (invariant_dim_formula_unchecked(&profile, &spec), true)
                }
                Err(e) => return Err(e),
            };
            let out = json!({
                "schema": 1,
                "mode": "profile",
                "deg": spec.degree(&profile),
                "invariant_formula": formula,
                "outside_hypothesis": outside,
            });
            emit(cli, &out);
            Ok(0)
        }
        _ => Err(Error::Parse("dims needs exactly one of --curve, --profile".into())),
    }
}

fn verdict_json(v: &equicurve::criteria::Verdict) -> serde_json::Value {
    let result = match v.result {
        VerdictKind::Trivial => "trivial",
        VerdictKind::Faithful => "faithful",
        VerdictKind::NonFaithfulNonTrivial => "non_faithful_non_trivial",
        VerdictKind::OutsideHypotheses => "outside_hypotheses",
    };
    json!({
        "schema": 1,
        "result": result,
        "clause": v.clause,
        "detail": { "note": v.detail },
    })
}

fn cmd_faithful(cli: &Cli, a: &FaithfulArgs) -> Result<i32, Error> {
    let verdict = match (&a.curve, &a.profile) {
        (Some(curve_path), None) => {
            let model = load_curve(curve_path)?;
            let group = sigma_group(&model);
            if let Some(m) = a.m {
                faithful_polydiff_concrete(&model, &group, m)?
            } else {
                let divisor_path = a.divisor.as_ref().ok_or_else(|| {
                    Error::Parse("faithful needs --m or --divisor".into())
                })?;
                let conc = profile_from_curve(&model, &group)?;
                let d = Divisor::from_json(&conc.model, &read_file(divisor_path)?)?;
                let spec = conc.divisor_spec(&d)?;
                divisor_verdict(&conc.profile, &spec)?
            }
        }
        (None, Some(profile_path)) => {
            let text = read_file(profile_path)?;
            let dto: ProfileJson =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let profile = dto.profile()?;
            if let Some(m) = a.m {
                let p = a.p.ok_or_else(|| {
                    Error::Parse("profile mode with --m needs --p".into())
                })?;
                let invol = a.hyperelliptic.unwrap_or(false);
                faithful_polydiff(&profile, m, invol, p)?
            } else {
                let spec = dto.divisor_spec()?;
                divisor_verdict(&profile, &spec)?
            }
        }
        _ => {
            return Err(Error::Parse(
                "faithful needs exactly one of --curve, --profile".into(),
            ))
        }
    };
    emit(cli, &verdict_json(&verdict));
    Ok(0)
}

fn cmd_basis(cli: &Cli, a: &BasisArgs) -> Result<i32, Error> {
    let model = load_curve(&a.curve)?;
    let basis = basis_polydiff(&model, a.m)?;
    verify_holomorphic(&model, a.m)?;
    let group = sigma_group(&model);
    let action = action_on_polydiff(&model, &group, a.m)?;
    let elements: Vec<serde_json::Value> = basis
        .iter()
        .map(|b| json!({ "i": b.x_power, "with_y": b.with_y, "m": b.m }))
        .collect();
    let matrices: Vec<Vec<Vec<u64>>> = action
        .matrices
        .iter()
        .map(|(_, m)| {
            (0..m.rows())
                .map(|r| m.row(r).iter().map(|c| c.enc()).collect())
                .collect()
        })
        .collect();
    let out = json!({
        "schema": 1,
        "m": a.m,
        "size": basis.len(),
        "holomorphic": true,
        "basis": elements,
        "action": matrices,
        "invariant_dim": action.invariant_dim(),
    });
    emit(cli, &out);
    Ok(0)
}

fn cmd_rr(cli: &Cli, a: &RrArgs) -> Result<i32, Error> {
    let model = load_curve(&a.curve)?;
    let d = Divisor::from_json(&model, &read_file(&a.divisor)?)?;
    let rr = rr_basis(&model, &d)?;
    let encode_poly = |p: &equicurve::algebra::Polynomial| -> Vec<u64> {
        p.coeffs().iter().map(|c| c.enc()).collect()
    };
    let basis: Vec<serde_json::Value> = rr
        .basis
        .iter()
        .map(|u| {
            json!({
                "a_num": encode_poly(u.a_part().num()),
                "a_den": encode_poly(u.a_part().den()),
                "b_num": encode_poly(u.b_part().num()),
                "b_den": encode_poly(u.b_part().den()),
            })
        })
        .collect();
    let out = json!({
        "schema": 1,
        "deg": d.degree(),
        "dim": rr.dim,
        "basis": basis,
    });
    emit(cli, &out);
    Ok(0)
}

fn cmd_goppa(cli: &Cli, a: &GoppaArgs) -> Result<i32, Error> {
    if a.points != "auto" {
        return Err(Error::Parse(format!(
            "unsupported point selection {:?} (only \"auto\")",
            a.points
        )));
    }
    let model = load_curve(&a.curve)?;
    let d = Divisor::from_json(&model, &read_file(&a.divisor)?)?;
    let (mx, dx, e, ext) = auto_evaluation_set(&model, &d, a.ext)?;
    let group = sigma_group(&mx);
    let (pa, mut code, _) = code_action(&mx, &group, &dx, &e)?;
    if !a.no_distance {
        match min_distance_bruteforce(&code) {
            Ok(dd) => code.min_distance = Some(dd),
            Err(Error::BoundExceeded(_)) | Err(Error::NoCodewords) => {}
            Err(e) => return Err(e),
        }
    }
    let perms: Vec<Vec<usize>> = pa.permutations.iter().map(|(_, p)| p.clone()).collect();
    let mut out = serde_json::to_value(equicurve::goppa::CodeJson {
        schema: 1,
        n: code.length,
        k: code.k,
        q: code.field.q(),
        deg_d: code.deg_d,
        generator: (0..code.generator.rows())
            .map(|r| code.generator.row(r).iter().map(|c| c.enc()).collect())
            .collect(),
        min_distance: code.min_distance,
    })
    .expect("serializable");
    out["ext"] = json!(ext);
    out["code_stable"] = json!(pa.code_stable);
    out["permutations"] = json!(perms);
    out["certificate"] =
        serde_json::to_value(&pa.certificate).map_err(|e| Error::Parse(e.to_string()))?;
    emit(cli, &out);
    if a.alist {
        print!("{}", export_alist(&code));
    }
    Ok(0)
}

fn cmd_deform(cli: &Cli, a: &DeformArgs) -> Result<i32, Error> {
    let shape: Option<GroupShape> = match &a.group_shape {
        Some(text) => {
            Some(serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?)
        }
        None => None,
    };
    let (profile, samples) = match (&a.curve, &a.profile) {
        (Some(curve_path), None) => {
            let model = load_curve(curve_path)?;
            let group = sigma_group(&model);
            let conc = profile_from_curve(&model, &group)?;
            // Sample modules: the actions on L(K), L(2K) and the
            // order-2 polydifferentials.
            let mut reps = vec![];
            let field = conc.model.field().clone();
            for mult in [1i64, 2] {
                let k = conc.canonical_divisor()?;
                let rr = rr_basis(&conc.model, &k.scale(mult))?;
                let action = action_on_rr(&conc.model, &conc.group, &rr)?;
                let gens: Vec<_> = action.matrices.iter().map(|(_, m)| m.clone()).collect();
                if !gens.is_empty() {
                    reps.push(GroupRepresentation::new(&field, action.dim, gens)?);
                }
            }
            (conc.profile.clone(), reps)
        }
        (None, Some(profile_path)) => {
            let text = read_file(profile_path)?;
            let dto: ProfileJson =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            (dto.profile()?, vec![])
        }
        _ => {
            return Err(Error::Parse(
                "deform needs exactly one of --curve, --profile".into(),
            ))
        }
    };
    let report = deformation_dim(&profile)?;
    let hyp = check_groups_hypothesis(&samples, shape.as_ref());
    let out = json!({
        "schema": 1,
        "dim": report.dim,
        "crosscheck": report.crosscheck,
        "consistent": report.consistent,
        "hypothesis": hyp.status,
        "samples": hyp.samples,
        "samples_equal": hyp.all_equal,
    });
    emit(cli, &out);
    Ok(if report.consistent { 0 } else { EXIT_MISMATCH })
}

fn cmd_check(cli: &Cli, a: &CheckArgs) -> Result<i32, Error> {
    let model = load_curve(&a.curve)?;
    let mut config = RunConfig::default();
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    config.sweep_divisors = a.sweep;
    let report = match &a.diagonal {
        None => check_curve(&model, &config)?,
        Some(spec) => {
            let parts: Vec<i64> = spec
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| {
                    Error::Parse(format!("bad diagonal spec {:?}", spec))
                }))
                .collect::<Result<_, _>>()?;
            if parts.len() != 3 {
                return Err(Error::Parse("diagonal needs alpha,beta,lambda".into()));
            }
            let f = model.field().clone();
            let diag = CurveAutomorphism::diagonal(
                &model,
                f.from_int(parts[0]),
                f.from_int(parts[1]),
                f.from_int(parts[2]),
            )?;
            let group = equicurve::curve::generate_group(&[
                diag,
                CurveAutomorphism::hyperelliptic_involution(&model),
            ])?;
            equicurve::check::check_curve_with_group(&model, &group, &config)?
        }
    };
    let value = serde_json::to_value(&report).map_err(|e| Error::Parse(e.to_string()))?;
    emit(cli, &value);
    Ok(if report.pass { 0 } else { EXIT_MISMATCH })
}
