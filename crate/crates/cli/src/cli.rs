//! The command-line surface. Exit codes: 0 success, 1 empty result (the
//! requested space has no distinct-point decomposition), 2 invalid input,
//! 3 numeric failure.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use apolar_core::apolarity::{compute_kmin, kmin_formula, vsps};
use apolar_core::curves::{genericity_probe, generic_secant_table, make_curve};
use apolar_core::decompose::{decompose, DecomposeOutcome, RECONSTRUCTION_TOL, ROOT_TOL};
use apolar_core::error::Error;

use crate::input::parse_form_system;
use crate::report::{
    curve_json, decompose_json, predict_rows_json, prediction_str, vsps_json, witness_status_str,
    DualFormJson, KminJson, PredictJson,
};
use crate::validate::{validate_grassmann_bound, validate_kmin_theorem, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_EMPTY: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "apolar",
    version,
    about = "Simultaneous power-sum decompositions of binary forms, exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a machine-readable JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized searches (default: APOLAR_SEED, then 0)
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smallest number of distinct powers decomposing the input system
    Kmin {
        /// Input JSON document (see README for the format)
        input: PathBuf,
    },
    /// The space of degree-k apolar subschemes of the input system
    Vsps {
        input: PathBuf,
        /// Number of points (the graded degree to slice at)
        #[arg(long)]
        k: usize,
    },
    /// Explicit decomposition into k powers of linear forms
    Decompose {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Residual tolerance for numeric roots
        #[arg(long, default_value_t = ROOT_TOL)]
        tol: f64,
        /// Tolerance for the numeric reconstruction round trip
        #[arg(long, default_value_t = RECONSTRUCTION_TOL)]
        recon_tol: f64,
    },
    /// Multisecant analysis of the curve projected from the input span
    Curve {
        input: PathBuf,
        /// Dimension of the target projective space
        #[arg(long)]
        n: usize,
        /// Print the full computed-versus-predicted table
        #[arg(long)]
        table: bool,
    },
    /// Closed-form multisecant table for a generic curve (no input forms)
    Predict {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Monte Carlo validation of the closed forms over a (d, r) grid
    Validate {
        #[arg(long, default_value_t = 50)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        d_min: usize,
        #[arg(long, default_value_t = 12)]
        d_max: usize,
        #[arg(long, default_value_t = 1)]
        r_min: usize,
        #[arg(long, default_value_t = 4)]
        r_max: usize,
        /// Sampled coefficients are uniform in [-B, B]
        #[arg(long, default_value_t = 10)]
        coeff_bound: i64,
        /// Which suite to run
        #[arg(long, default_value = "all", value_parser = ["all", "kmin", "grassmann"])]
        suite: String,
        /// Resample trials that land outside the generic locus (recorded)
        #[arg(long)]
        resample_nongeneric: bool,
        /// Write the JSON report to this path as well
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NonConvergence { .. } | Error::DuplicateRoots | Error::InconsistentSystem => {
            EXIT_NUMERIC
        }
        _ => EXIT_INVALID,
    }
}

fn fail(msg: impl std::fmt::Display, code: i32) -> i32 {
    eprintln!("error: {msg}");
    code
}

fn fail_core(e: Error) -> i32 {
    let code = exit_code_for(&e);
    fail(e, code)
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("APOLAR_SEED")
            .ok()
            .and_then(|s| s.trim().parse().ok())
    })
    .unwrap_or(0)
}

fn read_forms(path: &PathBuf) -> Result<(usize, Vec<apolar_core::BinaryForm>), i32> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(format!("cannot read {}: {e}", path.display()), EXIT_INVALID))?;
    parse_form_system(&text).map_err(|e| fail(e, EXIT_INVALID))
}

fn emit<T: serde::Serialize>(json: bool, report: &T, human: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("serializable report"));
    } else {
        print!("{human}");
    }
}

pub fn run_cli<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version through the error path
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { EXIT_OK } else { EXIT_INVALID };
        }
    };
    let seed = resolve_seed(cli.seed);
    match cli.command {
        Command::Kmin { input } => {
            let (d, forms) = match read_forms(&input) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let r = forms.len();
            match compute_kmin(&forms, seed) {
                Ok(res) => {
                    let report = KminJson {
                        schema: crate::input::SCHEMA.to_string(),
                        command: "kmin".to_string(),
                        d,
                        r,
                        seed,
                        kmin: res.k,
                        beyond_socle: res.beyond_socle,
                        witness: DualFormJson::from(&res.witness),
                    };
                    let mut human = format!("d = {d}, r = {r}\nk_min = {}\n", res.k);
                    human += &format!("witness = {}\n", res.witness);
                    if res.beyond_socle {
                        human += "note: no witness up to the degree; any d + 1 distinct points work\n";
                    }
                    emit(cli.json, &report, human);
                    EXIT_OK
                }
                Err(e) => fail_core(e),
            }
        }
        Command::Vsps { input, k } => {
            let (d, forms) = match read_forms(&input) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let r = forms.len();
            match vsps(&forms, k, seed) {
                Ok(v) => {
                    let report = vsps_json(d, r, seed, &v);
                    let mut human = format!(
                        "d = {d}, r = {r}, k = {k}\nVSPS projective dimension = {}\n",
                        v.projective_dim
                    );
                    if v.projective_dim < 0 {
                        human += "VSPS is empty\n";
                    }
                    human += &format!(
                        "VSSP nonempty: {}\nwitness status: {}\n",
                        if v.vssp_nonempty { "yes" } else { "no" },
                        witness_status_str(&v.witness_status)
                    );
                    if let Some(w) = &v.squarefree_witness {
                        human += &format!("witness = {w}\n");
                    }
                    let empty = !v.vssp_nonempty;
                    emit(cli.json, &report, human);
                    if empty {
                        EXIT_EMPTY
                    } else {
                        EXIT_OK
                    }
                }
                Err(e) => fail_core(e),
            }
        }
        Command::Decompose { input, k, tol, recon_tol } => {
            let (d, forms) = match read_forms(&input) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let r = forms.len();
            match decompose(&forms, k, seed, tol, recon_tol) {
                Ok(DecomposeOutcome::Found(dec)) => {
                    let witness = {
                        // rebuild the witness for the report from the vsps call
                        match vsps(&forms, k, seed) {
                            Ok(v) => v.squarefree_witness.expect("witness exists"),
                            Err(e) => return fail_core(e),
                        }
                    };
                    let report = decompose_json(d, r, k, seed, &dec, &witness);
                    let mut human = format!(
                        "d = {d}, r = {r}, k = {k} ({} arithmetic)\nwitness = {witness}\n",
                        if dec.is_exact() { "exact" } else { "numeric" }
                    );
                    for (j, p) in dec.points.iter().enumerate() {
                        match p.linear_form() {
                            Some(l) => human += &format!("l_{j} = {l}   (point {p})\n"),
                            None => human += &format!("l_{j} = point {p}\n"),
                        }
                    }
                    match &dec.coefficients {
                        apolar_core::decompose::Coefficients::Exact(rows) => {
                            for (i, row) in rows.iter().enumerate() {
                                let cells: Vec<String> =
                                    row.iter().map(|c| c.to_string()).collect();
                                human += &format!("c_{i} = [{}]\n", cells.join(", "));
                            }
                        }
                        apolar_core::decompose::Coefficients::Numeric(rows) => {
                            for (i, row) in rows.iter().enumerate() {
                                let cells: Vec<String> = row
                                    .iter()
                                    .map(|z| format!("{:.6}{:+.6}i", z.re, z.im))
                                    .collect();
                                human += &format!("c_{i} = [{}]\n", cells.join(", "));
                            }
                        }
                    }
                    human += &format!(
                        "reconstruction residual = {}\n",
                        dec.reconstruction_residual
                    );
                    emit(cli.json, &report, human);
                    EXIT_OK
                }
                Ok(DecomposeOutcome::Empty(v)) => {
                    let report = vsps_json(d, r, seed, &v);
                    let human = format!(
                        "no distinct-point decomposition with {k} powers\nVSPS projective dimension = {}\nwitness status: {}\n",
                        v.projective_dim,
                        witness_status_str(&v.witness_status)
                    );
                    emit(cli.json, &report, human);
                    EXIT_EMPTY
                }
                Err(e) => fail_core(e),
            }
        }
        Command::Curve { input, n, table } => {
            let (d, forms) = match read_forms(&input) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let curve = match make_curve(d, n, forms) {
                Ok(c) => c,
                Err(e) => return fail_core(e),
            };
            match genericity_probe(&curve, seed) {
                Ok(probe) => {
                    let report = curve_json(d, n, &probe);
                    let mut human = format!("curve: d = {d}, n = {n}, r = {}\n", d - n);
                    if table {
                        for row in &probe.rows {
                            let computed = if row.report.projective_dim < 0 {
                                "empty".to_string()
                            } else if row.report.projective_dim == 0 {
                                "point".to_string()
                            } else {
                                format!("P^{}", row.report.projective_dim)
                            };
                            human += &format!(
                                "S^{}_{} computed {} | generic prediction {}{}{}\n",
                                row.report.a,
                                row.report.b,
                                computed,
                                prediction_str(&row.predicted),
                                if row.mismatch { "  MISMATCH" } else { "" },
                                match &row.report.note {
                                    Some(note) => format!("  ({note})"),
                                    None => String::new(),
                                }
                            );
                        }
                    }
                    human += &format!("verdict: {}\n", report.verdict);
                    emit(cli.json, &report, human);
                    EXIT_OK
                }
                Err(e) => fail_core(e),
            }
        }
        Command::Predict { d, n } => {
            let rows = match generic_secant_table(d, n) {
                Ok(rows) => rows,
                Err(e) => return fail_core(e),
            };
            let r = d - n;
            let kmin = kmin_formula(d, r).expect("validated by the table");
            let report = PredictJson {
                schema: crate::input::SCHEMA.to_string(),
                command: "predict".to_string(),
                d,
                n,
                r,
                kmin,
                rows: predict_rows_json(&rows),
            };
            let mut human =
                format!("generic rational curve: d = {d}, n = {n} (r = {r}, k_min = {kmin})\n");
            for row in &rows {
                human += &format!("S^{}_{} {}\n", row.a, row.b, prediction_str(&row.prediction));
            }
            emit(cli.json, &report, human);
            EXIT_OK
        }
        Command::Validate {
            trials,
            d_min,
            d_max,
            r_min,
            r_max,
            coeff_bound,
            suite,
            resample_nongeneric,
            out,
        } => {
            let config = RunConfig {
                seed,
                trials_per_cell: trials,
                d_min,
                d_max,
                r_min,
                r_max,
                coeff_bound,
                resample_nongeneric,
            };
            if config.d_min > config.d_max || config.r_min > config.r_max || config.r_min == 0 {
                return fail("empty or invalid validation grid", EXIT_INVALID);
            }
            let mut human = String::new();
            let mut json_parts: Vec<serde_json::Value> = Vec::new();
            if suite == "all" || suite == "kmin" {
                let report = match validate_kmin_theorem(&config) {
                    Ok(rep) => rep,
                    Err(e) => return fail_core(e),
                };
                human += &format!(
                    "kmin theorem: {} trials, agreement {}/{} ({:.1}%), non-generic {}, uncertified {}\n",
                    report.summary.trials,
                    report.summary.full_agreement,
                    report.summary.trials,
                    100.0 * report.summary.agreement_rate,
                    report.summary.non_generic,
                    report.summary.uncertified_mismatches,
                );
                if let Some(worst) = &report.summary.worst {
                    human += &format!("first mismatch: {worst}\n");
                }
                json_parts.push(serde_json::to_value(&report).expect("serializable"));
            }
            if suite == "all" || suite == "grassmann" {
                let report = match validate_grassmann_bound(&config) {
                    Ok(rep) => rep,
                    Err(e) => return fail_core(e),
                };
                human += &format!(
                    "grassmann bound: {} cases, failures {}\n",
                    report.cases, report.failures
                );
                json_parts.push(serde_json::to_value(&report).expect("serializable"));
            }
            let combined = serde_json::json!({
                "schema": crate::input::SCHEMA,
                "command": "validate",
                "suites": json_parts,
            });
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&combined).expect("serializable");
                if let Err(e) = fs::write(&path, text + "\n") {
                    return fail(format!("cannot write {}: {e}", path.display()), EXIT_INVALID);
                }
                human += &format!("report written to {}\n", path.display());
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&combined).expect("serializable"));
            } else {
                print!("{human}");
            }
            EXIT_OK
        }
    }
}
