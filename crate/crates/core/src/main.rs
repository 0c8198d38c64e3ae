use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use superhc::borel::{is_guaranteed_spherical, kac_weight, verify_fd, MarkedWeight};
use superhc::interp::{
    eval_point, evaluation_table, extra_vanishing_failures, general_evaluation_table, solve_general, solve_interpolation,
};
use superhc::kacrep::{typicality, KacModule};
use superhc::partitions::{Partition, Profile};
use superhc::shimura::Shimura;
use superhc::superlie::gl22::{check_bracket_table, TABLE_COLS, TABLE_ROWS};
use superhc::susyring::{lambda0_basis, lambda_rho_basis, DeformedParams};
use superhc::verify::run_all;
use superhc::{Result, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "superhc", version, about = "Exact super Harish-Chandra and interpolation-polynomial computations")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Interpolation polynomial I_mu, or the deformed J_mu when --k and --h are given.
    Interp {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, required_unless_present = "table")]
        mu: Option<Partition>,
        #[arg(long, requires = "h", allow_hyphen_values = true)]
        k: Option<Scalar>,
        #[arg(long, requires = "k", allow_hyphen_values = true)]
        h: Option<Scalar>,
        /// Also report extra vanishing up to this many boxes beyond |mu|.
        #[arg(long)]
        slack: Option<u32>,
        /// Emit the evaluation matrix over all hooks of size at most D as CSV.
        #[arg(long, value_name = "D", conflicts_with_all = ["mu", "slack"])]
        table: Option<u32>,
    },
    /// Basis of the even supersymmetric polynomials of degree at most 2d.
    Basis {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, requires = "h", allow_hyphen_values = true)]
        k: Option<Scalar>,
        #[arg(long, requires = "k", allow_hyphen_values = true)]
        h: Option<Scalar>,
    },
    /// Odd-reflection trace to the sharp chain and to the distinguished chain.
    Reflect {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        lambda: Partition,
    },
    /// Spherical vectors of the Kac module of the hook (a, 1^b).
    Kac {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        /// Run the quasi-sphericity check (b = a-1 only).
        #[arg(long)]
        quasi: bool,
    },
    /// Harish-Chandra image of the Shimura operator D_mu at p = q = 1.
    Shimura {
        #[arg(long)]
        mu: Partition,
        /// Also check k-invariance of D_mu.
        #[arg(long)]
        verify: bool,
    },
    /// Superbracket table of gl(2|2).
    Brackets {
        #[arg(long)]
        check_table: bool,
    },
    /// Run the full acceptance suite.
    VerifyAll,
}

struct Output {
    json: Value,
    text: String,
    ok: bool,
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count()))).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

fn weight_row(label: String, w: &MarkedWeight) -> Vec<String> {
    vec![label, w.chain_string(), w.to_string()]
}

fn params(k: Option<Scalar>, h: Option<Scalar>) -> Option<DeformedParams> {
    Some(DeformedParams::new(k?, h?))
}

fn run(cmd: Command) -> Result<Output> {
    Ok(match cmd {
        Command::Interp { p, q, table: Some(d), k, h, .. } => {
            let prof = Profile::new(p, q);
            let (hooks, m) = match params(k, h) {
                Some(prm) => general_evaluation_table(prof, &prm, d)?,
                None => evaluation_table(prof, d)?,
            };
            let mut text = String::from("\"mu \\ lambda\"");
            for l in &hooks {
                let _ = write!(text, ",\"{l}\"");
            }
            text.push('\n');
            for (i, mu) in hooks.iter().enumerate() {
                let _ = write!(text, "\"{mu}\"");
                for j in 0..hooks.len() {
                    let _ = write!(text, ",{}", m.get(i, j));
                }
                text.push('\n');
            }
            Output { json: json!({ "p": p, "q": q, "d": d, "hooks": hooks, "matrix": m }), text, ok: true }
        }
        Command::Interp { p, q, mu, k, h, slack, .. } => {
            let mu = mu.expect("clap requires --mu without --table");
            let prof = Profile::new(p, q);
            let (res, name) = match params(k, h) {
                Some(prm) => (solve_general(&mu, prof, &prm)?, "J"),
                None => (solve_interpolation(&mu, prof)?, "I"),
            };
            let mut json = json!({ "p": p, "q": q, "mu": res.mu, "poly": res.poly, "normalization": res.normalization });
            let mut text = format!("{name}_{} at ({p},{q}) = {}\nnormalization: {:?}\n", res.mu, res.poly, res.normalization);
            let mut ok = true;
            if let Some(s) = slack {
                let bad = extra_vanishing_failures(&res.poly, &mu, prof, s)?;
                ok = bad.is_empty();
                json["extra_vanishing_failures"] = json!(bad);
                let _ = writeln!(text, "extra vanishing (slack {s}): {}", if ok { "holds" } else { "fails" });
            }
            Output { json, text, ok }
        }
        Command::Basis { p, q, d, k, h } => {
            let prof = Profile::new(p, q);
            let basis = match params(k, h) {
                Some(prm) => lambda_rho_basis(prof, &prm, d)?,
                None => lambda0_basis(prof, d)?,
            };
            let text = basis.iter().enumerate().map(|(i, f)| format!("{i}: {f}\n")).collect();
            Output { json: json!({ "p": p, "q": q, "d": d, "dim": basis.len(), "basis": basis }), text, ok: true }
        }
        Command::Reflect { p, q, lambda } => {
            let prof = Profile::new(p, q);
            let fd = verify_fd(&lambda, prof)?;
            let kac = kac_weight(&lambda, prof)?;
            let sph = is_guaranteed_spherical(&lambda, prof)?;
            let mut rows = vec![vec!["step".to_string(), "chain".into(), "weight".into()]];
            rows.extend(fd.trace.iter().enumerate().map(|(i, w)| weight_row(format!("sharp {i}"), w)));
            rows.extend(kac.trace.iter().enumerate().map(|(i, w)| weight_row(format!("kac {i}"), w)));
            let mut text = table(&rows);
            let _ = writeln!(
                text,
                "dominant: {}  second case: {}  l = {}  tau1 = {}  guaranteed spherical: {sph}",
                fd.dominant, fd.case_two, fd.l, fd.tau1
            );
            let ok = fd.passed();
            Output { json: json!({ "finite_dimensionality": fd, "kac_weight": kac, "guaranteed_spherical": sph }), text, ok }
        }
        Command::Kac { a, b, quasi } => {
            let mut k = KacModule::for_hook(a, b)?;
            let sph = k.spherical_vectors()?;
            let typical = typicality(k.w.weight);
            let coords: Vec<Value> = sph
                .iter()
                .map(|v| {
                    Value::Array(
                        v.terms()
                            .map(|((s, kl), c)| json!({ "xi_mask": s, "w_weight": k.w.weight_of(*kl), "coef": c.to_string() }))
                            .collect(),
                    )
                })
                .collect();
            let mut text = format!("weight {:?}  typical {typical}  dim K = {}\n", k.w.weight, k.dim());
            for v in &sph {
                let _ = writeln!(text, "spherical: {}", k.fmt_vector(v));
            }
            if sph.is_empty() {
                text.push_str("no spherical vectors\n");
            }
            let mut json = json!({ "a": a, "b": b, "weight": k.w.weight, "typical": typical, "spherical": coords });
            let mut ok = true;
            if quasi {
                let r = k.quasi_spherical_check(2)?;
                ok = r.passed;
                let _ = writeln!(text, "omega = {}  omega' = {}", r.omega, r.omega_prime);
                let _ = writeln!(text, "k.omega = C omega': {}  omega cyclic: {}", r.k_orbit_is_omega_prime_line, r.omega_cyclic);
                for i in &r.identities {
                    let _ = writeln!(text, "{}: {} == {} [{}]", i.name, i.computed, i.expected, if i.holds { "pass" } else { "fail" });
                }
                let _ = writeln!(
                    text,
                    "degree-two annihilators: {}/{} (g0 words of length <= {})",
                    r.words_checked - r.annihilation_failures.len(),
                    r.words_checked,
                    r.g0_word_bound
                );
                json["quasi_spherical"] = serde_json::to_value(&r).expect("serializable");
            }
            Output { json, text, ok }
        }
        Command::Shimura { mu, verify } => {
            let mut sh = Shimura::new()?;
            let r = sh.report(&mu, verify)?;
            let ok = r.c_mu.as_ref().is_some_and(|c| !c.is_zero()) && r.in_lambda0 && r.vanishing_failures.is_empty() && r.k_invariant;
            let c = r.c_mu.as_ref().map(|c| c.to_string()).unwrap_or_else(|| "not proportional".into());
            let mut text = format!("Gamma(D_{mu}) = {}\nI_{mu} = {}\nc_mu = {c}\n", r.gamma, r.interpolation);
            let _ = writeln!(text, "in even supersymmetric ring: {}  vanishing failures: {}", r.in_lambda0, r.vanishing_failures.len());
            if verify {
                let _ = writeln!(text, "k-invariant: {}", r.k_invariant);
            }
            let point = eval_point(&mu, Profile::new(1, 1))?;
            let value = r.gamma.eval_ints(&point)?;
            let mut json = serde_json::to_value(&r).expect("serializable");
            json["value_at_mu"] = json!(value);
            Output { json, text, ok }
        }
        Command::Brackets { check_table } => {
            let total = TABLE_ROWS.len() * TABLE_COLS.len();
            let bad = if check_table { check_bracket_table()? } else { Vec::new() };
            let mut text = String::new();
            if check_table {
                let _ = writeln!(text, "{}/{total} pass", total - bad.len());
                for m in &bad {
                    let _ = writeln!(text, "[{}, {}]: expected {} computed {}", m.row, m.col, m.expected, m.computed);
                }
            } else {
                let alg = superhc::superlie::gl22::gl22();
                let mut rows = vec![std::iter::once("[row, col]".to_string()).chain(TABLE_COLS.iter().map(|s| s.to_string())).collect()];
                for r in TABLE_ROWS {
                    let mut row = vec![r.to_string()];
                    for c in TABLE_COLS {
                        let l = superhc::superlie::bracket(&alg, r, c)?;
                        row.push(if l.is_empty() {
                            "0".into()
                        } else {
                            l.iter().map(|(i, s)| format!("{s}*{}", alg.label(*i))).collect::<Vec<_>>().join("+")
                        });
                    }
                    rows.push(row);
                }
                text = table(&rows);
            }
            Output { json: json!({ "total": total, "mismatches": bad }), text, ok: bad.is_empty() }
        }
        Command::VerifyAll => {
            let report = run_all();
            let mut text = String::new();
            for c in &report.criteria {
                let _ = writeln!(text, "{}", c.summary_line());
                for r in c.checks.iter().filter(|r| !r.passed) {
                    let _ = writeln!(text, "    {}: expected {} got {}", r.id, r.expected, r.actual);
                }
            }
            let _ = writeln!(text, "wall time {:.2}s", report.seconds);
            let ok = report.passed;
            Output { json: serde_json::to_value(&report).expect("serializable"), text, ok }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let body = match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json).expect("serializable")),
        Format::Text => out.text,
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{body}"),
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
