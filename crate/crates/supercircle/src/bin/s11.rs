//! `s11` — verification suites, representation decomposition, and truncated
//! harmonic expansion from the command line.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or
//! input-parse failure.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::json;

use supercircle::error::Error;
use supercircle::linalg::Matrix;
use supercircle::literal::parse_scalar;
use supercircle::peter_weyl::{
    catalog, default_grid, expand, truncation_error, Branch, SuperFunction,
};
use supercircle::reps::{decompose, GradedRep, WeightBlock};
use supercircle::scalar::{Backend, Scalar};
use supercircle::suites::{run_suite, RunConfig};

#[derive(Parser)]
#[command(name = "s11", version, about = "supercircle toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a named verification suite (or `all`)
    Verify {
        /// group-axioms | susy | real-structures | lie-brackets | reps | berezinian | cover | all
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decompose a representation document into canonical summands
    Decompose {
        /// Path to a JSON representation document
        file: String,
        #[command(flatten)]
        common: Common,
    },
    /// Expand a superfunction into matrix coefficients plus error rows
    Expand {
        /// Path to a JSON superfunction document, or `catalog:<name>`
        input: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Default,
    CompatSqrtM,
}

#[derive(Args)]
struct Common {
    /// Deformation parameter as "re,im" (components in the chosen backend)
    #[arg(long, default_value = "1,0")]
    k: String,
    #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
    backend: BackendArg,
    /// Number of Grassmann generator pairs
    #[arg(long, default_value_t = 4)]
    odd_generators: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Truncation order M
    #[arg(long, default_value_t = 8)]
    max_weight: i64,
    /// Sample count (power of two); 0 derives it from --max-weight
    #[arg(long, default_value_t = 0)]
    grid_size: usize,
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    #[arg(long, value_enum, default_value_t = BranchArg::Default)]
    branch: BranchArg,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
    /// Trials per randomized identity
    #[arg(long, default_value_t = 200)]
    trials: usize,
}

fn usage_err(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn math_err(msg: &str) -> ExitCode {
    eprintln!("failed: {msg}");
    ExitCode::from(1)
}

fn parse_k(src: &str, backend: Backend) -> Result<Scalar, String> {
    let (re, im) = src
        .split_once(',')
        .ok_or_else(|| format!("--k expects \"re,im\", got {src:?}"))?;
    let re = parse_scalar(re.trim(), backend).map_err(|e| e.to_string())?;
    let im = parse_scalar(im.trim(), backend).map_err(|e| e.to_string())?;
    Ok(&re + &(&im * &Scalar::i(backend)))
}

fn build_config(c: &Common) -> Result<RunConfig, String> {
    let backend = match c.backend {
        BackendArg::Exact => Backend::Exact,
        BackendArg::Float => Backend::Float,
    };
    if c.odd_generators < 2 {
        return Err("--odd-generators must be at least 2".into());
    }
    if c.grid_size != 0 && (c.grid_size as i64) < 2 * c.max_weight + 2 {
        return Err("--grid-size must be at least 2*max_weight + 2".into());
    }
    Ok(RunConfig {
        k: parse_k(&c.k, backend)?,
        backend,
        odd_generators: c.odd_generators,
        seed: c.seed,
        max_weight: c.max_weight,
        grid_size: c.grid_size,
        tolerance: c.tolerance,
        branch: match c.branch {
            BranchArg::Default => Branch::Default,
            BranchArg::CompatSqrtM => Branch::CompatSqrtM,
        },
        trials: c.trials,
    })
}

fn emit(out: &Option<String>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| e.to_string())
        }
    }
}

fn cmd_verify(suite: &str, common: &Common) -> ExitCode {
    let cfg = match build_config(common) {
        Ok(c) => c,
        Err(e) => return usage_err(&e),
    };
    let report = match run_suite(suite, &cfg) {
        Ok(r) => r,
        Err(e) => return usage_err(&e.to_string()),
    };
    if let Err(e) = emit(&common.out, &report.render()) {
        return usage_err(&e);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[derive(Deserialize)]
struct BlockDoc {
    m: i64,
    p: usize,
    q: usize,
    #[serde(rename = "Z")]
    z: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct RepDoc {
    blocks: Vec<BlockDoc>,
}

fn matrix_doc(m: &Matrix) -> serde_json::Value {
    let rows: Vec<Vec<String>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m.get(i, j).to_string()).collect())
        .collect();
    json!(rows)
}

fn cmd_decompose(file: &str, common: &Common) -> ExitCode {
    let cfg = match build_config(common) {
        Ok(c) => c,
        Err(e) => return usage_err(&e),
    };
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return usage_err(&format!("cannot read {file}: {e}")),
    };
    let doc: RepDoc = match serde_json::from_str(&text) {
        Ok(d) => d,
        Err(e) => return usage_err(&format!("bad representation document: {e}")),
    };
    let mut blocks = Vec::new();
    for b in &doc.blocks {
        let n = b.p + b.q;
        if b.z.len() != n || b.z.iter().any(|row| row.len() != n) {
            return usage_err(&format!("block m={}: Z must be {n}x{n}", b.m));
        }
        let mut z = Matrix::zero(n, n, cfg.backend);
        for (i, row) in b.z.iter().enumerate() {
            for (j, src) in row.iter().enumerate() {
                match parse_scalar(src, cfg.backend) {
                    Ok(v) => z.set(i, j, v),
                    Err(e) => return usage_err(&e.to_string()),
                }
            }
        }
        match WeightBlock::new(b.m, b.p, b.q, z) {
            Ok(wb) => blocks.push(wb),
            Err(e) => return math_err(&e.to_string()),
        }
    }
    let eps = match cfg.backend {
        Backend::Exact => 0.0,
        Backend::Float => cfg.tolerance,
    };
    let dec = match decompose(&GradedRep { blocks }, eps) {
        Ok(d) => d,
        Err(e) => return math_err(&e.to_string()),
    };
    let mut lines = String::new();
    let summary: serde_json::Map<String, serde_json::Value> = dec
        .summary
        .iter()
        .map(|(c, n)| (c.label(), json!(n)))
        .collect();
    lines.push_str(&json!({ "summary": summary }).to_string());
    lines.push('\n');
    for b in &dec.blocks {
        let bs: serde_json::Map<String, serde_json::Value> =
            b.summary.iter().map(|(c, n)| (c.label(), json!(n))).collect();
        lines.push_str(
            &json!({
                "m": b.m,
                "summary": bs,
                "canonical": matrix_doc(&b.canonical),
                "certificate": matrix_doc(&b.certificate),
            })
            .to_string(),
        );
        lines.push('\n');
    }
    match emit(&common.out, &lines) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => usage_err(&e),
    }
}

#[derive(Deserialize)]
struct FunDoc {
    grid_size: usize,
    phi0: Vec<[f64; 2]>,
    phi1: Vec<[f64; 2]>,
}

fn load_superfunction(input: &str, grid: usize) -> Result<SuperFunction, ExitCode> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return catalog(name, grid).map_err(|e| usage_err(&e.to_string()));
    }
    let text = fs::read_to_string(input)
        .map_err(|e| usage_err(&format!("cannot read {input}: {e}")))?;
    let doc: FunDoc = serde_json::from_str(&text)
        .map_err(|e| usage_err(&format!("bad superfunction document: {e}")))?;
    if doc.phi0.len() != doc.grid_size || doc.phi1.len() != doc.grid_size {
        return Err(usage_err("phi0/phi1 length must equal grid_size"));
    }
    let conv = |v: &[[f64; 2]]| -> Vec<Complex64> {
        v.iter().map(|c| Complex64::new(c[0], c[1])).collect()
    };
    SuperFunction::from_samples(conv(&doc.phi0), conv(&doc.phi1))
        .map_err(|e| usage_err(&e.to_string()))
}

fn cmd_expand(input: &str, common: &Common) -> ExitCode {
    let cfg = match build_config(common) {
        Ok(c) => c,
        Err(e) => return usage_err(&e),
    };
    let grid = if cfg.grid_size != 0 {
        cfg.grid_size
    } else {
        default_grid(cfg.max_weight)
    };
    let f = match load_superfunction(input, grid) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let table = match expand(&f, cfg.max_weight, cfg.branch) {
        Ok(t) => t,
        Err(e @ Error::Undersampled(_)) => return math_err(&e.to_string()),
        Err(e) => return usage_err(&e.to_string()),
    };
    let rows = match truncation_error(&f, &table, 2) {
        Ok(r) => r,
        Err(e) => return math_err(&e.to_string()),
    };
    let mut out = String::from("# coefficients\nkind,m,re,im\n");
    for (m, c) in &table.a {
        out.push_str(&format!("a,{m},{},{}\n", c.re, c.im));
    }
    for (m, c) in &table.b {
        out.push_str(&format!("b,{m},{},{}\n", c.re, c.im));
    }
    out.push_str("# truncation_error\nM,n,sector,sup_error\n");
    for r in &rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            cfg.max_weight, r.n, r.sector, r.sup_error
        ));
    }
    match emit(&common.out, &out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => usage_err(&e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.cmd {
        Cmd::Verify { suite, common } => cmd_verify(suite, common),
        Cmd::Decompose { file, common } => cmd_decompose(file, common),
        Cmd::Expand { input, common } => cmd_expand(input, common),
    }
}
