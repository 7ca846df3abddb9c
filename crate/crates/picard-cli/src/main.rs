//! Command-line front end: stable machine-readable output for realizable
//! sets, gap reports, certificates, density sweeps, and verification runs.
//!
//! Exit codes: 0 success, 1 negative mathematical result (unrealizable value
//! or failed check), 2 usage error, 3 resource cap exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use picard::{
    density, enumerate_shapes, large_threshold, translated_set, verify_distribution,
    verify_theorems, BlockTable, Decomposition, Error, ReachTable, DEFAULT_G_CAP,
};

#[derive(Parser)]
#[command(
    name = "picard",
    version,
    about = "Realizable Picard numbers of complex abelian varieties",
    after_help = "The environment variable PICARD_G_CAP overrides the default dimension cap (4096)."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the realizable set R_g
    Compute {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        g: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the maximal missing intervals of R_g, one "lo-hi" per line
    Gaps {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        g: u64,
    },
    /// Write a CSV table of |R_g| / g^2 over a dimension range
    Density {
        #[arg(long = "g-min", value_parser = clap::value_parser!(u64).range(1..))]
        g_min: u64,
        #[arg(long = "g-max", value_parser = clap::value_parser!(u64).range(1..))]
        g_max: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Find an isogeny-decomposition certificate for (g, rho)
    Cert {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        g: u64,
        #[arg(long)]
        rho: u64,
        /// Enumerate every decomposition shape instead of one certificate
        #[arg(long = "all-shapes")]
        all_shapes: bool,
        /// Shape enumeration limit; truncation is reported in the output
        #[arg(long = "max-shapes", default_value_t = 64)]
        max_shapes: usize,
    },
    /// Run the structural verification battery for g = 1..=g-max
    Verify {
        #[arg(long = "g-max", value_parser = clap::value_parser!(u64).range(1..))]
        g_max: u64,
    },
    /// Check that translates of lower ranges tile the top of R_g
    Distribution {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        g: u64,
        #[arg(long)]
        ell: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Serialize, Deserialize)]
struct ComputeOut {
    g: u64,
    members: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct BlockOut {
    m: u64,
    k: u64,
    kind: String,
    param: u64,
    rho: u64,
}

#[derive(Serialize, Deserialize)]
struct CertOut {
    g: u64,
    rho: u64,
    blocks: Vec<BlockOut>,
}

#[derive(Serialize, Deserialize)]
struct ShapeBlockOut {
    m: u64,
    k: u64,
    rho: u64,
}

#[derive(Serialize, Deserialize)]
struct ShapesOut {
    g: u64,
    rho: u64,
    shapes: Vec<Vec<ShapeBlockOut>>,
    truncated: bool,
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded { .. } | Error::OracleLimit { .. } => ExitCode::from(3),
                Error::DimensionTooSmall { .. } | Error::ThresholdExceeded { .. } => {
                    ExitCode::from(2)
                }
            }
        }
    }
}

fn dimension_cap() -> Result<u64, CliError> {
    match std::env::var("PICARD_G_CAP") {
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .map_err(|_| CliError::Usage(format!("invalid PICARD_G_CAP value {s:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_G_CAP),
        Err(e) => Err(CliError::Usage(e.to_string())),
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, CliError> {
    let cap = dimension_cap()?;
    let mut table = ReachTable::with_cap(cap);
    match cmd {
        Cmd::Compute { g, format } => cmd_compute(&mut table, g, format),
        Cmd::Gaps { g } => cmd_gaps(&mut table, g),
        Cmd::Density { g_min, g_max, out } => cmd_density(&mut table, g_min, g_max, &out),
        Cmd::Cert { g, rho, all_shapes, max_shapes } => {
            cmd_cert(&mut table, g, rho, all_shapes, max_shapes)
        }
        Cmd::Verify { g_max } => cmd_verify(&mut table, g_max),
        Cmd::Distribution { g, ell } => cmd_distribution(&mut table, g, ell),
    }
}

/// Ascending members collapsed into runs: `{1..8, 10, 16}`.
fn fmt_runs(xs: &[u64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < xs.len() {
        let mut j = i;
        while j + 1 < xs.len() && xs[j + 1] == xs[j] + 1 {
            j += 1;
        }
        match j - i {
            0 => parts.push(xs[i].to_string()),
            1 => {
                parts.push(xs[i].to_string());
                parts.push(xs[j].to_string());
            }
            _ => parts.push(format!("{}..{}", xs[i], xs[j])),
        }
        i = j + 1;
    }
    format!("{{{}}}", parts.join(", "))
}

fn cmd_compute(table: &mut ReachTable, g: u64, format: Format) -> Result<ExitCode, CliError> {
    let row = table.compute(g)?;
    let members: Vec<u64> = row.iter().collect();
    match format {
        Format::Json => {
            let out = ComputeOut { g, members };
            println!("{}", serde_json::to_string(&out).expect("serialization"));
        }
        Format::Csv => {
            let mut s = String::from("rho\n");
            for x in &members {
                s.push_str(&x.to_string());
                s.push('\n');
            }
            print!("{s}");
        }
        Format::Text => {
            println!("R_{g} ({} of {} realizable): {}", members.len(), g * g, fmt_runs(&members));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gaps(table: &mut ReachTable, g: u64) -> Result<ExitCode, CliError> {
    let row = table.compute(g)?;
    for gap in row.gaps() {
        println!("{}-{}", gap.lo, gap.hi);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_density(
    table: &mut ReachTable,
    g_min: u64,
    g_max: u64,
    out: &std::path::Path,
) -> Result<ExitCode, CliError> {
    if g_min > g_max {
        return Err(CliError::Usage(format!("--g-min {g_min} exceeds --g-max {g_max}")));
    }
    let mut csv = String::from("g,count,g_squared,density_num,density_den\n");
    for g in g_min..=g_max {
        let d = density(table, g)?;
        csv.push_str(&format!("{g},{},{},{},{}\n", d.num, d.den, d.num, d.den));
    }
    std::fs::write(out, csv)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))?;
    println!("wrote {} rows to {}", g_max - g_min + 1, out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_cert(
    table: &mut ReachTable,
    g: u64,
    rho: u64,
    all_shapes: bool,
    max_shapes: usize,
) -> Result<ExitCode, CliError> {
    if rho < 1 || rho > g * g {
        return Err(CliError::Usage(format!("--rho must lie in [1, {}] for --g {g}", g * g)));
    }
    if g > table.cap() {
        return Err(Error::CapExceeded { g, cap: table.cap() }.into());
    }
    if all_shapes {
        let shapes = enumerate_shapes(table, g, rho, max_shapes)?;
        if shapes.shapes.is_empty() {
            println!("UNREALIZABLE");
            return Ok(ExitCode::from(1));
        }
        let out = ShapesOut {
            g,
            rho,
            shapes: shapes
                .shapes
                .iter()
                .map(|s| {
                    s.iter().map(|b| ShapeBlockOut { m: b.m, k: b.k, rho: b.rho }).collect()
                })
                .collect(),
            truncated: shapes.truncated,
        };
        println!("{}", serde_json::to_string(&out).expect("serialization"));
        return Ok(ExitCode::SUCCESS);
    }
    let blocks = BlockTable::build(g);
    match blocks.find_certificate(g, rho) {
        Some(d) => {
            println!("{}", serde_json::to_string(&cert_out(&d)).expect("serialization"));
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("UNREALIZABLE");
            Ok(ExitCode::from(1))
        }
    }
}

fn cert_out(d: &Decomposition) -> CertOut {
    CertOut {
        g: d.g(),
        rho: d.total_rho(),
        blocks: d
            .blocks()
            .iter()
            .map(|b| BlockOut {
                m: b.m(),
                k: b.k(),
                kind: b.endo().kind().as_str().to_string(),
                param: b.endo().param(),
                rho: b.rho(),
            })
            .collect(),
    }
}

fn cmd_verify(table: &mut ReachTable, g_max: u64) -> Result<ExitCode, CliError> {
    if g_max > table.cap() {
        return Err(Error::CapExceeded { g: g_max, cap: table.cap() }.into());
    }
    let mut failed = 0u64;
    for g in 1..=g_max {
        let report = verify_theorems(table, g)?;
        for c in &report.checks {
            let status = if !c.applicable {
                "N/A "
            } else if c.passed {
                "PASS"
            } else {
                failed += 1;
                "FAIL"
            };
            println!("g={g:<3} {name:<28} {status} {detail}", name = c.name, detail = c.detail);
        }
    }
    if failed == 0 {
        println!("all applicable checks passed for g <= {g_max}");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{failed} applicable check(s) failed");
        Ok(ExitCode::from(1))
    }
}

fn cmd_distribution(table: &mut ReachTable, g: u64, ell: u64) -> Result<ExitCode, CliError> {
    let max = large_threshold(g)?;
    if ell > max {
        return Err(Error::ThresholdExceeded { ell, max }.into());
    }
    let verdict = verify_distribution(table, g, ell)?;

    let mut expected = Vec::new();
    let mut total = 0u64;
    for s in 0..=ell {
        let t = translated_set(table, g, s)?;
        total += t.len();
        expected.extend(t.iter());
    }
    expected.sort_unstable();
    expected.dedup();
    let disjoint = expected.len() as u64 == total;
    let lo = (g - ell) * (g - ell) + 1;
    let actual: Vec<u64> = table.get(g).unwrap().iter().filter(|&x| x >= lo).collect();

    println!("g={g} ell={ell} window=[{lo},{}]", g * g);
    println!("union of translates: {}", fmt_runs(&expected));
    println!("window of R_g:       {}", fmt_runs(&actual));
    println!("disjoint: {disjoint}");
    println!("verdict: {verdict}");
    Ok(if verdict { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
