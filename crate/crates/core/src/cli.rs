//! Command-line front end.
//!
//! Matrices are written row-major as `"b11,b21;b12,b22"`: the first group is
//! the exponent row of the first defining inequality
//! `|z1|^b11 |z2|^b21 < 1`, the second group that of the second.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::intmat::{check_bounded, IntMatrix2};
use crate::kernel::general_kernel;
use crate::oracle::{verify, DomainSpec, OracleKind, Point, DEFAULT_TRUNC_CAP};

pub const TRUNC_CAP_ENV: &str = "BKERNEL_TRUNC_CAP";
pub const DEFAULT_SHADOW_SAMPLES: usize = 400;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATRIX: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleChoice {
    Series,
    Bell,
    Both,
}

impl OracleChoice {
    fn kinds(self) -> Vec<OracleKind> {
        match self {
            OracleChoice::Series => vec![OracleKind::Series],
            OracleChoice::Bell => vec![OracleKind::Bell],
            OracleChoice::Both => vec![OracleKind::Series, OracleKind::Bell],
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bkernel",
    version,
    about = "Closed-form Bergman kernels of bounded monomial polyhedra in C^2"
)]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Common {
    /// Defining matrix, row-major: "b11,b21;b12,b22"
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
    /// Write output to FILE instead of stdout
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the closed-form kernel
    Kernel {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare the closed form with a numerical oracle at random points
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "both")]
        oracle: OracleChoice,
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Relative tolerance (default: 1e-6 for series, 1e-9 for bell)
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest series truncation (overrides BKERNEL_TRUNC_CAP)
        #[arg(long)]
        trunc_cap: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate the kernel at a pair of points
    Eval {
        #[command(flatten)]
        common: Common,
        /// First point as "re1,im1,re2,im2"
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Second point, same layout (default: z)
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
    },
    /// Emit CSV samples of the boundary curves inside the unit square
    Shadow {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_SHADOW_SAMPLES)]
        samples: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Task {
    Kernel {
        format: Format,
    },
    Verify {
        oracle: OracleChoice,
        points: usize,
        tol: Option<f64>,
        seed: u64,
        trunc_cap: u32,
        format: Format,
    },
    Eval {
        z: Point,
        w: Point,
    },
    Shadow {
        samples: usize,
    },
}

/// Validated configuration for one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct CliConfig {
    pub matrix: IntMatrix2,
    pub task: Task,
    pub out: Option<PathBuf>,
}

/// Parse `"b11,b21;b12,b22"`; whitespace around tokens is ignored.
pub fn parse_matrix(s: &str) -> Result<IntMatrix2> {
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != 2 {
        return Err(Error::Parse(format!(
            "expected two rows separated by ';', got {} in '{s}'",
            rows.len()
        )));
    }
    let mut m = [[0i64; 2]; 2];
    for (i, row) in rows.iter().enumerate() {
        let tokens: Vec<&str> = row.split(',').collect();
        if tokens.len() != 2 {
            return Err(Error::Parse(format!(
                "row '{}' must have two entries",
                row.trim()
            )));
        }
        for (j, tok) in tokens.iter().enumerate() {
            let t = tok.trim();
            m[i][j] = t
                .parse()
                .map_err(|_| Error::Parse(format!("invalid integer '{t}'")))?;
        }
    }
    Ok(IntMatrix2::from_rows(m))
}

/// Parse `"re1,im1,re2,im2"`.
pub fn parse_point(s: &str) -> Result<Point> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!(
            "point '{s}' needs four numbers re1,im1,re2,im2"
        )));
    }
    let mut x = [0.0f64; 4];
    for (v, p) in x.iter_mut().zip(&parts) {
        *v = p
            .parse()
            .map_err(|_| Error::Parse(format!("invalid number '{p}'")))?;
        if !v.is_finite() {
            return Err(Error::Parse(format!("non-finite number '{p}'")));
        }
    }
    Ok([Complex64::new(x[0], x[1]), Complex64::new(x[2], x[3])])
}

fn trunc_cap_from_env(flag: Option<u32>) -> Result<u32> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(TRUNC_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::Parse(format!(
                "{TRUNC_CAP_ENV}='{v}' is not a nonnegative integer"
            ))
        }),
        Err(_) => Ok(DEFAULT_TRUNC_CAP),
    }
}

impl CliConfig {
    pub fn from_args(args: Args) -> Result<Self> {
        let (common, task) = match args.command {
            Command::Kernel { common, format } => (common, Task::Kernel { format }),
            Command::Verify {
                common,
                oracle,
                points,
                tol,
                seed,
                trunc_cap,
                format,
            } => {
                if points == 0 {
                    return Err(Error::Parse("--points must be at least 1".into()));
                }
                if let Some(t) = tol {
                    if !(t > 0.0 && t.is_finite()) {
                        return Err(Error::Parse(format!("--tol must be positive, got {t}")));
                    }
                }
                let trunc_cap = trunc_cap_from_env(trunc_cap)?;
                (
                    common,
                    Task::Verify {
                        oracle,
                        points,
                        tol,
                        seed,
                        trunc_cap,
                        format,
                    },
                )
            }
            Command::Eval { common, z, w } => {
                let z = parse_point(&z)?;
                let w = w.as_deref().map(parse_point).transpose()?.unwrap_or(z);
                (common, Task::Eval { z, w })
            }
            Command::Shadow { common, samples } => {
                if samples < 2 {
                    return Err(Error::Parse("--samples must be at least 2".into()));
                }
                (common, Task::Shadow { samples })
            }
        };
        Ok(CliConfig {
            matrix: parse_matrix(&common.matrix)?,
            task,
            out: common.out,
        })
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Io(_) => EXIT_IO,
        // everything else traces back to the matrix or the points given with it
        _ => EXIT_MATRIX,
    }
}

fn report(e: &Error) -> i32 {
    eprintln!("error: {}: {e}", e.name());
    exit_code(e)
}

fn format_complex(c: Complex64) -> String {
    format!(
        "{:.17e} {} {:.17e}i",
        c.re,
        if c.im < 0.0 { '-' } else { '+' },
        c.im.abs()
    )
}

/// Points `(r1, r2)` on `r1^b0 r2^b1 = 1` inside `[0, 1]^2`.
fn shadow_curve(b0: i64, b1: i64, n: usize) -> Vec<(f64, f64)> {
    let s = |i: usize| i as f64 / (n - 1) as f64;
    match (b0, b1) {
        (_, 0) => (0..n).map(|i| (1.0, s(i))).collect(),
        (0, _) => (0..n).map(|i| (s(i), 1.0)).collect(),
        _ => {
            let e = -(b0 as f64) / b1 as f64;
            if e > 0.0 {
                // parametrize by the coordinate with the smaller exponent so
                // samples spread along the curve
                if e <= 1.0 {
                    (0..n).map(|i| (s(i), s(i).powf(e))).collect()
                } else {
                    (0..n).map(|i| (s(i).powf(1.0 / e), s(i))).collect()
                }
            } else {
                // the curve meets the square only at the corner
                vec![(1.0, 1.0)]
            }
        }
    }
}

fn shadow_csv(b: &IntMatrix2, n: usize) -> Result<String> {
    let b = check_bounded(b)?;
    let rows = b
        .to_i64()
        .ok_or_else(|| Error::TooLarge("matrix entries exceed 64 bits".into()))?;
    let mut out = String::from("r1,r2,constraint\n");
    for (i, row) in rows.iter().enumerate() {
        for (r1, r2) in shadow_curve(row[0], row[1], n) {
            out.push_str(&format!("{r1},{r2},{}\n", i + 1));
        }
    }
    Ok(out)
}

fn json_string(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Produce the output text and the exit code for a validated config.
fn execute(config: &CliConfig) -> Result<(String, i32)> {
    match &config.task {
        Task::Kernel { format } => {
            let f = general_kernel(&config.matrix)?;
            let text = match format {
                Format::Text => f.to_text(),
                Format::Latex => f.to_latex() + "\n",
                Format::Json => json_string(&f.to_json()),
            };
            Ok((text, EXIT_OK))
        }
        Task::Verify {
            oracle,
            points,
            tol,
            seed,
            trunc_cap,
            format,
        } => {
            let spec = DomainSpec::new(&config.matrix)?;
            let mut reports = Vec::new();
            for kind in oracle.kinds() {
                let t = tol.unwrap_or_else(|| kind.default_tol());
                reports.push(verify(&spec, kind, *points, t, *seed, *trunc_cap)?);
            }
            let passed = reports.iter().all(|r| r.passed);
            let text = match format {
                Format::Json if reports.len() == 1 => json_string(&reports[0].to_json()),
                Format::Json => json_string(&serde_json::Value::Array(
                    reports.iter().map(|r| r.to_json()).collect(),
                )),
                _ => reports.iter().map(|r| r.summary() + "\n").collect(),
            };
            Ok((text, if passed { EXIT_OK } else { EXIT_VERIFY }))
        }
        Task::Eval { z, w } => {
            let f = general_kernel(&config.matrix)?;
            Ok((format_complex(f.evaluate(*z, *w)?) + "\n", EXIT_OK))
        }
        Task::Shadow { samples } => Ok((shadow_csv(&config.matrix, *samples)?, EXIT_OK)),
    }
}

/// Run `config`, writing to `--out` or to `stdout`. Returns the exit code.
pub fn run(config: &CliConfig, stdout: &mut dyn Write) -> i32 {
    let (text, code) = match execute(config) {
        Ok(v) => v,
        Err(e) => return report(&e),
    };
    let written = match &config.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(text.as_bytes())),
        None => stdout.write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => code,
        Err(e) => report(&Error::from(e)),
    }
}

/// Parse process arguments and run. Argument errors exit with code 3.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_IO } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match CliConfig::from_args(args) {
        Ok(config) => run(&config, &mut io::stdout().lock()),
        Err(e) => report(&e),
    }
}
