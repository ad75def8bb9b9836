//! `zkq`: star products, bundle normal forms, moduli strata and instanton
//! invariants on `Z_k` from the command line.

mod commands;
mod envelope;
mod sweep;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use envelope::{CommandEcho, ErrorInfo, ResultEnvelope};

#[derive(Debug, Parser)]
#[command(name = "zkq", version, about = "Exact computations on the local surfaces Z_k")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Poisson structures on Z_k.
    #[command(subcommand)]
    Poisson(PoissonCmd),
    /// Star products.
    #[command(subcommand)]
    Star(StarCmd),
    /// Normal forms of line bundles and rank-2 bundles.
    #[command(subcommand)]
    Bundle(BundleCmd),
    /// First-order moduli.
    #[command(subcommand)]
    Moduli(ModuliCmd),
    /// Rebel levels and oracle agreement over a grid.
    Sweep(SweepArgs),
    /// Width, height and charge.
    #[command(subcommand)]
    Invariants(InvariantsCmd),
    /// Sections of O(j) as modules over global functions.
    #[command(subcommand)]
    Coh(CohCmd),
}

#[derive(Debug, Args, Serialize)]
struct SurfaceArgs {
    #[arg(long)]
    k: u32,
}

#[derive(Debug, Args, Serialize)]
struct QuantArgs {
    #[arg(long)]
    k: u32,
    /// σ_U as an expression in z, u.
    #[arg(long, default_value = "1")]
    sigma: String,
    /// Cutoff order N in ħ.
    #[arg(long, default_value_t = 1)]
    order: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum PoissonCmd {
    /// Generators of H⁰(Z_k, Λ²T) over global functions.
    Gens(SurfaceArgs),
    /// Degeneracy class of σ.
    Classify {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        sigma: String,
    },
    /// Dimension of Poisson structures on the n-th neighbourhood.
    Dim {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = ConventionArg::AtMost)]
        convention: ConventionArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ConventionArg {
    AtMost,
    Below,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ChartArg {
    U,
    V,
    Uv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum StarCmd {
    /// f ⋆ g.
    Mul {
        #[command(flatten)]
        #[serde(flatten)]
        quant: QuantArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Coordinates of f and g (v: ξ, v or xi, v names).
        #[arg(long, value_enum, default_value_t = ChartArg::Uv)]
        chart: ChartArg,
    },
    /// Checks that global monomials multiply to global functions.
    CheckClosure {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "1")]
        sigma: String,
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Largest k·i among the sampled monomials z^l u^i.
        #[arg(long, default_value_t = 6)]
        max_ki: u32,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum BundleCmd {
    /// Line bundle normal form z^{-j}.
    Normalize {
        #[command(flatten)]
        #[serde(flatten)]
        quant: QuantArgs,
        /// Transition function as a series in h.
        #[arg(long)]
        f: String,
    },
    /// Extension class in the canonical window.
    ExtReduce {
        #[command(flatten)]
        #[serde(flatten)]
        quant: QuantArgs,
        #[arg(long)]
        j: i64,
        #[arg(long)]
        p: String,
    },
    /// Upper-triangular normal form of a 2×2 transition matrix.
    Filter {
        #[command(flatten)]
        #[serde(flatten)]
        quant: QuantArgs,
        /// Entries "a; b; c; d" in row-major order.
        #[arg(long)]
        matrix: String,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ModuliCmd {
    /// Strata by leading zeros.
    Stratify {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: i64,
    },
    /// Rebel level of a point.
    Rebel {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: i64,
        #[arg(long)]
        sigma: String,
        /// Coordinates "c1,...,cm".
        #[arg(long)]
        point: String,
    },
    /// Brute-force first-order equivalence and fibre dimension.
    Oracle {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: i64,
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        point: String,
        #[arg(long, requires = "q_prime")]
        p_prime: Option<String>,
        #[arg(long, requires = "p_prime")]
        q_prime: Option<String>,
        #[arg(long)]
        deg_bound: Option<usize>,
    },
}

#[derive(Debug, Args, Serialize)]
struct SweepArgs {
    /// Comma-separated k values.
    #[arg(long, default_value = "1")]
    k: String,
    /// Comma-separated j values.
    #[arg(long, default_value = "2,3")]
    j: String,
    /// Semicolon-separated σ_U expressions.
    #[arg(long, default_value = "1;u")]
    sigma: String,
    #[arg(long)]
    deg_bound: Option<usize>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum InvariantsCmd {
    /// Width, height and charge of (z^j, p; 0, z^-j).
    Charge {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: i64,
        #[arg(long)]
        p: String,
        /// Starting window "z_lo:z_hi:u_lo:u_hi".
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// The eleven splitting-type-3 rows on Z_1.
    Table1,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CohCmd {
    /// Generators and relations of H⁰(Z_k, O(twist)).
    Gens {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        twist: i64,
    },
    /// Monomial basis of H⁰(Z_k, O(twist)) up to a u-degree.
    Basis {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        twist: i64,
        #[arg(long, default_value_t = 4)]
        u_cutoff: u32,
    },
}

impl Command {
    /// Subcommand path and arguments, taken from the serialized form
    /// `{"top": {"sub": {args}}}`.
    fn echo(&self) -> CommandEcho {
        use serde_json::{Map, Value};
        let first = |v: Value| match v {
            Value::Object(m) => m.into_iter().next(),
            _ => None,
        };
        let (top, inner) = first(serde_json::to_value(self).expect("command serializes"))
            .expect("externally tagged");
        let (name, args) = match inner {
            Value::String(sub) => (format!("{top} {sub}"), Value::Object(Map::new())),
            Value::Object(m) if matches!(self, Command::Sweep(_)) => (top, Value::Object(m)),
            other => match first(other) {
                Some((sub, args)) => (format!("{top} {sub}"), args),
                None => (top, Value::Object(Map::new())),
            },
        };
        CommandEcho { name, args }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let echo = cli.command.echo();
    match commands::run(&cli.command) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => ResultEnvelope::new(echo, out.payload, out.warnings).to_json(),
                Format::Text => {
                    let mut t = out.text;
                    for w in &out.warnings {
                        t.push_str(&format!("warning: {w}\n"));
                    }
                    t
                }
            };
            match emit(&text, &cli.out) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: cannot write output: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            let code = e.exit_code();
            if cli.format == Format::Json {
                let info = ErrorInfo {
                    kind: e.kind().to_string(),
                    message: e.to_string(),
                    exit_code: code as i32,
                };
                let _ = emit(&ResultEnvelope::failure(echo, info).to_json(), &cli.out);
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
