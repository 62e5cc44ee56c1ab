//! `detlab`: scenario runner for the determinantal degeneration claims.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use detlab_cli::scenario::{Budget, CliError, FamilyTag, ScenarioConfig};
use detlab_cli::{conjecture, emit, Format, Report};
use detlab_core::groebner::{buchberger, GbCaps, Ideal};
use detlab_core::matrix::StripSide;
use detlab_core::{hessian, MatrixSpec, MonomialOrder};

#[derive(Parser)]
#[command(name = "detlab", version, about = "machine verification of determinantal degeneration claims")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Cloned,
    Zeros,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Degrevlex,
    Lex,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrintArg {
    Det,
    Adjugate,
    Gradient,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario's checks and emit a report.
    Run {
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        /// Comma-separated check tags, or "all".
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Explicit primes for the evaluation protocol, comma-separated.
        #[arg(long)]
        primes: Option<String>,
        /// Per-check wall-time cap in milliseconds.
        #[arg(long)]
        budget_ms: Option<u64>,
        /// JSON config file mirroring the flags (overrides them when given).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Run the conjecture harness on a zeros-family size.
    Conjectures {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Print data of a matrix spec.
    Matrix {
        /// Path to a MatrixSpec JSON file.
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum)]
        print: PrintArg,
    },
    /// Print the reduced basis of a named ideal.
    Gb {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: Option<usize>,
        /// Ideal name: J, P, I, N_j, M_j (e.g. N_2), or ladder.
        #[arg(long)]
        ideal: String,
        #[arg(long, value_enum, default_value = "degrevlex")]
        order: OrderArg,
    },
}

fn family_tag(f: FamilyArg) -> FamilyTag {
    match f {
        FamilyArg::Cloned => FamilyTag::Cloned,
        FamilyArg::Zeros => FamilyTag::Zeros,
    }
}

fn write_out(bytes: &[u8], out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)
        }
    }
}

fn emit_report(report: &Report, format: FormatArg, out: Option<&PathBuf>) -> ExitCode {
    let fmt = match format {
        FormatArg::Json => Format::Json,
        FormatArg::Table => Format::Table,
    };
    let bytes = emit(report, fmt);
    if let Err(e) = write_out(&bytes, out) {
        eprintln!("failed to write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}

fn config_exit(err: &CliError) -> ExitCode {
    eprintln!("{err}");
    match err {
        CliError::Config(_) => ExitCode::from(2),
        CliError::Engine(_) => ExitCode::from(2),
    }
}

fn run_command(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Run {
            family,
            m,
            r,
            checks,
            seed,
            primes,
            budget_ms,
            config,
            out,
            format,
        } => {
            let cfg: ScenarioConfig = if let Some(path) = config {
                match std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))
                    .and_then(|text| {
                        serde_json::from_str(&text)
                            .map_err(|e| CliError::Config(format!("bad config: {e}")))
                    }) {
                    Ok(cfg) => cfg,
                    Err(e) => return config_exit(&e),
                }
            } else {
                let (Some(family), Some(m)) = (family, m) else {
                    return config_exit(&CliError::Config(
                        "--family and --m are required without --config".into(),
                    ));
                };
                let primes = primes.map(|list| {
                    list.split(',')
                        .filter_map(|p| p.trim().parse().ok())
                        .collect()
                });
                ScenarioConfig {
                    family: family_tag(family),
                    m,
                    r,
                    checks: checks.split(',').map(|s| s.trim().to_string()).collect(),
                    seed,
                    primes,
                    budget: Budget {
                        ms: budget_ms,
                        ..Budget::default()
                    },
                }
            };
            match detlab_cli::run(&cfg) {
                Ok(report) => emit_report(&report, format, out.as_ref()),
                Err(e) => config_exit(&e),
            }
        }
        Command::Conjectures {
            m,
            r,
            seed,
            budget_ms,
            out,
            format,
        } => {
            let cfg = ScenarioConfig {
                family: FamilyTag::Zeros,
                m,
                r: Some(r),
                checks: vec!["all".into()],
                seed,
                primes: None,
                budget: Budget {
                    ms: budget_ms,
                    ..Budget::default()
                },
            };
            match conjecture::conjecture_harness(&cfg) {
                Ok(report) => emit_report(&report, format, out.as_ref()),
                Err(e) => config_exit(&e),
            }
        }
        Command::Matrix { spec, print } => {
            let text = match std::fs::read_to_string(&spec) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", spec.display());
                    return ExitCode::from(2);
                }
            };
            let spec: MatrixSpec = match serde_json::from_str(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("bad matrix spec: {e}");
                    return ExitCode::from(2);
                }
            };
            let mat = match spec.build() {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            match print {
                PrintArg::Det => println!("{}", mat.determinant()),
                PrintArg::Adjugate => {
                    let adj = mat.adjugate();
                    for i in 0..adj.nrows() {
                        let row: Vec<String> =
                            (0..adj.ncols()).map(|j| adj.at(i, j).to_string()).collect();
                        println!("[{}]", row.join(", "));
                    }
                }
                PrintArg::Gradient => match mat.gradient_generators() {
                    Ok(gens) => {
                        for (v, g) in gens.iter().enumerate() {
                            println!("d/d{} : {}", mat.table().name(v), g);
                        }
                    }
                    Err(e) => {
                        eprintln!("{e}");
                        return ExitCode::from(2);
                    }
                },
            }
            ExitCode::SUCCESS
        }
        Command::Gb {
            family,
            m,
            r,
            ideal,
            order,
        } => {
            let order = match order {
                OrderArg::Degrevlex => MonomialOrder::DegRevLex,
                OrderArg::Lex => MonomialOrder::Lex,
            };
            match named_ideal(family_tag(family), m, r, &ideal, order) {
                Ok(id) => match buchberger(&id, &GbCaps::default()) {
                    Ok(gb) => {
                        for e in &gb.elements {
                            println!("{}", e.canonical_string(order));
                        }
                        ExitCode::SUCCESS
                    }
                    Err(e) => {
                        eprintln!("{e}");
                        ExitCode::from(2)
                    }
                },
                Err(e) => config_exit(&e),
            }
        }
    }
}

fn named_ideal(
    family: FamilyTag,
    m: usize,
    r: Option<usize>,
    name: &str,
    order: MonomialOrder,
) -> Result<Ideal, CliError> {
    let spec = match family {
        FamilyTag::Cloned => MatrixSpec::cloned(m),
        FamilyTag::Zeros => MatrixSpec::zeros(
            m,
            r.ok_or_else(|| CliError::Config("zeros family requires --r".into()))?,
        ),
    };
    let mat = spec.build().map_err(CliError::Engine)?;
    let table = mat.table().clone();
    let ideal = |gens| Ideal::new(table.clone(), gens, order);
    match name {
        "J" => Ok(ideal(mat.gradient_generators().map_err(CliError::Engine)?)),
        "P" | "I" => Ok(ideal(mat.submaximal_minors())),
        "ladder" => {
            if family != FamilyTag::Zeros {
                return Err(CliError::Config("ladder is defined for the zeros family".into()));
            }
            let r = r.expect("validated");
            let (ytable, gens) = hessian::polar_ladder_minors(m, r).map_err(CliError::Engine)?;
            Ok(Ideal::new(ytable, gens, order))
        }
        other => {
            let (side, j) = if let Some(j) = other.strip_prefix("N_") {
                (StripSide::Rows, j)
            } else if let Some(j) = other.strip_prefix("M_") {
                (StripSide::Cols, j)
            } else {
                return Err(CliError::Config(format!(
                    "unknown ideal {other}; expected J, P, I, N_j, M_j or ladder"
                )));
            };
            let j: usize = j
                .parse()
                .map_err(|_| CliError::Config(format!("bad strip index in {other}")))?;
            Ok(ideal(
                mat.corner_strip_minors(j, side).map_err(CliError::Engine)?,
            ))
        }
    }
}

fn main() -> ExitCode {
    run_command(Cli::parse())
}
