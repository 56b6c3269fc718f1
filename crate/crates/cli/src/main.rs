use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use selfdual_cli::commands::{self, Meta, OracleKind, QcArgs};
use selfdual_cli::config::{parse_axis, parse_list, resolve_field};
use selfdual_cli::output::{render, Format, Projection};
use selfdual_cli::schema::CodeJson;
use selfdual_cli::{CliError, CliResult, ExitKind};
use selfdual_core::oracle::DEFAULT_GUARD;
use selfdual_core::quasicyclic::{Proposition, RhoInputs};
use selfdual_core::Field;

/// Count and enumerate self-dual cyclic, θ-cyclic and quasi-cyclic codes.
#[derive(Parser)]
#[command(name = "selfdual", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Ceiling on exhaustive search candidates.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD)]
    guard: u128,
    /// Exit with status 4 when formula and oracle disagree.
    #[arg(long, global = true)]
    strict: bool,
    /// Leave out the `meta` field (timing), making output byte-stable.
    #[arg(long, global = true)]
    no_meta: bool,
    /// Worker threads for oracle searches.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    p: Option<u32>,
    /// Extension degree of the field over GF(p).
    #[arg(long)]
    m: Option<u32>,
    /// Monic modulus over GF(p), comma-separated, constant term first.
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn field(&self) -> CliResult<Field> {
        resolve_field(self.q, self.p, self.m, self.modulus.as_deref())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Self-dual cyclic count, Λ̄_r and the θ-cyclic count.
    Count {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u32,
    },
    /// Formula against the skew-divisor oracle.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u32,
    },
    /// Sweep `count` over a (q, n, r) grid.
    Table {
        /// Axis syntax: `a,b,c`, `lo..hi`, `lo..=hi`, optional `:step`.
        #[arg(long)]
        q: String,
        #[arg(long)]
        n: String,
        #[arg(long, default_value = "1")]
        r: String,
        /// Add an oracle column.
        #[arg(long)]
        oracle: bool,
    },
    /// Quasi-cyclic count formulas with ρ values, direct and oracle counts.
    Qc {
        #[arg(long)]
        case: Proposition,
        #[arg(long)]
        q: u64,
        /// Monic modulus over GF(p), comma-separated, constant term first.
        #[arg(long)]
        modulus: Option<String>,
        /// Co-index (length 2m), for P5.
        #[arg(long)]
        m: Option<usize>,
        /// Index, for P6 to P10.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        r: u32,
        /// ρ_{G_i} for i = 1, 2, … where not computable.
        #[arg(long)]
        rho_g: Option<String>,
        /// ρ_{H'_i} for i = 1, 2, … where not computable.
        #[arg(long)]
        rho_h: Option<String>,
        /// ρ_{H',H''} where not computable.
        #[arg(long)]
        rho_pair: Option<u128>,
        /// Skip the skew-divisor oracle.
        #[arg(long)]
        no_oracle: bool,
    },
    /// The selection set 𝒜 with generators, and Λ_r-fixedness if --r is set.
    Enumerate {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: Option<u32>,
    },
    /// Brute-force enumeration of self-dual codes.
    Oracle {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, value_enum, default_value = "theta")]
        kind: OracleKind,
    },
    /// Properties of a code read from a JSON file (`-` for stdin).
    Inspect {
        path: String,
    },
}

fn meta(start: Instant) -> Meta {
    Meta { elapsed_ms: start.elapsed().as_secs_f64() * 1e3, version: env!("CARGO_PKG_VERSION") }
}

fn emit<T: serde::Serialize + Projection>(report: &T, format: Format) -> CliResult<()> {
    let text = render(report, format)?;
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).map_err(|e| CliError::failure(e.to_string()))
}

fn read_code(path: &str) -> CliResult<CodeJson> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::usage(e.to_string()))?
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{path}: not a code JSON: {e}")))
}

fn run(cli: Cli) -> CliResult<()> {
    let start = Instant::now();
    let stamp = |slot: &mut Option<Meta>| {
        if !cli.no_meta {
            *slot = Some(meta(start));
        }
    };
    match &cli.command {
        Command::Count { field, n, r } => {
            let mut rep = commands::count(&field.field()?, *n, *r)?;
            stamp(&mut rep.meta);
            emit(&rep, cli.format)
        }
        Command::Verify { field, n, r } => {
            let mut rep = commands::verify(&field.field()?, *n, *r, cli.guard, cli.jobs)?;
            stamp(&mut rep.meta);
            emit(&rep, cli.format)?;
            if cli.strict && !rep.agree {
                return Err(CliError {
                    kind: ExitKind::Disagreement,
                    message: format!("formula {} != oracle {}", rep.formula, rep.oracle),
                });
            }
            Ok(())
        }
        Command::Table { q, n, r, oracle } => {
            let (qs, ns, rs) = (parse_axis(q, "--q")?, parse_axis(n, "--n")?, parse_axis(r, "--r")?);
            let mut rep = commands::table(&qs, &ns, &rs, *oracle, cli.guard, cli.jobs)?;
            stamp(&mut rep.meta);
            emit(&rep, cli.format)?;
            let mismatch = rep.rows.iter().any(|row| row.oracle.is_some_and(|o| o != row.count.theta_cyclic_count));
            if cli.strict && mismatch {
                return Err(CliError { kind: ExitKind::Disagreement, message: "formula and oracle disagree on some rows".into() });
            }
            Ok(())
        }
        Command::Qc { case, q, modulus, m, d, r, rho_g, rho_h, rho_pair, no_oracle } => {
            let field = resolve_field(Some(*q), None, None, modulus.as_deref())?;
            let size = match (case, m, d) {
                (Proposition::P5, Some(m), None) => *m,
                (Proposition::P5, _, _) => return Err(CliError::usage("P5 takes the co-index --m (and no --d)")),
                (_, None, Some(d)) => *d,
                (_, _, _) => return Err(CliError::usage(format!("{case} takes the index --d (and no --m)"))),
            };
            let rho = RhoInputs {
                g: rho_g.as_deref().map_or(Ok(Vec::new()), |s| parse_list(s, "--rho-g"))?,
                h_prime: rho_h.as_deref().map_or(Ok(Vec::new()), |s| parse_list(s, "--rho-h"))?,
                pair: *rho_pair,
            };
            let args = QcArgs { case: *case, size, r: *r, rho, guard: cli.guard, skip_oracle: *no_oracle };
            let mut rep = commands::qc(&field, &args)?;
            stamp(&mut rep.meta);
            emit(&rep, cli.format)?;
            if cli.strict && rep.agree == Some(false) {
                return Err(CliError { kind: ExitKind::Disagreement, message: "formula count disagrees with the direct or oracle count".into() });
            }
            Ok(())
        }
        Command::Enumerate { field, n, r } => {
            let mut rep = commands::enumerate(&field.field()?, *n, *r)?;
            stamp(&mut rep.meta);
            emit(&rep, cli.format)
        }
        Command::Oracle { field, n, r, kind } => {
            let mut rep = commands::oracle(&field.field()?, *n, *r, *kind, cli.guard, cli.jobs)?;
            stamp(&mut rep.meta);
            emit(&rep, cli.format)
        }
        Command::Inspect { path } => {
            let mut rep = commands::inspect(&read_code(path)?, cli.guard)?;
            stamp(&mut rep.meta);
            emit(&rep, cli.format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("selfdual: {e}");
            ExitCode::from(e.kind.code() as u8)
        }
    }
}
