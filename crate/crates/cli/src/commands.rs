use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use bcncat_core::{
    bool_pow, categorize_all, categorize_pair, classify_by_powers, condensation_category_matrix,
    power_trace_capped, time_step_sets, Analysis, CategorizeOptions, DEFAULT_ORACLE_CAP,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::document::{parse_bcn, BcnDocument};
use crate::error::CliError;
use crate::output::{self, Format};

#[derive(Debug, Parser)]
#[command(name = "bcncat", version, about = "Reachability categories of Boolean control networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    State,
    Condensation,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// SCCs, loop numbers, controllability and primitivity.
    Analyze {
        #[arg(long)]
        input: PathBuf,
    },
    /// State-level category matrix.
    Categorize {
        #[arg(long)]
        input: PathBuf,
        /// Write the matrix here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the condensation-level matrix to this path.
        #[arg(long)]
        condensed: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Categorize every pair separately instead of once per SCC pair.
        #[arg(long)]
        no_broadcast: bool,
        /// Reference matrix; differing entries are reported on stderr.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Category matrix from the power sequence.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
        /// Compare with the structural categorizer; exit 2 on mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Step counts at which `to` is reachable from `from`.
    Reachable {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, default_value_t = 64)]
        kmax: usize,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
    },
    /// Full derivation for one pair.
    Pair {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Reachability in exactly `k` steps.
    FixedTime {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Graphviz output.
    ExportDot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphKind::State)]
        graph: GraphKind,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path) -> Result<(BcnDocument, Analysis), CliError> {
    let doc = parse_bcn(&read(path)?)?;
    let bcn = doc.to_bcn()?;
    Ok((doc, Analysis::from_bcn(&bcn)))
}

fn state_index(field: &str, value: usize, n: usize) -> Result<usize, CliError> {
    if value == 0 || value > n {
        return Err(CliError::Invalid {
            field: field.into(),
            message: format!("state {value} out of range [1,{n}]"),
        });
    }
    Ok(value - 1)
}

/// Runs one command, writing results to `out` and warnings to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let text = match cli.command {
        Command::Analyze { input } => {
            let (doc, ctx) = load(&input)?;
            output::analysis_summary(&ctx, doc.name.as_deref())?
        }
        Command::Categorize {
            input,
            out: out_path,
            condensed,
            format,
            no_broadcast,
            expect,
        } => {
            let (_, ctx) = load(&input)?;
            let opts = if no_broadcast {
                CategorizeOptions::exhaustive()
            } else {
                CategorizeOptions::default()
            };
            let c = categorize_all(&ctx, opts);
            let mut mismatches = 0;
            if let Some(path) = expect {
                let reference = output::parse_category_matrix(&read(&path)?)?;
                if reference.dim() != c.dim() {
                    return Err(CliError::Invalid {
                        field: "matrix".into(),
                        message: format!(
                            "expected matrix has dimension {}, computed {}",
                            reference.dim(),
                            c.dim()
                        ),
                    });
                }
                let trace = power_trace_capped(ctx.one_step(), DEFAULT_ORACLE_CAP).ok();
                for (j, i, ours, theirs) in c.differences(&reference) {
                    mismatches += 1;
                    let oracle = trace
                        .as_ref()
                        .map(|t| t.entry_category(j, i).code().to_string())
                        .unwrap_or_else(|| "n/a".into());
                    let _ = writeln!(
                        err,
                        "warning: C[{},{}] computed {} expected {} (oracle {oracle})",
                        j + 1,
                        i + 1,
                        ours.code(),
                        theirs.code()
                    );
                }
            }
            if let Some(path) = condensed {
                let cc = condensation_category_matrix(&ctx);
                write_file(&path, &output::condensed_matrix(&cc, &ctx, format))?;
            }
            let mut extra = BTreeMap::new();
            extra.insert("broadcast", Value::Bool(!no_broadcast));
            if mismatches > 0 {
                extra.insert("expect_mismatches", Value::from(mismatches));
            }
            let text = output::state_matrix(&c, format, extra);
            match out_path {
                Some(path) => {
                    write_file(&path, &text)?;
                    String::new()
                }
                None => text,
            }
        }
        Command::Oracle {
            input,
            oracle_cap,
            check,
        } => {
            let (_, ctx) = load(&input)?;
            let trace = power_trace_capped(ctx.one_step(), oracle_cap)?;
            let by_powers = classify_by_powers(&trace);
            let mut extra = BTreeMap::new();
            extra.insert("transient", Value::from(trace.transient()));
            extra.insert("period", Value::from(trace.period()));
            let text = output::state_matrix(&by_powers, Format::Json, extra);
            if check {
                let structural = categorize_all(&ctx, CategorizeOptions::default());
                let diffs = by_powers.differences(&structural);
                if let Some(&(j, i, o, s)) = diffs.first() {
                    out.write_all(text.as_bytes()).ok();
                    return Err(CliError::Inconsistent(format!(
                        "{} entries differ; first C[{},{}]: oracle {} categorizer {}",
                        diffs.len(),
                        j + 1,
                        i + 1,
                        o.code(),
                        s.code()
                    )));
                }
            }
            text
        }
        Command::Reachable {
            input,
            from,
            to,
            kmax,
            oracle_cap,
        } => {
            let (_, ctx) = load(&input)?;
            let i = state_index("from", from, ctx.order())?;
            let j = state_index("to", to, ctx.order())?;
            if kmax == 0 {
                return Err(CliError::Invalid {
                    field: "kmax".into(),
                    message: "must be at least 1".into(),
                });
            }
            let sets = time_step_sets(ctx.one_step(), i, j, kmax, oracle_cap)?;
            output::time_steps(&sets)
        }
        Command::Pair { input, from, to } => {
            let (_, ctx) = load(&input)?;
            let i = state_index("from", from, ctx.order())?;
            let j = state_index("to", to, ctx.order())?;
            output::pair_report(&categorize_pair(&ctx, i, j))
        }
        Command::FixedTime { input, k, format } => {
            let (_, ctx) = load(&input)?;
            if k == 0 {
                return Err(CliError::Invalid {
                    field: "k".into(),
                    message: "must be at least 1".into(),
                });
            }
            output::fixed_time(k, &bool_pow(ctx.one_step(), k)?, format)
        }
        Command::ExportDot { input, graph } => {
            let (_, ctx) = load(&input)?;
            match graph {
                GraphKind::State => output::state_dot(&ctx),
                GraphKind::Condensation => output::condensation_dot(&ctx),
            }
        }
    };
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}
