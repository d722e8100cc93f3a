use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rigid_fingerprint::catalog::{fibers, CatalogRecord};
use rigid_fingerprint::checks::{run_suite, SUITES};
use rigid_fingerprint::engine::{ConditionSet, FingerprintOptions, IiiVariant};
use rigid_fingerprint::partition::{
    enumerate_rigid, enumerate_rigid_pairs, parse_partition, OperatorPair, Partition, Theory,
};
use rigid_fingerprint::render::{render_tagged, render_trace};
use rigid_fingerprint::tagged::{combine, CombineMode, TieBreak};
use rigid_fingerprint::{fingerprint, Error};

/// Largest rank accepted by the enumerating verbs.
const MAX_RANK: u32 = 30;

#[derive(Parser)]
#[command(name = "rigid-fp", version, about = "Fingerprints of rigid classes in the B, C and D theories")]
struct Cli {
    /// Emit JSON lines instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List rigid partitions (or rigid pairs) of a theory and rank.
    Enumerate {
        #[arg(long)]
        theory: Theory,
        #[arg(long, value_parser = rank_parser)]
        rank: u32,
        /// List rigid pairs (lambda'; lambda'') instead of partitions.
        #[arg(long)]
        pairs: bool,
    },
    /// Compute the fingerprint of one pair.
    Fingerprint {
        #[arg(long)]
        theory: Theory,
        /// lambda', e.g. "2^2 1" or "2,2,1"; use "()" for the empty partition.
        lambda_prime: String,
        /// lambda'' (empty when omitted).
        lambda_dprime: Option<String>,
        #[command(flatten)]
        options: OptionFlags,
        /// Show the result under every combine mode, tie-break and condition (iii) variant.
        #[arg(long)]
        compare: bool,
    },
    /// Run an invariant suite over all enumerated inputs.
    Check {
        #[arg(value_parser = suite_parser)]
        suite: String,
        /// Largest rank to sweep (suite default when omitted).
        #[arg(long, value_parser = rank_parser)]
        rank: Option<u32>,
    },
    /// Group rigid pairs by fingerprint and print every fiber with two or more members.
    Fibers {
        #[arg(long)]
        theory: Theory,
        #[arg(long, value_parser = rank_parser)]
        rank: u32,
        #[command(flatten)]
        options: OptionFlags,
    },
    /// Draw the combined Young diagram and the Sp change markers.
    Render {
        #[arg(long)]
        theory: Theory,
        lambda_prime: String,
        lambda_dprime: Option<String>,
        #[command(flatten)]
        options: OptionFlags,
    },
}

#[derive(Args)]
struct OptionFlags {
    #[arg(long, value_name = "interleave|sum")]
    mode: Option<CombineMode>,
    #[arg(long, value_name = "so|sp|vacuous")]
    iii: Option<IiiVariant>,
    #[arg(long = "tie-break", value_name = "prime|dprime")]
    tie_break: Option<TieBreak>,
    #[arg(long, value_name = "i,ii,iii")]
    conditions: Option<ConditionSet>,
}

impl OptionFlags {
    fn resolve(&self, theory: Theory) -> FingerprintOptions {
        let mut opts = FingerprintOptions::default_for(theory);
        if let Some(m) = self.mode {
            opts = opts.with_mode(m);
        }
        if let Some(v) = self.iii {
            opts = opts.with_variant(v);
        }
        if let Some(t) = self.tie_break {
            opts = opts.with_tie_break(t);
        }
        if let Some(c) = self.conditions {
            opts = opts.with_conditions(c);
        }
        opts
    }
}

fn rank_parser(s: &str) -> Result<u32, String> {
    let n: u32 = s.parse().map_err(|e| format!("{e}"))?;
    if n > MAX_RANK {
        return Err(format!("rank {n} exceeds the maximum {MAX_RANK}"));
    }
    Ok(n)
}

fn suite_parser(s: &str) -> Result<String, String> {
    if SUITES.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("unknown suite `{s}`; expected one of {}", SUITES.join(", ")))
    }
}

/// Failure modes that map onto exit codes.
enum Failure {
    Usage(String),
    Violation,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let out: Box<dyn Write> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut out = out;
    let outcome = run(&cli, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn pair_from(theory: Theory, prime: &str, dprime: Option<&str>) -> Result<OperatorPair, Failure> {
    let a = parse_partition(prime)?;
    let b = match dprime {
        Some(s) => parse_partition(s)?,
        None => Partition::empty(),
    };
    Ok(OperatorPair::new(a, b, theory)?)
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match &cli.command {
        Command::Enumerate { theory, rank, pairs } => {
            if *pairs {
                for p in enumerate_rigid_pairs(*theory, *rank) {
                    if cli.json {
                        writeln!(out, "{}", serde_json::to_string(&p).expect("pairs serialize"))?;
                    } else {
                        writeln!(out, "{}; {}", p.lambda_prime, p.lambda_dprime)?;
                    }
                }
            } else {
                for p in enumerate_rigid(*theory, *rank) {
                    if cli.json {
                        writeln!(out, "{}", serde_json::to_string(&p).expect("partitions serialize"))?;
                    } else {
                        writeln!(out, "{p}")?;
                    }
                }
            }
        }
        Command::Fingerprint { theory, lambda_prime, lambda_dprime, options, compare } => {
            let pair = pair_from(*theory, lambda_prime, lambda_dprime.as_deref())?;
            let grid = if *compare { comparison_grid(*theory) } else { vec![options.resolve(*theory)] };
            for opts in grid {
                let record = CatalogRecord::compute(&pair, &opts);
                if cli.json {
                    writeln!(out, "{}", record.to_json_line())?;
                } else {
                    write_record(out, &record, *compare)?;
                }
            }
        }
        Command::Check { suite, rank } => {
            let report = run_suite(suite, *rank)?;
            if cli.json {
                writeln!(out, "{}", serde_json::to_string(&report).expect("reports serialize"))?;
            } else {
                write!(out, "{report}")?;
            }
            if !report.passed() {
                return Err(Failure::Violation);
            }
        }
        Command::Fibers { theory, rank, options } => {
            let report = fibers(*theory, *rank, &options.resolve(*theory));
            if cli.json {
                writeln!(out, "{}", serde_json::to_string(&report).expect("reports serialize"))?;
            } else {
                writeln!(
                    out,
                    "{} rank {}: {} rigid pairs, {} diagnostics, {} fibers with two or more members",
                    report.theory,
                    report.rank,
                    report.pairs,
                    report.diagnostics,
                    report.fibers.len()
                )?;
                for f in &report.fibers {
                    writeln!(out, "[{}; {}] ({} members)", f.alpha, f.beta, f.members.len())?;
                    for m in &f.members {
                        writeln!(out, "  {}; {}", m.lambda_prime, m.lambda_dprime)?;
                    }
                }
            }
        }
        Command::Render { theory, lambda_prime, lambda_dprime, options } => {
            let pair = pair_from(*theory, lambda_prime, lambda_dprime.as_deref())?;
            let opts = options.resolve(*theory);
            let tp = combine(&pair, opts.combine_mode, opts.tie_break);
            let result = fingerprint(&pair, &opts);
            writeln!(out, "combined ({}):", opts.combine_mode)?;
            write!(out, "{}", render_tagged(&tp))?;
            writeln!(out, "after Sp:")?;
            write!(out, "{}", render_trace(&result.trace))?;
        }
    }
    Ok(())
}

fn comparison_grid(theory: Theory) -> Vec<FingerprintOptions> {
    let base = FingerprintOptions::default_for(theory);
    let mut grid = Vec::new();
    for mode in CombineMode::ALL {
        let ties: &[TieBreak] = if mode == CombineMode::Interleave { &TieBreak::ALL } else { &[TieBreak::Prime] };
        for &tb in ties {
            for variant in IiiVariant::ALL {
                grid.push(base.with_mode(mode).with_tie_break(tb).with_variant(variant));
            }
        }
    }
    grid
}

fn write_record(out: &mut dyn Write, r: &CatalogRecord, compact: bool) -> io::Result<()> {
    let result = match (&r.alpha, &r.beta) {
        (Some(a), Some(b)) => format!("alpha {a}  beta {b}"),
        _ => {
            let parts: Vec<String> = r
                .diagnostics
                .iter()
                .map(|u| {
                    format!(
                        "{} value {} (multiplicity {}, tau {:+})",
                        if u.value % 2 == 0 { "even" } else { "odd" },
                        u.value,
                        u.multiplicity,
                        u.tau
                    )
                })
                .collect();
            format!("diagnostic: unpaired {}", parts.join(", "))
        }
    };
    if compact {
        return writeln!(
            out,
            "mode {:<10} tie-break {:<6} iii {:<7} -> {result}",
            r.combine_mode.to_string(),
            r.tie_break.to_string(),
            r.iii_variant.to_string()
        );
    }
    writeln!(out, "theory {} rank {}", r.theory, r.rank)?;
    writeln!(out, "lambda'  {}", r.lambda_prime)?;
    writeln!(out, "lambda'' {}", r.lambda_dprime)?;
    writeln!(
        out,
        "options  mode {}, tie-break {}, iii {}, conditions {}",
        r.combine_mode, r.tie_break, r.iii_variant, r.conditions
    )?;
    writeln!(out, "mu       {}", r.mu)?;
    writeln!(out, "{result}")?;
    for b in &r.blocks {
        let label = b.operator_label.as_deref().unwrap_or("-");
        writeln!(out, "block    rows {}-{} {} {label}", b.start + 1, b.end, b.kind)?;
    }
    Ok(())
}
