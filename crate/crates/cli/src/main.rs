use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use stratimed_cli::config::DEFAULT_TIMEOUT_SECONDS;
use stratimed_cli::{bench_sweep, generate_voting, render_table, run, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(name = "stratimed", version, about = "Strategy synthesis for networks of timed agents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check or synthesise a property on a model.
    Verify {
        model: PathBuf,
        property: PathBuf,
        /// Seconds; 0 disables the timeout.
        #[arg(long, default_value_t = DEFAULT_TIMEOUT_SECONDS)]
        timeout: u64,
        /// Zone-graph node budget; 0 disables it.
        #[arg(long, default_value_t = 0)]
        max_states: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Cross-check the result against the brute-force region oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Write a voting model and its property.
    GenVoting {
        #[arg(long)]
        voters: usize,
        #[arg(long)]
        candidates: usize,
        /// Comma-separated voter indices, e.g. `1,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        coalition: Vec<usize>,
        /// Output directory; without it the model and property go to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the voting family over a grid of sizes.
    Bench {
        /// `A..B` or a single count.
        #[arg(long, value_parser = parse_range)]
        voters: Counts,
        #[arg(long, value_parser = parse_range)]
        candidates: Counts,
        #[arg(long, value_delimiter = ',', required = true)]
        coalition_sizes: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_TIMEOUT_SECONDS)]
        timeout: u64,
        /// `json` prints the measured points instead of the table.
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

#[derive(Clone, Debug)]
struct Counts(Vec<usize>);

fn parse_range(s: &str) -> Result<Counts, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{}`: {}", t, e));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {}", s));
            }
            Ok(Counts((a..=b).collect()))
        }
        None => Ok(Counts(vec![num(s)?])),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            model,
            property,
            timeout,
            max_states,
            format,
            oracle,
            threads,
        } => {
            let config = RunConfig {
                timeout_seconds: timeout,
                max_states,
                format,
                oracle,
                threads,
                ..RunConfig::new(model, property)
            };
            let out = run(&config);
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            ExitCode::from(out.status.code() as u8)
        }
        Command::GenVoting {
            voters,
            candidates,
            coalition,
            out,
        } => {
            let coalition: BTreeSet<usize> = coalition.into_iter().collect();
            let (model, property) = match generate_voting(voters, candidates, &coalition) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return ExitCode::from(3);
                }
            };
            match out {
                None => {
                    print!("{}", model);
                    print!("{}", property);
                }
                Some(dir) => {
                    let stem = format!("voting_v{}_c{}", voters, candidates);
                    let model_path = dir.join(format!("{}.model", stem));
                    let members: Vec<String> = coalition.iter().map(|i| i.to_string()).collect();
                    let prop_path = dir.join(format!("{}_a{}.prop", stem, members.join("_")));
                    let written = std::fs::create_dir_all(&dir)
                        .and_then(|_| std::fs::write(&model_path, &model))
                        .and_then(|_| std::fs::write(&prop_path, &property));
                    if let Err(e) = written {
                        eprintln!("error: cannot write to {}: {}", dir.display(), e);
                        return ExitCode::from(3);
                    }
                    println!("{}", model_path.display());
                    println!("{}", prop_path.display());
                }
            }
            ExitCode::SUCCESS
        }
        Command::Bench {
            voters,
            candidates,
            coalition_sizes,
            timeout,
            format,
        } => {
            let (voters, candidates) = (voters.0, candidates.0);
            if voters.contains(&0) || candidates.contains(&0) {
                eprintln!("error: voter and candidate counts start at 1");
                return ExitCode::from(3);
            }
            let points = bench_sweep(&voters, &candidates, &coalition_sizes, timeout);
            match format {
                OutputFormat::Text => print!("{}", render_table(&points)),
                OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&points).expect("points serialize")),
            }
            ExitCode::SUCCESS
        }
    }
}
