use std::collections::HashSet;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sandpile::configuration::{is_valid_ipm, is_valid_spm, Configuration, GeneratingSequence};
use sandpile::counting::CountTable;
use sandpile::decompose::decompose_full;
use sandpile::error::Error;
use sandpile::generation::{generate_spm, GenStats, SpmConfigurations};
use sandpile::genseq::{generating_sequence, verify_sequence};
use sandpile::ipm::{ipm_decompose, ipm_generate, ipm_reduce, ipm_staircase_width, IpmCountTable};
use sandpile::oracle::{bfs_ipm, bfs_spm, partitions};
use sandpile::random::uniform_random_spm_many;
use sandpile::staircase::{reduce, staircase_width};

#[derive(Parser)]
#[command(name = "spm", version, about = "Sand pile and ice pile configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of configurations reachable from (n).
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: Option<u64>,
    },
    /// Every reachable configuration, one per line.
    List {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Parts)]
        format: Format,
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Uniform samples from SPM(n).
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Checks a configuration against the forbidden patterns.
    Validate {
        #[arg(long)]
        config: Configuration,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: Option<u64>,
    },
    /// Decomposition chain of the reduced form, outermost step first.
    Decompose {
        #[arg(long)]
        config: Configuration,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: Option<u64>,
    },
    /// A generating sequence reaching the configuration from (n).
    Path {
        #[arg(long)]
        config: Configuration,
    },
    /// Applies a generating sequence to (n).
    Replay {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seq: GeneratingSequence,
    },
    /// Exhaustive generation with recursion counters.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: Option<u64>,
    },
    /// Compares counting, generation and the patterns with brute force.
    Check {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Parts,
    Json,
}

#[derive(Serialize)]
struct SpmRecord<'a> {
    parts: &'a [u32],
    width: usize,
}

#[derive(Serialize)]
struct IpmRecord<'a> {
    parts: &'a [u32],
    basis: [usize; 2],
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("{}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match command {
        Command::Count { n, k: None } => writeln!(out, "{}", CountTable::new(n).count_spm(n)?)?,
        Command::Count { n, k: Some(k) } => {
            writeln!(out, "{}", IpmCountTable::new(n, k as usize).count(n)?)?
        }
        Command::List { n, k, format, limit } => list(&mut out, n, k.map(|k| k as usize), format, limit)?,
        Command::Random { n, seed, count } => {
            let table = CountTable::new(n);
            for c in uniform_random_spm_many(n, &table, seed, count)? {
                writeln!(out, "{}", c)?;
            }
        }
        Command::Validate { config, k } => {
            let v = match k {
                None => is_valid_spm(&config),
                Some(k) => is_valid_ipm(&config, k as usize),
            };
            writeln!(out, "{}", v)?;
            if !v.is_valid() {
                out.flush()?;
                return Err(Failure::Verification(format!("{} is not reachable", config)));
            }
        }
        Command::Decompose { config, k: None } => {
            let r = reduce(&config)?;
            for step in decompose_full(&r).steps {
                writeln!(out, "{}", step)?;
            }
        }
        Command::Decompose { config, k: Some(k) } => {
            if config.is_empty() {
                return Ok(());
            }
            let mut r = ipm_reduce(&config, k as usize)?;
            while !r.is_empty() {
                let d = ipm_decompose(&r)?;
                let u: String = d.u.iter().map(|b| char::from(b'0' + b)).collect();
                writeln!(out, "{} z={} c={} u={}", d.basis, d.z, d.c, u)?;
                r = d.t_prime;
            }
        }
        Command::Path { config } => writeln!(out, "{}", generating_sequence(&config)?)?,
        Command::Replay { n, seq } => match verify_sequence(n, &seq) {
            Ok(c) => writeln!(out, "{}", c)?,
            Err(e @ Error::InvalidStep(_)) => return Err(Failure::Verification(e.to_string())),
            Err(e) => return Err(e.into()),
        },
        Command::Bench { n, k } => {
            let start = Instant::now();
            let stats = match k {
                None => generate_spm(n, |_| {}),
                Some(k) => {
                    let table = IpmCountTable::new(n, k as usize);
                    ipm_generate(n, k as usize, &table, |_| {})?
                }
            };
            bench_report(&mut out, &stats, start.elapsed().as_secs_f64())?;
        }
        Command::Check { max_n, k } => {
            check(max_n, k.map(|k| k as usize))?;
            writeln!(out, "agreement for n <= {}", max_n)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn list<W: Write>(out: &mut W, n: usize, k: Option<usize>, format: Format, limit: Option<u64>) -> Result<(), Failure> {
    let limit = limit.unwrap_or(u64::MAX);
    match k {
        None => {
            for c in SpmConfigurations::new(n).take(limit.try_into().unwrap_or(usize::MAX)) {
                match format {
                    Format::Parts => writeln!(out, "{}", c)?,
                    Format::Json => {
                        let rec = SpmRecord { parts: c.parts(), width: staircase_width(&c) };
                        writeln!(out, "{}", serde_json::to_string(&rec).expect("plain record"))?
                    }
                }
            }
        }
        Some(k) => {
            let table = IpmCountTable::new(n, k);
            let mut written = 0u64;
            let mut failed: Option<io::Error> = None;
            ipm_generate(n, k, &table, |c| {
                if written >= limit || failed.is_some() {
                    return;
                }
                let line = match format {
                    Format::Parts => writeln!(out, "{}", c),
                    Format::Json => {
                        let b = ipm_staircase_width(c, k).expect("generated configurations are valid");
                        let rec = IpmRecord { parts: c.parts(), basis: [b.w, b.l] };
                        writeln!(out, "{}", serde_json::to_string(&rec).expect("plain record"))
                    }
                };
                written += 1;
                failed = line.err();
            })?;
            if let Some(e) = failed {
                return Err(e.into());
            }
        }
    }
    Ok(())
}

fn bench_report<W: Write>(out: &mut W, s: &GenStats, secs: f64) -> io::Result<()> {
    writeln!(out, "objects {}", s.yields)?;
    writeln!(out, "nodes {}", s.nodes)?;
    writeln!(out, "nodes/object {:.4}", s.nodes as f64 / s.yields.max(1) as f64)?;
    writeln!(out, "work/object {:.4}", s.work as f64 / s.yields.max(1) as f64)?;
    writeln!(out, "time {:.3}s", secs)?;
    if s.yields > 0 {
        writeln!(out, "ns/object {:.1}", secs * 1e9 / s.yields as f64)?;
    }
    Ok(())
}

/// Sweeps `n = 0..=max_n`, stopping at the first disagreement.
fn check(max_n: usize, k: Option<usize>) -> Result<(), Failure> {
    let diverge = |n: usize, what: &str| Failure::Verification(format!("divergence at n={}: {}", n, what));
    let spm_table = CountTable::new(max_n);
    let ipm_table = k.map(|k| IpmCountTable::new(max_n, k));
    for n in 0..=max_n {
        let oracle = match k {
            None => bfs_spm(n)?,
            Some(k) => bfs_ipm(n, k)?,
        }
        .members;
        let count = match &ipm_table {
            None => spm_table.count_spm(n)?,
            Some(t) => t.count(n)?,
        };
        if count != oracle.len().into() {
            return Err(diverge(n, &format!("count {} but {} reachable", count, oracle.len())));
        }

        let mut generated = HashSet::new();
        let mut repeated = None;
        let mut note = |c: &Configuration| {
            if !generated.insert(c.clone()) && repeated.is_none() {
                repeated = Some(c.clone());
            }
        };
        match (&ipm_table, k) {
            (Some(t), Some(k)) => {
                ipm_generate(n, k, t, &mut note)?;
            }
            _ => {
                generate_spm(n, &mut note);
            }
        }
        if let Some(c) = repeated {
            return Err(diverge(n, &format!("{} generated twice", c)));
        }
        if let Some(c) = oracle.symmetric_difference(&generated).next() {
            return Err(diverge(n, &format!("{} is in exactly one of generated and reachable", c)));
        }

        let mut mismatch = None;
        partitions(n, |p| {
            if mismatch.is_some() {
                return;
            }
            let c = Configuration::new(p.to_vec()).expect("partitions are sorted");
            let valid = match k {
                None => is_valid_spm(&c).is_valid(),
                Some(k) => is_valid_ipm(&c, k).is_valid(),
            };
            if valid != oracle.contains(&c) {
                mismatch = Some(c);
            }
        });
        if let Some(c) = mismatch {
            return Err(diverge(n, &format!("pattern test disagrees on {}", c)));
        }

        if k.is_none() {
            for c in &oracle {
                let replayed = generating_sequence(c).and_then(|s| verify_sequence(n, &s));
                if replayed.as_ref() != Ok(c) {
                    return Err(diverge(n, &format!("certificate for {} does not replay", c)));
                }
            }
        }
    }
    Ok(())
}
