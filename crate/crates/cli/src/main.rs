use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use classdiv_cli::count::{describe_fit, write_count_csv};
use classdiv_cli::{
    classnum, parse_rows, run_classnum, run_count, run_generate, run_verify, write_rows, CliError, Config, Format,
    VerifyOptions,
};

#[derive(Parser)]
#[command(
    name = "classdiv",
    version,
    about = "Real quadratic fields with class number divisible by 2^l * 3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    workers: Option<usize>,
    /// Ignore the t range of the derived boxes.
    #[arg(long)]
    no_t_range: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate solution triples and write them sorted by (d, m, n, t).
    Generate(RunArgs),
    /// Re-check a triple file.
    Verify {
        input: PathBuf,
        /// Supplies `l` and `d_cap` when the flags are not given.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        d_cap: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        workers: Option<usize>,
        /// Write the full report as JSON here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Count distinct d over the configured X sweep.
    Count(RunArgs),
    /// Class data for each d.
    Classnum {
        #[arg(required = true)]
        d: Vec<u64>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load(args: &RunArgs) -> Result<Config, CliError> {
    let mut cfg = Config::from_path(&args.config)?;
    if let Some(w) = args.workers {
        cfg.workers = w;
    }
    if args.no_t_range {
        cfg.enforce_t_range = false;
    }
    if let Some(o) = &args.output {
        cfg.output = Some(o.clone());
    }
    Ok(cfg)
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn format_for(flag: Option<Format>, path: Option<&Path>) -> Format {
    flag.unwrap_or_else(|| match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("csv") => Format::Csv,
        _ => Format::Jsonl,
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate(args) => {
            let cfg = load(&args)?;
            let g = run_generate(&cfg)?;
            let out = cfg.output.as_deref();
            write_rows(sink(out)?, &g.rows(), format_for(args.format, out))?;
            eprintln!(
                "triples: {} distinct d: {} seconds: {:.3}",
                g.triples.len(),
                g.distinct_d,
                g.elapsed.as_secs_f64()
            );
            Ok(())
        }
        Command::Verify {
            input,
            config,
            l,
            d_cap,
            format,
            workers,
            output,
        } => {
            let cfg = config.as_deref().map(Config::from_path).transpose()?;
            let l = l
                .or(cfg.as_ref().map(|c| c.l))
                .ok_or_else(|| CliError::Config("verify needs --l or --config".into()))?;
            let d_cap = d_cap.or(cfg.as_ref().and_then(|c| c.d_cap)).unwrap_or(u64::MAX);
            let workers = workers.or(cfg.as_ref().map(|c| c.workers)).unwrap_or(1);
            let text = std::fs::read_to_string(&input)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", input.display())))?;
            let format = format.or_else(|| match input.extension().and_then(|e| e.to_str()) {
                Some("csv") => Some(Format::Csv),
                Some("jsonl") => Some(Format::Jsonl),
                _ => None,
            });
            let rows = parse_rows(&text, format)?;
            let report = run_verify(&rows, VerifyOptions { l, d_cap, workers })?;
            if let Some(p) = output {
                let mut w = sink(Some(&p))?;
                serde_json::to_writer_pretty(&mut w, &report).map_err(|e| CliError::Io(e.into()))?;
                w.write_all(b"\n")?;
                w.flush()?;
            }
            println!(
                "rows: {} checked: {} skipped: {} three_checks: {} two_l_checks: {} failures: {}",
                report.rows,
                report.checked,
                report.skipped,
                report.three_checks,
                report.two_l_checks,
                report.failures.len()
            );
            for f in &report.failures {
                println!("line {}: {:?}: {}", f.line, f.check, f.detail);
            }
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Verification(report.failures.len()))
            }
        }
        Command::Count(args) => {
            let cfg = load(&args)?;
            let report = run_count(&cfg, &cfg.sweep()?)?;
            write_count_csv(sink(cfg.output.as_deref())?, &report)?;
            eprintln!("{}", describe_fit(report.fit.as_ref()));
            Ok(())
        }
        Command::Classnum { d, output, format } => {
            let rows = run_classnum(&d);
            let out = output.as_deref();
            let fmt = format.unwrap_or(if out.is_some_and(|p| p.extension().is_some_and(|e| e == "jsonl")) {
                Format::Jsonl
            } else {
                Format::Csv
            });
            classnum::write_classnum(sink(out)?, &rows, fmt)?;
            Ok(())
        }
    }
}
