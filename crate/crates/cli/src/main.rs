mod args;
mod commands;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use dunklpoly::report::{emit, first_failure, Format};

use args::{Cli, Command, OutputArgs};
use commands::Output;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(dunklpoly::Error),
    Io(String),
}

impl From<dunklpoly::Error> for CliError {
    fn from(e: dunklpoly::Error) -> Self {
        CliError::Core(e)
    }
}

const THREADS_VAR: &str = "DUNKLPOLY_THREADS";

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Io(e.to_string()))
}

fn write_to(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if path == Path::new("-") {
        std::io::stdout().write_all(bytes).map_err(|e| CliError::Io(e.to_string()))
    } else {
        std::fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

/// Prints the text part and writes records where requested; the text goes to
/// stderr when the records themselves are streamed to stdout.
fn finish(out: Output, output: Option<&OutputArgs>) -> Result<bool, CliError> {
    let target = output.and_then(|o| {
        o.json
            .as_ref()
            .map(|p| (p, Format::Json))
            .or_else(|| o.csv.as_ref().map(|p| (p, Format::Csv)))
    });
    let to_stdout = target.is_some_and(|(p, _)| p.as_path() == Path::new("-"));
    if to_stdout {
        eprint!("{}", out.text);
    } else {
        print!("{}", out.text);
    }
    if let Some((path, format)) = target {
        let mut bytes = emit(&out.records, format)?;
        if format == Format::Json {
            bytes.push(b'\n');
        }
        write_to(path, &bytes)?;
    }
    if let Some(rec) = first_failure(&out.records) {
        eprintln!(
            "verification failed: {} {} params={} degrees={} residual={} tolerance={}",
            rec.suite, rec.target, rec.params, rec.degrees, rec.residual, rec.tolerance
        );
        return Ok(false);
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Coeffs { family, n, table } => finish(commands::coeffs(&family, n, table)?, None),
        Command::Poly { family, n, explicit } => finish(commands::poly(&family, n, explicit)?, None),
        Command::Eigencheck { operator, params, eps, op_alpha, cap, output } => finish(
            commands::eigencheck_cmd(&operator, &params, &eps, &op_alpha, cap)?,
            Some(&output),
        ),
        Command::Algebra { family, eps, degree, output } => {
            finish(commands::algebra(&family, &eps, degree)?, Some(&output))
        }
        Command::Gram { family, n, matrix, oracle, output } => {
            finish(commands::gram(&family, n, matrix, oracle)?, Some(&output))
        }
        Command::Norms { family, n, exact_n, output } => {
            finish(commands::norms(&family, n, exact_n)?, Some(&output))
        }
        Command::Pearson { params, samples, output } => {
            finish(commands::pearson(&params, samples)?, Some(&output))
        }
        Command::Transform { params, n, output } => finish(commands::transform(&params, n)?, Some(&output)),
        Command::Limits { case, steps, degree_cap, flip_gamma, output } => finish(
            commands::limits(&case, steps, degree_cap, flip_gamma)?,
            Some(&output),
        ),
        Command::WeightSample { family, points, extent, out } => {
            let csv = commands::weight_sample(&family, points, extent)?;
            match out {
                Some(path) => write_to(&path, csv.as_bytes())?,
                None => print!("{csv}"),
            }
            Ok(true)
        }
        Command::Suite { all, criterion, output } => {
            finish(commands::suite_cmd(all, &criterion)?, Some(&output))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
