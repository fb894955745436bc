mod args;
mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Command, Format, RunConfig};
use commands::CliError;

fn default_format(command: &Command) -> Format {
    match command {
        Command::Window { .. } => Format::Json,
        _ => Format::Csv,
    }
}

fn execute(cfg: &RunConfig) -> Result<(), CliError> {
    let format = cfg.common.format.unwrap_or_else(|| default_format(&cfg.command));
    if cfg.common.gnuplot.is_some() && format != Format::Csv {
        return Err(CliError::Usage("--gnuplot needs --format csv".into()));
    }
    let table = commands::run(&cfg.command, &cfg.common)?;
    let omega0 = cfg.common.omega0;

    let sink: Box<dyn Write> = match &cfg.common.output {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(sink);
    match format {
        Format::Csv => output::write_csv(&mut out, &table, omega0)?,
        Format::Json => output::write_json(&mut out, &table, omega0)?,
    }
    out.flush()?;

    if let Some(script) = &cfg.common.gnuplot {
        let data = cfg.common.output.as_ref().map_or("data.csv".to_string(), |p| p.display().to_string());
        let (x, ys) = commands::plot_columns(&cfg.command);
        std::fs::write(script, output::gnuplot_script(&table, &data, x, &ys))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    match execute(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
