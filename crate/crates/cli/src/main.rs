use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use infodist::harness::{
    json_mirror_path, parse_campaign, parse_scenario, run_campaign, run_scenario, write_report,
    write_report_json, HarnessError, HarnessResult, ReportFormat, ReportRow,
};
use infodist::AttackKind;

#[derive(Parser)]
#[command(
    name = "infodist",
    version,
    about = "Audit eavesdropping attacks against information-disturbance bounds"
)]
struct Cli {
    /// Override the seed in the config (master_seed for campaigns).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output path; stdout when omitted (campaigns default to the config's path).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ReportFormat::Csv,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Audit one scenario and print its report row.
    Audit { file: PathBuf },
    /// Audit a seeded ensemble of random attacks.
    Campaign { file: PathBuf },
    /// List built-in attacks.
    Zoo,
    /// Run a scenario's parameter sweep.
    Sweep { file: PathBuf },
}

fn read(path: &Path) -> HarnessResult<Vec<u8>> {
    fs::read(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(text: &str, out: Option<&Path>) -> HarnessResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| HarnessError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn scenario(cli: &Cli, file: &Path, sweep: bool) -> HarnessResult<()> {
    let mut cfg = parse_scenario(&read(file)?)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if sweep {
        cfg.enable_sweep()?;
    }
    let outcome = run_scenario(&cfg)?;
    if let Some(sa) = &outcome.sigma {
        eprintln!("sigma spectrum (n = {}):", sa.n);
        for (l, lambda) in sa.lambda.iter().enumerate() {
            let p = outcome.report.error_dist.probs()[l];
            eprintln!("  l={l:0w$b}  lambda={lambda:.16e}  p={p:.16e}", w = sa.n);
        }
        eprintln!("  deviation={:.3e}", outcome.report.spectrum_deviation);
    }
    let rows: Vec<ReportRow> = if sweep { outcome.sweep } else { outcome.rows() };
    emit(&write_report(&rows, cli.format.into()), cli.out.as_deref())
}

fn campaign(cli: &Cli, file: &Path) -> HarnessResult<bool> {
    let mut cfg = parse_campaign(&read(file)?)?;
    if let Some(seed) = cli.seed {
        cfg.master_seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.output = out.clone();
    } else if cfg.output.is_relative() {
        if let Some(dir) = file.parent() {
            cfg.output = dir.join(&cfg.output);
        }
    }
    let clobbers = |p: &Path| fs::canonicalize(p).ok() == fs::canonicalize(file).ok();
    if clobbers(&cfg.output) || clobbers(&json_mirror_path(&cfg.output)) {
        return Err(HarnessError::Validation {
            field: "output".into(),
            message: format!("report would overwrite the config file {}", file.display()),
        });
    }
    let summary = run_campaign(&cfg)?;
    eprintln!("wrote {}", cfg.output.display());
    let text = match cli.format {
        Format::Json => summary.to_json(),
        Format::Csv => format!(
            "attacks={} violations={} min_slack_main={:.6e} min_slack_measured={:.6e} max_spectrum_deviation={:.3e} worst={} seed={}\n",
            summary.attacks,
            summary.violations,
            summary.min_slack_main,
            summary.min_slack_measured,
            summary.max_spectrum_deviation,
            summary.worst_attack_id.as_deref().unwrap_or("-"),
            summary.worst_attack_seed.map_or("-".to_string(), |s| s.to_string()),
        ),
    };
    emit(&text, None)?;
    Ok(summary.violations == 0)
}

fn zoo() -> HarnessResult<()> {
    let mut text = String::new();
    for kind in AttackKind::ALL {
        text.push_str(&format!("{:<18}{}\n", kind.name(), kind.description()));
    }
    emit(&text, None)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Audit { file } => scenario(&cli, file, false).map(|()| true),
        Command::Sweep { file } => scenario(&cli, file, true).map(|()| true),
        Command::Campaign { file } => campaign(&cli, file),
        Command::Zoo => zoo().map(|()| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: campaign contains theorem violations");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let HarnessError::Core(infodist::Error::TheoremViolation(report)) = &e {
                eprintln!(
                    "{}",
                    write_report_json(&[ReportRow::from_report("violation", report)])
                );
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
