use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use dpconform_core::external::DEFAULT_FILE_NAME;
use dpconform_core::pipeline::{run, RunConfig, RunError, RunOutput};
use dpconform_core::report::{compare_table, write_compare_csv, write_outputs};
use dpconform_core::rules::{load_definitions, write_builtin_files};

/// Detects design-pattern candidates in Java projects, scores how closely
/// each one conforms to its pattern and lists the violations.
#[derive(Debug, Parser)]
#[command(name = "dpconform", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Detect, score, verify and report (the default).
    Analyze,
    /// Score only the candidates listed in the --external file.
    ScoreExternal,
    /// Precision and recall of each candidate source against --truth.
    Compare,
    /// Validate the rule and catalog files in --patterns.
    CheckRules,
    /// Write the shipped pattern definitions into a directory.
    InitPatterns {
        /// Target directory.
        #[arg(default_value = "pattern")]
        dir: PathBuf,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Repository root; every subdirectory is one project.
    #[arg(long, global = true, default_value = "Repository")]
    repo: PathBuf,
    /// Directory of `.rules` and `.chars` pattern files.
    #[arg(long, global = true, default_value = "pattern")]
    patterns: PathBuf,
    /// Requirements text used to approve or discard violations.
    #[arg(long, global = true)]
    srs: Option<PathBuf>,
    /// Candidates found by another tool, e.g. PatternsDetectedByOtherTools.txt.
    #[arg(long, global = true)]
    external: Option<PathBuf>,
    /// Labelled true instances, in the same format as --external.
    #[arg(long, global = true)]
    truth: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Collapse candidates that differ only in optional roles.
    #[arg(long, global = true)]
    dedupe: bool,
    /// Worker threads (default: one per core).
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.exit_code() == 1 {
                eprintln!("Run `dpconform --help` for usage.");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<(), RunError> {
    let args = cli.common;
    let command = cli.command.unwrap_or(Command::Analyze);

    match command {
        Command::InitPatterns { dir } => {
            write_builtin_files(&dir).map_err(|e| {
                RunError::Input(dpconform_core::Error::Io {
                    path: dir.clone(),
                    source: e,
                })
            })?;
            println!("wrote shipped pattern definitions to {}", dir.display());
            return Ok(());
        }
        Command::CheckRules => {
            require_dir(&args.patterns, "--patterns")?;
            let defs = load_definitions(&args.patterns).map_err(RunError::Definitions)?;
            if defs.is_empty() {
                return Err(RunError::Definitions(dpconform_core::Error::Validation {
                    file: args.patterns.clone(),
                    message: "no patterns loaded".into(),
                }));
            }
            for d in &defs {
                println!(
                    "{}: {} roles, {} rule connections, {} characteristics",
                    d.name(),
                    d.rule.members.len(),
                    d.rule.connections.len(),
                    d.catalog.abstraction_characteristics.len() + d.catalog.relationship_characteristics.len()
                );
            }
            println!("{} pattern definitions OK", defs.len());
            return Ok(());
        }
        _ => {}
    }

    require_dir(&args.repo, "--repo")?;
    require_dir(&args.patterns, "--patterns")?;
    let mut config = RunConfig {
        repository_dir: args.repo,
        pattern_dir: args.patterns,
        srs_path: args.srs,
        external_instances_path: args.external,
        truth_path: args.truth,
        out_dir: args.out,
        dedupe: args.dedupe,
        detect: true,
        jobs: args.jobs.map(usize::from),
    };
    match command {
        Command::ScoreExternal => {
            if config.external_instances_path.is_none() {
                return Err(RunError::Config(format!(
                    "score-external needs --external (usually {DEFAULT_FILE_NAME})"
                )));
            }
            config.detect = false;
        }
        Command::Compare if config.truth_path.is_none() => {
            return Err(RunError::Config("compare needs --truth".into()));
        }
        _ => {}
    }

    let started = Instant::now();
    let output = run(&config)?;
    for w in &output.warnings {
        eprintln!("warning: {w}");
    }

    let write_started = Instant::now();
    let io = |e| RunError::Input(e);
    std::fs::create_dir_all(&config.out_dir).map_err(|e| {
        io(dpconform_core::Error::Io {
            path: config.out_dir.clone(),
            source: e,
        })
    })?;
    if let Some(rows) = &output.comparison {
        write_compare_csv(rows, &config.out_dir.join("compare.csv")).map_err(io)?;
        print!("{}", compare_table(rows));
    }
    if !matches!(command, Command::Compare) {
        write_outputs(&output.report_input(), &config.out_dir).map_err(io)?;
        print_summary(&output, &config.out_dir);
    }
    report_timings(&output, write_started.elapsed(), started.elapsed());
    Ok(())
}

fn require_dir(path: &Path, flag: &str) -> Result<(), RunError> {
    if path.is_dir() {
        Ok(())
    } else {
        Err(RunError::Config(format!(
            "{flag} directory `{}` does not exist",
            path.display()
        )))
    }
}

fn print_summary(output: &RunOutput, out: &Path) {
    let violations: usize = output.assessments.iter().map(|a| a.violations().count()).sum();
    println!(
        "{} projects, {} candidate instances, {} violations; results in {}",
        output.projects.len(),
        output.assessments.len(),
        violations,
        out.display()
    );
}

fn report_timings(output: &RunOutput, write: std::time::Duration, total: std::time::Duration) {
    for (phase, took) in &output.timings {
        eprintln!("{phase:>14}: {:>8.1} ms", took.as_secs_f64() * 1e3);
    }
    eprintln!("{:>14}: {:>8.1} ms", "write", write.as_secs_f64() * 1e3);
    eprintln!(
        "analyzed {} files ({} LoC) in {:.1} ms",
        output.file_count,
        output.loc_count,
        total.as_secs_f64() * 1e3
    );
}
