use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use pbw_cli::{run, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let started = Instant::now();
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let json = report.to_json();
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    let s = &report.summary;
    eprintln!(
        "{} instance(s), {} checks: {} passed, {} failed, {} skipped in {:.2?}",
        report.instances.len(),
        s.checks,
        s.passed,
        s.failed,
        s.skipped,
        started.elapsed()
    );
    for inst in &report.instances {
        for c in inst
            .checks
            .iter()
            .filter(|c| c.status == pbw_cli::Status::Fail)
        {
            eprintln!("FAIL {} {}", inst.source, c.name);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
