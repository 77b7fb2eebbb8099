mod args;
mod commands;
mod io;

use std::io::Write;
use std::process::ExitCode;
use std::time::{Instant, SystemTime};

use clap::Parser;
use serde_json::json;

use args::Cli;
use io::RunManifest;
use tel_core::Error;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeGuard { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if k == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: cannot start thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let started = SystemTime::now();
    let clock = Instant::now();
    let outcome = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let manifest = RunManifest::new(
        cli.command.name(),
        serde_json::to_value(&cli.command).expect("serializable arguments"),
        cli.command.seed(),
        started,
        clock.elapsed(),
    );
    let body = if cli.json {
        let mut s = serde_json::to_string_pretty(&json!({ "manifest": manifest, "result": outcome.json }))
            .expect("serializable output");
        s.push('\n');
        s
    } else {
        outcome.csv
    };
    match &cli.out {
        None => {
            let mut out = std::io::stdout().lock();
            if out.write_all(body.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
        }
        Some(path) => {
            let mut mpath = path.clone().into_os_string();
            mpath.push(".manifest.json");
            let manifest_text = serde_json::to_string_pretty(&manifest).expect("serializable manifest") + "\n";
            if let Err(e) = std::fs::write(path, body).and_then(|_| std::fs::write(&mpath, manifest_text)) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    ExitCode::SUCCESS
}
