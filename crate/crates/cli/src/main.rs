mod app;
mod args;
mod job;
mod presets;
mod svg;
mod table;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;

/// `generated-by keynes-chaos-lab <version> <subcommand> <flags>`, without the
/// output location so that reruns into other directories are byte-identical.
fn provenance(argv: &[OsString]) -> String {
    let mut parts = Vec::new();
    let mut it = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned());
    while let Some(a) = it.next() {
        if a == "--out" {
            it.next();
        } else if !a.starts_with("--out=") {
            parts.push(a);
        }
    }
    format!(
        "generated-by keynes-chaos-lab {} {}",
        env!("CARGO_PKG_VERSION"),
        parts.join(" ")
    )
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("KCL_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("KCL_THREADS must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let argv: Vec<OsString> = std::env::args_os().collect();
    let cli = match args::Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version go to stdout and are not errors
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    match app::run(cli, &provenance(&argv)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
