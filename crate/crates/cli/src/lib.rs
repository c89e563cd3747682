//! Batch front end for the `jacklab` library.

mod args;
mod commands;

use std::ffi::OsString;

use clap::Parser;
use serde_json::json;

use jacklab::experiments::write_json;
use jacklab::Error;

pub use args::{Cli, Command, ExperimentKind, FamilyArg, FileConfig, Flags, Format, Settings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NON_REDUCIBLE: i32 = 3;
pub const EXIT_CAP: i32 = 4;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonReducible { .. } => EXIT_NON_REDUCIBLE,
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::InvalidArgument(_) | Error::Parse(_) | Error::SizeMismatch(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Parses `argv`, runs the command and writes `report.json` into the output
/// directory. Returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let settings = match Settings::resolve(cli.command, cli.flags) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    // the pool can only be configured once per process; later calls keep it
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.jobs)
        .build_global();
    let outcome = commands::dispatch(&settings);
    let report_path = settings.out.join("report.json");
    let (code, report) = match &outcome {
        Ok(o) => (
            EXIT_OK,
            json!({ "status": "ok", "config": settings, "seed": settings.seed, "result": o.result, "files": file_names(&o.files) }),
        ),
        Err(e) => {
            eprintln!("error: {e}");
            (
                exit_code(e),
                json!({ "status": "error", "exit_code": exit_code(e), "error": e.to_string(), "config": settings, "seed": settings.seed }),
            )
        }
    };
    // replaces any report.json a library writer produced; that content is
    // embedded under "result"
    let written = std::fs::create_dir_all(&settings.out)
        .map_err(Error::from)
        .and_then(|_| write_json(&report_path, &report));
    if let Err(e) = written {
        eprintln!("error: could not write {}: {e}", report_path.display());
        return if code == EXIT_OK { EXIT_FAILURE } else { code };
    }
    code
}

fn file_names(files: &[std::path::PathBuf]) -> Vec<String> {
    files
        .iter()
        .filter_map(|f| f.file_name().map(|x| x.to_string_lossy().into_owned()))
        .collect()
}
