//! `framelab` command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and writes either a
//! text summary or a JSON report. Exit codes: 0 when the command ran (and,
//! for `decide`, the answer is yes), 1 for a `decide` answer of no or
//! undecided, 2 for usage and input errors.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use serde_json::{json, Map, Value};

pub mod args;
mod commands;
pub mod frame_file;
pub mod report;

pub use args::Cli;
pub use frame_file::{Backend, FrameFile, LoadedFrame};

pub const TOOL: &str = "framelab";
pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Core(#[from] framelab_core::Error),
    #[error("witness failed re-verification: {0}")]
    Verification(String),
}

/// What a subcommand produced, before rendering.
#[derive(Debug, Default)]
pub struct Output {
    pub input: Option<Value>,
    pub results: Vec<Value>,
    pub data: Map<String, Value>,
    pub text: Vec<String>,
    pub code: i32,
    pub timings: Vec<(String, f64)>,
}

/// Runs the tool on `argv` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match commands::execute(&cli) {
        Ok(output) => {
            let rendered = if cli.global.json {
                render_json(&cli, &output)
            } else {
                render_text(&cli, &output)
            };
            let _ = out.write_all(rendered.as_bytes());
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn render_json(cli: &Cli, output: &Output) -> String {
    let mut report = json!({
        "tool": TOOL,
        "version": env!("CARGO_PKG_VERSION"),
        "command": cli.command.name(),
        "input": output.input.clone().unwrap_or(Value::Null),
        "config": cli.global.echo(),
        "results": output.results,
        "data": output.data,
    });
    if cli.global.timings {
        let t: Map<String, Value> = output.timings.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        report["timings_ms"] = Value::Object(t);
    }
    let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
    s.push('\n');
    s
}

fn render_text(cli: &Cli, output: &Output) -> String {
    let mut s = String::new();
    for line in &output.text {
        s.push_str(line);
        s.push('\n');
    }
    if cli.global.timings {
        for (k, v) in &output.timings {
            s.push_str(&format!("time {k}: {v:.3} ms\n"));
        }
    }
    s
}
