mod args;
mod commands;
mod output;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Expect, Format};
use output::{BatchEntry, JsonReport, Status, EXIT_CLAIM, EXIT_OK, EXIT_USAGE};

/// Runs one parsed command; returns the JSON report, the text rendering and
/// the exit code.
fn run_one(cli: &Cli, echo: &str) -> (JsonReport, String, i32) {
    let result = commands::execute(&cli.command, &cli.flags);
    let json = output::build_json(echo, cli.flags.seed, cli.flags.expect, &result);
    let text = output::render_text(&result);
    let code = json.exit_code;
    (json, text, code)
}

fn usage_report(echo: &str, expect: Expect, msg: String) -> JsonReport {
    let result: Result<output::Run, output::CliError> = Err(output::CliError::Usage(msg));
    output::build_json(echo, 0, expect, &result)
}

/// Splits a manifest line into its tokens and an optional `expect=` marker.
fn manifest_tokens(line: &str) -> Result<(Vec<String>, Option<Expect>), String> {
    let tokens = shlex::split(line).ok_or_else(|| format!("unbalanced quotes in {line:?}"))?;
    let mut expect = None;
    let mut rest = Vec::new();
    for t in tokens {
        match t.as_str() {
            "expect=fail" => expect = Some(Expect::Fail),
            "expect=pass" => expect = Some(Expect::Pass),
            _ => rest.push(t),
        }
    }
    Ok((rest, expect))
}

fn run_batch(path: &Path, outer: &Cli) -> (JsonReport, String, i32) {
    let echo = format!("batch {}", path.display());
    let contents = match std::fs::read_to_string(path) {
        Ok(c) => c,
        Err(e) => {
            let msg = format!("cannot read manifest {}: {e}", path.display());
            return (
                usage_report(&echo, Expect::Pass, msg.clone()),
                format!("error: {msg}\n"),
                EXIT_USAGE,
            );
        }
    };
    let mut entries = Vec::new();
    let mut text = String::new();
    for (k, raw) in contents.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (json, out, code, expect) = match manifest_tokens(line) {
            Err(msg) => (
                usage_report(line, Expect::Pass, msg.clone()),
                format!("error: {msg}\n"),
                EXIT_USAGE,
                Expect::Pass,
            ),
            Ok((tokens, marker)) => {
                let argv = std::iter::once("duplab".to_string()).chain(tokens);
                match Cli::try_parse_from(argv) {
                    Err(e) => {
                        let msg = e.to_string();
                        let expect = marker.unwrap_or(Expect::Pass);
                        (
                            usage_report(line, expect, msg.clone()),
                            format!("error: {msg}\n"),
                            EXIT_USAGE,
                            expect,
                        )
                    }
                    Ok(mut cli) => {
                        if let Some(m) = marker {
                            cli.flags.expect = m;
                        }
                        if matches!(cli.command, Command::Batch { .. }) {
                            let msg = "batch manifests cannot nest".to_string();
                            (
                                usage_report(line, cli.flags.expect, msg.clone()),
                                format!("error: {msg}\n"),
                                EXIT_USAGE,
                                cli.flags.expect,
                            )
                        } else {
                            let (json, out, code) = run_one(&cli, line);
                            (json, out, code, cli.flags.expect)
                        }
                    }
                }
            }
        };
        let met = code == EXIT_OK;
        text.push_str(&format!(
            "[{}] line {}: {line}{}\n",
            if met { "MET" } else { "UNMET" },
            k + 1,
            if expect == Expect::Fail { " (expect fail)" } else { "" }
        ));
        for l in out.lines() {
            text.push_str(&format!("    {l}\n"));
        }
        entries.push(BatchEntry {
            line: k + 1,
            command: line.to_string(),
            expect,
            exit_code: code,
            met,
            report: json,
        });
    }
    let all_met = entries.iter().all(|e| e.met);
    let code = if all_met { EXIT_OK } else { EXIT_CLAIM };
    text.push_str(&format!(
        "{} of {} entries met their expectation\n",
        entries.iter().filter(|e| e.met).count(),
        entries.len()
    ));
    let json = JsonReport {
        schema_version: output::SCHEMA_VERSION,
        tool_version: output::TOOL_VERSION.to_string(),
        command: echo,
        seed: outer.flags.seed,
        expect: Expect::Pass,
        status: if all_met { Status::Met } else { Status::Unmet },
        exit_code: code,
        error: None,
        claims: Vec::new(),
        data: None,
        entries,
    };
    (json, text, code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let echo = echo.join(" ");
    let (json, text, code) = match &cli.command {
        Command::Batch { manifest } => run_batch(manifest, &cli),
        _ => run_one(&cli, &echo),
    };
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = match cli.flags.format {
        Format::Json => {
            let body = serde_json::to_string_pretty(&json).expect("report serializes");
            writeln!(std::io::stdout().lock(), "{body}")
        }
        Format::Text if code == output::EXIT_USAGE || code == output::EXIT_UNSOUND => {
            write!(std::io::stderr().lock(), "{text}")
        }
        Format::Text => write!(std::io::stdout().lock(), "{text}"),
    };
    ExitCode::from(code as u8)
}
