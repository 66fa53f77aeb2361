//! The `wreath` command line.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::automata::serialize::{to_dot, to_json, Exportable, MachineDoc};
use crate::groups::{bfs_ball_with_cap, format_element, wreath_mul, GroupError, DEFAULT_BALL_CAP};
use crate::rep_f2::f2_language_pda;
use crate::rep_grid::{grid_dir_sa, grid_h_fsa, grid_language_fsa, Dir};
use crate::rep_z::{gz_mult_fsa, ll_length, ll_mult_fsa, GPresentation};
use crate::verify::{verify, Group, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "wreath", version, about = "Cayley automatic representations of wreath products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Element literal to its canonical word.
    Encode {
        #[arg(long, short)]
        group: Group,
        literal: String,
    },
    /// Canonical word to its element literal.
    Decode {
        #[arg(long, short)]
        group: Group,
        word: String,
    },
    /// Product of two element literals.
    Mul {
        #[arg(long, short)]
        group: Group,
        left: String,
        right: String,
    },
    /// Word length over the group's generators.
    Length {
        #[arg(long, short)]
        group: Group,
        literal: String,
        #[arg(long, value_enum, default_value_t = Method::Bfs)]
        method: Method,
        /// Largest ball radius searched by the bfs method.
        #[arg(long, default_value_t = 12)]
        max_radius: u32,
        #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
        ball_cap: usize,
    },
    /// Round trip, relation audits and length bounds over a ball.
    Verify {
        #[arg(long, short)]
        group: Group,
        #[arg(long, default_value_t = 4)]
        radius: u32,
        /// Soundness convolution length; defaults per group.
        #[arg(long)]
        maxlen: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
        ball_cap: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Serializes a registered machine.
    Export {
        #[arg(long, short)]
        group: Group,
        #[arg(long, short)]
        machine: String,
        #[arg(long, value_enum, default_value_t = ExportFormat::Json)]
        format: ExportFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Bfs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Json,
    Dot,
}

/// A command's outcome: exit code and the text for stdout or stderr.
struct Outcome {
    code: i32,
    out: String,
    err: String,
}

impl Outcome {
    fn ok(out: String) -> Self {
        Outcome { code: EXIT_OK, out, err: String::new() }
    }
    fn fail(code: i32, err: String) -> Self {
        Outcome { code, out: String::new(), err }
    }
}

fn input_error(e: impl std::fmt::Display) -> Outcome {
    Outcome::fail(EXIT_INPUT, format!("error: {e}"))
}

fn machines(group: Group) -> &'static [&'static str] {
    match group {
        Group::Ll => &["a", "a-1", "h"],
        Group::GzZ2 => &["a", "a-1", "h", "h-1"],
        Group::GzZ => &["a", "a-1", "g1", "g1-1"],
        Group::F2 => &["L", "h", "a", "a-1", "b", "b-1"],
        Group::Grid => &["L", "h", "Mx", "My", "x", "x-1", "y", "y-1"],
    }
}

fn machine_doc(group: Group, name: &str) -> Result<MachineDoc, Outcome> {
    if !machines(group).contains(&name) {
        return Err(input_error(format!("unknown machine '{name}' for group {group}; registered: {}", machines(group).join(", "))));
    }
    let id = format!("{group}:{name}");
    let internal = |e: &dyn std::fmt::Display| Outcome::fail(EXIT_FAIL, format!("error: {e}"));
    let doc = match (group, name) {
        (Group::Ll, _) => ll_mult_fsa(name).map_err(|e| internal(&e))?.to_doc(&id),
        (Group::GzZ2, _) => gz_mult_fsa(GPresentation::Z2, name).map_err(|e| internal(&e))?.to_doc(&id),
        (Group::GzZ, _) => gz_mult_fsa(GPresentation::ZBinary, name).map_err(|e| internal(&e))?.to_doc(&id),
        (Group::F2, "L") => f2_language_pda().map_err(|e| internal(&e))?.to_doc(&id),
        (Group::F2, _) => {
            return Err(Outcome::fail(EXIT_CAP, format!("error: {id} is generated on the fly; its stack alphabet exceeds the exportable symbol range")))
        }
        (Group::Grid, "L") => grid_language_fsa().map_err(|e| internal(&e))?.to_doc(&id),
        (Group::Grid, "h") => grid_h_fsa().map_err(|e| internal(&e))?.to_doc(&id),
        (Group::Grid, _) => {
            let dir = match name {
                "Mx" => Dir::X,
                "My" => Dir::Y,
                other => Dir::from_generator(other).expect("registered grid machine"),
            };
            grid_dir_sa(dir).map_err(|e| internal(&e))?.to_doc(&id)
        }
    };
    Ok(doc)
}

fn length(group: Group, literal: &str, method: Method, max_radius: u32, ball_cap: usize) -> Outcome {
    let g = match group.parse_element(literal) {
        Ok(g) => g,
        Err(e) => return input_error(e),
    };
    match method {
        Method::Formula if group != Group::Ll => input_error(format!("the formula method is only available for ll, not {group}")),
        Method::Formula => match ll_length(&g) {
            Ok(n) => Outcome::ok(format!("{n}\n")),
            Err(e) => input_error(e),
        },
        Method::Bfs => {
            let spec = group.spec();
            for r in 0..=max_radius {
                match bfs_ball_with_cap(&spec, r, ball_cap) {
                    Ok(ball) => {
                        if let Some(d) = ball.get(&g) {
                            return Outcome::ok(format!("{d}\n"));
                        }
                    }
                    Err(e @ GroupError::BallTooLarge { .. }) => return Outcome::fail(EXIT_CAP, format!("error: {e}")),
                    Err(e) => return input_error(e),
                }
            }
            Outcome::fail(EXIT_CAP, format!("error: not within radius {max_radius}"))
        }
    }
}

fn execute(cmd: Command) -> Outcome {
    match cmd {
        Command::Encode { group, literal } => {
            let g = match group.parse_element(&literal) {
                Ok(g) => g,
                Err(e) => return input_error(e),
            };
            match group.encode(&g) {
                Ok(w) => Outcome::ok(format!("{}\n", String::from_utf8_lossy(&w))),
                Err(e) => input_error(e),
            }
        }
        Command::Decode { group, word } => match group.decode(word.as_bytes()) {
            Ok(g) => Outcome::ok(format!("{}\n", format_element(&g))),
            Err(e) => input_error(e),
        },
        Command::Mul { group, left, right } => {
            let parsed = group.parse_element(&left).and_then(|x| Ok((x, group.parse_element(&right)?)));
            match parsed.and_then(|(x, y)| wreath_mul(&x, &y)) {
                Ok(p) => Outcome::ok(format!("{}\n", format_element(&p))),
                Err(e) => input_error(e),
            }
        }
        Command::Length { group, literal, method, max_radius, ball_cap } => length(group, &literal, method, max_radius, ball_cap),
        Command::Verify { group, radius, maxlen, ball_cap, format } => {
            let report = verify(group, &VerifyOptions { radius, maxlen, ball_cap });
            let out = match format {
                ReportFormat::Json => report.to_json() + "\n",
                ReportFormat::Text => report.to_text(),
            };
            let code = if report.cap.is_some() {
                EXIT_CAP
            } else if report.pass {
                EXIT_OK
            } else {
                EXIT_FAIL
            };
            Outcome { code, out, err: String::new() }
        }
        Command::Export { group, machine, format } => match machine_doc(group, &machine) {
            Ok(doc) => Outcome::ok(match format {
                ExportFormat::Json => to_json(&doc) + "\n",
                ExportFormat::Dot => to_dot(&doc),
            }),
            Err(o) => o,
        },
    }
}

/// Parses `args` (program name first), runs the command, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let o = execute(cli.command);
    let _ = out.write_all(o.out.as_bytes());
    if !o.err.is_empty() {
        let _ = writeln!(err, "{}", o.err);
    }
    o.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("wreath").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn encode_decode() {
        assert_eq!(call(&["encode", "--group", "ll", "pos=0;lamps="]), (0, "B\n".into(), String::new()));
        assert_eq!(call(&["encode", "--group", "grid", "pos=(0,0);lamps="]).1, "C\n");
        assert_eq!(call(&["decode", "--group", "ll", "AC"]).1, "pos=1;lamps=\n");
        let (code, _, err) = call(&["decode", "--group", "grid", "C0"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("offset 1"), "{err}");
    }

    #[test]
    fn lengths() {
        assert_eq!(call(&["length", "--group", "ll", "pos=0;lamps=", "--method", "formula"]).1, "0\n");
        assert_eq!(call(&["length", "--group", "ll", "pos=0;lamps=1"]).1, "3\n");
        assert_eq!(call(&["length", "--group", "grid", "pos=(0,0);lamps=(0,-2)"]).1, "5\n");
        assert_eq!(call(&["length", "--group", "f2", "pos=e;lamps=", "--method", "formula"]).0, EXIT_INPUT);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["encode", "--group", "zz", "x"]).0, EXIT_INPUT);
        assert_eq!(call(&["frobnicate"]).0, EXIT_INPUT);
        let (code, _, err) = call(&["export", "--group", "grid", "--machine", "Mz"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("Mx, My"));
    }

    #[test]
    fn exports() {
        let (code, out, _) = call(&["export", "--group", "grid", "--machine", "Mx", "--format", "json"]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["stack_alphabet"], serde_json::json!(["B", "I"]));
        assert!(call(&["export", "--group", "ll", "--machine", "h", "--format", "dot"]).1.starts_with("digraph"));
        let (_, out, _) = call(&["export", "--group", "f2", "--machine", "L"]);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["deterministic"], true);
        assert_eq!(call(&["export", "--group", "f2", "--machine", "a"]).0, EXIT_CAP);
    }

    #[test]
    fn verify_exit_codes() {
        let (code, a, _) = call(&["verify", "--group", "ll", "--radius", "2"]);
        assert_eq!(code, 0);
        assert_eq!(call(&["verify", "--group", "ll", "--radius", "2"]).1, a);
        assert_eq!(call(&["verify", "--group", "ll", "--radius", "5", "--ball-cap", "10"]).0, EXIT_CAP);
    }
}
