//! `esl` command-line tool: exact counting (`count`), checkpointed range
//! verification (`verify`), CSV statistics (`stats`), residue-class family
//! classification (`classify`), k-term generation (`generate`) and
//! divisor-sum analytics (`analyze`).

pub mod args;
pub mod checkpoint;
pub mod commands;
pub mod verify;

use args::Args;
use commands::{CmdError, CmdResult};
use std::io::Write;

const USAGE: &str = "usage: esl <command> [args]

commands:
  count N [--type=I|II|all] [--engine=box|fast|oracle]
  verify LO HI [--workers=K] [--checkpoint=PATH] [--shard=S]
  stats N [--what=figures|fI|fII|fprimes] [--csv]
  classify R Q [--bound=B] | classify mod840 [--bound=B]
  generate M K N [--count | --sample=C]
  analyze erdos|tausq|tau3|tauabcd|tk|ap|bv|records [options]

exit codes: 0 ok, 1 usage, 2 verification failure, 3 i/o error";

fn dispatch(cmd: &str, args: &Args, out: &mut dyn Write) -> CmdResult {
    match cmd {
        "count" => commands::cmd_count(args, out),
        "verify" => commands::cmd_verify(args, out),
        "stats" => commands::cmd_stats(args, out),
        "classify" => commands::cmd_classify(args, out),
        "generate" => commands::cmd_generate(args, out),
        "analyze" => commands::cmd_analyze(args, out),
        other => Err(CmdError::Usage(format!("unknown command '{other}'"))),
    }
}

/// Run the CLI against an argument vector; returns the process exit code.
pub fn run<W: Write>(argv: Vec<String>, out: &mut W) -> i32 {
    let Some(cmd) = argv.first().cloned() else {
        eprintln!("{USAGE}");
        return 1;
    };
    let args = Args::parse(argv.into_iter().skip(1));
    match dispatch(&cmd, &args, out) {
        Ok(()) => 0,
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("{USAGE}");
            1
        }
        Err(CmdError::Verification(ns)) => {
            eprintln!("verification failure: {} candidate(s) without witness", ns.len());
            2
        }
        Err(CmdError::Io(e)) => {
            eprintln!("i/o error: {e}");
            3
        }
    }
}
