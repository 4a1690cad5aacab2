//! Argument parsing and dispatch for the `lch` binary.
//!
//! Exit codes: `0` success, `1` a check failed, `2` unusable input or
//! arguments, `3` a search budget ran out.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use lch_core::augment::AugBudget;
use lch_core::charalg::CompletionBudget;
use serde_json::{json, Value};

use crate::commands::{self as cmd, Budgets, Inputs, Report};
use crate::error::{Error, Result};
use crate::json::REPORT_SCHEMA;
use crate::{acceptance, fixtures};

#[derive(Parser, Debug)]
#[command(name = "lch", version, about = "Legendrian contact homology computations")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Node budget for augmentation searches.
    #[arg(long, global = true, value_name = "N")]
    max_nodes: Option<u64>,
    /// Rule budget for rewriting completions.
    #[arg(long, global = true, value_name = "N")]
    max_rules: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Knot fronts: DGAs, dips and connected sums.
    #[command(subcommand)]
    Knot(KnotCmd),
    /// Checks on a DGA.
    #[command(subcommand)]
    Dga(DgaCmd),
    /// Split a dipped front into a pushout square.
    Split {
        front: String,
        /// Dip slot; the leftmost admissible slot by default.
        #[arg(long)]
        at: Option<usize>,
        /// Action threshold separating the two sides.
        #[arg(long, default_value = "1")]
        delta: String,
        #[arg(long)]
        t1: bool,
    },
    /// Pushout of A1 <- A3 -> A2 along generator inclusions.
    Pushout { a1: String, a2: String, a3: String },
    /// The map out of a pushout induced by a pair of side maps.
    Mediate {
        square: String,
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
    },
    /// Augmentations.
    #[command(subcommand)]
    Aug(AugCmd),
    /// Linearized homology for one or all augmentations.
    Linhom {
        file: String,
        #[command(flatten)]
        which: Which,
        #[arg(long)]
        field: Option<String>,
    },
    /// The multiset of Poincare polynomials.
    Poincare {
        file: String,
        #[arg(long)]
        compare: Option<String>,
        #[arg(long)]
        field: Option<String>,
    },
    /// Mayer-Vietoris exactness for a square.
    Mv {
        square: String,
        #[command(flatten)]
        which: Which,
    },
    /// Connected sum of two DGAs along a sphere of dimension N - 1.
    CsumAbstract {
        a1: String,
        a2: String,
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        corrections: Option<String>,
    },
    /// Compare Poincare polynomials of a sum with those of its summands.
    CsumCheck {
        a1: String,
        a2: String,
        /// 1 for knot fronts.
        #[arg(long, default_value_t = 1)]
        dim: u32,
        #[arg(long)]
        corrections: Option<String>,
    },
    /// Presentation of the characteristic algebra.
    Char { file: String },
    /// Characteristic algebra of a square against those of its corners.
    CharPushout { square: String },
    /// Normal form of an element, complete up to a length bound.
    CharNf {
        file: String,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// The built-in fixture corpus and acceptance checks.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct Which {
    /// An augmentation document.
    #[arg(long)]
    aug: Option<String>,
    /// Every augmentation (the default).
    #[arg(long)]
    all: bool,
}

#[derive(Subcommand, Debug)]
enum KnotCmd {
    /// Print the DGA of a front.
    Dga {
        file: String,
        /// Set the coefficient variable to 1.
        #[arg(long)]
        t1: bool,
    },
    /// Print the DGA after adding a dip.
    Dip {
        file: String,
        #[arg(long)]
        at: usize,
        #[arg(long)]
        t1: bool,
    },
    /// Connected sum of two fronts.
    Csum { a: String, b: String },
}

#[derive(Subcommand, Debug)]
enum DgaCmd {
    /// Verify d^2 = 0, degrees and actions.
    Check { file: String },
}

#[derive(Subcommand, Debug)]
enum AugCmd {
    /// Number of augmentations over a field.
    Count {
        file: String,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        t1: bool,
    },
    /// Points of the coefficient torus that admit augmentations.
    Good {
        file: String,
        #[arg(long)]
        field: String,
    },
    /// Check that G is the product of G1 and G2.
    Product { g1: String, g2: String, g: String },
}

#[derive(Subcommand, Debug)]
enum FixturesCmd {
    /// Names of the built-in fixtures.
    List,
    /// Run the acceptance checks.
    Run {
        #[arg(long)]
        only: Option<u32>,
    },
    /// Print a fixture.
    Show { name: String },
    /// Write every fixture into a directory.
    Write { dir: String },
}

fn read_input(path: &str, stdin: &mut dyn Read, used_stdin: &mut bool) -> Result<String> {
    if path == "-" {
        if *used_stdin {
            return Err(Error::Usage("standard input can be read only once".into()));
        }
        *used_stdin = true;
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|err| Error::Io { path: "<stdin>".into(), err })?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|err| Error::Io { path: path.into(), err })
}

fn threads_env() -> Result<()> {
    match std::env::var("LCH_THREADS") {
        Ok(v) if v.parse::<u32>().map_or(true, |n| n == 0) => {
            Err(Error::Usage(format!("LCH_THREADS must be a positive integer, got `{v}`")))
        }
        _ => Ok(()),
    }
}

fn name_of(c: &Command) -> &'static str {
    match c {
        Command::Knot(KnotCmd::Dga { .. }) => "knot dga",
        Command::Knot(KnotCmd::Dip { .. }) => "knot dip",
        Command::Knot(KnotCmd::Csum { .. }) => "knot csum",
        Command::Dga(_) => "dga check",
        Command::Split { .. } => "split",
        Command::Pushout { .. } => "pushout",
        Command::Mediate { .. } => "mediate",
        Command::Aug(AugCmd::Count { .. }) => "aug count",
        Command::Aug(AugCmd::Good { .. }) => "aug good",
        Command::Aug(AugCmd::Product { .. }) => "aug product",
        Command::Linhom { .. } => "linhom",
        Command::Poincare { .. } => "poincare",
        Command::Mv { .. } => "mv",
        Command::CsumAbstract { .. } => "csum-abstract",
        Command::CsumCheck { .. } => "csum-check",
        Command::Char { .. } => "char",
        Command::CharPushout { .. } => "char-pushout",
        Command::CharNf { .. } => "char-nf",
        Command::Fixtures(_) => "fixtures",
    }
}

fn fixtures_cmd(c: &FixturesCmd) -> Result<Report> {
    match c {
        FixturesCmd::List => {
            let names: Vec<&str> = fixtures::FIXTURES.iter().map(|f| f.file).collect();
            Ok(Report {
                text: names.iter().map(|n| format!("{n}\n")).collect(),
                json: json!({ "fixtures": names }),
                ok: true,
            })
        }
        FixturesCmd::Show { name } => {
            let f = fixtures::get(name)?;
            Ok(Report { text: f.text.to_string(), json: json!({ "file": f.file, "text": f.text }), ok: true })
        }
        FixturesCmd::Write { dir } => {
            std::fs::create_dir_all(dir).map_err(|err| Error::Io { path: dir.clone(), err })?;
            let mut text = String::new();
            for f in fixtures::FIXTURES {
                let p = std::path::Path::new(dir).join(f.file);
                std::fs::write(&p, f.text).map_err(|err| Error::Io { path: p.display().to_string(), err })?;
                text += &format!("{}\n", p.display());
            }
            Ok(Report { text, json: json!({ "written": fixtures::FIXTURES.len(), "dir": dir }), ok: true })
        }
        FixturesCmd::Run { only } => {
            let outcomes = match only {
                Some(id) => vec![acceptance::run_one(*id).ok_or_else(|| Error::Usage(format!("no criterion {id}")))?],
                None => acceptance::run_all(),
            };
            let text = outcomes.iter().map(|o| o.line() + "\n").collect();
            let rows: Vec<Value> = outcomes
                .iter()
                .map(
                    |o| json!({ "id": o.id, "name": o.name, "pass": o.pass, "detail": o.detail, "seconds": o.seconds }),
                )
                .collect();
            let ok = outcomes.iter().all(|o| o.pass);
            Ok(Report { text, json: json!({ "criteria": rows }), ok })
        }
    }
}

fn dispatch(c: &Command, inp: &mut Inputs, b: &Budgets) -> Result<Report> {
    match c {
        Command::Knot(KnotCmd::Dga { file, t1 }) => cmd::knot_dga_cmd(inp, file, *t1),
        Command::Knot(KnotCmd::Dip { file, at, t1 }) => cmd::knot_dip_cmd(inp, file, *at, *t1),
        Command::Knot(KnotCmd::Csum { a, b }) => cmd::knot_csum_cmd(inp, a, b),
        Command::Dga(DgaCmd::Check { file }) => cmd::dga_check_cmd(inp, file),
        Command::Split { front, at, delta, t1 } => cmd::split_cmd(inp, front, *at, delta, *t1),
        Command::Pushout { a1, a2, a3 } => cmd::pushout_cmd(inp, a1, a2, a3),
        Command::Mediate { square, h1, h2 } => cmd::mediate_cmd(inp, square, h1, h2),
        Command::Aug(AugCmd::Count { file, field, t1 }) => cmd::aug_count_cmd(inp, file, field.as_deref(), *t1, b),
        Command::Aug(AugCmd::Good { file, field }) => cmd::aug_good_cmd(inp, file, field, b),
        Command::Aug(AugCmd::Product { g1, g2, g }) => cmd::aug_product_cmd(inp, g1, g2, g),
        Command::Linhom { file, which, field } => cmd::linhom_cmd(inp, file, which.aug.as_deref(), field.as_deref(), b),
        Command::Poincare { file, compare, field } => {
            cmd::poincare_cmd(inp, file, compare.as_deref(), field.as_deref(), b)
        }
        Command::Mv { square, which } => cmd::mv_cmd(inp, square, which.aug.as_deref(), b),
        Command::CsumAbstract { a1, a2, dim, corrections } => {
            cmd::csum_abstract_cmd(inp, a1, a2, *dim, corrections.as_deref())
        }
        Command::CsumCheck { a1, a2, dim, corrections } => {
            cmd::csum_check_cmd(inp, a1, a2, *dim, corrections.as_deref(), b)
        }
        Command::Char { file } => cmd::char_cmd(inp, file),
        Command::CharPushout { square } => cmd::char_pushout_cmd(inp, square),
        Command::CharNf { file, expr, bound } => cmd::char_nf_cmd(inp, file, expr, *bound, b),
        Command::Fixtures(fc) => fixtures_cmd(fc),
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    if let Err(e) = threads_env() {
        let _ = writeln!(err, "lch: {e}");
        return e.exit_code();
    }
    let mut budgets = Budgets { aug: AugBudget::default(), completion: CompletionBudget::default() };
    if let Some(n) = cli.max_nodes {
        budgets.aug.max_nodes = n;
    }
    if let Some(n) = cli.max_rules {
        budgets.completion.max_rules = n;
    }
    let mut used_stdin = false;
    let mut paths: Vec<String> = Vec::new();
    let mut read = |p: &str| {
        paths.push(p.to_string());
        read_input(p, stdin, &mut used_stdin)
    };
    let result = dispatch(&cli.command, &mut Inputs { read: &mut read }, &budgets);
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "lch: {e}");
            return e.exit_code();
        }
    };
    let written = if cli.json {
        let mut j = json!({
            "schema": REPORT_SCHEMA,
            "command": name_of(&cli.command),
            "ok": report.ok,
            "provenance": { "inputs": paths, "version": env!("CARGO_PKG_VERSION") },
        });
        if let (Value::Object(m), Value::Object(body)) = (&mut j, report.json) {
            for (k, v) in body {
                m.entry(k).or_insert(v);
            }
        }
        out.write_all(crate::json::to_json(&j).as_bytes())
    } else {
        out.write_all(report.text.as_bytes())
    };
    if let Err(e) = written.and_then(|_| out.flush()) {
        let _ = writeln!(err, "lch: {e}");
        return 2;
    }
    if report.ok {
        0
    } else {
        1
    }
}
