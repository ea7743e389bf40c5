//! Command-line driver: reads a JSON-lines trace, runs the monitor and
//! writes one JSON verdict line per processed state.
//!
//! Trace lines look like `{"t": "7/2", "props": ["p1", "p2"]}`; `t` may be a
//! decimal string, an `a/b` fraction or a JSON number. Output lines look like
//! `{"t":"7","verdict":"fulfilled","source":"event"}`.
//!
//! Exit codes: 0 fulfilled, 1 failed, 2 undetermined at end of input,
//! 3 input error, 4 `--check` found a disagreement with the reference
//! evaluator.

use std::collections::BTreeSet;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::{Deserialize, Serialize};

use crate::ddd::DddManager;
use crate::error::{Error, Result};
use crate::formula::{parse_btl_with, Btl, PropTable};
use crate::monitor::{Monitor, Verdict, VerdictKind};
use crate::quotient::{RunPrefix, TimedState};
use crate::rational::Rational;
use crate::refsolver::{eval_btl, ThreeValued};
use crate::translate::{translate_positive, translate_z};

pub const EXIT_FULFILLED: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_UNDETERMINED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_CHECK: i32 = 4;

#[derive(Parser, Debug, Clone, Default)]
#[command(name = "rvmdl", version, about = "Online monitor for bounded temporal logic")]
pub struct Options {
    /// Formula text, or a file containing it.
    #[arg(long)]
    pub formula: String,

    /// JSON-lines trace file, or `-` for standard input.
    #[arg(long)]
    pub trace: Option<String>,

    /// Inject timer events at the earliest decisive time.
    #[arg(long)]
    pub timer: bool,

    /// Print the translation and homogeneity report.
    #[arg(long)]
    pub explain: bool,

    /// Write the final decision diagrams to this file.
    #[arg(long, value_name = "FILE")]
    pub dump_ddd: Option<PathBuf>,

    /// Horizon for `--check` (defaults to the last trace timestamp).
    #[arg(long, value_name = "RATIONAL")]
    pub horizon: Option<Rational>,

    /// Cross-check the final verdict against the reference evaluator.
    #[arg(long)]
    pub check: bool,
}

#[derive(Deserialize)]
struct RawEvent {
    t: serde_json::Value,
    #[serde(default)]
    props: Vec<String>,
}

/// One line of the trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub t: Rational,
    pub props: Vec<String>,
}

impl TraceEvent {
    pub fn parse(line: &str) -> std::result::Result<TraceEvent, String> {
        let raw: RawEvent = serde_json::from_str(line).map_err(|e| e.to_string())?;
        let text = match &raw.t {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(format!("field `t` must be a string or number, found {other}")),
        };
        let t = text.parse::<Rational>().map_err(|e| e.to_string())?;
        Ok(TraceEvent { t, props: raw.props })
    }

    /// Propositions known to `table`; other names cannot affect the formula.
    pub fn to_state(&self, table: &PropTable) -> TimedState {
        TimedState { state: self.props.iter().filter_map(|n| table.lookup(n)).collect(), time: self.t }
    }
}

/// One line of output.
#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct VerdictEvent {
    pub t: String,
    pub verdict: &'static str,
    pub source: &'static str,
}

impl From<Verdict> for VerdictEvent {
    fn from(v: Verdict) -> Self {
        VerdictEvent { t: v.time.to_string(), verdict: v.kind.as_str(), source: v.source.as_str() }
    }
}

pub fn exit_code(kind: VerdictKind) -> i32 {
    match kind {
        VerdictKind::Fulfilled => EXIT_FULFILLED,
        VerdictKind::Failed => EXIT_FAILED,
        VerdictKind::Undetermined => EXIT_UNDETERMINED,
    }
}

/// Formula text: the file contents if `arg` names a file, else `arg` itself.
pub fn load_formula(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        Ok(fs::read_to_string(path)?)
    } else {
        Ok(arg.to_string())
    }
}

/// Translation and homogeneity report.
pub fn explain(psi: &Btl) -> String {
    let positive = translate_positive(psi);
    let (pos, neg) = positive.polarity_sets();
    let list = |s: &BTreeSet<crate::formula::PredId>| {
        let items: Vec<String> = s.iter().map(|p| p.to_string()).collect();
        format!("{{{}}}", items.join(", "))
    };
    format!(
        "formula: {psi}\ntranslation: {}\npositive form: {positive}\npositive predicates: {}\nnegative predicates: {}\nhomogeneous: {}\n",
        translate_z(psi),
        list(&pos),
        list(&neg),
        if positive.is_homogeneous() { "yes" } else { "no" },
    )
}

/// Result of monitoring one trace.
#[derive(Debug)]
pub struct Run {
    pub verdicts: Vec<Verdict>,
    pub prefix: Vec<TimedState>,
    pub final_formula: crate::formula::Mdl,
}

/// Monitors the events of `lines` (1-based line numbers in errors).
pub fn monitor_lines(
    psi: &Btl,
    table: &PropTable,
    lines: impl Iterator<Item = std::io::Result<String>>,
    timer: bool,
    mut emit: impl FnMut(&Verdict),
) -> Result<Run> {
    let mut monitor: Option<Monitor> = None;
    let mut verdicts = Vec::new();
    let mut prefix = Vec::new();
    let mut record = |v: Verdict, verdicts: &mut Vec<Verdict>| {
        emit(&v);
        verdicts.push(v);
    };
    for (i, line) in lines.enumerate() {
        let lineno = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let event = TraceEvent::parse(&line).map_err(|msg| Error::Trace { line: lineno, msg })?;
        let state = event.to_state(table);
        let at_line = |e: Error| Error::Trace { line: lineno, msg: e.to_string() };
        match monitor.as_mut() {
            None => {
                if !state.time.is_zero() {
                    return Err(at_line(Error::RunStartsLate(state.time)));
                }
                let m = Monitor::new(psi, state.state.clone()).map_err(at_line)?;
                record(m.verdict(), &mut verdicts);
                monitor = Some(m);
            }
            Some(m) => {
                if state.time <= m.time() {
                    return Err(at_line(Error::NonIncreasingTime { prev: m.time(), next: state.time }));
                }
                if timer {
                    for v in m.feed_timed(Some(&state)).map_err(at_line)? {
                        record(v, &mut verdicts);
                    }
                } else {
                    let v = m.feed(&state).map_err(at_line)?;
                    record(v, &mut verdicts);
                }
            }
        }
        prefix.push(state);
        let m = monitor.as_ref().expect("started");
        if m.verdict().kind.is_decided() {
            break;
        }
    }
    let Some(mut m) = monitor else {
        return Err(Error::Trace { line: 0, msg: "empty trace".into() });
    };
    if timer && !m.verdict().kind.is_decided() {
        for v in m.feed_timed(None)? {
            record(v, &mut verdicts);
        }
    }
    Ok(Run { verdicts, prefix, final_formula: m.formula().clone() })
}

fn dump(run: &Run) -> Result<String> {
    let mut mgr = DddManager::new();
    let mut out = String::new();
    for (label, value) in [("phi0", false), ("phi1", true)] {
        let d = mgr.build_closed(&run.final_formula.literal_substitute(value))?;
        out.push_str(&format!("# {label}\n"));
        out.push_str(&mgr.dump(d));
    }
    Ok(out)
}

/// Oracle comparison; `Some(message)` on disagreement.
fn check(psi: &Btl, run: &Run, horizon: Option<Rational>) -> Result<Option<String>> {
    let prefix = RunPrefix::new(run.prefix.clone())?;
    let horizon = horizon.unwrap_or(prefix.last().time);
    let Some(last) = run.verdicts.last() else { return Ok(None) };
    // timer verdicts assume the last state persists, as the oracle does
    let oracle = eval_btl(&prefix, horizon.max(last.time), Rational::ZERO, psi)?;
    let clash = matches!(
        (last.kind, oracle),
        (VerdictKind::Fulfilled, ThreeValued::False) | (VerdictKind::Failed, ThreeValued::True)
    );
    Ok(clash.then(|| format!("monitor reported {} but the reference evaluator says {oracle}", last.kind.as_str())))
}

/// Full command: returns the process exit code.
pub fn run(opts: &Options, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match run_inner(opts, stdin, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn run_inner(opts: &Options, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let text = load_formula(&opts.formula)?;
    let mut table = PropTable::new();
    let psi = parse_btl_with(text.trim(), &mut table)?;
    if opts.explain {
        write!(out, "{}", explain(&psi))?;
    }
    let Some(trace) = &opts.trace else {
        return if opts.explain { Ok(EXIT_FULFILLED) } else { Err(Error::Io("no --trace given".into())) };
    };
    let mut write_err = None;
    let mut emit = |v: &Verdict| {
        let line = serde_json::to_string(&VerdictEvent::from(*v)).expect("serializable");
        if let Err(e) = writeln!(out, "{line}") {
            write_err.get_or_insert(e);
        }
    };
    let run = if trace == "-" {
        monitor_lines(&psi, &table, stdin.lines(), opts.timer, &mut emit)?
    } else {
        let file = fs::File::open(trace).map_err(|e| Error::Io(format!("{trace}: {e}")))?;
        monitor_lines(&psi, &table, std::io::BufReader::new(file).lines(), opts.timer, &mut emit)?
    };
    if let Some(e) = write_err {
        return Err(e.into());
    }
    if let Some(path) = &opts.dump_ddd {
        fs::write(path, dump(&run)?)?;
    }
    if opts.check {
        if let Some(msg) = check(&psi, &run, opts.horizon)? {
            writeln!(err, "check failed: {msg}")?;
            return Ok(EXIT_CHECK);
        }
    }
    let last = run.verdicts.last().expect("non-empty run").kind;
    Ok(exit_code(last))
}
