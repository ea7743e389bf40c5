//! End-to-end runs of the `rvmdl` binary and agreement with the library.

mod common;

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use rand::Rng;

use rvmdl::cli::{self, Options};
use rvmdl::monitor::Monitor;
use rvmdl::quotient::TimedState;

const RUNNING_TRACE: &str = "{\"t\":\"0\",\"props\":[\"p1\"]}\n{\"t\":\"4\",\"props\":[\"p1\",\"p2\"]}\n{\"t\":\"7\",\"props\":[\"p2\"]}\n{\"t\":\"10\",\"props\":[\"p1\"]}\n";

fn rvmdl(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rvmdl"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rvmdl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn running_example_from_stdin() {
    let o = rvmdl(&["--formula", "eventually[8] always[3] p2", "--trace", "-"], RUNNING_TRACE);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"t\":\"0\",\"verdict\":\"undetermined\",\"source\":\"initial\"}\n\
         {\"t\":\"4\",\"verdict\":\"undetermined\",\"source\":\"event\"}\n\
         {\"t\":\"7\",\"verdict\":\"fulfilled\",\"source\":\"event\"}\n"
    );
}

#[test]
fn formula_and_trace_from_files() {
    let f = scratch("formula.btl");
    let t = scratch("trace.jsonl");
    std::fs::write(&f, "eventually[8] always[3] p2\n").unwrap();
    std::fs::write(&t, RUNNING_TRACE).unwrap();
    let o = rvmdl(&["--formula", f.to_str().unwrap(), "--trace", t.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn immediate_failure() {
    let o = rvmdl(&["--formula", "p1", "--trace", "-"], "{\"t\":0,\"props\":[]}\n");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "{\"t\":\"0\",\"verdict\":\"failed\",\"source\":\"initial\"}\n");
}

#[test]
fn timers_decide_a_contradiction() {
    let phi = "eventually[5] p & always[5] !p";
    let o = rvmdl(&["--formula", phi, "--trace", "-", "--timer"], "{\"t\":\"0\",\"props\":[]}\n");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().last(), Some("{\"t\":\"5\",\"verdict\":\"failed\",\"source\":\"timer\"}"));

    let events = "{\"t\":0}\n{\"t\":1}\n{\"t\":2}\n{\"t\":3}\n";
    let o = rvmdl(&["--formula", phi, "--trace", "-"], events);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).lines().all(|l| l.contains("undetermined")));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn input_errors_exit_3() {
    let o = rvmdl(&["--formula", "always[9] p1", "--trace", "-"], "{\"t\":\"0\",\"props\":[\"p1\"]}\n{\"t\":\"0\"}\n");
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = rvmdl(&["--formula", "always[9] (p1", "--trace", "-"], "");
    assert_eq!(o.status.code(), Some(3));
    let o = rvmdl(&["--trace", "-"], "");
    assert_eq!(o.status.code(), Some(3));
    let o = rvmdl(&["--formula", "p1", "--trace", "/nonexistent/trace.jsonl"], "");
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn explain_and_dump() {
    let o = rvmdl(&["--formula", "always (p1 -> eventually[30] !p1)", "--explain"], "");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for key in [
        "formula:",
        "translation:",
        "positive form:",
        "positive predicates:",
        "negative predicates:",
        "homogeneous: yes",
    ] {
        assert!(text.contains(key), "missing {key} in\n{text}");
    }

    let path = scratch("final.ddd");
    let o = rvmdl(
        &["--formula", "always[10] p1", "--trace", "-", "--dump-ddd", path.to_str().unwrap()],
        "{\"t\":0,\"props\":[\"p1\"]}\n{\"t\":4,\"props\":[\"p1\"]}\n",
    );
    assert_eq!(o.status.code(), Some(2));
    let dump = std::fs::read_to_string(&path).unwrap();
    assert!(dump.starts_with("# phi0\nroot: "), "{dump}");
    assert!(dump.contains("# phi1\nroot: "), "{dump}");
}

#[test]
fn check_mode_accepts_the_running_example() {
    let o = rvmdl(
        &["--formula", "eventually[8] always[3] p2", "--trace", "-", "--check", "--horizon", "12"],
        RUNNING_TRACE,
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

fn trace_text(states: &[TimedState]) -> String {
    states
        .iter()
        .map(|s| {
            let props: Vec<String> = s.state.iter().map(|p| format!("\"p{}\"", p.index())).collect();
            format!("{{\"t\":\"{}\",\"props\":[{}]}}\n", s.time, props.join(","))
        })
        .collect()
}

fn run_in_process(opts: &Options, input: &str) -> (i32, String) {
    let mut stdin = input.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(opts, &mut stdin, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn cli_matches_library_and_reference() {
    let mut g = common::rng(31);
    for i in 0..200 {
        let psi = common::random_btl(&mut g, 2, 2);
        let len = g.gen_range(1..6);
        let run = common::random_run(&mut g, 2, len);
        let states = run.states();
        let timer = i % 2 == 0;
        let text = psi.to_string();
        let opts = Options { formula: text.clone(), trace: Some("-".into()), timer, check: true, ..Options::default() };
        let input = trace_text(states);
        let (code, out) = run_in_process(&opts, &input);
        assert_ne!(code, cli::EXIT_CHECK, "{text} on {input}");
        assert_eq!(run_in_process(&opts, &input), (code, out.clone()), "nondeterministic output");

        let mut m = Monitor::new(&psi, states[0].state.clone()).unwrap();
        let mut expected = vec![m.verdict()];
        for s in &states[1..] {
            if m.verdict().kind.is_decided() {
                break;
            }
            if timer {
                expected.extend(m.feed_timed(Some(s)).unwrap());
            } else {
                expected.push(m.feed(s).unwrap());
            }
        }
        if timer && !m.verdict().kind.is_decided() {
            expected.extend(m.feed_timed(None).unwrap());
        }
        let lines: Vec<String> =
            expected.iter().map(|v| serde_json::to_string(&cli::VerdictEvent::from(*v)).unwrap()).collect();
        assert_eq!(out.lines().collect::<Vec<_>>(), lines, "{text} on {input}");
        assert_eq!(code, cli::exit_code(m.verdict().kind));
    }
}
