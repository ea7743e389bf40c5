use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use rvmdl::cli::{run, Options, EXIT_INPUT};

fn main() -> ExitCode {
    let opts = match Options::try_parse() {
        Ok(o) => o,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; --help and --version are not
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut out = io::stdout().lock();
    let mut err = io::stderr().lock();
    let code = run(&opts, &mut input, &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code as u8)
}
