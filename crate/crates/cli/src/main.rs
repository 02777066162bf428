use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = fourlist_cli::run(std::env::args_os());
    if let Some(report) = &outcome.report {
        print!("{}", fourlist::io::to_json(report));
    }
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code)
}
