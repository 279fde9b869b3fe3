use std::process::ExitCode;

fn main() -> ExitCode {
    let result = hxlab::cli::run(std::env::args_os());
    if result.code == hxlab::cli::EXIT_OK {
        println!("{}", result.report);
    } else {
        eprintln!("{}", result.report);
    }
    ExitCode::from(result.code as u8)
}
