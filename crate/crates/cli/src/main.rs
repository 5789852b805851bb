use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(mobius_walk_cli::run(std::env::args_os()))
}
