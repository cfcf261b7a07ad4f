use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(hecke_signs_cli::run(std::env::args_os(), &mut std::io::stdout().lock()))
}
