use std::process::ExitCode;

fn main() -> ExitCode {
    let code = std::panic::catch_unwind(|| {
        spinscat::cli::run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
    })
    .unwrap_or(spinscat::cli::EXIT_INTERNAL);
    ExitCode::from(code as u8)
}
