use std::io::{self, IsTerminal};
use std::process::ExitCode;

fn main() -> ExitCode {
    let color = std::env::var_os("NO_COLOR").is_none() && io::stderr().is_terminal();
    let status = frontroute::cli::run_with_color(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
        color,
    );
    ExitCode::from(status.code() as u8)
}
