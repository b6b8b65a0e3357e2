use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env_store = std::env::var_os(boxarith::cli::STORE_ENV);
    let status = boxarith::run(std::env::args_os(), env_store, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(status as u8)
}
