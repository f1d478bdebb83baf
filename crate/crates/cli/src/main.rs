use std::process::ExitCode;

fn main() -> ExitCode {
    match vstar_cli::run_from(std::env::args_os()) {
        Ok(code) => ExitCode::from(code.clamp(0, 255) as u8),
        Err(err) => {
            // clap errors carry their own formatting (including --help)
            if let Some(clap_err) = err.downcast_ref::<clap::Error>() {
                let _ = clap_err.print();
                let code = if clap_err.use_stderr() { 2 } else { 0 };
                return ExitCode::from(code);
            }
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
