use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = vsa_cli::run(std::env::args_os());
    let has_file = std::env::args().any(|a| a == "--output" || a.starts_with("--output="));
    if !has_file || out.code != 0 {
        let mut w: Box<dyn Write> = if out.code == 2 { Box::new(std::io::stderr()) } else { Box::new(std::io::stdout()) };
        let _ = w.write_all(out.report.as_bytes());
    }
    ExitCode::from(out.code as u8)
}
