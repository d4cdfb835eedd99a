use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = orthograph_cli::run(std::env::args_os());
    if code == orthograph_cli::EXIT_USAGE {
        eprint!("{text}");
    } else {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(text.as_bytes());
    }
    ExitCode::from(code as u8)
}
