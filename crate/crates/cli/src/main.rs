use std::io::Write;

fn main() {
    let (code, output) = cjac_cli::run(std::env::args_os());
    // Failed writes (e.g. a closed pipe) are not worth a second error.
    let _ = if code == cjac_cli::EXIT_USAGE || code == cjac_cli::EXIT_INTERNAL {
        std::io::stderr().write_all(output.as_bytes())
    } else {
        std::io::stdout().write_all(output.as_bytes())
    };
    std::process::exit(code);
}
