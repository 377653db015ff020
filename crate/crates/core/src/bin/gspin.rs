use std::io::Write;

fn main() {
    let (code, out) = gspin_strata::cli::run(std::env::args_os());
    let _ = writeln!(std::io::stdout(), "{out}");
    std::process::exit(code);
}
