use std::io;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let code = fraccore_cli::run_cli(&argv, &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
