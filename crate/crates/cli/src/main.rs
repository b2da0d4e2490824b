use std::io::Write;

fn main() {
    let result = twuality_cli::run(std::env::args_os());
    print!("{}", result.stdout);
    eprint!("{}", result.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(result.code);
}
