use std::io;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let code = polydiam::cli::execute(&args, &mut io::stdin().lock(), &mut io::stdout().lock(), &mut io::stderr());
    std::process::exit(code);
}
