use std::io;

fn main() {
    let code = cosine_threshold::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
