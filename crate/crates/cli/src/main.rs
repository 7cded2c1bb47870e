use std::io;

fn main() {
    let mut out = io::BufWriter::new(io::stdout());
    let code = binomdiv_cli::run(std::env::args_os(), &mut out, &mut io::stderr());
    drop(out);
    std::process::exit(code);
}
