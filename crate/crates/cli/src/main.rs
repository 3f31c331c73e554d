use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = esl_cli::run(argv, &mut out);
    out.flush().expect("stdout flush");
    std::process::exit(code);
}
