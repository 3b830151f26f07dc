use std::io::Write;

fn main() {
    let out = nonrep::cli::run(std::env::args_os());
    if let Some(msg) = &out.diagnostics {
        eprintln!("{}", msg.trim_end());
    }
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not worth a panic; the exit code still reports the result
    if let Some(text) = &out.text {
        let _ = write!(stdout, "{text}");
    }
    if let Some(doc) = &out.document {
        let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(doc).expect("JSON values serialise"));
    }
    let _ = stdout.flush();
    std::process::exit(out.code);
}
