use std::io::Write;

fn main() {
    if let Some(n) = std::env::var("N2COSET_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        if n > 0 {
            // Fails only if a global pool already exists, which cannot happen this early.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let out = cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
