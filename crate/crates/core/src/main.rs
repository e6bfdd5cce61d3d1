use clap::Parser;

use mixdom::cli::{run, Cli, THREADS_ENV};

fn main() {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if threads > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .expect("thread pool is configured once");
        }
    }
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(cli, &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
