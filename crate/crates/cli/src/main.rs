use clap::Parser;

fn main() {
    let cli = tscl_cli::cli::Cli::parse();
    if let Err(e) = tscl_cli::cli::run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
