use clap::Parser;

fn main() {
    let cli = entropic_cli::config::Cli::parse();
    std::process::exit(entropic_cli::run(cli));
}
