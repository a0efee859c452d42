use clap::Parser;
use ymwave::args::Cli;

fn main() {
    let cli = Cli::parse();
    std::process::exit(ymwave::run(&cli));
}
