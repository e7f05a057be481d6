use clap::Parser;

fn main() {
    let cli = causal_cfn::cli::Cli::parse();
    std::process::exit(causal_cfn::cli::run(cli));
}
