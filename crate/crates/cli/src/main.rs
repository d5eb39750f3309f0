use clap::Parser;

fn main() {
    std::process::exit(hql_cli::run(hql_cli::args::Cli::parse()));
}
