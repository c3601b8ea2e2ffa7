use clap::Parser;

use connpart_cli::{execute, RunConfig};

fn main() {
    let cfg = RunConfig::parse();
    std::process::exit(execute(&cfg));
}
