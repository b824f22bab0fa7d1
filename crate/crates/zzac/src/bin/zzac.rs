use clap::Parser;
use zzac::cli::Cli;

fn main() {
    let cli = Cli::parse();
    match zzac::commands::run(cli.command) {
        Ok(report) => print!("{report}"),
        Err(err) => {
            eprintln!("zzac: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
