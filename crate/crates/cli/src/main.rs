use clap::Parser;
use dkc_cli::{run, wants_json, Cli, Command};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = if wants_json(&cli) {
                report.to_json() + "\n"
            } else {
                report.to_key_values()
            };
            // Generated edge lists own standard output when no file is given.
            if matches!(&cli.command, Command::Gen(a) if a.output.is_none()) {
                eprint!("{text}");
            } else {
                print!("{text}");
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
