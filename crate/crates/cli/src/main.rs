use clap::Parser;

fn main() {
    let cli = acmac_cli::Cli::parse();
    match acmac_cli::run(cli) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(acmac_cli::exit_code(&e));
        }
    }
}
