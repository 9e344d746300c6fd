use clap::Parser;

fn main() {
    let cli = match cellcx_cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Help and version requests are not errors.
            std::process::exit(if e.use_stderr() { cellcx_cli::EXIT_INPUT } else { cellcx_cli::EXIT_OK });
        }
    };
    let code = cellcx_cli::run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
