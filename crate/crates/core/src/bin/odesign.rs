use std::io::IsTerminal;

fn main() {
    let color = std::io::stdout().is_terminal() && std::env::var("OD_COLOR").as_deref() != Ok("0");
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let code = odesign::cli::run(std::env::args_os(), color, &mut out, &mut err);
    std::process::exit(code);
}
