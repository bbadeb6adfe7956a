use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let code = match szf::parse_args(std::env::args_os()) {
        Ok(cfg) => szf::run(&cfg),
        Err(e) if e.informational => {
            println!("{e}");
            e.exit_code()
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
