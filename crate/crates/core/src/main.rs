fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let mut stdout = std::io::stdout().lock();
    let code = gbv_core::cli::run_cli(std::env::args_os(), &mut stdout);
    std::process::exit(code);
}
