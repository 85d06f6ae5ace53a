use std::io::Write;

fn main() {
    let env_seed = std::env::var_os(cliffmoeb_cli::SEED_ENV).map(|v| v.to_string_lossy().into_owned());
    let out = cliffmoeb_cli::run(std::env::args_os(), env_seed.as_deref());
    // A closed pipe is not worth a panic; the exit code still reports the outcome.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
