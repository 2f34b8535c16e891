fn main() {
    let code = lzrp_cli::run(std::env::args_os(), &mut std::io::stderr());
    std::process::exit(code);
}
