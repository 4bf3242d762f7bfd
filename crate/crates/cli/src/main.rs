fn main() {
    let status = maglab::main_with_args(std::env::args_os(), &mut std::io::stderr());
    std::process::exit(status as i32);
}
