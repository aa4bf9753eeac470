fn main() {
    std::process::exit(feasrepair_bench::run_cli(std::env::args_os()));
}
