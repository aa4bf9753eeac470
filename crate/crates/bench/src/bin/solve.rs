//! `solve --problem tp5|tp8|weld [--trace file.csv]`, shorthand for
//! `bench solve`.

fn main() {
    let mut args: Vec<std::ffi::OsString> = std::env::args_os().collect();
    args.insert(1, "solve".into());
    std::process::exit(feasrepair_bench::run_cli(args));
}
