fn main() {
    std::process::exit(sim_harness::cli_main(std::env::args()));
}
