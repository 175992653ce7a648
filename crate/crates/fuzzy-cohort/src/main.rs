fn main() {
    std::process::exit(fuzzy_cohort::cli::main());
}
