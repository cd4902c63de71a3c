fn main() {
    eprintln!("hdgbi: not yet wired up");
    std::process::exit(1);
}
