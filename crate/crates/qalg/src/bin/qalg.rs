fn main() {
    // CLI wiring lands with the catalog modules.
}
