fn main() {
    kcheeger::run()
}
