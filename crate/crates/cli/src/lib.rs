pub fn run() {
    todo!("cli entry");
}
