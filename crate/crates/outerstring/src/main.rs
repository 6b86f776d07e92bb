fn main() {
    // placeholder during bring-up; the real CLI lands with the io module
    println!("outerstring");
}
