fn main() {
    println!("specseq");
}
