fn main() {
    println!("qswlab");
}
