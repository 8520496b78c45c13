//! Which weight vectors give quantum lens spaces, and which are reachable
//! from (1, …, 1) by admissible moves.
//!
//!     cargo run --example classify_weights -- 6 10 15

use qwps::weights::{factor_sharp, is_cpn, path_to_trivial, WeightVector};

fn main() -> qwps::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let inputs = if args.len() >= 2 { vec![args] } else { vec![vec![1, 2, 2], vec![2, 3, 6], vec![1, 1, 2], vec![6, 10, 15]] };
    for w in inputs {
        let l = WeightVector::from_u64(&w)?;
        let p = factor_sharp(&l)?;
        print!("{l}: ");
        match p {
            Some(p) => print!("ℓ = p♯ with p = {p}"),
            None => print!("not of the form p♯"),
        }
        print!(", is_cpn = {}", is_cpn(&l)?);
        if let Some(path) = path_to_trivial(&l) {
            let moves: Vec<String> = path.iter().map(|m| m.to_string()).collect();
            print!(", moves: {}", moves.join(" "));
        }
        println!();
    }
    Ok(())
}
