//! Coefficients a_i with Σ a_i ζ_i ζ_i* = 1, from the recursion and, for
//! n = 1, from the closed form; both verified in the sphere algebra.

use qwps::ncalgebra::coeffs::{coeffs_n1_closed, connection_coeffs_a, connection_coeffs_b, verify_coeffs, Side};
use qwps::poly::PolyDisplay;

fn main() -> qwps::Result<()> {
    for p in [vec![2u32, 3], vec![3, 4], vec![2, 1, 3]] {
        let a = connection_coeffs_a(&p)?;
        let b = connection_coeffs_b(&p)?;
        println!("p = {p:?}");
        for (i, c) in a.iter().enumerate() {
            println!("  a_{i} = {}", PolyDisplay { poly: c, offset: 1 });
        }
        for (i, c) in b.iter().enumerate() {
            println!("  b_{i} = {}", PolyDisplay { poly: c, offset: 1 });
        }
        if p.len() == 2 {
            let closed = coeffs_n1_closed(p[0], p[1]);
            println!("  closed form satisfies the identity: {}", verify_coeffs(&p, &closed, Side::A));
        }
    }
    Ok(())
}
