//! Symmetric q-binomials and the polynomial f_{p0}(t).

use qwps::qarith::{binomial_generating_product, f_poly, f_product, q_binomial};

fn main() -> qwps::Result<()> {
    for m in 0..=4 {
        let row: Vec<String> = (0..=m).map(|k| q_binomial(m, k).map(|b| format!("[{b}]"))).collect::<Result<_, _>>()?;
        println!("m = {m}: {}", row.join("  "));
    }
    // ∏_{l<m} (1 + q^{2l} t) = Σ_k q^{k(m-1)} [m k] t^k
    let m = 5;
    let prod = binomial_generating_product(m);
    for k in 0..=m {
        let b = q_binomial(m, k)?.shift(k as i32 * (m as i32 - 1));
        assert_eq!(prod.coeff(k as usize), b);
    }
    println!("generating identity holds for m = {m}");
    for p0 in 1..=4 {
        assert_eq!(f_poly(p0), f_product(p0));
        println!("f_{p0}(t) = {}", f_poly(p0));
    }
    Ok(())
}
