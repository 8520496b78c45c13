//! Strong connection ω(u^k), the idempotent E_k, and the pairing of E_1
//! with the Fredholm modules ℱ_{1,r}, which is −1 for every r.

use qwps::config::RunConfig;
use qwps::connection::{idempotent, nontriviality_certificate, strong_connection};

fn main() -> qwps::Result<()> {
    let p = [2u32, 3];
    for k in -2..=2 {
        let sc = strong_connection(k, &p)?;
        println!("k = {k:>2}: {} terms ({} before merging), grades ok: {}", sc.omega.len(), sc.unmerged_terms, sc.grades_ok());
    }
    let e = idempotent(1, &p)?;
    println!("E_1 is {}×{}, idempotent: {}", e.size(), e.size(), e.is_idempotent());
    print!("{}", e.to_text());
    for q in [0.3, 0.5] {
        let cert = nontriviality_certificate(&p, &RunConfig::default().with_q(q))?;
        for x in &cert.entries {
            println!("q = {q}: ⟨ℱ_1,{:?}, [E_1]⟩ = {:.9} (tail ≤ {:.1e}, cutoff {})", x.r, x.value, x.tail_bound, x.cutoff);
        }
    }
    Ok(())
}
