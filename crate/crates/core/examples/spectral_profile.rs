//! Dirac operator |D||m⟩ = ‖m‖₁|m⟩: multiplicities, bounded commutators with
//! the generators, and partial sums of the zeta function.

use qwps::fredholm::FredholmLabel;
use qwps::ncalgebra::lens::xi;
use qwps::spectral::{commutator_profile, multiplicity, zeta_partial, DiracSpec, LambdaKind};

fn main() -> qwps::Result<()> {
    let n = 2;
    let mults: Vec<u64> = (0..=8).map(|t| multiplicity(n, t)).collect();
    println!("multiplicities for n = {n}: {mults:?}");

    let p = [2u32, 1, 3];
    let l = [3u64, 6, 2];
    let label = FredholmLabel::new(2, vec![1, 0], &p)?;
    let spec = DiracSpec::new(n, LambdaKind::Identity, 16)?;
    println!("generator,cutoff,norm,envelope");
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let prof = commutator_profile(&xi(&l, i, j), &spec, &p, &label, 0.5, &[8, 12, 16])?;
        for pt in &prof.points {
            println!("xi_{i}{j},{},{:.6},{:.6}", pt.cutoff, pt.norm, pt.envelope);
        }
    }

    for (kind, s) in [(LambdaKind::Identity, 3.0), (LambdaKind::Power(3.0), 3.0), (LambdaKind::Power(3.0), 3.5)] {
        let spec = DiracSpec::new(n, kind.clone(), 0)?;
        let z = zeta_partial(&spec, s, 4000)?;
        println!("{kind:?}, s = {s}: partial sum {:.6}, increments ~ j^{:.3}, convergent: {}", z.value, z.increment_exponent, z.convergent);
    }
    Ok(())
}
