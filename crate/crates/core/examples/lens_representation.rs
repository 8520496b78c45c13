//! The irreducible representation of the lens space on ℓ²(ℕ^n): relation
//! defects on a truncated basis and a matrix exported in coordinate form.

use qwps::ncalgebra::lens::{lens_relations, x};
use qwps::repr::{check_relations, lens_basis, lens_irrep, matrix_of, NumericElement};

fn main() -> qwps::Result<()> {
    let (p, r, q) = ([2u32, 1, 3], [1u32, 0], 0.5);
    let rep = lens_irrep(&p, &r, q)?;
    let basis: Vec<_> = lens_basis(2, &r, 10).into_iter().map(|b| b.m).collect();
    let defects = check_relations(&rep, &lens_relations(&p), &basis)?;
    let (name, worst) = defects.iter().max_by(|a, b| a.1.total_cmp(&b.1)).expect("relations");
    println!("{} basis vectors, largest relation defect {worst:.2e} ({name})", basis.len());

    let x1 = NumericElement::new(&x(2, 1), q);
    let m = matrix_of(&rep, &x1, 3)?;
    println!("x_1 on ‖m‖₁ ≤ 3 ({} nonzero entries):", m.nnz());
    print!("{}", m.to_coo());
    Ok(())
}
