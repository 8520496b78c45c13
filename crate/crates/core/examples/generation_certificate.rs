//! When ℓ is not of the form p♯ the ξ_{i,j} miss part of the invariant
//! subalgebra; the test returns a grade-zero monomial of length three.

use qwps::ncalgebra::lens::xi;
use qwps::ncalgebra::{generation_test, Generation};
use qwps::weights::WeightVector;

fn main() -> qwps::Result<()> {
    for w in [[1u64, 2, 3], [1, 2, 2], [2, 3, 5]] {
        for i in 0..3 {
            for j in i + 1..3 {
                println!("  ξ_{i}{j} = {}", xi(&w, i, j));
            }
        }
        match generation_test(&WeightVector::from_u64(&w)?)? {
            Generation::Generated(p) => println!("{w:?}: generated, p = {p}"),
            Generation::NotGenerated(c) => {
                println!("{w:?}: not generated, witness {} of grade {} from triple {:?}", c.monomial, c.grade, c.triple)
            }
        }
    }
    Ok(())
}
