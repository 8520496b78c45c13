//! Words in the sphere generators brought to normal order, checked against
//! plain rewriting, and the lens relations verified exactly.

use qwps::ncalgebra::lens::{lens_relations, sphere_identities};
use qwps::ncalgebra::{normal_form_by_rewriting, parse_word, Element};

fn main() -> qwps::Result<()> {
    let n = 2;
    for w in ["z0* z0", "z1* z0 z1 z0*", "z2* z2 z1* z1"] {
        let word = parse_word(w)?;
        let a = Element::from_word(n, &word)?;
        assert_eq!(a, normal_form_by_rewriting(n, &word)?);
        println!("{w:>16}  =  {a}");
    }

    let p = [2, 1, 3];
    let rels = lens_relations(&p);
    let ids = sphere_identities(n, 3);
    let failed: Vec<&str> = rels.iter().chain(&ids).filter(|r| !r.holds(n, &p)).map(|r| r.name.as_str()).collect();
    println!("p = {p:?}: {} relations, {} failures", rels.len() + ids.len(), failed.len());
    Ok(())
}
