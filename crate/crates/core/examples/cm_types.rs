//! CM types on C6: validity, reflex subgroup, primitivity, and the Serre
//! lattice of Gal(K/Q).

use cmlattice::cm::{cm_type_tools, CmType, SerreLattice};
use cmlattice::group::FiniteGroup;

fn main() -> cmlattice::Result<()> {
    let g = FiniteGroup::preset("C6")?;
    let h = g.trivial();
    let el = |s: &str| g.element(s).unwrap();
    for phi in [vec!["e", "t", "t5"], vec!["e", "t", "t2"], vec!["e", "t2", "t4"], vec!["e", "t"]] {
        let members: Vec<usize> = phi.iter().map(|s| el(s)).collect();
        let mut mask = vec![false; g.order()];
        for &m in &members {
            mask[m] = true;
        }
        let r = cm_type_tools(&g, &h, &mask);
        print!("{{{}}}: ", phi.join(", "));
        if !r.valid {
            println!("not a CM type ({})", r.reason.unwrap_or_default());
            continue;
        }
        let reflex = r.reflex_subgroup.unwrap();
        let labels: Vec<&str> = reflex.members().iter().map(|&x| g.label(x)).collect();
        println!(
            "reflex subgroup {{{}}}, primitive {}",
            labels.join(", "),
            r.primitive.unwrap_or(false)
        );
    }

    let phi = CmType::from_elements(&g, &h, &[el("e"), el("t"), el("t5")])?;
    let serre = SerreLattice::new(&g);
    println!("Serre lattice of C6: rank {} in Z^{}", serre.rank(), serre.dim());
    for s in ["e", "t"] {
        let psi = phi.psi(&g, el(s));
        println!("psi_{s} = {psi:?}, in lattice: {}, weight {}", serre.is_member(&psi), serre.weight(&psi));
    }
    Ok(())
}
