//! Sort the fixtures into the families of Frobenius examples.

use cmlattice::fixtures;
use cmlattice::verdict::{family_of, reduced_invariants};
use cmlattice::weil::WeilContext;

fn main() -> cmlattice::Result<()> {
    for name in fixtures::names() {
        let sc = fixtures::load(name)?;
        let ctx = WeilContext::new(&sc.group, &sc.decomposition);
        let invs = reduced_invariants(&sc.spec, &ctx)?;
        let dims: Vec<usize> = invs.iter().map(|i| i.dim).collect();
        match family_of(&invs) {
            Some(f) => println!("{name}: dims {dims:?}, {f:?}"),
            None => println!("{name}: dims {dims:?}, no family"),
        }
    }
    Ok(())
}
