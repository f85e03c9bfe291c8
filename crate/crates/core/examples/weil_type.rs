//! A x B with A of CM type on E and B an elliptic curve with CM by Q: the
//! characters chi, chi0 and the certificates behind the verdict.

use cmlattice::fixtures;
use cmlattice::verdict::check_weil_type;

fn main() -> cmlattice::Result<()> {
    let sc = fixtures::load("g6-split")?;
    let r = check_weil_type(&sc)?;
    println!("status: {}", r.verdict.status);
    let d = r.data.expect("weil-type data");
    println!("n = {}, m = {}, n0 = {}, |X| = {}", d.n, d.m, d.n0, d.x_size);
    println!("f_j = {:?}", d.f_j);
    println!("chi  = {}", d.lattice.format(&d.chi));
    println!("chi0 = {}", d.lattice0.format(&d.chi0));
    for (what, ok) in d.certificates() {
        println!("  {what}: {ok}");
    }
    Ok(())
}
