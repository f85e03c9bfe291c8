//! Symbolic cohomology: powers of the Lefschetz class, the nondegeneracy
//! induction, and the characters of exotic Hodge classes.

use cmlattice::fixtures;
use cmlattice::hodge::{exotic_hodge_characters, lefschetz_power, nondegeneracy_induction, HodgeFrame, Monomial};

fn main() -> cmlattice::Result<()> {
    let g = 3;
    let l2 = lefschetz_power(2, g)?;
    for (m, c) in l2.terms() {
        println!("L^2 on g = {g}: {c} * {}", m.format(g));
    }
    let report = nondegeneracy_induction(&[Monomial::unit()], g)?;
    println!(
        "seed {{1}}: closure of {} monomials, nondegenerate {}",
        report.closure.len(),
        report.nondegenerate()
    );

    let sc = fixtures::load("g6-split")?;
    let frame = HodgeFrame::new(&sc.spec)?;
    let lat = sc.spec.lefschetz();
    for ((r, chi), count) in exotic_hodge_characters(&sc.spec, &frame, frame.g()) {
        println!("degree {}: {} on {count} monomial(s)", 2 * r, lat.format(&chi));
    }
    Ok(())
}
