//! Reduce a CM type at p: the Weil germ of Frobenius, its slopes and the
//! invariants of the simple isogeny class over F_q.

use cmlattice::cm::CmType;
use cmlattice::group::FiniteGroup;
use cmlattice::reduction::{reduce_factor, slope_at};
use cmlattice::weil::WeilContext;

fn main() -> cmlattice::Result<()> {
    let g = FiniteGroup::preset("C6")?;
    let el = |s: &str| g.element(s).unwrap();
    let phi = CmType::from_elements(&g, &g.trivial(), &[el("e"), el("t"), el("t5")])?;
    for (what, d) in [
        ("p splits completely", g.trivial()),
        ("D = <t2>", g.generated(&[el("t2")])),
        ("D = <t3>", g.generated(&[el("t3")])),
    ] {
        let ctx = WeilContext::new(&g, &d);
        let f = reduce_factor(&ctx, &phi)?;
        let slopes: Vec<String> = (0..ctx.x_len()).map(|w| slope_at(&ctx, &phi, w).to_string()).collect();
        let inv = ctx.invariants(&f)?;
        println!("{what}: germ {f:?}, weight {:?}", ctx.weight(&f));
        println!("  slopes {}", slopes.join(" "));
        println!(
            "  dim {}, [Q[pi]:Q] = {}, e = {}, supersingular {}",
            inv.dim, inv.deg_center, inv.e, inv.supersingular
        );
        for p in &inv.primes {
            println!("  prime {:?}: local degree {}, slope {}, inv {}", p.members, p.degree, p.slope, p.inv);
        }
    }
    Ok(())
}
