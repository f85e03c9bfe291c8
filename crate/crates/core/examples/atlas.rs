//! Every simple isogeny class over F_q whose Frobenius lies in K, for a
//! group and a decomposition group.

use cmlattice::group::FiniteGroup;
use cmlattice::weil::WeilContext;

fn main() -> cmlattice::Result<()> {
    let g = FiniteGroup::preset("C2xC4")?;
    let d = g.generated(&[g.element("ct2")?]);
    let ctx = WeilContext::new(&g, &d);
    println!("|X| = {}, n0 = {}", ctx.x_len(), ctx.n0());
    for class in ctx.enumerate_simple_classes() {
        let f = class.representative();
        let inv = ctx.invariants(f)?;
        let slopes: Vec<String> = inv.slope_multiplicities.iter().map(|(s, m)| format!("{s}^{m}")).collect();
        println!(
            "{f:?}: orbit {}, dim {}, e {}, slopes {}",
            class.orbit.len(),
            inv.dim,
            inv.e,
            slopes.join(" ")
        );
    }
    Ok(())
}
