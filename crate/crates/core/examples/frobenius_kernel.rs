//! Restrict X*(L(A)) to the Frobenius germs and compute the kernel of
//! X*(L(A0)) -> X*(P(A0)), against the slope-sum description.

use cmlattice::fixtures;
use cmlattice::reduction::restriction_map;
use cmlattice::weil::WeilContext;

fn main() -> cmlattice::Result<()> {
    for name in ["ell-ord-ss", "g6-split", "g6-ord", "s3-ao"] {
        let sc = fixtures::load(name)?;
        let ctx = WeilContext::new(&sc.group, &sc.decomposition);
        let red = restriction_map(&sc.spec, &ctx)?;
        for g in &red.germs {
            println!("{name}: {} germ {:?}", sc.spec.factors()[g.factor].name, g.f);
        }
        let p = red.p_kernel(&ctx)?;
        println!("{name}: P-kernel rank {}, saturated {}", p.rank, p.saturated);
        for gen in &p.generators {
            println!("  exotic Tate character {}", red.lattice.format(gen));
        }
        assert_eq!(red.slope_sum_kernel(&sc.spec, &ctx), p.preimage);
    }
    Ok(())
}
