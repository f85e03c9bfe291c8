//! The character group of L(A) and the kernel of its map to X*(MT(A)).

use cmlattice::fixtures;

fn main() -> cmlattice::Result<()> {
    for name in ["ell-ordinary", "g8-k3", "g6-split"] {
        let sc = fixtures::load(name)?;
        let spec = &sc.spec;
        let lat = spec.lefschetz();
        let k = spec.mt_kernel()?;
        println!(
            "{name}: dim A = {}, X*(L(A)) rank {}, kernel rank {}",
            spec.dimension(),
            lat.rank(),
            k.rank
        );
        for gen in &k.generators {
            println!("  exotic Hodge character {}", lat.format(gen));
        }
    }
    Ok(())
}
