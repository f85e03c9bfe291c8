//! The diagram comparing the Serre lattice of K with the Weil-germ lattice
//! of the decomposition field, for every subgroup D of a small group.

use cmlattice::group::FiniteGroup;
use cmlattice::reduction::{fundamental_diagram, DiagramOutcome};
use cmlattice::weil::WeilContext;

fn main() -> cmlattice::Result<()> {
    for name in ["C4", "C2xC4", "S3xC2"] {
        let g = FiniteGroup::preset(name)?;
        for d in g.overgroups(&g.trivial()) {
            let ctx = WeilContext::new(&g, &d);
            let labels: Vec<&str> = d.members().iter().map(|&x| g.label(x)).collect();
            let line = match fundamental_diagram(&ctx) {
                DiagramOutcome::Diagram(dg) => format!(
                    "Serre rank {}, Weil rank {}, commutes {}",
                    dg.serre_rank,
                    dg.weil_rank,
                    dg.left_square_commutes && dg.right_square_commutes
                ),
                DiagramOutcome::Degenerate { weil_rank, constant_slopes_only } => {
                    format!("iota in D: Weil rank {weil_rank}, constant slopes only {constant_slopes_only}")
                }
            };
            println!("{name} D = {{{}}}: {line}", labels.join(", "));
        }
    }
    Ok(())
}
