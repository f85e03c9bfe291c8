//! Parse a scenario from a string, run its checks and read back the
//! machine section.

use cmlattice::report::{MachineSection, ScenarioReport};
use cmlattice::scenario::Scenario;

const TEXT: &str = r#"
name = "two-curves"

[group]
preset = "C2xC2"

[subgroup.H1]
members = ["e", "t"]

[subgroup.H2]
members = ["e", "ct"]

[factor.E1]
subgroup = "H1"
phi = ["e"]

[factor.E2]
subgroup = "H2"
phi = ["e"]

[reduction]
subgroup = "H1"

[checks]
run = ["reduction", "frobenius_kernel", "frobenius_examples"]
"#;

fn main() -> cmlattice::Result<()> {
    let sc = Scenario::parse(TEXT, "inline")?;
    let report = ScenarioReport::build(&sc)?;
    let text = report.render();
    print!("{text}");
    let m = MachineSection::parse(&text)?;
    println!("frobenius_kernel.rank = {:?}", m.get("frobenius_kernel.rank"));
    Ok(())
}
