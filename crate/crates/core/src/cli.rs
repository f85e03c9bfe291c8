//! The `cmlattice` command line. Exit codes: 0 success, 1 some verdict
//! fails, 2 error.

use crate::error::{Error, Result};
use crate::fixtures;
use crate::group::{FiniteGroup, Subgroup};
use crate::hodge::{lefschetz_power, nondegeneracy_induction, Monomial};
use crate::lattice::Int;
use crate::reduction::{fundamental_diagram, restriction_map, DiagramOutcome};
use crate::report::{MachineSection, ScenarioReport};
use crate::scenario::Scenario;
use crate::weil::WeilContext;
use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "cmlattice", version, about = "Character-lattice checks for CM abelian varieties and their reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the checks requested by each scenario file.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Census of simple isogeny classes over F for a group and decomposition group.
    Atlas {
        /// Group preset: C<n>, C2xC<n>, S3xC2.
        group: String,
        /// trivial, all, HQ, <g1,g2> (generators) or {a,b} (members).
        d: String,
    },
    /// Run a built-in fixture end to end.
    Example { name: String },
    /// Consistency checks over every built-in fixture.
    Selftest,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Parse `args` (including the program name) and run. Errors go to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_ERROR;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let res = match cli.command {
        Command::Check { files } => check(&files, out, err),
        Command::Atlas { group, d } => atlas(&group, &d, out),
        Command::Example { name } => example(&name, out),
        Command::Selftest => selftest(out),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn report_code(r: &ScenarioReport) -> i32 {
    if r.any_fails() {
        EXIT_FAILS
    } else {
        EXIT_OK
    }
}

fn check(files: &[PathBuf], out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut code = EXIT_OK;
    for (i, f) in files.iter().enumerate() {
        if i > 0 {
            writeln!(out).map_err(io)?;
        }
        match Scenario::from_path(f).and_then(|sc| ScenarioReport::build(&sc)) {
            Ok(r) => {
                out.write_all(r.render().as_bytes()).map_err(io)?;
                code = code.max(report_code(&r));
            }
            Err(e) => {
                writeln!(err, "error: {}: {e}", f.display()).map_err(io)?;
                code = EXIT_ERROR;
            }
        }
    }
    Ok(code)
}

fn example(name: &str, out: &mut dyn Write) -> Result<i32> {
    let sc = fixtures::load(name)?;
    let r = ScenarioReport::build(&sc)?;
    out.write_all(r.render().as_bytes()).map_err(io)?;
    Ok(report_code(&r))
}

/// Subgroup syntax for `atlas`.
pub fn parse_subgroup_arg(g: &FiniteGroup, s: &str) -> Result<Subgroup> {
    let s = s.trim();
    let list = |inner: &str| -> Result<Vec<usize>> {
        inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| g.element(t))
            .collect()
    };
    match s {
        "trivial" => Ok(g.trivial()),
        "all" | "whole" => Ok(g.whole()),
        "HQ" => {
            let cands: Vec<Subgroup> = g
                .overgroups(&g.trivial())
                .into_iter()
                .filter(|h| 2 * h.order() == g.order() && !h.contains(g.iota()))
                .collect();
            match cands.as_slice() {
                [h] => Ok(h.clone()),
                _ => Err(Error::Validation(format!(
                    "HQ needs a unique index-2 subgroup without iota; {} has {}",
                    g.name(),
                    cands.len()
                ))),
            }
        }
        _ if s.starts_with('<') && s.ends_with('>') => Ok(g.generated(&list(&s[1..s.len() - 1])?)),
        _ if s.starts_with('{') && s.ends_with('}') => g.subgroup(&list(&s[1..s.len() - 1])?),
        _ => Err(Error::Validation(format!(
            "cannot read subgroup `{s}` (trivial, all, HQ, <g,..>, {{a,..}})"
        ))),
    }
}

fn atlas(group: &str, d: &str, out: &mut dyn Write) -> Result<i32> {
    let g = FiniteGroup::preset(group)?;
    let d = parse_subgroup_arg(&g, d)?;
    let ctx = WeilContext::new(&g, &d);
    let labels: Vec<&str> = d.members().iter().map(|&x| g.label(x)).collect();
    let mut text = String::new();
    text.push_str(&format!(
        "atlas {} D = {{{}}}: |X| = {}, n0 = {}\n",
        g.name(),
        labels.join(", "),
        ctx.x_len(),
        ctx.n0()
    ));
    let diagram = fundamental_diagram(&ctx);
    text.push_str(&match &diagram {
        DiagramOutcome::Diagram(_) if diagram.passes() => "diagram: exact, commutes\n".to_string(),
        DiagramOutcome::Diagram(_) => "diagram: FAILED\n".to_string(),
        DiagramOutcome::Degenerate { weil_rank, .. } => {
            format!("diagram: degenerate (iota in D), W^K rank {weil_rank}\n")
        }
    });
    let classes = ctx.enumerate_simple_classes();
    text.push_str(&format!("{} simple isogeny classes\n", classes.len()));
    text.push_str("germ | dim | [Q[pi]:Q] | e | slopes\n");
    let mut machine = MachineSection::default();
    machine.push("atlas.classes", vec![Int::from(classes.len())]);
    for (k, c) in classes.iter().enumerate() {
        let f = c.representative();
        let inv = ctx.invariants(f)?;
        let germ: Vec<String> = f.iter().map(|x| x.to_string()).collect();
        let slopes: Vec<String> = inv
            .slope_multiplicities
            .iter()
            .map(|(s, m)| format!("{s}^{m}"))
            .collect();
        text.push_str(&format!(
            "({}) | {} | {} | {} | {}\n",
            germ.join(","),
            inv.dim,
            inv.deg_center,
            inv.e,
            slopes.join(" ")
        ));
        machine.push(
            &format!("atlas.class.{k}"),
            vec![Int::from(inv.dim), Int::from(inv.deg_center), Int::from(inv.e)],
        );
    }
    text.push('\n');
    text.push_str(&machine.emit());
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(if diagram.passes() { EXIT_OK } else { EXIT_FAILS })
}

fn selftest(out: &mut dyn Write) -> Result<i32> {
    let mut failures = 0;
    let mut line = |name: String, ok: bool, out: &mut dyn Write| -> Result<()> {
        if !ok {
            failures += 1;
        }
        writeln!(out, "{} {name}", if ok { "ok  " } else { "FAIL" }).map_err(io)
    };
    for name in fixtures::names() {
        let sc = fixtures::load(name)?;
        let r = ScenarioReport::build(&sc)?;
        line(format!("{name}: no failing verdict"), !r.any_fails(), out)?;
        let text = r.render();
        let parsed = MachineSection::parse(&text)?;
        line(format!("{name}: machine section round-trips"), parsed == r.machine() && parsed.emit() == r.machine().emit(), out)?;
        let ctx = WeilContext::new(&sc.group, &sc.decomposition);
        line(format!("{name}: fundamental diagram"), fundamental_diagram(&ctx).passes(), out)?;
        if let Ok(red) = restriction_map(&sc.spec, &ctx) {
            let p = red.p_kernel(&ctx)?;
            line(
                format!("{name}: slope-sum criterion equals P-kernel"),
                red.slope_sum_kernel(&sc.spec, &ctx) == p.preimage,
                out,
            )?;
        }
    }
    for g in 1..=4u32 {
        let ok = (0..=g).all(|k| {
            let l = lefschetz_power(k, g).expect("k <= g");
            let fact: u64 = (1..=k as u64).product();
            let binom = (0..k as u64).fold(1u64, |acc, i| acc * (g as u64 - i) / (i + 1));
            l.len() as u64 == binom
                && l.terms().iter().all(|(m, c)| {
                    m.stripped() == Monomial::unit() && m.degree() == 2 * k && *c == crate::weil::rat(fact as i64, 1)
                })
        });
        line(format!("L^k coefficients are k! for g = {g}"), ok, out)?;
    }
    let seed = [Monomial::unit()];
    let nd = nondegeneracy_induction(&seed, 3)?.nondegenerate();
    line("Lefschetz seed nondegenerate for g = 3".into(), nd, out)?;
    writeln!(out, "{}", if failures == 0 { "selftest passed" } else { "selftest FAILED" }).map_err(io)?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_FAILS })
}
