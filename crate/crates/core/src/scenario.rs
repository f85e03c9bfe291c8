//! Scenario files: TOML with a fixed set of sections, see
//! `docs/scenario-format.md`.
//!
//! Factors are ordered by name, which fixes the ambient basis of every
//! lattice in the report.

use crate::cm::{AvSpec, CmType, Factor};
use crate::error::{Error, Result};
use crate::group::{CosetSpace, FiniteGroup, Subgroup};
use crate::lattice::{Int, ZVec};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Option<String>,
    group: RawGroup,
    #[serde(default)]
    subgroup: BTreeMap<String, RawSubgroup>,
    factor: BTreeMap<String, RawFactor>,
    reduction: RawSubgroup,
    #[serde(default)]
    facts: RawFacts,
    algebraic: Option<RawAlgebraic>,
    checks: Option<RawChecks>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    preset: Option<String>,
    labels: Option<Vec<String>>,
    table: Option<Vec<Vec<usize>>>,
    iota: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubgroup {
    subgroup: Option<String>,
    members: Option<Vec<String>>,
    generators: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactor {
    subgroup: String,
    phi: Vec<String>,
    multiplicity: Option<usize>,
    role: Option<String>,
    half: Option<Vec<String>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFacts {
    p_splits_in_q: Option<bool>,
    q_root_of_unity: Option<bool>,
    determinant_one: Option<bool>,
    schoen_exotic_algebraic: Option<bool>,
    degree_e: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebraic {
    source: String,
    characters: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChecks {
    run: Vec<String>,
}

/// Arithmetic facts the engine cannot compute; each verdict that uses one
/// lists it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facts {
    pub p_splits_in_q: bool,
    /// `true` when read from the file rather than computed from `D`.
    pub p_splits_declared: bool,
    pub q_root_of_unity: bool,
    pub determinant_one: bool,
    pub schoen_exotic_algebraic: bool,
    pub degree_e: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraicSource {
    /// Characters trivial on the Mumford-Tate group.
    MumfordTate,
    /// Explicit vectors over the ambient basis.
    Declared(Vec<ZVec>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Reduction,
    Diagram,
    MtKernel,
    FrobeniusKernel,
    MtIntersection,
    AlgebraicCharacters,
    WeilType,
    SexticWeilType,
    FrobeniusExamples,
    GaloisCase,
    EllPrimeSet,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Reduction,
        Check::Diagram,
        Check::MtKernel,
        Check::FrobeniusKernel,
        Check::MtIntersection,
        Check::AlgebraicCharacters,
        Check::WeilType,
        Check::SexticWeilType,
        Check::FrobeniusExamples,
        Check::GaloisCase,
        Check::EllPrimeSet,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Reduction => "reduction",
            Check::Diagram => "diagram",
            Check::MtKernel => "mt_kernel",
            Check::FrobeniusKernel => "frobenius_kernel",
            Check::MtIntersection => "mt_intersection",
            Check::AlgebraicCharacters => "algebraic_characters",
            Check::WeilType => "weil_type",
            Check::SexticWeilType => "sextic_weil_type",
            Check::FrobeniusExamples => "frobenius_examples",
            Check::GaloisCase => "galois_case",
            Check::EllPrimeSet => "ell_prime_set",
        }
    }

    pub fn from_name(s: &str) -> Option<Check> {
        Check::ALL.iter().copied().find(|c| c.name() == s)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub group: FiniteGroup,
    pub subgroups: BTreeMap<String, Subgroup>,
    pub spec: AvSpec,
    /// Factor playing the CM field `E` containing `Q`.
    pub e_factor: Option<usize>,
    /// Factor whose field is the quadratic imaginary `Q`.
    pub q_factor: Option<usize>,
    pub decomposition: Subgroup,
    pub facts: Facts,
    pub algebraic: AlgebraicSource,
    pub checks: Vec<Check>,
}

impl Scenario {
    pub fn from_path(path: &Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
        Scenario::parse(&text, stem)
    }

    /// Parse and validate; `default_name` is used when the file has no
    /// `name` key.
    pub fn parse(text: &str, default_name: &str) -> Result<Scenario> {
        let raw: RawScenario = toml::from_str(text).map_err(|e| {
            let line = e.span().map(|s| line_of(text, s.start)).unwrap_or(0);
            Error::Parse {
                line,
                msg: e.message().to_string(),
            }
        })?;
        build(raw, default_name)
    }

    pub fn h_q(&self) -> Option<&Subgroup> {
        self.q_factor.map(|k| self.spec.factors()[k].cm.space().subgroup())
    }

    pub fn h_e(&self) -> Option<&Subgroup> {
        self.e_factor.map(|k| self.spec.factors()[k].cm.space().subgroup())
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn resolve_elements(g: &FiniteGroup, names: &[String]) -> Result<Vec<usize>> {
    names.iter().map(|n| g.element(n)).collect()
}

fn resolve_subgroup(
    g: &FiniteGroup,
    known: &BTreeMap<String, Subgroup>,
    raw: &RawSubgroup,
    what: &str,
) -> Result<Subgroup> {
    let given = [raw.subgroup.is_some(), raw.members.is_some(), raw.generators.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::Validation(format!(
            "{what}: give exactly one of `subgroup`, `members`, `generators`"
        )));
    }
    if let Some(name) = &raw.subgroup {
        return named_subgroup(g, known, name, what);
    }
    if let Some(m) = &raw.members {
        let els = resolve_elements(g, m)?;
        return g
            .subgroup(&els)
            .map_err(|e| Error::Validation(format!("{what}: {e}")));
    }
    let gens = resolve_elements(g, raw.generators.as_deref().unwrap_or(&[]))?;
    Ok(g.generated(&gens))
}

fn named_subgroup(g: &FiniteGroup, known: &BTreeMap<String, Subgroup>, name: &str, what: &str) -> Result<Subgroup> {
    match name {
        "trivial" => Ok(g.trivial()),
        "whole" => Ok(g.whole()),
        _ => known
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Validation(format!("{what}: unknown subgroup `{name}`"))),
    }
}

fn build(raw: RawScenario, default_name: &str) -> Result<Scenario> {
    let group = match (&raw.group.preset, &raw.group.table) {
        (Some(p), None) => {
            if raw.group.labels.is_some() {
                return Err(Error::Validation("[group]: `labels` only go with `table`".into()));
            }
            let g = FiniteGroup::preset(p)?;
            if let Some(i) = &raw.group.iota {
                if g.element(i)? != g.iota() {
                    return Err(Error::Validation(format!(
                        "[group]: preset {p} has iota = {}, not {i}",
                        g.label(g.iota())
                    )));
                }
            }
            g
        }
        (None, Some(t)) => {
            let labels = raw
                .group
                .labels
                .clone()
                .unwrap_or_else(|| (0..t.len()).map(|i| format!("g{i}")).collect());
            let iota_name = raw
                .group
                .iota
                .as_ref()
                .ok_or_else(|| Error::Validation("[group]: a table needs `iota`".into()))?;
            let iota = labels
                .iter()
                .position(|l| l == iota_name)
                .ok_or_else(|| Error::Validation(format!("[group]: unknown iota `{iota_name}`")))?;
            FiniteGroup::from_table("table", labels, t.clone(), iota)?
        }
        _ => return Err(Error::Validation("[group]: give exactly one of `preset`, `table`".into())),
    };

    let mut subgroups: BTreeMap<String, Subgroup> = BTreeMap::new();
    for (name, rs) in &raw.subgroup {
        if name == "trivial" || name == "whole" {
            return Err(Error::Validation(format!("[subgroup.{name}]: reserved name")));
        }
        if rs.subgroup.is_some() {
            return Err(Error::Validation(format!("[subgroup.{name}]: use `members` or `generators`")));
        }
        let h = resolve_subgroup(&group, &subgroups, rs, &format!("[subgroup.{name}]"))?;
        subgroups.insert(name.clone(), h);
    }

    if raw.factor.is_empty() {
        return Err(Error::Validation("at least one [factor.<name>] is required".into()));
    }
    let mut factors = Vec::new();
    let mut e_factor = None;
    let mut q_factor = None;
    for (k, (name, rf)) in raw.factor.iter().enumerate() {
        let what = format!("[factor.{name}]");
        let h = named_subgroup(&group, &subgroups, &rf.subgroup, &what)?;
        let els = resolve_elements(&group, &rf.phi)?;
        let cm = CmType::from_elements(&group, &h, &els).map_err(|e| Error::Validation(format!("{what}: {e}")))?;
        let mult = rf.multiplicity.unwrap_or(1);
        if mult == 0 {
            return Err(Error::Validation(format!("{what}: multiplicity must be positive")));
        }
        let mut f = Factor::new(name, cm, mult);
        if let Some(half) = &rf.half {
            let space = CosetSpace::new(&group, &h);
            let cosets = resolve_elements(&group, half)?.iter().map(|&x| space.coset_of(x)).collect();
            f = f.with_half(cosets)?;
        }
        match rf.role.as_deref() {
            None => {}
            Some("E") if e_factor.is_none() => e_factor = Some(k),
            Some("Q") if q_factor.is_none() => q_factor = Some(k),
            Some(r @ ("E" | "Q")) => return Err(Error::Validation(format!("{what}: role {r} is already taken"))),
            Some(r) => return Err(Error::Validation(format!("{what}: unknown role `{r}` (E or Q)"))),
        }
        factors.push(f);
    }
    let spec = AvSpec::new(group.clone(), factors)?;
    let decomposition = resolve_subgroup(&group, &subgroups, &raw.reduction, "[reduction]")?;

    let h_q = q_factor.map(|k| spec.factors()[k].cm.space().subgroup().clone());
    if let Some(hq) = &h_q {
        if hq.order() * 2 != group.order() {
            return Err(Error::Validation("the Q factor must have two embeddings".into()));
        }
    }
    let computed_split = h_q.as_ref().map(|hq| decomposition.is_subgroup_of(hq));
    let p_splits_in_q = match (raw.facts.p_splits_in_q, computed_split) {
        (Some(d), Some(c)) if d != c => {
            return Err(Error::Validation(format!(
                "[facts] p_splits_in_q = {d} but D {} inside H_Q",
                if c { "is" } else { "is not" }
            )))
        }
        (Some(_), None) => {
            return Err(Error::Validation(
                "[facts] p_splits_in_q needs a factor with role Q to be checked against".into(),
            ))
        }
        (_, c) => c.unwrap_or(false),
    };
    if let (Some(d), Some(k)) = (raw.facts.degree_e, e_factor) {
        let c = spec.factors()[k].degree();
        if d != c {
            return Err(Error::Validation(format!("[facts] degree_e = {d} but E has degree {c}")));
        }
    }
    let facts = Facts {
        p_splits_in_q,
        p_splits_declared: raw.facts.p_splits_in_q.is_some(),
        q_root_of_unity: raw.facts.q_root_of_unity.unwrap_or(false),
        determinant_one: raw.facts.determinant_one.unwrap_or(false),
        schoen_exotic_algebraic: raw.facts.schoen_exotic_algebraic.unwrap_or(false),
        degree_e: raw.facts.degree_e.or(e_factor.map(|k| spec.factors()[k].degree())),
    };

    let algebraic = match raw.algebraic {
        None => AlgebraicSource::MumfordTate,
        Some(a) => match (a.source.as_str(), a.characters) {
            ("mt", None) => AlgebraicSource::MumfordTate,
            ("declared", Some(chars)) => {
                let n = spec.ambient_len();
                if let Some(bad) = chars.iter().find(|c| c.len() != n) {
                    return Err(Error::Validation(format!(
                        "[algebraic] character has {} entries, the ambient basis has {n}",
                        bad.len()
                    )));
                }
                AlgebraicSource::Declared(chars.iter().map(|c| c.iter().map(|&x| Int::from(x)).collect()).collect())
            }
            ("declared", None) => AlgebraicSource::Declared(Vec::new()),
            ("mt", Some(_)) => {
                return Err(Error::Validation("[algebraic] source = \"mt\" takes no characters".into()))
            }
            (s, _) => return Err(Error::Validation(format!("[algebraic] unknown source `{s}`"))),
        },
    };

    let checks = match raw.checks {
        None => Check::ALL.to_vec(),
        Some(c) => {
            let mut out = Vec::new();
            for s in &c.run {
                let ch = Check::from_name(s).ok_or_else(|| Error::Validation(format!("[checks] unknown check `{s}`")))?;
                if !out.contains(&ch) {
                    out.push(ch);
                }
            }
            out
        }
    };

    Ok(Scenario {
        name: raw.name.unwrap_or_else(|| default_name.to_string()),
        group,
        subgroups,
        spec,
        e_factor,
        q_factor,
        decomposition,
        facts,
        algebraic,
        checks,
    })
}
