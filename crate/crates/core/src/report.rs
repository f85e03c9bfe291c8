//! Scenario reports: a human-readable part followed by a machine section,
//! see `docs/report-format.md`.

use crate::error::{Error, Result};
use crate::lattice::{Int, ZVec};
use crate::scenario::Scenario;
use crate::verdict::{evaluate, Status, Verdict};
use std::fmt::Write as _;

pub const MACHINE_BEGIN: &str = "--- machine ---";
pub const MACHINE_END: &str = "--- end ---";

/// Ordered `key = int int ...` lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MachineSection {
    pub entries: Vec<(String, ZVec)>,
}

fn valid_key(k: &str) -> bool {
    !k.is_empty()
        && k.bytes()
            .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_' || b == b'.')
}

/// Map anything outside `[a-z0-9_.]` to `_`.
pub fn sanitize_key(k: &str) -> String {
    k.chars()
        .map(|c| {
            let c = c.to_ascii_lowercase();
            if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

impl MachineSection {
    pub fn push(&mut self, key: &str, values: ZVec) {
        self.entries.push((sanitize_key(key), values));
    }

    pub fn get(&self, key: &str) -> Option<&ZVec> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        out.push_str(MACHINE_BEGIN);
        out.push('\n');
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push_str(" =");
            for x in v {
                let _ = write!(out, " {x}");
            }
            out.push('\n');
        }
        out.push_str(MACHINE_END);
        out.push('\n');
        out
    }

    /// Parse the first machine section found in `text`.
    pub fn parse(text: &str) -> Result<MachineSection> {
        let mut lines = text.lines().enumerate();
        for (_, l) in lines.by_ref() {
            if l == MACHINE_BEGIN {
                break;
            }
        }
        let mut entries = Vec::new();
        for (i, l) in lines {
            if l == MACHINE_END {
                return Ok(MachineSection { entries });
            }
            let bad = |msg: &str| Error::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let (k, rest) = l.split_once(" =").ok_or_else(|| bad("expected `key = ints`"))?;
            if !valid_key(k) {
                return Err(bad("key must match [a-z0-9_.]+"));
            }
            if !rest.is_empty() && !rest.starts_with(' ') {
                return Err(bad("expected a space after `=`"));
            }
            let v: ZVec = rest
                .split(' ')
                .skip(1)
                .map(|t| t.parse::<Int>().map_err(|_| bad(&format!("not an integer: `{t}`"))))
                .collect::<Result<_>>()?;
            entries.push((k.to_string(), v));
        }
        Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("missing `{MACHINE_END}`"),
        })
    }
}

#[derive(Clone, Debug)]
pub struct ScenarioReport {
    pub scenario: String,
    pub header: Vec<String>,
    pub verdicts: Vec<Verdict>,
}

impl ScenarioReport {
    pub fn build(sc: &Scenario) -> Result<ScenarioReport> {
        let g = &sc.group;
        let d: Vec<&str> = sc.decomposition.members().iter().map(|&x| g.label(x)).collect();
        let header = vec![
            format!("group {} (order {}), iota = {}", g.name(), g.order(), g.label(g.iota())),
            format!("decomposition group D = {{{}}}", d.join(", ")),
            format!("ambient basis: {}", sc.spec.labels().join(" ")),
            format!("dim A = {}", sc.spec.dimension()),
        ];
        let verdicts = sc.checks.iter().map(|&c| evaluate(sc, c)).collect::<Result<Vec<_>>>()?;
        Ok(ScenarioReport {
            scenario: sc.name.clone(),
            header,
            verdicts,
        })
    }

    pub fn any_fails(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Fails)
    }

    pub fn machine(&self) -> MachineSection {
        let mut m = MachineSection::default();
        for v in &self.verdicts {
            let c = v.check.name();
            m.push(&format!("{c}.status"), vec![Int::from(v.status.code())]);
            for (k, x) in &v.values {
                m.push(&format!("{c}.{k}"), x.clone());
            }
        }
        m
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario {}", self.scenario);
        for h in &self.header {
            let _ = writeln!(out, "  {h}");
        }
        for v in &self.verdicts {
            let _ = writeln!(out, "\n[{}] {}", v.check, v.status);
            for t in &v.trace {
                let _ = writeln!(out, "  {t}");
            }
            for (k, w) in &v.witnesses {
                let _ = writeln!(out, "  {k}: {w}");
            }
            for c in &v.conditions {
                let _ = writeln!(out, "  assumes {c}");
            }
        }
        out.push('\n');
        out.push_str(&self.machine().emit());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::zvec;

    #[test]
    fn roundtrip() {
        let mut m = MachineSection::default();
        m.push("a.status", zvec(&[0]));
        m.push("b.empty", vec![]);
        m.push("B.Gen-0", zvec(&[-3, 12, 0]));
        let text = m.emit();
        assert!(text.contains("b.gen_0 = -3 12 0\n"));
        assert!(text.contains("b.empty =\n"));
        let back = MachineSection::parse(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.emit(), text);
    }

    #[test]
    fn rejects() {
        let t = format!("{MACHINE_BEGIN}\nX = 1\n{MACHINE_END}\n");
        assert!(matches!(MachineSection::parse(&t), Err(Error::Parse { line: 2, .. })));
        let t = format!("{MACHINE_BEGIN}\nx = 1 y\n{MACHINE_END}\n");
        assert!(MachineSection::parse(&t).is_err());
        assert!(MachineSection::parse(MACHINE_BEGIN).is_err());
    }
}
