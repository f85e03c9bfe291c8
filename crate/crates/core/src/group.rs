//! Finite Galois groups with a central complex conjugation, subgroups and
//! left coset spaces.
//!
//! Elements are dense indices `0..order` and the identity is always `0`.
//! Preset orderings:
//!
//! * `C<n>` (n even): index `k` is `t^k`; `iota = t^(n/2)`.
//! * `C2xC<n>`: index `2`-factor-major, `(a, b) -> a*n + b` for `c^a t^b`;
//!   `iota = c = (1, 0)`.
//! * `S3xC2`: `(s, c) -> 2*s + c` with `s` running over
//!   `e, (12), (13), (23), (123), (132)`; `iota = (e, c)`, index 1.
//!   Permutations compose right to left.

use crate::error::{Error, Result};
use std::collections::BTreeSet;

pub const MAX_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    iota: usize,
}

impl FiniteGroup {
    /// Build from a multiplication table; `table[a][b] = a*b`. Element 0
    /// must be the identity.
    pub fn from_table(name: &str, labels: Vec<String>, table: Vec<Vec<usize>>, iota: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::Group(format!("order {n} outside 1..={MAX_ORDER}")));
        }
        if labels.len() != n {
            return Err(Error::Group("label count differs from table size".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Group("table is not square over 0..order".into()));
            }
            let distinct: BTreeSet<_> = row.iter().collect();
            if distinct.len() != n {
                return Err(Error::Group("table row is not a permutation".into()));
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::Group("element 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Group(format!(
                            "table is not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let inverse: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("rows are permutations"))
            .collect();
        if iota >= n || iota == 0 || table[iota][iota] != 0 {
            return Err(Error::Group("iota is not an involution".into()));
        }
        if (0..n).any(|g| table[g][iota] != table[iota][g]) {
            return Err(Error::Group("iota is not central".into()));
        }
        Ok(FiniteGroup {
            name: name.to_string(),
            labels,
            table,
            inverse,
            iota,
        })
    }

    /// `C<n>`, `C2xC<n>` or `S3xC2`.
    pub fn preset(name: &str) -> Result<Self> {
        if name == "S3xC2" {
            return Ok(s3_times_c2());
        }
        if let Some(n) = name.strip_prefix("C2xC").and_then(|s| s.parse::<usize>().ok()) {
            return c2_times_cyclic(n);
        }
        if let Some(n) = name.strip_prefix('C').and_then(|s| s.parse::<usize>().ok()) {
            return cyclic(n);
        }
        Err(Error::Group(format!("unknown group preset `{name}`")))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn iota(&self) -> usize {
        self.iota
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Group(format!("no element labelled `{label}` in {}", self.name)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn subgroup(&self, members: &[usize]) -> Result<Subgroup> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        if set.iter().any(|&x| x >= self.order()) {
            return Err(Error::Group("subgroup member out of range".into()));
        }
        if !set.contains(&0) {
            return Err(Error::Group("subset does not contain the identity".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(Error::Group(format!(
                        "subset is not closed: {}*{} missing",
                        self.label(a),
                        self.label(b)
                    )));
                }
            }
        }
        Ok(Subgroup::from_set(self.order(), set))
    }

    pub fn generated(&self, gens: &[usize]) -> Subgroup {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier: Vec<usize> = vec![0];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if set.insert(b) {
                    frontier.push(b);
                }
            }
        }
        Subgroup::from_set(self.order(), set)
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_set(self.order(), BTreeSet::from([0]))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_set(self.order(), (0..self.order()).collect())
    }

    pub fn conjugate(&self, h: &Subgroup, g: usize) -> Subgroup {
        let gi = self.inv(g);
        let set = h.members().iter().map(|&x| self.mul(self.mul(g, x), gi)).collect();
        Subgroup::from_set(self.order(), set)
    }

    /// All subgroups containing `h`, sorted by (order, members).
    pub fn overgroups(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack = vec![h.members().to_vec()];
        while let Some(m) = stack.pop() {
            if !found.insert(m.clone()) {
                continue;
            }
            for g in 0..self.order() {
                if m.binary_search(&g).is_err() {
                    let mut gens = m.clone();
                    gens.push(g);
                    stack.push(self.generated(&gens).members().to_vec());
                }
            }
        }
        let mut out: Vec<Subgroup> = found
            .into_iter()
            .map(|m| Subgroup::from_set(self.order(), m.into_iter().collect()))
            .collect();
        out.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
        out
    }

    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> BTreeSet<usize> {
        a.members()
            .iter()
            .flat_map(|&x| b.members().iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.mul(x, y))
            .collect()
    }
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::Group(format!("C{n} has no involution to serve as iota")));
    }
    let labels = (0..n).map(|k| power_label("t", k)).collect();
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_table(&format!("C{n}"), labels, table, n / 2)
}

fn c2_times_cyclic(n: usize) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(Error::Group("C2xC0 is not a group".into()));
    }
    let idx = |a: usize, b: usize| a * n + b;
    let mut labels = Vec::new();
    for a in 0..2 {
        for b in 0..n {
            let t = power_label("t", b);
            labels.push(match (a, b) {
                (0, _) => t,
                (1, 0) => "c".to_string(),
                _ => format!("c{t}"),
            });
        }
    }
    let mut table = vec![vec![0; 2 * n]; 2 * n];
    for a1 in 0..2 {
        for b1 in 0..n {
            for a2 in 0..2 {
                for b2 in 0..n {
                    table[idx(a1, b1)][idx(a2, b2)] = idx((a1 + a2) % 2, (b1 + b2) % n);
                }
            }
        }
    }
    FiniteGroup::from_table(&format!("C2xC{n}"), labels, table, idx(1, 0))
}

const S3: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
const S3_LABELS: [&str; 6] = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"];

fn s3_times_c2() -> FiniteGroup {
    let compose = |a: usize, b: usize| -> usize {
        let p: [usize; 3] = [S3[a][S3[b][0]], S3[a][S3[b][1]], S3[a][S3[b][2]]];
        S3.iter().position(|q| *q == p).expect("S3 is closed")
    };
    let mut labels = Vec::new();
    for s in S3_LABELS {
        labels.push(s.to_string());
        labels.push(if s == "e" { "c".to_string() } else { format!("{s}c") });
    }
    let mut table = vec![vec![0; 12]; 12];
    for x in 0..12 {
        for y in 0..12 {
            table[x][y] = 2 * compose(x / 2, y / 2) + (x % 2 + y % 2) % 2;
        }
    }
    FiniteGroup::from_table("S3xC2", labels, table, 1).expect("S3xC2 table is valid")
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => "e".to_string(),
        1 => base.to_string(),
        _ => format!("{base}{k}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    fn from_set(order: usize, set: BTreeSet<usize>) -> Self {
        let mut mask = vec![false; order];
        for &x in &set {
            mask[x] = true;
        }
        Subgroup {
            members: set.into_iter().collect(),
            mask,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

/// Left cosets `gH`, ordered by smallest element; coset 0 is `H` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSpace {
    subgroup: Subgroup,
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
    action: Vec<Vec<usize>>,
    iota_action: Vec<usize>,
    labels: Vec<String>,
}

impl CosetSpace {
    pub fn new(g: &FiniteGroup, h: &Subgroup) -> Self {
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let mut c: Vec<usize> = h.members().iter().map(|&y| g.mul(x, y)).collect();
            c.sort_unstable();
            for &y in &c {
                coset_of[y] = cosets.len();
            }
            cosets.push(c);
        }
        let action: Vec<Vec<usize>> = (0..n)
            .map(|a| cosets.iter().map(|c| coset_of[g.mul(a, c[0])]).collect())
            .collect();
        let iota_action = action[g.iota()].clone();
        let labels = cosets
            .iter()
            .map(|c| if h.order() == 1 { g.label(c[0]).to_string() } else { format!("{}H", g.label(c[0])) })
            .collect();
        CosetSpace {
            subgroup: h.clone(),
            cosets,
            coset_of,
            action,
            iota_action,
            labels,
        }
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn base(&self) -> usize {
        0
    }

    pub fn coset(&self, i: usize) -> &[usize] {
        &self.cosets[i]
    }

    pub fn representative(&self, i: usize) -> usize {
        self.cosets[i][0]
    }

    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// Permutation of cosets induced by left multiplication by `a`.
    pub fn action(&self, a: usize) -> &[usize] {
        &self.action[a]
    }

    pub fn actions(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn act(&self, a: usize, i: usize) -> usize {
        self.action[a][i]
    }

    pub fn iota_action(&self) -> &[usize] {
        &self.iota_action
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn iota_fixes_some(&self) -> bool {
        (0..self.len()).any(|i| self.iota_action[i] == i)
    }

    /// Orbits of a subgroup acting on the cosets, each sorted, ordered by
    /// smallest member.
    pub fn orbits(&self, k: &Subgroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for i in 0..self.len() {
            if seen[i] {
                continue;
            }
            let mut o: Vec<usize> = k.members().iter().map(|&a| self.act(a, i)).collect();
            o.sort_unstable();
            o.dedup();
            for &j in &o {
                seen[j] = true;
            }
            out.push(o);
        }
        out
    }

    /// Stabilizer of coset `i`: the conjugate `x H x^-1` for `x` in it.
    pub fn stabilizer(&self, g: &FiniteGroup, i: usize) -> Subgroup {
        let members: Vec<usize> = (0..g.order()).filter(|&a| self.act(a, i) == i).collect();
        g.subgroup(&members).expect("stabilizers are subgroups")
    }
}

/// Returns `H*D` when it equals `D*H` (and hence is a subgroup).
pub fn double_coset_commute(g: &FiniteGroup, h: &Subgroup, d: &Subgroup) -> Option<Subgroup> {
    let hd = g.product_set(h, d);
    let dh = g.product_set(d, h);
    if hd != dh {
        return None;
    }
    let members: Vec<usize> = hd.into_iter().collect();
    Some(g.subgroup(&members).expect("HD = DH is a subgroup"))
}

/// Blocks `X_j = Sigma_i w0` in `X = G/D`, where the `Sigma_i` are the left
/// cosets of `sigma0` contained in `hq` (the embeddings extending a fixed
/// embedding of the quadratic subfield).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    /// Representatives of the `Sigma_i`, in coset order.
    pub sigmas: Vec<Vec<usize>>,
    pub blocks: Vec<Vec<usize>>,
    pub jmap: Vec<usize>,
    pub x_size: usize,
    pub sigma0_d: Subgroup,
}

impl BlockPartition {
    pub fn m(&self) -> usize {
        self.blocks.len()
    }

    pub fn n(&self) -> usize {
        self.sigmas.len()
    }
}

pub fn block_partition(g: &FiniteGroup, sigma0: &Subgroup, hq: &Subgroup, d: &Subgroup) -> Result<BlockPartition> {
    if !sigma0.is_subgroup_of(hq) {
        return Err(Error::Hypothesis("the field E does not contain Q (H_E is not inside H_Q)".into()));
    }
    let Some(sigma0_d) = double_coset_commute(g, sigma0, d) else {
        return Err(Error::Hypothesis(
            "Sigma_0 * D != D * Sigma_0: the block analysis does not apply".into(),
        ));
    };
    let e_space = CosetSpace::new(g, sigma0);
    let x = CosetSpace::new(g, d);
    let sigmas: Vec<Vec<usize>> = (0..e_space.len())
        .map(|i| e_space.coset(i).to_vec())
        .filter(|c| hq.contains(c[0]))
        .collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut jmap = Vec::new();
    for s in &sigmas {
        let mut b: Vec<usize> = s.iter().map(|&t| x.act(t, x.base())).collect();
        b.sort_unstable();
        b.dedup();
        let j = match blocks.iter().position(|bb| *bb == b) {
            Some(j) => j,
            None => {
                blocks.push(b);
                blocks.len() - 1
            }
        };
        jmap.push(j);
    }
    let part = BlockPartition {
        sigmas,
        blocks,
        jmap,
        x_size: x.len(),
        sigma0_d,
    };
    let block_size = part.sigma0_d.order() / d.order();
    let per_block = part.n() / part.m();
    let mut covered: Vec<usize> = Vec::new();
    for (j, b) in part.blocks.iter().enumerate() {
        if b.len() != block_size || part.jmap.iter().filter(|&&k| k == j).count() != per_block {
            return Err(Error::Internal("block sizes disagree with the index count".into()));
        }
        covered.extend(b.iter().copied());
        covered.extend(b.iter().map(|&w| x.iota_action()[w]));
    }
    covered.sort_unstable();
    if covered != (0..x.len()).collect::<Vec<_>>() || 2 * part.m() * block_size != x.len() {
        return Err(Error::Internal("blocks and their conjugates do not partition X".into()));
    }
    Ok(part)
}
