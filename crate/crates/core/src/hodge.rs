//! Even-degree bookkeeping in `H*(A^s)` for a CM abelian variety: monomials
//! `omega_{I,J}`, the classes `L^k`, the closure rules of the algebraicity
//! argument and the Lefschetz-character eigenspaces.
//!
//! `Phi` is indexed `0..g`; a monomial stores `I` as a bitmask and `J` as
//! the bitmask of `iota^-1 J`, so `omega_{M, iota M}` has equal masks.
//! Products are sign-free (only products of even-degree classes are formed).
//! Every `omega_sigma` is normalised so the `(sigma, iota sigma)` part of `L`
//! has coefficient 1.

use crate::cm::{AvSpec, LefschetzLattice};
use crate::error::{Error, Result};
use crate::lattice::{zero_vec, Int, ZVec};
use crate::weil::Rat;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub fn new(i: u32, j: u32) -> Self {
        Monomial { i, j }
    }

    pub fn unit() -> Self {
        Monomial { i: 0, j: 0 }
    }

    pub fn lefschetz(m: u32) -> Self {
        Monomial { i: m, j: m }
    }

    pub fn degree(&self) -> u32 {
        self.i.count_ones() + self.j.count_ones()
    }

    /// Hodge type `(|I|, |J|)` before any twist.
    pub fn hodge_type(&self) -> (u32, u32) {
        (self.i.count_ones(), self.j.count_ones())
    }

    /// `iota omega_{I,J} = omega_{iota J, iota I}`.
    pub fn conjugate(&self) -> Self {
        Monomial { i: self.j, j: self.i }
    }

    /// `M = I cap iota J` as a mask.
    pub fn lefschetz_part(&self) -> u32 {
        self.i & self.j
    }

    pub fn stripped(&self) -> Self {
        let m = self.lefschetz_part();
        Monomial { i: self.i & !m, j: self.j & !m }
    }

    pub fn complement(&self, g: u32) -> Self {
        let full = full_mask(g);
        Monomial { i: full & !self.i, j: full & !self.j }
    }

    pub fn times(&self, other: &Monomial) -> Option<Monomial> {
        if self.i & other.i != 0 || self.j & other.j != 0 {
            None
        } else {
            Some(Monomial { i: self.i | other.i, j: self.j | other.j })
        }
    }

    pub fn format(&self, g: u32) -> String {
        let set = |m: u32, pre: &str| -> String {
            let v: Vec<String> = (0..g).filter(|b| m >> b & 1 == 1).map(|b| format!("{pre}{b}")).collect();
            format!("{{{}}}", v.join(","))
        };
        format!("ω({}, {})", set(self.i, ""), set(self.j, "ι"))
    }
}

pub fn full_mask(g: u32) -> u32 {
    if g == 32 {
        u32::MAX
    } else {
        (1u32 << g) - 1
    }
}

fn subsets_of_size(g: u32, k: u32) -> Vec<u32> {
    (0..=full_mask(g)).filter(|m| m.count_ones() == k).collect()
}

fn factorial(k: u32) -> Rat {
    let mut acc = Int::one();
    for i in 2..=k {
        acc *= Int::from(i);
    }
    Rat::from_integer(acc)
}

/// All `omega_{I,J}` with `|I| + |J| = r`; there are `C(2g, r)`.
pub fn basis(r: u32, g: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for i in 0..=full_mask(g) {
        for j in 0..=full_mask(g) {
            let m = Monomial::new(i, j);
            if m.degree() == r {
                out.push(m);
            }
        }
    }
    out
}

/// A finite `Q`-combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolicClass {
    terms: BTreeMap<Monomial, Rat>,
}

impl SymbolicClass {
    pub fn zero() -> Self {
        SymbolicClass::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut c = SymbolicClass::zero();
        c.add_term(m, Rat::one());
        c
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &SymbolicClass) -> SymbolicClass {
        let mut out = SymbolicClass::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(p) = a.times(b) {
                    out.add_term(p, ca * cb);
                }
            }
        }
        out
    }
}

/// `L^k = sum_{|M| = k} k! omega_{M, iota M}`.
pub fn lefschetz_power(k: u32, g: u32) -> Result<SymbolicClass> {
    if k > g {
        return Err(Error::Validation(format!("L^{k} vanishes beyond g = {g}")));
    }
    let mut c = SymbolicClass::zero();
    for m in subsets_of_size(g, k) {
        c.add_term(Monomial::lefschetz(m), factorial(k));
    }
    Ok(c)
}

/// `L^k omega_{I,J}`: only `M` disjoint from `I` and `iota J` contribute.
pub fn l_multiply(k: u32, w: Monomial, g: u32) -> SymbolicClass {
    let mut c = SymbolicClass::zero();
    let used = w.i | w.j;
    for m in subsets_of_size(g, k) {
        if m & used == 0 {
            c.add_term(Monomial::new(w.i | m, w.j | m), factorial(k));
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegeneracyReport {
    pub closure: BTreeSet<Monomial>,
    /// Every closure monomial has its complement in the closure.
    pub complements_present: bool,
    /// Rank of the pairing matrix equals the size of each side, in every
    /// degree.
    pub pairing_full_rank: bool,
}

impl NondegeneracyReport {
    pub fn nondegenerate(&self) -> bool {
        self.complements_present && self.pairing_full_rank
    }
}

/// Close a seed of algebraic monomials under: all `omega_{M, iota M}`;
/// stripping the Lefschetz part `I cap iota J` in degree at most `g`;
/// complex conjugation; multiplication by `omega_{M, iota M}`. Then test
/// the cup-product pairing on the closure.
pub fn nondegeneracy_induction(seed: &[Monomial], g: u32) -> Result<NondegeneracyReport> {
    let seed_set: BTreeSet<Monomial> = seed.iter().copied().collect();
    if seed_set.iter().any(|m| !seed_set.contains(&m.conjugate())) {
        return Err(Error::Seed("seed is not stable under complex conjugation".into()));
    }
    if seed_set.iter().any(|m| (m.i | m.j) & !full_mask(g) != 0 || m.degree() % 2 != 0) {
        return Err(Error::Seed("seed monomials must be even-degree subsets of Phi".into()));
    }
    let mut closure: BTreeSet<Monomial> = seed_set;
    for m in 0..=full_mask(g) {
        closure.insert(Monomial::lefschetz(m));
    }
    loop {
        let mut new: Vec<Monomial> = Vec::new();
        for w in &closure {
            if w.lefschetz_part() != 0 && w.degree() <= g {
                new.push(w.stripped());
            }
            new.push(w.conjugate());
            let used = w.i | w.j;
            for m in 0..=full_mask(g) {
                if m & used == 0 {
                    new.push(Monomial::new(w.i | m, w.j | m));
                }
            }
        }
        let before = closure.len();
        closure.extend(new);
        if closure.len() == before {
            break;
        }
    }
    let complements_present = closure.iter().all(|w| closure.contains(&w.complement(g)));
    let top = Monomial::lefschetz(full_mask(g));
    let mut pairing_full_rank = true;
    for r in 0..=g {
        let left: Vec<&Monomial> = closure.iter().filter(|w| w.degree() == 2 * r).collect();
        let right: Vec<&Monomial> = closure.iter().filter(|w| w.degree() == 2 * (g - r)).collect();
        let rows: Vec<ZVec> = left
            .iter()
            .map(|a| {
                right
                    .iter()
                    .map(|b| if a.times(b) == Some(top) { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect();
        let rank = if rows.is_empty() || right.is_empty() {
            0
        } else {
            crate::lattice::Sublattice::new(right.len(), &rows).rank()
        };
        if rank != left.len() || rank != right.len() {
            pairing_full_rank = false;
        }
    }
    Ok(NondegeneracyReport {
        closure,
        complements_present,
        pairing_full_rank,
    })
}

/// `Phi` of `A^s`: each factor's CM type repeated by its multiplicity.
#[derive(Clone, Debug)]
pub struct HodgeFrame {
    /// Ambient index in `Sigma_E` of each element of `Phi`.
    pub phi: Vec<usize>,
    pub iota: Vec<usize>,
    pub ambient: usize,
}

impl HodgeFrame {
    pub fn new(spec: &AvSpec) -> Result<Self> {
        let mut phi = Vec::new();
        for (k, f) in spec.factors().iter().enumerate() {
            let idx: Vec<usize> = (0..spec.ambient_len())
                .filter(|&i| spec.ambient(i).0 == k && spec.in_phi(i))
                .collect();
            for _ in 0..f.multiplicity {
                phi.extend(idx.iter().copied());
            }
        }
        if phi.len() > 16 {
            return Err(Error::Validation(format!(
                "dimension {} is too large for exhaustive monomial enumeration (max 16)",
                phi.len()
            )));
        }
        Ok(HodgeFrame {
            phi,
            iota: spec.iota_perm(),
            ambient: spec.ambient_len(),
        })
    }

    pub fn g(&self) -> u32 {
        self.phi.len() as u32
    }

    /// Character of `L(A)` on `omega_{I,J}(m)`: the indicator of
    /// `I + J` plus `m t`.
    pub fn character(&self, w: &Monomial, twist: i64, lat: &LefschetzLattice) -> ZVec {
        let mut v = zero_vec(self.ambient);
        for b in 0..self.g() {
            if w.i >> b & 1 == 1 {
                v[self.phi[b as usize]] += Int::one();
            }
            if w.j >> b & 1 == 1 {
                v[self.iota[self.phi[b as usize]]] += Int::one();
            }
        }
        let t = lat.tate();
        for (x, y) in v.iter_mut().zip(&t) {
            *x += Int::from(twist) * y;
        }
        v
    }

    /// `(character, Hodge type after twist, weight r - 2m)`.
    pub fn character_and_type(
        &self,
        w: &Monomial,
        twist: i64,
        lat: &LefschetzLattice,
    ) -> (ZVec, (i64, i64), i64) {
        let (p, q) = w.hodge_type();
        let chi = self.character(w, twist, lat);
        (chi, (p as i64 - twist, q as i64 - twist), w.degree() as i64 - 2 * twist)
    }

    /// Monomials of `H^{2r}(A^s)(r)` whose character is `chi`.
    pub fn eigenspace_dimension(&self, chi: &[Int], r: u32, lat: &LefschetzLattice) -> usize {
        basis(2 * r, self.g())
            .iter()
            .filter(|w| lat.same_class(&self.character(w, r as i64, lat), chi))
            .count()
    }

    /// The monomial whose `Sigma_E`-support is the given set (counted with
    /// replication), if one exists.
    pub fn monomial_with_support(&self, support: &BTreeSet<usize>) -> Option<Monomial> {
        let mut i = 0u32;
        let mut j = 0u32;
        for (b, &s) in self.phi.iter().enumerate() {
            if support.contains(&s) {
                i |= 1 << b;
            }
            if support.contains(&self.iota[s]) {
                j |= 1 << b;
            }
        }
        let w = Monomial::new(i, j);
        let covered: usize = (0..self.g())
            .map(|b| (i >> b & 1) as usize + (j >> b & 1) as usize)
            .sum();
        let wanted: usize = self.phi.iter().filter(|s| support.contains(s)).count()
            + self.phi.iter().filter(|s| support.contains(&self.iota[**s])).count();
        (covered == wanted && w.degree() as usize == wanted).then_some(w)
    }
}

/// Weight-zero characters on `H^{2r}(A^s)(r)`, `r <= max_r`, pushed to
/// `target` by `project`, that are nonzero in `target` but pass `trivial`;
/// with the number of monomials carrying each (keys are canonical).
pub fn exotic_characters(
    frame: &HodgeFrame,
    source: &LefschetzLattice,
    target: &LefschetzLattice,
    project: &dyn Fn(&[Int]) -> ZVec,
    trivial: &dyn Fn(&[Int]) -> bool,
    max_r: u32,
) -> BTreeMap<(u32, ZVec), usize> {
    let mut out: BTreeMap<(u32, ZVec), usize> = BTreeMap::new();
    for r in 0..=max_r.min(frame.g()) {
        for w in basis(2 * r, frame.g()) {
            let chi = project(&frame.character(&w, r as i64, source));
            if target.is_zero(&chi) || !trivial(&chi) {
                continue;
            }
            *out.entry((r, target.canonical(&chi))).or_default() += 1;
        }
    }
    out
}

/// Characters of exotic Hodge classes: trivial on `MT(A)`, not on `L(A)`.
pub fn exotic_hodge_characters(spec: &AvSpec, frame: &HodgeFrame, max_r: u32) -> BTreeMap<(u32, ZVec), usize> {
    let lat = spec.lefschetz();
    exotic_characters(frame, &lat, &lat, &|g| g.to_vec(), &|g| spec.mt_trivial(g), max_r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(basis(4, 4).len(), 70);
        assert_eq!(basis(0, 3), vec![Monomial::unit()]);
        assert_eq!(basis(6, 3), vec![Monomial::new(7, 7)]);
    }

    #[test]
    fn powers_of_l() {
        let l0 = lefschetz_power(0, 3).unwrap();
        assert_eq!(l0, SymbolicClass::monomial(Monomial::unit()));
        let l3 = lefschetz_power(3, 3).unwrap();
        assert_eq!(l3.len(), 1);
        assert_eq!(l3.coefficient(&Monomial::new(7, 7)), Rat::from_integer(Int::from(6)));
        assert!(lefschetz_power(4, 3).is_err());
    }

    #[test]
    fn l_multiply_rules() {
        let w = Monomial::new(1, 0);
        assert_eq!(l_multiply(0, w, 3), SymbolicClass::monomial(w));
        assert_eq!(l_multiply(1, w, 3).len(), 2);
        assert!(l_multiply(1, Monomial::new(0b011, 0b100), 3).is_zero());
    }

    #[test]
    fn induction_small() {
        let r = nondegeneracy_induction(&[], 1).unwrap();
        assert!(r.nondegenerate());
        assert!(nondegeneracy_induction(&[Monomial::new(0b11, 0)], 2).is_err());
    }
}
