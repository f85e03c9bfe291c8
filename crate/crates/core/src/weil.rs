//! Characteristic p: Weil germs as integer functions on the primes `X = G/D`
//! of `K` over `p`, the lattice `W^K(p^inf) = X*(P^K)`, isogeny classes of
//! simple abelian varieties split by `K`, and their numerical invariants.
//!
//! A germ is stored as `f = n0 * s` where `s` is its slope function and
//! `n0 = |D|`; `tau` acts by `(tau f)(w) = f(tau^-1 w)`.

use crate::error::{Error, Result};
use crate::group::{CosetSpace, FiniteGroup, Subgroup};
use crate::lattice::{is_zero_vec, permute_vec, unit_vec, zero_vec, Int, LinearMap, Sublattice, ZVec};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Primes of `K` over `p` seen from a fixed `w0`.
#[derive(Clone, Debug)]
pub struct WeilContext {
    group: FiniteGroup,
    d: Subgroup,
    x: CosetSpace,
    /// Primes of the maximal real subfield: `G / D<iota>`.
    y: CosetSpace,
    x_to_y: Vec<usize>,
}

impl WeilContext {
    pub fn new(g: &FiniteGroup, d: &Subgroup) -> Self {
        let mut gens = d.members().to_vec();
        gens.push(g.iota());
        let di = g.generated(&gens);
        let x = CosetSpace::new(g, d);
        let y = CosetSpace::new(g, &di);
        let x_to_y = (0..x.len()).map(|w| y.coset_of(x.representative(w))).collect();
        WeilContext {
            group: g.clone(),
            d: d.clone(),
            x,
            y,
            x_to_y,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn decomposition_group(&self) -> &Subgroup {
        &self.d
    }

    pub fn primes(&self) -> &CosetSpace {
        &self.x
    }

    pub fn real_primes(&self) -> &CosetSpace {
        &self.y
    }

    pub fn x_len(&self) -> usize {
        self.x.len()
    }

    pub fn y_len(&self) -> usize {
        self.y.len()
    }

    pub fn y_of(&self, w: usize) -> usize {
        self.x_to_y[w]
    }

    pub fn fiber(&self, v: usize) -> Vec<usize> {
        (0..self.x.len()).filter(|&w| self.x_to_y[w] == v).collect()
    }

    pub fn n0(&self) -> usize {
        self.d.order()
    }

    /// `iota` in `D`: the primes of `F` over `p` do not split in `K`.
    pub fn degenerate(&self) -> bool {
        self.d.contains(self.group.iota())
    }

    pub fn iota_perm(&self) -> &[usize] {
        self.x.iota_action()
    }

    pub fn act(&self, tau: usize, f: &[Int]) -> ZVec {
        permute_vec(self.x.action(tau), f)
    }

    pub fn iota(&self, f: &[Int]) -> ZVec {
        permute_vec(self.x.iota_action(), f)
    }

    /// Weight `m` with `f + iota f = m n0`, if `f` is a germ.
    pub fn weight(&self, f: &[Int]) -> Option<Int> {
        if f.len() != self.x.len() {
            return None;
        }
        let io = self.x.iota_action();
        let s = &f[0] + &f[io[0]];
        if (0..f.len()).any(|w| &f[w] + &f[io[w]] != s) {
            return None;
        }
        let n0 = Int::from(self.n0());
        if !s.is_multiple_of(&n0) {
            return None;
        }
        Some(s / n0)
    }

    pub fn germ(&self, f: ZVec) -> Result<WeilGerm> {
        match self.weight(&f) {
            Some(weight) => Ok(WeilGerm { f, weight }),
            None => Err(Error::Validation(format!(
                "{:?} is not a Weil germ for n0 = {} (f + iota f must be a constant multiple of n0)",
                f.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                self.n0()
            ))),
        }
    }

    pub fn slopes(&self, f: &[Int]) -> Vec<Rat> {
        let n0 = Int::from(self.n0());
        f.iter().map(|x| Rat::new(x.clone(), n0.clone())).collect()
    }

    pub fn stabilizer(&self, f: &[Int]) -> Subgroup {
        let members: Vec<usize> = (0..self.group.order()).filter(|&t| self.act(t, f) == f).collect();
        self.group.subgroup(&members).expect("stabilizers are subgroups")
    }

    /// Distinct conjugates of `f`, sorted.
    pub fn orbit(&self, f: &[Int]) -> Vec<ZVec> {
        let mut o: Vec<ZVec> = (0..self.group.order()).map(|t| self.act(t, f)).collect();
        o.sort();
        o.dedup();
        o
    }

    /// `(f, m) -> (v -> sum_{w | v} f(w) - m n0 |fibre(v)| / 2)`.
    pub fn second_map(&self) -> LinearMap {
        let nx = self.x.len();
        let mut images: Vec<ZVec> = (0..nx).map(|w| unit_vec(self.y.len(), self.x_to_y[w])).collect();
        let mut last = zero_vec(self.y.len());
        for (v, slot) in last.iter_mut().enumerate() {
            let k = self.fiber(v).len();
            *slot = -Int::from(self.n0() * k / 2);
        }
        images.push(last);
        LinearMap::from_images(self.y.len(), images)
    }

    /// Generators of `{(f, m) : f + iota f = m n0}` written down directly.
    pub fn direct_generators(&self) -> Vec<ZVec> {
        let nx = self.x.len();
        let io = self.x.iota_action();
        let mut gens = Vec::new();
        let mut u = zero_vec(nx + 1);
        u[nx] = Int::one();
        for w in 0..nx {
            if io[w] == w {
                u[w] = Int::from(self.n0() / 2);
            } else if w < io[w] {
                u[w] = Int::from(self.n0());
                let mut v = unit_vec(nx + 1, w);
                v[io[w]] = -Int::one();
                gens.push(v);
            }
        }
        gens.push(u);
        gens
    }

    /// `W^K(p^inf)` inside `Z^X x Z` with its exactness certificate.
    pub fn weil_lattice(&self) -> WeilLattice {
        let nx = self.x.len();
        let second = self.second_map();
        let lattice = Sublattice::new(nx + 1, &self.direct_generators());
        let kernel = second.kernel();
        let certificate = ExactnessCertificate {
            first_injective: lattice.rank() == lattice.basis().len(),
            composition_zero: lattice.basis().iter().all(|b| is_zero_vec(&second.apply(b))),
            middle_exact: kernel == lattice,
            second_surjective: second.cokernel().is_trivial(),
            rank_matches: lattice.rank() + self.y.len() == nx + 1,
        };
        WeilLattice {
            lattice,
            certificate,
            degenerate: self.degenerate(),
        }
    }

    /// Effective weight-one germs up to `Gamma`: one class per orbit, each
    /// orbit sorted, classes sorted by smallest member.
    pub fn enumerate_simple_classes(&self) -> Vec<SimpleClass> {
        let nx = self.x.len();
        let io = self.x.iota_action().to_vec();
        let n0 = self.n0();
        let reps: Vec<usize> = (0..nx).filter(|&w| w < io[w]).collect();
        let fixed: Vec<usize> = (0..nx).filter(|&w| w == io[w]).collect();
        let mut seen: Vec<ZVec> = Vec::new();
        let mut classes = Vec::new();
        let total = (n0 + 1).pow(reps.len() as u32);
        for code in 0..total {
            let mut f = zero_vec(nx);
            let mut c = code;
            for &w in &reps {
                let a = c % (n0 + 1);
                c /= n0 + 1;
                f[w] = Int::from(a);
                f[io[w]] = Int::from(n0 - a);
            }
            for &w in &fixed {
                f[w] = Int::from(n0 / 2);
            }
            if seen.binary_search(&f).is_ok() {
                continue;
            }
            let orbit = self.orbit(&f);
            for o in &orbit {
                if let Err(pos) = seen.binary_search(o) {
                    seen.insert(pos, o.clone());
                }
            }
            classes.push(SimpleClass { orbit });
        }
        classes.sort_by(|a, b| a.orbit[0].cmp(&b.orbit[0]));
        classes
    }

    pub fn invariants(&self, f: &[Int]) -> Result<GermInvariants> {
        match self.weight(f) {
            Some(m) if m.is_one() => {}
            _ => return Err(Error::Validation("invariants need a weight-one germ".into())),
        }
        if f.iter().any(|x| x.is_negative()) {
            return Err(Error::Validation("invariants need an effective germ (f >= 0)".into()));
        }
        let g = &self.group;
        let stab = self.stabilizer(f);
        let deg = g.order() / stab.order();
        let slopes = self.slopes(f);
        let mut primes = Vec::new();
        for members in self.x.orbits(&stab) {
            let w = members[0];
            let dw = self.x.stabilizer(g, w);
            let meet = stab.members().iter().filter(|&&t| dw.contains(t)).count();
            let degree = self.n0() / meet;
            let slope = slopes[w].clone();
            let inv = frac(&(&slope * Rat::from_integer(Int::from(degree))));
            primes.push(LocalPrime {
                members,
                degree,
                slope,
                inv,
                multiplicity: 0,
                iota_partner: 0,
            });
        }
        let io = self.x.iota_action();
        for i in 0..primes.len() {
            let target = io[primes[i].members[0]];
            primes[i].iota_partner = primes.iter().position(|p| p.members.contains(&target)).expect("iota permutes primes");
        }
        let degree_sum: usize = primes.iter().map(|p| p.degree).sum();
        if degree_sum != deg {
            return Err(Error::Internal(format!(
                "local degrees sum to {degree_sum}, expected [Q[pi]:Q] = {deg}"
            )));
        }
        let totally_real = stab.contains(g.iota());
        let real_places = if totally_real { deg } else { 0 };
        let mut e = Int::one();
        for p in &primes {
            e = e.lcm(p.inv.denom());
        }
        if real_places > 0 {
            e = e.lcm(&Int::from(2));
        }
        let e = e.to_usize().expect("small index");
        for p in primes.iter_mut() {
            p.multiplicity = e * p.degree;
        }
        let mut slope_multiplicities: BTreeMap<Rat, usize> = BTreeMap::new();
        for p in &primes {
            *slope_multiplicities.entry(p.slope.clone()).or_default() += p.multiplicity;
        }
        let dim2 = e * deg;
        if dim2 % 2 != 0 {
            return Err(Error::Internal("e * [Q[pi]:Q] is odd".into()));
        }
        let mut brauer = primes.iter().fold(Rat::zero(), |acc, p| acc + &p.inv);
        brauer += rat(real_places as i64, 2);
        let reduced_degree_ok = primes.iter().map(|p| p.multiplicity).sum::<usize>() == dim2;
        Ok(GermInvariants {
            germ: f.to_vec(),
            stabilizer: stab,
            deg_center: deg,
            primes,
            real_places,
            e,
            dim: dim2 / 2,
            slope_multiplicities,
            reduced_degree_ok,
            brauer_sum_ok: brauer.is_integer(),
            supersingular: slopes.iter().all(|s| *s == rat(1, 2)),
        })
    }
}

fn frac(x: &Rat) -> Rat {
    x - Rat::from_integer(x.floor().to_integer())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilGerm {
    pub f: ZVec,
    pub weight: Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessCertificate {
    pub first_injective: bool,
    pub composition_zero: bool,
    pub middle_exact: bool,
    pub second_surjective: bool,
    pub rank_matches: bool,
}

impl ExactnessCertificate {
    pub fn passes(&self) -> bool {
        self.first_injective && self.composition_zero && self.middle_exact && self.second_surjective && self.rank_matches
    }
}

#[derive(Clone, Debug)]
pub struct WeilLattice {
    /// Basis in `Z^X x Z` (last coordinate is the weight).
    pub lattice: Sublattice,
    pub certificate: ExactnessCertificate,
    pub degenerate: bool,
}

impl WeilLattice {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleClass {
    pub orbit: Vec<ZVec>,
}

impl SimpleClass {
    pub fn representative(&self) -> &[Int] {
        &self.orbit[0]
    }
}

/// A prime of `Q[pi]` over `p`, as an orbit of `Stab(f)` on `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPrime {
    pub members: Vec<usize>,
    /// `[Q[pi]_v : Q_p]`.
    pub degree: usize,
    pub slope: Rat,
    pub inv: Rat,
    pub multiplicity: usize,
    pub iota_partner: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermInvariants {
    pub germ: ZVec,
    pub stabilizer: Subgroup,
    pub deg_center: usize,
    pub primes: Vec<LocalPrime>,
    pub real_places: usize,
    pub e: usize,
    pub dim: usize,
    pub slope_multiplicities: BTreeMap<Rat, usize>,
    pub reduced_degree_ok: bool,
    pub brauer_sum_ok: bool,
    pub supersingular: bool,
}

/// A slope-1/2 part of multiplicity 2 next to slopes 0 and 1 is a simple
/// rank-2 Dieudonne factor, so its prime cannot have local degree 1.
pub fn dieudonne_degree_check(inv: &GermInvariants) -> Vec<String> {
    let half = rat(1, 2);
    let m = &inv.slope_multiplicities;
    let pattern = m.contains_key(&Rat::zero()) && m.contains_key(&Rat::one()) && m.get(&half) == Some(&2);
    if !pattern {
        return Vec::new();
    }
    inv.primes
        .iter()
        .filter(|p| p.slope == half && p.degree == 1)
        .map(|p| {
            format!(
                "prime {:?} has slope 1/2 and local degree 1, but the slope-1/2 part is a simple factor of rank 2",
                p.members
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::zvec;

    fn ctx(group: &str, d: &[usize]) -> WeilContext {
        let g = FiniteGroup::preset(group).unwrap();
        let d = g.subgroup(d).unwrap();
        WeilContext::new(&g, &d)
    }

    #[test]
    fn lattice_ranks() {
        let c = ctx("C6", &[0, 2, 4]);
        let w = c.weil_lattice();
        assert!(w.certificate.passes());
        assert_eq!(w.rank(), 2);
        let c = ctx("C6", &[0]);
        assert_eq!(c.weil_lattice().rank(), 4);
        let c = ctx("C2", &[0, 1]);
        let w = c.weil_lattice();
        assert!(w.degenerate && w.certificate.passes());
        assert_eq!(w.rank(), 1);
    }

    #[test]
    fn enumeration_small() {
        let c = ctx("C6", &[0, 2, 4]);
        let cls = c.enumerate_simple_classes();
        assert_eq!(cls.len(), 2);
        assert_eq!(cls[0].orbit, vec![zvec(&[0, 3]), zvec(&[3, 0])]);
        assert_eq!(cls[1].orbit, vec![zvec(&[1, 2]), zvec(&[2, 1])]);
        let c = ctx("C2", &[0, 1]);
        let cls = c.enumerate_simple_classes();
        assert_eq!(cls.len(), 1);
        assert_eq!(cls[0].orbit, vec![zvec(&[1])]);
    }

    #[test]
    fn invariants_small() {
        let c = ctx("C6", &[0, 2, 4]);
        let inv = c.invariants(&zvec(&[1, 2])).unwrap();
        assert_eq!((inv.deg_center, inv.e, inv.dim), (2, 3, 3));
        assert_eq!(inv.primes[0].inv, rat(1, 3));
        assert_eq!(inv.primes[1].inv, rat(2, 3));
        let ss = ctx("C2", &[0, 1]).invariants(&zvec(&[1])).unwrap();
        assert_eq!((ss.dim, ss.e, ss.real_places), (1, 2, 1));
        assert!(ss.supersingular && ss.brauer_sum_ok);
        assert!(dieudonne_degree_check(&ss).is_empty());
        let ord = ctx("C2", &[0]).invariants(&zvec(&[0, 1])).unwrap();
        assert_eq!((ord.dim, ord.e), (1, 1));
    }
}
