//! Characteristic zero: CM types, the Serre lattice `X*(S^K)`, Lefschetz
//! lattices `X*(L(A))`, the map `rho_Phi` and the Mumford-Tate kernel.
//!
//! A field `E` inside `K` is the fixed field of a subgroup `H`, and its
//! embeddings are the left cosets `G/H` (coset 0 is the reference embedding).
//! Characters are additive; `tau` acts on `Z^S` by moving the coordinate of
//! `s` to `tau s`.

use crate::error::{Error, Result};
use crate::group::{CosetSpace, FiniteGroup, Subgroup};
use crate::lattice::{
    is_zero_vec, kernel_basis, leading_index, permute_vec, unit_vec, zero_vec, Int, IntMatrix, LinearMap,
    QuotientLattice, Sublattice, ZVec,
};
use num_traits::{One, Signed, Zero};

/// A CM type on `G/H`, as the indicator function `phi` on cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmType {
    space: CosetSpace,
    phi: Vec<bool>,
}

impl CmType {
    pub fn new(space: CosetSpace, phi: Vec<bool>) -> Result<Self> {
        if phi.len() != space.len() {
            return Err(Error::CmType("phi has the wrong length".into()));
        }
        if space.iota_fixes_some() {
            return Err(Error::CmType(
                "iota fixes an embedding: E has a real place (H contains iota)".into(),
            ));
        }
        for i in 0..space.len() {
            if phi[i] == phi[space.iota_action()[i]] {
                return Err(Error::CmType(format!(
                    "phi + iota*phi != 1 at {} (phi = {})",
                    space.label(i),
                    phi[i] as u8
                )));
            }
        }
        Ok(CmType { space, phi })
    }

    /// CM type whose members are the cosets of the listed group elements.
    pub fn from_elements(g: &FiniteGroup, h: &Subgroup, elements: &[usize]) -> Result<Self> {
        let space = CosetSpace::new(g, h);
        let mut phi = vec![false; space.len()];
        for &x in elements {
            let c = space.coset_of(x);
            if phi[c] {
                return Err(Error::CmType(format!("{} listed twice", space.label(c))));
            }
            phi[c] = true;
        }
        Self::new(space, phi)
    }

    pub fn space(&self) -> &CosetSpace {
        &self.space
    }

    pub fn phi(&self) -> &[bool] {
        &self.phi
    }

    pub fn contains(&self, coset: usize) -> bool {
        self.phi[coset]
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.phi.len()).filter(|&i| self.phi[i]).collect()
    }

    /// `psi_sigma(x) = phi(x^-1 sigma)` as a function on `G`.
    pub fn psi(&self, g: &FiniteGroup, sigma: usize) -> ZVec {
        let rep = self.space.representative(sigma);
        (0..g.order())
            .map(|x| {
                let c = self.space.coset_of(g.mul(g.inv(x), rep));
                if self.phi[c] {
                    Int::one()
                } else {
                    Int::zero()
                }
            })
            .collect()
    }

    /// `{tau : tau Phi = Phi}`.
    pub fn reflex_subgroup(&self, g: &FiniteGroup) -> Subgroup {
        let members: Vec<usize> = (0..g.order())
            .filter(|&t| (0..self.phi.len()).all(|i| self.phi[self.space.act(t, i)] == self.phi[i]))
            .collect();
        g.subgroup(&members).expect("stabilizers are subgroups")
    }

    /// Overgroup `H' > H` with `iota` not in `H'` on whose fibres `phi` is
    /// constant, if any. `None` means the type is primitive.
    pub fn induced_from(&self, g: &FiniteGroup) -> Option<Subgroup> {
        let h = self.space.subgroup();
        g.overgroups(h).into_iter().find(|hp| {
            hp.order() > h.order()
                && !hp.contains(g.iota())
                && (0..self.phi.len()).all(|i| {
                    let rep = self.space.representative(i);
                    hp.members()
                        .iter()
                        .all(|&y| self.phi[self.space.coset_of(g.mul(rep, y))] == self.phi[i])
                })
        })
    }

    /// Whether `other` is the same CM type up to an isomorphism of fields.
    pub fn isomorphic(&self, other: &CmType, g: &FiniteGroup) -> bool {
        if self.phi.len() != other.phi.len() {
            return false;
        }
        let h1 = self.space.subgroup();
        let h2 = other.space.subgroup();
        (0..g.order()).any(|x| {
            g.conjugate(h2, x) == *h1
                && (0..self.phi.len()).all(|i| {
                    let rep = self.space.representative(i);
                    other.phi[other.space.coset_of(g.mul(rep, x))] == self.phi[i]
                })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmTypeReport {
    pub valid: bool,
    pub reason: Option<String>,
    pub reflex_subgroup: Option<Subgroup>,
    pub primitive: Option<bool>,
    pub induced_from: Option<Subgroup>,
}

pub fn cm_type_tools(g: &FiniteGroup, h: &Subgroup, phi: &[bool]) -> CmTypeReport {
    match CmType::new(CosetSpace::new(g, h), phi.to_vec()) {
        Err(e) => CmTypeReport {
            valid: false,
            reason: Some(e.to_string()),
            reflex_subgroup: None,
            primitive: None,
            induced_from: None,
        },
        Ok(cm) => {
            let induced = cm.induced_from(g);
            CmTypeReport {
                valid: true,
                reason: None,
                reflex_subgroup: Some(cm.reflex_subgroup(g)),
                primitive: Some(induced.is_none()),
                induced_from: induced,
            }
        }
    }
}

/// `X*(S^K) = {f in Z^G : f + iota f constant}`.
#[derive(Clone, Debug)]
pub struct SerreLattice {
    order: usize,
    iota: Vec<usize>,
    lattice: Sublattice,
    actions: Vec<Vec<usize>>,
}

impl SerreLattice {
    pub fn new(g: &FiniteGroup) -> Self {
        let n = g.order();
        let iota: Vec<usize> = (0..n).map(|x| g.mul(g.iota(), x)).collect();
        let mut gens = Vec::new();
        let mut u = zero_vec(n);
        for x in 0..n {
            if x < iota[x] {
                let mut v = unit_vec(n, x);
                v[iota[x]] = -Int::one();
                gens.push(v);
                u[x] = Int::one();
            }
        }
        gens.push(u);
        let actions = (0..n).map(|a| (0..n).map(|x| g.mul(a, x)).collect()).collect();
        SerreLattice {
            order: n,
            iota,
            lattice: Sublattice::new(n, &gens),
            actions,
        }
    }

    pub fn dim(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn sublattice(&self) -> &Sublattice {
        &self.lattice
    }

    pub fn actions(&self) -> &[Vec<usize>] {
        &self.actions
    }

    /// Direct test of `f + iota f` being constant.
    pub fn is_member(&self, f: &[Int]) -> bool {
        let w = &f[0] + &f[self.iota[0]];
        (0..self.order).all(|x| &f[x] + &f[self.iota[x]] == w)
    }

    pub fn weight(&self, f: &[Int]) -> Int {
        &f[0] + &f[self.iota[0]]
    }

    pub fn iota(&self, f: &[Int]) -> ZVec {
        permute_vec(&self.iota, f)
    }

    pub fn act(&self, tau: usize, f: &[Int]) -> ZVec {
        permute_vec(&self.actions[tau], f)
    }
}

/// `Z^S / {g = iota g, sum g = 0}` for a finite set `S` with an involution.
///
/// Used for `X*(L(A))` (`S` the embeddings of `E`) and for `X*(L(A_0))` (`S`
/// the conjugates of the Frobenius germs). Canonical representatives vanish on
/// the partner of every pair except the last one.
#[derive(Clone, Debug)]
pub struct LefschetzLattice {
    labels: Vec<String>,
    iota: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    actions: Vec<Vec<usize>>,
    quotient: QuotientLattice,
}

impl LefschetzLattice {
    /// `pairs` lists each iota-orbit once as `(rep, partner)`; fixed points
    /// appear as `(q, q)`. `actions[g]` is the permutation of `S` induced by
    /// the group element `g`.
    pub fn new(labels: Vec<String>, pairs: Vec<(usize, usize)>, actions: Vec<Vec<usize>>) -> Self {
        let n = labels.len();
        let mut iota = vec![usize::MAX; n];
        for &(a, b) in &pairs {
            iota[a] = b;
            iota[b] = a;
        }
        assert!(iota.iter().all(|&x| x != usize::MAX), "pairs must cover S");
        let weights = IntMatrix::from_rows(
            1,
            pairs.iter().map(|&(a, b)| vec![Int::from(if a == b { 1 } else { 2 })]).collect(),
        );
        let combos = kernel_basis(&weights);
        let relations: Vec<ZVec> = combos
            .iter()
            .map(|c| {
                let mut v = zero_vec(n);
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    v[a] += &c[k];
                    if a != b {
                        v[b] += &c[k];
                    }
                }
                v
            })
            .collect();
        let mut priority: Vec<usize> = Vec::new();
        if let Some((_, init)) = pairs.split_last() {
            for &(a, b) in init {
                if a != b {
                    priority.push(b);
                }
            }
        }
        for i in 0..n {
            if !priority.contains(&i) {
                priority.push(i);
            }
        }
        let quotient = QuotientLattice::with_priority(n, &relations, priority);
        LefschetzLattice {
            labels,
            iota,
            pairs,
            actions,
            quotient,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.quotient.free_rank()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn iota_perm(&self) -> &[usize] {
        &self.iota
    }

    pub fn actions(&self) -> &[Vec<usize>] {
        &self.actions
    }

    pub fn quotient(&self) -> &QuotientLattice {
        &self.quotient
    }

    pub fn relations(&self) -> &Sublattice {
        self.quotient.relations()
    }

    pub fn weight(&self, g: &[Int]) -> Int {
        g.iter().sum()
    }

    /// `t = [-s - iota s]`.
    pub fn tate(&self) -> ZVec {
        let mut t = zero_vec(self.dim());
        if let Some(&(a, b)) = self.pairs.first() {
            t[a] -= Int::one();
            t[b] -= Int::one();
        }
        t
    }

    pub fn iota(&self, g: &[Int]) -> ZVec {
        permute_vec(&self.iota, g)
    }

    pub fn act(&self, tau: usize, g: &[Int]) -> ZVec {
        permute_vec(&self.actions[tau], g)
    }

    pub fn canonical(&self, g: &[Int]) -> ZVec {
        self.quotient.canonical(g)
    }

    pub fn same_class(&self, a: &[Int], b: &[Int]) -> bool {
        self.quotient.same_class(a, b)
    }

    pub fn is_zero(&self, g: &[Int]) -> bool {
        self.quotient.is_zero(g)
    }

    /// Bracket notation of the canonical representative.
    pub fn format(&self, g: &[Int]) -> String {
        format_combination(&self.labels, &self.canonical(g))
    }

    /// Representatives of a basis of `sub / relations`.
    pub fn class_basis(&self, sub: &Sublattice) -> Vec<ZVec> {
        self.quotient.class_basis(sub)
    }

    pub fn rank_of(&self, sub: &Sublattice) -> usize {
        self.quotient.rank_of(sub)
    }
}

/// `[a x + b y - c z]` with juxtaposed coefficients.
pub fn format_combination(labels: &[String], g: &[Int]) -> String {
    let mut out = String::new();
    for (i, c) in g.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let coef = if mag.is_one() { String::new() } else { mag.to_string() };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&coef);
        out.push_str(&labels[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    format!("[{out}]")
}

/// One simple factor `A_i` of `A ~ prod A_i^{s_i}`.
#[derive(Clone, Debug)]
pub struct Factor {
    pub name: String,
    pub cm: CmType,
    pub multiplicity: usize,
    /// One coset from each iota-pair, in the order used for the ambient basis.
    pub half: Vec<usize>,
    /// Display label per coset.
    pub labels: Vec<String>,
}

impl Factor {
    pub fn new(name: &str, cm: CmType, multiplicity: usize) -> Self {
        let sp = cm.space();
        let half: Vec<usize> = (0..sp.len()).filter(|&i| i < sp.iota_action()[i]).collect();
        let labels = (0..sp.len()).map(|i| format!("{}.{}", name, sp.label(i))).collect();
        Factor {
            name: name.to_string(),
            cm,
            multiplicity,
            half,
            labels,
        }
    }

    pub fn with_half(mut self, half: Vec<usize>) -> Result<Self> {
        let sp = self.cm.space();
        let mut seen = vec![false; sp.len()];
        for &i in &half {
            if i >= sp.len() || seen[i] || seen[sp.iota_action()[i]] {
                return Err(Error::Validation(format!("`half` of {} is not a set of pair representatives", self.name)));
            }
            seen[i] = true;
        }
        if 2 * half.len() != sp.len() {
            return Err(Error::Validation(format!("`half` of {} misses a pair", self.name)));
        }
        self.half = half;
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.cm.space().len());
        self.labels = labels;
        self
    }

    /// Cosets in ambient order: the half, then the partners.
    pub fn ambient_order(&self) -> Vec<usize> {
        let io = self.cm.space().iota_action();
        let mut v = self.half.clone();
        v.extend(self.half.iter().map(|&i| io[i]));
        v
    }

    pub fn degree(&self) -> usize {
        self.cm.space().len()
    }
}

/// A CM abelian variety `A ~ prod A_i^{s_i}` over `Q^al`.
#[derive(Clone, Debug)]
pub struct AvSpec {
    group: FiniteGroup,
    factors: Vec<Factor>,
    /// `(factor, coset)` for each ambient coordinate.
    ambient: Vec<(usize, usize)>,
}

impl AvSpec {
    pub fn new(group: FiniteGroup, factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Validation("an abelian variety needs at least one factor".into()));
        }
        for i in 0..factors.len() {
            for j in 0..i {
                if factors[i].cm.isomorphic(&factors[j].cm, &group) {
                    return Err(Error::DuplicateFactor(format!(
                        "{} and {} are the same CM type up to isomorphism; use a multiplicity instead",
                        factors[j].name, factors[i].name
                    )));
                }
            }
        }
        let mut ambient = Vec::new();
        for (k, f) in factors.iter().enumerate() {
            for c in f.ambient_order() {
                ambient.push((k, c));
            }
        }
        Ok(AvSpec {
            group,
            factors,
            ambient,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn ambient_len(&self) -> usize {
        self.ambient.len()
    }

    pub fn ambient(&self, i: usize) -> (usize, usize) {
        self.ambient[i]
    }

    pub fn index_of(&self, factor: usize, coset: usize) -> usize {
        self.ambient
            .iter()
            .position(|&p| p == (factor, coset))
            .expect("coset belongs to the factor")
    }

    pub fn labels(&self) -> Vec<String> {
        self.ambient
            .iter()
            .map(|&(k, c)| self.factors[k].labels[c].clone())
            .collect()
    }

    pub fn in_phi(&self, i: usize) -> bool {
        let (k, c) = self.ambient[i];
        self.factors[k].cm.contains(c)
    }

    /// Ambient indices of the combined CM type.
    pub fn phi_indices(&self) -> Vec<usize> {
        (0..self.ambient_len()).filter(|&i| self.in_phi(i)).collect()
    }

    pub fn iota_perm(&self) -> Vec<usize> {
        (0..self.ambient_len())
            .map(|i| {
                let (k, c) = self.ambient[i];
                self.index_of(k, self.factors[k].cm.space().iota_action()[c])
            })
            .collect()
    }

    pub fn action(&self, tau: usize) -> Vec<usize> {
        (0..self.ambient_len())
            .map(|i| {
                let (k, c) = self.ambient[i];
                self.index_of(k, self.factors[k].cm.space().act(tau, c))
            })
            .collect()
    }

    /// Dimension of `A` with multiplicities.
    pub fn dimension(&self) -> usize {
        self.factors.iter().map(|f| f.multiplicity * f.degree() / 2).sum()
    }

    pub fn lefschetz(&self) -> LefschetzLattice {
        let mut pairs = Vec::new();
        let mut offset = 0;
        for f in &self.factors {
            let h = f.half.len();
            for i in 0..h {
                pairs.push((offset + i, offset + h + i));
            }
            offset += 2 * h;
        }
        let actions = (0..self.group.order()).map(|t| self.action(t)).collect();
        LefschetzLattice::new(self.labels(), pairs, actions)
    }

    /// `psi_sigma` for the ambient coordinate `i`.
    pub fn psi(&self, i: usize) -> ZVec {
        let (k, c) = self.ambient[i];
        self.factors[k].cm.psi(&self.group, c)
    }

    /// `X*(rho_Phi): [sigma] -> psi_sigma`, on ambient coordinates.
    pub fn rho_phi(&self, sk: &SerreLattice) -> Result<LinearMap> {
        let images: Vec<ZVec> = (0..self.ambient_len()).map(|i| self.psi(i)).collect();
        for (i, img) in images.iter().enumerate() {
            if !sk.is_member(img) {
                return Err(Error::KTooSmall(format!(
                    "psi of {} is not in X*(S^K)",
                    self.labels()[i]
                )));
            }
        }
        Ok(LinearMap::from_images(self.group.order(), images))
    }

    /// `sum_{sigma in Phi} g(tau sigma)` for every `tau`, evaluated directly.
    pub fn mt_values(&self, g: &[Int]) -> ZVec {
        let phi = self.phi_indices();
        (0..self.group.order())
            .map(|tau| {
                let act = self.action(tau);
                phi.iter().map(|&s| g[act[s]].clone()).sum()
            })
            .collect()
    }

    pub fn mt_trivial(&self, g: &[Int]) -> bool {
        is_zero_vec(&self.mt_values(g))
    }

    pub fn mt_kernel(&self) -> Result<MtKernel> {
        let sk = SerreLattice::new(&self.group);
        let map = self.rho_phi(&sk)?;
        let lat = self.lefschetz();
        if !lat.relations().basis().iter().all(|r| is_zero_vec(&map.apply(r))) {
            return Err(Error::Internal("rho_Phi does not kill the Lefschetz relations".into()));
        }
        let preimage = map.kernel();
        let generators = lat.class_basis(&preimage);
        Ok(MtKernel {
            rank: generators.len(),
            preimage,
            generators,
            map,
        })
    }
}

#[derive(Clone, Debug)]
pub struct MtKernel {
    /// Preimage of the kernel in `Z^{Sigma_E}` (contains the relations).
    pub preimage: Sublattice,
    pub rank: usize,
    /// Canonical representatives of a basis of the kernel.
    pub generators: Vec<ZVec>,
    pub map: LinearMap,
}

impl MtKernel {
    pub fn exotic_hodge_exists(&self) -> bool {
        self.rank > 0
    }
}

/// Outcome of rebuilding `X*(L)` from `X*(L_0)` and the parity of `epsilon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A1Check {
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    pub tate_matches: bool,
    pub equivariant: bool,
    pub t_of_w_direct: Int,
    pub t_of_w_reconstructed: Int,
}

impl A1Check {
    pub fn consistent(&self) -> bool {
        self.well_defined
            && self.injective
            && self.surjective
            && self.tate_matches
            && self.equivariant
            && self.t_of_w_direct == Int::from(-2)
            && self.t_of_w_reconstructed == Int::from(-2)
    }
}

/// Reconstruct `X*(T) = {(chi_0, n) : parity(chi_0) = n mod 2}` from
/// `X*(L_0) = Z^S / R_0` and compare it with the direct description.
///
/// `R_0` is spanned by `s + iota s` over pairs and `2q` over fixed points;
/// `parity[s]` is the value of `epsilon` on the class of `s`.
pub fn a1_correspondence_check(lat: &LefschetzLattice, parity: &[bool]) -> Result<A1Check> {
    let n = lat.dim();
    if parity.len() != n {
        return Err(Error::Validation("parity functional has the wrong length".into()));
    }
    if (0..n).any(|s| parity[s] != parity[lat.iota_perm()[s]]) {
        return Err(Error::Validation("parity functional is not iota-stable".into()));
    }
    let mut r0 = Vec::new();
    for &(a, b) in lat.pairs() {
        let mut v = zero_vec(n + 1);
        v[a] += Int::one();
        v[b] += Int::one();
        r0.push(v);
    }
    let r0 = Sublattice::new(n + 1, &r0);
    let mut lambda = Vec::new();
    for s in 0..n {
        let mut v = unit_vec(n + 1, s);
        if parity[s] {
            v[n] = Int::one();
        }
        lambda.push(v);
    }
    lambda.push({
        let mut v = zero_vec(n + 1);
        v[n] = Int::from(2);
        v
    });
    let lambda = Sublattice::new(n + 1, &lambda);
    let embed = |g: &[Int]| -> ZVec {
        let mut v = g.to_vec();
        v.push(g.iter().sum());
        v
    };
    let well_defined = lat.relations().basis().iter().all(|r| r0.contains(&embed(r)))
        && r0.basis().iter().all(|r| lambda.contains(r));
    // preimage of R_0 x 0 under the embedding
    let images: Vec<ZVec> = (0..n).map(|s| embed(&unit_vec(n, s))).collect();
    let emb = LinearMap::from_images(n + 1, images);
    let mut stacked: Vec<ZVec> = emb.matrix.row_vecs().to_vec();
    stacked.extend(r0.basis().iter().map(|r| r.iter().map(|x| -x).collect()));
    let ker = kernel_basis(&IntMatrix::from_rows(n + 1, stacked));
    let pre: Vec<ZVec> = ker.iter().map(|x| x[..n].to_vec()).collect();
    let injective = Sublattice::new(n, &pre) == *lat.relations();
    let surjective = emb.image().sum(&r0) == lambda;
    let t = embed(&lat.tate());
    let mut t_expected = zero_vec(n + 1);
    t_expected[n] = Int::from(-2);
    let tate_matches = r0.contains(&crate::lattice::sub_vec(&t, &t_expected));
    let equivariant = lat.actions().iter().all(|p| {
        let mut q = p.clone();
        q.push(n);
        (0..n).all(|s| {
            let e = unit_vec(n, s);
            embed(&permute_vec(p, &e)) == permute_vec(&q, &embed(&e))
        })
    });
    // t o w: w is the last coordinate on the reconstructed side and the sum
    // on the direct side.
    let t_of_w_reconstructed = t_expected[n].clone();
    let t_of_w_direct = lat.weight(&lat.tate());
    Ok(A1Check {
        well_defined,
        injective,
        surjective,
        tate_matches,
        equivariant,
        t_of_w_direct,
        t_of_w_reconstructed,
    })
}

/// Sign-normalise a rank-one generator so its first nonzero entry is
/// positive.
pub fn normalize_sign(v: &[Int]) -> ZVec {
    match leading_index(v) {
        Some(i) if v[i].is_negative() => v.iter().map(|x| -x).collect(),
        _ => v.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::zvec;

    fn c6() -> FiniteGroup {
        FiniteGroup::preset("C6").unwrap()
    }

    #[test]
    fn cm_type_validation() {
        let g = c6();
        let t = g.trivial();
        assert!(CmType::from_elements(&g, &t, &[0, 1, 5]).is_ok());
        assert!(CmType::from_elements(&g, &t, &[0, 3, 1]).is_err());
        let r = cm_type_tools(&g, &t, &[true, false, true, false, true, false]);
        assert!(r.valid);
        assert_eq!(r.primitive, Some(false));
        assert_eq!(r.reflex_subgroup.unwrap().members(), &[0, 2, 4]);
        let r = cm_type_tools(&g, &t, &[true, true, false, false, false, true]);
        assert_eq!(r.reflex_subgroup.unwrap().order(), 1);
        assert_eq!(r.primitive, Some(true));
    }

    #[test]
    fn serre_lattice_ranks() {
        let c2 = FiniteGroup::preset("C2").unwrap();
        assert_eq!(SerreLattice::new(&c2).rank(), 2);
        let s = SerreLattice::new(&c6());
        assert_eq!(s.rank(), 4);
        assert!(s.is_member(&zvec(&[1, 1, 0, 0, 0, 1])));
        assert!(!s.is_member(&zvec(&[1, 0, 0, 0, 0, 0])));
    }

    #[test]
    fn format_brackets() {
        let labels: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(format_combination(&labels, &zvec(&[3, 0, -2])), "[3x - 2z]");
        assert_eq!(format_combination(&labels, &zvec(&[0, -1, 1])), "[-y + z]");
        assert_eq!(format_combination(&labels, &zvec(&[0, 0, 0])), "[0]");
    }
}
