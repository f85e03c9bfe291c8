//! Reduction at `w0`: the slope formula for CM types, the pushforward
//! `f -> f_bar` from `X*(S^K)` to `W^K(p^inf)`, the fundamental diagram,
//! the restriction `X*(L(A)) -> X*(L(A_0))`, the P-kernel and lifting.

use crate::cm::{AvSpec, CmType, LefschetzLattice, SerreLattice};
use crate::error::{Error, Result};
use crate::group::{CosetSpace, Subgroup};
use crate::lattice::{
    is_zero_vec, kernel_basis, unit_vec, zero_vec, Int, IntMatrix, LinearMap, Sublattice, ZVec,
};
use crate::weil::{ExactnessCertificate, Rat, WeilContext};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Cosets of `H_E` in `Sigma_E(w)`: the embeddings `sigma` with
/// `sigma^-1 w0` below `w = xD`, i.e. the cosets meeting `D x^-1`.
pub fn fibre(ctx: &WeilContext, cm: &CmType, w: usize) -> Vec<usize> {
    let g = ctx.group();
    let x = ctx.primes().representative(w);
    let xi = g.inv(x);
    let mut out: Vec<usize> = ctx
        .decomposition_group()
        .members()
        .iter()
        .map(|&d| cm.space().coset_of(g.mul(d, xi)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `|Phi(v)| / |Sigma_E(v)|` at the prime of `E` below `w` (through the
/// reference embedding).
pub fn slope_at(ctx: &WeilContext, cm: &CmType, w: usize) -> Rat {
    let fib = fibre(ctx, cm, w);
    let hits = fib.iter().filter(|&&s| cm.contains(s)).count();
    Rat::new(Int::from(hits), Int::from(fib.len()))
}

/// The germ `f = n0 * s` of the reduction of a CM type.
pub fn reduce_factor(ctx: &WeilContext, cm: &CmType) -> Result<ZVec> {
    let n0 = Rat::from_integer(Int::from(ctx.n0()));
    (0..ctx.x_len())
        .map(|w| {
            let v = &slope_at(ctx, cm, w) * &n0;
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::Malformed(format!(
                    "slope {} at prime {} times n0 = {} is not integral; K does not split the reduction (enlarge the group)",
                    slope_at(ctx, cm, w),
                    ctx.primes().label(w),
                    ctx.n0()
                )))
            }
        })
        .collect()
}

pub fn reduce_cm(spec: &AvSpec, ctx: &WeilContext) -> Result<Vec<ZVec>> {
    spec.factors().iter().map(|f| reduce_factor(ctx, &f.cm)).collect()
}

/// `f_bar(w) = sum_{tau w0 = w} f(tau)`.
pub fn pushforward(ctx: &WeilContext, f: &[Int]) -> ZVec {
    let mut out = zero_vec(ctx.x_len());
    for (tau, v) in f.iter().enumerate() {
        out[ctx.primes().coset_of(tau)] += v;
    }
    out
}

#[derive(Clone, Debug)]
pub enum DiagramOutcome {
    Diagram(Box<FundamentalDiagram>),
    /// `iota` lies in `D`: no prime of `F` over `p` splits in `K`.
    Degenerate { weil_rank: usize, constant_slopes_only: bool },
}

impl DiagramOutcome {
    pub fn passes(&self) -> bool {
        match self {
            DiagramOutcome::Diagram(d) => d.passes(),
            DiagramOutcome::Degenerate { weil_rank, constant_slopes_only } => *weil_rank == 1 && *constant_slopes_only,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, DiagramOutcome::Degenerate { .. })
    }
}

#[derive(Clone, Debug)]
pub struct FundamentalDiagram {
    pub top: ExactnessCertificate,
    pub bottom: ExactnessCertificate,
    pub left_lands_in_weil: bool,
    pub left_square_commutes: bool,
    pub right_square_commutes: bool,
    pub serre_rank: usize,
    pub weil_rank: usize,
}

impl FundamentalDiagram {
    pub fn passes(&self) -> bool {
        self.top.passes()
            && self.bottom.passes()
            && self.left_lands_in_weil
            && self.left_square_commutes
            && self.right_square_commutes
    }
}

pub fn fundamental_diagram(ctx: &WeilContext) -> DiagramOutcome {
    let g = ctx.group();
    let n = g.order();
    let weil = ctx.weil_lattice();
    if ctx.degenerate() {
        let nx = ctx.x_len();
        let constant = weil.lattice.basis().iter().all(|b| b[..nx].iter().all(|x| *x == b[0]));
        return DiagramOutcome::Degenerate {
            weil_rank: weil.rank(),
            constant_slopes_only: constant,
        };
    }
    let sk = SerreLattice::new(g);
    let sf = CosetSpace::new(g, &g.generated(&[g.iota()]));
    let with_weight = |b: &[Int]| -> ZVec {
        let mut v = b.to_vec();
        v.push(sk.weight(b));
        v
    };
    // top row
    let top1: Vec<ZVec> = sk.sublattice().basis().iter().map(|b| with_weight(b)).collect();
    let mut images: Vec<ZVec> = (0..n).map(|t| unit_vec(sf.len(), sf.coset_of(t))).collect();
    images.push(vec![-Int::one(); sf.len()]);
    let top2 = LinearMap::from_images(sf.len(), images);
    let top_image = Sublattice::new(n + 1, &top1);
    let top = ExactnessCertificate {
        first_injective: top_image.rank() == top1.len(),
        composition_zero: top1.iter().all(|b| is_zero_vec(&top2.apply(b))),
        middle_exact: top2.kernel() == top_image,
        second_surjective: top2.cokernel().is_trivial(),
        rank_matches: top_image.rank() + sf.len() == n + 1,
    };
    // vertical maps
    let left = |b: &[Int]| -> ZVec {
        let mut v = pushforward(ctx, b);
        v.push(sk.weight(b));
        v
    };
    let mut mid_images: Vec<ZVec> = (0..n).map(|t| unit_vec(ctx.x_len() + 1, ctx.primes().coset_of(t))).collect();
    mid_images.push(unit_vec(ctx.x_len() + 1, ctx.x_len()));
    let middle = LinearMap::from_images(ctx.x_len() + 1, mid_images);
    let right_images: Vec<ZVec> = (0..sf.len())
        .map(|s| unit_vec(ctx.y_len(), ctx.real_primes().coset_of(sf.representative(s))))
        .collect();
    let right = LinearMap::from_images(ctx.y_len(), right_images);
    let bottom2 = ctx.second_map();
    let left_lands_in_weil = sk.sublattice().basis().iter().all(|b| weil.lattice.contains(&left(b)));
    let left_square_commutes = sk
        .sublattice()
        .basis()
        .iter()
        .all(|b| middle.apply(&with_weight(b)) == left(b));
    let right_square_commutes = (0..=n).all(|i| {
        let e = unit_vec(n + 1, i);
        right.apply(&top2.apply(&e)) == bottom2.apply(&middle.apply(&e))
    });
    DiagramOutcome::Diagram(Box::new(FundamentalDiagram {
        top,
        bottom: weil.certificate.clone(),
        left_lands_in_weil,
        left_square_commutes,
        right_square_commutes,
        serre_rank: sk.rank(),
        weil_rank: weil.rank(),
    }))
}

/// One conjugate `sigma pi` of a Frobenius germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateGerm {
    pub factor: usize,
    /// A group element `sigma` with this germ equal to `sigma pi`.
    pub sigma: usize,
    pub f: ZVec,
}

/// `X*(L(A)) -> X*(L(A_0))` with the data needed downstream.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub base_germs: Vec<ZVec>,
    pub germs: Vec<ConjugateGerm>,
    pub lattice: LefschetzLattice,
    /// Ambient index of `Sigma_E` to index of `Pi`.
    pub sigma_to_pi: Vec<usize>,
    pub restriction: LinearMap,
}

pub fn restriction_map(spec: &AvSpec, ctx: &WeilContext) -> Result<Reduction> {
    let base_germs = reduce_cm(spec, ctx)?;
    let g = spec.group();
    let mut germs: Vec<ConjugateGerm> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut sigma_to_pi = vec![usize::MAX; spec.ambient_len()];
    let mut offset = 0;
    for (k, factor) in spec.factors().iter().enumerate() {
        let f = &base_germs[k];
        if let Some(other) = germs.iter().find(|c| c.f == *f) {
            return Err(Error::IsogenyCollision(format!(
                "{} and {} reduce to conjugate Frobenius germs {:?}; their reductions are isogenous",
                spec.factors()[other.factor].name,
                factor.name,
                f.iter().map(|x| x.to_string()).collect::<Vec<_>>()
            )));
        }
        let space = factor.cm.space();
        let mut half: Vec<ConjugateGerm> = Vec::new();
        let mut fixed: Vec<bool> = Vec::new();
        for &s in &factor.half {
            let x = space.representative(s);
            let h = ctx.act(x, f);
            let ih = ctx.iota(&h);
            if half.iter().any(|c| c.f == h || c.f == ih) {
                continue;
            }
            fixed.push(ih == h);
            half.push(ConjugateGerm { factor: k, sigma: x, f: h });
        }
        let partners: Vec<ConjugateGerm> = half
            .iter()
            .zip(&fixed)
            .filter(|(_, &fx)| !fx)
            .map(|(c, _)| ConjugateGerm {
                factor: k,
                sigma: g.mul(g.iota(), c.sigma),
                f: ctx.iota(&c.f),
            })
            .collect();
        let h = half.len();
        let mut p = 0;
        for (i, fx) in fixed.iter().enumerate() {
            if *fx {
                pairs.push((offset + i, offset + i));
            } else {
                pairs.push((offset + i, offset + h + p));
                p += 1;
            }
        }
        germs.extend(half);
        germs.extend(partners);
        for s in 0..space.len() {
            let h = ctx.act(space.representative(s), f);
            let idx = germs[offset..]
                .iter()
                .position(|c| c.f == h)
                .ok_or_else(|| Error::Internal("conjugate germ missing".into()))?;
            sigma_to_pi[spec.index_of(k, s)] = offset + idx;
        }
        offset = germs.len();
    }
    let labels = germ_labels(spec, &germs, ctx);
    let actions: Vec<Vec<usize>> = (0..g.order())
        .map(|t| {
            germs
                .iter()
                .map(|c| {
                    let h = ctx.act(t, &c.f);
                    germs.iter().position(|d| d.f == h).expect("Pi is Gamma-stable")
                })
                .collect()
        })
        .collect();
    let lattice = LefschetzLattice::new(labels, pairs, actions);
    let images = sigma_to_pi.iter().map(|&p| unit_vec(germs.len(), p)).collect();
    let restriction = LinearMap::from_images(germs.len(), images);
    Ok(Reduction {
        base_germs,
        germs,
        lattice,
        sigma_to_pi,
        restriction,
    })
}

/// `A0.πk` for the k-th new germ of factor `A`, `A0.ιπk` for its iota-image.
fn germ_labels(spec: &AvSpec, germs: &[ConjugateGerm], ctx: &WeilContext) -> Vec<String> {
    let mut labels: Vec<String> = Vec::with_capacity(germs.len());
    for (i, c) in germs.iter().enumerate() {
        let name = &spec.factors()[c.factor].name;
        let same: Vec<usize> = (0..i).filter(|&j| germs[j].factor == c.factor).collect();
        let ic = ctx.iota(&c.f);
        match same.iter().find(|&&j| germs[j].f == ic) {
            Some(&j) => {
                let base = labels[j].clone();
                labels.push(base.replacen(".π", ".ιπ", 1))
            }
            None => {
                let k = same.iter().filter(|&&j| !labels[j].contains(".ιπ")).count();
                labels.push(format!("{name}0.π{k}"))
            }
        }
    }
    labels
}

impl Reduction {
    pub fn len(&self) -> usize {
        self.germs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.germs.is_empty()
    }

    pub fn relabel(&mut self, labels: Vec<String>) {
        self.lattice = LefschetzLattice::new(labels, self.lattice.pairs().to_vec(), self.lattice.actions().to_vec());
    }

    /// `[g] -> [g(pi)]`: `e_pi -> (f_pi, 1)` in `Z^X x Z`.
    pub fn p_map(&self, ctx: &WeilContext) -> LinearMap {
        let images = self
            .germs
            .iter()
            .map(|c| {
                let mut v = c.f.clone();
                v.push(ctx.weight(&c.f).expect("germs have a weight"));
                v
            })
            .collect();
        LinearMap::from_images(ctx.x_len() + 1, images)
    }

    pub fn p_kernel(&self, ctx: &WeilContext) -> Result<PKernel> {
        let map = self.p_map(ctx);
        let weil = ctx.weil_lattice();
        for c in 0..self.len() {
            if !weil.lattice.contains(&map.apply(&unit_vec(self.len(), c))) {
                return Err(Error::Internal("a conjugate germ is not in W^K".into()));
            }
        }
        if !self.lattice.relations().basis().iter().all(|r| is_zero_vec(&map.apply(r))) {
            return Err(Error::Internal("the map to X*(P^K) does not kill the Lefschetz relations".into()));
        }
        let preimage = map.kernel();
        let generators = self.lattice.class_basis(&preimage);
        Ok(PKernel {
            rank: generators.len(),
            saturated: preimage.is_saturated(),
            preimage,
            generators,
            map,
        })
    }

    /// `{g : sum_pi g(pi) s_pi(w) = 0 for all w}` from the slope formula,
    /// with `s_{sigma pi}(w) = s_pi(sigma^-1 w)`.
    pub fn slope_sum_kernel(&self, spec: &AvSpec, ctx: &WeilContext) -> Sublattice {
        let g = spec.group();
        let rows: Vec<Vec<Rat>> = self
            .germs
            .iter()
            .map(|c| {
                let cm = &spec.factors()[c.factor].cm;
                let si = g.inv(c.sigma);
                (0..ctx.x_len()).map(|w| slope_at(ctx, cm, ctx.primes().act(si, w))).collect()
            })
            .collect();
        let mut den = Int::one();
        for r in &rows {
            for s in r {
                den = den.lcm(s.denom());
            }
        }
        let scaled: Vec<ZVec> = rows
            .iter()
            .map(|r| r.iter().map(|s| (s * Rat::from_integer(den.clone())).to_integer()).collect())
            .collect();
        Sublattice::new(self.len(), &kernel_basis(&IntMatrix::from_rows(ctx.x_len(), scaled)))
    }

    /// Evaluate the slope-sum criterion on a single character.
    pub fn slope_sum_trivial(&self, spec: &AvSpec, ctx: &WeilContext, g: &[Int]) -> bool {
        let grp = spec.group();
        (0..ctx.x_len()).all(|w| {
            let mut acc = Rat::zero();
            for (k, c) in self.germs.iter().enumerate() {
                if g[k].is_zero() {
                    continue;
                }
                let cm = &spec.factors()[c.factor].cm;
                acc += Rat::from_integer(g[k].clone()) * slope_at(ctx, cm, ctx.primes().act(grp.inv(c.sigma), w));
            }
            acc.is_zero()
        })
    }
}

#[derive(Clone, Debug)]
pub struct PKernel {
    /// Preimage in `Z^Pi` (contains the relations).
    pub preimage: Sublattice,
    pub rank: usize,
    pub generators: Vec<ZVec>,
    pub saturated: bool,
    pub map: LinearMap,
}

impl PKernel {
    pub fn exotic_tate_exists(&self) -> bool {
        self.rank > 0
    }
}

/// Search the CM types on `G/H_E` whose reduction is exactly `f`.
///
/// `Ok(None)` means every type was tried; an error means `E` cannot contain
/// `Q[pi]` or is not a CM field.
pub fn lifting_search(ctx: &WeilContext, f: &[Int], h_e: &Subgroup) -> Result<Option<CmType>> {
    let g = ctx.group();
    let stab = ctx.stabilizer(f);
    if !h_e.is_subgroup_of(&stab) {
        return Err(Error::IncompatibleField(
            "E does not contain Q[pi] (H_E is not inside the stabilizer of the germ)".into(),
        ));
    }
    let space = CosetSpace::new(g, h_e);
    if space.iota_fixes_some() {
        return Err(Error::IncompatibleField("E is not a CM field (iota lies in H_E)".into()));
    }
    let io = space.iota_action().to_vec();
    let reps: Vec<usize> = (0..space.len()).filter(|&i| i < io[i]).collect();
    for code in 0u64..(1u64 << reps.len()) {
        let mut phi = vec![false; space.len()];
        for (b, &r) in reps.iter().enumerate() {
            if code >> b & 1 == 0 {
                phi[r] = true;
            } else {
                phi[io[r]] = true;
            }
        }
        let cm = CmType::new(space.clone(), phi)?;
        if let Ok(h) = reduce_factor(ctx, &cm) {
            if h == f {
                return Ok(Some(cm));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::lattice::zvec;

    #[test]
    fn slopes_on_c6() {
        let g = FiniteGroup::preset("C6").unwrap();
        let t = g.trivial();
        let a = CmType::from_elements(&g, &t, &[0, 1, 5]).unwrap();
        let split = WeilContext::new(&g, &g.subgroup(&[0, 2, 4]).unwrap());
        assert_eq!(reduce_factor(&split, &a).unwrap(), zvec(&[1, 2]));
        let inert = WeilContext::new(&g, &g.subgroup(&[0, 3]).unwrap());
        assert!(reduce_factor(&inert, &a).unwrap().iter().all(|x| *x == Int::from(1)));
    }

    #[test]
    fn pushforward_zero() {
        let g = FiniteGroup::preset("C6").unwrap();
        let ctx = WeilContext::new(&g, &g.subgroup(&[0, 2, 4]).unwrap());
        assert!(is_zero_vec(&pushforward(&ctx, &zero_vec(6))));
    }

    #[test]
    fn diagram_branches() {
        let c2 = FiniteGroup::preset("C2").unwrap();
        assert!(fundamental_diagram(&WeilContext::new(&c2, &c2.whole())).is_degenerate());
        let d = fundamental_diagram(&WeilContext::new(&c2, &c2.trivial()));
        assert!(!d.is_degenerate() && d.passes());
    }
}
