//! Verdicts for a scenario. Every status is backed by computed certificates
//! plus, where the conclusion needs them, declared facts listed in
//! `conditions`.

use crate::cm::{AvSpec, Factor, LefschetzLattice, MtKernel, SerreLattice};
use crate::error::{Error, Result};
use crate::group::{block_partition, double_coset_commute, FiniteGroup, Subgroup};
use crate::hodge::{exotic_characters, exotic_hodge_characters, nondegeneracy_induction, HodgeFrame, Monomial};
use crate::lattice::{
    is_zero_vec, kernel_basis, neg_vec, unit_vec, zero_vec, Int, IntMatrix, LinearMap, Sublattice, ZVec,
};
use crate::reduction::{
    fundamental_diagram, pushforward, restriction_map, PKernel, Reduction,
};
use crate::scenario::{AlgebraicSource, Check, Scenario};
use crate::weil::{dieudonne_degree_check, rat, GermInvariants, Rat, WeilContext};
use num_traits::One;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Holds,
    Fails,
    Conditional,
    Inconclusive,
    NotApplicable,
}

impl Status {
    pub fn code(&self) -> i64 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Conditional => 2,
            Status::Inconclusive => 3,
            Status::NotApplicable => 4,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Conditional => "conditional",
            Status::Inconclusive => "inconclusive",
            Status::NotApplicable => "not-applicable",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub check: Check,
    pub status: Status,
    /// Declared facts the status depends on.
    pub conditions: Vec<String>,
    /// `(name, value)` pairs, values in bracket notation where they are
    /// characters.
    pub witnesses: Vec<(String, String)>,
    pub trace: Vec<String>,
    /// Integer data for the machine-readable report section.
    pub values: Vec<(String, ZVec)>,
}

impl Verdict {
    fn new(check: Check, status: Status) -> Self {
        Verdict {
            check,
            status,
            conditions: Vec::new(),
            witnesses: Vec::new(),
            trace: Vec::new(),
            values: Vec::new(),
        }
    }

    fn not_applicable(check: Check, why: impl Into<String>) -> Self {
        let mut v = Verdict::new(check, Status::NotApplicable);
        v.trace.push(why.into());
        v
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.trace.push(s.into());
        self
    }

    fn value(&mut self, k: &str, v: ZVec) {
        self.values.push((k.to_string(), v));
    }

    fn witness(mut self, k: &str, v: impl Into<String>) -> Self {
        self.witnesses.push((k.to_string(), v.into()));
        self
    }
}

/// The three character subgroups compared by the intersection criterion,
/// as preimages in `Z^{Sigma_E}` (all contain the Lefschetz relations).
#[derive(Clone, Debug)]
pub struct Kernels {
    pub reduction: Reduction,
    pub mt: MtKernel,
    pub p: PKernel,
    /// `ker(X*(L(A)) -> X*(L(A_0)))`.
    pub k1: Sublattice,
    /// `ker(X*(L(A)) -> X*(MT(A)))`.
    pub k2: Sublattice,
    /// `ker(X*(L(A)) -> X*(P^K))`.
    pub kp: Sublattice,
}

pub fn kernels(spec: &AvSpec, ctx: &WeilContext) -> Result<Kernels> {
    let reduction = restriction_map(spec, ctx)?;
    let mt = spec.mt_kernel()?;
    let p = reduction.p_kernel(ctx)?;
    let k1 = reduction.restriction.preimage(reduction.lattice.relations());
    let kp = reduction.restriction.then(&p.map).kernel();
    Ok(Kernels {
        k2: mt.preimage.clone(),
        reduction,
        mt,
        p,
        k1,
        kp,
    })
}

fn context(sc: &Scenario) -> WeilContext {
    WeilContext::new(&sc.group, &sc.decomposition)
}

fn hodge_premise(v: &mut Verdict, sc: &Scenario, mt_rank: usize) -> Status {
    if mt_rank == 0 {
        v.trace.push("MT(A) = L(A): every Hodge class on every power of A is Lefschetz".into());
        Status::Holds
    } else if sc.facts.schoen_exotic_algebraic {
        v.conditions.push("schoen_exotic_algebraic: the exotic Hodge classes are algebraic".into());
        Status::Holds
    } else {
        v.trace.push("the Hodge conjecture for powers of A is not established (exotic Hodge classes exist)".into());
        Status::Conditional
    }
}

/// `P(A_0) = L(A_0) cap MT(A)`, decided as `K_P = K_1 + K_2`.
pub fn check_mt_intersection(sc: &Scenario) -> Result<Verdict> {
    let ctx = context(sc);
    let k = kernels(&sc.spec, &ctx)?;
    let lat = sc.spec.lefschetz();
    let sum = k.k1.sum(&k.k2);
    let mut v = Verdict::new(Check::MtIntersection, Status::Fails)
        .note(format!(
            "ranks in X*(L(A)): K1 = {}, K2 = {}, K_P = {}",
            lat.rank_of(&k.k1),
            lat.rank_of(&k.k2),
            lat.rank_of(&k.kp)
        ));
    for (key, sub) in [("k1_rank", &k.k1), ("k2_rank", &k.k2), ("kp_rank", &k.kp)] {
        v.value(key, vec![Int::from(lat.rank_of(sub))]);
    }
    if sum == k.kp {
        v.trace.push("K_P = K1 + K2 exactly, so P(A₀) = L(A₀) cap MT(A)".into());
        v.status = hodge_premise(&mut v, sc, k.mt.rank);
    } else {
        v.trace.push("K_P differs from K1 + K2: P(A₀) != L(A₀) cap MT(A)".into());
    }
    for g in lat.class_basis(&k.kp) {
        v.witnesses.push(("K_P".into(), lat.format(&g)));
    }
    Ok(v)
}

/// `P(A_0)` against the intersection of the kernels of the algebraic
/// characters restricted to `L(A_0)`.
pub fn check_algebraic_characters(sc: &Scenario) -> Result<Verdict> {
    let ctx = context(sc);
    let k = kernels(&sc.spec, &ctx)?;
    let lat = sc.spec.lefschetz();
    let (chars, declared) = match &sc.algebraic {
        AlgebraicSource::MumfordTate => (k.k2.basis().to_vec(), false),
        AlgebraicSource::Declared(c) => (c.clone(), true),
    };
    let span = Sublattice::new(sc.spec.ambient_len(), &chars).sum(lat.relations());
    let actions: Vec<Vec<usize>> = lat.actions().to_vec();
    if !span.is_stable(&actions) {
        return Err(Error::Declared("the declared characters do not span a Gamma-stable subgroup".into()));
    }
    let red = &k.reduction;
    let restricted: Vec<ZVec> = chars.iter().map(|c| red.restriction.apply(c)).collect();
    for (c, r) in chars.iter().zip(&restricted) {
        if !k.p.preimage.contains(r) {
            return Err(Error::Declared(format!(
                "{} is nontrivial on P(A₀), so it cannot be algebraic",
                lat.format(c)
            )));
        }
    }
    let intersection = Sublattice::new(red.len(), &restricted).sum(red.lattice.relations());
    let mut v = Verdict::new(Check::AlgebraicCharacters, Status::Inconclusive);
    v.trace.push(if declared {
        format!("{} declared algebraic character(s)", chars.len())
    } else {
        "algebraic characters taken as those trivial on MT(A)".to_string()
    });
    if intersection == k.p.preimage {
        v.trace.push("P(A₀) equals the intersection of their kernels on L(A₀)".into());
        v.status = if declared {
            v.conditions.push("the declared characters are algebraic".into());
            Status::Holds
        } else {
            hodge_premise(&mut v, sc, k.mt.rank)
        };
    } else {
        v.trace.push(format!(
            "the kernels cut out a group of character rank {} but P(A₀) has {}; the hypothesis is not established",
            red.lattice.rank_of(&intersection),
            k.p.rank
        ));
    }
    Ok(v)
}

/// Output of the Weil-type pipeline on `A x B`.
#[derive(Clone, Debug)]
pub struct WeilTypeData {
    pub n: usize,
    pub m: usize,
    pub n0: usize,
    pub x_size: usize,
    pub block_size: usize,
    pub sigma0_cap_d: usize,
    pub jmap: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub f_j: Vec<ZVec>,
    pub f_b: ZVec,
    pub serre_relation_rank: usize,
    pub serre_relation_ok: bool,
    pub relation_holds: bool,
    pub relation_rank: usize,
    pub lattice: LefschetzLattice,
    pub lattice0: LefschetzLattice,
    pub chi: ZVec,
    pub chi0: ZVec,
    pub chi_matches: bool,
    pub chi0_matches: bool,
    pub chi_maps_to_chi0: bool,
    pub germs_match_blocks: bool,
    pub diagram_commutes: bool,
    pub slope_sum_agrees: bool,
    pub hodge_exotic: BTreeMap<(u32, ZVec), usize>,
    pub tate_exotic: BTreeMap<(u32, ZVec), usize>,
    pub w_monomials: Vec<Monomial>,
    pub w_characters_ok: bool,
    pub w_seed_nondegenerate: bool,
}

impl WeilTypeData {
    fn exotic_ok(map: &BTreeMap<(u32, ZVec), usize>, r: u32, lat: &LefschetzLattice, gen: &[Int]) -> bool {
        let mut want = BTreeMap::new();
        want.insert((r, lat.canonical(gen)), 1);
        want.insert((r, lat.canonical(&neg_vec(gen))), 1);
        *map == want
    }

    pub fn hodge_ok(&self) -> bool {
        Self::exotic_ok(&self.hodge_exotic, (self.n - 1) as u32, &self.lattice, &self.chi)
    }

    pub fn tate_ok(&self) -> bool {
        Self::exotic_ok(&self.tate_exotic, (self.n - 1) as u32, &self.lattice0, &self.chi0)
    }

    /// Named certificate results, in report order.
    pub fn certificates(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("serre_relation", self.serre_relation_ok),
            ("chi_generator", self.chi_matches),
            ("germs_match_blocks", self.germs_match_blocks),
            ("weil_relation", self.relation_holds && self.relation_rank == 1),
            ("chi0_generator", self.chi0_matches),
            ("chi_to_chi0", self.chi_maps_to_chi0),
            ("diagram", self.diagram_commutes),
            ("slope_sum", self.slope_sum_agrees),
            ("exotic_hodge", self.hodge_ok()),
            ("exotic_tate", self.tate_ok()),
            ("w_characters", self.w_characters_ok),
            ("w_seed_pairing", self.w_seed_nondegenerate),
        ]
    }

    pub fn passes(&self) -> bool {
        self.certificates().iter().all(|(_, ok)| *ok)
    }
}

#[derive(Clone, Debug)]
pub struct WeilTypeReport {
    pub verdict: Verdict,
    pub data: Option<WeilTypeData>,
}

fn sigma_label(i: usize) -> String {
    format!("σ{i}")
}

/// The `A x B` computation: coset blocks, `f_j`, the kernels `<chi>` and
/// `<chi_0>`, the comparison square and the exotic classes.
pub fn check_weil_type(sc: &Scenario) -> Result<WeilTypeReport> {
    let na = |why: &str| -> Result<WeilTypeReport> {
        Ok(WeilTypeReport {
            verdict: Verdict::not_applicable(Check::WeilType, why),
            data: None,
        })
    };
    let (Some(ka), Some(kb)) = (sc.e_factor, sc.q_factor) else {
        return na("needs a factor with role E and a factor with role Q");
    };
    if sc.spec.factors().len() != 2 {
        return na("the scenario must be exactly A x B");
    }
    let g = &sc.group;
    let fa = &sc.spec.factors()[ka];
    let fb = &sc.spec.factors()[kb];
    let h_e = fa.cm.space().subgroup().clone();
    let h_q = fb.cm.space().subgroup().clone();
    if !h_e.is_subgroup_of(&h_q) {
        return na("E does not contain Q (H_E is not inside H_Q)");
    }
    let n = h_q.order() / h_e.order();
    if n <= 2 {
        return na(&format!("E has degree {} over Q; need n > 2", 2 * n));
    }
    let qspace = fb.cm.space();
    if fb.cm.members() != vec![qspace.base()] {
        return na("Phi on Q must be {rho0}, the embedding of the identity coset");
    }
    let espace = fa.cm.space();
    let sig_cosets: Vec<usize> = (0..espace.len())
        .filter(|&c| h_q.contains(espace.representative(c)))
        .collect();
    let mut expected: Vec<usize> = vec![sig_cosets[0]];
    expected.extend(sig_cosets[1..].iter().map(|&c| espace.iota_action()[c]));
    expected.sort_unstable();
    if sig_cosets[0] != espace.base() || fa.cm.members() != expected {
        return na("Phi on E must be {sigma0, iota sigma1, ..., iota sigma(n-1)} with sigma0 the identity coset");
    }
    if !sc.facts.p_splits_in_q {
        return na("p does not split in Q (D is not inside H_Q)");
    }
    let d = &sc.decomposition;
    if double_coset_commute(g, &h_e, d).is_none() {
        return na("Sigma0 * D != D * Sigma0; the computation is refused without this condition");
    }
    let part = block_partition(g, &h_e, &h_q, d)?;
    let ctx = WeilContext::new(g, d);
    let n0 = ctx.n0();
    let m = part.m();

    // Relabelled A x B with the sigma_i as the half.
    let mut a_labels = vec![String::new(); espace.len()];
    for (i, &c) in sig_cosets.iter().enumerate() {
        a_labels[c] = sigma_label(i);
        a_labels[espace.iota_action()[c]] = format!("ι{}", sigma_label(i));
    }
    let mut b_labels = vec![String::new(); 2];
    b_labels[qspace.base()] = "ρ0".into();
    b_labels[qspace.iota_action()[qspace.base()]] = "ιρ0".into();
    let a = Factor::new(&fa.name, fa.cm.clone(), fa.multiplicity)
        .with_half(sig_cosets.clone())?
        .with_labels(a_labels);
    let b = Factor::new(&fb.name, fb.cm.clone(), 1).with_labels(b_labels.clone());
    let spec = AvSpec::new(g.clone(), vec![a.clone(), b])?;
    let lat = spec.lefschetz();
    let sig_idx: Vec<usize> = sig_cosets.iter().map(|&c| spec.index_of(0, c)).collect();
    let rho = spec.index_of(1, qspace.base());
    let irho = spec.index_of(1, qspace.iota_action()[qspace.base()]);
    let sk = SerreLattice::new(g);

    // Relation among psi_0..psi_{n-1}, psi, iota psi.
    let mut rows: Vec<ZVec> = sig_idx.iter().map(|&i| spec.psi(i)).collect();
    rows.push(spec.psi(rho));
    rows.push(spec.psi(irho));
    let rel = kernel_basis(&IntMatrix::from_rows(g.order(), rows.clone()));
    let mut star: ZVec = vec![Int::one(); n];
    star.push(-Int::one());
    star.push(-Int::from(n - 1));
    let serre_relation_ok = rel.len() == 1 && (rel[0] == star || rel[0] == neg_vec(&star))
        && rows.iter().all(|r| sk.is_member(r));

    // chi from the MT kernel and from the closed formula.
    let mt = spec.mt_kernel()?;
    let mut chi = zero_vec(spec.ambient_len());
    for &i in &sig_idx {
        chi[i] += Int::one();
    }
    chi[rho] += Int::from(n) - 2 - Int::from(n - 1);
    chi[irho] -= Int::from(n - 1);
    let chi_matches = mt.rank == 1
        && (lat.same_class(&mt.generators[0], &chi) || lat.same_class(&mt.generators[0], &neg_vec(&chi)));

    // f_j and f from their defining conditions.
    let x = ctx.primes();
    let io = x.iota_action();
    let cap = h_e.members().iter().filter(|&&t| d.contains(t)).count();
    let mut f_j: Vec<ZVec> = Vec::new();
    for j in 0..m {
        let mut f = vec![Int::from(n0); x.len()];
        for (k, blk) in part.blocks.iter().enumerate() {
            for &w in blk {
                let val = if k == j { cap } else { 0 };
                f[w] = Int::from(val);
                f[io[w]] = Int::from(n0 - val);
            }
        }
        f_j.push(f);
    }
    let f_b: ZVec = (0..x.len())
        .map(|w| if h_q.contains(x.representative(w)) { Int::from(n0) } else { Int::from(0) })
        .collect();

    let mut red = restriction_map(&spec, &ctx)?;
    let mut germs_match_blocks = red.len() == 2 * m + 2;
    if germs_match_blocks {
        for (i, &s) in sig_idx.iter().enumerate() {
            germs_match_blocks &= red.sigma_to_pi[s] == part.jmap[i];
        }
        for j in 0..m {
            germs_match_blocks &= red.germs[j].f == f_j[j] && red.germs[m + j].f == ctx.iota(&f_j[j]);
        }
        germs_match_blocks &= red.germs[2 * m].f == f_b;
    }
    if !germs_match_blocks {
        return Err(Error::Internal("conjugate Frobenius germs do not follow the block partition".into()));
    }
    let mut labels0: Vec<String> = (0..m).map(|j| format!("π{j}")).collect();
    labels0.extend((0..m).map(|j| format!("ιπ{j}")));
    labels0.push("ρ0".into());
    labels0.push("ιρ0".into());
    red.relabel(labels0);
    let lat0 = red.lattice.clone();
    let p = red.p_kernel(&ctx)?;

    // Relation among f_0..f_{m-1}, f, f + iota f in Z^X x Z.
    let with_w = |f: &ZVec, w: i64| -> ZVec {
        let mut v = f.clone();
        v.push(Int::from(w));
        v
    };
    let f_sum_iota: ZVec = f_b.iter().zip(ctx.iota(&f_b)).map(|(a, b)| a + b).collect();
    let mut frows: Vec<ZVec> = f_j.iter().map(|f| with_w(f, 1)).collect();
    frows.push(with_w(&f_b, 1));
    frows.push(with_w(&f_sum_iota, 2));
    let frel = kernel_basis(&IntMatrix::from_rows(x.len() + 1, frows.clone()));
    let mut lhs = zero_vec(x.len() + 1);
    for r in &frows[..m] {
        for (a, b) in lhs.iter_mut().zip(r) {
            *a += Int::from(n / m) * b;
        }
    }
    for (a, b) in lhs.iter_mut().zip(&frows[m]) {
        *a += Int::from(n - 2) * b;
    }
    let rhs: ZVec = frows[m + 1].iter().map(|b| Int::from(n - 1) * b).collect();
    let relation_holds = lhs == rhs;

    let mut chi0 = zero_vec(red.len());
    for j in 0..m {
        chi0[j] += Int::from(n / m);
    }
    chi0[2 * m] += Int::from(n) - 2 - Int::from(n - 1);
    chi0[2 * m + 1] -= Int::from(n - 1);
    let chi0_matches = p.rank == 1
        && (lat0.same_class(&p.generators[0], &chi0) || lat0.same_class(&p.generators[0], &neg_vec(&chi0)))
        && p.saturated;
    let chi_maps_to_chi0 = lat0.same_class(&red.restriction.apply(&chi), &chi0);

    let diagram = fundamental_diagram(&ctx);
    let right_square = (0..spec.ambient_len()).all(|s| {
        let lhs = p.map.apply(&red.restriction.apply(&unit_vec(spec.ambient_len(), s)));
        let psi = spec.psi(s);
        let mut rhs = pushforward(&ctx, &psi);
        rhs.push(sk.weight(&psi));
        lhs == rhs
    });
    let diagram_commutes = diagram.passes() && !diagram.is_degenerate() && right_square;
    let slope_sum_agrees = red.slope_sum_kernel(&spec, &ctx) == p.preimage;

    // A x B^(n-2) for the cohomology count.
    let b_rep = Factor::new(&fb.name, fb.cm.clone(), n - 2).with_labels(b_labels);
    let spec_rep = AvSpec::new(g.clone(), vec![a, b_rep])?;
    let frame = HodgeFrame::new(&spec_rep)?;
    let max_r = (2 * n - 2) as u32;
    let hodge_exotic = exotic_hodge_characters(&spec_rep, &frame, max_r);
    let restrict = |v: &[Int]| red.restriction.apply(v);
    let p_trivial = |v: &[Int]| is_zero_vec(&p.map.apply(v));
    let tate_exotic = exotic_characters(&frame, &lat, &lat0, &restrict, &p_trivial, max_r);

    let mut support: BTreeSet<usize> = sig_idx.iter().copied().collect();
    support.insert(rho);
    let io_amb = spec.iota_perm();
    let isupport: BTreeSet<usize> = support.iter().map(|&s| io_amb[s]).collect();
    let w_monomials: Vec<Monomial> = [&support, &isupport]
        .iter()
        .filter_map(|s| frame.monomial_with_support(s))
        .collect();
    let w_characters_ok = w_monomials.len() == 2 && {
        let c0 = frame.character(&w_monomials[0], (n - 1) as i64, &lat);
        let c1 = frame.character(&w_monomials[1], (n - 1) as i64, &lat);
        lat.same_class(&c0, &chi) && lat.same_class(&c1, &neg_vec(&chi))
    };
    let w_seed_nondegenerate = w_monomials.len() == 2
        && nondegeneracy_induction(&w_monomials, frame.g()).map(|r| r.nondegenerate()).unwrap_or(false);

    let data = WeilTypeData {
        n,
        m,
        n0,
        x_size: part.x_size,
        block_size: part.blocks[0].len(),
        sigma0_cap_d: cap,
        jmap: part.jmap.clone(),
        blocks: part.blocks.clone(),
        f_j,
        f_b,
        serre_relation_rank: rel.len(),
        serre_relation_ok,
        relation_holds,
        relation_rank: frel.len(),
        lattice: lat.clone(),
        lattice0: lat0.clone(),
        chi: lat.canonical(&chi),
        chi0: lat0.canonical(&chi0),
        chi_matches,
        chi0_matches,
        chi_maps_to_chi0,
        germs_match_blocks,
        diagram_commutes,
        slope_sum_agrees,
        hodge_exotic,
        tate_exotic,
        w_monomials,
        w_characters_ok,
        w_seed_nondegenerate,
    };

    let mut v = Verdict::new(Check::WeilType, Status::Fails)
        .witness("chi", lat.format(&chi))
        .witness("chi0", lat0.format(&chi0))
        .note(format!("n = {n}, m = {m}, n0 = {n0}"));
    for (key, x) in [("n", n), ("m", m), ("n0", n0)] {
        v.value(key, vec![Int::from(x)]);
    }
    v.value("chi", data.chi.clone());
    v.value("chi0", data.chi0.clone());
    let failed: Vec<&str> = data.certificates().iter().filter(|(_, ok)| !ok).map(|(k, _)| *k).collect();
    if failed.is_empty() {
        v.trace.push(format!(
            "the exotic Tate classes on A₀ x B₀^{} are exactly W(A₀, B₀), characters ±chi0 in degree {}",
            n - 2,
            2 * (n - 1)
        ));
        if sc.facts.schoen_exotic_algebraic {
            v.conditions.push("schoen_exotic_algebraic: an exotic Hodge class on A x B^(n-2) is algebraic".into());
            v.trace.push("the Tate conjecture holds for every A₀^s x B₀^t".into());
            v.status = Status::Holds;
        } else {
            v.trace.push("the Tate conjecture for A₀^s x B₀^t needs an algebraic exotic Hodge class".into());
            v.status = Status::Conditional;
        }
    } else {
        v.trace.push(format!("failed certificates: {}", failed.join(", ")));
    }
    Ok(WeilTypeReport {
        verdict: v,
        data: Some(data),
    })
}

/// The sextic case with `Q` generated by a root of unity and determinant 1,
/// where the exotic classes are known to be algebraic.
pub fn check_sextic_weil_type(sc: &Scenario) -> Result<Verdict> {
    let check = Check::SexticWeilType;
    match sc.facts.degree_e {
        Some(6) => {}
        Some(d) => return Ok(Verdict::not_applicable(check, format!("E has degree {d}, not 6"))),
        None => return Ok(Verdict::not_applicable(check, "no factor with role E")),
    }
    if !sc.facts.p_splits_in_q {
        return Ok(Verdict::not_applicable(check, "p does not split in Q"));
    }
    let mut missing = Vec::new();
    if !sc.facts.q_root_of_unity {
        missing.push("q_root_of_unity");
    }
    if !sc.facts.determinant_one {
        missing.push("determinant_one");
    }
    let mut derived = sc.clone();
    derived.facts.schoen_exotic_algebraic = missing.is_empty();
    let inner = check_weil_type(&derived)?;
    let mut v = Verdict::new(check, inner.verdict.status);
    v.witnesses = inner.verdict.witnesses.clone();
    v.trace = inner.verdict.trace.clone();
    v.values = inner.verdict.values.clone();
    if inner.verdict.status == Status::NotApplicable || inner.verdict.status == Status::Fails {
        return Ok(v);
    }
    if missing.is_empty() {
        v.conditions.push("q_root_of_unity (declared)".into());
        v.conditions.push("determinant_one (declared)".into());
        v.trace.push("A x B is a fourfold of Weil type whose Weil classes are algebraic".into());
        v.trace.push("the Hodge conjecture holds for every A^s x B^t".into());
        v.status = Status::Holds;
    } else {
        v.trace.push(format!("not declared: {}", missing.join(", ")));
        v.status = Status::Conditional;
    }
    Ok(v)
}

/// Which of the example families a scenario's reduction falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    EllipticProduct,
    K3Type,
    AlmostOrdinary,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::EllipticProduct => "product of elliptic curves",
            Family::K3Type => "simple, one degree-1 prime of slope 0, others slope 1/2",
            Family::AlmostOrdinary => "simple, one pair v1, iota v1 of degree-1 primes of slope 1/2, others slope 0 or 1",
        }
    }
}

/// Germ invariants of the reduction of every factor.
pub fn reduced_invariants(spec: &AvSpec, ctx: &WeilContext) -> Result<Vec<GermInvariants>> {
    crate::reduction::reduce_cm(spec, ctx)?
        .iter()
        .map(|f| ctx.invariants(f))
        .collect()
}

pub fn family_of(invs: &[GermInvariants]) -> Option<Family> {
    let half = rat(1, 2);
    let zero = rat(0, 1);
    let one = rat(1, 1);
    if invs.iter().all(|i| i.dim == 1) {
        return Some(Family::EllipticProduct);
    }
    let [inv] = invs else { return None };
    let k3 = inv.primes.iter().enumerate().any(|(k, p)| {
        p.slope == zero
            && p.degree == 1
            && inv.primes[p.iota_partner].slope == one
            && inv
                .primes
                .iter()
                .enumerate()
                .all(|(j, q)| j == k || j == p.iota_partner || q.slope == half)
    });
    if k3 {
        return Some(Family::K3Type);
    }
    let halves: Vec<usize> = (0..inv.primes.len()).filter(|&k| inv.primes[k].slope == half).collect();
    if inv.dim > 1
        && halves.len() == 2
        && inv.primes[halves[0]].iota_partner == halves[1]
        && halves.iter().all(|&k| inv.primes[k].degree == 1)
        && inv.primes.iter().all(|q| q.slope == half || q.slope == zero || q.slope == one)
    {
        return Some(Family::AlmostOrdinary);
    }
    None
}

pub fn classify_frobenius_examples(sc: &Scenario) -> Result<Verdict> {
    let check = Check::FrobeniusExamples;
    let ctx = context(sc);
    let invs = reduced_invariants(&sc.spec, &ctx)?;
    let Some(family) = family_of(&invs) else {
        return Ok(Verdict::not_applicable(check, "the slope pattern matches none of the example families"));
    };
    let red = restriction_map(&sc.spec, &ctx)?;
    let p = red.p_kernel(&ctx)?;
    let mut v = Verdict::new(check, Status::Fails).note(format!("family: {}", family.name()));
    if family == Family::K3Type && invs[0].deg_center == 2 * invs[0].dim {
        v.trace.push("[Q[pi]:Q] = 2 dim: K3 type".into());
    }
    v.value("family", vec![Int::from(family as i64)]);
    v.value("p_rank", vec![Int::from(p.rank)]);
    if p.rank == 0 {
        v.trace.push("P(A₀) = L(A₀); no exotic Tate classes on any power".into());
        v.status = Status::Holds;
    } else {
        v.trace.push(format!("P-kernel has rank {}, contradicting the family's prediction", p.rank));
        for g in &p.generators {
            v.witnesses.push(("P-kernel".into(), red.lattice.format(g)));
        }
    }
    Ok(v)
}

/// `E` Galois and equal to `K`: both maps to the Serre and Frobenius tori
/// are onto and `0 -> K1 -> X*(S^K) -> X*(P^K) -> 0` is exact.
pub fn check_galois_case(sc: &Scenario) -> Result<Verdict> {
    let check = Check::GaloisCase;
    let Some(h_e) = sc.h_e() else {
        return Ok(Verdict::not_applicable(check, "no factor with role E"));
    };
    if h_e.order() != 1 {
        return Ok(Verdict::not_applicable(check, "E is not all of K (H_E is not trivial)"));
    }
    if !sc.facts.p_splits_in_q {
        return Ok(Verdict::not_applicable(check, "p does not split in Q"));
    }
    let ctx = context(sc);
    if ctx.degenerate() {
        return Ok(Verdict::not_applicable(check, "iota lies in D"));
    }
    let g = &sc.group;
    let k = kernels(&sc.spec, &ctx)?;
    let sk = SerreLattice::new(g);
    let weil = ctx.weil_lattice();
    let serre_onto = k.mt.map.image() == *sk.sublattice();
    let p_onto = k.p.map.image() == weil.lattice;
    let lat = sc.spec.lefschetz();
    let k1_injects = k.k1.intersection(&k.k2) == *lat.relations();
    let to_p: Vec<ZVec> = sk
        .sublattice()
        .basis()
        .iter()
        .map(|b| {
            let mut v = pushforward(&ctx, b);
            v.push(sk.weight(b));
            v
        })
        .collect();
    let push = LinearMap::from_images(ctx.x_len() + 1, to_p);
    let push_onto = push.image() == weil.lattice;
    let ker_coords = push.kernel();
    let ker_gens: Vec<ZVec> = ker_coords
        .basis()
        .iter()
        .map(|c| {
            let mut v = zero_vec(g.order());
            for (a, b) in c.iter().zip(sk.sublattice().basis()) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += a * y;
                }
            }
            v
        })
        .collect();
    let push_kernel = Sublattice::new(g.order(), &ker_gens);
    let middle_exact = k.k1.image_under(&k.mt.map.matrix) == push_kernel;
    let results = [
        ("X*(L(A)) -> X*(S^K) onto", serre_onto),
        ("X*(L(A₀)) -> X*(P^K) onto", p_onto),
        ("K1 -> X*(S^K) injective", k1_injects),
        ("exact at X*(S^K)", middle_exact),
        ("X*(S^K) -> X*(P^K) onto", push_onto),
    ];
    let mut v = Verdict::new(check, Status::Holds);
    for (name, ok) in results {
        v.trace.push(format!("{name}: {}", if ok { "yes" } else { "no" }));
        if !ok {
            v.status = Status::Fails;
        }
    }
    if v.status == Status::Holds {
        v.trace.push("P^K = S^K cap T^K".into());
    }
    Ok(v)
}

/// Membership of `l` in the prime set and the density of that set.
pub fn s_prime_predicate(g: &FiniteGroup, d_lambda: &Subgroup) -> (bool, Rat) {
    (d_lambda.contains(g.iota()), rat(1, g.order() as i64))
}

fn check_ell_prime_set(sc: &Scenario) -> Verdict {
    let (member, density) = s_prime_predicate(&sc.group, &sc.decomposition);
    let mut v = Verdict::new(Check::EllPrimeSet, Status::Holds);
    v.value("member", vec![Int::from(member as i64)]);
    v.value("density", vec![density.numer().clone(), density.denom().clone()]);
    v
        .witness("member", if member { "yes" } else { "no" })
        .witness("density", density.to_string())
        .note("membership: iota lies in the decomposition group")
}

fn check_reduction(sc: &Scenario) -> Result<Verdict> {
    let ctx = context(sc);
    let invs = reduced_invariants(&sc.spec, &ctx)?;
    let mut v = Verdict::new(Check::Reduction, Status::Holds);
    for (f, inv) in sc.spec.factors().iter().zip(&invs) {
        let diag = dieudonne_degree_check(inv);
        let ok = inv.reduced_degree_ok && inv.brauer_sum_ok && diag.is_empty();
        v.trace.push(format!(
            "{}: dim {}, [Q[pi]:Q] = {}, e = {}{}",
            f.name,
            inv.dim,
            inv.deg_center,
            inv.e,
            if inv.supersingular { ", supersingular" } else { "" }
        ));
        v.trace.extend(diag);
        v.value(
            &format!("{}.dim_deg_e", f.name.to_ascii_lowercase()),
            vec![Int::from(inv.dim), Int::from(inv.deg_center), Int::from(inv.e)],
        );
        if !ok {
            v.status = Status::Fails;
        }
    }
    Ok(v)
}

fn check_diagram(sc: &Scenario) -> Verdict {
    let ctx = context(sc);
    let d = fundamental_diagram(&ctx);
    let status = if d.passes() { Status::Holds } else { Status::Fails };
    let v = Verdict::new(Check::Diagram, status);
    if d.is_degenerate() {
        v.note("iota lies in D: no prime of F over p splits; only constant-slope germs")
    } else {
        v.note("both rows exact, both squares commute")
    }
}

fn check_mt_kernel(sc: &Scenario) -> Result<Verdict> {
    let mt = sc.spec.mt_kernel()?;
    let lat = sc.spec.lefschetz();
    let mut v = Verdict::new(Check::MtKernel, Status::Holds);
    v.trace.push(if mt.exotic_hodge_exists() {
        format!("MT(A) != L(A): exotic Hodge classes exist (kernel rank {})", mt.rank)
    } else {
        "MT(A) = L(A); no exotic Hodge classes".to_string()
    });
    v.value("rank", vec![Int::from(mt.rank)]);
    for (i, g) in mt.generators.iter().enumerate() {
        v.witnesses.push(("generator".into(), lat.format(g)));
        v.value(&format!("generator.{i}"), g.clone());
    }
    Ok(v)
}

fn check_frobenius_kernel(sc: &Scenario) -> Result<Verdict> {
    let ctx = context(sc);
    let red = restriction_map(&sc.spec, &ctx)?;
    let p = red.p_kernel(&ctx)?;
    let agree = red.slope_sum_kernel(&sc.spec, &ctx) == p.preimage;
    let status = if agree && p.saturated { Status::Holds } else { Status::Fails };
    let mut v = Verdict::new(Check::FrobeniusKernel, status);
    v.trace.push(if p.exotic_tate_exists() {
        format!("P(A₀) != L(A₀): exotic Tate classes exist (kernel rank {})", p.rank)
    } else {
        "P(A₀)=L(A₀); no exotic Tate classes".to_string()
    });
    if !agree {
        v.trace.push("slope-sum criterion and lattice kernel disagree".into());
    }
    v.value("rank", vec![Int::from(p.rank)]);
    for (i, g) in p.generators.iter().enumerate() {
        v.witnesses.push(("generator".into(), red.lattice.format(g)));
        v.value(&format!("generator.{i}"), g.clone());
    }
    Ok(v)
}

/// Whether every reduced factor avoids the slope-1/2 degree obstruction.
pub fn dieudonne_clean(sc: &Scenario) -> Result<bool> {
    let ctx = context(sc);
    Ok(reduced_invariants(&sc.spec, &ctx)?.iter().all(|i| dieudonne_degree_check(i).is_empty()))
}

pub fn evaluate(sc: &Scenario, check: Check) -> Result<Verdict> {
    match check {
        Check::Reduction => check_reduction(sc),
        Check::Diagram => Ok(check_diagram(sc)),
        Check::MtKernel => check_mt_kernel(sc),
        Check::FrobeniusKernel => check_frobenius_kernel(sc),
        Check::MtIntersection => check_mt_intersection(sc),
        Check::AlgebraicCharacters => check_algebraic_characters(sc),
        Check::WeilType => Ok(check_weil_type(sc)?.verdict),
        Check::SexticWeilType => check_sextic_weil_type(sc),
        Check::FrobeniusExamples => classify_frobenius_examples(sc),
        Check::GaloisCase => check_galois_case(sc),
        Check::EllPrimeSet => Ok(check_ell_prime_set(sc)),
    }
}
