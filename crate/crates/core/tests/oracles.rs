//! Brute-force reimplementations on raw group elements. Each test freezes
//! the values the oracle produced and checks the library against both.

use cmlattice::cm::{AvSpec, CmType, Factor};
use cmlattice::fixtures;
use cmlattice::group::FiniteGroup;
use cmlattice::lattice::{Int, ZVec};
use cmlattice::reduction::{lifting_search, reduce_cm, restriction_map};
use cmlattice::scenario::Scenario;
use cmlattice::verdict::check_weil_type;
use cmlattice::weil::{dieudonne_degree_check, WeilContext};
use num_integer::Integer;
use std::collections::{BTreeMap, BTreeSet};

/// Left cosets `xD`, listed by smallest element.
fn cosets(g: &FiniteGroup, d: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let mut c: Vec<usize> = d.iter().map(|&y| g.mul(x, y)).collect();
        c.sort_unstable();
        for &y in &c {
            seen[y] = true;
        }
        out.push(c);
    }
    out
}

fn coset_index(cs: &[Vec<usize>], x: usize) -> usize {
    cs.iter().position(|c| c.contains(&x)).unwrap()
}

/// `(numerator, denominator)` of the slope at `xD`: the share of
/// `D x^-1 H` lying in the lift of `Phi`.
fn raw_slope(g: &FiniteGroup, phi_lift: &BTreeSet<usize>, h: &[usize], d: &[usize], x: usize) -> (usize, usize) {
    let xi = g.inv(x);
    let mut set = BTreeSet::new();
    for &a in d {
        for &b in h {
            set.insert(g.mul(g.mul(a, xi), b));
        }
    }
    (set.iter().filter(|y| phi_lift.contains(y)).count(), set.len())
}

fn phi_lift(cm: &CmType) -> BTreeSet<usize> {
    cm.members().iter().flat_map(|&c| cm.space().coset(c).to_vec()).collect()
}

/// Germ `n0 * s` on `G/D` for one CM type.
fn raw_germ(g: &FiniteGroup, cm: &CmType, d: &[usize]) -> Vec<i64> {
    let lift = phi_lift(cm);
    let h = cm.space().subgroup().members();
    cosets(g, d)
        .iter()
        .map(|c| {
            let (a, b) = raw_slope(g, &lift, h, d, c[0]);
            assert_eq!((a * d.len()) % b, 0);
            (a * d.len() / b) as i64
        })
        .collect()
}

#[derive(Debug, PartialEq, Eq)]
struct RawInvariants {
    deg_center: usize,
    /// `(orbit on X, local degree, inv numerator, inv denominator)` per prime.
    primes: Vec<(Vec<usize>, usize, i64, i64)>,
    e: i64,
    dim: i64,
}

fn act_on_x(g: &FiniteGroup, cs: &[Vec<usize>], t: usize, w: usize) -> usize {
    coset_index(cs, g.mul(t, cs[w][0]))
}

fn raw_invariants(g: &FiniteGroup, d: &[usize], f: &[i64]) -> RawInvariants {
    let cs = cosets(g, d);
    let n0 = d.len() as i64;
    let stab: Vec<usize> = (0..g.order())
        .filter(|&t| (0..cs.len()).all(|w| f[act_on_x(g, &cs, t, w)] == f[w]))
        .collect();
    let mut done = vec![false; cs.len()];
    let mut primes = Vec::new();
    let mut e = 1i64;
    for w in 0..cs.len() {
        if done[w] {
            continue;
        }
        let mut orbit: Vec<usize> = stab.iter().map(|&t| act_on_x(g, &cs, t, w)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &o in &orbit {
            done[o] = true;
        }
        let degree = orbit.len() * d.len() / stab.len();
        let num = f[w] * degree as i64;
        let (a, b) = (num % n0, n0);
        let gcd = a.gcd(&b);
        let (a, b) = (a / gcd, b / gcd);
        e = e.lcm(&b);
        primes.push((orbit, degree, a, b));
    }
    let deg_center = g.order() / stab.len();
    RawInvariants {
        deg_center,
        primes,
        e,
        dim: e * deg_center as i64 / 2,
    }
}

/// Rank over Q by fraction-free elimination.
fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * a - m[r][k] * b;
                }
                let gg = m[i].iter().fold(0i128, |acc, &x| acc.gcd(&x));
                if gg > 1 {
                    m[i].iter_mut().for_each(|x| *x /= gg);
                }
            }
        }
        r += 1;
    }
    r
}

fn ints(v: &[Int]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).unwrap()).collect()
}

/// Rank of the P-kernel from the conjugate germs alone:
/// `rank L(A0) - rank{(f_pi, 1)}`, with `rank L(A0) = |Pi| - #iota-orbits + 1`.
fn raw_p_rank(g: &FiniteGroup, d: &[usize], germs: &[Vec<i64>]) -> usize {
    let cs = cosets(g, d);
    let iota = g.iota();
    let mut pi: BTreeSet<Vec<i64>> = BTreeSet::new();
    for f in germs {
        for t in 0..g.order() {
            let ti = g.inv(t);
            pi.insert((0..cs.len()).map(|w| f[act_on_x(g, &cs, ti, w)]).collect());
        }
    }
    let flip = |f: &Vec<i64>| -> Vec<i64> { (0..cs.len()).map(|w| f[act_on_x(g, &cs, iota, w)]).collect() };
    let orbits = pi.iter().filter(|f| **f <= flip(f)).count();
    let rows: Vec<Vec<i64>> = pi
        .iter()
        .map(|f| {
            let mut r = f.clone();
            r.push(1);
            r
        })
        .collect();
    pi.len() - orbits + 1 - rank(&rows)
}

fn fixture(name: &str) -> Scenario {
    fixtures::load(name).unwrap()
}

#[test]
fn germs_match_raw_slopes() {
    for name in fixtures::names() {
        let sc = fixture(name);
        let ctx = WeilContext::new(&sc.group, &sc.decomposition);
        let lib = reduce_cm(&sc.spec, &ctx).unwrap();
        for (f, l) in sc.spec.factors().iter().zip(&lib) {
            assert_eq!(raw_germ(&sc.group, &f.cm, sc.decomposition.members()), ints(l), "{name}/{}", f.name);
        }
    }
}

#[test]
fn frozen_germs() {
    let cases: [(&str, &[&[i64]]); 5] = [
        ("g6-split", &[&[1, 2], &[3, 0]]),
        ("g6-inert", &[&[1, 1, 1], &[1, 1, 1]]),
        ("g8-k3", &[&[0, 1, 2, 1]]),
        ("s3-ao", &[&[1, 1, 0, 2, 0, 2]]),
        ("ell-ord-ss", &[&[2, 0], &[1, 1]]),
    ];
    for (name, want) in cases {
        let sc = fixture(name);
        let got: Vec<Vec<i64>> = sc
            .spec
            .factors()
            .iter()
            .map(|f| raw_germ(&sc.group, &f.cm, sc.decomposition.members()))
            .collect();
        let want: Vec<Vec<i64>> = want.iter().map(|w| w.to_vec()).collect();
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn inert_slopes_are_half() {
    // every fibre has one embedding in Phi out of two
    let sc = fixture("g6-inert");
    let g = &sc.group;
    for f in sc.spec.factors() {
        let lift = phi_lift(&f.cm);
        for c in cosets(g, sc.decomposition.members()) {
            let (a, b) = raw_slope(g, &lift, f.cm.space().subgroup().members(), sc.decomposition.members(), c[0]);
            assert_eq!(2 * a, b);
        }
    }
}

#[test]
fn pushforward_of_psi_is_the_germ_when_e_is_k() {
    for name in ["g6-split", "g8-k3", "s3-ao", "ell-ordinary", "ell-ss"] {
        let sc = fixture(name);
        let g = &sc.group;
        let d = sc.decomposition.members();
        for f in sc.spec.factors().iter().filter(|f| f.cm.space().subgroup().order() == 1) {
            let psi = f.cm.psi(g, f.cm.space().base());
            let pushed: Vec<i64> = cosets(g, d)
                .iter()
                .map(|c| c.iter().map(|&t| i64::try_from(&psi[t]).unwrap()).sum())
                .collect();
            assert_eq!(pushed, raw_germ(g, &f.cm, d), "{name}");
        }
    }
}

#[test]
fn invariants_match_raw_count() {
    for name in fixtures::names() {
        let sc = fixture(name);
        let ctx = WeilContext::new(&sc.group, &sc.decomposition);
        for f in reduce_cm(&sc.spec, &ctx).unwrap() {
            let raw = raw_invariants(&sc.group, sc.decomposition.members(), &ints(&f));
            let lib = ctx.invariants(&f).unwrap();
            assert_eq!(lib.deg_center, raw.deg_center, "{name}");
            assert_eq!(lib.e as i64, raw.e, "{name}");
            assert_eq!(lib.dim as i64, raw.dim, "{name}");
            let lib_primes: Vec<(Vec<usize>, usize, i64, i64)> = lib
                .primes
                .iter()
                .map(|p| {
                    (
                        p.members.clone(),
                        p.degree,
                        i64::try_from(p.inv.numer()).unwrap(),
                        i64::try_from(p.inv.denom()).unwrap(),
                    )
                })
                .collect();
            assert_eq!(lib_primes, raw.primes, "{name}");
        }
    }
}

#[test]
fn k3_local_degrees() {
    let sc = fixture("g8-k3");
    let f = raw_germ(&sc.group, &sc.spec.factors()[0].cm, sc.decomposition.members());
    let raw = raw_invariants(&sc.group, sc.decomposition.members(), &f);
    let degrees: Vec<usize> = raw.primes.iter().map(|p| p.1).collect();
    assert_eq!(degrees, vec![1, 1, 1, 1]);
    assert_eq!((raw.deg_center, raw.e, raw.dim), (4, 2, 4));
    let ctx = WeilContext::new(&sc.group, &sc.decomposition);
    let lib = ctx.invariants(&reduce_cm(&sc.spec, &ctx).unwrap()[0]).unwrap();
    assert!(dieudonne_degree_check(&lib).is_empty());
}

#[test]
fn atlas_c6_over_hq() {
    let g = FiniteGroup::preset("C6").unwrap();
    let d = [0, 2, 4];
    let cs = cosets(&g, &d);
    let n0 = d.len() as i64;
    let io: Vec<usize> = (0..cs.len()).map(|w| act_on_x(&g, &cs, g.iota(), w)).collect();
    let mut classes: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let mut f = vec![0i64; cs.len()];
    for a in 0..=n0 {
        f[0] = a;
        f[io[0]] = n0 - a;
        let mut orbit: Vec<Vec<i64>> = (0..g.order())
            .map(|t| (0..cs.len()).map(|w| f[act_on_x(&g, &cs, g.inv(t), w)]).collect())
            .collect();
        orbit.sort();
        orbit.dedup();
        classes.insert(orbit);
    }
    let table: Vec<(i64, usize, i64)> = classes
        .iter()
        .map(|o| {
            let r = raw_invariants(&g, &d, &o[0]);
            (r.dim, r.deg_center, r.e)
        })
        .collect();
    assert_eq!(table, vec![(1, 2, 1), (3, 2, 3)]);

    let ctx = WeilContext::new(&g, &g.subgroup(&d).unwrap());
    let lib: Vec<(i64, usize, i64)> = ctx
        .enumerate_simple_classes()
        .iter()
        .map(|c| {
            let i = ctx.invariants(c.representative()).unwrap();
            (i.dim as i64, i.deg_center, i.e as i64)
        })
        .collect();
    assert_eq!(lib, table);
}

#[test]
fn p_kernel_ranks() {
    let want: BTreeMap<&str, usize> = [
        ("g6-split", 1),
        ("g6-ord", 1),
        ("ell-ordinary", 0),
        ("ell-ss", 0),
        ("ell-ord-ss", 0),
        ("g8-k3", 0),
        ("s3-ao", 0),
    ]
    .into_iter()
    .collect();
    for (name, &r) in &want {
        let sc = fixture(name);
        let d = sc.decomposition.members();
        let germs: Vec<Vec<i64>> = sc.spec.factors().iter().map(|f| raw_germ(&sc.group, &f.cm, d)).collect();
        assert_eq!(raw_p_rank(&sc.group, d, &germs), r, "{name} oracle");
        let ctx = WeilContext::new(&sc.group, &sc.decomposition);
        let red = restriction_map(&sc.spec, &ctx).unwrap();
        assert_eq!(red.p_kernel(&ctx).unwrap().rank, r, "{name} library");
    }
}

#[test]
fn iota_fixed_half_prime_has_exotic_tate_classes() {
    // the variant with one iota-stable slope-1/2 prime of degree 2
    let g = FiniteGroup::preset("S3xC2").unwrap();
    let d = g.subgroup(&[0, g.element("(12)").unwrap()]).unwrap();
    let phi: Vec<usize> = ["c", "(12)", "(13)c", "(23)", "(123)", "(132)c"]
        .iter()
        .map(|l| g.element(l).unwrap())
        .collect();
    let cm = CmType::from_elements(&g, &g.trivial(), &phi).unwrap();
    let f = raw_germ(&g, &cm, d.members());
    assert_eq!(f, vec![1, 1, 0, 2, 2, 0]);
    assert_eq!(raw_p_rank(&g, d.members(), &[f]), 1);
    let spec = AvSpec::new(g.clone(), vec![Factor::new("A", cm, 1)]).unwrap();
    let ctx = WeilContext::new(&g, &d);
    assert_eq!(restriction_map(&spec, &ctx).unwrap().p_kernel(&ctx).unwrap().rank, 1);
}

#[test]
fn mt_kernel_ranks() {
    for name in fixtures::names() {
        let sc = fixture(name);
        let n = sc.spec.ambient_len();
        let rows: Vec<Vec<i64>> = (0..n).map(|i| ints(&sc.spec.psi(i))).collect();
        let raw = n / 2 + 1 - rank(&rows);
        let want = if name.starts_with("g6") { 1 } else { 0 };
        assert_eq!(raw, want, "{name} oracle");
        assert_eq!(sc.spec.mt_kernel().unwrap().rank, want, "{name} library");
    }
}

#[test]
fn exotic_hodge_monomials_on_g6() {
    // characters of omega_{I,J} on A x B, built from Phi directly
    let sc = fixture("g6-split");
    let spec = &sc.spec;
    let lat = spec.lefschetz();
    let phi = spec.phi_indices();
    let io = spec.iota_perm();
    let tate = lat.tate();
    let g = phi.len();
    let mut found: BTreeMap<(u32, ZVec), usize> = BTreeMap::new();
    for i in 0u32..(1 << g) {
        for j in 0u32..(1 << g) {
            let deg = i.count_ones() + j.count_ones();
            if deg % 2 == 1 {
                continue;
            }
            let r = deg / 2;
            let mut chi: ZVec = tate.iter().map(|t| t * Int::from(r)).collect();
            for (k, &s) in phi.iter().enumerate() {
                if i >> k & 1 == 1 {
                    chi[s] += 1;
                }
                if j >> k & 1 == 1 {
                    chi[io[s]] += 1;
                }
            }
            if spec.mt_trivial(&chi) && !lat.is_zero(&chi) {
                *found.entry((r, lat.canonical(&chi))).or_default() += 1;
            }
        }
    }
    let shown: Vec<(u32, String, usize)> = found.iter().map(|((r, c), m)| (*r, lat.format(c), *m)).collect();
    let mut want = vec![
        (2, "[A.e + A.t2 + A.t4 - B.eH - 2B.tH]".to_string(), 1),
        (2, "[-A.e - A.t2 - A.t4 + B.eH + 2B.tH]".to_string(), 1),
    ];
    let mut got_sorted = shown.clone();
    got_sorted.sort();
    want.sort();
    assert_eq!(got_sorted, want);

    let data = check_weil_type(&sc).unwrap().data.unwrap();
    let lib: BTreeSet<(u32, String)> = data
        .hodge_exotic
        .keys()
        .map(|(r, c)| (*r, data.lattice.format(c)))
        .collect();
    let chi = data.lattice.format(&data.chi);
    assert_eq!(lib.len(), 2);
    assert!(lib.contains(&(2, chi)));
}

#[test]
fn almost_ordinary_lift() {
    let sc = fixture("s3-ao");
    let g = &sc.group;
    let d = sc.decomposition.members();
    let target = vec![1, 1, 0, 2, 0, 2];
    let iota = g.iota();
    // every CM type on G: one element from each {x, iota x}
    let reps: Vec<usize> = (0..g.order()).filter(|&x| x < g.mul(iota, x)).collect();
    let mut lifts: BTreeSet<Vec<usize>> = BTreeSet::new();
    for mask in 0u32..(1 << reps.len()) {
        let phi: Vec<usize> = reps
            .iter()
            .enumerate()
            .map(|(k, &x)| if mask >> k & 1 == 1 { g.mul(iota, x) } else { x })
            .collect();
        let cm = CmType::from_elements(g, &g.trivial(), &phi).unwrap();
        if raw_germ(g, &cm, d) == target {
            lifts.insert(cm.members());
        }
    }
    assert!(!lifts.is_empty());
    assert!(lifts.contains(&sc.spec.factors()[0].cm.members()));
    let ctx = WeilContext::new(g, &sc.decomposition);
    let t: ZVec = target.iter().map(|&x| Int::from(x)).collect();
    let found = lifting_search(&ctx, &t, &g.trivial()).unwrap().unwrap();
    assert!(lifts.contains(&found.members()));
}
