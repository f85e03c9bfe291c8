//! Exact integer lattice algebra.
//!
//! Vectors are rows: a map `Z^a -> Z^b` is an `a x b` matrix `M` acting by
//! `x -> x * M`. Subgroups of `Z^n` are kept in row Hermite normal form, so
//! two subgroups are equal exactly when their stored bases are equal.
//!
//! Hermite convention: pivots are the first nonzero entry of each row, they
//! are strictly increasing down the rows, positive, and every entry above a
//! pivot lies in `[0, pivot)`. Zero rows are dropped.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Int = BigInt;
pub type ZVec = Vec<Int>;

pub fn zvec(v: &[i64]) -> ZVec {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn zero_vec(n: usize) -> ZVec {
    vec![Int::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> ZVec {
    let mut v = zero_vec(n);
    v[i] = Int::one();
    v
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add_vec(a: &[Int], b: &[Int]) -> ZVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Int], b: &[Int]) -> ZVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(k: &Int, a: &[Int]) -> ZVec {
    a.iter().map(|x| k * x).collect()
}

pub fn neg_vec(a: &[Int]) -> ZVec {
    a.iter().map(|x| -x).collect()
}

/// `dst -= k * src`
fn sub_scaled(dst: &mut [Int], src: &[Int], k: &Int) {
    if k.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= k * s;
    }
}

/// Index of the first nonzero entry.
pub fn leading_index(v: &[Int]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// Permute coordinates: the entry at `i` moves to `perm[i]`.
pub fn permute_vec(perm: &[usize], v: &[Int]) -> ZVec {
    let mut out = zero_vec(v.len());
    for (i, x) in v.iter().enumerate() {
        out[perm[i]] = x.clone();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ZVec>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![zero_vec(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Int::one();
        }
        m
    }

    /// Panics if a row has the wrong length.
    pub fn from_rows(cols: usize, rows: Vec<ZVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_i64(cols: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(cols, rows.iter().map(|r| zvec(r)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[ZVec] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Int) {
        self.data[i][j] = x;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += a * &other.data[k][j];
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, x: &[Int]) -> ZVec {
        assert_eq!(x.len(), self.rows, "dimension mismatch");
        let mut out = zero_vec(self.cols);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] += xi * &self.data[i][j];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| is_zero_vec(r))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.data[i][j].is_zero()))
    }

    /// Determinant of a square matrix by fraction-free elimination.
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.data.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// `col[dst] -= k * col[src]`
    fn sub_col_scaled(&mut self, dst: usize, src: usize, k: &Int) {
        for r in &mut self.data {
            let s = r[src].clone();
            r[dst] -= k * s;
        }
    }

    fn sub_row_scaled(&mut self, dst: usize, src: usize, k: &Int) {
        let s = self.data[src].clone();
        sub_scaled(&mut self.data[dst], &s, k);
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Row-reduce with unimodular row operations so that the columns listed in
/// `order` form a Hermite staircase. Returns the pivot columns; rows past the
/// returned length vanish on every column of `order`.
fn echelon(rows: &mut [ZVec], order: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                if best.map_or(true, |b| rows[i][c].abs() < rows[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut clean = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                sub_scaled(&mut tail[0], &head[r], &q);
                if !tail[0][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            let (head, tail) = rows.split_at_mut(r);
            sub_scaled(&mut head[i], &tail[0], &q);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Hermite basis of the row span of `gens` (vectors of length `dim`).
pub fn hermite(dim: usize, gens: &[ZVec]) -> Vec<ZVec> {
    let order: Vec<usize> = (0..dim).collect();
    hermite_with_order(dim, gens, &order)
}

/// Hermite basis with pivots searched in the column order `order` (a
/// permutation of `0..dim`). Entries above a pivot lie in `[0, pivot)`.
pub fn hermite_with_order(dim: usize, gens: &[ZVec], order: &[usize]) -> Vec<ZVec> {
    let mut rows: Vec<ZVec> = gens.to_vec();
    for r in &rows {
        assert_eq!(r.len(), dim, "vector length mismatch");
    }
    let piv = echelon(&mut rows, order);
    rows.truncate(piv.len());
    rows
}

/// Basis (in Hermite form) of `{x : x * m = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> Vec<ZVec> {
    let (a, b) = (m.nrows(), m.ncols());
    let mut rows: Vec<ZVec> = (0..a)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend(unit_vec(a, i));
            r
        })
        .collect();
    let order: Vec<usize> = (0..b).collect();
    let rank = echelon(&mut rows, &order).len();
    let ker: Vec<ZVec> = rows[rank..].iter().map(|r| r[b..].to_vec()).collect();
    hermite(a, &ker)
}

/// Smith normal form `u * m * v = d` with `d` diagonal, each diagonal entry
/// dividing the next, and `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<Int> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_zero() && !x.is_one())
            .collect()
    }
}

pub fn smith(m: &IntMatrix) -> Smith {
    let (r, c) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if a.data[i][j].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a.data[i][j].abs() < a.data[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Smith { u, d: a, v, v_inv };
            };
            a.data.swap(t, bi);
            u.data.swap(t, bi);
            a.swap_cols(t, bj);
            v.swap_cols(t, bj);
            v_inv.data.swap(t, bj);
            let mut clean = true;
            for i in t + 1..r {
                if a.data[i][t].is_zero() {
                    continue;
                }
                let q = a.data[i][t].div_floor(&a.data[t][t]);
                a.sub_row_scaled(i, t, &q);
                u.sub_row_scaled(i, t, &q);
                clean &= a.data[i][t].is_zero();
            }
            for j in t + 1..c {
                if a.data[t][j].is_zero() {
                    continue;
                }
                let q = a.data[t][j].div_floor(&a.data[t][t]);
                a.sub_col_scaled(j, t, &q);
                v.sub_col_scaled(j, t, &q);
                // inverse of the column operation acts on rows of v_inv
                let row_j = v_inv.data[j].clone();
                for (x, y) in v_inv.data[t].iter_mut().zip(&row_j) {
                    *x += &q * y;
                }
                clean &= a.data[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let p = a.data[t][t].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.data[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = -Int::one();
                    a.sub_row_scaled(t, i, &one);
                    u.sub_row_scaled(t, i, &one);
                }
                None => break,
            }
        }
        if a.data[t][t].is_negative() {
            for x in a.data[t].iter_mut() {
                *x = -&*x;
            }
            for x in u.data[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    Smith { u, d: a, v, v_inv }
}

/// A subgroup of `Z^dim`, stored by its Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sublattice {
    dim: usize,
    basis: Vec<ZVec>,
}

impl Sublattice {
    pub fn new(dim: usize, gens: &[ZVec]) -> Self {
        Sublattice {
            dim,
            basis: hermite(dim, gens),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Sublattice { dim, basis: vec![] }
    }

    pub fn full(dim: usize) -> Self {
        let gens: Vec<ZVec> = (0..dim).map(|i| unit_vec(dim, i)).collect();
        Self::new(dim, &gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ZVec] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut w = v.to_vec();
        for row in &self.basis {
            let c = leading_index(row).expect("hermite rows are nonzero");
            let (q, rem) = w[c].div_rem(&row[c]);
            if !rem.is_zero() {
                return false;
            }
            sub_scaled(&mut w, row, &q);
        }
        is_zero_vec(&w)
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Sublattice) -> Sublattice {
        assert_eq!(self.dim, other.dim, "ambient mismatch");
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Sublattice::new(self.dim, &gens)
    }

    pub fn intersection(&self, other: &Sublattice) -> Sublattice {
        assert_eq!(self.dim, other.dim, "ambient mismatch");
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().map(|b| neg_vec(b)));
        if rows.is_empty() {
            return Sublattice::zero(self.dim);
        }
        let ker = kernel_basis(&IntMatrix::from_rows(self.dim, rows));
        let gens: Vec<ZVec> = ker
            .iter()
            .map(|x| {
                let mut acc = zero_vec(self.dim);
                for (i, b) in self.basis.iter().enumerate() {
                    for (a, y) in acc.iter_mut().zip(b) {
                        *a += &x[i] * y;
                    }
                }
                acc
            })
            .collect();
        Sublattice::new(self.dim, &gens)
    }

    /// Smallest subgroup containing `self` with torsion-free quotient.
    pub fn saturation(&self) -> Sublattice {
        if self.basis.is_empty() {
            return self.clone();
        }
        let b = IntMatrix::from_rows(self.dim, self.basis.clone());
        let orth = kernel_basis(&b.transpose());
        if orth.is_empty() {
            return Sublattice::full(self.dim);
        }
        let n = IntMatrix::from_rows(self.dim, orth).transpose();
        Sublattice {
            dim: self.dim,
            basis: kernel_basis(&n),
        }
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }

    /// Image under `x -> x * m`.
    pub fn image_under(&self, m: &IntMatrix) -> Sublattice {
        let gens: Vec<ZVec> = self.basis.iter().map(|b| m.apply(b)).collect();
        Sublattice::new(m.ncols(), &gens)
    }

    /// Index in `other` when both have the same rank and `self` is inside.
    pub fn index_in(&self, other: &Sublattice) -> Option<Int> {
        if self.rank() != other.rank() || !other.contains_lattice(self) {
            return None;
        }
        if self.rank() == 0 {
            return Some(Int::one());
        }
        // express self's basis in other's basis
        let coords: Vec<ZVec> = self.basis.iter().map(|v| other.coordinates(v).expect("contained")).collect();
        let m = IntMatrix::from_rows(other.rank(), coords);
        Some(m.determinant().abs())
    }

    /// Coordinates of `v` with respect to the Hermite basis, if `v` lies in
    /// the subgroup.
    pub fn coordinates(&self, v: &[Int]) -> Option<ZVec> {
        let mut w = v.to_vec();
        let mut out = zero_vec(self.basis.len());
        for (k, row) in self.basis.iter().enumerate() {
            let c = leading_index(row).expect("hermite rows are nonzero");
            let (q, rem) = w[c].div_rem(&row[c]);
            if !rem.is_zero() {
                return None;
            }
            sub_scaled(&mut w, row, &q);
            out[k] = q;
        }
        is_zero_vec(&w).then_some(out)
    }

    /// Stable under the coordinate permutations in `perms`.
    pub fn is_stable(&self, perms: &[Vec<usize>]) -> bool {
        perms
            .iter()
            .all(|p| self.basis.iter().all(|b| self.contains(&permute_vec(p, b))))
    }
}

/// A homomorphism `Z^a -> Z^b`, `x -> x * matrix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl Cokernel {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl LinearMap {
    pub fn new(matrix: IntMatrix) -> Self {
        LinearMap { matrix }
    }

    /// Map sending the `i`-th unit vector to `images[i]`.
    pub fn from_images(target_dim: usize, images: Vec<ZVec>) -> Self {
        LinearMap {
            matrix: IntMatrix::from_rows(target_dim, images),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn apply(&self, x: &[Int]) -> ZVec {
        self.matrix.apply(x)
    }

    pub fn kernel(&self) -> Sublattice {
        Sublattice {
            dim: self.source_dim(),
            basis: kernel_basis(&self.matrix),
        }
    }

    pub fn image(&self) -> Sublattice {
        Sublattice::new(self.target_dim(), self.matrix.row_vecs())
    }

    pub fn cokernel(&self) -> Cokernel {
        let s = smith(&self.matrix);
        Cokernel {
            free_rank: self.target_dim() - s.rank(),
            torsion: s.torsion(),
        }
    }

    /// `{x : f(x) in sub}`.
    pub fn preimage(&self, sub: &Sublattice) -> Sublattice {
        let n = self.source_dim();
        let mut rows = self.matrix.row_vecs().to_vec();
        rows.extend(sub.basis().iter().cloned());
        let ker = kernel_basis(&IntMatrix::from_rows(self.target_dim(), rows));
        let gens: Vec<ZVec> = ker.iter().map(|v| v[..n].to_vec()).collect();
        Sublattice::new(n, &gens)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    /// Equivariance for coordinate permutations `src[g]`, `tgt[g]`.
    pub fn is_equivariant(&self, src: &[Vec<usize>], tgt: &[Vec<usize>]) -> bool {
        src.iter().zip(tgt).all(|(ps, pt)| {
            (0..self.source_dim()).all(|i| {
                let e = unit_vec(self.source_dim(), i);
                self.apply(&permute_vec(ps, &e)) == permute_vec(pt, &self.apply(&e))
            })
        })
    }
}

/// `Z^dim / relations`, with canonical representatives.
///
/// Representatives are reduced against a Hermite basis of the relations
/// computed with pivots searched in `priority` order: the canonical
/// representative of a class is the unique member whose entry at each pivot
/// column lies in `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct QuotientLattice {
    dim: usize,
    relations: Sublattice,
    priority: Vec<usize>,
    reducer: Vec<(usize, ZVec)>,
    smith: Smith,
}

impl PartialEq for QuotientLattice {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.relations == other.relations
    }
}

impl QuotientLattice {
    pub fn new(dim: usize, relations: &[ZVec]) -> Self {
        Self::with_priority(dim, relations, (0..dim).collect())
    }

    pub fn with_priority(dim: usize, relations: &[ZVec], priority: Vec<usize>) -> Self {
        let mut sorted = priority.clone();
        sorted.sort_unstable();
        assert!(sorted == (0..dim).collect::<Vec<_>>(), "priority must permute the coordinates");
        let rel = Sublattice::new(dim, relations);
        let mut rows = rel.basis.clone();
        let piv = echelon(&mut rows, &priority);
        let reducer = piv.into_iter().zip(rows).collect();
        let smith = smith(&IntMatrix::from_rows(dim, rel.basis.clone()));
        QuotientLattice {
            dim,
            relations: rel,
            priority,
            reducer,
            smith,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn relations(&self) -> &Sublattice {
        &self.relations
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn free_rank(&self) -> usize {
        self.dim - self.relations.rank()
    }

    pub fn torsion(&self) -> Vec<Int> {
        self.smith.torsion()
    }

    pub fn canonical(&self, v: &[Int]) -> ZVec {
        let mut w = v.to_vec();
        for (c, row) in &self.reducer {
            let q = w[*c].div_floor(&row[*c]);
            sub_scaled(&mut w, row, &q);
        }
        w
    }

    pub fn is_zero(&self, v: &[Int]) -> bool {
        self.relations.contains(v)
    }

    pub fn same_class(&self, a: &[Int], b: &[Int]) -> bool {
        self.relations.contains(&sub_vec(a, b))
    }

    /// Subgroup of the quotient generated by the classes of `gens`, stored as
    /// its preimage in `Z^dim`.
    pub fn subgroup(&self, gens: &[ZVec]) -> Sublattice {
        Sublattice::new(self.dim, gens).sum(&self.relations)
    }

    /// Coordinates on the free part: a homomorphism `Z^dim -> Z^free_rank`
    /// killing the relations, bijective on the quotient when it is torsion
    /// free.
    pub fn free_coordinates(&self, v: &[Int]) -> ZVec {
        let r = self.smith.rank();
        let y = self.smith.v.apply(v);
        y[r..].to_vec()
    }

    /// A representative with the given free coordinates.
    pub fn lift(&self, y: &[Int]) -> ZVec {
        let r = self.smith.rank();
        let mut full = zero_vec(self.dim);
        for (i, x) in y.iter().enumerate() {
            full[r + i] = x.clone();
        }
        self.canonical(&self.smith.v_inv.apply(&full))
    }

    /// Canonical representatives of a basis of `sub / relations`, where `sub`
    /// is a subgroup containing the relations. Requires a torsion-free
    /// quotient. Rank-one results are signed so the first nonzero entry of
    /// the representative is positive.
    pub fn class_basis(&self, sub: &Sublattice) -> Vec<ZVec> {
        assert!(self.torsion().is_empty(), "class_basis needs a torsion-free quotient");
        let coords: Vec<ZVec> = sub.basis().iter().map(|b| self.free_coordinates(b)).collect();
        let h = hermite(self.free_rank(), &coords);
        let mut reps: Vec<ZVec> = h.iter().map(|y| self.lift(y)).collect();
        if reps.len() == 1 {
            if let Some(i) = leading_index(&reps[0]) {
                if reps[0][i].is_negative() {
                    reps[0] = self.canonical(&neg_vec(&reps[0]));
                }
            }
        }
        reps
    }

    /// Rank of `sub / relations` for a subgroup containing the relations.
    pub fn rank_of(&self, sub: &Sublattice) -> usize {
        sub.rank() - self.relations.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(rows[0].len(), rows)
    }

    #[test]
    fn smith_small_cases() {
        let s = smith(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), zvec(&[1, 6]));
        let s = smith(&m(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.diagonal(), zvec(&[2, 4]));
        let id = IntMatrix::identity(3);
        assert_eq!(smith(&id).d, id);
    }

    #[test]
    fn smith_transforms_are_consistent() {
        let a = m(&[vec![4, 6, 2], vec![2, 8, 10], vec![6, 2, 0]]);
        let s = smith(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(3));
        assert_eq!(s.u.determinant().abs(), Int::one());
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite(2, &[zvec(&[2, 3]), zvec(&[4, 5])]);
        let b = hermite(2, &[zvec(&[2, 1]), zvec(&[0, 1]), zvec(&[2, 3])]);
        assert_eq!(a, b);
        assert_eq!(a, vec![zvec(&[2, 0]), zvec(&[0, 1])]);
    }

    #[test]
    fn kernels() {
        let z = LinearMap::new(IntMatrix::zeros(2, 2));
        assert_eq!(z.kernel().rank(), 2);
        let s = LinearMap::new(m(&[vec![1], vec![1]]));
        assert_eq!(s.kernel().basis(), &[zvec(&[1, -1])]);
    }

    #[test]
    fn sum_intersection_saturation() {
        let a = Sublattice::new(2, &[zvec(&[2, 0])]);
        let b = Sublattice::new(2, &[zvec(&[1, 0])]);
        assert_ne!(a, b);
        assert_eq!(a.saturation(), b);
        assert_eq!(a.sum(&b), b);
        let c = Sublattice::new(2, &[zvec(&[2, 2]), zvec(&[0, 3])]);
        let d = Sublattice::new(2, &[zvec(&[3, 0]), zvec(&[0, 1])]);
        let i = c.intersection(&d);
        for v in i.basis() {
            assert!(c.contains(v) && d.contains(v));
        }
        assert_eq!(i.index_in(&Sublattice::full(2)), Some(Int::from(18)));
    }

    #[test]
    fn quotients() {
        let q = QuotientLattice::new(2, &[zvec(&[1, 1])]);
        assert_eq!(q.free_rank(), 1);
        assert!(q.torsion().is_empty());
        let t = QuotientLattice::new(1, &[zvec(&[2])]);
        assert_eq!(t.torsion(), zvec(&[2]));
        assert_eq!(t.free_rank(), 0);
        assert_eq!(q.canonical(&zvec(&[3, 5])), zvec(&[0, 2]));
        let qp = QuotientLattice::with_priority(2, &[zvec(&[1, 1])], vec![1, 0]);
        assert_eq!(qp.canonical(&zvec(&[3, 5])), zvec(&[-2, 0]));
    }
}
