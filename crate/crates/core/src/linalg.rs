//! Exact integer linear algebra: an incremental fraction-free echelon form
//! over sparse vectors (used for graded pieces of Jacobian ideals), and dense
//! routines for small integer matrices (Bareiss determinant, Smith normal
//! form, saturated integer kernels).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse integer vector: `(index, value)` pairs with strictly increasing
/// indices and no zero values.
pub type SparseVec = Vec<(usize, BigInt)>;

/// Divides out the content and makes the leading entry positive.
fn make_primitive(v: &mut SparseVec) {
    let Some((_, lead)) = v.first() else { return };
    let mut g = BigInt::zero();
    for (_, x) in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if lead.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// `a*u - b*w`, merging by index.
fn combine(a: &BigInt, u: &SparseVec, b: &BigInt, w: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(u.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < u.len() || j < w.len() {
        let take_u = j == w.len() || (i < u.len() && u[i].0 < w[j].0);
        let take_w = i == u.len() || (j < w.len() && w[j].0 < u[i].0);
        if take_u {
            out.push((u[i].0, a * &u[i].1));
            i += 1;
        } else if take_w {
            out.push((w[j].0, -(b * &w[j].1)));
            j += 1;
        } else {
            let x = a * &u[i].1 - b * &w[j].1;
            if !x.is_zero() {
                out.push((u[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon basis of a subspace of Q^n, stored fraction-free: every basis
/// vector is a primitive integer vector, keyed by its leading index.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates leading entries against the basis until the leading index
    /// is free (or the vector vanishes).
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        make_primitive(&mut v);
        while let Some((lead, coeff)) = v.first() {
            let Some(row) = self.rows.get(lead) else {
                break;
            };
            let pivot = &row[0].1;
            let g = pivot.gcd(coeff);
            let (a, b) = (pivot / &g, coeff / &g);
            v = combine(&a, &v, &b, row);
            make_primitive(&mut v);
        }
        v
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        match r.first() {
            Some(&(lead, _)) => {
                self.rows.insert(lead, r);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// The Mersenne prime `2^61 - 1`.
pub const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, MODULUS - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

pub fn reduce_mod(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(MODULUS))
        .try_into()
        .expect("residue below modulus")
}

/// Echelon form over `F_p`, `p = 2^61 - 1`, with monic pivots. The rank of
/// the reduction never exceeds the rank over `Q`, so a full rank here is a
/// proof of full rank over `Q`.
#[derive(Debug, Clone, Default)]
pub struct ModularEchelon {
    rows: BTreeMap<usize, Vec<(usize, u64)>>,
}

impl ModularEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut v: Vec<(usize, u64)> = v
            .iter()
            .map(|(i, x)| (*i, reduce_mod(x)))
            .filter(|&(_, x)| x != 0)
            .collect();
        while let Some(&(lead, c)) = v.first() {
            let Some(row) = self.rows.get(&lead) else {
                let inv = inv_mod(c);
                for (_, x) in v.iter_mut() {
                    *x = mul_mod(*x, inv);
                }
                self.rows.insert(lead, v);
                return true;
            };
            // v - c * row, merged by index
            let mut out = Vec::with_capacity(v.len() + row.len());
            let (mut i, mut j) = (0, 0);
            while i < v.len() || j < row.len() {
                if j == row.len() || (i < v.len() && v[i].0 < row[j].0) {
                    out.push(v[i]);
                    i += 1;
                } else {
                    let sub = MODULUS - mul_mod(c, row[j].1);
                    let (idx, x) = if i < v.len() && v[i].0 == row[j].0 {
                        i += 1;
                        (row[j].0, (v[i - 1].1 + sub) % MODULUS)
                    } else {
                        (row[j].0, sub % MODULUS)
                    };
                    if x != 0 {
                        out.push((idx, x));
                    }
                    j += 1;
                }
            }
            v = out;
        }
        false
    }
}

/// Rank of a set of rational vectors given as sparse columns, after clearing
/// denominators.
pub fn rational_rank(vectors: &[Vec<(usize, BigRational)>]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(clear_denominators(v));
    }
    e.rank()
}

/// Scales a sparse rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[(usize, BigRational)]) -> SparseVec {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    v.iter()
        .map(|(i, x)| (*i, x.numer() * (&l / x.denom())))
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

/// Dense integer matrix, row-major.
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
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

/// Smith normal form `D = U * M * V` with unimodular `U`, `V` and
/// `D[i][i] | D[i+1][i+1]`, all diagonal entries non-negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k)
            .map(|i| self.d[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn row_axpy(m: &mut IntMatrix, target: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    let s = m[src].clone();
    for (t, x) in m[target].iter_mut().zip(&s) {
        *t -= f * x;
    }
}

/// Replaces rows `(a, b)` by `(p a + q b, r a + s b)`.
fn row_mix(m: &mut IntMatrix, a: usize, b: usize, [p, q, r, s]: &[BigInt; 4]) {
    let (ra, rb) = (m[a].clone(), m[b].clone());
    for (j, (x, y)) in ra.iter().zip(&rb).enumerate() {
        m[a][j] = p * x + q * y;
        m[b][j] = r * x + s * y;
    }
}

/// Row Hermite form in place, mirroring every row operation on `u`.
/// Combines rows with unimodular 2x2 steps from the extended gcd and reduces
/// the entries above each pivot, which keeps entries from blowing up.
fn hermite_rows(d: &mut IntMatrix, u: &mut IntMatrix) {
    let rows = d.len();
    let cols = d.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(first) = (r..rows).find(|&i| !d[i][c].is_zero()) else {
            continue;
        };
        d.swap(r, first);
        u.swap(r, first);
        for i in r + 1..rows {
            if d[i][c].is_zero() {
                continue;
            }
            let e = d[r][c].extended_gcd(&d[i][c]);
            let mix = [e.x, e.y, -(&d[i][c] / &e.gcd), &d[r][c] / &e.gcd];
            row_mix(d, r, i, &mix);
            row_mix(u, r, i, &mix);
        }
        if d[r][c].is_negative() {
            for m in [&mut *d, &mut *u] {
                for x in m[r].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        for i in 0..r {
            let q = d[i][c].div_floor(&d[r][c]);
            row_axpy(d, i, r, &q);
            row_axpy(u, i, r, &q);
        }
        r += 1;
    }
}

fn is_diagonal(d: &IntMatrix) -> bool {
    d.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
}

/// `D = U M V` with `U`, `V` unimodular and `D` diagonal, nonzero entries
/// first, each dividing the next.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut d = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    loop {
        // alternate row and column Hermite forms until diagonal
        while !is_diagonal(&d) {
            hermite_rows(&mut d, &mut u);
            let (mut dt, mut vt) = (transpose(&d), transpose(&v));
            hermite_rows(&mut dt, &mut vt);
            d = transpose(&dt);
            v = transpose(&vt);
        }
        let k = rows.min(cols);
        let clash = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .find(|&(i, j)| !d[i][i].is_zero() && !d[j][j].is_multiple_of(&d[i][i]));
        let Some((i, j)) = clash else { break };
        // column i += column j, then re-diagonalize: d_i drops to a gcd
        for m in [&mut d, &mut v] {
            for row in m.iter_mut() {
                let x = row[j].clone();
                row[i] += x;
            }
        }
    }
    for i in 0..rows.min(cols) {
        if d[i][i].is_negative() {
            d[i][i] = -&d[i][i];
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
    }
    Smith { d, u, v }
}

/// Basis (as rows) of the integer kernel `{x : M x = 0}`. The basis extends
/// to a basis of Z^cols, so the kernel lattice is saturated.
pub fn integer_kernel(m: &IntMatrix, cols: usize) -> IntMatrix {
    if m.is_empty() {
        return identity(cols);
    }
    let s = smith_normal_form(m);
    let r = s.rank();
    (r..cols)
        .map(|j| s.v.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Counts positive, negative and zero entries of a congruence
/// diagonalization of a symmetric matrix over the rationals.
pub fn inertia(sym: &IntMatrix) -> (usize, usize, usize) {
    let n = sym.len();
    let mut a: Vec<Vec<BigRational>> = sym
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = match active.iter().copied().find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                // zero diagonal: replace e_i by e_i + e_j where a_ij != 0
                let pair = active.iter().copied().find_map(|i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !a[i][j].is_zero())
                        .map(|j| (i, j))
                });
                match pair {
                    None => {
                        zero += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        for k in 0..n {
                            let x = a[j][k].clone();
                            a[i][k] += x;
                        }
                        for k in 0..n {
                            let x = a[k][j].clone();
                            a[k][i] += x;
                        }
                        i
                    }
                }
            }
        };
        let p = a[pivot][pivot].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != pivot);
        for &i in &active {
            if a[i][pivot].is_zero() {
                continue;
            }
            let f = &a[i][pivot] / &p;
            for &k in &active {
                let x = &f * &a[pivot][k];
                a[i][k] -= x;
            }
            a[i][pivot] = BigRational::zero();
        }
        for &k in &active {
            a[pivot][k] = BigRational::zero();
        }
    }
    (pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> IntMatrix {
        m.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn sv(v: &[(usize, i64)]) -> SparseVec {
        v.iter().map(|&(i, x)| (i, BigInt::from(x))).collect()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(sv(&[(0, 2), (2, 4)])));
        assert!(e.insert(sv(&[(0, 3), (1, 1)])));
        assert!(!e.insert(sv(&[(0, 5), (1, 1), (2, 4)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(sv(&[(1, 2), (2, -12)])));
        assert!(!e.contains(sv(&[(2, 1)])));
        assert!(e.contains(Vec::new()));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            determinant(&big(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]])),
            BigInt::from(4)
        );
        assert_eq!(determinant(&big(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(determinant(&Vec::new()), BigInt::one());
    }

    #[test]
    fn smith_examples() {
        let s = smith_normal_form(&identity(3));
        assert_eq!(s.d, identity(3));
        let s = smith_normal_form(&big(&[&[2, 0], &[0, 4]]));
        assert_eq!(s.d, big(&[&[2, 0], &[0, 4]]));
        let m = big(&[&[0, 2], &[2, 0]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, big(&[&[2, 0], &[0, 2]]));
        assert_eq!(mat_mul(&mat_mul(&s.u, &m), &s.v), s.d);
        // divisibility fix-up: diag(2,3) -> diag(1,6)
        let m = big(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, big(&[&[1, 0], &[0, 6]]));
        assert_eq!(mat_mul(&mat_mul(&s.u, &m), &s.v), s.d);
        assert!(determinant(&s.u).abs().is_one());
        assert!(determinant(&s.v).abs().is_one());
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y + 3z = 0
        let k = integer_kernel(&big(&[&[1, 2, 3]]), 3);
        assert_eq!(k.len(), 2);
        for row in &k {
            let s: BigInt = row.iter().zip([1, 2, 3]).map(|(x, c)| x * c).sum();
            assert!(s.is_zero());
        }
        let s = smith_normal_form(&k);
        assert!(s.invariant_factors().iter().all(One::is_one));
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(inertia(&big(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(inertia(&big(&[&[0, 0], &[0, 0]])), (0, 0, 2));
        assert_eq!(inertia(&big(&[&[-2, 1], &[1, -2]])), (0, 2, 0));
        assert_eq!(inertia(&big(&[&[1, 1], &[1, 1]])), (1, 0, 1));
        assert_eq!(
            inertia(&big(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]])),
            (1, 1, 1)
        );
    }
}
