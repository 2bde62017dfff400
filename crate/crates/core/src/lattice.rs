//! Integral symmetric bilinear forms.
//!
//! Sign convention: the root lattices `A_n`, `D_n`, `E8` are built negative
//! definite (diagonal `-2`, `+1` on Dynkin edges), so the K3 lattice
//! `U^3 + E8^2` has signature `(3, 19)`. Use [`LatticeSpec::Rescale`] with
//! `-1` for the positive definite versions.
//!
//! [`same_genus`] compares signatures and discriminant quadratic forms. For
//! even indefinite lattices of the kind handled here this pins down the
//! isometry class; for definite lattices it is only a genus check.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, IntMatrix, Smith};

/// Default bound on `|A_L|` for the discriminant-form isomorphism search.
pub const DEFAULT_GENUS_BOUND: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("invalid lattice: {0}")]
    Invalid(String),
    #[error("lattice is degenerate")]
    Degenerate,
    #[error("lattice is not even")]
    Odd,
    #[error("undecided by this method: discriminant group of order {order} exceeds bound {bound}")]
    Undecided { order: BigInt, bound: u64 },
    #[error("integer overflow converting a computed basis to 64-bit entries")]
    Overflow,
}

/// Symmetric integer Gram matrix with an optional name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl Lattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::Invalid("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::Invalid(format!(
                        "Gram matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Lattice { gram, label: None })
    }

    /// Parses a JSON array of arrays of integers.
    pub fn from_json(src: &str) -> Result<Self, LatticeError> {
        let gram: Vec<Vec<i64>> =
            serde_json::from_str(src).map_err(|e| LatticeError::Invalid(e.to_string()))?;
        Self::new(gram)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    pub fn determinant(&self) -> BigInt {
        linalg::determinant(&linalg::to_big(&self.gram))
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub fn signature(&self) -> Signature {
        let (positive, negative, degenerate) = linalg::inertia(&linalg::to_big(&self.gram));
        Signature {
            positive,
            negative,
            degenerate,
        }
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        self.gram
            .iter()
            .zip(x)
            .map(|(row, xi)| xi * row.iter().zip(y).map(|(g, yj)| g * yj).sum::<i64>())
            .sum()
    }

    pub fn direct_sum(parts: &[Lattice]) -> Lattice {
        let n: usize = parts.iter().map(Lattice::rank).sum();
        let mut gram = vec![vec![0; n]; n];
        let mut off = 0;
        for p in parts {
            for (i, row) in p.gram.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    gram[off + i][off + j] = x;
                }
            }
            off += p.rank();
        }
        Lattice { gram, label: None }
    }

    pub fn rescale(&self, m: i64) -> Lattice {
        Lattice {
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|x| x * m).collect())
                .collect(),
            label: None,
        }
    }

    /// Gram matrix in a new basis whose rows are given in current
    /// coordinates: `B * G * B^T`.
    pub fn change_basis(&self, basis: &[Vec<i64>]) -> Lattice {
        let gram = basis
            .iter()
            .map(|x| basis.iter().map(|y| self.inner(x, y)).collect())
            .collect();
        Lattice { gram, label: None }
    }

    pub fn standard(spec: &LatticeSpec) -> Result<Lattice, LatticeError> {
        let l = match spec {
            LatticeSpec::U => Lattice {
                gram: vec![vec![0, 1], vec![1, 0]],
                label: None,
            },
            LatticeSpec::ScaledU(m) => {
                if *m == 0 {
                    return Err(LatticeError::Invalid("U(0) is not allowed".into()));
                }
                Lattice::standard(&LatticeSpec::U)?.rescale(*m)
            }
            LatticeSpec::A(n) => {
                if *n == 0 {
                    return Err(LatticeError::Invalid("A_n needs n >= 1".into()));
                }
                root_lattice(*n, &(1..*n).map(|i| (i - 1, i)).collect::<Vec<_>>())
            }
            LatticeSpec::D(n) => {
                if *n < 2 {
                    return Err(LatticeError::Invalid("D_n needs n >= 2".into()));
                }
                let mut edges: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
                if *n >= 3 {
                    edges.push((n - 3, n - 1));
                }
                root_lattice(*n, &edges)
            }
            LatticeSpec::E8 => root_lattice(8, &E8_EDGES),
            LatticeSpec::K3 => {
                let u = Lattice::standard(&LatticeSpec::U)?;
                let e8 = Lattice::standard(&LatticeSpec::E8)?;
                Lattice::direct_sum(&[u.clone(), u.clone(), u, e8.clone(), e8])
            }
            LatticeSpec::Rescale(inner, m) => {
                if *m == 0 {
                    return Err(LatticeError::Invalid(
                        "rescaling by 0 is not allowed".into(),
                    ));
                }
                Lattice::standard(inner)?.rescale(*m)
            }
            LatticeSpec::DirectSum(parts) => {
                if parts.is_empty() {
                    return Err(LatticeError::Invalid("empty direct sum".into()));
                }
                let parts = parts
                    .iter()
                    .map(Lattice::standard)
                    .collect::<Result<Vec<_>, _>>()?;
                Lattice::direct_sum(&parts)
            }
        };
        Ok(l.with_label(spec.to_string()))
    }
}

/// Dynkin edges of E8: a chain 0..6 with node 7 attached to node 4.
pub const E8_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];

fn root_lattice(n: usize, edges: &[(usize, usize)]) -> Lattice {
    let mut gram = vec![vec![0; n]; n];
    for (i, row) in gram.iter_mut().enumerate() {
        row[i] = -2;
    }
    for &(a, b) in edges {
        gram[a][b] = 1;
        gram[b][a] = 1;
    }
    Lattice { gram, label: None }
}

/// Named constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSpec {
    U,
    ScaledU(i64),
    A(usize),
    D(usize),
    E8,
    K3,
    Rescale(Box<LatticeSpec>, i64),
    DirectSum(Vec<LatticeSpec>),
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeSpec::U => write!(f, "U"),
            LatticeSpec::ScaledU(m) => write!(f, "U({m})"),
            LatticeSpec::A(n) => write!(f, "A{n}"),
            LatticeSpec::D(n) => write!(f, "D{n}"),
            LatticeSpec::E8 => write!(f, "E8"),
            LatticeSpec::K3 => write!(f, "K3"),
            LatticeSpec::Rescale(l, m) => write!(f, "({l})({m})"),
            LatticeSpec::DirectSum(parts) => {
                let s: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "{}", s.join("+"))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub degenerate: usize,
}

impl Signature {
    pub fn pair(&self) -> (usize, usize) {
        (self.positive, self.negative)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degenerate == 0 {
            write!(f, "({}, {})", self.positive, self.negative)
        } else {
            write!(
                f,
                "({}, {}, {})",
                self.positive, self.negative, self.degenerate
            )
        }
    }
}

pub fn signature(l: &Lattice) -> Signature {
    l.signature()
}

pub fn smith_normal_form(m: &[Vec<i64>]) -> Smith {
    linalg::smith_normal_form(&linalg::to_big(m))
}

/// Sublattice given by rows of coordinates in the ambient basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SublatticeEmbedding {
    pub ambient: Lattice,
    pub basis: Vec<Vec<i64>>,
}

impl SublatticeEmbedding {
    pub fn new(ambient: Lattice, basis: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = ambient.rank();
        if basis.iter().any(|r| r.len() != n) {
            return Err(LatticeError::Invalid(format!(
                "basis rows must have {n} coordinates"
            )));
        }
        if !basis.is_empty() && smith_normal_form(&basis).rank() != basis.len() {
            return Err(LatticeError::Invalid(
                "basis rows are linearly dependent".into(),
            ));
        }
        Ok(SublatticeEmbedding { ambient, basis })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The induced form on the sublattice.
    pub fn lattice(&self) -> Lattice {
        self.ambient.change_basis(&self.basis)
    }
}

/// Nontrivial invariant factors of the Gram matrix.
pub fn discriminant_group(l: &Lattice) -> Result<Vec<BigInt>, LatticeError> {
    if !l.is_nondegenerate() {
        return Err(LatticeError::Degenerate);
    }
    Ok(smith_normal_form(&l.gram)
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect())
}

pub fn discriminant_order(l: &Lattice) -> Result<BigInt, LatticeError> {
    Ok(discriminant_group(l)?.iter().product())
}

/// Reduces into `[0, m)`.
fn reduce_mod(r: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(m.into());
    let k = (r / &m).floor();
    r - k * m
}

fn to_small(r: &BigRational) -> Rational64 {
    Rational64::new(
        r.numer()
            .to_i64()
            .expect("discriminant form numerator fits in i64"),
        r.denom()
            .to_i64()
            .expect("discriminant form denominator fits in i64"),
    )
}

fn small_mod(r: Rational64, m: i64) -> Rational64 {
    let m = Rational64::from_integer(m);
    r - (r / m).floor() * m
}

/// `A_L = L^* / L` with its quadratic form in `Q/2Z` and bilinear form in
/// `Q/Z`. Generator `i` is the class of `V[:, i] / d_i` where `D = U G V`
/// is the Smith form of the Gram matrix and `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantForm {
    pub invariant_factors: Vec<u64>,
    /// Generators as rational vectors in the lattice basis.
    pub generators: Vec<Vec<BigRational>>,
    /// `q(g_i)` in `[0, 2)`.
    pub q_values: Vec<Rational64>,
    /// `b(g_i, g_j)` in `[0, 1)`.
    pub b_values: Vec<Vec<Rational64>>,
}

impl DiscriminantForm {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Every element as a coefficient vector, in mixed-radix order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &m in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|c: Vec<u64>| {
                    (0..m).map(move |v| {
                        let mut c = c.clone();
                        c.push(v);
                        c
                    })
                })
                .collect();
        }
        out
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.invariant_factors)
            .map(|((a, b), m)| (a + b) % m)
            .collect()
    }

    pub fn scale(&self, x: &[u64], t: u64) -> Vec<u64> {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(a, m)| a * t % m)
            .collect()
    }

    /// `q(sum c_i g_i)` in `[0, 2)`.
    pub fn q(&self, c: &[u64]) -> Rational64 {
        let mut acc = Rational64::zero();
        for i in 0..c.len() {
            let ci = c[i] as i64;
            acc += self.q_values[i] * (ci * ci);
            for j in i + 1..c.len() {
                acc += self.b_values[i][j] * (2 * ci * c[j] as i64);
            }
        }
        small_mod(acc, 2)
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn b(&self, x: &[u64], y: &[u64]) -> Rational64 {
        let mut acc = Rational64::zero();
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                acc += self.b_values[i][j] * (xi as i64 * yj as i64);
            }
        }
        small_mod(acc, 1)
    }
}

pub fn discriminant_form(l: &Lattice) -> Result<DiscriminantForm, LatticeError> {
    if !l.is_nondegenerate() {
        return Err(LatticeError::Degenerate);
    }
    if !l.is_even() {
        return Err(LatticeError::Odd);
    }
    let gram = linalg::to_big(&l.gram);
    let s = linalg::smith_normal_form(&gram);
    let n = l.rank();
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    for i in 0..n {
        let d = &s.d[i][i];
        if d.is_one() {
            continue;
        }
        invariant_factors.push(d.to_u64().expect("invariant factor fits in u64"));
        generators.push(
            (0..n)
                .map(|r| BigRational::new(s.v[r][i].clone(), d.clone()))
                .collect::<Vec<_>>(),
        );
    }
    let pair = |x: &[BigRational], y: &[BigRational]| -> BigRational {
        let mut acc = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                if !gram[i][j].is_zero() {
                    acc += xi * yj * BigRational::from_integer(gram[i][j].clone());
                }
            }
        }
        acc
    };
    let q_values = generators
        .iter()
        .map(|g| to_small(&reduce_mod(&pair(g, g), 2)))
        .collect();
    let b_values = generators
        .iter()
        .map(|g| {
            generators
                .iter()
                .map(|h| to_small(&reduce_mod(&pair(g, h), 1)))
                .collect()
        })
        .collect();
    Ok(DiscriminantForm {
        invariant_factors,
        generators,
        q_values,
        b_values,
    })
}

/// Exhaustive search for a group isomorphism `A -> B` preserving `q`.
pub fn discriminant_forms_isomorphic(a: &DiscriminantForm, b: &DiscriminantForm) -> bool {
    if a.invariant_factors != b.invariant_factors {
        return false;
    }
    let elements = b.elements();
    let q_b: Vec<Rational64> = elements.iter().map(|e| b.q(e)).collect();

    fn search(
        i: usize,
        a: &DiscriminantForm,
        b: &DiscriminantForm,
        elements: &[Vec<u64>],
        q_b: &[Rational64],
        images: &mut Vec<usize>,
        subgroup: &HashSet<Vec<u64>>,
    ) -> bool {
        if i == a.invariant_factors.len() {
            return true;
        }
        let m = a.invariant_factors[i];
        'candidates: for (idx, y) in elements.iter().enumerate() {
            if q_b[idx] != a.q_values[i] {
                continue;
            }
            if b.scale(y, m).iter().any(|&c| c != 0) {
                continue;
            }
            for (j, &img) in images.iter().enumerate() {
                if b.b(y, &elements[img]) != a.b_values[i][j] {
                    continue 'candidates;
                }
            }
            let mut grown = HashSet::with_capacity(subgroup.len() * m as usize);
            let mut multiple = vec![0u64; y.len()];
            for _ in 0..m {
                for s in subgroup {
                    grown.insert(b.add(s, &multiple));
                }
                multiple = b.add(&multiple, y);
            }
            if grown.len() != subgroup.len() * m as usize {
                continue;
            }
            images.push(idx);
            if search(i + 1, a, b, elements, q_b, images, &grown) {
                return true;
            }
            images.pop();
        }
        false
    }

    let trivial: HashSet<Vec<u64>> = [vec![0u64; b.invariant_factors.len()]]
        .into_iter()
        .collect();
    search(0, a, b, &elements, &q_b, &mut Vec::new(), &trivial)
}

/// Same signature and isomorphic discriminant quadratic forms.
pub fn same_genus(a: &Lattice, b: &Lattice) -> Result<bool, LatticeError> {
    same_genus_bounded(a, b, DEFAULT_GENUS_BOUND)
}

pub fn same_genus_bounded(a: &Lattice, b: &Lattice, bound: u64) -> Result<bool, LatticeError> {
    for l in [a, b] {
        if !l.is_even() {
            return Err(LatticeError::Odd);
        }
        if !l.is_nondegenerate() {
            return Err(LatticeError::Degenerate);
        }
    }
    if a.signature() != b.signature() {
        return Ok(false);
    }
    let (da, db) = (a.determinant().abs(), b.determinant().abs());
    if da != db {
        return Ok(false);
    }
    if da > BigInt::from(bound) {
        return Err(LatticeError::Undecided { order: da, bound });
    }
    let (fa, fb) = (discriminant_form(a)?, discriminant_form(b)?);
    Ok(discriminant_forms_isomorphic(&fa, &fb))
}

fn to_i64_matrix(m: &IntMatrix) -> Result<Vec<Vec<i64>>, LatticeError> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().ok_or(LatticeError::Overflow))
                .collect()
        })
        .collect()
}

/// Row Hermite normal form of a full-row-rank integer matrix; same row span.
fn row_hermite(mut m: IntMatrix) -> IntMatrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // gcd-combine column c into row r
        loop {
            let nz: Vec<usize> = (r..rows).filter(|&i| !m[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| m[i][c].abs()).expect("nonempty");
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m.get(r).is_none_or(|row| row[c].is_zero()) {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if q.is_zero() {
                continue;
            }
            let pivot_row = m[r].clone();
            for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                *x -= &q * y;
            }
        }
        r += 1;
    }
    m
}

/// All ambient vectors orthogonal to the sublattice, as a saturated basis
/// in Hermite normal form.
pub fn orthogonal_complement(e: &SublatticeEmbedding) -> Result<SublatticeEmbedding, LatticeError> {
    if !e.ambient.is_nondegenerate() {
        return Err(LatticeError::Degenerate);
    }
    let n = e.ambient.rank();
    // rows of basis * gram
    let forms: IntMatrix = e
        .basis
        .iter()
        .map(|x| {
            (0..n)
                .map(|j| BigInt::from((0..n).map(|i| x[i] * e.ambient.gram[i][j]).sum::<i64>()))
                .collect()
        })
        .collect();
    let kernel = linalg::integer_kernel(&forms, n);
    let basis = if kernel.is_empty() {
        Vec::new()
    } else {
        to_i64_matrix(&row_hermite(kernel))?
    };
    Ok(SublatticeEmbedding {
        ambient: e.ambient.clone(),
        basis,
    })
}

/// True iff the basis rows span a saturated sublattice.
pub fn is_primitive(e: &SublatticeEmbedding) -> bool {
    if e.basis.is_empty() {
        return true;
    }
    let s = smith_normal_form(&e.basis);
    let f = s.invariant_factors();
    f.len() == e.basis.len() && f.iter().all(One::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std(spec: LatticeSpec) -> Lattice {
        Lattice::standard(&spec).unwrap()
    }

    fn u2_d4() -> Lattice {
        std(LatticeSpec::DirectSum(vec![
            LatticeSpec::ScaledU(2),
            LatticeSpec::D(4),
        ]))
    }

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn standard_lattices() {
        let u = std(LatticeSpec::U);
        assert_eq!(u.determinant(), BigInt::from(-1));
        assert_eq!(u.signature().pair(), (1, 1));

        let m = u2_d4();
        assert_eq!(m.rank(), 6);
        assert_eq!(m.determinant(), BigInt::from(-16));
        assert_eq!(m.signature().pair(), (1, 5));

        let k3 = std(LatticeSpec::K3);
        assert_eq!(k3.rank(), 22);
        assert_eq!(
            k3.signature(),
            Signature {
                positive: 3,
                negative: 19,
                degenerate: 0
            }
        );
        assert_eq!(k3.determinant(), BigInt::from(-1));
        assert!(k3.is_even());
        assert_eq!(discriminant_group(&k3).unwrap(), Vec::<BigInt>::new());

        assert_eq!(std(LatticeSpec::E8).determinant(), BigInt::one());
        assert_eq!(std(LatticeSpec::A(3)).determinant(), BigInt::from(-4));
        assert_eq!(std(LatticeSpec::D(3)).determinant(), BigInt::from(-4));
        assert_eq!(std(LatticeSpec::D(5)).determinant(), BigInt::from(-4));
        assert!(Lattice::standard(&LatticeSpec::A(0)).is_err());
        assert!(Lattice::standard(&LatticeSpec::ScaledU(0)).is_err());
    }

    #[test]
    fn signatures() {
        assert_eq!(std(LatticeSpec::E8).signature().pair(), (0, 8));
        assert_eq!(std(LatticeSpec::ScaledU(2)).signature().pair(), (1, 1));
        let pos = std(LatticeSpec::Rescale(Box::new(LatticeSpec::E8), -1));
        assert_eq!(pos.signature().pair(), (8, 0));
    }

    #[test]
    fn smith_examples() {
        let s = smith_normal_form(&[vec![0, 2], vec![2, 0]]);
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(2)]
        );
        let g = linalg::to_big(&[vec![0, 2], vec![2, 0]]);
        assert_eq!(linalg::mat_mul(&linalg::mat_mul(&s.u, &g), &s.v), s.d);
    }

    #[test]
    fn discriminant_groups() {
        assert!(discriminant_group(&std(LatticeSpec::U)).unwrap().is_empty());
        assert_eq!(
            discriminant_group(&u2_d4()).unwrap(),
            vec![BigInt::from(2); 4]
        );
        assert_eq!(
            discriminant_group(&std(LatticeSpec::A(1))).unwrap(),
            vec![BigInt::from(2)]
        );
        let degenerate = Lattice::new(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(
            discriminant_group(&degenerate),
            Err(LatticeError::Degenerate)
        );
    }

    #[test]
    fn discriminant_forms() {
        let f = discriminant_form(&std(LatticeSpec::ScaledU(2))).unwrap();
        assert_eq!(f.invariant_factors, vec![2, 2]);
        assert_eq!(f.q_values, vec![r(0, 1), r(0, 1)]);
        assert_eq!(f.b_values[0][1], r(1, 2));
        assert_eq!(f.q(&[1, 1]), r(1, 1));

        let d4 = discriminant_form(&std(LatticeSpec::D(4))).unwrap();
        assert_eq!(d4.invariant_factors, vec![2, 2]);
        for e in d4.elements().iter().filter(|e| e.iter().any(|&c| c != 0)) {
            assert_eq!(d4.q(e), r(1, 1));
        }

        assert_eq!(discriminant_form(&std(LatticeSpec::E8)).unwrap().order(), 1);
        let odd = Lattice::new(vec![vec![1]]).unwrap();
        assert_eq!(discriminant_form(&odd), Err(LatticeError::Odd));
    }

    #[test]
    fn complements() {
        let uu = std(LatticeSpec::DirectSum(vec![LatticeSpec::U, LatticeSpec::U]));
        // coordinates (e1, f1, e2, f2)
        let sub =
            SublatticeEmbedding::new(uu.clone(), vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]).unwrap();
        assert!(is_primitive(&sub));
        assert!(same_genus(&sub.lattice(), &std(LatticeSpec::ScaledU(2))).unwrap());
        let c = orthogonal_complement(&sub).unwrap();
        assert_eq!(c.rank(), 2);
        assert!(is_primitive(&c));
        assert!(same_genus(&c.lattice(), &std(LatticeSpec::ScaledU(2))).unwrap());

        let e8 = std(LatticeSpec::E8);
        let full = SublatticeEmbedding::new(e8.clone(), linalg_identity(8)).unwrap();
        assert_eq!(orthogonal_complement(&full).unwrap().rank(), 0);

        let u = std(LatticeSpec::U);
        let iso = SublatticeEmbedding::new(u, vec![vec![1, 0]]).unwrap();
        let c = orthogonal_complement(&iso).unwrap();
        assert_eq!(c.basis, vec![vec![1, 0]]);
        assert_eq!(c.lattice().gram(), &[vec![0]]);
    }

    fn linalg_identity(n: usize) -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect()
    }

    #[test]
    fn primitivity() {
        let a1 = std(LatticeSpec::A(1));
        let e = SublatticeEmbedding::new(a1, vec![vec![2]]).unwrap();
        assert!(!is_primitive(&e));
        let uu = std(LatticeSpec::DirectSum(vec![LatticeSpec::U, LatticeSpec::U]));
        assert!(SublatticeEmbedding::new(uu, vec![vec![1, 0, 0, 0], vec![2, 0, 0, 0]]).is_err());
    }

    #[test]
    fn genus() {
        let u = std(LatticeSpec::U);
        assert_eq!(same_genus(&u, &u), Ok(true));
        assert_eq!(same_genus(&std(LatticeSpec::ScaledU(2)), &u), Ok(false));
        // A1 + A1(-1) vs U(2): both rank 2, det -4, but different forms
        let a1_pm = Lattice::new(vec![vec![-2, 0], vec![0, 2]]).unwrap();
        assert_eq!(same_genus(&a1_pm, &std(LatticeSpec::ScaledU(2))), Ok(false));
        assert!(matches!(
            same_genus_bounded(&u2_d4(), &u2_d4(), 8),
            Err(LatticeError::Undecided { .. })
        ));
        assert_eq!(
            same_genus(&Lattice::new(vec![vec![1]]).unwrap(), &u),
            Err(LatticeError::Odd)
        );
    }
}
