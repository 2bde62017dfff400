//! Primitive Hodge numbers of quasi-smooth weighted hypersurfaces via
//! Griffiths residues, and their splitting into character eigenspaces under
//! diagonal actions of finite abelian groups.
//!
//! The residue of `A * Omega / G^q` lands in `F^{n-q}`, and modulo
//! `F^{n-q+1}` only the class of `A` in `(R/J_G)_{qd - sum a_i}` matters. So
//! `h^{n-q, q-1}_prim = dim (R/J_G)_{qd - sum a_i}`.
//!
//! # Character convention
//!
//! A diagonal symmetry scaling `z_i` by `zeta^{e_i}` acts on the residue class
//! of `A * Omega / G^q` through the character of `A` *plus* the character of
//! `Omega = i(E) dV`, which scales by the product of all coordinate
//! eigenvalues, i.e. by `zeta^{sum e_i}`. Characters are written additively
//! as exponent tuples, one entry per group generator.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jacobian::{GradedBasis, JacobianContext, JacobianError};
use crate::linalg::SparseVec;
use crate::polyring::{Monomial, Polynomial};
use num_bigint::BigInt;
use num_traits::One;

/// Upper bound on the number of characters enumerated in a report.
pub const MAX_GROUP_ORDER: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HodgeError {
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error("hypersurface is not quasi-smooth")]
    NotQuasiSmooth,
    #[error("need at least 3 variables, got {0}")]
    TooFewVariables(usize),
    #[error("pole order {q} out of range 1..={n}")]
    PoleOrderOutOfRange { q: usize, n: usize },
    #[error("malformed group action: {0}")]
    MalformedAction(String),
    #[error("action does not fix the polynomial: term {0} is not invariant")]
    NotInvariant(String),
}

impl From<crate::polyring::PolyError> for HodgeError {
    fn from(e: crate::polyring::PolyError) -> Self {
        HodgeError::Jacobian(e.into())
    }
}

/// `[h^{n-1,0}, h^{n-2,1}, ..., h^{0,n-1}]` of the primitive cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HodgeVector(pub Vec<usize>);

impl HodgeVector {
    pub fn zeros(n: usize) -> Self {
        HodgeVector(vec![0; n])
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&h| h == 0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for HodgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A character of `Z/m_1 x ... x Z/m_r`, as exponents reduced mod `m_j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(pub Vec<u64>);

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Diagonal action of a finite abelian group: generator `j` scales variable
/// `i` by `zeta_{m_j}^{exponents[j][i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalAction {
    invariant_factors: Vec<u64>,
    exponents: Vec<Vec<u64>>,
}

impl DiagonalAction {
    pub fn new(
        invariant_factors: Vec<u64>,
        exponents: Vec<Vec<u64>>,
        arity: usize,
    ) -> Result<Self, HodgeError> {
        if invariant_factors.len() != exponents.len() {
            return Err(HodgeError::MalformedAction(format!(
                "{} group factors but {} generator actions",
                invariant_factors.len(),
                exponents.len()
            )));
        }
        if invariant_factors.contains(&0) {
            return Err(HodgeError::MalformedAction(
                "group orders must be positive".into(),
            ));
        }
        let order = invariant_factors
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .filter(|&o| o <= MAX_GROUP_ORDER);
        if order.is_none() {
            return Err(HodgeError::MalformedAction(format!(
                "group order exceeds {MAX_GROUP_ORDER}"
            )));
        }
        let exponents = exponents
            .into_iter()
            .zip(&invariant_factors)
            .map(|(row, &m)| {
                if row.len() != arity {
                    return Err(HodgeError::MalformedAction(format!(
                        "generator action has {} entries, ring has {arity} variables",
                        row.len()
                    )));
                }
                Ok(row.into_iter().map(|e| e % m).collect())
            })
            .collect::<Result<Vec<Vec<u64>>, _>>()?;
        Ok(DiagonalAction {
            invariant_factors,
            exponents,
        })
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        DiagonalAction {
            invariant_factors: Vec::new(),
            exponents: Vec::new(),
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn exponents(&self) -> &[Vec<u64>] {
        &self.exponents
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn monomial_character(&self, m: &Monomial) -> Character {
        Character(
            self.exponents
                .iter()
                .zip(&self.invariant_factors)
                .map(|(row, &modulus)| {
                    row.iter()
                        .zip(m.exponents())
                        .map(|(&e, &x)| e * u64::from(x) % modulus)
                        .sum::<u64>()
                        % modulus
                })
                .collect(),
        )
    }

    /// Character of the projective volume form `Omega`.
    pub fn omega_character(&self) -> Character {
        Character(
            self.exponents
                .iter()
                .zip(&self.invariant_factors)
                .map(|(row, &m)| row.iter().sum::<u64>() % m)
                .collect(),
        )
    }

    pub fn add(&self, a: &Character, b: &Character) -> Character {
        Character(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.invariant_factors)
                .map(|((x, y), m)| (x + y) % m)
                .collect(),
        )
    }

    pub fn negate(&self, a: &Character) -> Character {
        Character(
            a.0.iter()
                .zip(&self.invariant_factors)
                .map(|(x, m)| (m - x) % m)
                .collect(),
        )
    }

    /// All characters of the group in increasing order.
    pub fn characters(&self) -> Vec<Character> {
        let mut out = vec![Character(Vec::new())];
        for &m in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|c| {
                    (0..m).map(move |v| {
                        let mut c = c.0.clone();
                        c.push(v);
                        Character(c)
                    })
                })
                .collect();
        }
        out
    }

    /// Fails with the first term of `g` that is not invariant.
    pub fn check_fixes(&self, g: &Polynomial) -> Result<(), HodgeError> {
        if g.ring().arity() != self.exponents.first().map_or(g.ring().arity(), Vec::len) {
            return Err(HodgeError::MalformedAction("arity mismatch".into()));
        }
        let trivial = Character(vec![0; self.invariant_factors.len()]);
        for (m, _) in g.terms() {
            if self.monomial_character(m) != trivial {
                return Err(HodgeError::NotInvariant(m.display(g.ring())));
            }
        }
        Ok(())
    }

    /// Conjugates the action by a variable permutation (variable `i` moves
    /// to position `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let exponents = self
            .exponents
            .iter()
            .map(|row| {
                let mut out = vec![0; row.len()];
                for (i, &p) in perm.iter().enumerate() {
                    out[p] = row[i];
                }
                out
            })
            .collect();
        DiagonalAction {
            invariant_factors: self.invariant_factors.clone(),
            exponents,
        }
    }
}

/// Per-character Hodge vectors and their sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenReport {
    pub invariant_factors: Vec<u64>,
    #[serde(with = "character_list")]
    pub characters: BTreeMap<Character, HodgeVector>,
    pub total: HodgeVector,
}

/// JSON object keys must be strings, so the map goes out as a list of
/// `{"character": [...], "hodge": [...]}` entries in character order.
mod character_list {
    use super::{Character, HodgeVector};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        character: Character,
        hodge: HodgeVector,
    }

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<Character, HodgeVector>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        map.iter()
            .map(|(c, h)| Entry {
                character: c.clone(),
                hodge: h.clone(),
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<Character, HodgeVector>, D::Error> {
        Ok(Vec::<Entry>::deserialize(d)?
            .into_iter()
            .map(|e| (e.character, e.hodge))
            .collect())
    }
}

impl EigenReport {
    pub fn get(&self, c: &[u64]) -> Option<&HodgeVector> {
        self.characters.get(&Character(c.to_vec()))
    }

    /// Componentwise sum of the character vectors.
    pub fn character_sum(&self) -> HodgeVector {
        let n = self.total.0.len();
        let mut sum = vec![0; n];
        for v in self.characters.values() {
            for (s, x) in sum.iter_mut().zip(&v.0) {
                *s += x;
            }
        }
        HodgeVector(sum)
    }
}

fn quasi_smooth_context(g: &Polynomial) -> Result<JacobianContext, HodgeError> {
    let arity = g.ring().arity();
    if arity < 3 {
        return Err(HodgeError::TooFewVariables(arity));
    }
    let ctx = JacobianContext::new(g)?;
    if !ctx.is_quasi_smooth() {
        return Err(HodgeError::NotQuasiSmooth);
    }
    Ok(ctx)
}

/// Degree of the residue numerator `A` for pole order `q`.
fn numerator_degree(ctx: &JacobianContext, q: usize) -> i64 {
    q as i64 * ctx.degree() as i64 - ctx.ring().weight_sum() as i64
}

fn hodge_from_context(ctx: &JacobianContext) -> HodgeVector {
    let n = ctx.ring().arity() - 1;
    HodgeVector(
        (1..=n)
            .map(|q| ctx.graded_quotient_dim(numerator_degree(ctx, q)))
            .collect(),
    )
}

pub fn hodge_numbers_primitive(g: &Polynomial) -> Result<HodgeVector, HodgeError> {
    Ok(hodge_from_context(&quasi_smooth_context(g)?))
}

/// Monomials of degree `q*d - sum a_i` whose classes form a basis of
/// `(R/J_G)` in that degree, picked greedily from the largest monomial down.
pub fn residue_basis(g: &Polynomial, q: usize) -> Result<Vec<Monomial>, HodgeError> {
    let ctx = quasi_smooth_context(g)?;
    let n = ctx.ring().arity() - 1;
    if q == 0 || q > n {
        return Err(HodgeError::PoleOrderOutOfRange { q, n });
    }
    Ok(greedy_complement(&ctx, numerator_degree(&ctx, q)))
}

pub(crate) fn greedy_complement(ctx: &JacobianContext, k: i64) -> Vec<Monomial> {
    if k < 0 {
        return Vec::new();
    }
    let k = k as u64;
    let basis = GradedBasis::new(ctx.ring(), k);
    let mut echelon = ctx.ideal_echelon(&basis, k, &|_| true);
    basis
        .monomials
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            let unit: SparseVec = vec![(*i, BigInt::one())];
            echelon.insert(unit)
        })
        .map(|(_, m)| m.clone())
        .collect()
}

/// Splits the primitive Hodge numbers by character of the residue classes.
///
/// Since `G` is invariant, `dG/dz_i` has character `-chi(z_i)` and the
/// degree-`k` Jacobian matrix is block diagonal by monomial character; each
/// block's corank is computed separately.
pub fn eigen_hodge_numbers(
    g: &Polynomial,
    action: &DiagonalAction,
) -> Result<EigenReport, HodgeError> {
    let ctx = quasi_smooth_context(g)?;
    action.check_fixes(g)?;
    let n = ctx.ring().arity() - 1;
    let total = hodge_from_context(&ctx);
    let omega = action.omega_character();

    let mut characters: BTreeMap<Character, HodgeVector> = action
        .characters()
        .into_iter()
        .map(|c| (c, HodgeVector::zeros(n)))
        .collect();

    for q in 1..=n {
        let k = numerator_degree(&ctx, q);
        if k < 0 {
            continue;
        }
        let k = k as u64;
        let basis = GradedBasis::new(ctx.ring(), k);
        let mut blocks: BTreeMap<Character, usize> = BTreeMap::new();
        for m in &basis.monomials {
            *blocks.entry(action.monomial_character(m)).or_default() += 1;
        }
        for (mono_char, size) in blocks {
            let keep = |m: &Monomial| action.monomial_character(m) == mono_char;
            let class_char = action.add(&mono_char, &omega);
            let entry = characters
                .get_mut(&class_char)
                .expect("every character is listed");
            entry.0[q - 1] += ctx.block_corank(&basis, k, &keep, size);
        }
    }

    Ok(EigenReport {
        invariant_factors: action.invariant_factors.clone(),
        characters,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, WeightedRing};

    fn horikawa() -> Polynomial {
        let r = WeightedRing::new(["x0", "x1", "y", "z"], [1, 1, 2, 5]).unwrap();
        parse_polynomial("z^2 - x0^10 - x1^10 - y^5", &r).unwrap()
    }

    fn galois() -> DiagonalAction {
        DiagonalAction::new(vec![2, 2], vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]], 4).unwrap()
    }

    fn fermat(n_vars: usize, d: u32) -> Polynomial {
        let names: Vec<String> = (0..n_vars).map(|i| format!("x{i}")).collect();
        let r = WeightedRing::new(names.clone(), vec![1; n_vars]).unwrap();
        let src: Vec<String> = names.iter().map(|v| format!("{v}^{d}")).collect();
        parse_polynomial(&src.join(" + "), &r).unwrap()
    }

    #[test]
    fn horikawa_hodge_numbers() {
        assert_eq!(
            hodge_numbers_primitive(&horikawa()).unwrap(),
            HodgeVector(vec![2, 28, 2])
        );
    }

    #[test]
    fn classical_surfaces() {
        assert_eq!(
            hodge_numbers_primitive(&fermat(4, 4)).unwrap().0,
            vec![1, 19, 1]
        );
        assert_eq!(
            hodge_numbers_primitive(&fermat(4, 3)).unwrap().0,
            vec![0, 6, 0]
        );
        // plane quartic curve: genus 3
        assert_eq!(
            hodge_numbers_primitive(&fermat(3, 4)).unwrap().0,
            vec![3, 3]
        );
    }

    #[test]
    fn residue_bases() {
        let g = horikawa();
        let m = |e: [u32; 4]| Monomial(e.to_vec());
        assert_eq!(
            residue_basis(&g, 1).unwrap(),
            vec![m([1, 0, 0, 0]), m([0, 1, 0, 0])]
        );
        assert_eq!(
            residue_basis(&g, 3).unwrap(),
            vec![m([8, 7, 3, 0]), m([7, 8, 3, 0])]
        );
        assert_eq!(residue_basis(&g, 2).unwrap().len(), 28);
        assert!(residue_basis(&fermat(4, 3), 1).unwrap().is_empty());
        assert_eq!(
            residue_basis(&g, 4),
            Err(HodgeError::PoleOrderOutOfRange { q: 4, n: 3 })
        );
        assert!(residue_basis(&g, 0).is_err());
    }

    #[test]
    fn horikawa_eigen_split() {
        let report = eigen_hodge_numbers(&horikawa(), &galois()).unwrap();
        assert_eq!(report.total.0, vec![2, 28, 2]);
        // chi_0: fixed by sigma_x0, negated by sigma_x1
        assert_eq!(report.get(&[0, 1]).unwrap().0, vec![1, 14, 1]);
        assert_eq!(report.get(&[1, 0]).unwrap().0, vec![1, 14, 1]);
        assert!(report.get(&[0, 0]).unwrap().is_zero());
        assert!(report.get(&[1, 1]).unwrap().is_zero());
        assert_eq!(report.characters.len(), 4);
    }

    #[test]
    fn chi0_block_count_by_parity() {
        // quotient monomials x0^i x1^j y^k, i odd, j even, i+j+2k = 11
        let mut count = 0;
        for i in (1..=8).step_by(2) {
            for j in (0..=8).step_by(2) {
                for k in 0..=3 {
                    if i + j + 2 * k == 11 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 14);
        let report = eigen_hodge_numbers(&horikawa(), &galois()).unwrap();
        assert_eq!(report.get(&[0, 1]).unwrap().0[1], count);
    }

    #[test]
    fn trivial_group() {
        let g = horikawa();
        let report = eigen_hodge_numbers(&g, &DiagonalAction::trivial()).unwrap();
        assert_eq!(report.characters.len(), 1);
        assert_eq!(report.get(&[]).unwrap().0, vec![2, 28, 2]);
    }

    #[test]
    fn action_validation() {
        assert!(DiagonalAction::new(vec![2], vec![vec![1, 0]], 4).is_err());
        assert!(DiagonalAction::new(vec![2, 2], vec![vec![1, 0, 0, 0]], 4).is_err());
        assert!(DiagonalAction::new(vec![0], vec![vec![1, 0, 0, 0]], 4).is_err());
        assert!(DiagonalAction::new(vec![1 << 20], vec![vec![1, 0, 0, 0]], 4).is_err());
        // x0 -> i*x0 does not fix x0^10
        let a = DiagonalAction::new(vec![4], vec![vec![1, 0, 0, 0]], 4).unwrap();
        assert!(matches!(
            eigen_hodge_numbers(&horikawa(), &a),
            Err(HodgeError::NotInvariant(_))
        ));
    }

    #[test]
    fn rejects_singular_and_small() {
        let r = horikawa().ring().clone();
        let singular = parse_polynomial("z^2 - x0^10 - x1^10", &r).unwrap();
        assert_eq!(
            hodge_numbers_primitive(&singular),
            Err(HodgeError::NotQuasiSmooth)
        );
        assert_eq!(
            hodge_numbers_primitive(&fermat(2, 3)),
            Err(HodgeError::TooFewVariables(2))
        );
    }
}
