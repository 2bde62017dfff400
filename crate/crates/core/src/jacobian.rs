//! Graded pieces of the Jacobian ring `R/J_G`.
//!
//! The degree-`k` piece of `J_G` is spanned by the products `m * dG/dz_i`
//! over monomials `m` of degree `k - deg(dG/dz_i)`. Everything here reduces
//! to exact ranks of those spans written in the degree-`k` monomial basis.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::linalg::{Echelon, ModularEchelon, SparseVec};
use crate::polyring::{monomials_of_degree, Monomial, PolyError, Polynomial, WeightedRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JacobianError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("polynomial belongs to a different ring")]
    RingMismatch,
}

/// `(variable index, degree, integer terms)` of a nonzero partial.
type Generator = (usize, u64, Vec<(Monomial, BigInt)>);

/// A homogeneous polynomial together with its partial derivatives, cleared
/// of denominators.
#[derive(Debug, Clone)]
pub struct JacobianContext {
    g: Polynomial,
    partials: Vec<Polynomial>,
    /// Integer multiples of the partials, zero partials dropped:
    /// `(variable index, degree, terms)`.
    generators: Vec<Generator>,
    degree: u64,
    sigma: i64,
}

/// Degree-`k` monomial basis with reverse lookup.
pub(crate) struct GradedBasis {
    pub monomials: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn new(ring: &WeightedRing, k: u64) -> Self {
        let monomials = monomials_of_degree(ring, k);
        let index = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        GradedBasis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }
}

fn integer_terms(p: &Polynomial) -> Vec<(Monomial, BigInt)> {
    let l = p
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    p.terms()
        .map(|(m, c)| (m.clone(), c.numer() * (&l / c.denom())))
        .collect()
}

impl JacobianContext {
    pub fn new(g: &Polynomial) -> Result<Self, JacobianError> {
        let degree = g.weighted_degree()?;
        let ring = g.ring();
        let partials: Vec<Polynomial> = (0..ring.arity())
            .map(|i| g.partial_derivative_at(i))
            .collect();
        let generators = partials
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| (i, degree - ring.weights()[i], integer_terms(p)))
            .collect();
        let sum_a = ring.weight_sum() as i64;
        let sigma = (ring.arity() as i64) * degree as i64 - 2 * sum_a;
        Ok(JacobianContext {
            g: g.clone(),
            partials,
            generators,
            degree,
            sigma,
        })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.g
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        self.g.ring()
    }

    pub fn partials(&self) -> &[Polynomial] {
        &self.partials
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Socle degree `sum(d - a_i) - sum(a_i)`.
    pub fn socle_degree(&self) -> i64 {
        self.sigma
    }

    /// Degrees of the nonzero partials.
    pub fn generator_degrees(&self) -> Vec<u64> {
        self.generators.iter().map(|(_, d, _)| *d).collect()
    }

    /// Spanning columns of the degree-`k` piece of `J_G`, restricted to the
    /// rows accepted by `keep`. Columns that leave the kept rows are skipped;
    /// when `keep` selects a union of blocks of a block-diagonal
    /// decomposition this spans exactly the block.
    fn ideal_columns(
        &self,
        basis: &GradedBasis,
        k: u64,
        keep: &dyn Fn(&Monomial) -> bool,
    ) -> Vec<SparseVec> {
        let ring = self.ring();
        let mut seen: HashSet<SparseVec> = HashSet::new();
        let mut columns = Vec::new();
        for (_, gen_deg, terms) in &self.generators {
            if *gen_deg > k {
                continue;
            }
            'mult: for m in monomials_of_degree(ring, k - gen_deg) {
                let mut col: SparseVec = Vec::with_capacity(terms.len());
                for (t, c) in terms {
                    let prod = m.mul(t);
                    if !keep(&prod) {
                        continue 'mult;
                    }
                    col.push((basis.index[&prod], c.clone()));
                }
                col.sort_unstable_by_key(|(i, _)| *i);
                if seen.insert(col.clone()) {
                    columns.push(col);
                }
            }
        }
        columns
    }

    pub(crate) fn ideal_echelon(
        &self,
        basis: &GradedBasis,
        k: u64,
        keep: &dyn Fn(&Monomial) -> bool,
    ) -> Echelon {
        let mut echelon = Echelon::new();
        for col in self.ideal_columns(basis, k, keep) {
            echelon.insert(col);
        }
        echelon
    }

    /// Corank of the degree-`k` ideal piece inside the `size` kept monomials.
    /// Full rank modulo a prime settles the common zero case without exact
    /// elimination.
    pub(crate) fn block_corank(
        &self,
        basis: &GradedBasis,
        k: u64,
        keep: &dyn Fn(&Monomial) -> bool,
        size: usize,
    ) -> usize {
        let columns = self.ideal_columns(basis, k, keep);
        let mut modular = ModularEchelon::new();
        for col in &columns {
            if modular.insert(col) && modular.rank() == size {
                return 0;
            }
        }
        let mut echelon = Echelon::new();
        for col in columns {
            echelon.insert(col);
        }
        size - echelon.rank()
    }

    /// `dim (R/J_G)_k`.
    pub fn graded_quotient_dim(&self, k: i64) -> usize {
        if k < 0 {
            return 0;
        }
        let k = k as u64;
        let basis = GradedBasis::new(self.ring(), k);
        if basis.len() == 0 {
            return 0;
        }
        self.block_corank(&basis, k, &|_| true, basis.len())
    }

    /// Whether a homogeneous `a` lies in `J_G`.
    pub fn ideal_membership(&self, a: &Polynomial) -> Result<bool, JacobianError> {
        if a.ring() != self.ring() {
            return Err(JacobianError::RingMismatch);
        }
        if a.is_zero() {
            return Ok(true);
        }
        let k = a.weighted_degree()?;
        let basis = GradedBasis::new(self.ring(), k);
        let e = self.ideal_echelon(&basis, k, &|_| true);
        let v = polynomial_vector(a, &basis);
        Ok(e.contains(v))
    }

    /// Whether the classes of the given polynomials, all of one degree, are
    /// linearly independent in `R/J_G`.
    pub fn independent_modulo_ideal(&self, polys: &[Polynomial]) -> Result<bool, JacobianError> {
        if polys.iter().any(|p| p.ring() != self.ring()) {
            return Err(JacobianError::RingMismatch);
        }
        let Some(first) = polys.iter().find(|p| !p.is_zero()) else {
            return Ok(polys.is_empty());
        };
        let k = first.weighted_degree()?;
        for p in polys {
            if !p.is_zero() && p.weighted_degree()? != k {
                return Err(PolyError::NonHomogeneous(vec![k, p.weighted_degree()?]).into());
            }
        }
        let basis = GradedBasis::new(self.ring(), k);
        let mut e = self.ideal_echelon(&basis, k, &|_| true);
        Ok(polys.iter().all(|p| e.insert(polynomial_vector(p, &basis))))
    }

    /// Scans the window `[s, s + max weight)` with `s = max(sigma + 1, 0)`.
    pub fn is_quasi_smooth(&self) -> bool {
        let start = (self.sigma + 1).max(0);
        let width = self.ring().max_weight() as i64;
        (start..start + width).all(|k| self.graded_quotient_dim(k) == 0)
    }
}

/// Coordinates of `a` in a graded monomial basis, denominators cleared.
pub(crate) fn polynomial_vector(a: &Polynomial, basis: &GradedBasis) -> SparseVec {
    let mut v: SparseVec = integer_terms(a)
        .into_iter()
        .map(|(m, c)| (basis.index[&m], c))
        .collect();
    v.sort_unstable_by_key(|(i, _)| *i);
    v
}

/// `dim (R/J_G)_k` for a homogeneous nonzero `g`.
pub fn graded_quotient_dim(g: &Polynomial, k: i64) -> Result<usize, JacobianError> {
    Ok(JacobianContext::new(g)?.graded_quotient_dim(k))
}

/// True iff the partials of `g` vanish simultaneously only at the origin.
pub fn quasi_smooth(g: &Polynomial) -> Result<bool, JacobianError> {
    Ok(JacobianContext::new(g)?.is_quasi_smooth())
}

/// Coefficients of `prod_j (1 - t^{d_j}) / prod_i (1 - t^{a_i})` through
/// degree `up_to`.
pub fn hilbert_series_closed_form(
    ring: &WeightedRing,
    generator_degrees: &[u64],
    up_to: usize,
) -> Vec<i64> {
    let mut series = vec![0i64; up_to + 1];
    series[0] = 1;
    for &d in generator_degrees {
        let d = d as usize;
        for k in (d..=up_to).rev() {
            series[k] -= series[k - d];
        }
    }
    for &a in ring.weights() {
        let a = a as usize;
        for k in a..=up_to {
            series[k] += series[k - a];
        }
    }
    series
}

/// Rank of the degree-`k` generator-multiples matrix before and after
/// adjoining the column of `a` (degree `k`).
pub fn rank_with_extra_column(
    ctx: &JacobianContext,
    a: &Polynomial,
) -> Result<(usize, usize), JacobianError> {
    let k = a.weighted_degree()?;
    let basis = GradedBasis::new(ctx.ring(), k);
    let mut e = ctx.ideal_echelon(&basis, k, &|_| true);
    let before = e.rank();
    e.insert(polynomial_vector(a, &basis));
    Ok((before, e.rank()))
}
