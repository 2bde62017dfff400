//! End-to-end pipelines for special Horikawa surfaces `z^2 = F(x0^2, x1^2, y)`
//! in `P(1,1,2,5)` and the associated K3 lattices.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hodge::{eigen_hodge_numbers, DiagonalAction, EigenReport, HodgeError, HodgeVector};
use crate::jacobian::JacobianContext;
use crate::lattice::{
    discriminant_group, is_primitive, orthogonal_complement, same_genus, Lattice, LatticeError,
    LatticeSpec, SublatticeEmbedding,
};
use crate::linalg;
use crate::polyring::{monomials_of_degree, Monomial, PolyError, Polynomial, WeightedRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("expected a quintic in three weight-2 variables: {0}")]
    BadQuintic(String),
    #[error(transparent)]
    Hodge(#[from] HodgeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Character fixed by `sigma_x0` and negated by `sigma_x1`.
pub const CHI_0: [u64; 2] = [0, 1];
/// Character fixed by `sigma_x1` and negated by `sigma_x0`.
pub const CHI_1: [u64; 2] = [1, 0];

/// `P(1,1,2,5)` with coordinates `x0, x1, y, z`.
pub fn horikawa_ring() -> Arc<WeightedRing> {
    WeightedRing::new(["x0", "x1", "y", "z"], [1, 1, 2, 5]).expect("valid ring")
}

/// Ring of the branch quintic `F(u, v, w)` with `u = x0^2, v = x1^2, w = y`.
pub fn quintic_ring() -> Arc<WeightedRing> {
    WeightedRing::new(["u", "v", "w"], [2, 2, 2]).expect("valid ring")
}

/// The Galois group `(Z/2)^2` generated by `sigma_x0` and `sigma_x1`.
pub fn galois_action() -> DiagonalAction {
    DiagonalAction::new(vec![2, 2], vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]], 4)
        .expect("valid action")
}

fn check_quintic(f: &Polynomial) -> Result<(), ScenarioError> {
    let ring = f.ring();
    if ring.arity() != 3 || ring.weights().iter().any(|&w| w != 2) {
        return Err(ScenarioError::BadQuintic(format!(
            "ring is {}",
            ring.decl()
        )));
    }
    match f.weighted_degree() {
        Ok(10) => Ok(()),
        Ok(d) => Err(ScenarioError::BadQuintic(format!(
            "weighted degree {d}, expected 10"
        ))),
        Err(e) => Err(ScenarioError::BadQuintic(e.to_string())),
    }
}

/// `G = z^2 - F(x0^2, x1^2, y)`.
pub fn horikawa_equation(f: &Polynomial) -> Result<Polynomial, ScenarioError> {
    check_quintic(f)?;
    let ring = horikawa_ring();
    let pulled = f.map_monomials(&ring, |m| {
        let e = m.exponents();
        Monomial(vec![2 * e[0], 2 * e[1], e[2], 0])
    });
    let z2 = Polynomial::from_terms(&ring, [(Monomial(vec![0, 0, 0, 2]), num_traits::one())]);
    Ok(&z2 - &pulled)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HorikawaReport {
    pub equation: String,
    pub quasi_smooth: bool,
    pub y5_present: bool,
    pub total: Option<HodgeVector>,
    pub eigen: Option<EigenReport>,
}

impl HorikawaReport {
    /// Only `chi_0` and `chi_1` carry cohomology.
    pub fn only_chi0_chi1(&self) -> bool {
        self.eigen.as_ref().is_some_and(|e| {
            e.characters
                .iter()
                .all(|(c, v)| c.0 == CHI_0 || c.0 == CHI_1 || v.is_zero())
        })
    }
}

pub fn horikawa_surface(f: &Polynomial) -> Result<HorikawaReport, ScenarioError> {
    let g = horikawa_equation(f)?;
    let y5_present = !f.coefficient(&Monomial(vec![0, 0, 5])).is_zero();
    let ctx = JacobianContext::new(&g).map_err(HodgeError::from)?;
    let quasi_smooth = ctx.is_quasi_smooth();
    let (total, eigen) = if quasi_smooth {
        let eigen = eigen_hodge_numbers(&g, &galois_action())?;
        (Some(eigen.total.clone()), Some(eigen))
    } else {
        (None, None)
    };
    Ok(HorikawaReport {
        equation: g.to_string(),
        quasi_smooth,
        y5_present,
        total,
        eigen,
    })
}

/// Gram matrix of the lattice spanned by `l', e_1, ..., e_5`: all
/// self-intersections `-2`, `l' . e_i = 1`, `e_i . e_j = 0`.
pub fn degree5_pair_lattice() -> Lattice {
    let mut gram = vec![vec![0i64; 6]; 6];
    for (i, row) in gram.iter_mut().enumerate() {
        row[i] = -2;
    }
    for i in 1..6 {
        gram[0][i] = 1;
        gram[i][0] = 1;
    }
    Lattice::new(gram).expect("symmetric").with_label("M")
}

/// `h = 2l' + e_1 + ... + e_5` in the `(l', e_1, ..., e_5)` basis.
pub const HYPERPLANE_CLASS: [i64; 6] = [2, 1, 1, 1, 1, 1];
pub const LINE_CLASS: [i64; 6] = [1, 0, 0, 0, 0, 0];

/// Rows: a basis of the pair lattice, in `(l', e_i)` coordinates, whose Gram
/// matrix is exactly `U(2) + D4` (D4 nodes ordered leaf, centre, leaf, leaf).
pub const STANDARD_BASIS_OF_PAIR_LATTICE: [[i64; 6]; 6] = [
    [-2, -2, -1, -1, -1, -1],
    [-2, -1, -2, -1, -1, -1],
    [1, 1, 1, 0, 0, 0],
    [-2, -2, -2, -1, -1, -1],
    [1, 1, 1, 0, 1, 1],
    [1, 1, 1, 1, 0, 1],
];

/// K3 coordinates `(U, U, U, E8, E8)`: images of the `U(2) + D4` basis.
/// `U(2)` goes to `{e1 + e2, f1 + f2}` in the first two hyperbolic planes;
/// the D4 nodes go to E8 nodes 3, 4, 5, 7 of the first E8 factor.
fn standard_images_in_k3() -> Vec<Vec<i64>> {
    let mut rows = vec![vec![0i64; 22]; 6];
    rows[0][0] = 1;
    rows[0][2] = 1;
    rows[1][1] = 1;
    rows[1][3] = 1;
    for (row, node) in [3usize, 4, 5, 7].iter().enumerate() {
        rows[2 + row][6 + node] = 1;
    }
    rows
}

/// The embedding `M -> Lambda_K3`, rows being the images of
/// `l', e_1, ..., e_5`.
pub fn pair_lattice_embedding() -> Vec<Vec<i64>> {
    let b: Vec<Vec<i64>> = STANDARD_BASIS_OF_PAIR_LATTICE
        .iter()
        .map(|r| r.to_vec())
        .collect();
    // B is unimodular: its Smith form is the identity, so B^-1 = V U.
    let s = linalg::smith_normal_form(&linalg::to_big(&b));
    let inverse = linalg::mat_mul(&s.v, &s.u);
    let images = linalg::to_big(&standard_images_in_k3());
    linalg::mat_mul(&inverse, &images)
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().expect("small entries"))
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSplitReport {
    #[serde(rename = "M_gram")]
    pub m_gram: Lattice,
    #[serde(rename = "T_gram")]
    pub t_gram: Lattice,
    /// Images of `l', e_1, ..., e_5` in K3 coordinates.
    pub embedding: Vec<Vec<i64>>,
    /// Basis of `T` in K3 coordinates.
    pub t_basis: Vec<Vec<i64>>,
    pub embedding_isometric: bool,
    #[serde(rename = "M_primitive")]
    pub m_primitive: bool,
    #[serde(rename = "T_primitive")]
    pub t_primitive: bool,
    #[serde(rename = "T_rank")]
    pub t_rank: usize,
    #[serde(rename = "T_signature")]
    pub t_signature: (usize, usize),
    #[serde(rename = "T_discriminant_group")]
    pub t_discriminant_group: Vec<u64>,
    #[serde(rename = "genus_M_ok")]
    pub genus_m_ok: bool,
    #[serde(rename = "genus_T_ok")]
    pub genus_t_ok: bool,
    /// `h^2 = 2` and `h . l' = 1` for `h = 2l' + sum e_i`, evaluated in K3.
    pub h_class_checks: [bool; 2],
}

impl LatticeSplitReport {
    pub fn all_ok(&self) -> bool {
        self.embedding_isometric
            && self.m_primitive
            && self.t_primitive
            && self.genus_m_ok
            && self.genus_t_ok
            && self.h_class_checks.iter().all(|&b| b)
            && self.t_signature == (2, 14)
    }
}

fn image_of(embedding: &[Vec<i64>], coords: &[i64]) -> Vec<i64> {
    (0..22)
        .map(|j| {
            embedding
                .iter()
                .zip(coords)
                .map(|(row, c)| c * row[j])
                .sum()
        })
        .collect()
}

fn u2_d4() -> Lattice {
    Lattice::standard(&LatticeSpec::DirectSum(vec![
        LatticeSpec::ScaledU(2),
        LatticeSpec::D(4),
    ]))
    .expect("valid")
}

pub fn expected_transcendental_lattice() -> Lattice {
    Lattice::standard(&LatticeSpec::DirectSum(vec![
        LatticeSpec::U,
        LatticeSpec::ScaledU(2),
        LatticeSpec::D(4),
        LatticeSpec::E8,
    ]))
    .expect("valid")
}

fn genus_or_false(a: &Lattice, b: &Lattice) -> bool {
    same_genus(a, b).unwrap_or(false)
}

pub fn k3_orthogonal_split() -> Result<LatticeSplitReport, LatticeError> {
    let k3 = Lattice::standard(&LatticeSpec::K3)?;
    let m = degree5_pair_lattice();
    let embedding = pair_lattice_embedding();
    let sub = SublatticeEmbedding::new(k3.clone(), embedding.clone())?;
    let embedding_isometric = sub.lattice().gram() == m.gram();
    let m_primitive = is_primitive(&sub);

    let t = orthogonal_complement(&sub)?;
    let t_gram = t.lattice().with_label("T");
    let t_discriminant_group = discriminant_group(&t_gram)?
        .iter()
        .map(|d: &BigInt| d.to_u64().expect("small"))
        .collect();

    let h = image_of(&embedding, &HYPERPLANE_CLASS);
    let l = image_of(&embedding, &LINE_CLASS);
    let h_class_checks = [k3.inner(&h, &h) == 2, k3.inner(&h, &l) == 1];

    Ok(LatticeSplitReport {
        genus_m_ok: genus_or_false(&m, &u2_d4()),
        genus_t_ok: genus_or_false(&t_gram, &expected_transcendental_lattice()),
        t_signature: t_gram.signature().pair(),
        t_rank: t_gram.rank(),
        t_primitive: is_primitive(&t),
        t_basis: t.basis.clone(),
        m_gram: m,
        t_gram,
        embedding,
        embedding_isometric,
        m_primitive,
        t_discriminant_group,
        h_class_checks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliDimensions {
    pub branch_data: i64,
    pub hypersurface: i64,
}

/// Two independent parameter counts for the family.
///
/// Branch data: plane quintics plus two lines, modulo `PGL_3`.
/// Hypersurfaces: coefficients of `F` minus the automorphisms of
/// `P(1,1,2,5)` preserving the shape `z^2 = F(x0^2, x1^2, y)`, namely
/// `x_i -> a_i x_i` and `y -> c y + d x0^2 + e x1^2`.
pub fn moduli_dimensions() -> ModuliDimensions {
    let plane = WeightedRing::new(["X", "Y", "Z"], [1, 1, 1]).expect("valid ring");
    let quintic_space = monomials_of_degree(&plane, 5).len() as i64 - 1;
    let line_space = monomials_of_degree(&plane, 1).len() as i64 - 1;
    let pgl3 = 3 * 3 - 1;
    let branch_data = quintic_space + 2 * line_space - pgl3;

    let f_coefficients = monomials_of_degree(&quintic_ring(), 10).len() as i64;
    let ring = horikawa_ring();
    let action = galois_action();
    let x_scalings = ring.weights().iter().filter(|&&w| w == 1).count() as i64;
    let trivial = crate::hodge::Character(vec![0, 0]);
    let y_substitutions = monomials_of_degree(&ring, 2)
        .iter()
        .filter(|m| action.monomial_character(m) == trivial)
        .count() as i64;
    let hypersurface = f_coefficients - (x_scalings + y_substitutions);

    ModuliDimensions {
        branch_data,
        hypersurface,
    }
}
