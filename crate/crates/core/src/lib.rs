//! Exact computations for weighted projective hypersurfaces and integral
//! lattices: Jacobian rings, Griffiths residue Hodge numbers with character
//! splittings, and discriminant forms / orthogonal complements in the K3
//! lattice.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod hodge;
pub mod jacobian;
pub mod lattice;
pub mod linalg;
pub mod polyring;
pub mod scenarios;
pub mod selftest;

pub use hodge::{
    eigen_hodge_numbers, hodge_numbers_primitive, residue_basis, Character, DiagonalAction,
    EigenReport, HodgeError, HodgeVector,
};
pub use jacobian::{
    graded_quotient_dim, hilbert_series_closed_form, quasi_smooth, JacobianContext, JacobianError,
};
pub use lattice::{
    discriminant_form, discriminant_group, is_primitive, orthogonal_complement, same_genus,
    signature, smith_normal_form, DiscriminantForm, Lattice, LatticeError, LatticeSpec, Signature,
    SublatticeEmbedding,
};
pub use polyring::{
    monomials_of_degree, parse_polynomial, Monomial, PolyError, Polynomial, WeightedRing,
};
