//! Exact equisingularity invariants of plane algebroid curve singularities.
//!
//! The combinatorial side models a reduced curve by the value semigroups of
//! its branches and the matrix of pairwise contact orders. From that data the
//! crate computes multiplicity, tangents, contact exponents of every order,
//! conductor degree, Milnor number, the Milnor lower bound and the
//! classification of curves attaining it, and strict quadratic transforms.
//!
//! The analytic side ([`oracle`]) works with explicit polynomials and
//! parametrizations over the rationals and recomputes the same quantities
//! by resultants and series substitution, so every combinatorial identity
//! can be checked against independent ground truth.
//!
//! Module map:
//!
//! - [`semigroup`]: branch semigroups, Zariski pairs, conductor, `d_k`.
//! - [`logdist`]: log-distance matrices and contact with families of branches.
//! - [`curve`]: reduced curves and curve-level invariants.
//! - [`blowup`]: multiplicity sequences, strict transforms, Pham recursion.
//! - [`oracle`]: polynomial and parametrization ground truth.
//! - [`cli`]: the `singlab` command-line front end.

pub mod blowup;
pub mod cli;
pub mod curve;
pub mod logdist;
pub mod oracle;
pub mod semigroup;

pub use curve::ReducedCurve;
pub use logdist::{DistanceMatrix, ExtRational};
pub use semigroup::BranchSemigroup;
