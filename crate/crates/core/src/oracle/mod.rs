//! Independent polynomial computations over `Q[x, y]`.
//!
//! These routines never look at semigroups or contact matrices. They compute
//! Milnor numbers, intersection multiplicities, tangent counts and polar
//! data straight from an equation or a parametrization, so that they can be
//! used to cross-check the combinatorial side.

pub mod bivariate;
pub mod intersection;
pub mod model;
pub mod param;
pub mod upoly;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::curve::CurveError;
use crate::semigroup::SemigroupError;

pub use bivariate::BivariatePoly;
pub use intersection::{fulton, intersection_number, IntersectionNumber};
pub use param::BranchParam;
pub use upoly::UPoly;

/// Retries allowed for a generic polar direction.
pub const POLAR_ATTEMPTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the zero polynomial does not define a curve")]
    ZeroPolynomial,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("the curve does not pass through the origin")]
    NotThroughOrigin,
    #[error("the polynomial is not reduced at the origin (infinite Milnor number)")]
    NotReduced,
    #[error("no admissible shear found")]
    ShearNotFound,
    #[error("Fulton's algorithm exceeded its work bound")]
    FultonBudget,
    #[error("no generic polar direction found in {attempts} attempts")]
    DegeneratePolar { attempts: usize },
    #[error("result is not determined by terms below t^{trunc}")]
    TruncationExceeded { trunc: u64 },
    #[error("the parametrization is not primitive")]
    NotPrimitive,
    #[error("the parametrization describes a smooth branch")]
    SmoothBranch,
    #[error("invalid parametrization: {0}")]
    InvalidParam(String),
    #[error("unsupported polynomial model: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Milnor number of a germ at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MilnorPoly {
    pub mu: u64,
    pub multiplicity: u32,
    pub smooth_point: bool,
}

/// `mu(f) = (f_x, f_y)_0`.
pub fn milnor_poly(f: &BivariatePoly) -> Result<MilnorPoly, OracleError> {
    let m = f.order()?;
    if m == 0 {
        return Err(OracleError::NotThroughOrigin);
    }
    if m == 1 {
        return Ok(MilnorPoly { mu: 0, multiplicity: 1, smooth_point: true });
    }
    let (fx, fy) = (f.partial_x(), f.partial_y());
    // A singular germ in one variable only is a multiple line.
    if fx.is_zero() || fy.is_zero() {
        return Err(OracleError::NotReduced);
    }
    match intersection_number(&fx, &fy)? {
        IntersectionNumber::Finite(mu) => Ok(MilnorPoly { mu, multiplicity: m, smooth_point: false }),
        IntersectionNumber::Infinite => Err(OracleError::NotReduced),
    }
}

/// Multiplicity `ord_0 f`; errors on the zero polynomial.
pub fn poly_order(f: &BivariatePoly) -> Result<u32, OracleError> {
    f.order()
}

/// Number of distinct tangent lines: distinct linear factors of the initial form.
pub fn tangent_count_poly(f: &BivariatePoly) -> Result<usize, OracleError> {
    let m = f.order()?;
    if m == 0 {
        return Err(OracleError::NotThroughOrigin);
    }
    let init = f.initial_form()?;
    // in f(1, t) = sum c_{m-j, j} t^j.
    let p = UPoly::new((0..=m).map(|j| init.coeff(m - j, j)).collect());
    let at_infinity = usize::from(p.degree().unwrap_or(0) < m as usize);
    Ok(p.distinct_root_count() + at_infinity)
}

/// Outcome of the polar identity `mu = (f, P) - m + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TeissierReport {
    pub mu: u64,
    pub multiplicity: u32,
    pub a: i64,
    pub b: i64,
    pub polar_intersection: u64,
    pub attempts: usize,
    pub holds: bool,
}

/// Draws `(a, b)` and checks `mu = (f, a f_x + b f_y) - m + 1` for the
/// polar of the line `b x - a y`, retrying while that line is tangent or
/// the polar shares a component with `f`.
pub fn teissier_check<R: Rng + ?Sized>(f: &BivariatePoly, rng: &mut R) -> Result<TeissierReport, OracleError> {
    let mu = milnor_poly(f)?;
    let m = mu.multiplicity;
    let (fx, fy) = (f.partial_x(), f.partial_y());
    for attempt in 1..=POLAR_ATTEMPTS {
        let a: i64 = rng.gen_range(1..=8);
        let b: i64 = rng.gen_range(1..=8);
        let line = &BivariatePoly::x().scale(&int(b)) - &BivariatePoly::y().scale(&int(a));
        if intersection_number(f, &line)? != IntersectionNumber::Finite(u64::from(m)) {
            continue;
        }
        let polar = &fx.scale(&int(a)) + &fy.scale(&int(b));
        let IntersectionNumber::Finite(fp) = intersection_number(f, &polar)? else {
            continue;
        };
        return Ok(TeissierReport {
            mu: mu.mu,
            multiplicity: m,
            a,
            b,
            polar_intersection: fp,
            attempts: attempt,
            holds: fp + 1 == mu.mu + u64::from(m),
        });
    }
    Err(OracleError::DegeneratePolar { attempts: POLAR_ATTEMPTS })
}

fn int(n: i64) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> BivariatePoly {
        s.parse().unwrap()
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor_poly(&p("y^2-x^3")).unwrap().mu, 2);
        assert_eq!(milnor_poly(&p("(y^2-x^3)*(y^2-2*x^3)")).unwrap().mu, 15);
        assert_eq!(milnor_poly(&p("y^3-y*x^3")).unwrap().mu, 7);
        assert_eq!(milnor_poly(&p("x*y")).unwrap().mu, 1);
        assert!(milnor_poly(&p("y+x^2")).unwrap().smooth_point);
        assert_eq!(milnor_poly(&p("y^2")), Err(OracleError::NotReduced));
        assert_eq!(milnor_poly(&p("1+x")), Err(OracleError::NotThroughOrigin));
    }

    #[test]
    fn tangents() {
        assert_eq!(tangent_count_poly(&p("y^2-x^3")).unwrap(), 1);
        assert_eq!(tangent_count_poly(&p("x*y")).unwrap(), 2);
        assert_eq!(tangent_count_poly(&p("x^2-y^3")).unwrap(), 1);
        assert_eq!(tangent_count_poly(&p("y^3-x^3")).unwrap(), 3);
        assert_eq!(tangent_count_poly(&p("y^2+x^2")).unwrap(), 2);
    }

    #[test]
    fn polar_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = teissier_check(&p("y^2-x^3"), &mut rng).unwrap();
        assert_eq!(r.polar_intersection, 3);
        assert!(r.holds);
        let r = teissier_check(&p("(y^2-x^3)*(y^2-2*x^3)"), &mut rng).unwrap();
        assert_eq!(r.polar_intersection, 18);
        assert!(r.holds);
    }
}
