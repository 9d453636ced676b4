//! Combinatorial data of products of monomials and binomials.
//!
//! A factor `y^a - c x^b` (`c != 0`) with `r = gcd(a, b)` splits into `r`
//! branches `y^p = zeta x^q`, `(p, q) = (a/r, b/r)`. The line `y = 0` is
//! `(1, inf)` and `x = 0` is `(inf, 1)`. Two such branches meet with
//! `I = min(p_j q_i, p_i q_j)`, and `p q` when they share `(p, q)`.
//! Factors with a nonzero constant term are units and are ignored.

use super::bivariate::BivariatePoly;
use super::OracleError;
use crate::curve::ReducedCurve;
use crate::logdist::{DistanceMatrix, ExtRational};
use crate::semigroup::BranchSemigroup;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

/// A branch `y^p = zeta x^q`; `None` stands for an infinite exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelBranch {
    pub p: Option<u64>,
    pub q: Option<u64>,
}

impl ModelBranch {
    const LINE_Y: Self = Self { p: Some(1), q: None };
    const LINE_X: Self = Self { p: None, q: Some(1) };

    pub fn multiplicity(&self) -> u64 {
        match (self.p, self.q) {
            (Some(p), Some(q)) => p.min(q),
            _ => 1,
        }
    }

    pub fn semigroup(&self) -> BranchSemigroup {
        match (self.p, self.q) {
            (Some(p), Some(q)) if p.min(q) >= 2 => {
                BranchSemigroup::two_generator(p.min(q), p.max(q)).expect("coprime pair")
            }
            _ => BranchSemigroup::smooth(),
        }
    }

    fn intersection(&self, o: &Self) -> u64 {
        let mul = |a: Option<u64>, b: Option<u64>| a.zip(b).map(|(a, b)| a * b);
        match (mul(o.p, self.q), mul(self.p, o.q)) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!("a line meets itself"),
        }
    }
}

/// Branches of one factor.
pub fn factor_branches(f: &BivariatePoly) -> Result<Vec<ModelBranch>, OracleError> {
    if f.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Ok(Vec::new());
    }
    let (alpha, beta) = f.monomial_content();
    if alpha > 1 || beta > 1 {
        return Err(OracleError::NotReduced);
    }
    let mut out = Vec::new();
    if alpha == 1 {
        out.push(ModelBranch::LINE_X);
    }
    if beta == 1 {
        out.push(ModelBranch::LINE_Y);
    }
    let rest = f.divide_monomial(alpha, beta);
    let terms: Vec<((u32, u32), BigRational)> = rest.terms().map(|(&k, c)| (k, c.clone())).collect();
    match terms.as_slice() {
        [((0, 0), _)] => {}
        [(t1, _), (t2, _)] => {
            let (b, a) = match (*t1, *t2) {
                ((0, a), (b, 0)) | ((b, 0), (0, a)) if a > 0 && b > 0 => (b as u64, a as u64),
                _ => return Err(unsupported(f)),
            };
            let r = a.gcd(&b);
            out.extend((0..r).map(|_| ModelBranch { p: Some(a / r), q: Some(b / r) }));
        }
        _ => return Err(unsupported(f)),
    }
    Ok(out)
}

fn unsupported(f: &BivariatePoly) -> OracleError {
    OracleError::Unsupported(format!("{f} is not a monomial times y^a - c x^b"))
}

/// Splits at top-level products: `*` or `)(` outside parentheses. An
/// expression with a top-level sum is a single factor.
pub fn split_factors(text: &str) -> Vec<&str> {
    let bytes = text.as_bytes();
    let mut depth = 0i32;
    let mut cuts = Vec::new();
    let mut last_non_space = None;
    let mut has_sum = false;
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'(' => {
                if depth == 0 && last_non_space == Some(b')') {
                    cuts.push((i, i));
                }
                depth += 1;
            }
            b')' => depth -= 1,
            b'*' if depth == 0 => cuts.push((i, i + 1)),
            b'+' | b'-' if depth == 0 && last_non_space.is_some_and(|p| p != b'^' && p != b'*' && p != b'(') => {
                has_sum = true;
            }
            _ => {}
        }
        if !c.is_ascii_whitespace() {
            last_non_space = Some(c);
        }
    }
    if has_sum {
        return vec![text.trim()];
    }
    let mut out = Vec::new();
    let mut start = 0;
    for (end, next) in cuts {
        out.push(text[start..end].trim());
        start = next;
    }
    out.push(text[start..].trim());
    out.into_iter().filter(|s| !s.is_empty()).collect()
}

fn branches_of(factors: &[BivariatePoly]) -> Result<Vec<ModelBranch>, OracleError> {
    let mut all = Vec::new();
    for f in factors {
        all.extend(factor_branches(f)?);
    }
    let lines = |b: ModelBranch| all.iter().filter(|&&x| x == b).count();
    if lines(ModelBranch::LINE_X) > 1 || lines(ModelBranch::LINE_Y) > 1 {
        return Err(OracleError::NotReduced);
    }
    if all.is_empty() {
        return Err(OracleError::NotThroughOrigin);
    }
    Ok(all)
}

/// Curve data of a product of binomial factors. Reducedness across factors
/// (distinct coefficients `c` for equal `(a, b)`) is the caller's concern.
pub fn binomial_model_factors(factors: &[BivariatePoly]) -> Result<ReducedCurve, OracleError> {
    let all = branches_of(factors)?;
    let matrix = DistanceMatrix::from_fn(all.len(), |i, j| {
        let m = all[i].multiplicity() * all[j].multiplicity();
        ExtRational::frac(all[i].intersection(&all[j]), m)
    });
    Ok(ReducedCurve::new(all.iter().map(|b| b.semigroup()).collect(), matrix)?)
}

/// Parses `text`, splits it into factors and builds the curve data.
pub fn binomial_model(text: &str) -> Result<ReducedCurve, OracleError> {
    let factors = split_factors(text)
        .into_iter()
        .map(str::parse)
        .collect::<Result<Vec<BivariatePoly>, _>>()?;
    binomial_model_factors(&factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::milnor_poly;

    #[test]
    fn splitting() {
        assert_eq!(split_factors("(y^2-x^3)*(y^2-2*x^3)"), vec!["(y^2-x^3)", "(y^2-2*x^3)"]);
        assert_eq!(split_factors("(y^2-x^3)(y-x^5)"), vec!["(y^2-x^3)", "(y-x^5)"]);
        assert_eq!(split_factors("y^3 - y*x^3"), vec!["y^3 - y*x^3"]);
        assert_eq!(split_factors("x*y"), vec!["x", "y"]);
        assert_eq!(split_factors("-x^2*y"), vec!["-x^2", "y"]);
    }

    #[test]
    fn models_agree_with_oracle() {
        for text in [
            "y^2-x^3",
            "(y^2-x^3)*(y^2-2*x^3)",
            "y^3-y*x^3",
            "x*y",
            "x*y*(y-x)",
            "(y^2-x^3)*(y^3-x^2)",
            "y^4-x^6",
            "(y^2-x^5)*(y-x^2)*x",
            "y*(y^3-x^7)*(1+x)",
        ] {
            let c = binomial_model(text).unwrap();
            let f: BivariatePoly = text.parse().unwrap();
            assert_eq!(c.milnor(), milnor_poly(&f).unwrap().mu, "{text}");
        }
    }

    #[test]
    fn rejects_non_binomials() {
        assert!(matches!(binomial_model("y^2-x^3+x^2*y"), Err(OracleError::Unsupported(_))));
        assert_eq!(binomial_model("x^2*(y-x^3)"), Err(OracleError::NotReduced));
    }
}
