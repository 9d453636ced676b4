//! Combinatorial models of the binomial curves `y^n - x^m` and `y^n - y x^m`.

use num_integer::Integer;

use super::{CurveError, ReducedCurve};
use crate::logdist::ExtRational;
use crate::semigroup::BranchSemigroup;

/// `y^a - zeta x^b` over all `r = gcd(n, m)` values of `zeta`: `r` branches
/// with semigroup `<p/r, q/r>` (`p = min`, `q = max`) meeting pairwise with
/// contact `q/p`. `<1>` when `p/r = 1`.
pub fn binomial(n: u64, m: u64) -> Result<ReducedCurve, CurveError> {
    if n < 1 || m < 1 || n.min(m) < 2 {
        return Err(CurveError::Parameters(format!(
            "y^{n} - x^{m} is smooth or not a curve germ through 0"
        )));
    }
    let (p, q) = (n.min(m), n.max(m));
    let r = p.gcd(&q);
    let branch = if p == r {
        BranchSemigroup::smooth()
    } else {
        BranchSemigroup::two_generator(p / r, q / r)?
    };
    ReducedCurve::equal_contact(vec![branch; r as usize], ExtRational::frac(q, p))
}

/// `y (y^{n-1} - x^m)` for `2 <= n <= m + 1`: the line `y = 0` followed by the
/// branches of `y^{n-1} - x^m`, each at contact `m / (n - 1)` with the line.
pub fn line_times_binomial(n: u64, m: u64) -> Result<ReducedCurve, CurveError> {
    if n < 2 || m + 1 < n {
        return Err(CurveError::Parameters(format!(
            "y^{n} - y x^{m} is modelled for 2 <= n <= m + 1"
        )));
    }
    let k = n - 1;
    let d = ExtRational::frac(m, k);
    let core = if k == 1 {
        ReducedCurve::branch(BranchSemigroup::smooth())
    } else if k == m {
        ReducedCurve::equal_contact(vec![BranchSemigroup::smooth(); k as usize], ExtRational::one())?
    } else {
        binomial(k, m)?
    };
    let line = ReducedCurve::branch(BranchSemigroup::smooth());
    let contacts = vec![d; core.branch_count()];
    line.with_branch_curve(&core, &contacts)
}

impl ReducedCurve {
    /// Union with the branches of `other`, every new branch meeting every
    /// existing one with the contact `contacts[i]` of the existing branch `i`.
    fn with_branch_curve(&self, other: &ReducedCurve, contacts: &[ExtRational]) -> Result<ReducedCurve, CurveError> {
        let r = self.branch_count();
        let s = other.branch_count();
        let mut branches = self.branches().to_vec();
        branches.extend_from_slice(other.branches());
        let matrix = crate::logdist::DistanceMatrix::from_fn(r + s, |i, j| {
            if j < r {
                self.contact_between(i, j).clone()
            } else if i >= r {
                other.contact_between(i - r, j - r).clone()
            } else {
                contacts[i].clone()
            }
        });
        ReducedCurve::new(branches, matrix)
    }
}

/// `mu(y^n - x^m) = (n - 1)(m - 1)`.
pub fn binomial_milnor(n: u64, m: u64) -> u64 {
    (n - 1) * (m - 1)
}

/// `mu(y^n - y x^m) = n m - n + 1`.
pub fn line_times_binomial_milnor(n: u64, m: u64) -> u64 {
    n * m - n + 1
}
