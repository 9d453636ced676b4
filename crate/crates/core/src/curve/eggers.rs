//! Classification of curves attaining the Milnor bound.

use num_integer::Integer;
use serde::Serialize;

use super::{rational_to_u64, CurveError, ReducedCurve};
use crate::logdist::ExtRational;
use crate::semigroup::BranchSemigroup;

/// Data of a curve with `r` branches of semigroup `<v0, v1>` meeting pairwise
/// with intersection number `pairwise`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EggersCore {
    pub r: u64,
    pub v0: u64,
    pub v1: u64,
    pub pairwise: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type")]
pub enum EggersType {
    NotEggers,
    /// Smooth branches meeting pairwise with multiplicity `d`.
    Type1 { d: u64 },
    Type2(EggersCore),
    /// A smooth branch with maximal contact with every branch of a type 2 core.
    Type3 { smooth_branch: usize, core: EggersCore },
}

impl EggersType {
    pub fn is_eggers(&self) -> bool {
        !matches!(self, EggersType::NotEggers)
    }

    pub fn name(&self) -> &'static str {
        match self {
            EggersType::NotEggers => "not Eggers",
            EggersType::Type1 { .. } => "type 1",
            EggersType::Type2(_) => "type 2",
            EggersType::Type3 { .. } => "type 3",
        }
    }
}

fn inconsistent(what: &str) -> CurveError {
    CurveError::Inconsistent(format!("Milnor bound attained but {what}"))
}

/// Core data from `(m, m d)` when `d` is not an integer but `m d` is.
fn core_data(m: u64, md: u64) -> EggersCore {
    let r = m.gcd(&md);
    EggersCore {
        r,
        v0: m / r,
        v1: md / r,
        pairwise: (m / r) * (md / r),
    }
}

fn check_core(curve: &ReducedCurve, core: &EggersCore) -> Result<(), CurveError> {
    if curve.branch_count() as u64 != core.r {
        return Err(inconsistent("the branch count differs from gcd(m, m d)"));
    }
    let expected = BranchSemigroup::new(vec![core.v0, core.v1])
        .map_err(|_| inconsistent("<m/r, m d/r> is not a semigroup"))?;
    if curve.branches().iter().any(|b| *b != expected) {
        return Err(inconsistent("a branch semigroup differs from <m/r, m d/r>"));
    }
    let r = curve.branch_count();
    for i in 0..r {
        for j in i + 1..r {
            if curve.intersection(i, j) != core.pairwise {
                return Err(inconsistent("a pairwise intersection differs from m^2 d / r^2"));
            }
        }
    }
    Ok(())
}

pub(super) fn classify(curve: &ReducedCurve) -> Result<EggersType, CurveError> {
    let report = curve.milnor_bound_report()?;
    if !report.attained {
        return Ok(EggersType::NotEggers);
    }
    let m = report.m;
    let d = &report.d;
    if let Some(d_int) = d.to_u64() {
        let r = curve.branch_count();
        let smooth = curve.branches().iter().all(|b| b.is_smooth());
        let pairwise = (0..r).all(|i| (i + 1..r).all(|j| curve.intersection(i, j) == d_int));
        if !smooth || !pairwise {
            return Err(inconsistent("an integral d(C) comes with a singular branch or unequal contacts"));
        }
        return Ok(EggersType::Type1 { d: d_int });
    }
    let md = d.scale(m);
    if let Some(md) = md.finite().and_then(rational_to_u64) {
        let core = core_data(m, md);
        check_core(curve, &core)?;
        return Ok(EggersType::Type2(core));
    }

    let smooth: Vec<usize> = (0..curve.branch_count())
        .filter(|&i| curve.branches()[i].is_smooth())
        .collect();
    let [l] = smooth[..] else {
        return Err(inconsistent("m d is not an integer and there is not exactly one smooth branch"));
    };
    let rest: Vec<usize> = (0..curve.branch_count()).filter(|&i| i != l).collect();
    let core_curve = curve.subcurve(&rest);
    if core_curve.contact_exponent() != *d || core_curve.multiplicity() != m - 1 {
        return Err(inconsistent("the singular part has the wrong (m, d)"));
    }
    let core_md = d
        .scale(m - 1)
        .finite()
        .and_then(rational_to_u64)
        .ok_or_else(|| inconsistent("(m - 1) d is not an integer"))?;
    let core = core_data(m - 1, core_md);
    check_core(&core_curve, &core)?;
    for &i in &rest {
        if *curve.contact_between(l, i) != curve.branches()[i].contact_exponent() {
            return Err(inconsistent("the smooth branch lacks maximal contact with the core"));
        }
    }
    Ok(EggersType::Type3 { smooth_branch: l, core })
}

/// `(m - 1) d` as an integer, if it is one.
pub fn type3_integer(curve: &ReducedCurve) -> Option<u64> {
    let d: ExtRational = curve.contact_exponent();
    d.scale(curve.multiplicity() - 1).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logdist::DistanceMatrix;

    fn sg(v: &[u64]) -> BranchSemigroup {
        BranchSemigroup::new(v.to_vec()).unwrap()
    }

    fn q(s: &str) -> ExtRational {
        s.parse().unwrap()
    }

    #[test]
    fn single_two_generator_branch_is_type2() {
        let c = ReducedCurve::branch(sg(&[3, 5]));
        assert_eq!(
            c.eggers_classify().unwrap(),
            EggersType::Type2(EggersCore { r: 1, v0: 3, v1: 5, pairwise: 15 })
        );
    }

    #[test]
    fn line_plus_cusp_is_type3() {
        let c = ReducedCurve::new(
            vec![sg(&[1]), sg(&[2, 3])],
            DistanceMatrix::from_fn(2, |_, _| q("3/2")),
        )
        .unwrap();
        assert_eq!(c.milnor(), 7);
        let t = c.eggers_classify().unwrap();
        assert_eq!(
            t,
            EggersType::Type3 { smooth_branch: 0, core: EggersCore { r: 1, v0: 2, v1: 3, pairwise: 6 } }
        );
        assert_eq!(type3_integer(&c), Some(3));
    }

    #[test]
    fn ordinary_triple_point_is_type1() {
        let c = ReducedCurve::equal_contact(vec![sg(&[1]); 3], q("1")).unwrap();
        assert_eq!(c.milnor(), 4);
        assert_eq!(c.eggers_classify().unwrap(), EggersType::Type1 { d: 1 });
    }

    #[test]
    fn two_cusps_type2_and_non_eggers() {
        let c = ReducedCurve::equal_contact(vec![sg(&[2, 3]); 2], q("3/2")).unwrap();
        assert_eq!(
            c.eggers_classify().unwrap(),
            EggersType::Type2(EggersCore { r: 2, v0: 2, v1: 3, pairwise: 6 })
        );
        assert_eq!(
            ReducedCurve::branch(sg(&[4, 6, 13])).eggers_classify().unwrap(),
            EggersType::NotEggers
        );
        assert!(matches!(
            ReducedCurve::branch(sg(&[1])).eggers_classify(),
            Err(CurveError::SmoothBranch)
        ));
    }
}
