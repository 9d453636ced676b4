//! Reduced plane curves as combinatorial data.
//!
//! A [`ReducedCurve`] is a list of branch semigroups together with the
//! symmetric matrix of contact orders `d(C_i, C_j) = (C_i, C_j)_0 / (m_i m_j)`.
//! Validation accepts any ultrametric matrix with off-diagonal entries at
//! least 1 whose intersection numbers `d_ij m_i m_j` are integers.

mod eggers;
pub mod normal_forms;
pub mod random;

pub use eggers::{type3_integer, EggersCore, EggersType};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logdist::{
    check_axioms, AxiomViolation, DistanceMatrix, ExtRational, FamilyScenario, LogDistError,
};
use crate::semigroup::{BranchSemigroup, SemigroupError};

/// Upper bound on the branch count accepted by the permutation search.
pub const MAX_EQUISINGULAR_BRANCHES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation")]
pub enum CurveViolation {
    UltrametricViolation(AxiomViolation),
    NonIntegralIntersection { i: usize, j: usize },
    ContactBelowOne { i: usize, j: usize },
}

impl fmt::Display for CurveViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveViolation::UltrametricViolation(v) => write!(f, "log-distance axiom: {v:?}"),
            CurveViolation::NonIntegralIntersection { i, j } => {
                write!(f, "intersection number of branches {i},{j} is not an integer")
            }
            CurveViolation::ContactBelowOne { i, j } => {
                write!(f, "contact of branches {i},{j} is below 1")
            }
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("a curve needs at least one branch")]
    NoBranches,
    #[error("{branches} branches but a {matrix}x{matrix} contact matrix")]
    SizeMismatch { branches: usize, matrix: usize },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Matrix(#[from] LogDistError),
    #[error("invalid curve: {}", list(.0))]
    Invalid(Vec<CurveViolation>),
    #[error("the curve is a smooth branch")]
    SmoothBranch,
    #[error("contact order k must be at least 1")]
    KOutOfRange,
    #[error("{0} branches exceeds the permutation search limit {MAX_EQUISINGULAR_BRANCHES}")]
    TooManyBranches(usize),
    #[error("unsupported parameters: {0}")]
    Parameters(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

fn list(v: &[CurveViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// Branch semigroups plus the matrix of pairwise contact orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCurve", into = "RawCurve")]
pub struct ReducedCurve {
    branches: Vec<BranchSemigroup>,
    contact: DistanceMatrix,
}

#[derive(Serialize, Deserialize)]
struct RawCurve {
    branches: Vec<BranchSemigroup>,
    #[serde(default)]
    contact: Option<Vec<Vec<ExtRational>>>,
}

impl TryFrom<RawCurve> for ReducedCurve {
    type Error = CurveError;

    fn try_from(raw: RawCurve) -> Result<Self, Self::Error> {
        let contact = match raw.contact {
            Some(rows) => DistanceMatrix::unlabelled(rows)?,
            None if raw.branches.len() == 1 => DistanceMatrix::from_fn(1, |_, _| unreachable!()),
            None => {
                return Err(CurveError::SizeMismatch {
                    branches: raw.branches.len(),
                    matrix: 0,
                })
            }
        };
        ReducedCurve::new(raw.branches, contact)
    }
}

impl From<ReducedCurve> for RawCurve {
    fn from(c: ReducedCurve) -> Self {
        RawCurve {
            contact: Some(c.contact.rows().to_vec()),
            branches: c.branches,
        }
    }
}

/// Multiplicity, bound and equality conditions of the Milnor lower bound
/// `mu >= (d m - 1)(m - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MilnorBoundReport {
    pub mu: u64,
    pub m: u64,
    pub d: ExtRational,
    pub bound: ExtRational,
    pub attained: bool,
    /// Every pairwise contact equals `d`.
    pub e1_holds: bool,
    /// Every singular branch has one Zariski pair and contact exponent `d`.
    pub e2_holds: bool,
}

fn to_rational(x: &ExtRational) -> BigRational {
    x.finite().cloned().expect("finite value")
}

impl ReducedCurve {
    pub fn new(branches: Vec<BranchSemigroup>, contact: DistanceMatrix) -> Result<Self, CurveError> {
        let r = branches.len();
        if r == 0 {
            return Err(CurveError::NoBranches);
        }
        if contact.len() != r {
            return Err(CurveError::SizeMismatch {
                branches: r,
                matrix: contact.len(),
            });
        }
        let mut violations: Vec<CurveViolation> = check_axioms(&contact)
            .violations
            .into_iter()
            .map(CurveViolation::UltrametricViolation)
            .collect();
        for i in 0..r {
            for j in i + 1..r {
                let Some(d) = contact.get(i, j).finite() else {
                    continue;
                };
                if *d < BigRational::one() {
                    violations.push(CurveViolation::ContactBelowOne { i, j });
                }
                let mm = BigInt::from(branches[i].multiplicity() * branches[j].multiplicity());
                if !(d * BigRational::from_integer(mm)).is_integer() {
                    violations.push(CurveViolation::NonIntegralIntersection { i, j });
                }
            }
        }
        if !violations.is_empty() {
            return Err(CurveError::Invalid(violations));
        }
        Ok(Self { branches, contact })
    }

    pub fn branch(semigroup: BranchSemigroup) -> Self {
        Self {
            branches: vec![semigroup],
            contact: DistanceMatrix::from_fn(1, |_, _| unreachable!()),
        }
    }

    /// Curve whose branch pairs all have the same contact `d`.
    pub fn equal_contact(branches: Vec<BranchSemigroup>, d: ExtRational) -> Result<Self, CurveError> {
        let n = branches.len();
        Self::new(branches, DistanceMatrix::from_fn(n, |_, _| d.clone()))
    }

    pub fn branches(&self) -> &[BranchSemigroup] {
        &self.branches
    }

    pub fn contact(&self) -> &DistanceMatrix {
        &self.contact
    }

    pub fn contact_between(&self, i: usize, j: usize) -> &ExtRational {
        self.contact.get(i, j)
    }

    /// Number of branches `r`.
    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn is_smooth_branch(&self) -> bool {
        self.branches.len() == 1 && self.branches[0].is_smooth()
    }

    /// `m(C) = sum_i m(C_i)`.
    pub fn multiplicity(&self) -> u64 {
        self.branches.iter().map(|b| b.multiplicity()).sum()
    }

    /// `(C_i, C_j)_0 = d_ij m_i m_j` for `i != j`.
    pub fn intersection(&self, i: usize, j: usize) -> u64 {
        assert!(i != j, "self-intersection of a branch is not defined");
        let mm = self.branches[i].multiplicity() * self.branches[j].multiplicity();
        self.contact
            .get(i, j)
            .scale(mm)
            .to_u64()
            .expect("integral intersection number")
    }

    /// Tangent classes: branches `i, j` share a tangent iff `d_ij > 1`.
    pub fn tangent_classes(&self) -> Vec<Vec<usize>> {
        let r = self.branches.len();
        let mut assigned = vec![false; r];
        let mut classes = Vec::new();
        for i in 0..r {
            if assigned[i] {
                continue;
            }
            let class: Vec<usize> = (i..r)
                .filter(|&j| j == i || (!assigned[j] && *self.contact.get(i, j) > ExtRational::one()))
                .collect();
            for &j in &class {
                assigned[j] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Number of tangents `t(C)`.
    pub fn tangent_count(&self) -> usize {
        self.tangent_classes().len()
    }

    pub fn is_unitangent(&self) -> bool {
        self.tangent_count() == 1
    }

    /// `min_{i != j} d(C_i, C_j)`, or `+inf` for a branch.
    pub fn min_pair_contact(&self) -> ExtRational {
        crate::logdist::inner_contact(&self.contact, &(0..self.branches.len()).collect::<Vec<_>>()).0
    }

    /// `d(C) = min(min_i d(C_i), min_{i,j} d(C_i, C_j))`.
    pub fn contact_exponent(&self) -> ExtRational {
        let branch_side = self
            .branches
            .iter()
            .map(|b| b.contact_exponent())
            .min()
            .expect("nonempty");
        branch_side.min(self.min_pair_contact())
    }

    /// `d_k(C) = min(min_i d_k(C_i), min_{i,j} d(C_i, C_j))`, where a branch
    /// with fewer than `k` Zariski pairs contributes `+inf`.
    pub fn higher_contact_exponent(&self, k: usize) -> Result<ExtRational, CurveError> {
        if k == 0 {
            return Err(CurveError::KOutOfRange);
        }
        let branch_side = self
            .branches
            .iter()
            .map(|b| b.higher_contact_or_infinite(k))
            .min()
            .expect("nonempty");
        Ok(branch_side.min(self.min_pair_contact()))
    }

    /// Largest Zariski pair count over the branches.
    pub fn max_genus(&self) -> usize {
        self.branches.iter().map(|b| b.genus()).max().unwrap_or(0)
    }

    /// `mu(C) = sum mu(C_i) + 2 sum_{i<j} (C_i, C_j)_0 - r + 1`.
    pub fn milnor(&self) -> u64 {
        let r = self.branches.len() as u64;
        let branch_part: u64 = self.branches.iter().map(|b| b.milnor()).sum();
        let mut pair_part = 0u64;
        for i in 0..self.branches.len() {
            for j in i + 1..self.branches.len() {
                pair_part += self.intersection(i, j);
            }
        }
        branch_part + 2 * pair_part + 1 - r
    }

    /// Conductor degree `c(C) = mu(C) + r - 1`.
    pub fn conductor_degree(&self) -> u64 {
        self.milnor() + self.branches.len() as u64 - 1
    }

    pub fn milnor_bound_report(&self) -> Result<MilnorBoundReport, CurveError> {
        if self.is_smooth_branch() {
            return Err(CurveError::SmoothBranch);
        }
        let mu = self.milnor();
        let m = self.multiplicity();
        let d = self.contact_exponent();
        let dq = to_rational(&d);
        let mq = BigRational::from_integer(BigInt::from(m));
        let one = BigRational::one();
        let bound = (&dq * &mq - &one) * (&mq - &one);
        let attained = BigRational::from_integer(BigInt::from(mu)) == bound;
        let r = self.branches.len();
        let e1_holds = (0..r).all(|i| (i + 1..r).all(|j| *self.contact.get(i, j) == d));
        let e2_holds = self
            .branches
            .iter()
            .filter(|b| !b.is_smooth())
            .all(|b| b.genus() == 1 && b.contact_exponent() == d);
        Ok(MilnorBoundReport {
            mu,
            m,
            d,
            bound: ExtRational::from(bound),
            attained,
            e1_holds,
            e2_holds,
        })
    }

    /// Minimal polar invariant `alpha(C) = m(C) d(C)`.
    pub fn minimal_polar_invariant(&self) -> Result<ExtRational, CurveError> {
        if self.is_smooth_branch() {
            return Err(CurveError::SmoothBranch);
        }
        Ok(self.contact_exponent().scale(self.multiplicity()))
    }

    pub fn eggers_classify(&self) -> Result<EggersType, CurveError> {
        eggers::classify(self)
    }

    /// The curve on a subset of branches, in the given order.
    pub fn subcurve(&self, indices: &[usize]) -> ReducedCurve {
        ReducedCurve {
            branches: indices.iter().map(|&i| self.branches[i].clone()).collect(),
            contact: self.contact.submatrix(indices),
        }
    }

    /// Reorder branches: branch `k` of the result is branch `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> ReducedCurve {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        assert!(sorted == (0..self.branches.len()).collect::<Vec<_>>(), "not a permutation");
        let mut out = self.subcurve(perm);
        out.contact = DistanceMatrix::unlabelled(out.contact.rows().to_vec()).expect("square");
        out
    }

    /// Union with a further branch, given its contacts with the existing ones.
    pub fn with_branch(&self, branch: BranchSemigroup, contacts: &[ExtRational]) -> Result<ReducedCurve, CurveError> {
        let r = self.branches.len();
        if contacts.len() != r {
            return Err(CurveError::SizeMismatch {
                branches: r + 1,
                matrix: contacts.len() + 1,
            });
        }
        let mut branches = self.branches.clone();
        branches.push(branch);
        let contact = DistanceMatrix::from_fn(r + 1, |i, j| {
            if j == r {
                contacts[i].clone()
            } else {
                self.contact.get(i, j).clone()
            }
        });
        ReducedCurve::new(branches, contact)
    }

    /// A finite family standing in for the branches with at most `k - 1`
    /// Zariski pairs: for every branch with at least `k` pairs, a new point
    /// attached at height `d_k(C_i)`; every other branch is itself a member.
    /// Returns the extended matrix, the curve indices and the family indices.
    pub fn contact_family_stand_in(&self, k: usize) -> (DistanceMatrix, Vec<usize>, Vec<usize>) {
        assert!(k >= 1);
        let mut m = self.contact.clone();
        let curve: Vec<usize> = (0..self.branches.len()).collect();
        let mut family = Vec::new();
        for (i, b) in self.branches.iter().enumerate() {
            match b.higher_contact(k) {
                Ok(height) => family.push(m.attach(i, height, format!("W{i}"))),
                Err(_) => family.push(i),
            }
        }
        (m, curve, family)
    }

    /// `d_k(C)` read off the finite stand-in family through the log-distance
    /// engine; agrees with [`ReducedCurve::higher_contact_exponent`].
    pub fn higher_contact_via_family(&self, k: usize) -> ExtRational {
        let (m, curve, family) = self.contact_family_stand_in(k);
        let s = FamilyScenario::new(&m, curve, family).expect("nonempty");
        crate::logdist::delta_curve_family(&s).value
    }

    /// Equisingularity test. Returns the lexicographically smallest
    /// permutation `p` such that branch `i` of `self` matches branch `p[i]` of
    /// `other` in semigroup and every pairwise intersection number.
    pub fn equisingular(&self, other: &ReducedCurve) -> Result<Option<Vec<usize>>, CurveError> {
        let r = self.branches.len();
        if r > MAX_EQUISINGULAR_BRANCHES {
            return Err(CurveError::TooManyBranches(r));
        }
        if other.branches.len() > MAX_EQUISINGULAR_BRANCHES {
            return Err(CurveError::TooManyBranches(other.branches.len()));
        }
        if other.branches.len() != r {
            return Ok(None);
        }
        let mut a: Vec<&BranchSemigroup> = self.branches.iter().collect();
        let mut b: Vec<&BranchSemigroup> = other.branches.iter().collect();
        a.sort();
        b.sort();
        if a != b {
            return Ok(None);
        }
        let mut perm = Vec::with_capacity(r);
        let mut used = vec![false; r];
        Ok(self.extend_match(other, &mut perm, &mut used).then_some(perm))
    }

    fn extend_match(&self, other: &ReducedCurve, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        if i == self.branches.len() {
            return true;
        }
        for j in 0..used.len() {
            if used[j] || self.branches[i] != other.branches[j] {
                continue;
            }
            let consistent = perm
                .iter()
                .enumerate()
                .all(|(a, &pa)| self.contact.get(a, i) == other.contact.get(pa, j));
            if !consistent {
                continue;
            }
            used[j] = true;
            perm.push(j);
            if self.extend_match(other, perm, used) {
                return true;
            }
            perm.pop();
            used[j] = false;
        }
        false
    }
}

/// `x` as `u64` if it is a nonnegative integer rational.
pub(crate) fn rational_to_u64(x: &BigRational) -> Option<u64> {
    x.is_integer().then(|| x.to_integer().to_u64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(v: &[u64]) -> BranchSemigroup {
        BranchSemigroup::new(v.to_vec()).unwrap()
    }

    fn q(s: &str) -> ExtRational {
        s.parse().unwrap()
    }

    fn two_cusps() -> ReducedCurve {
        ReducedCurve::equal_contact(vec![sg(&[2, 3]), sg(&[2, 3])], q("3/2")).unwrap()
    }

    fn transverse_cusps() -> ReducedCurve {
        ReducedCurve::equal_contact(vec![sg(&[2, 3]), sg(&[2, 3])], q("1")).unwrap()
    }

    #[test]
    fn new_curve_examples() {
        let c = two_cusps();
        assert_eq!(c.intersection(0, 1), 6);
        assert!(ReducedCurve::equal_contact(vec![sg(&[2, 3]), sg(&[2, 3])], q("5/4")).is_ok());
        let err = ReducedCurve::equal_contact(vec![sg(&[2, 3]), sg(&[2, 3])], q("7/8")).unwrap_err();
        let CurveError::Invalid(v) = err else { panic!() };
        assert!(v.contains(&CurveViolation::NonIntegralIntersection { i: 0, j: 1 }));
        assert!(v.contains(&CurveViolation::ContactBelowOne { i: 0, j: 1 }));
        assert_eq!(ReducedCurve::branch(sg(&[4, 6, 13])).branch_count(), 1);
    }

    #[test]
    fn new_curve_rejects_non_ultrametric() {
        let m = DistanceMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 1) => q("1"),
            (0, 2) => q("3"),
            _ => q("2"),
        });
        let err = ReducedCurve::new(vec![sg(&[1]), sg(&[1]), sg(&[1])], m).unwrap_err();
        assert!(matches!(err, CurveError::Invalid(ref v)
            if matches!(v[0], CurveViolation::UltrametricViolation(AxiomViolation::Ultrametric { .. }))));
        assert!(matches!(
            ReducedCurve::new(vec![sg(&[1])], DistanceMatrix::empty()),
            Err(CurveError::SizeMismatch { .. })
        ));
        assert!(matches!(
            ReducedCurve::new(vec![], DistanceMatrix::empty()),
            Err(CurveError::NoBranches)
        ));
    }

    #[test]
    fn multiplicity_and_tangents() {
        assert_eq!(two_cusps().multiplicity(), 4);
        assert_eq!(ReducedCurve::branch(sg(&[4, 6, 13])).multiplicity(), 4);
        let triple = ReducedCurve::equal_contact(vec![sg(&[1]); 3], q("1")).unwrap();
        assert_eq!(triple.multiplicity(), 3);
        assert_eq!(two_cusps().tangent_count(), 1);
        assert_eq!(transverse_cusps().tangent_count(), 2);
        assert_eq!(transverse_cusps().tangent_classes(), vec![vec![0], vec![1]]);
        assert_eq!(ReducedCurve::branch(sg(&[2, 3])).tangent_count(), 1);
    }

    #[test]
    fn contact_exponent_examples() {
        assert_eq!(two_cusps().contact_exponent(), q("3/2"));
        let lines = ReducedCurve::equal_contact(vec![sg(&[1]), sg(&[1])], q("2")).unwrap();
        assert_eq!(lines.contact_exponent(), q("2"));
        assert_eq!(transverse_cusps().contact_exponent(), q("1"));
    }

    #[test]
    fn higher_contact_examples() {
        let b = ReducedCurve::branch(sg(&[4, 6, 13]));
        assert_eq!(b.higher_contact_exponent(2).unwrap(), q("13/8"));
        assert_eq!(two_cusps().higher_contact_exponent(2).unwrap(), q("3/2"));
        assert_eq!(two_cusps().higher_contact_exponent(1).unwrap(), two_cusps().contact_exponent());
        assert_eq!(b.higher_contact_exponent(0), Err(CurveError::KOutOfRange));
        assert_eq!(b.higher_contact_exponent(3).unwrap(), ExtRational::Infinity);
    }

    #[test]
    fn milnor_and_conductor_examples() {
        assert_eq!(two_cusps().milnor(), 15);
        assert_eq!(ReducedCurve::branch(sg(&[1])).milnor(), 0);
        assert_eq!(transverse_cusps().milnor(), 11);
        assert_eq!(two_cusps().conductor_degree(), 16);
        assert_eq!(ReducedCurve::branch(sg(&[1])).conductor_degree(), 0);
        assert_eq!(ReducedCurve::branch(sg(&[2, 3])).conductor_degree(), 2);
    }

    #[test]
    fn milnor_bound_examples() {
        let r = two_cusps().milnor_bound_report().unwrap();
        assert_eq!(r.bound, q("15"));
        assert!(r.attained && r.e1_holds && r.e2_holds);

        let r = ReducedCurve::branch(sg(&[4, 6, 13])).milnor_bound_report().unwrap();
        assert_eq!((r.mu, r.bound.clone()), (16, q("15")));
        assert!(!r.attained && r.e1_holds && !r.e2_holds);

        assert_eq!(
            ReducedCurve::branch(sg(&[1])).milnor_bound_report(),
            Err(CurveError::SmoothBranch)
        );
    }

    #[test]
    fn minimal_polar_examples() {
        assert_eq!(ReducedCurve::branch(sg(&[2, 3])).minimal_polar_invariant().unwrap(), q("3"));
        assert_eq!(two_cusps().minimal_polar_invariant().unwrap(), q("6"));
        assert_eq!(ReducedCurve::branch(sg(&[4, 6, 13])).minimal_polar_invariant().unwrap(), q("6"));
    }

    #[test]
    fn equisingular_examples() {
        let c = two_cusps();
        assert_eq!(c.equisingular(&c).unwrap(), Some(vec![0, 1]));
        let mixed = ReducedCurve::new(
            vec![sg(&[2, 3]), sg(&[1])],
            DistanceMatrix::from_fn(2, |_, _| q("3/2")),
        )
        .unwrap();
        let swapped = mixed.permuted(&[1, 0]);
        assert_eq!(mixed.equisingular(&swapped).unwrap(), Some(vec![1, 0]));
        let a = ReducedCurve::branch(sg(&[2, 3]));
        let b = ReducedCurve::branch(sg(&[2, 5]));
        assert_eq!(a.equisingular(&b).unwrap(), None);
        let many = ReducedCurve::equal_contact(vec![sg(&[1]); 11], q("1")).unwrap();
        assert_eq!(many.equisingular(&many), Err(CurveError::TooManyBranches(11)));
    }

    #[test]
    fn family_stand_in_matches_closed_formula() {
        let mixed = ReducedCurve::new(
            vec![sg(&[4, 6, 13]), sg(&[2, 3]), sg(&[1])],
            DistanceMatrix::from_fn(3, |i, j| match (i, j) {
                (0, 1) => q("3/2"),
                _ => q("1"),
            }),
        )
        .unwrap();
        for k in 1..=3 {
            assert_eq!(
                mixed.higher_contact_via_family(k),
                mixed.higher_contact_exponent(k).unwrap(),
                "k = {k}"
            );
        }
    }

    #[test]
    fn json_roundtrip() {
        let c: ReducedCurve =
            serde_json::from_str(r#"{"branches":[[2,3],[2,3]],"contact":[["inf","3/2"],["3/2","inf"]]}"#)
                .unwrap();
        assert_eq!(c, two_cusps());
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"branches":[[2,3],[2,3]],"contact":[["inf","3/2"],["3/2","inf"]]}"#);
        let b: ReducedCurve = serde_json::from_str(r#"{"branches":[[4,6,13]]}"#).unwrap();
        assert_eq!(b.milnor(), 16);
    }
}
