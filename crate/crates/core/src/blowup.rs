//! Strict quadratic transforms at the level of equisingularity data.
//!
//! A branch is blown up through its multiplicity sequence: drop the first
//! entry and read the semigroup back from what remains. A unitangent curve
//! is blown up branchwise, with contacts updated by Noether's formula
//! `(C, D)_0 = m(C) m(D) + (C^, D^)_0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::curve::{CurveError, ReducedCurve};
use crate::logdist::{DistanceMatrix, ExtRational};
use crate::semigroup::{BranchSemigroup, CharExponents, SemigroupError};

/// Recursion guard for [`pham_milnor`].
pub const MAX_PHAM_DEPTH: usize = 64;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BlowupError {
    #[error("the input is a smooth branch")]
    SmoothInput,
    #[error("the curve has {} tangents; blow up each tangent class {classes:?} separately", classes.len())]
    NotUnitangent { classes: Vec<Vec<usize>> },
    #[error("invalid multiplicity sequence: {0}")]
    InvalidSequence(String),
    #[error("transformed data is not a valid curve, so the input is not realizable: {0}")]
    NotRealizable(CurveError),
    #[error("assertion failed: {0}")]
    AssertionFailure(String),
    #[error("recursion depth {MAX_PHAM_DEPTH} exceeded")]
    RecursionDepthExceeded,
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Multiplicities of a branch at the successive infinitely near points of
/// its resolution, ending with the run of 1s produced by the last Euclidean
/// step. The smooth branch has sequence `(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MultiplicitySequence {
    values: Vec<u64>,
}

fn euclid_runs(mut a: u64, mut b: u64, out: &mut Vec<u64>) {
    while b > 0 {
        for _ in 0..a / b {
            out.push(b);
        }
        (a, b) = (b, a % b);
    }
}

fn runs(values: &[u64]) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((val, count)) if *val == v => *count += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

fn invalid(msg: impl Into<String>) -> BlowupError {
    BlowupError::InvalidSequence(msg.into())
}

impl MultiplicitySequence {
    /// Euclidean algorithm on `(beta_k - beta_{k-1}, e_{k-1})` stage by stage,
    /// with `beta_{-1} = 0`.
    pub fn of(s: &BranchSemigroup) -> Self {
        if s.is_smooth() {
            return Self { values: vec![1] };
        }
        let beta = s.to_char_exponents();
        let b = beta.exponents();
        let e = beta.gcd_sequence();
        let mut values = Vec::new();
        for k in 1..b.len() {
            let prev = if k == 1 { 0 } else { b[k - 1] };
            euclid_runs(b[k] - prev, e[k - 1], &mut values);
        }
        Self { values }
    }

    /// Accepts exactly the canonical sequences produced by [`Self::of`].
    pub fn new(values: Vec<u64>) -> Result<Self, BlowupError> {
        let s = reconstruct(&values)?;
        let canonical = Self::of(&s);
        if canonical.values != values {
            return Err(invalid(format!(
                "not canonical; the sequence of {s} is {:?}",
                canonical.values
            )));
        }
        Ok(canonical)
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `sum m_i (m_i - 1)`; equals the conductor.
    pub fn conductor_sum(&self) -> u64 {
        self.values.iter().map(|m| m * (m - 1)).sum()
    }

    pub fn semigroup(&self) -> BranchSemigroup {
        reconstruct(&self.values).expect("canonical sequences reconstruct")
    }
}

/// The semigroup of the branch with the given multiplicity sequence. A
/// sequence starting with 1 is smooth. Otherwise the leading entry is the
/// multiplicity and the runs are parsed as concatenated Euclidean
/// algorithms: a run whose value divides the previous value closes a stage,
/// and its surplus count opens the next.
pub fn reconstruct(values: &[u64]) -> Result<BranchSemigroup, BlowupError> {
    let Some(&n) = values.first() else {
        return Err(invalid("empty sequence"));
    };
    if n == 0 {
        return Err(invalid("zero multiplicity"));
    }
    if n == 1 {
        if values.iter().any(|&v| v != 1) {
            return Err(invalid("multiplicity rises after a smooth point"));
        }
        return Ok(BranchSemigroup::smooth());
    }
    let r = runs(values);
    let mut beta = vec![n];
    let mut prev_beta = 0u64;
    let mut idx = 0usize;
    let mut carry = r[0].1;
    let mut e_prev = n;
    loop {
        let Some(&(r1, _)) = r.get(idx + 1) else {
            return Err(invalid("a stage has no remainder run"));
        };
        if r1 >= e_prev {
            return Err(invalid("runs must decrease"));
        }
        let a = carry * e_prev + r1;
        let mut prev_val = e_prev;
        let mut cur = idx + 1;
        let (e_k, surplus) = loop {
            let (b, c) = r[cur];
            if prev_val % b == 0 {
                let q = prev_val / b;
                if c < q {
                    return Err(invalid(format!("run of {b} is shorter than {q}")));
                }
                break (b, c - q);
            }
            if c != prev_val / b {
                return Err(invalid(format!("run of {b} should have length {}", prev_val / b)));
            }
            let rem = prev_val % b;
            match r.get(cur + 1) {
                Some(&(next, _)) if next == rem => {}
                _ => return Err(invalid(format!("expected a run of {rem} after the run of {b}"))),
            }
            prev_val = b;
            cur += 1;
        };
        if e_k == e_prev {
            return Err(invalid("a stage without a gcd drop"));
        }
        prev_beta += a;
        beta.push(prev_beta);
        idx = cur;
        carry = surplus;
        e_prev = e_k;
        if e_k == 1 {
            if surplus != 0 || cur + 1 != r.len() {
                return Err(invalid("entries beyond the final run of 1s"));
            }
            break;
        }
        if cur + 1 == r.len() {
            return Err(invalid("the sequence ends above multiplicity 1"));
        }
    }
    Ok(CharExponents::new(beta)?.to_semigroup()?)
}

/// Strict transform of a singular branch.
pub fn blowup_branch(s: &BranchSemigroup) -> Result<BranchSemigroup, BlowupError> {
    if s.is_smooth() {
        return Err(BlowupError::SmoothInput);
    }
    let seq = MultiplicitySequence::of(s);
    let out = reconstruct(&seq.values[1..])?;
    let v = s.generators();
    let (v0, v1) = (v[0], v[1]);
    assert!(v1 - v0 != v0, "minimality forbids v1 = 2 v0");
    let conforms = if v0 < v1 - v0 {
        out.generators().len() >= 2 && out.generators()[0] == v0 && out.generators()[1] == v1 - v0
    } else {
        out.multiplicity() == v1 - v0
    };
    if !conforms {
        return Err(BlowupError::AssertionFailure(format!(
            "the transform {out} of {s} disagrees with the head generators"
        )));
    }
    Ok(out)
}

/// Strict transform of a singular branch computed from characteristic
/// exponents: a shift when `beta1 - beta0 > beta0`, otherwise the inversion
/// formula after exchanging coordinates. Independent of [`blowup_branch`].
pub fn blowup_char_exponents(s: &BranchSemigroup) -> Result<BranchSemigroup, BlowupError> {
    if s.is_smooth() {
        return Err(BlowupError::SmoothInput);
    }
    let beta = s.to_char_exponents();
    let b = beta.exponents();
    let n = b[0];
    let s1 = b[1] - n;
    let next = if s1 > n {
        let mut v = vec![n];
        v.extend(b[1..].iter().map(|x| x - n));
        v
    } else {
        let mut v = vec![s1];
        if n % s1 != 0 {
            v.push(n);
        }
        v.extend(b[2..].iter().map(|x| x - s1));
        v
    };
    Ok(CharExponents::new(next)?.to_semigroup()?)
}

/// The resolution track `S, S^, S^^, ..., <1>`.
pub fn resolve_branch(s: &BranchSemigroup) -> Result<Vec<BranchSemigroup>, BlowupError> {
    let mut track = vec![s.clone()];
    while !track.last().unwrap().is_smooth() {
        let next = blowup_branch(track.last().unwrap())?;
        track.push(next);
    }
    Ok(track)
}

fn frac(num: u64, den: u64) -> ExtRational {
    ExtRational::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// Strict transform of a singular unitangent curve.
pub fn blowup_curve(c: &ReducedCurve) -> Result<ReducedCurve, BlowupError> {
    if c.is_smooth_branch() {
        return Err(BlowupError::SmoothInput);
    }
    if !c.is_unitangent() {
        return Err(BlowupError::NotUnitangent { classes: c.tangent_classes() });
    }
    let branches: Vec<BranchSemigroup> = c
        .branches()
        .iter()
        .map(|b| if b.is_smooth() { Ok(b.clone()) } else { blowup_branch(b) })
        .collect::<Result<_, _>>()?;
    let r = branches.len();
    let mut bad = None;
    let matrix = DistanceMatrix::from_fn(r, |i, j| {
        let mm = c.branches()[i].multiplicity() * c.branches()[j].multiplicity();
        let new_mm = branches[i].multiplicity() * branches[j].multiplicity();
        match c.intersection(i, j).checked_sub(mm) {
            Some(rest) => frac(rest, new_mm),
            None => {
                bad = Some((i, j));
                ExtRational::zero()
            }
        }
    });
    if let Some((i, j)) = bad {
        return Err(BlowupError::AssertionFailure(format!(
            "branches {i},{j} share the tangent but meet with multiplicity below m_i m_j"
        )));
    }
    ReducedCurve::new(branches, matrix).map_err(BlowupError::NotRealizable)
}

/// `(C_i, C_j)_0 = m_i m_j + (C^_i, C^_j)_0` recomputed on both sides.
pub fn noether_holds(before: &ReducedCurve, after: &ReducedCurve) -> bool {
    let r = before.branch_count();
    r == after.branch_count()
        && (0..r).all(|i| {
            (i + 1..r).all(|j| {
                let mm = before.branches()[i].multiplicity() * before.branches()[j].multiplicity();
                before.intersection(i, j) == mm + after.intersection(i, j)
            })
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HironakaCase {
    /// `d(C) < 2`: the multiplicity drops.
    I,
    /// `d(C) >= 2`: the multiplicity stays and `d` drops by one.
    Ii,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HironakaReport {
    pub case: HironakaCase,
    pub m_before: u64,
    pub m_after: u64,
    pub d_before: ExtRational,
    pub d_after: ExtRational,
    #[serde(skip)]
    pub transform: ReducedCurve,
}

/// Blow up a singular unitangent curve and verify the dichotomy on `d(C) < 2`.
pub fn hironaka_step(c: &ReducedCurve) -> Result<HironakaReport, BlowupError> {
    let transform = blowup_curve(c)?;
    let m_before = c.multiplicity();
    let m_after = transform.multiplicity();
    let d_before = c.contact_exponent();
    let d_after = transform.contact_exponent();
    let case = if d_before < ExtRational::from_integer(2) { HironakaCase::I } else { HironakaCase::Ii };
    let holds = match case {
        HironakaCase::I => m_after < m_before,
        HironakaCase::Ii => m_after == m_before && d_before.checked_sub_int(1).as_ref() == Some(&d_after),
    };
    if !holds {
        return Err(BlowupError::AssertionFailure(format!(
            "case {case:?}: m {m_before} -> {m_after}, d {d_before} -> {d_after}"
        )));
    }
    Ok(HironakaReport { case, m_before, m_after, d_before, d_after, transform })
}

/// Contact of a smooth branch `W` with a curve, before and after blowing up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalContactReport {
    pub d_curve: ExtRational,
    pub d_curve_w: ExtRational,
    pub d_transform: ExtRational,
    pub d_transform_w: ExtRational,
    pub maximal_before: bool,
    pub maximal_after: bool,
    /// Some branch multiplicity dropped in the blowup.
    pub multiplicity_dropped: bool,
}

impl MaximalContactReport {
    /// `d(C, W) = d(C^, W^) + 1`, and maximal contact survives.
    pub fn holds(&self) -> bool {
        self.d_curve_w.checked_sub_int(1).as_ref() == Some(&self.d_transform_w)
            && (!self.maximal_before || self.maximal_after)
    }
}

fn contact_with(c: &ReducedCurve, w: usize) -> ExtRational {
    (0..c.branch_count())
        .filter(|&i| i != w)
        .map(|i| c.contact_between(i, w).clone())
        .min()
        .unwrap_or(ExtRational::Infinity)
}

/// Stability of contact with a smooth tangent branch `W` (branch `w` of the
/// extended curve) for a curve `C` with `d(C) >= 2`.
pub fn maximal_contact_stability(extended: &ReducedCurve, w: usize) -> Result<MaximalContactReport, BlowupError> {
    if !extended.branches()[w].is_smooth() {
        return Err(BlowupError::AssertionFailure("the adjoined branch must be smooth".into()));
    }
    let rest: Vec<usize> = (0..extended.branch_count()).filter(|&i| i != w).collect();
    let curve = extended.subcurve(&rest);
    let d_curve = curve.contact_exponent();
    if d_curve < ExtRational::from_integer(2) {
        return Err(BlowupError::AssertionFailure("the statement needs d(C) >= 2".into()));
    }
    let d_curve_w = contact_with(extended, w);
    let blown = blowup_curve(extended)?;
    let transform = blown.subcurve(&rest);
    let d_transform = transform.contact_exponent();
    let d_transform_w = contact_with(&blown, w);
    let multiplicity_dropped = rest
        .iter()
        .any(|&i| blown.branches()[i].multiplicity() < extended.branches()[i].multiplicity());
    Ok(MaximalContactReport {
        maximal_before: d_curve_w == d_curve,
        maximal_after: d_transform_w == d_transform,
        d_curve,
        d_curve_w,
        d_transform,
        d_transform_w,
        multiplicity_dropped,
    })
}

/// Milnor number by Pham's recursion over tangent classes:
/// `mu(C) = m(m - 1) + sum_k mu(C^_k) - t + 1`.
pub fn pham_milnor(c: &ReducedCurve) -> Result<u64, BlowupError> {
    pham(c, 0)
}

fn pham(c: &ReducedCurve, depth: usize) -> Result<u64, BlowupError> {
    if depth > MAX_PHAM_DEPTH {
        return Err(BlowupError::RecursionDepthExceeded);
    }
    if c.is_smooth_branch() {
        return Ok(0);
    }
    let m = c.multiplicity();
    let classes = c.tangent_classes();
    let t = classes.len() as u64;
    let mut total = m * (m - 1) + 1;
    for class in &classes {
        let part = c.subcurve(class);
        if !part.is_smooth_branch() {
            total += pham(&blowup_curve(&part)?, depth + 1)?;
        }
    }
    total
        .checked_sub(t)
        .ok_or_else(|| BlowupError::AssertionFailure("negative Milnor number".into()))
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

    #[test]
    fn multiplicity_sequence_examples() {
        assert_eq!(MultiplicitySequence::of(&sg(&[2, 3])).values(), &[2, 1, 1]);
        assert_eq!(MultiplicitySequence::of(&sg(&[4, 6, 13])).values(), &[4, 2, 2, 1, 1]);
        assert_eq!(MultiplicitySequence::of(&sg(&[1])).values(), &[1]);
        assert_eq!(MultiplicitySequence::of(&sg(&[4, 9])).values(), &[4, 4, 1, 1, 1, 1]);
        assert_eq!(MultiplicitySequence::of(&sg(&[4, 6, 13])).conductor_sum(), 16);
    }

    #[test]
    fn reconstruction_round_trips_and_rejects() {
        for s in [&[2u64, 3][..], &[4, 6, 13], &[4, 9], &[6, 9, 19], &[1], &[8, 12, 26, 53]] {
            let s = sg(s);
            let seq = MultiplicitySequence::of(&s);
            assert_eq!(MultiplicitySequence::new(seq.values().to_vec()).unwrap().semigroup(), s);
        }
        assert!(MultiplicitySequence::new(vec![2, 1]).is_err());
        assert!(MultiplicitySequence::new(vec![2, 2]).is_err());
        assert!(MultiplicitySequence::new(vec![3, 2, 2, 1]).is_err());
        assert!(MultiplicitySequence::new(vec![]).is_err());
        assert!(MultiplicitySequence::new(vec![2, 1, 1, 1]).is_err());
    }

    #[test]
    fn blowup_branch_examples() {
        assert_eq!(blowup_branch(&sg(&[4, 9])).unwrap(), sg(&[4, 5]));
        assert_eq!(blowup_branch(&sg(&[2, 3])).unwrap(), sg(&[1]));
        assert_eq!(blowup_branch(&sg(&[4, 6, 13])).unwrap(), sg(&[2, 5]));
        assert_eq!(blowup_branch(&sg(&[1])), Err(BlowupError::SmoothInput));
        for s in [&[4u64, 9][..], &[2, 3], &[4, 6, 13], &[6, 9, 19], &[3, 5], &[8, 12, 26, 53]] {
            assert_eq!(blowup_branch(&sg(s)).unwrap(), blowup_char_exponents(&sg(s)).unwrap());
        }
    }

    #[test]
    fn resolve_branch_examples() {
        assert_eq!(resolve_branch(&sg(&[2, 3])).unwrap(), vec![sg(&[2, 3]), sg(&[1])]);
        assert_eq!(
            resolve_branch(&sg(&[4, 6, 13])).unwrap(),
            vec![sg(&[4, 6, 13]), sg(&[2, 5]), sg(&[2, 3]), sg(&[1])]
        );
        assert_eq!(resolve_branch(&sg(&[1])).unwrap(), vec![sg(&[1])]);
    }

    fn two_cusps() -> ReducedCurve {
        ReducedCurve::equal_contact(vec![sg(&[2, 3]); 2], q("3/2")).unwrap()
    }

    #[test]
    fn blowup_curve_examples() {
        let b = blowup_curve(&two_cusps()).unwrap();
        assert_eq!(b.branches(), &[sg(&[1]), sg(&[1])]);
        assert_eq!(*b.contact_between(0, 1), q("2"));
        assert!(noether_holds(&two_cusps(), &b));

        let single = blowup_curve(&ReducedCurve::branch(sg(&[4, 9]))).unwrap();
        assert_eq!(single.branches(), &[sg(&[4, 5])]);

        let lc = ReducedCurve::new(vec![sg(&[2, 3]), sg(&[1])], DistanceMatrix::from_fn(2, |_, _| q("3/2"))).unwrap();
        let b = blowup_curve(&lc).unwrap();
        assert_eq!(*b.contact_between(0, 1), q("1"));

        let transverse = ReducedCurve::equal_contact(vec![sg(&[2, 3]); 2], q("1")).unwrap();
        assert!(matches!(blowup_curve(&transverse), Err(BlowupError::NotUnitangent { .. })));
    }

    #[test]
    fn hironaka_examples() {
        let r = hironaka_step(&ReducedCurve::branch(sg(&[4, 9]))).unwrap();
        assert_eq!((r.case, r.m_after, r.d_after.clone()), (HironakaCase::Ii, 4, q("5/4")));
        let r = hironaka_step(&two_cusps()).unwrap();
        assert_eq!((r.case, r.m_after), (HironakaCase::I, 2));
        let r = hironaka_step(&ReducedCurve::branch(sg(&[2, 3]))).unwrap();
        assert_eq!((r.case, r.m_after), (HironakaCase::I, 1));
    }

    #[test]
    fn pham_examples() {
        let transverse = ReducedCurve::equal_contact(vec![sg(&[2, 3]); 2], q("1")).unwrap();
        assert_eq!(pham_milnor(&transverse).unwrap(), 11);
        assert_eq!(pham_milnor(&two_cusps()).unwrap(), 15);
        for r in 1..=6 {
            let c = ReducedCurve::equal_contact(vec![sg(&[1]); r], q("1")).unwrap();
            assert_eq!(pham_milnor(&c).unwrap(), ((r - 1) * (r - 1)) as u64);
        }
        assert_eq!(pham_milnor(&ReducedCurve::branch(sg(&[4, 6, 13]))).unwrap(), 16);
    }

    #[test]
    fn maximal_contact_example() {
        // <4,9> with the line y = 0 (the branch is y^4 = x^9): contact 9/4.
        let ext = ReducedCurve::new(vec![sg(&[4, 9]), sg(&[1])], DistanceMatrix::from_fn(2, |_, _| q("9/4"))).unwrap();
        let r = maximal_contact_stability(&ext, 1).unwrap();
        assert!(r.holds() && r.maximal_before && r.maximal_after);
        assert_eq!(r.d_transform_w, q("5/4"));
    }
}
