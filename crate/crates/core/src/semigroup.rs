//! Value semigroups of plane branches and their numerical invariants.
//!
//! A branch is recorded by the minimal generators `v0 < v1 < ... < vg` of its
//! semigroup. The smooth branch is `<1>`. Everything here is exact integer
//! arithmetic; membership questions are answered by dynamic programming.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logdist::ExtRational;

/// Generators above this bound are rejected: the membership tables are dense.
pub const MAX_GENERATOR: u64 = 1_000_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("empty generator sequence")]
    Empty,
    #[error("generator {0} is not positive")]
    NonPositive(usize),
    #[error("generators are not strictly increasing at index {0}")]
    NotIncreasing(usize),
    #[error("generators exceed the supported bound {MAX_GENERATOR}")]
    TooLarge,
    #[error("gcd of the generators is {0}, expected 1")]
    GcdNotOne(u64),
    #[error("v{0} lies in the semigroup generated by the previous generators")]
    NotMinimal(usize),
    #[error("n{0} = e{prev}/e{0} is less than 2", prev = .0 - 1)]
    NkLessThanTwo(usize),
    #[error("not strongly increasing: n{prev}*v{prev} >= v{0}", prev = .0 - 1)]
    NotStronglyIncreasing(usize),
    #[error("contact order k = {k} outside 1..={genus}")]
    KOutOfRange { k: usize, genus: usize },
    #[error("smooth branch has no polar invariants")]
    SmoothBranch,
    #[error("characteristic sequence invalid at index {0}")]
    InvalidCharSequence(usize),
}

/// Minimal generators of the semigroup of a plane branch.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct BranchSemigroup {
    generators: Vec<u64>,
}

/// A Zariski pair `(m_k, n_k) = (v_k / e_k, e_{k-1} / e_k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZariskiPair {
    pub m: u64,
    pub n: u64,
}

/// Sorted membership table of `N v0 + ... + N vk` over `0..=limit`.
fn membership_table(generators: &[u64], limit: u64) -> Vec<bool> {
    let len = limit as usize + 1;
    let mut reach = vec![false; len];
    reach[0] = true;
    for &g in generators {
        let g = g as usize;
        for n in g..len {
            if reach[n - g] {
                reach[n] = true;
            }
        }
    }
    reach
}

fn gcd_prefixes(values: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0u64;
    for &v in values {
        acc = acc.gcd(&v);
        out.push(acc);
    }
    out
}

impl BranchSemigroup {
    /// Validate a candidate generator sequence.
    pub fn new(candidate: Vec<u64>) -> Result<Self, SemigroupError> {
        if candidate.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if let Some(i) = candidate.iter().position(|&v| v == 0) {
            return Err(SemigroupError::NonPositive(i));
        }
        if let Some(i) = (1..candidate.len()).find(|&i| candidate[i] <= candidate[i - 1]) {
            return Err(SemigroupError::NotIncreasing(i));
        }
        if *candidate.last().unwrap() > MAX_GENERATOR {
            return Err(SemigroupError::TooLarge);
        }
        let e = gcd_prefixes(&candidate);
        let total_gcd = *e.last().unwrap();
        if total_gcd != 1 {
            return Err(SemigroupError::GcdNotOne(total_gcd));
        }
        for k in 1..candidate.len() {
            let table = membership_table(&candidate[..k], candidate[k]);
            if table[candidate[k] as usize] {
                return Err(SemigroupError::NotMinimal(k));
            }
            if e[k - 1] / e[k] < 2 {
                return Err(SemigroupError::NkLessThanTwo(k));
            }
        }
        for i in 2..candidate.len() {
            let n_prev = e[i - 2] / e[i - 1];
            if n_prev * candidate[i - 1] >= candidate[i] {
                return Err(SemigroupError::NotStronglyIncreasing(i));
            }
        }
        Ok(Self {
            generators: candidate,
        })
    }

    pub fn smooth() -> Self {
        Self {
            generators: vec![1],
        }
    }

    /// `<n, m>` for coprime `1 < n < m`, or `<1>` when `n == 1`.
    pub fn two_generator(n: u64, m: u64) -> Result<Self, SemigroupError> {
        if n == 1 {
            return Ok(Self::smooth());
        }
        Self::new(vec![n, m])
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// `v0`, the multiplicity of the branch.
    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    /// Number of Zariski pairs `g`.
    pub fn genus(&self) -> usize {
        self.generators.len() - 1
    }

    pub fn is_smooth(&self) -> bool {
        self.generators[0] == 1
    }

    /// `e_k = gcd(v0, ..., vk)` for `k = 0..=g`.
    pub fn gcd_sequence(&self) -> Vec<u64> {
        gcd_prefixes(&self.generators)
    }

    /// Membership of `n` in the semigroup, by dynamic programming over `0..=n`.
    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return true;
        }
        membership_table(&self.generators, n)[n as usize]
    }

    pub fn zariski_pairs(&self) -> Vec<ZariskiPair> {
        let e = self.gcd_sequence();
        (1..self.generators.len())
            .map(|k| ZariskiPair {
                m: self.generators[k] / e[k],
                n: e[k - 1] / e[k],
            })
            .collect()
    }

    /// Degree of the conductor, `sum (n_k - 1) v_k - v0 + 1`.
    pub fn conductor(&self) -> u64 {
        let sum: u64 = self
            .zariski_pairs()
            .iter()
            .zip(&self.generators[1..])
            .map(|(p, &v)| (p.n - 1) * v)
            .sum();
        sum + 1 - self.generators[0]
    }

    /// Milnor number of the branch; equal to the conductor.
    pub fn milnor(&self) -> u64 {
        self.conductor()
    }

    /// Contact exponent `v1 / v0`, or `+inf` for the smooth branch.
    pub fn contact_exponent(&self) -> ExtRational {
        match self.generators.get(1) {
            Some(&v1) => ExtRational::frac(v1, self.generators[0]),
            None => ExtRational::Infinity,
        }
    }

    /// Contact exponent of order `k`: `e_{k-1} v_k / v0^2` for `1 <= k <= g`.
    pub fn higher_contact(&self, k: usize) -> Result<ExtRational, SemigroupError> {
        let genus = self.genus();
        if k == 0 || k > genus {
            return Err(SemigroupError::KOutOfRange { k, genus });
        }
        let e = self.gcd_sequence();
        let v0 = self.generators[0];
        Ok(ExtRational::frac(e[k - 1] * self.generators[k], v0 * v0))
    }

    /// Contact exponent of order `k`, extended by `+inf` once `k > g`: the
    /// branch then lies in the family of branches with at most `k - 1` pairs.
    pub fn higher_contact_or_infinite(&self, k: usize) -> ExtRational {
        assert!(k >= 1, "contact orders start at 1");
        self.higher_contact(k).unwrap_or(ExtRational::Infinity)
    }

    /// Polar invariants `{ v0 d_k }`, listed in increasing order.
    pub fn polar_invariants(&self) -> Result<Vec<ExtRational>, SemigroupError> {
        if self.is_smooth() {
            return Err(SemigroupError::SmoothBranch);
        }
        let v0 = self.generators[0];
        (1..=self.genus())
            .map(|k| self.higher_contact(k).map(|d| d.scale(v0)))
            .collect()
    }

    pub fn to_char_exponents(&self) -> CharExponents {
        let v = &self.generators;
        let e = self.gcd_sequence();
        let mut beta = Vec::with_capacity(v.len());
        beta.push(v[0]);
        if v.len() > 1 {
            beta.push(v[1]);
        }
        for k in 2..v.len() {
            let n_prev = e[k - 2] / e[k - 1];
            beta.push(v[k] + beta[k - 1] - n_prev * v[k - 1]);
        }
        CharExponents { exponents: beta }
    }
}

impl TryFrom<Vec<u64>> for BranchSemigroup {
    type Error = SemigroupError;

    fn try_from(value: Vec<u64>) -> Result<Self, Self::Error> {
        Self::new(value)
    }
}

impl<'de> Deserialize<'de> for BranchSemigroup {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<u64>::deserialize(deserializer)?;
        Self::new(raw).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for BranchSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, v) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(">")
    }
}

/// Characteristic exponents `(beta0, ..., betag)` with `beta0 = v0`.
///
/// Each `beta_k / beta0` is a Puiseux characteristic exponent of a
/// parametrization `x = t^beta0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CharExponents {
    exponents: Vec<u64>,
}

impl CharExponents {
    pub fn new(exponents: Vec<u64>) -> Result<Self, SemigroupError> {
        if exponents.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if let Some(i) = exponents.iter().position(|&v| v == 0) {
            return Err(SemigroupError::NonPositive(i));
        }
        if let Some(i) = (1..exponents.len()).find(|&i| exponents[i] <= exponents[i - 1]) {
            return Err(SemigroupError::NotIncreasing(i));
        }
        let e = gcd_prefixes(&exponents);
        if let Some(k) = (1..exponents.len()).find(|&k| e[k] >= e[k - 1]) {
            return Err(SemigroupError::InvalidCharSequence(k));
        }
        if *e.last().unwrap() != 1 {
            return Err(SemigroupError::InvalidCharSequence(exponents.len() - 1));
        }
        Ok(Self { exponents })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// `gcd(beta0, ..., betak)`; coincides with the semigroup's `e_k`.
    pub fn gcd_sequence(&self) -> Vec<u64> {
        gcd_prefixes(&self.exponents)
    }

    /// Forward recursion `v_k = n_{k-1} v_{k-1} + beta_k - beta_{k-1}`.
    pub fn to_semigroup(&self) -> Result<BranchSemigroup, SemigroupError> {
        let b = &self.exponents;
        let e = self.gcd_sequence();
        let mut v = Vec::with_capacity(b.len());
        v.push(b[0]);
        if b.len() > 1 {
            v.push(b[1]);
        }
        for k in 2..b.len() {
            let n_prev = e[k - 2] / e[k - 1];
            v.push(n_prev * v[k - 1] + b[k] - b[k - 1]);
        }
        BranchSemigroup::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(v: &[u64]) -> BranchSemigroup {
        BranchSemigroup::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(sg(&[1]).is_smooth());
        assert_eq!(sg(&[4, 6, 13]).genus(), 2);
        assert_eq!(
            BranchSemigroup::new(vec![4, 6, 12]),
            Err(SemigroupError::GcdNotOne(2))
        );
        assert_eq!(
            BranchSemigroup::new(vec![2, 3, 7]),
            Err(SemigroupError::NotMinimal(2))
        );
    }

    #[test]
    fn validation_error_paths() {
        assert_eq!(BranchSemigroup::new(vec![]), Err(SemigroupError::Empty));
        assert_eq!(
            BranchSemigroup::new(vec![3, 0]),
            Err(SemigroupError::NonPositive(1))
        );
        assert_eq!(
            BranchSemigroup::new(vec![4, 4, 5]),
            Err(SemigroupError::NotIncreasing(1))
        );
        assert_eq!(
            BranchSemigroup::new(vec![1, 5]),
            Err(SemigroupError::NotMinimal(1))
        );
        // 15 is not in <4,6,13> but the gcd does not drop.
        assert_eq!(
            BranchSemigroup::new(vec![4, 6, 13, 15]),
            Err(SemigroupError::NkLessThanTwo(3))
        );
        // 2*6 = 12 >= 11 but 11 is not in <4,6>.
        assert_eq!(
            BranchSemigroup::new(vec![4, 6, 11]),
            Err(SemigroupError::NotStronglyIncreasing(2))
        );
        // Minimal, gcd-dropping, but 2*10 = 20 >= 19: not a plane branch.
        assert_eq!(
            BranchSemigroup::new(vec![4, 10, 19]),
            Err(SemigroupError::NotStronglyIncreasing(2))
        );
    }

    #[test]
    fn membership_examples() {
        let s = sg(&[4, 6, 13]);
        assert!(!s.contains(15));
        assert!(s.contains(16));
        assert!(sg(&[1]).contains(0));
        assert!(s.contains(0));
    }

    #[test]
    fn zariski_pair_examples() {
        assert_eq!(sg(&[2, 3]).zariski_pairs(), vec![ZariskiPair { m: 3, n: 2 }]);
        assert_eq!(
            sg(&[4, 6, 13]).zariski_pairs(),
            vec![ZariskiPair { m: 3, n: 2 }, ZariskiPair { m: 13, n: 2 }]
        );
        assert!(sg(&[1]).zariski_pairs().is_empty());
    }

    #[test]
    fn conductor_and_milnor_examples() {
        assert_eq!(sg(&[1]).conductor(), 0);
        assert_eq!(sg(&[2, 3]).conductor(), 2);
        assert_eq!(sg(&[4, 6, 13]).conductor(), 16);
        assert_eq!(sg(&[1]).milnor(), 0);
        assert_eq!(sg(&[2, 3]).milnor(), 2);
        assert_eq!(sg(&[3, 7]).milnor(), 2 * 6);
    }

    #[test]
    fn contact_exponent_examples() {
        assert_eq!(sg(&[1]).contact_exponent(), ExtRational::Infinity);
        assert_eq!(sg(&[2, 3]).contact_exponent(), ExtRational::frac(3, 2));
        assert_eq!(sg(&[4, 6, 13]).contact_exponent(), ExtRational::frac(3, 2));
    }

    #[test]
    fn higher_contact_examples() {
        let s = sg(&[4, 6, 13]);
        assert_eq!(s.higher_contact(1).unwrap(), ExtRational::frac(3, 2));
        assert_eq!(s.higher_contact(2).unwrap(), ExtRational::frac(13, 8));
        assert_eq!(sg(&[2, 3]).higher_contact(1).unwrap(), ExtRational::frac(3, 2));
        assert_eq!(
            s.higher_contact(3),
            Err(SemigroupError::KOutOfRange { k: 3, genus: 2 })
        );
        assert!(sg(&[1]).higher_contact(1).is_err());
        assert_eq!(s.higher_contact_or_infinite(3), ExtRational::Infinity);
    }

    #[test]
    fn polar_invariant_examples() {
        assert_eq!(
            sg(&[2, 3]).polar_invariants().unwrap(),
            vec![ExtRational::from_integer(3)]
        );
        assert_eq!(
            sg(&[4, 6, 13]).polar_invariants().unwrap(),
            vec![ExtRational::from_integer(6), ExtRational::frac(13, 2)]
        );
        assert_eq!(
            sg(&[4, 9]).polar_invariants().unwrap(),
            vec![ExtRational::from_integer(9)]
        );
        assert_eq!(sg(&[1]).polar_invariants(), Err(SemigroupError::SmoothBranch));
    }

    #[test]
    fn char_exponent_examples() {
        assert_eq!(sg(&[4, 6, 13]).to_char_exponents().exponents(), &[4, 6, 7]);
        assert_eq!(sg(&[2, 3]).to_char_exponents().exponents(), &[2, 3]);
        assert_eq!(sg(&[1]).to_char_exponents().exponents(), &[1]);

        let to_sg = |b: &[u64]| CharExponents::new(b.to_vec()).unwrap().to_semigroup().unwrap();
        assert_eq!(to_sg(&[4, 6, 7]), sg(&[4, 6, 13]));
        assert_eq!(to_sg(&[2, 3]), sg(&[2, 3]));
        assert_eq!(to_sg(&[2, 5]), sg(&[2, 5]));
        assert_eq!(
            CharExponents::new(vec![4, 6, 8]),
            Err(SemigroupError::InvalidCharSequence(2))
        );
    }

    #[test]
    fn serde_roundtrip_validates() {
        let s: BranchSemigroup = serde_json::from_str("[4,6,13]").unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[4,6,13]");
        assert!(serde_json::from_str::<BranchSemigroup>("[2,3,7]").is_err());
    }
}
