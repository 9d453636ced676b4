//! Seeded fixture generators.
//!
//! [`random_semigroup`] draws plane branch semigroups. [`random_permissive_curve`]
//! draws contact matrices subject only to the validator's conditions.
//! [`random_realizable_curve`] builds curves from symbolic Puiseux series with
//! generic coefficients, so every fixture comes from an actual plane curve.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::ReducedCurve;
use crate::logdist::{DistanceMatrix, ExtRational};
use crate::semigroup::{BranchSemigroup, CharExponents};

/// A random plane branch semigroup with `v0 <= max_v0` and at most
/// `max_genus` Zariski pairs. Sampled through the gcd chain, so minimality
/// and the strongly increasing condition materialize by construction.
pub fn random_semigroup<R: Rng + ?Sized>(rng: &mut R, max_v0: u64, max_genus: usize) -> BranchSemigroup {
    if max_genus == 0 {
        return BranchSemigroup::smooth();
    }
    let v0 = rng.gen_range(1..=max_v0.max(1));
    let mut chain = vec![v0];
    while *chain.last().unwrap() > 1 {
        let e = *chain.last().unwrap();
        let options: Vec<u64> = if chain.len() == max_genus {
            vec![1]
        } else {
            (1..e).filter(|d| e % d == 0).collect()
        };
        chain.push(*options.choose(rng).unwrap());
    }
    let mut v = vec![v0];
    for k in 1..chain.len() {
        let floor = if k == 1 { v0 } else { (chain[k - 2] / chain[k - 1]) * v[k - 1] };
        let mut c = floor + 1 + rng.gen_range(0..2 * chain[k - 1]);
        while c.gcd(&chain[k - 1]) != chain[k] {
            c += 1;
        }
        v.push(c);
    }
    BranchSemigroup::new(v).expect("gcd chain sampling yields a valid semigroup")
}

// ---------------------------------------------------------------------------
// Permissive generator.

fn grid_values(cap: &Rational64) -> Vec<Rational64> {
    let mut out: Vec<Rational64> = (1..=12i64)
        .flat_map(|b| (b..=12i64).map(move |a| Rational64::new(a, b)))
        .filter(|v| v <= cap)
        .collect();
    out.sort();
    out.dedup();
    out
}

fn to_ext(v: &Rational64) -> ExtRational {
    ExtRational::frac(*v.numer() as u64, *v.denom() as u64)
}

/// A curve with `1..=max_branches` branches drawn from random semigroups and
/// an ultrametric tree whose node values come from `{a/b : a, b <= 12}`
/// within `[1, max_i d(C_i) + 2]`. Integrality is enforced while sampling.
/// Such matrices need not come from a plane curve.
pub fn random_permissive_curve<R: Rng + ?Sized>(rng: &mut R, max_branches: usize, max_v0: u64) -> ReducedCurve {
    let r = rng.gen_range(1..=max_branches.max(1));
    let branches: Vec<BranchSemigroup> = (0..r).map(|_| random_semigroup(rng, max_v0, 2)).collect();
    let cap = branches
        .iter()
        .filter_map(|b| b.contact_exponent().finite().cloned())
        .max()
        .map(|q| Rational64::new(q.numer().to_i64().unwrap(), q.denom().to_i64().unwrap()))
        .unwrap_or_else(|| Rational64::from_integer(2))
        + Rational64::from_integer(2);
    let grid = grid_values(&cap);
    let m: Vec<u64> = branches.iter().map(|b| b.multiplicity()).collect();
    let d_branch: Vec<ExtRational> = branches.iter().map(|b| b.contact_exponent()).collect();
    loop {
        let mut values = vec![vec![Rational64::zero(); r]; r];
        let mut leaves: Vec<usize> = (0..r).collect();
        leaves.shuffle(rng);
        if split_permissive(&leaves, Rational64::one(), &grid, &m, &d_branch, &mut values, rng) {
            let matrix = DistanceMatrix::from_fn(r, |i, j| to_ext(&values[i][j]));
            return ReducedCurve::new(branches, matrix).expect("generator respects validation");
        }
    }
}

fn split_permissive<R: Rng + ?Sized>(
    leaves: &[usize],
    floor: Rational64,
    grid: &[Rational64],
    m: &[u64],
    d_branch: &[ExtRational],
    out: &mut [Vec<Rational64>],
    rng: &mut R,
) -> bool {
    if leaves.len() < 2 {
        return true;
    }
    let cut = rng.gen_range(1..leaves.len());
    let (left, right) = leaves.split_at(cut);
    let g = left
        .iter()
        .flat_map(|&a| right.iter().map(move |&b| m[a] * m[b]))
        .fold(0u64, |acc, x| acc.gcd(&x)) as i64;
    let valid: Vec<Rational64> = grid
        .iter()
        .filter(|v| **v >= floor && (**v * g).is_integer())
        .copied()
        .collect();
    if valid.is_empty() {
        return false;
    }
    // Bias toward the smallest branch contact exponent so that the equality
    // cases of the Milnor bound occur often.
    let favourite = leaves
        .iter()
        .map(|&i| d_branch[i].clone())
        .min()
        .and_then(|d| valid.iter().find(|v| to_ext(v) == d).copied());
    let value = match favourite {
        Some(v) if rng.gen_bool(0.4) => v,
        _ => *valid.choose(rng).unwrap(),
    };
    for &a in left {
        for &b in right {
            out[a][b] = value;
            out[b][a] = value;
        }
    }
    split_permissive(left, value, grid, m, d_branch, out, rng)
        && split_permissive(right, value, grid, m, d_branch, out, rng)
}

// ---------------------------------------------------------------------------
// Realizable generator.

/// A branch `y = sum c_k x^{q_k}` with rational exponents `q_k >= 1` and
/// generic coefficients named by labels. Equal labels mean equal
/// coefficients; distinct labels are algebraically independent; a missing
/// exponent means coefficient zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxBranch {
    terms: BTreeMap<Rational64, u32>,
}

impl PuiseuxBranch {
    pub fn new(terms: impl IntoIterator<Item = (Rational64, u32)>) -> Self {
        let terms: BTreeMap<_, _> = terms.into_iter().collect();
        assert!(terms.keys().all(|q| *q >= Rational64::one()), "exponents must be at least 1");
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational64, &u32)> {
        self.terms.iter()
    }

    /// `lcm` of the exponent denominators.
    pub fn multiplicity(&self) -> u64 {
        self.terms.keys().fold(1i64, |acc, q| acc.lcm(q.denom())) as u64
    }

    pub fn char_exponents(&self) -> CharExponents {
        let n = self.multiplicity() as i64;
        let mut out = vec![n as u64];
        let mut l = 1i64;
        for q in self.terms.keys() {
            let next = l.lcm(q.denom());
            if next != l {
                out.push((q * n).to_integer() as u64);
                l = next;
            }
        }
        CharExponents::new(out).expect("denominator growth gives a gcd drop")
    }

    pub fn semigroup(&self) -> BranchSemigroup {
        self.char_exponents().to_semigroup().expect("valid characteristic sequence")
    }

    /// `ord_x` of `other - sigma_k(self)` where `sigma_k` multiplies
    /// `x^{1/n}` by the `k`-th power of a primitive `n`-th root of unity.
    fn conjugate_distance(&self, k: i64, other: &PuiseuxBranch) -> Option<Rational64> {
        let mut exps: Vec<&Rational64> = self.terms.keys().chain(other.terms.keys()).collect();
        exps.sort();
        exps.dedup();
        exps.into_iter()
            .find(|q| match (self.terms.get(q), other.terms.get(q)) {
                (Some(a), Some(b)) => a != b || !(**q * k).is_integer(),
                (None, None) => false,
                _ => true,
            })
            .copied()
    }

    /// Contact order `d(self, other) = (self, other)_0 / (m m')`.
    pub fn contact(&self, other: &PuiseuxBranch) -> ExtRational {
        let n = self.multiplicity() as i64;
        let mut total = Rational64::zero();
        for k in 0..n {
            match self.conjugate_distance(k, other) {
                Some(q) => total += q,
                None => return ExtRational::Infinity,
            }
        }
        to_ext(&(total / n))
    }

    fn max_exponent(&self) -> Rational64 {
        self.terms.keys().next_back().copied().unwrap_or_else(Rational64::one)
    }
}

/// A realizable curve together with the series of its branches.
#[derive(Clone, Debug)]
pub struct RealizedCurve {
    pub series: Vec<PuiseuxBranch>,
    pub curve: ReducedCurve,
}

impl RealizedCurve {
    pub fn from_series(series: Vec<PuiseuxBranch>) -> Self {
        let r = series.len();
        let branches = series.iter().map(|s| s.semigroup()).collect();
        let matrix = DistanceMatrix::from_fn(r, |i, j| series[i].contact(&series[j]));
        let curve = ReducedCurve::new(branches, matrix).expect("series define a valid curve");
        Self { series, curve }
    }

    fn fresh_label(&self) -> u32 {
        self.series
            .iter()
            .flat_map(|s| s.terms.values().copied())
            .max()
            .map_or(0, |l| l + 1)
    }

    /// Smooth branch sharing the integral terms of branch `i` below its first
    /// characteristic exponent and below `top`, then a generic term of degree
    /// `top`. Without `top` the degree is above every exponent in sight.
    pub fn smooth_following(&self, i: usize, top: Option<i64>) -> PuiseuxBranch {
        let s = &self.series[i];
        let first_char = s.terms.keys().find(|q| !q.is_integer()).copied();
        let top = Rational64::from_integer(top.unwrap_or_else(|| self.max_exponent_all().to_integer() + 2));
        let mut terms: Vec<(Rational64, u32)> = s
            .terms
            .iter()
            .filter(|(q, _)| **q < top && first_char.is_none_or(|c| **q < c))
            .map(|(q, l)| (*q, *l))
            .collect();
        terms.push((top, self.fresh_label()));
        PuiseuxBranch::new(terms)
    }

    fn max_exponent_all(&self) -> Rational64 {
        self.series.iter().map(|s| s.max_exponent()).max().unwrap_or_else(Rational64::one)
    }

    /// A smooth branch with maximal contact with the curve.
    pub fn maximal_contact_line(&self) -> PuiseuxBranch {
        let curve = &self.curve;
        let r = curve.branch_count();
        let branch_min = (0..r).min_by_key(|&i| curve.branches()[i].contact_exponent()).unwrap();
        let (pair_min, pair) = crate::logdist::inner_contact(curve.contact(), &(0..r).collect::<Vec<_>>());
        let anchor = match pair {
            Some((i, _)) if pair_min < curve.branches()[branch_min].contact_exponent() => i,
            _ => branch_min,
        };
        self.smooth_following(anchor, None)
    }

    /// The curve with one more branch appended; contacts from the series.
    pub fn with_branch(&self, extra: PuiseuxBranch) -> RealizedCurve {
        let mut series = self.series.clone();
        series.push(extra);
        Self::from_series(series)
    }
}

/// Options for [`random_realizable_curve`].
#[derive(Clone, Copy, Debug)]
pub struct RealizableOptions {
    pub max_branches: usize,
    pub max_multiplicity: u64,
    pub unitangent: bool,
}

impl Default for RealizableOptions {
    fn default() -> Self {
        Self {
            max_branches: 5,
            max_multiplicity: 8,
            unitangent: false,
        }
    }
}

const STEPS: [(i64, i64); 9] = [(1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1), (3, 2), (2, 1), (5, 2)];

fn random_tail<R: Rng + ?Sized>(
    terms: &mut Vec<(Rational64, u32)>,
    start: Rational64,
    max_mult: u64,
    next_label: &mut u32,
    rng: &mut R,
) {
    let count = rng.gen_range(0..=3);
    let mut q = start;
    for _ in 0..count {
        let (a, b) = STEPS[rng.gen_range(0..STEPS.len())];
        let candidate = q + Rational64::new(a, b);
        let l = terms.iter().fold(candidate.denom().to_owned(), |acc, (e, _)| acc.lcm(e.denom()));
        if l as u64 > max_mult {
            continue;
        }
        q = candidate;
        terms.push((q, *next_label));
        *next_label += 1;
    }
}

/// A random curve built from symbolic Puiseux series: each new branch copies
/// a prefix of an existing one and diverges with a fresh generic term.
/// With `unitangent` set every branch shares the tangent `y = c x`.
pub fn random_realizable_curve<R: Rng + ?Sized>(rng: &mut R, opts: RealizableOptions) -> RealizedCurve {
    let r = rng.gen_range(1..=opts.max_branches.max(1));
    // Raising the floor above 2 makes the d(C) >= 2 regime frequent.
    let floor = Rational64::from_integer(if rng.gen_bool(0.5) { 1 } else { 2 });
    let mut next_label = 1u32;
    let mut root: Vec<(Rational64, u32)> = Vec::new();
    if rng.gen_bool(0.5) {
        root.push((Rational64::one(), 0));
    }
    random_tail(&mut root, floor, opts.max_multiplicity, &mut next_label, rng);
    let mut series = vec![PuiseuxBranch::new(root)];
    while series.len() < r {
        let parent = series.choose(rng).unwrap().clone();
        let mut exps: Vec<Rational64> = parent.terms.keys().copied().filter(|q| *q > floor).collect();
        for (a, b) in STEPS {
            exps.push(floor + Rational64::new(a, b));
        }
        if !opts.unitangent {
            exps.push(Rational64::one());
        }
        let q = *exps.choose(rng).unwrap();
        let mut terms: Vec<(Rational64, u32)> = parent.terms.iter().filter(|(e, _)| **e < q).map(|(e, l)| (*e, *l)).collect();
        let l = terms.iter().fold(*q.denom(), |acc, (e, _)| acc.lcm(e.denom()));
        if l as u64 > opts.max_multiplicity {
            continue;
        }
        terms.push((q, next_label));
        next_label += 1;
        random_tail(&mut terms, q, opts.max_multiplicity, &mut next_label, rng);
        series.push(PuiseuxBranch::new(terms));
    }
    RealizedCurve::from_series(series)
}
