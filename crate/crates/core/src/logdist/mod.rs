//! Log-distances on finite sets of branches.
//!
//! A log-distance is a symmetric function with `+inf` exactly on the diagonal
//! satisfying `delta(C,D) >= min(delta(C,E), delta(E,D))`. This module checks
//! those axioms on explicit matrices and evaluates the contact of a reduced
//! curve with a finite family of branches, both through the closed
//! infimum formula and by literal enumeration.

mod ext_rational;
pub mod random;

pub use ext_rational::{ExtRational, ExtRationalError};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LogDistError {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("{labels} labels for a matrix of size {size}")]
    LabelCount { labels: usize, size: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("curve index set is empty")]
    EmptyCurve,
    #[error("family is empty")]
    EmptyFamily,
}

/// A labelled square matrix of log-distance values.
///
/// Construction only checks the shape; use [`check_axioms`] to validate the
/// log-distance axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct DistanceMatrix {
    labels: Vec<String>,
    #[serde(rename = "delta")]
    values: Vec<Vec<ExtRational>>,
}

#[derive(Deserialize)]
struct RawMatrix {
    #[serde(default)]
    labels: Option<Vec<String>>,
    delta: Vec<Vec<ExtRational>>,
}

impl TryFrom<RawMatrix> for DistanceMatrix {
    type Error = LogDistError;

    fn try_from(raw: RawMatrix) -> Result<Self, Self::Error> {
        match raw.labels {
            Some(labels) => DistanceMatrix::new(labels, raw.delta),
            None => DistanceMatrix::unlabelled(raw.delta),
        }
    }
}

impl DistanceMatrix {
    pub fn new(labels: Vec<String>, values: Vec<Vec<ExtRational>>) -> Result<Self, LogDistError> {
        let n = values.len();
        if labels.len() != n {
            return Err(LogDistError::LabelCount {
                labels: labels.len(),
                size: n,
            });
        }
        for (row, r) in values.iter().enumerate() {
            if r.len() != n {
                return Err(LogDistError::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(LogDistError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels, values })
    }

    /// Labels default to `"0"`, `"1"`, ...
    pub fn unlabelled(values: Vec<Vec<ExtRational>>) -> Result<Self, LogDistError> {
        let labels = (0..values.len()).map(|i| i.to_string()).collect();
        Self::new(labels, values)
    }

    /// Build a symmetric matrix with `+inf` on the diagonal from the strict
    /// upper triangle.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> ExtRational) -> Self {
        let mut values = vec![vec![ExtRational::Infinity; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                values[i][j] = v.clone();
                values[j][i] = v;
            }
        }
        Self::unlabelled(values).expect("square by construction")
    }

    pub fn empty() -> Self {
        Self {
            labels: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> &ExtRational {
        &self.values[i][j]
    }

    pub fn rows(&self) -> &[Vec<ExtRational>] {
        &self.values
    }

    /// The principal submatrix on `indices`, keeping their labels.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let values = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.values[i][j].clone()).collect())
            .collect();
        Self { labels, values }
    }

    /// Append a point attached to `anchor` at level `height`: its value
    /// against any `x` is `min(height, delta(anchor, x))`. The result is an
    /// ultrametric whenever `self` is one.
    pub fn attach(&mut self, anchor: usize, height: ExtRational, label: impl Into<String>) -> usize {
        let n = self.len();
        let mut row: Vec<ExtRational> = (0..n)
            .map(|x| {
                if x == anchor {
                    height.clone()
                } else {
                    height.clone().min(self.values[anchor][x].clone())
                }
            })
            .collect();
        for (x, r) in self.values.iter_mut().enumerate() {
            r.push(row[x].clone());
        }
        row.push(ExtRational::Infinity);
        self.values.push(row);
        self.labels.push(label.into());
        n
    }
}

/// One violated axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom")]
pub enum AxiomViolation {
    /// `delta(i,i)` is finite.
    DiagonalNotInfinite { i: usize },
    /// `delta(i,j) = +inf` for distinct `i, j`.
    OffDiagonalInfinite { i: usize, j: usize },
    Asymmetric { i: usize, j: usize },
    /// `delta(i,j) < min(delta(i,k), delta(k,j))`.
    Ultrametric { i: usize, j: usize, k: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every violation of the three axioms; an empty report means `m` is a
/// log-distance matrix.
pub fn check_axioms(m: &DistanceMatrix) -> AxiomReport {
    let n = m.len();
    let mut violations = Vec::new();
    for i in 0..n {
        if m.get(i, i).is_finite() {
            violations.push(AxiomViolation::DiagonalNotInfinite { i });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if m.get(i, j) != m.get(j, i) {
                violations.push(AxiomViolation::Asymmetric { i, j });
            }
            if m.get(i, j).is_infinite() || m.get(j, i).is_infinite() {
                violations.push(AxiomViolation::OffDiagonalInfinite { i, j });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in (0..n).filter(|&k| k != i && k != j) {
                if m.get(i, j) < m.get(i, k).min(m.get(k, j)) {
                    violations.push(AxiomViolation::Ultrametric { i, j, k });
                }
            }
        }
    }
    AxiomReport { violations }
}

/// True iff the two smallest of `a, b, c` are equal.
pub fn two_smallest_equal(a: &ExtRational, b: &ExtRational, c: &ExtRational) -> bool {
    let mut v = [a, b, c];
    v.sort();
    v[0] == v[1]
}

/// `delta(C, w) = min_{i in I} delta(C_i, w)`.
pub fn delta_curve_branch(m: &DistanceMatrix, curve: &[usize], w: usize) -> ExtRational {
    curve
        .iter()
        .map(|&i| m.get(i, w).clone())
        .min()
        .expect("nonempty curve")
}

/// `min_{i != j in I} delta(C_i, C_j)`, `+inf` for a single branch, and the
/// lexicographically first attaining pair.
pub fn inner_contact(m: &DistanceMatrix, curve: &[usize]) -> (ExtRational, Option<(usize, usize)>) {
    let mut best = (ExtRational::Infinity, None);
    for (a, &i) in curve.iter().enumerate() {
        for &j in &curve[a + 1..] {
            if *m.get(i, j) < best.0 {
                best = (m.get(i, j).clone(), Some((i, j)));
            }
        }
    }
    best
}

/// A reduced curve (a set of branch indices) and a finite family of
/// branches, both inside one matrix.
#[derive(Clone, Debug)]
pub struct FamilyScenario<'a> {
    matrix: &'a DistanceMatrix,
    curve: Vec<usize>,
    family: Vec<usize>,
}

impl<'a> FamilyScenario<'a> {
    /// Index lists are sorted and deduplicated; they may overlap.
    pub fn new(
        matrix: &'a DistanceMatrix,
        mut curve: Vec<usize>,
        mut family: Vec<usize>,
    ) -> Result<Self, LogDistError> {
        curve.sort_unstable();
        curve.dedup();
        family.sort_unstable();
        family.dedup();
        if curve.is_empty() {
            return Err(LogDistError::EmptyCurve);
        }
        if family.is_empty() {
            return Err(LogDistError::EmptyFamily);
        }
        if let Some(&bad) = curve.iter().chain(&family).find(|&&i| i >= matrix.len()) {
            return Err(LogDistError::IndexOutOfRange(bad));
        }
        Ok(Self {
            matrix,
            curve,
            family,
        })
    }

    pub fn matrix(&self) -> &DistanceMatrix {
        self.matrix
    }

    pub fn curve(&self) -> &[usize] {
        &self.curve
    }

    pub fn family(&self) -> &[usize] {
        &self.family
    }

    /// `delta(C_i, B) = max_{W in B} delta(C_i, W)` and the lowest-index maximizer.
    pub fn branch_to_family(&self, i: usize) -> (ExtRational, usize) {
        branch_to_family(self.matrix, i, &self.family)
    }

    /// `delta(C, W)` for the whole curve.
    pub fn curve_to_branch(&self, w: usize) -> ExtRational {
        delta_curve_branch(self.matrix, &self.curve, w)
    }
}

fn branch_to_family(m: &DistanceMatrix, i: usize, family: &[usize]) -> (ExtRational, usize) {
    let mut best: Option<(ExtRational, usize)> = None;
    for &w in family {
        let v = m.get(i, w);
        if best.as_ref().is_none_or(|(b, _)| v > b) {
            best = Some((v.clone(), w));
        }
    }
    best.expect("nonempty family")
}

/// Which side of the infimum realizes the contact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnchorCase {
    /// `min_i delta(C_i, B) <= min_{i,j} delta(C_i, C_j)`.
    BranchSide,
    /// The inner contact is strictly smaller.
    PairSide,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyContact {
    pub value: ExtRational,
    /// A family branch `W` with `delta(C, W) = value`.
    pub witness: usize,
    /// A curve branch whose maximal-contact family members are maximal for the
    /// whole curve.
    pub anchor: usize,
    pub case: AnchorCase,
}

/// `delta(C, B)` by the infimum formula
/// `min(min_i delta(C_i, B), min_{i != j} delta(C_i, C_j))`, with a witness
/// and an anchor branch. Ties resolve to the lowest index.
pub fn delta_curve_family(s: &FamilyScenario<'_>) -> FamilyContact {
    let (branch_side, branch_anchor) = s
        .curve
        .iter()
        .map(|&i| (s.branch_to_family(i).0, i))
        .min()
        .expect("nonempty curve");
    let (pair_side, pair) = inner_contact(s.matrix, &s.curve);
    let (value, anchor, case) = if branch_side <= pair_side {
        (branch_side, branch_anchor, AnchorCase::BranchSide)
    } else {
        let (i0, _) = pair.expect("finite inner contact needs two branches");
        (pair_side, i0, AnchorCase::PairSide)
    };
    let (_, witness) = s.branch_to_family(anchor);
    FamilyContact {
        value,
        witness,
        anchor,
        case,
    }
}

/// `delta(C, B) = max_{W in B} min_{i} delta(C_i, W)`, evaluated literally.
pub fn brute_force_delta_family(s: &FamilyScenario<'_>) -> ExtRational {
    s.family
        .iter()
        .map(|&w| s.curve_to_branch(w))
        .max()
        .expect("nonempty family")
}

/// Whether every maximal-contact family member of `anchor` is maximal for
/// the whole curve.
pub fn anchor_contract_holds(s: &FamilyScenario<'_>, anchor: usize) -> bool {
    let (anchor_best, _) = s.branch_to_family(anchor);
    let total = brute_force_delta_family(s);
    s.family
        .iter()
        .filter(|&&w| *s.matrix.get(anchor, w) == anchor_best)
        .all(|&w| s.curve_to_branch(w) == total)
}

/// Outcome of comparing the maximal-contact sets of two branches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SharedWitness {
    /// Some `W` is maximal for both branches. Then
    /// `delta(c,d) >= min(delta(c,B), delta(d,B))`, with equality when the
    /// two family contacts differ.
    Shared {
        witness: usize,
        inequality_holds: bool,
        equality_required: bool,
        equality_holds: bool,
    },
    /// No common maximizer. With `U`, `V` maximal for `c`, `d`:
    /// `delta(c,d) = delta(U,V) < min(delta(c,B), delta(d,B))`.
    Split {
        u: usize,
        v: usize,
        delta_uv: ExtRational,
        equality_holds: bool,
        strict_holds: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharedWitnessReport {
    pub delta_c_family: ExtRational,
    pub delta_d_family: ExtRational,
    pub delta_cd: ExtRational,
    pub outcome: SharedWitness,
}

impl SharedWitnessReport {
    /// All claimed relations hold.
    pub fn verified(&self) -> bool {
        match &self.outcome {
            SharedWitness::Shared {
                inequality_holds,
                equality_required,
                equality_holds,
                ..
            } => *inequality_holds && (!equality_required || *equality_holds),
            SharedWitness::Split {
                equality_holds,
                strict_holds,
                ..
            } => *equality_holds && *strict_holds,
        }
    }
}

pub fn shared_witness_analysis(
    m: &DistanceMatrix,
    c: usize,
    d: usize,
    family: &[usize],
) -> Result<SharedWitnessReport, LogDistError> {
    if family.is_empty() {
        return Err(LogDistError::EmptyFamily);
    }
    if let Some(&bad) = [c, d].iter().chain(family).find(|&&i| i >= m.len()) {
        return Err(LogDistError::IndexOutOfRange(bad));
    }
    let (dc, u) = branch_to_family(m, c, family);
    let (dd, v) = branch_to_family(m, d, family);
    let dcd = m.get(c, d).clone();
    let lower = dc.clone().min(dd.clone());
    let shared = family
        .iter()
        .copied()
        .find(|&w| *m.get(c, w) == dc && *m.get(d, w) == dd);
    let outcome = match shared {
        Some(witness) => SharedWitness::Shared {
            witness,
            inequality_holds: dcd >= lower,
            equality_required: dc != dd,
            equality_holds: dcd == lower,
        },
        None => {
            let delta_uv = m.get(u, v).clone();
            SharedWitness::Split {
                u,
                v,
                equality_holds: dcd == delta_uv,
                strict_holds: dcd < lower,
                delta_uv,
            }
        }
    };
    Ok(SharedWitnessReport {
        delta_c_family: dc,
        delta_d_family: dd,
        delta_cd: dcd,
        outcome,
    })
}

/// `None` when the hypothesis `delta(C,D) < min(bound, min_{i,j} delta(C_i,C_j))`
/// fails; otherwise whether every `delta(C_i, D) < bound`.
pub fn separation_bound_verdict(
    m: &DistanceMatrix,
    curve: &[usize],
    d: usize,
    bound: &ExtRational,
) -> Option<bool> {
    let (inner, _) = inner_contact(m, curve);
    let to_d = delta_curve_branch(m, curve, d);
    if to_d >= inner.min(bound.clone()) {
        return None;
    }
    Some(curve.iter().all(|&i| m.get(i, d) < bound))
}

/// True when the separation hypothesis holds and its conclusion is verified;
/// false when the hypothesis fails.
pub fn separation_bound_check(
    m: &DistanceMatrix,
    curve: &[usize],
    d: usize,
    bound: &ExtRational,
) -> bool {
    separation_bound_verdict(m, curve, d, bound).unwrap_or(false)
}

/// For `W` in the family with `delta(C,W) < delta(C,B)`: whether
/// `delta(C_i, W) < delta(C_i, B)` for every branch. `None` if `W` is maximal.
pub fn non_maximal_member_verdict(s: &FamilyScenario<'_>, w: usize) -> Option<bool> {
    let total = brute_force_delta_family(s);
    if s.curve_to_branch(w) >= total {
        return None;
    }
    Some(
        s.curve
            .iter()
            .all(|&i| *s.matrix.get(i, w) < s.branch_to_family(i).0),
    )
}
