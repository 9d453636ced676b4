//! Seeded random ultrametrics and family scenarios.
//!
//! Matrices come from random hierarchical trees: the root carries the
//! smallest value and each child node a value at least as large as its
//! parent, and `delta(i, j)` is the value at the lowest common ancestor of
//! leaves `i` and `j`. Every finite log-distance arises this way.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{DistanceMatrix, ExtRational};

/// Values live on the grid `k / 4`; steps of zero produce equilateral triples.
const STEPS: [u64; 5] = [0, 1, 1, 2, 3];

/// A random `n`-point log-distance matrix with values in `[1, 10]`.
pub fn random_ultrametric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DistanceMatrix {
    assert!(n <= 12, "random ultrametrics are generated for at most 12 points");
    let mut quarters = vec![vec![0u64; n]; n];
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    let root = rng.gen_range(4..=7);
    split(&points, root, &mut quarters, rng);
    DistanceMatrix::from_fn(n, |i, j| ExtRational::frac(quarters[i][j], 4))
}

fn split<R: Rng + ?Sized>(points: &[usize], level: u64, out: &mut [Vec<u64>], rng: &mut R) {
    if points.len() < 2 {
        return;
    }
    let cut = rng.gen_range(1..points.len());
    let (left, right) = points.split_at(cut);
    for &a in left {
        for &b in right {
            out[a][b] = level;
            out[b][a] = level;
        }
    }
    for part in [left, right] {
        let next = (level + STEPS[rng.gen_range(0..STEPS.len())]).min(40);
        split(part, next, out, rng);
    }
}

/// A random matrix together with curve and family index sets, each of size
/// `1..=6`, drawn from at most 12 points. The sets may overlap.
pub fn random_scenario<R: Rng + ?Sized>(rng: &mut R) -> (DistanceMatrix, Vec<usize>, Vec<usize>) {
    let r = rng.gen_range(1..=6);
    let b = rng.gen_range(1..=6);
    let overlap = if rng.gen_bool(0.2) { rng.gen_range(0..=r.min(b)) } else { 0 };
    let n = r + b - overlap;
    let m = random_ultrametric(n, rng);
    let curve: Vec<usize> = (0..r).collect();
    let family: Vec<usize> = (r - overlap..n).collect();
    (m, curve, family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logdist::check_axioms;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_matrices_are_log_distances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 0..=12 {
            for _ in 0..20 {
                let m = random_ultrametric(n, &mut rng);
                assert!(check_axioms(&m).is_valid());
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            let v = m.get(i, j);
                            assert!(*v >= ExtRational::one() && *v <= ExtRational::from_integer(10));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn same_seed_same_matrix() {
        let a = random_ultrametric(7, &mut ChaCha8Rng::seed_from_u64(5));
        let b = random_ultrametric(7, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
    }
}
