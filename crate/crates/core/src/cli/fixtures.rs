//! Seeded fixture generation; fixture `i` uses ChaCha stream `i`.

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::curve::random::{random_permissive_curve, random_realizable_curve, random_semigroup, RealizableOptions};
use crate::logdist::random::random_scenario;
use crate::oracle::param::BranchParam;

pub const DEFAULT_FIXTURES: usize = 10;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureKind {
    /// Branch semigroups with `v0 <= 12` and at most three Zariski pairs.
    Semigroups,
    /// Curves passing the ultrametric, contact and integrality checks.
    Curves,
    /// Curves built from Puiseux series.
    Realizable,
    /// Realizable curves with a single tangent.
    Unitangent,
    /// Log-distance matrices with curve and family index sets.
    Scenarios,
    /// Truncated parametrizations `x = t^n`.
    Params,
}

fn one(kind: FixtureKind, rng: &mut ChaCha8Rng) -> Value {
    match kind {
        FixtureKind::Semigroups => to(&random_semigroup(rng, 12, 3)),
        FixtureKind::Curves => to(&random_permissive_curve(rng, 5, 8)),
        FixtureKind::Realizable => to(&random_realizable_curve(rng, RealizableOptions::default()).curve),
        FixtureKind::Unitangent => {
            let opts = RealizableOptions { unitangent: true, ..RealizableOptions::default() };
            to(&random_realizable_curve(rng, opts).curve)
        }
        FixtureKind::Scenarios => {
            let (m, curve, family) = random_scenario(rng);
            json!({ "matrix": m.rows(), "curve": curve, "family": family })
        }
        FixtureKind::Params => {
            let s = random_semigroup(rng, 8, 3);
            let last = *s.to_char_exponents().exponents().last().unwrap();
            let p = BranchParam::random(rng, &s, last + 4).expect("valid semigroup gives a valid parametrization");
            json!({ "semigroup": s, "param": p })
        }
    }
}

fn to<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("fixtures serialize")
}

/// `count` fixtures of one kind, deterministic in `seed`.
pub fn generate(kind: FixtureKind, seed: u64, count: Option<usize>) -> Vec<Value> {
    (0..count.unwrap_or(DEFAULT_FIXTURES))
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            one(kind, &mut rng)
        })
        .collect()
}
