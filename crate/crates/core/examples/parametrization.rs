//! Truncated parametrizations `x = t^n, y = y(t)` and their blowups.
//!
//! Run with `cargo run --example parametrization`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use singlab::blowup::blowup_branch;
use singlab::oracle::param::{param_blowup, param_intersection, param_resolve, BranchParam};
use singlab::oracle::BivariatePoly;

fn main() {
    let one = BigRational::from_integer(BigInt::from(1));
    let y = BTreeMap::from([(6, one.clone()), (7, one)]);
    let p = BranchParam::new(4, y, 24).unwrap();
    let s = p.semigroup().unwrap();
    println!("(t^4, t^6 + t^7) has semigroup {s}");

    let q = param_blowup(&p).unwrap();
    println!("blowup: {}", serde_json::to_string(&q).unwrap());
    println!("blowup semigroup {} vs combinatorial {}", q.semigroup().unwrap(), blowup_branch(&s).unwrap());

    let steps: Vec<String> = param_resolve(&p).unwrap().iter().map(|b| b.semigroup().unwrap().to_string()).collect();
    println!("resolution: {}", steps.join(" -> "));

    for g in ["y^2-x^3", "y-x^2", "y^2-x^3-2*x^2*y"] {
        let g: BivariatePoly = g.parse().unwrap();
        println!("(param, {g})_0 = {:?}", param_intersection(&p, &g));
    }
}
