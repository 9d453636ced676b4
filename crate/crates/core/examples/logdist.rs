//! Log-distance matrices and contact of a curve with a family of branches.
//!
//! Run with `cargo run --example logdist`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use singlab::logdist::random::random_scenario;
use singlab::logdist::{
    anchor_contract_holds, brute_force_delta_family, check_axioms, delta_curve_branch, delta_curve_family,
    FamilyScenario,
};
use singlab::{DistanceMatrix, ExtRational};

fn q(s: &str) -> ExtRational {
    s.parse().unwrap()
}

fn main() {
    // Two branches with contact 3/2, a third meeting both at 1, then a
    // fourth attached to branch 0 at height 5/2.
    let inf = ExtRational::Infinity;
    let mut m = DistanceMatrix::unlabelled(vec![
        vec![inf.clone(), q("3/2"), q("1")],
        vec![q("3/2"), inf.clone(), q("1")],
        vec![q("1"), q("1"), inf],
    ])
    .unwrap();
    m.attach(0, q("5/2"), "W");
    println!("axioms valid: {}", check_axioms(&m).is_valid());
    println!("delta({{0,1}}, W) = {}", delta_curve_branch(&m, &[0, 1], 3));

    let s = FamilyScenario::new(&m, vec![0, 1], vec![2, 3]).unwrap();
    let f = delta_curve_family(&s);
    println!("delta(C, B) = {} via anchor {}", f.value, f.anchor);
    println!("brute force   {}", brute_force_delta_family(&s));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut agree = 0;
    for _ in 0..200 {
        let (m, curve, family) = random_scenario(&mut rng);
        let s = FamilyScenario::new(&m, curve, family).unwrap();
        let f = delta_curve_family(&s);
        if f.value == brute_force_delta_family(&s) && anchor_contract_holds(&s, f.anchor) {
            agree += 1;
        }
    }
    println!("random scenarios in agreement: {agree}/200");
}
