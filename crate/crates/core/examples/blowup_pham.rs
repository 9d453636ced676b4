//! Strict transforms, the two blowup cases and the Pham recursion.
//!
//! Run with `cargo run --example blowup_pham`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use singlab::blowup::{blowup_curve, hironaka_step, pham_milnor, reconstruct, resolve_branch, MultiplicitySequence};
use singlab::curve::random::{random_realizable_curve, RealizableOptions};
use singlab::{BranchSemigroup, ReducedCurve};

fn main() {
    let s = BranchSemigroup::new(vec![4, 9]).unwrap();
    let chain: Vec<String> = resolve_branch(&s).unwrap().iter().map(|t| t.to_string()).collect();
    println!("resolution of {s}: {}", chain.join(" -> "));
    let seq = MultiplicitySequence::of(&s);
    println!("multiplicity sequence {:?} reconstructs {}", seq.values(), reconstruct(seq.values()).unwrap());

    let mut c = ReducedCurve::branch(s);
    while !c.is_smooth_branch() {
        let r = hironaka_step(&c).unwrap();
        println!("case {:?}: m {} -> {}, d {} -> {}", r.case, r.m_before, r.m_after, r.d_before, r.d_after);
        c = r.transform;
    }

    let opts = RealizableOptions { unitangent: true, ..RealizableOptions::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let c = random_realizable_curve(&mut rng, opts.clone()).curve;
        let next = blowup_curve(&c).unwrap();
        println!(
            "mu {} = pham {}  (m {}, transform mu {})",
            c.milnor(),
            pham_milnor(&c).unwrap(),
            c.multiplicity(),
            next.milnor()
        );
    }
}
