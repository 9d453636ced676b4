//! Curve invariants, the Milnor lower bound and the Eggers classification.
//!
//! Run with `cargo run --example invariants_eggers`.

use singlab::curve::normal_forms::{binomial, line_times_binomial};
use singlab::{BranchSemigroup, ExtRational, ReducedCurve};

fn show(name: &str, c: &ReducedCurve) {
    println!("{name}");
    println!("  branches {}  m {}  tangents {}", c.branch_count(), c.multiplicity(), c.tangent_count());
    println!("  d {}  mu {}  conductor {}", c.contact_exponent(), c.milnor(), c.conductor_degree());
    if let Ok(r) = c.milnor_bound_report() {
        println!("  bound {}  attained {}", r.bound, r.attained);
    }
    if let Ok(e) = c.eggers_classify() {
        println!("  eggers {}", e.name());
    }
}

fn main() {
    let cusp = BranchSemigroup::two_generator(2, 3).unwrap();
    let tangent = ReducedCurve::equal_contact(vec![cusp.clone(), cusp.clone()], "3/2".parse().unwrap()).unwrap();
    let transverse = ReducedCurve::equal_contact(vec![cusp.clone(), cusp], ExtRational::one()).unwrap();
    show("two tangent cusps", &tangent);
    show("two transverse cusps", &transverse);
    show("<4,6,13>", &ReducedCurve::branch(BranchSemigroup::new(vec![4, 6, 13]).unwrap()));
    show("y^3 - x^5", &binomial(3, 5).unwrap());
    show("y^3 - y x^4", &line_times_binomial(3, 4).unwrap());

    let a = tangent.permuted(&[1, 0]);
    println!("equisingular after relabelling: {:?}", tangent.equisingular(&a).unwrap());
    println!("tangent vs transverse: {:?}", tangent.equisingular(&transverse).unwrap());
}
