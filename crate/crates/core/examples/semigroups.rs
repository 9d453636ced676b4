//! Branch semigroups: Zariski pairs, conductor and contact exponents.
//!
//! Run with `cargo run --example semigroups`.

use singlab::blowup::MultiplicitySequence;
use singlab::BranchSemigroup;

fn main() {
    for gens in [vec![2, 3], vec![3, 7], vec![4, 6, 13], vec![6, 9, 19]] {
        let s = BranchSemigroup::new(gens).expect("valid semigroup");
        println!("{s}");
        println!("  zariski pairs   {:?}", s.zariski_pairs());
        println!("  char exponents  {:?}", s.to_char_exponents().exponents());
        println!("  conductor       {}", s.conductor());
        println!("  milnor          {}", s.milnor());
        println!("  contact d       {}", s.contact_exponent());
        for k in 1..=s.genus() {
            println!("  d_{k}             {}", s.higher_contact(k).unwrap());
        }
        let seq = MultiplicitySequence::of(&s);
        println!("  multiplicities  {:?} (sum m(m-1) = {})", seq.values(), seq.conductor_sum());
    }

    let gaps: Vec<u64> = {
        let s = BranchSemigroup::new(vec![4, 6, 13]).unwrap();
        (0..s.conductor()).filter(|&n| !s.contains(n)).collect()
    };
    println!("gaps of <4,6,13>: {gaps:?}");

    match BranchSemigroup::new(vec![4, 6, 12]) {
        Ok(_) => unreachable!(),
        Err(e) => println!("<4,6,12> rejected: {e}"),
    }
}
