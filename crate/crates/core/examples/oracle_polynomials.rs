//! Polynomial ground truth: intersection numbers, Milnor numbers and polars.
//!
//! Run with `cargo run --example oracle_polynomials`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use singlab::oracle::model::binomial_model;
use singlab::oracle::{fulton, intersection_number, milnor_poly, tangent_count_poly, teissier_check, BivariatePoly};

fn p(s: &str) -> BivariatePoly {
    s.parse().expect("polynomial")
}

fn main() {
    let pairs = [("y^2-x^3", "y^2-2*x^3"), ("y^2-x^3", "x^2-y^3"), ("y^3-x^5", "y-x^2"), ("x*y", "x*(y+x)")];
    for (a, b) in pairs {
        let (f, g) = (p(a), p(b));
        println!("({a}, {b})_0 = {}  fulton {:?}", intersection_number(&f, &g).unwrap(), fulton(&f, &g).ok());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for text in ["y^2-x^3", "(y^2-x^3)*(y^2-2*x^3)", "y^3-y*x^4", "(y-x)*(y+x)*(y-2*x)"] {
        let f = p(text);
        let mu = milnor_poly(&f).unwrap();
        let t = teissier_check(&f, &mut rng).unwrap();
        println!(
            "{text}: mu {} m {} tangents {} polar {} holds {}",
            mu.mu,
            mu.multiplicity,
            tangent_count_poly(&f).unwrap(),
            t.polar_intersection,
            t.holds
        );
        if let Ok(model) = binomial_model(text) {
            println!("  model mu {}", model.milnor());
        }
    }
}
