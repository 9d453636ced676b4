//! Property tests over seeded random fixtures.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use singlab::blowup::{
    blowup_branch, blowup_curve, maximal_contact_stability, noether_holds, pham_milnor, MultiplicitySequence,
};
use singlab::curve::random::{random_permissive_curve, random_realizable_curve, random_semigroup, RealizableOptions};
use singlab::logdist::random::{random_scenario, random_ultrametric};
use singlab::logdist::{
    anchor_contract_holds, brute_force_delta_family, check_axioms, delta_curve_branch, delta_curve_family,
    inner_contact, two_smallest_equal, FamilyScenario,
};
use singlab::oracle::param::{param_blowup, BranchParam};
use singlab::oracle::{fulton, intersection_number, BivariatePoly, IntersectionNumber, UPoly};
use singlab::{BranchSemigroup, ExtRational, ReducedCurve};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn realizable(seed: u64, unitangent: bool) -> ReducedCurve {
    let opts = RealizableOptions { unitangent, ..RealizableOptions::default() };
    random_realizable_curve(&mut rng(seed), opts).curve
}

// --- semigroups --------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn char_exponents_round_trip(seed in any::<u64>()) {
        let s = random_semigroup(&mut rng(seed), 12, 3);
        prop_assert_eq!(s.to_char_exponents().to_semigroup().unwrap(), s);
    }

    #[test]
    fn conductor_matches_gaps(seed in any::<u64>()) {
        let s = random_semigroup(&mut rng(seed), 12, 3);
        let c = s.conductor();
        let v0 = s.multiplicity();
        prop_assert!((c..=c + v0).all(|n| s.contains(n)));
        if c > 0 {
            prop_assert!(!s.contains(c - 1));
        }
    }

    #[test]
    fn branch_contact_exponent_is_not_an_integer(seed in any::<u64>()) {
        let s = random_semigroup(&mut rng(seed), 12, 3);
        prop_assume!(!s.is_smooth());
        prop_assert!(!s.contact_exponent().is_integer());
    }

    #[test]
    fn higher_contact_strictly_increases(seed in any::<u64>()) {
        let s = random_semigroup(&mut rng(seed), 12, 3);
        let d: Vec<ExtRational> = (1..=s.genus()).map(|k| s.higher_contact(k).unwrap()).collect();
        prop_assert!(d.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(s.higher_contact(s.genus() + 1).is_err());
    }

    #[test]
    fn conductor_identity(seed in any::<u64>()) {
        let s = random_semigroup(&mut rng(seed), 12, 3);
        prop_assert_eq!(MultiplicitySequence::of(&s).conductor_sum(), s.conductor());
    }

    #[test]
    fn blowup_follows_the_first_generators(seed in any::<u64>()) {
        let s = random_semigroup(&mut rng(seed), 12, 3);
        prop_assume!(!s.is_smooth());
        let (v0, v1) = (s.generators()[0], s.generators()[1]);
        let t = blowup_branch(&s).unwrap();
        prop_assert_ne!(v1 - v0, v0);
        if v0 < v1 - v0 {
            prop_assert_eq!(&t.generators()[..2], &[v0, v1 - v0]);
        } else {
            prop_assert_eq!(t.multiplicity(), v1 - v0);
        }
    }
}

#[test]
fn two_generator_conductor() {
    for n in 2..=12u64 {
        for m in n + 1..=12 {
            if num_integer::gcd(n, m) == 1 {
                let s = BranchSemigroup::two_generator(n, m).unwrap();
                assert_eq!(s.conductor(), (n - 1) * (m - 1));
            }
        }
    }
}

// --- log-distance --------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn principal_formula(seed in any::<u64>()) {
        let (m, curve, family) = random_scenario(&mut rng(seed));
        let s = FamilyScenario::new(&m, curve, family).unwrap();
        let f = delta_curve_family(&s);
        prop_assert_eq!(&f.value, &brute_force_delta_family(&s));
        prop_assert!(anchor_contract_holds(&s, f.anchor));
    }

    #[test]
    fn isosceles(seed in any::<u64>(), n in 3usize..9) {
        let m = random_ultrametric(n, &mut rng(seed));
        prop_assert!(check_axioms(&m).is_valid());
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    prop_assert!(two_smallest_equal(m.get(i, j), m.get(j, k), m.get(i, k)));
                }
            }
        }
    }

    #[test]
    fn curve_contact_bounded_by_inner_contact(seed in any::<u64>(), n in 3usize..10) {
        let mut r = rng(seed);
        let m = random_ultrametric(n, &mut r);
        let size = r.gen_range(2..n);
        let curve: Vec<usize> = (0..size).collect();
        let (inner, _) = inner_contact(&m, &curve);
        for w in size..n {
            prop_assert!(delta_curve_branch(&m, &curve, w) <= inner);
        }
    }
}

// --- curves --------------------------------------------------------------------

fn curve_fixture(seed: u64) -> ReducedCurve {
    if seed % 2 == 0 {
        random_permissive_curve(&mut rng(seed), 5, 8)
    } else {
        realizable(seed, false)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn milnor_bound_and_eggers(seed in any::<u64>()) {
        let c = curve_fixture(seed);
        prop_assume!(!c.is_smooth_branch());
        let r = c.milnor_bound_report().unwrap();
        prop_assert!(ExtRational::from_integer(r.mu) >= r.bound);
        prop_assert_eq!(r.attained, r.e1_holds && r.e2_holds);
        prop_assert_eq!(r.attained, c.eggers_classify().unwrap().is_eggers());
    }

    #[test]
    fn contact_exponent_extremes(seed in any::<u64>()) {
        let c = curve_fixture(seed);
        prop_assert_eq!(c.contact_exponent() == ExtRational::one(), c.tangent_count() >= 2);
        prop_assert_eq!(c.contact_exponent().is_infinite(), c.is_smooth_branch());
    }

    #[test]
    fn integral_contact_below_branches(seed in any::<u64>()) {
        let c = realizable(seed, false);
        prop_assume!(c.branch_count() > 1);
        let d = c.contact_exponent();
        let branch_min = c.branches().iter().map(|b| b.contact_exponent()).min().unwrap();
        prop_assert_eq!(d < branch_min, d.is_integer());
    }

    #[test]
    fn unitangent_lower_bounds(seed in any::<u64>()) {
        let c = realizable(seed, true);
        prop_assume!(!c.is_smooth_branch());
        let m = c.multiplicity();
        let floor = ExtRational::from(BigRational::new(BigInt::from(m + 1), BigInt::from(m)));
        let d = c.contact_exponent();
        prop_assert!(d >= floor);
        let minimal = c.branch_count() == 1 && c.branches()[0].generators() == [m, m + 1];
        prop_assert_eq!(d == floor, minimal);
        prop_assert!(c.milnor() >= m * (m - 1));
        prop_assert_eq!(c.milnor() == m * (m - 1), d == floor);
    }

    #[test]
    fn minimal_polar_is_least_polar_invariant(seed in any::<u64>()) {
        let s = random_semigroup(&mut rng(seed), 12, 3);
        prop_assume!(!s.is_smooth());
        let q = s.polar_invariants().unwrap();
        let alpha = ReducedCurve::branch(s).minimal_polar_invariant().unwrap();
        prop_assert_eq!(q.iter().min(), Some(&alpha));
    }

    #[test]
    fn invariants_survive_permutation(seed in any::<u64>()) {
        let c = curve_fixture(seed);
        let mut r = rng(seed ^ 0x5eed);
        let mut perm: Vec<usize> = (0..c.branch_count()).collect();
        for i in (1..perm.len()).rev() {
            perm.swap(i, r.gen_range(0..=i));
        }
        let p = c.permuted(&perm);
        prop_assert_eq!(p.multiplicity(), c.multiplicity());
        prop_assert_eq!(p.branch_count(), c.branch_count());
        prop_assert_eq!(p.tangent_count(), c.tangent_count());
        prop_assert_eq!(p.contact_exponent(), c.contact_exponent());
        for k in 1..=c.max_genus() + 1 {
            prop_assert_eq!(p.higher_contact_exponent(k).unwrap(), c.higher_contact_exponent(k).unwrap());
        }
        prop_assert_eq!(p.milnor(), c.milnor());
        prop_assert_eq!(p.conductor_degree(), c.conductor_degree());
        prop_assert_eq!(p.eggers_classify().ok().map(|e| e.name()), c.eggers_classify().ok().map(|e| e.name()));
        // Equivalence: reflexive, symmetric, and transitive through a second shuffle.
        prop_assert!(c.equisingular(&c).unwrap().is_some());
        prop_assert!(c.equisingular(&p).unwrap().is_some());
        prop_assert!(p.equisingular(&c).unwrap().is_some());
        let q = p.permuted(&perm);
        prop_assert!(q.equisingular(&c).unwrap().is_some());
    }
}

// --- blowups -------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(192))]

    #[test]
    fn pham_equals_direct(seed in any::<u64>()) {
        let c = realizable(seed, seed % 3 == 0);
        prop_assert_eq!(pham_milnor(&c).unwrap(), c.milnor());
    }

    #[test]
    fn noether_consistency(seed in any::<u64>()) {
        let c = realizable(seed, true);
        prop_assume!(!c.is_smooth_branch());
        let t = blowup_curve(&c).unwrap();
        prop_assert!(noether_holds(&c, &t));
        for i in 0..c.branch_count() {
            for j in i + 1..c.branch_count() {
                let m = c.branches()[i].multiplicity() * c.branches()[j].multiplicity();
                prop_assert_eq!(c.intersection(i, j), m + t.intersection(i, j));
            }
        }
    }

    #[test]
    fn maximal_contact_is_stable(seed in any::<u64>()) {
        let opts = RealizableOptions { unitangent: true, ..RealizableOptions::default() };
        let rc = random_realizable_curve(&mut rng(seed), opts);
        prop_assume!(!rc.curve.is_smooth_branch());
        prop_assume!(rc.curve.contact_exponent() >= ExtRational::from_integer(2));
        let ext = rc.with_branch(rc.maximal_contact_line());
        let w = ext.curve.branch_count() - 1;
        let r = maximal_contact_stability(&ext.curve, w).unwrap();
        prop_assert!(r.maximal_before);
        prop_assert!(r.holds(), "{:?}", r);
    }

    #[test]
    fn oracle_square(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_semigroup(&mut r, 8, 3);
        prop_assume!(!s.is_smooth());
        let last = *s.to_char_exponents().exponents().last().unwrap();
        let p = BranchParam::random(&mut r, &s, last + 3).unwrap();
        prop_assert_eq!(p.semigroup().unwrap(), s.clone());
        let q = param_blowup(&p).unwrap();
        prop_assert_eq!(q.semigroup().unwrap(), blowup_branch(&s).unwrap());
    }
}

// --- polynomial oracle -----------------------------------------------------------

/// A polynomial through the origin with small coefficients and degree <= 3.
fn small_poly() -> impl Strategy<Value = BivariatePoly> {
    prop::collection::vec(((0u32..4, 0u32..4), -3i64..=3), 1..5).prop_filter_map("through 0, nonzero", |terms| {
        let f = BivariatePoly::from_terms(
            terms
                .into_iter()
                .filter(|((i, j), _)| i + j >= 1 && i + j <= 3)
                .map(|((i, j), c)| (BigRational::from_integer(BigInt::from(c)), i, j)),
        );
        (!f.is_zero()).then_some(f)
    })
}

fn cone_roots_disjoint(f: &BivariatePoly, g: &BivariatePoly) -> bool {
    let dehomogenize = |p: &BivariatePoly| {
        let init = p.initial_form().unwrap();
        let m = p.order().unwrap();
        UPoly::new((0..=m).map(|j| init.coeff(m - j, j)).collect())
    };
    let (a, b) = (dehomogenize(f), dehomogenize(g));
    let (mf, mg) = (f.order().unwrap() as usize, g.order().unwrap() as usize);
    // A degree deficit is a root at infinity, the tangent x = 0.
    let both_vertical = a.degree().unwrap_or(0) < mf && b.degree().unwrap_or(0) < mg;
    a.gcd(&b).degree() == Some(0) && !both_vertical
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn intersection_symmetry_and_fulton(f in small_poly(), g in small_poly()) {
        let a = intersection_number(&f, &g).unwrap();
        prop_assert_eq!(a, intersection_number(&g, &f).unwrap());
        // Fulton's reduction keeps no unit cancellation and cannot certify a shared component.
        if a.finite().is_some() {
            prop_assert_eq!(fulton(&f, &g).unwrap(), a);
        }
    }

    #[test]
    fn intersection_is_additive(f in small_poly(), g in small_poly(), h in small_poly()) {
        let fg = &f * &g;
        let lhs = intersection_number(&fg, &h).unwrap();
        let (a, b) = (intersection_number(&f, &h).unwrap(), intersection_number(&g, &h).unwrap());
        let rhs = match (a, b) {
            (IntersectionNumber::Finite(x), IntersectionNumber::Finite(y)) => IntersectionNumber::Finite(x + y),
            _ => IntersectionNumber::Infinite,
        };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn intersection_lower_bound(f in small_poly(), g in small_poly()) {
        let i = intersection_number(&f, &g).unwrap();
        let prod = u64::from(f.order().unwrap() * g.order().unwrap());
        if let IntersectionNumber::Finite(v) = i {
            prop_assert!(v >= prod);
        }
        prop_assert_eq!(i == IntersectionNumber::Finite(prod), cone_roots_disjoint(&f, &g));
    }

    #[test]
    fn shear_invariance(f in small_poly(), g in small_poly(), c in 0i64..4) {
        prop_assert_eq!(
            intersection_number(&f.shear(c), &g.shear(c)).unwrap(),
            intersection_number(&f, &g).unwrap()
        );
    }
}
