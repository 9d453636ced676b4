//! Theorem-check suites.
//!
//! Random case `i` of a suite draws from a ChaCha stream keyed by the seed
//! and `i`, so each case reproduces on its own and the summary does not
//! depend on execution order.

use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::blowup::{
    blowup_branch, blowup_char_exponents, hironaka_step, maximal_contact_stability, noether_holds, pham_milnor,
    reconstruct, HironakaCase, MultiplicitySequence,
};
use crate::curve::normal_forms::{binomial, binomial_milnor, line_times_binomial, line_times_binomial_milnor};
use crate::curve::random::{random_permissive_curve, random_realizable_curve, random_semigroup, RealizableOptions};
use crate::curve::{type3_integer, EggersType, ReducedCurve};
use crate::logdist::random::random_scenario;
use crate::logdist::{anchor_contract_holds, brute_force_delta_family, delta_curve_family, ExtRational, FamilyScenario};
use crate::oracle::model::binomial_model;
use crate::oracle::param::{param_blowup, BranchParam};
use crate::oracle::{intersection_number, milnor_poly, teissier_check, BivariatePoly};
use crate::semigroup::BranchSemigroup;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    TheoremPrincipal,
    MilnorBound,
    Hironaka,
    Pham,
    OracleSquare,
    ConductorIdentity,
    Teissier,
    HigherContact,
    NormalForms,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::TheoremPrincipal,
        Suite::MilnorBound,
        Suite::Hironaka,
        Suite::Pham,
        Suite::OracleSquare,
        Suite::ConductorIdentity,
        Suite::Teissier,
        Suite::HigherContact,
        Suite::NormalForms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TheoremPrincipal => "theorem-principal",
            Suite::MilnorBound => "milnor-bound",
            Suite::Hironaka => "hironaka",
            Suite::Pham => "pham",
            Suite::OracleSquare => "oracle-square",
            Suite::ConductorIdentity => "conductor-identity",
            Suite::Teissier => "teissier",
            Suite::HigherContact => "higher-contact",
            Suite::NormalForms => "normal-forms",
            Suite::All => "all",
        }
    }

    /// Random cases run when `--count` is absent.
    pub fn default_count(self) -> usize {
        match self {
            Suite::TheoremPrincipal => 500,
            Suite::MilnorBound | Suite::Hironaka | Suite::Pham | Suite::ConductorIdentity => 300,
            Suite::OracleSquare | Suite::HigherContact => 200,
            Suite::Teissier | Suite::NormalForms | Suite::All => 0,
        }
    }
}

/// A failed case with the data needed to replay it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub case: String,
    pub input: Value,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    /// The failure with the smallest input.
    pub counterexample: Option<Failure>,
    /// Per-suite tallies such as case splits.
    pub stats: Value,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.cases > 0
    }
}

type Check = Result<(), (Value, String)>;

struct Runner {
    suite: Suite,
    seed: u64,
    cases: usize,
    failures: Vec<Failure>,
    stats: serde_json::Map<String, Value>,
}

impl Runner {
    fn new(suite: Suite, seed: u64) -> Self {
        Self { suite, seed, cases: 0, failures: Vec::new(), stats: serde_json::Map::new() }
    }

    fn record(&mut self, case: String, r: Check) {
        self.cases += 1;
        if let Err((input, reason)) = r {
            self.failures.push(Failure { case, input, reason });
        }
    }

    fn random(&mut self, count: usize, mut f: impl FnMut(&mut ChaCha8Rng, usize, &mut Self) -> Check) {
        for i in 0..count {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            rng.set_stream(i as u64);
            let r = f(&mut rng, i, self);
            self.record(format!("random #{i}"), r);
        }
    }

    fn fixed(&mut self, name: impl Into<String>, r: Check) {
        self.record(name.into(), r);
    }

    fn bump(&mut self, key: &str) {
        let v = self.stats.entry(key).or_insert(json!(0));
        *v = json!(v.as_u64().unwrap_or(0) + 1);
    }

    fn finish(self) -> SuiteReport {
        let failed = self.failures.len();
        let counterexample = self.failures.into_iter().min_by_key(|f| f.input.to_string().len());
        SuiteReport {
            suite: self.suite.name(),
            seed: self.seed,
            cases: self.cases,
            passed: self.cases - failed,
            failed,
            counterexample,
            stats: Value::Object(self.stats),
        }
    }
}

fn ensure(cond: bool, input: &Value, reason: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err((input.clone(), reason()))
    }
}

fn err<E: std::fmt::Display>(input: &Value) -> impl FnOnce(E) -> (Value, String) + '_ {
    move |e| (input.clone(), e.to_string())
}

fn curve_json(c: &ReducedCurve) -> Value {
    serde_json::to_value(c).expect("curves serialize")
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run_suites(suite: Suite, seed: u64, count: Option<usize>, verbose: u8, log: &mut String) -> Vec<SuiteReport> {
    let list: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    list.into_iter()
        .map(|s| {
            let r = run_suite(s, seed, count.unwrap_or_else(|| s.default_count()));
            if verbose > 0 {
                log.push_str(&format!("{}: {}/{} passed\n", r.suite, r.passed, r.cases));
            }
            r
        })
        .collect()
}

pub fn run_suite(suite: Suite, seed: u64, count: usize) -> SuiteReport {
    let mut run = Runner::new(suite, seed);
    match suite {
        Suite::TheoremPrincipal => run.random(count, principal_case),
        Suite::MilnorBound => run.random(count, milnor_bound_case),
        Suite::Hironaka => run.random(count, hironaka_case),
        Suite::Pham => {
            pham_worked_values(&mut run);
            run.random(count, pham_case);
        }
        Suite::OracleSquare => {
            oracle_square_fixed(&mut run);
            run.random(count, oracle_square_case);
        }
        Suite::ConductorIdentity => run.random(count, conductor_case),
        Suite::Teissier => teissier_corpus(&mut run),
        Suite::HigherContact => {
            higher_contact_fixed(&mut run);
            run.random(count, higher_contact_case);
        }
        Suite::NormalForms => normal_forms(&mut run),
        Suite::All => unreachable!("expanded by run_suites"),
    }
    run.finish()
}

fn principal_case(rng: &mut ChaCha8Rng, _: usize, run: &mut Runner) -> Check {
    let (m, curve, family) = random_scenario(rng);
    let input = json!({ "matrix": m.rows(), "curve": curve, "family": family });
    let s = FamilyScenario::new(&m, curve, family).map_err(err(&input))?;
    let formula = delta_curve_family(&s);
    let brute = brute_force_delta_family(&s);
    run.bump(match formula.case {
        crate::logdist::AnchorCase::BranchSide => "branch_side",
        crate::logdist::AnchorCase::PairSide => "pair_side",
    });
    ensure(formula.value == brute, &input, || format!("formula {} vs brute force {brute}", formula.value))?;
    ensure(s.curve_to_branch(formula.witness) == brute, &input, || "witness does not attain the value".into())?;
    ensure(anchor_contract_holds(&s, formula.anchor), &input, || {
        format!("anchor {} has a maximal member that is not maximal for the curve", formula.anchor)
    })
}

fn milnor_bound_case(rng: &mut ChaCha8Rng, i: usize, run: &mut Runner) -> Check {
    let c = if i % 2 == 0 {
        random_permissive_curve(rng, 5, 8)
    } else {
        random_realizable_curve(rng, RealizableOptions::default()).curve
    };
    let input = curve_json(&c);
    if c.is_smooth_branch() {
        run.bump("smooth");
        return ensure(c.milnor() == 0, &input, || "smooth branch with nonzero Milnor number".into());
    }
    let r = c.milnor_bound_report().map_err(err(&input))?;
    let eggers = c.eggers_classify().map_err(err(&input))?;
    run.bump(eggers.name());
    ensure(ExtRational::from_integer(r.mu) >= r.bound, &input, || format!("mu {} below bound {}", r.mu, r.bound))?;
    ensure(r.attained == (r.e1_holds && r.e2_holds), &input, || {
        format!("attained {} but e1 {} e2 {}", r.attained, r.e1_holds, r.e2_holds)
    })?;
    ensure(r.attained == eggers.is_eggers(), &input, || format!("attained {} but type {}", r.attained, eggers.name()))?;
    if let EggersType::Type3 { .. } = eggers {
        ensure(type3_integer(&c).is_some(), &input, || "(m - 1) d is not an integer".into())?;
    }
    Ok(())
}

fn unitangent_fixture(rng: &mut ChaCha8Rng) -> crate::curve::random::RealizedCurve {
    let opts = RealizableOptions { unitangent: true, ..RealizableOptions::default() };
    loop {
        let rc = random_realizable_curve(rng, opts);
        if !rc.curve.is_smooth_branch() {
            return rc;
        }
    }
}

fn hironaka_case(rng: &mut ChaCha8Rng, _: usize, run: &mut Runner) -> Check {
    let rc = unitangent_fixture(rng);
    let c = &rc.curve;
    let input = curve_json(c);
    let rep = hironaka_step(c).map_err(err(&input))?;
    run.bump(match rep.case {
        HironakaCase::I => "case_i",
        HironakaCase::Ii => "case_ii",
    });
    ensure(noether_holds(c, &rep.transform), &input, || "Noether's formula fails".into())?;
    if rep.case == HironakaCase::Ii {
        let ext = rc.with_branch(rc.maximal_contact_line());
        let w = ext.curve.branch_count() - 1;
        let input = curve_json(&ext.curve);
        let mc = maximal_contact_stability(&ext.curve, w).map_err(err(&input))?;
        run.bump("maximal_contact");
        if mc.multiplicity_dropped {
            run.bump("maximal_contact_multiplicity_dropped");
        }
        ensure(mc.maximal_before, &input, || "adjoined line lacks maximal contact".into())?;
        ensure(mc.holds(), &input, || format!("{mc:?}"))?;
    }
    Ok(())
}

fn pham_worked_values(run: &mut Runner) {
    let cusp = BranchSemigroup::two_generator(2, 3).expect("valid");
    for (name, d, mu) in [("transverse cusps", ExtRational::one(), 11), ("tangent cusps", ExtRational::frac(3, 2), 15)] {
        let c = ReducedCurve::equal_contact(vec![cusp.clone(); 2], d).expect("valid");
        let input = curve_json(&c);
        let r = pham_milnor(&c).map_err(err(&input)).and_then(|p| {
            ensure(p == mu && c.milnor() == mu, &input, || format!("pham {p}, direct {}, expected {mu}", c.milnor()))
        });
        run.fixed(name, r);
    }
    let text = "(y^2-x^3)*(y^2-2*x^3)";
    let input = json!(text);
    let r = text
        .parse::<BivariatePoly>()
        .map_err(err(&input))
        .and_then(|f| milnor_poly(&f).map_err(err(&input)))
        .and_then(|m| ensure(m.mu == 15, &input, || format!("polynomial oracle gives {}", m.mu)));
    run.fixed("tangent cusps polynomial", r);
}

fn pham_case(rng: &mut ChaCha8Rng, i: usize, run: &mut Runner) -> Check {
    let opts = RealizableOptions { unitangent: i % 3 == 0, ..RealizableOptions::default() };
    let c = random_realizable_curve(rng, opts).curve;
    let input = curve_json(&c);
    let p = pham_milnor(&c).map_err(err(&input))?;
    run.bump(if c.is_unitangent() { "unitangent" } else { "several_tangents" });
    ensure(p == c.milnor(), &input, || format!("pham {p}, direct {}", c.milnor()))
}

fn param_square(p: &BranchParam) -> Check {
    let input = serde_json::to_value(p).expect("serializable");
    let s = p.semigroup().map_err(err(&input))?;
    let q = param_blowup(p).map_err(err(&input))?;
    let analytic = q.semigroup().map_err(err(&input))?;
    let combinatorial = blowup_branch(&s).map_err(err(&input))?;
    ensure(analytic == combinatorial, &input, || {
        format!("param blowup gives {:?}, semigroup rule {:?}", analytic.generators(), combinatorial.generators())
    })
}

fn oracle_square_fixed(run: &mut Runner) {
    let one = || BigRational::from_integer(BigInt::from(1));
    for (n, exps, expected) in [
        (4u64, vec![6u64, 7], vec![2u64, 5]),
        (4, vec![9, 10], vec![4, 5]),
        (2, vec![3], vec![1]),
    ] {
        let name = format!("t^{n} with {exps:?}");
        let p = BranchParam::new(n, exps.iter().map(|&e| (e, one())).collect(), 64).expect("valid fixture");
        let input = serde_json::to_value(&p).unwrap();
        let r = param_square(&p).and_then(|_| {
            let got = param_blowup(&p).and_then(|q| q.semigroup()).map_err(err(&input))?;
            ensure(got.generators() == expected.as_slice(), &input, || format!("got {:?}", got.generators()))
        });
        run.fixed(name, r);
    }
}

fn oracle_square_case(rng: &mut ChaCha8Rng, _: usize, run: &mut Runner) -> Check {
    let s = loop {
        let s = random_semigroup(rng, 8, 3);
        if !s.is_smooth() {
            break s;
        }
    };
    let last = *s.to_char_exponents().exponents().last().unwrap();
    let trunc = last + 1 + rand::Rng::gen_range(rng, 0..4);
    let input = json!({ "semigroup": s, "trunc": trunc });
    let p = BranchParam::random(rng, &s, trunc).map_err(err(&input))?;
    let got = p.semigroup().map_err(err(&input))?;
    ensure(got == s, &input, || format!("parametrization has semigroup {:?}", got.generators()))?;
    run.bump(&format!("genus_{}", s.genus()));
    param_square(&p)
}

fn conductor_case(rng: &mut ChaCha8Rng, _: usize, run: &mut Runner) -> Check {
    let s = random_semigroup(rng, 12, 3);
    let input = json!(s);
    run.bump(&format!("genus_{}", s.genus()));
    let seq = MultiplicitySequence::of(&s);
    ensure(seq.conductor_sum() == s.conductor(), &input, || {
        format!("sum m(m-1) = {} but conductor {}", seq.conductor_sum(), s.conductor())
    })?;
    let back = reconstruct(seq.values()).map_err(err(&input))?;
    ensure(back == s, &input, || format!("sequence {:?} reconstructs {:?}", seq.values(), back.generators()))?;
    if !s.is_smooth() {
        let a = blowup_branch(&s).map_err(err(&input))?;
        let b = blowup_char_exponents(&s).map_err(err(&input))?;
        ensure(a == b, &input, || format!("{:?} vs {:?}", a.generators(), b.generators()))?;
    }
    Ok(())
}

/// Polynomials with known combinatorial models.
pub fn golden_corpus() -> Vec<String> {
    let mut out = Vec::new();
    for n in 2..=6u64 {
        for m in n + 1..=6 {
            if num_integer::gcd(n, m) == 1 {
                out.push(format!("y^{n}-x^{m}"));
            }
        }
    }
    for n in 2..=4u64 {
        for m in n..=6 {
            out.push(format!("y^{n}-y*x^{m}"));
        }
    }
    out.extend(
        [
            "(y^2-x^3)*(y^2-2*x^3)",
            "(y^2-x^3)*(x^2-y^3)",
            "y^4-x^6",
            "x*y*(y-x)",
            "(y^2-x^5)*(y-x^2)*x",
            "(y^3-x^4)*(y^3-2*x^4)",
            "y*(y^2-x^5)",
        ]
        .map(String::from),
    );
    out
}

fn teissier_corpus(run: &mut Runner) {
    for (i, text) in golden_corpus().into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
        rng.set_stream(i as u64);
        let input = json!(text);
        let r = (|| -> Check {
            let f: BivariatePoly = text.parse().map_err(err(&input))?;
            let rep = teissier_check(&f, &mut rng).map_err(err(&input))?;
            ensure(rep.holds, &input, || format!("{rep:?}"))?;
            let model = binomial_model(&text).map_err(err(&input))?;
            ensure(model.milnor() == rep.mu, &input, || format!("model mu {} vs {}", model.milnor(), rep.mu))?;
            // (C, P)_0 >= alpha (m - 1), with equality exactly for Eggers singularities.
            let alpha = model.minimal_polar_invariant().map_err(err(&input))?;
            let lower = alpha.scale(u64::from(rep.multiplicity) - 1);
            let fp = ExtRational::from_integer(rep.polar_intersection);
            let eggers = model.eggers_classify().map_err(err(&input))?.is_eggers();
            ensure(fp >= lower && (fp == lower) == eggers, &input, || {
                format!("(C, P) = {fp}, alpha (m - 1) = {lower}, Eggers {eggers}")
            })
        })();
        run.fixed(format!("polar {text}"), r);
    }
}

fn higher_contact_fixed(run: &mut Runner) {
    let s = BranchSemigroup::new(vec![4, 6, 13]).expect("valid");
    let input = json!(s);
    let r = (|| -> Check {
        let d1 = s.higher_contact(1).map_err(err(&input))?;
        let d2 = s.higher_contact(2).map_err(err(&input))?;
        ensure(d1 == ExtRational::frac(3, 2) && d2 == ExtRational::frac(13, 8), &input, || {
            format!("d_k = ({d1}, {d2})")
        })?;
        let q = s.polar_invariants().map_err(err(&input))?;
        ensure(q == vec![ExtRational::from_integer(6), ExtRational::frac(13, 2)], &input, || format!("Q = {q:?}"))
    })();
    run.fixed("<4,6,13>", r);
}

/// Realizable fixtures only: on bare contact data a smooth stand-in attached
/// to one branch can exceed the maximal smooth contact of another.
fn higher_contact_case(rng: &mut ChaCha8Rng, _: usize, run: &mut Runner) -> Check {
    let c = random_realizable_curve(rng, RealizableOptions::default()).curve;
    let input = curve_json(&c);
    let genera: std::collections::BTreeSet<usize> = c.branches().iter().map(|b| b.genus()).collect();
    if genera.len() > 1 {
        run.bump("mixed_genus");
    }
    let d1 = c.higher_contact_exponent(1).map_err(err(&input))?;
    ensure(d1 == c.contact_exponent(), &input, || format!("d_1 = {d1} but d = {}", c.contact_exponent()))?;
    for k in 1..=c.max_genus() + 1 {
        let direct = c.higher_contact_exponent(k).map_err(err(&input))?;
        let via = c.higher_contact_via_family(k);
        ensure(direct == via, &input, || format!("d_{k}: formula {direct}, log-distance {via}"))?;
    }
    for b in c.branches().iter().filter(|b| !b.is_smooth()) {
        let q = b.polar_invariants().map_err(err(&input))?;
        let expected: Vec<ExtRational> =
            (1..=b.genus()).map(|k| b.higher_contact(k).expect("k <= g").scale(b.multiplicity())).collect();
        ensure(q == expected, &input, || format!("Q {q:?} vs m d_k {expected:?}"))?;
        let alpha = ReducedCurve::branch(b.clone()).minimal_polar_invariant().map_err(err(&input))?;
        ensure(q.iter().min() == Some(&alpha), &input, || format!("min Q vs alpha {alpha}"))?;
    }
    Ok(())
}

fn normal_forms(run: &mut Runner) {
    for n in 2..=6u64 {
        for m in n + 1..=6 {
            if num_integer::gcd(n, m) != 1 {
                continue;
            }
            let text = format!("y^{n}-x^{m}");
            let input = json!(text);
            let r = (|| -> Check {
                let f: BivariatePoly = text.parse().map_err(err(&input))?;
                let mu = milnor_poly(&f).map_err(err(&input))?.mu;
                let s = BranchSemigroup::two_generator(n, m).map_err(err(&input))?;
                let expected = binomial_milnor(n, m);
                ensure(mu == expected && s.milnor() == expected, &input, || {
                    format!("oracle {mu}, semigroup {}, closed form {expected}", s.milnor())
                })?;
                let model = binomial(n, m).map_err(err(&input))?;
                ensure(model.contact_exponent() == ExtRational::frac(m, n), &input, || "d != m/n".into())?;
                let parsed = binomial_model(&text).map_err(err(&input))?;
                ensure(parsed.equisingular(&model).map_err(err(&input))?.is_some(), &input, || {
                    "parsed model differs".into()
                })
            })();
            run.fixed(text.clone(), r);
        }
    }
    for n in 2..=4u64 {
        for m in n..=6 {
            let text = format!("y^{n}-y*x^{m}");
            let input = json!(text);
            let r = (|| -> Check {
                let f: BivariatePoly = text.parse().map_err(err(&input))?;
                let mu = milnor_poly(&f).map_err(err(&input))?.mu;
                let model = line_times_binomial(n, m).map_err(err(&input))?;
                let expected = line_times_binomial_milnor(n, m);
                ensure(mu == expected && model.milnor() == expected, &input, || {
                    format!("oracle {mu}, model {}, closed form {expected}", model.milnor())
                })?;
                ensure(model.contact_exponent() == ExtRational::frac(m, n - 1), &input, || "d != m/(n-1)".into())?;
                let eggers = model.eggers_classify().map_err(err(&input))?;
                ensure(eggers.is_eggers(), &input, || format!("type {}", eggers.name()))?;
                let parsed = binomial_model(&text).map_err(err(&input))?;
                ensure(parsed.equisingular(&model).map_err(err(&input))?.is_some(), &input, || {
                    "parsed model differs".into()
                })
            })();
            run.fixed(text.clone(), r);
        }
    }
    // Symmetry, shear invariance and the lower bound ord f ord g of the
    // intersection engine, pairing each corpus curve with fixed probes.
    for text in golden_corpus() {
        for probe in ["y-2*x", "y^2-3*x^5", "x*y+x^3+y^4"] {
            let input = json!([text, probe]);
            let r = (|| -> Check {
                let f: BivariatePoly = text.parse().map_err(err(&input))?;
                let g: BivariatePoly = probe.parse().map_err(err(&input))?;
                let base = intersection_number(&f, &g).map_err(err(&input))?;
                ensure(intersection_number(&g, &f).map_err(err(&input))? == base, &input, || "asymmetric".into())?;
                for c in 1..=3 {
                    let sheared = intersection_number(&f.shear(c), &g.shear(c)).map_err(err(&input))?;
                    ensure(sheared == base, &input, || format!("shear {c}: {sheared} vs {base}"))?;
                }
                let lower = u64::from(f.order().map_err(err(&input))? * g.order().map_err(err(&input))?);
                ensure(base.finite().is_some_and(|i| i >= lower), &input, || format!("{base} below {lower}"))
            })();
            run.fixed(format!("intersection {text} / {probe}"), r);
        }
    }
}
