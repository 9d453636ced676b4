//! Seeded fixtures and the named theorem-check suites.
//!
//! Run with `cargo run --release --example fixtures_checks`.

use singlab::cli::check::{run_suite, Suite};
use singlab::cli::fixtures::{generate, FixtureKind};

fn main() {
    for kind in [FixtureKind::Semigroups, FixtureKind::Unitangent, FixtureKind::Params] {
        for v in generate(kind, 42, Some(2)) {
            println!("{kind:?}: {v}");
        }
    }
    for suite in Suite::EACH {
        let r = run_suite(suite, 42, suite.default_count().min(100));
        println!("{:<20} {:>4}/{:<4} {}", r.suite, r.passed, r.cases, if r.ok() { "ok" } else { "FAILED" });
    }
}
