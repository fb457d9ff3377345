//! Built-in reproduction suite: re-derives the worked reference examples
//! (SeedSets, predicted periods, measured periods) and reports each
//! expected/actual pair.

use crate::numtheory::OddPrime;
use crate::recursive_rng::{self, RecursiveConfig};
use crate::Result;

/// One expected/actual comparison from the reproduction suite.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
    pub note: Option<String>,
}

impl Check {
    fn compare<T: PartialEq + std::fmt::Debug>(name: &'static str, expected: T, actual: T) -> Self {
        Check {
            name,
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
            passed: expected == actual,
            note: None,
        }
    }

    fn measured(name: &'static str, expected: u64, measured: Option<u64>) -> Self {
        Check {
            name,
            expected: expected.to_string(),
            actual: measured.map_or_else(|| "none".into(), |v| v.to_string()),
            passed: measured == Some(expected),
            note: None,
        }
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

fn primes(vs: &[u64]) -> Vec<OddPrime> {
    vs.iter().map(|&v| OddPrime::new(v).unwrap()).collect()
}

/// The reference parameter set whose documented period (3639) disagrees
/// with both the derivation and the brute-force measurement (3696).
pub const DOCUMENTED_MISMATCH: (u64, [u64; 2], [u64; 2], u64, u64) =
    (2, [5, 7], [23, 29], 3639, 3696);

/// Note attached when a period report covers the mismatched parameter
/// set: seed 2, inner {5, 7}, outer {23, 29}.
pub fn documented_mismatch_note(cfg: &RecursiveConfig) -> Option<String> {
    let (seed, inner, outer, quoted, computed) = DOCUMENTED_MISMATCH;
    let mut cfg_inner: Vec<u64> = cfg.inner_primes().iter().map(|p| p.get()).collect();
    let mut cfg_outer: Vec<u64> = cfg.outer_primes().iter().map(|p| p.get()).collect();
    cfg_inner.sort_unstable();
    cfg_outer.sort_unstable();
    if cfg.seed() == seed && cfg_inner == inner && cfg_outer == outer {
        Some(format!(
            "quoted reference period {quoted} is not a multiple of the SeedSet size 12; \
             prediction and brute-force measurement both give {computed}"
        ))
    } else {
        None
    }
}

/// Runs every reproduction check. Failures are reported, not raised;
/// errors surface only if a reference configuration fails to build.
pub fn reproduction_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    // Example 1: seed 2, inner {3, 5}, outer {7, 11}
    let ex1 = RecursiveConfig::new(2, primes(&[3, 5]), primes(&[7, 11]), 1)?;
    let seedset = recursive_rng::build_seedset(&ex1)?;
    checks.push(Check::compare(
        "example-1 SeedSet",
        vec![4u64, 5, 5, 2],
        seedset.values().to_vec(),
    ));
    let report = recursive_rng::predict_period(&ex1)?;
    checks.push(Check::compare(
        "example-1 outer period",
        30,
        report.outer_period,
    ));
    checks.push(Check::compare(
        "example-1 predicted period",
        120,
        report.total_period,
    ));
    checks.push(Check::measured(
        "example-1 measured period",
        120,
        recursive_rng::measure_period(&ex1, 480)?.minimal(),
    ));

    // Example 2: seed 2, inner {23, 29}, outer {7, 11}
    let ex2 = RecursiveConfig::new(2, primes(&[23, 29]), primes(&[7, 11]), 1)?;
    let report = recursive_rng::predict_period(&ex2)?;
    checks.push(Check::compare(
        "example-2 inner period",
        308,
        report.inner_period,
    ));
    checks.push(Check::compare(
        "example-2 predicted period",
        9240,
        report.total_period,
    ));
    checks.push(Check::measured(
        "example-2 measured period",
        9240,
        recursive_rng::measure_period(&ex2, 18_480)?.minimal(),
    ));

    // Reference configuration A: seed 2, inner {3, 7}, outer {23, 29}
    let left = RecursiveConfig::new(2, primes(&[3, 7]), primes(&[23, 29]), 1)?;
    let report = recursive_rng::predict_period(&left)?;
    checks.push(Check::compare(
        "inner {3,7} outer {23,29} predicted period",
        1848,
        report.total_period,
    ));
    checks.push(Check::measured(
        "inner {3,7} outer {23,29} measured period",
        1848,
        recursive_rng::measure_period(&left, 7392)?.minimal(),
    ));

    // Reference configuration B: seed 2, inner {5, 7}, outer {23, 29}.
    // The documented period for this set is 3639; the derivation forces a
    // multiple of the SeedSet size 12, and measurement agrees on 3696.
    let right = RecursiveConfig::new(2, primes(&[5, 7]), primes(&[23, 29]), 1)?;
    let report = recursive_rng::predict_period(&right)?;
    let note = documented_mismatch_note(&right).expect("parameters match by construction");
    checks.push(
        Check::compare(
            "inner {5,7} outer {23,29} predicted period",
            3696,
            report.total_period,
        )
        .with_note(note.clone()),
    );
    checks.push(
        Check::measured(
            "inner {5,7} outer {23,29} measured period",
            3696,
            recursive_rng::measure_period(&right, 7392)?.minimal(),
        )
        .with_note(note),
    );

    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_reference_checks_pass() {
        let checks = reproduction_checks().unwrap();
        assert!(!checks.is_empty());
        for c in &checks {
            assert!(
                c.passed,
                "{}: expected {} got {}",
                c.name, c.expected, c.actual
            );
        }
    }

    #[test]
    fn mismatch_note_present_on_both_sides() {
        let checks = reproduction_checks().unwrap();
        let noted: Vec<_> = checks.iter().filter(|c| c.note.is_some()).collect();
        assert_eq!(noted.len(), 2);
        for c in noted {
            let note = c.note.as_ref().unwrap();
            assert!(note.contains("3639") && note.contains("3696"));
        }
    }

    #[test]
    fn tampered_check_reports_failure() {
        // Negative control: a deliberately wrong expectation must fail.
        let mut checks = reproduction_checks().unwrap();
        checks[0] = Check::compare("off by one", 121, 120);
        assert!(!checks.iter().all(|c| c.passed));
    }

    #[test]
    fn mismatch_note_only_for_the_documented_config() {
        let cfg = RecursiveConfig::new(2, primes(&[3, 5]), primes(&[7, 11]), 1).unwrap();
        assert!(documented_mismatch_note(&cfg).is_none());
        let cfg = RecursiveConfig::new(2, primes(&[7, 5]), primes(&[29, 23]), 1).unwrap();
        assert!(documented_mismatch_note(&cfg).is_some());
    }
}
