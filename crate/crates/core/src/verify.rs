//! Exhaustive invariant sweeps over small crystals. Each sweep returns a
//! report listing every failing set, smallest first.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::crystal::{character as weight_character, demazure_top_down, enumerate_crystal, CeilingCache};
use crate::error::Result;
use crate::fock::{leading_coefficient_formula, standard_vector};
use crate::oracle;
use crate::roof::{demazure_bottom_up, roof, up_inverse, up_inverse_formula};
use crate::sets::{residue, IntegerSet, Word};

/// The sets `enumerate_crystal(m, n, max_height)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Suite {
    pub n: u32,
    pub m: i64,
    pub max_height: u64,
}

impl Suite {
    pub const fn new(n: u32, m: i64, max_height: u64) -> Self {
        Suite { n, m, max_height }
    }
}

/// The suites swept by the theorem, proposition and inverse checks.
pub const STANDARD_SUITES: [Suite; 4] = [
    Suite::new(2, 0, 10),
    Suite::new(3, 0, 8),
    Suite::new(4, 0, 7),
    Suite::new(5, 14, 6),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Set literal, or a word for the word-indexed sweeps.
    pub input: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub name: String,
    pub n: u32,
    pub m: i64,
    /// Height bound, or word-length bound for the word-indexed sweeps.
    pub bound: u64,
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    /// The first failure, which is the smallest input.
    pub fn minimal_counterexample(&self) -> Option<&Failure> {
        self.failures.first()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} n={} m={} bound={}: {} checked, {} failures, {} ms",
            self.name,
            self.n,
            self.m,
            self.bound,
            self.checked,
            self.failures.len(),
            self.elapsed_ms
        )
    }
}

fn run_parallel<T, F>(inputs: &[T], jobs: usize, check: F) -> Vec<Option<Failure>>
where
    T: Sync,
    F: Fn(&T) -> Option<Failure> + Sync + Send,
{
    if jobs <= 1 {
        return inputs.iter().map(&check).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| inputs.par_iter().map(&check).collect())
}

/// Sorted by height, then lexicographically, so that failures come out
/// smallest first.
fn sorted_suite(suite: Suite) -> Result<Vec<IntegerSet>> {
    let mut sets: Vec<IntegerSet> = enumerate_crystal(suite.m, suite.n, suite.max_height)?
        .into_iter()
        .collect();
    sets.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    Ok(sets)
}

fn set_sweep<F>(name: &str, suite: Suite, jobs: usize, check: F) -> Result<Report>
where
    F: Fn(&IntegerSet) -> Option<String> + Sync + Send,
{
    let start = Instant::now();
    let sets = sorted_suite(suite)?;
    let failures = run_parallel(&sets, jobs, |j| {
        check(j).map(|detail| Failure {
            input: j.to_string(),
            detail,
        })
    })
    .into_iter()
    .flatten()
    .collect();
    Ok(Report {
        name: name.to_string(),
        n: suite.n,
        m: suite.m,
        bound: suite.max_height,
        checked: sets.len(),
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// `roof(J) = ceiling(J)` for every set of the suite.
pub fn theorem1(suite: Suite, jobs: usize) -> Result<Report> {
    set_sweep("theorem1", suite, jobs, |j| {
        let r = match roof(j) {
            Ok(r) => r.set,
            Err(e) => return Some(e.to_string()),
        };
        let c = CeilingCache::new().ceiling(j);
        (r != c).then(|| format!("roof {} but ceiling {}", r, c))
    })
}

/// Number of elements of each residue above `floor`.
fn residue_counts(set: &IntegerSet, floor: i64) -> Vec<usize> {
    let n = set.n();
    let mut counts = vec![0; n as usize];
    for x in set.elements_above(floor) {
        counts[residue(x, n) as usize] += 1;
    }
    counts
}

/// Triangularity, equal heights, equal residue counts, and the leading
/// coefficient against the factorial formula.
pub fn prop3(suite: Suite, jobs: usize) -> Result<Report> {
    set_sweep("prop3", suite, jobs, |j| {
        let v = match standard_vector(j) {
            Ok(v) => v,
            Err(e) => return Some(e.to_string()),
        };
        let floor = v.support().map(IntegerSet::tail).chain([j.tail()]).min().unwrap() - 1;
        let counts = residue_counts(j, floor);
        for k in v.support() {
            if j.lex_compare(k).map_or(true, |o| o.is_lt()) {
                return Some(format!("support term {} is lex above", k));
            }
            if k.height() != j.height() {
                return Some(format!("support term {} has height {}", k, k.height()));
            }
            if residue_counts(k, floor) != counts {
                return Some(format!("support term {} has other residue counts", k));
            }
        }
        let lead = v.coefficient(j);
        let formula = leading_coefficient_formula(j).expect("bounded");
        (lead.magnitude() != &formula)
            .then(|| format!("leading coefficient {} but formula {}", lead, formula))
    })
}

fn show_sets(sets: &BTreeSet<IntegerSet>) -> String {
    sets.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" | ")
}

fn inverse_sweep(
    name: &str,
    suite: Suite,
    jobs: usize,
    inverse: fn(&IntegerSet) -> Result<BTreeSet<IntegerSet>>,
) -> Result<Report> {
    set_sweep(name, suite, jobs, |j| {
        let got = match inverse(j) {
            Ok(got) => got,
            Err(e) => return Some(e.to_string()),
        };
        let want = oracle::up_inverse_brute(j);
        (got != want).then(|| {
            format!("closed form [{}] but brute force [{}]", show_sets(&got), show_sets(&want))
        })
    })
}

/// [`up_inverse`] against the brute-force search.
pub fn upinv(suite: Suite, jobs: usize) -> Result<Report> {
    inverse_sweep("upinv", suite, jobs, up_inverse)
}

/// [`up_inverse_formula`] against the brute-force search.
pub fn upinv_formula(suite: Suite, jobs: usize) -> Result<Report> {
    inverse_sweep("upinv-formula", suite, jobs, up_inverse_formula)
}

fn word_sweep<F>(name: &str, n: u32, m: i64, max_len: usize, jobs: usize, check: F) -> Report
where
    F: Fn(&Word) -> Option<String> + Sync + Send,
{
    let start = Instant::now();
    let words = oracle::reduced_words(n, m, max_len);
    let failures = run_parallel(&words, jobs, |w| {
        check(w).map(|detail| Failure {
            input: format!("[{}]", w),
            detail,
        })
    })
    .into_iter()
    .flatten()
    .collect();
    Report {
        name: name.to_string(),
        n,
        m,
        bound: max_len as u64,
        checked: words.len(),
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// Top-down and bottom-up generation agree for every reduced word, and
/// reduced words with the same product give the same crystal.
pub fn generators(n: u32, m: i64, max_len: usize, jobs: usize) -> Result<Report> {
    let mut report = word_sweep("generators", n, m, max_len, jobs, |w| {
        let top_down = demazure_top_down(w, m).ok()?;
        let top = IntegerSet::vacuum(n, m).ok()?.weyl_apply(w).ok()?;
        let bottom_up = demazure_bottom_up(&top).ok()?;
        (top_down != bottom_up).then(|| {
            format!(
                "top-down has {} elements, bottom-up has {}",
                top_down.len(),
                bottom_up.len()
            )
        })
    });
    let start = Instant::now();
    let mut by_product: BTreeMap<IntegerSet, Vec<Word>> = BTreeMap::new();
    for w in oracle::reduced_words(n, m, max_len) {
        let top = IntegerSet::vacuum(n, m)?.weyl_apply(&w)?;
        by_product.entry(top).or_default().push(w);
    }
    for words in by_product.values().filter(|ws| ws.len() > 1) {
        let first = demazure_top_down(&words[0], m)?;
        for other in &words[1..] {
            report.checked += 1;
            if demazure_top_down(other, m)? != first {
                report.failures.push(Failure {
                    input: format!("[{}] vs [{}]", words[0], other),
                    detail: "same product, different crystals".to_string(),
                });
            }
        }
    }
    report.elapsed_ms += start.elapsed().as_millis();
    Ok(report)
}

/// Multiplicities sum to the crystal size and the weight multisets of the
/// two generators agree.
pub fn character(n: u32, m: i64, max_len: usize, jobs: usize) -> Result<Report> {
    Ok(word_sweep("character", n, m, max_len, jobs, |w| {
        let top_down = match demazure_top_down(w, m) {
            Ok(c) => c,
            Err(e) => return Some(e.to_string()),
        };
        let top = IntegerSet::vacuum(n, m).ok()?.weyl_apply(w).ok()?;
        let bottom_up = demazure_bottom_up(&top).ok()?;
        let ch_top = weight_character(&top_down);
        let ch_bottom = weight_character(&bottom_up);
        let total: usize = ch_top.values().sum();
        if total != top_down.len() {
            return Some(format!("multiplicities sum to {} for {} elements", total, top_down.len()));
        }
        (ch_top != ch_bottom).then(|| "weight multisets differ".to_string())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_are_clean() {
        let suite = Suite::new(3, 0, 5);
        for report in [
            theorem1(suite, 1).unwrap(),
            prop3(suite, 2).unwrap(),
            upinv(suite, 1).unwrap(),
            generators(2, 0, 4, 1).unwrap(),
            character(3, 0, 3, 2).unwrap(),
        ] {
            assert!(report.is_clean(), "{}", report.summary());
            assert!(report.checked > 0);
        }
    }

    #[test]
    fn reports_are_independent_of_jobs() {
        let suite = Suite::new(2, 1, 6);
        let a = prop3(suite, 1).unwrap();
        let b = prop3(suite, 3).unwrap();
        assert_eq!(a.checked, b.checked);
        assert_eq!(a.failures, b.failures);
    }

    #[test]
    fn residue_counts_of_vacuum() {
        let l = IntegerSet::vacuum(3, 2).unwrap();
        assert_eq!(residue_counts(&l, -1), vec![1, 1, 1]);
    }
}
