//! Crystal operators on `𝒞(L_m)`, weights and characters, the top-down
//! Demazure crystal, and the ceiling of a set.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sets::{residue, IntegerSet, Word};

/// Unpaired elements left after cancelling every `i`-element that is
/// immediately followed by an `(i+1)`-element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Signature {
    /// Leftover `(i+1)`-elements, ascending. `e_i` acts on the last one.
    pub upper: Vec<i64>,
    /// Leftover `i`-elements, ascending. `f_i` acts on the first one.
    pub lower: Vec<i64>,
}

/// Panics if `i >= n`.
pub fn signature(i: u32, set: &IntegerSet) -> Signature {
    let n = set.n();
    assert!(i < n, "residue {} out of range for n={}", i, n);
    let next = (i + 1) % n;
    // Below a cut not congruent to i, the tail consists of cancelled pairs.
    let lo = if residue(set.tail(), n) == i {
        set.tail() - 1
    } else {
        set.tail()
    };
    let mut sig = Signature::default();
    for x in set.elements_above(lo) {
        let r = residue(x, n);
        if r == i {
            sig.lower.push(x);
        } else if r == next && sig.lower.pop().is_none() {
            sig.upper.push(x);
        }
    }
    sig
}

/// Lowering operator: moves the smallest unpaired `i`-element up by one.
pub fn f(i: u32, set: &IntegerSet) -> Option<IntegerSet> {
    let r = *signature(i, set).lower.first()?;
    Some(set.moved(r, r + 1))
}

/// Raising operator: moves the largest unpaired `(i+1)`-element down by one.
pub fn e(i: u32, set: &IntegerSet) -> Option<IntegerSet> {
    let r = *signature(i, set).upper.last()?;
    Some(set.moved(r, r - 1))
}

pub fn f_max(i: u32, set: &IntegerSet) -> (IntegerSet, usize) {
    let mut current = set.clone();
    let mut count = 0;
    while let Some(next) = f(i, &current) {
        current = next;
        count += 1;
    }
    (current, count)
}

pub fn e_max(i: u32, set: &IntegerSet) -> (IntegerSet, usize) {
    let mut current = set.clone();
    let mut count = 0;
    while let Some(next) = e(i, &current) {
        current = next;
        count += 1;
    }
    (current, count)
}

/// Closes `sets` under all powers of `f_i`.
fn close_under_f(i: u32, sets: BTreeSet<IntegerSet>) -> BTreeSet<IntegerSet> {
    let mut out = BTreeSet::new();
    for set in sets {
        let mut current = Some(set);
        while let Some(s) = current {
            current = f(i, &s);
            if !out.insert(s) {
                // the rest of this string is already present
                break;
            }
        }
    }
    out
}

/// `𝒞_w(L_m) = { f_{i_1}^{k_1} ⋯ f_{i_t}^{k_t} L_m }` for a reduced word.
pub fn demazure_top_down(word: &Word, m: i64) -> Result<BTreeSet<IntegerSet>> {
    if !word.is_reduced_at(m) {
        return Err(Error::NotReduced(word.to_string()));
    }
    let start = IntegerSet::vacuum(word.n(), m)?;
    Ok(word
        .residues()
        .iter()
        .rev()
        .fold(BTreeSet::from([start]), |acc, &i| close_under_f(i, acc)))
}

/// Decides `J ∈ 𝒞_w(L_m)` by stripping the letters of `w` from the left
/// with maximal raising powers.
pub fn member_by_word(set: &IntegerSet, word: &Word) -> bool {
    let end = word
        .residues()
        .iter()
        .fold(set.clone(), |acc, &i| e_max(i, &acc).0);
    end.is_vacuum()
}

/// Memoized ceiling computation. The ceiling of `J` is the extremal set of
/// the smallest Demazure crystal containing `J`.
#[derive(Debug, Default)]
pub struct CeilingCache {
    memo: HashMap<IntegerSet, IntegerSet>,
}

impl CeilingCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `ceil(L_m) = L_m`; otherwise with `r = min J_{>a(J)}` and
    /// `K = e_{r−1}^max J`, `ceil(J) = s_{r−1} ceil(K)`.
    pub fn ceiling(&mut self, set: &IntegerSet) -> IntegerSet {
        let n = set.n();
        let mut pending: Vec<(IntegerSet, u32)> = Vec::new();
        let mut current = set.clone();
        let mut result = loop {
            if current.is_vacuum() {
                break current;
            }
            if let Some(hit) = self.memo.get(&current) {
                break hit.clone();
            }
            let r = current.above()[0];
            let letter = residue(r - 1, n);
            let (lowered, count) = e_max(letter, &current);
            assert!(count > 0 && lowered.height() < current.height());
            pending.push((current, letter));
            current = lowered;
        };
        while let Some((j, letter)) = pending.pop() {
            result = result.simple_reflection(letter);
            self.memo.insert(j, result.clone());
        }
        result
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

pub fn ceiling(set: &IntegerSet) -> IntegerSet {
    CeilingCache::new().ceiling(set)
}

/// `Λ_m − Σ c_i α_i`, with `m` reduced mod `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight {
    pub m: u32,
    pub c: Vec<u64>,
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ{}", self.m)?;
        for (i, &c) in self.c.iter().enumerate() {
            match c {
                0 => {}
                1 => write!(f, " - α{}", i)?,
                _ => write!(f, " - {}α{}", c, i)?,
            }
        }
        Ok(())
    }
}

/// Weight of `J ∈ 𝒞(L_m)`. The residue excesses `N_c` over `L_m` fix the
/// differences `c_c − c_{c−1} = −N_c`; the `δ` freedom is removed by
/// `Σ c_i = height(J)`.
pub fn weight(set: &IntegerSet) -> Weight {
    let n = set.n() as usize;
    let m = set.order();
    let mut excess = vec![0i64; n];
    for &x in set.above() {
        excess[residue(x, n as u32) as usize] += 1;
    }
    for x in set.tail() + 1..=m {
        excess[residue(x, n as u32) as usize] -= 1;
    }
    let mut offsets = vec![0i64; n];
    for k in 1..n {
        offsets[k] = offsets[k - 1] - excess[k];
    }
    let total = set.height() as i64 - offsets.iter().sum::<i64>();
    assert_eq!(total.rem_euclid(n as i64), 0, "weight system has no integral solution");
    let c0 = total / n as i64;
    let c: Vec<u64> = offsets
        .iter()
        .map(|&o| {
            let v = c0 + o;
            assert!(v >= 0, "negative root coefficient in weight of {}", set);
            v as u64
        })
        .collect();
    Weight {
        m: residue(m, n as u32),
        c,
    }
}

/// Weight multiplicities of a finite set of crystal elements.
pub fn character<'a>(sets: impl IntoIterator<Item = &'a IntegerSet>) -> BTreeMap<Weight, usize> {
    let mut out = BTreeMap::new();
    for set in sets {
        *out.entry(weight(set)).or_insert(0) += 1;
    }
    out
}

/// Every n-bounded set of order `m` with height at most `max_height`,
/// grown level by level from `L_m` by raising single elements.
pub fn enumerate_crystal(m: i64, n: u32, max_height: u64) -> Result<BTreeSet<IntegerSet>> {
    let start = IntegerSet::vacuum(n, m)?;
    let mut all = BTreeSet::from([start.clone()]);
    let mut level = BTreeSet::from([start]);
    for _ in 0..max_height {
        let mut next = BTreeSet::new();
        for set in &level {
            for x in std::iter::once(set.tail()).chain(set.above().iter().copied()) {
                if set.contains(x + 1) {
                    continue;
                }
                let raised = set.moved(x, x + 1);
                if raised.is_n_bounded() {
                    next.insert(raised);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    Ok(all)
}

/// Labelled edges `J —i→ f_i(J)` with both ends in `sets`.
pub fn crystal_edges(sets: &BTreeSet<IntegerSet>) -> Vec<(IntegerSet, u32, IntegerSet)> {
    let mut edges = Vec::new();
    for set in sets {
        for i in 0..set.n() {
            if let Some(target) = f(i, set) {
                if sets.contains(&target) {
                    edges.push((set.clone(), i, target));
                }
            }
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn example() -> IntegerSet {
        IntegerSet::new(5, 0, [3, 4, 7, 10, 12, 14, 17, 18, 23, 27, 32, 33, 35, 37]).unwrap()
    }

    fn set(n: u32, tail: i64, elems: &[i64]) -> IntegerSet {
        IntegerSet::new(n, tail, elems.iter().copied()).unwrap()
    }

    #[test]
    fn signature_of_example() {
        let sig = signature(2, &example());
        assert_eq!(sig.upper, vec![3]);
        assert_eq!(sig.lower, vec![7, 27, 37]);
    }

    #[test]
    fn signature_of_vacuum() {
        for n in [2u32, 3, 5] {
            let m = 7;
            let l = IntegerSet::vacuum(n, m).unwrap();
            for i in 0..n {
                let sig = signature(i, &l);
                assert!(sig.upper.is_empty());
                if i == residue(m, n) {
                    assert_eq!(sig.lower, vec![m]);
                } else {
                    assert!(sig.lower.is_empty());
                }
            }
        }
    }

    #[test]
    fn operators_on_example() {
        let j = example();
        assert_eq!(f(2, &j), Some(j.moved(7, 8)));
        let (_, count) = f_max(2, &j);
        assert_eq!(count, 3);
        let f3 = f(2, &f(2, &f(2, &j).unwrap()).unwrap()).unwrap();
        assert_eq!(f(2, &f3), None);
        let e1 = e(2, &j).unwrap();
        assert_eq!(e1, j.moved(3, 2));
        assert_eq!(e(2, &e1), None);
        assert_eq!(e_max(2, &j).1, 1);
    }

    #[test]
    fn operators_on_vacuum() {
        for n in [2u32, 3, 4] {
            let m = -3;
            let l = IntegerSet::vacuum(n, m).unwrap();
            for i in 0..n {
                assert_eq!(e(i, &l), None);
                if i == residue(m, n) {
                    assert_eq!(f(i, &l), Some(set(n, m - 1, &[m + 1])));
                } else {
                    assert_eq!(f(i, &l), None);
                }
                assert_eq!(e_max(i, &l), (l.clone(), 0));
            }
        }
    }

    #[test]
    fn signature_matches_counting_definition() {
        for n in [2u32, 3, 4] {
            for j in enumerate_crystal(1, n, 7).unwrap() {
                for i in 0..n {
                    assert_eq!(f(i, &j), oracle::f_by_counts(i, &j), "f_{} J = {}", i, j);
                    assert_eq!(e(i, &j), oracle::e_by_counts(i, &j), "e_{} J = {}", i, j);
                }
            }
        }
    }

    #[test]
    fn crystal_laws() {
        for n in [2u32, 3, 4] {
            for j in enumerate_crystal(0, n, 8).unwrap() {
                for i in 0..n {
                    let sig = signature(i, &j);
                    assert_eq!(f_max(i, &j).1, sig.lower.len());
                    assert_eq!(e_max(i, &j).1, sig.upper.len());
                    if let Some(k) = f(i, &j) {
                        assert_eq!(e(i, &k), Some(j.clone()));
                        assert_eq!(k.height(), j.height() + 1);
                        assert_eq!(k.order(), j.order());
                        assert!(k.is_n_bounded());
                        let mut expected = weight(&j);
                        expected.c[i as usize] += 1;
                        assert_eq!(weight(&k), expected);
                    }
                    if let Some(k) = e(i, &j) {
                        assert_eq!(f(i, &k), Some(j.clone()));
                    }
                }
            }
        }
    }

    #[test]
    fn weight_examples() {
        let l = IntegerSet::vacuum(3, 4).unwrap();
        assert_eq!(weight(&l), Weight { m: 1, c: vec![0, 0, 0] });
        let j = example();
        let mut expected = weight(&j);
        expected.c[2] += 1;
        assert_eq!(weight(&f(2, &j).unwrap()), expected);
        assert_eq!(weight(&j).c.iter().sum::<u64>(), j.height());
        assert_eq!(weight(&set(2, -1, &[1])).to_string(), "Λ0 - α0");
    }

    #[test]
    fn character_small() {
        let l = IntegerSet::vacuum(2, 0).unwrap();
        let single = character([&l]);
        assert_eq!(single.len(), 1);
        assert_eq!(single[&Weight { m: 0, c: vec![0, 0] }], 1);
        let crystal = demazure_top_down(&Word::parse(2, "0").unwrap(), 0).unwrap();
        let ch = character(&crystal);
        assert_eq!(ch[&Weight { m: 0, c: vec![0, 0] }], 1);
        assert_eq!(ch[&Weight { m: 0, c: vec![1, 0] }], 1);
        assert_eq!(ch.values().sum::<usize>(), crystal.len());
    }

    #[test]
    fn top_down_small() {
        let l0 = IntegerSet::vacuum(2, 0).unwrap();
        assert_eq!(
            demazure_top_down(&Word::empty(2).unwrap(), 0).unwrap(),
            BTreeSet::from([l0.clone()])
        );
        assert_eq!(
            demazure_top_down(&Word::parse(2, "0").unwrap(), 0).unwrap(),
            BTreeSet::from([l0, set(2, -1, &[1])])
        );
        assert!(matches!(
            demazure_top_down(&Word::parse(2, "0,0").unwrap(), 0),
            Err(Error::NotReduced(_))
        ));
    }

    #[test]
    fn member_by_word_agrees_with_top_down() {
        for n in [2u32, 3] {
            let everything = enumerate_crystal(0, n, 6).unwrap();
            for word in oracle::reduced_words(n, 0, 4) {
                let crystal = demazure_top_down(&word, 0).unwrap();
                for j in &everything {
                    assert_eq!(member_by_word(j, &word), crystal.contains(j), "{} in C_{}", j, word);
                }
            }
        }
    }

    #[test]
    fn ceiling_examples() {
        let l = IntegerSet::vacuum(4, 1).unwrap();
        assert_eq!(ceiling(&l), l);
        let r = crate::roof::roof(&example()).unwrap().set;
        assert_eq!(ceiling(&example()), r);
    }

    #[test]
    fn ceiling_is_minimal_extremal_set() {
        // brute force: the smallest stable K (by height) whose top-down
        // crystal contains J, over all reduced words of small length
        let n = 2;
        let words = oracle::reduced_words(n, 0, 6);
        let crystals: Vec<(IntegerSet, BTreeSet<IntegerSet>)> = words
            .iter()
            .map(|w| {
                (
                    IntegerSet::vacuum(n, 0).unwrap().weyl_apply(w).unwrap(),
                    demazure_top_down(w, 0).unwrap(),
                )
            })
            .collect();
        for j in enumerate_crystal(0, n, 5).unwrap() {
            let best = crystals
                .iter()
                .filter(|(_, c)| c.contains(&j))
                .map(|(k, _)| k)
                .min_by_key(|k| k.height())
                .expect("some crystal contains J");
            assert_eq!(&ceiling(&j), best, "J = {}", j);
        }
    }

    #[test]
    fn enumerate_crystal_counts() {
        let l = IntegerSet::vacuum(3, 2).unwrap();
        assert_eq!(enumerate_crystal(2, 3, 0).unwrap(), BTreeSet::from([l]));
        // partitions of 0..=3 with consecutive differences at most 1
        // (1, 1, 1, 2): {}, {1}, {1,1}, {2,1}, {1,1,1}
        assert_eq!(oracle::restricted_partition_count(3, 1), 5);
        assert_eq!(enumerate_crystal(0, 2, 3).unwrap().len(), 5);
        for n in [2u32, 3, 4] {
            for h in 0..=8 {
                let all = enumerate_crystal(0, n, h).unwrap();
                assert_eq!(all.len(), oracle::restricted_partition_count(h, n as u64 - 1));
                assert!(all.iter().all(|j| j.is_n_bounded() && j.order() == 0 && j.height() <= h));
            }
        }
    }

    #[test]
    fn crystal_edges_of_small_crystal() {
        let crystal = demazure_top_down(&Word::parse(3, "1,0").unwrap(), 0).unwrap();
        let edges = crystal_edges(&crystal);
        assert!(edges.iter().all(|(a, i, b)| f(*i, a).as_ref() == Some(b)));
        assert_eq!(edges.len(), crystal.len() - 1);
    }
}
