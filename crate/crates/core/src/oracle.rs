//! Slow reference implementations used to cross-check the fast routines.
//!
//! Each function here follows a definition directly, by enumeration or by
//! counting, and shares no logic with the routine it checks.

use std::collections::BTreeSet;

use crate::roof::{up, UpStep};
use crate::sets::{residue, IntegerSet, Word};

/// `{J : up(J) = hat}` by trying every single move `hat ∖ q ∪ p` with
/// `p < q`.
pub fn up_inverse_brute(hat: &IntegerSet) -> BTreeSet<IntegerSet> {
    let mut out = BTreeSet::new();
    for q in hat.above().iter().copied() {
        for p in hat.tail() + 1..q {
            if hat.contains(p) {
                continue;
            }
            let j = hat.moved(q, p);
            if !j.is_n_bounded() || j.is_n_stable() {
                continue;
            }
            if let Ok((image, step)) = up(&j) {
                if image == *hat && step == (UpStep { p, q }) {
                    out.insert(j);
                }
            }
        }
    }
    out
}

/// Positions carrying `+` (an `i`-element that can move up) and `−` (an
/// `(i+1)`-element that can move down), over a window covering every sign.
fn signs(i: u32, set: &IntegerSet) -> Vec<(i64, i8)> {
    let n = set.n();
    let lo = set.tail() - 3 * n as i64;
    let hi = set.max_element() + 2;
    (lo..=hi)
        .filter_map(|x| {
            if !set.contains(x) {
                return None;
            }
            let r = residue(x, n);
            if r == i && !set.contains(x + 1) {
                Some((x, 1))
            } else if r == (i + 1) % n && !set.contains(x - 1) {
                Some((x, -1))
            } else {
                None
            }
        })
        .collect()
}

/// `f_i` by counting: a `+` at position `x` is unmatched when every window
/// `[x, k]` holds more `+` than `−`; `f_i` raises the smallest such `x`.
pub fn f_by_counts(i: u32, set: &IntegerSet) -> Option<IntegerSet> {
    let s = signs(i, set);
    let target = (0..s.len()).find(|&a| {
        s[a].1 == 1 && {
            let mut running = 0i64;
            s[a..].iter().all(|&(_, v)| {
                running += v as i64;
                running >= 1
            })
        }
    })?;
    let x = s[target].0;
    Some(set.moved(x, x + 1))
}

/// `e_i` by counting: a `−` at `y` is unmatched when every window `[k, y]`
/// holds more `−` than `+`; `e_i` lowers the largest such `y`.
pub fn e_by_counts(i: u32, set: &IntegerSet) -> Option<IntegerSet> {
    let s = signs(i, set);
    let target = (0..s.len()).rev().find(|&b| {
        s[b].1 == -1 && {
            let mut running = 0i64;
            s[..=b].iter().rev().all(|&(_, v)| {
                running -= v as i64;
                running >= 1
            })
        }
    })?;
    let y = s[target].0;
    Some(set.moved(y, y - 1))
}

/// Every word of length at most `max_len` in which each letter, applied
/// right to left from `L_m`, strictly raises the set. Distinct words with
/// the same product are all listed.
pub fn reduced_words(n: u32, m: i64, max_len: usize) -> Vec<Word> {
    let start = IntegerSet::vacuum(n, m).expect("valid modulus");
    let mut out = Vec::new();
    let mut stack = vec![(Vec::<u32>::new(), start)];
    while let Some((letters, set)) = stack.pop() {
        out.push(Word::new(n, letters.clone()).expect("residues in range"));
        if letters.len() == max_len {
            continue;
        }
        for i in 0..n {
            let next = set.simple_reflection(i);
            if next != set && set.bruhat_leq(&next) {
                let mut longer = Vec::with_capacity(letters.len() + 1);
                longer.push(i);
                longer.extend_from_slice(&letters);
                stack.push((longer, next));
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Every partition contained in `outer`, as a weakly decreasing list with
/// trailing zeros dropped.
pub fn subpartitions(outer: &[u64]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(outer: &[u64], cap: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(current.clone());
        let idx = current.len();
        if idx == outer.len() {
            return;
        }
        for part in 1..=cap.min(outer[idx]) {
            current.push(part);
            go(outer, part, current, out);
            current.pop();
        }
    }
    go(outer, u64::MAX, &mut current, &mut out);
    out
}

/// Stable sets `K ≤ top` of the same order: stable sub-diagrams of `λ(top)`.
pub fn stable_below_brute(top: &IntegerSet) -> BTreeSet<IntegerSet> {
    subpartitions(&top.to_partition())
        .into_iter()
        .map(|parts| IntegerSet::from_partition(&parts, top.order(), top.n()).expect("valid"))
        .filter(|k| k.is_n_stable() && k.bruhat_leq(top))
        .collect()
}

/// Number of partitions of size at most `max_size` whose parts differ by at
/// most `max_gap`, the last part included (so the last part is at most
/// `max_gap`).
pub fn restricted_partition_count(max_size: u64, max_gap: u64) -> usize {
    fn go(remaining: u64, prev: u64, max_gap: u64) -> usize {
        // `prev` is the smallest part placed so far; the next part is smaller
        // or equal, and the final part must reach 0 within max_gap steps.
        let mut total = usize::from(prev <= max_gap);
        let lo = prev.saturating_sub(max_gap).max(1);
        for part in lo..=prev.min(remaining) {
            total += go(remaining - part, part, max_gap);
        }
        total
    }
    let mut total = 1;
    for first in 1..=max_size {
        total += go(max_size - first, first, max_gap);
    }
    total
}

/// `Ê_{pq} ε_K` computed literally: the wedge of a window of `K` listed in
/// decreasing order, `q + nk` replaced by `p + nk`, and the list re-sorted
/// by adjacent swaps, each swap flipping the sign.
pub fn e_hat_windowed(p: i64, q: i64, set: &IntegerSet) -> Vec<(IntegerSet, i64)> {
    let n = set.n() as i64;
    let lo = set.tail().min(p) - 2 * n;
    let hi = set.max_element().max(q) + 2 * n;
    let window: Vec<i64> = (lo..=hi).rev().filter(|&x| set.contains(x)).collect();
    let mut out: Vec<(IntegerSet, i64)> = Vec::new();
    let shifts = ((lo - q).div_euclid(n) - 1)..=((hi - q).div_euclid(n) + 1);
    for k in shifts {
        let (pk, qk) = (p + n * k, q + n * k);
        if pk < lo || qk > hi || !set.contains(qk) || set.contains(pk) {
            continue;
        }
        let mut wedge: Vec<i64> = window.iter().map(|&x| if x == qk { pk } else { x }).collect();
        let mut sign = 1;
        for a in 0..wedge.len() {
            for b in 0..wedge.len() - 1 - a {
                if wedge[b] < wedge[b + 1] {
                    wedge.swap(b, b + 1);
                    sign = -sign;
                }
            }
        }
        let image = IntegerSet::new(set.n(), lo - 1, wedge).expect("valid set");
        match out.iter_mut().find(|(s, _)| *s == image) {
            Some(entry) => entry.1 += sign,
            None => out.push((image, sign)),
        }
    }
    out.retain(|(_, c)| *c != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subpartitions_of_two_one() {
        let subs = subpartitions(&[2, 1]);
        assert_eq!(subs.len(), 5);
        assert!(subs.contains(&vec![]));
        assert!(subs.contains(&vec![2, 1]));
        assert!(subs.contains(&vec![1, 1]));
    }

    #[test]
    fn restricted_counts() {
        // unrestricted gaps reduce to counting all partitions of size <= h
        assert_eq!(restricted_partition_count(4, 100), 1 + 1 + 2 + 3 + 5);
        assert_eq!(restricted_partition_count(3, 1), 5);
        assert_eq!(restricted_partition_count(0, 1), 1);
    }

    #[test]
    fn reduced_words_small() {
        let words = reduced_words(2, 0, 3);
        let shown: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, vec!["", "0", "1,0", "0,1,0"]);
    }

    #[test]
    fn counting_operators_on_vacuum() {
        let l = IntegerSet::vacuum(3, 0).unwrap();
        assert_eq!(f_by_counts(0, &l), Some(l.moved(0, 1)));
        assert_eq!(f_by_counts(1, &l), None);
        assert_eq!(e_by_counts(0, &l), None);
    }
}
