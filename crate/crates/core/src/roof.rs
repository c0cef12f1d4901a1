//! The up operation and the roof operator, with the bottom-up generation of
//! Demazure crystals that they make possible.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sets::{residue, IntegerSet, Word};

/// One move `J ↦ J ∖ p ∪ q` performed by [`up`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UpStep {
    pub p: i64,
    pub q: i64,
}

impl UpStep {
    pub fn distance(&self) -> i64 {
        self.q - self.p
    }
}

/// The stable set reached by iterating [`up`], with every step taken.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Roof {
    pub set: IntegerSet,
    pub trace: Vec<UpStep>,
}

fn require_bounded(set: &IntegerSet) -> Result<()> {
    if set.is_n_bounded() {
        Ok(())
    } else {
        Err(Error::NotBounded)
    }
}

fn require_stable(set: &IntegerSet) -> Result<()> {
    if set.is_n_stable() {
        Ok(())
    } else {
        Err(Error::NotStable)
    }
}

/// Moves the maximal loose end `p` to the smallest tight end `q > p` of a
/// seam in a different residue class.
pub fn up(set: &IntegerSet) -> Result<(IntegerSet, UpStep)> {
    require_bounded(set)?;
    let n = set.n() as i64;
    let p = *set.loose_ends().last().ok_or(Error::AlreadyStable)?;
    // every tight end lies at or below max + n
    let q = (p + 1..=set.max_element() + n)
        .find(|&q| !set.contains(q) && set.contains(q - n) && (q - p) % n != 0)
        .expect("bounded non-stable set has an admissible tight end");
    Ok((set.moved(p, q), UpStep { p, q }))
}

pub fn roof(set: &IntegerSet) -> Result<Roof> {
    require_bounded(set)?;
    let mut current = set.clone();
    let mut trace = Vec::new();
    while !current.is_n_stable() {
        let (next, step) = up(&current)?;
        trace.push(step);
        current = next;
    }
    Ok(Roof {
        set: current,
        trace,
    })
}

/// All `J` with `up(J) = hat`, as moves `hat ∖ q ∪ p` where `q` tops a seam
/// of length at least two and `p` satisfies:
///
/// * `p, p − n ∉ hat` and `q − p ≢ 0 (mod n)`;
/// * the only loose end of `hat` above `p` may be `p + n`;
/// * every tight end of `hat` strictly between `p` and `q` is `≡ p`;
/// * the resulting set is n-bounded.
pub fn up_inverse(hat: &IntegerSet) -> Result<BTreeSet<IntegerSet>> {
    require_bounded(hat)?;
    let n = hat.n() as i64;
    let loose = hat.loose_ends();
    let tight = hat.tight_ends();
    let mut out = BTreeSet::new();
    for q in seam_tops(hat) {
        for p in hat.tail() + 1..q {
            if hat.contains(p) || hat.contains(p - n) || (q - p) % n == 0 {
                continue;
            }
            if loose.iter().any(|&x| x > p && x != p + n) {
                continue;
            }
            if tight.iter().any(|&t| p < t && t < q && (t - p) % n != 0) {
                continue;
            }
            let j = hat.moved(q, p);
            if j.is_n_bounded() {
                out.insert(j);
            }
        }
    }
    Ok(out)
}

/// Elements `q` with `q − n ∈ hat` and `q + n ∉ hat`.
fn seam_tops(hat: &IntegerSet) -> impl Iterator<Item = i64> + '_ {
    let n = hat.n() as i64;
    hat.above()
        .iter()
        .copied()
        .filter(move |&q| hat.contains(q - n) && !hat.contains(q + n))
}

/// The closed form for `up⁻¹` with the two maximal loose ends `p̃ < p̂`
/// and `q̂`, the largest tight end below `q`:
///
/// `P(q) = {p : p − n, p ∉ hat, max(p̂, q̂) < p < q}
///        ∪ {p = p̂ − n : p − n ∉ hat, max(p̃, q̂) < p}`.
///
/// It ignores the residue of the tight ends and of `q − p`, so for larger
/// heights it can differ from [`up_inverse`].
pub fn up_inverse_formula(hat: &IntegerSet) -> Result<BTreeSet<IntegerSet>> {
    require_bounded(hat)?;
    let n = hat.n() as i64;
    let loose = hat.loose_ends();
    let p_hat = loose.last().copied();
    let p_tilde = loose.len().checked_sub(2).map(|i| loose[i]);
    let tight = hat.tight_ends();

    let mut out = BTreeSet::new();
    for q in seam_tops(hat).filter(|&q| p_hat.map_or(true, |ph| q > ph - n)) {
        let q_hat = tight.iter().copied().filter(|&t| t < q).max();
        let lower = p_hat.max(q_hat).unwrap_or(i64::MIN).max(hat.tail());
        for p in lower + 1..q {
            if !hat.contains(p) && !hat.contains(p - n) {
                out.insert(hat.moved(q, p));
            }
        }
        if let Some(ph) = p_hat {
            let p = ph - n;
            let bound = p_tilde.max(q_hat);
            if !hat.contains(p - n) && bound.map_or(true, |b| b < p) {
                out.insert(hat.moved(q, p));
            }
        }
    }
    Ok(out)
}

/// Canonical reduced word for the extremal set `K = y(L_m)`, found by
/// repeatedly reflecting at the minimal hole `r = min{k ∉ K : k + 1 ∈ K}`.
/// The letters come out in the order `y = s_{r_1} s_{r_2} ⋯`.
pub fn reduced_word_from_extremal(set: &IntegerSet) -> Result<Word> {
    require_stable(set)?;
    let n = set.n();
    let mut current = set.clone();
    let mut letters = Vec::new();
    while let Some(&first) = current.above().first() {
        let hole = first - 1;
        let next = current.simple_reflection(residue(hole, n));
        assert!(
            next.height() < current.height() && next.bruhat_leq(&current),
            "minimal-hole reflection must descend"
        );
        letters.push(residue(hole, n));
        current = next;
    }
    Word::new(n, letters)
}

/// All stable sets `K ≤ K_w` of the same order, sorted by height and then
/// lexicographically (a linear extension of the Bruhat order).
pub fn enumerate_stable_below(top: &IntegerSet) -> Result<Vec<IntegerSet>> {
    require_stable(top)?;
    let n = top.n();
    // Descend along minimal holes, then climb back up with
    // below(K) = below(s_r K) ∪ s_r below(s_r K).
    let mut chain = vec![top.clone()];
    while let Some(&first) = chain.last().unwrap().above().first() {
        let next = chain.last().unwrap().simple_reflection(residue(first - 1, n));
        chain.push(next);
    }
    let mut below = BTreeSet::from([chain.pop().unwrap()]);
    while let Some(k) = chain.pop() {
        let r = residue(k.above()[0] - 1, n);
        let reflected: Vec<IntegerSet> = below.iter().map(|s| s.simple_reflection(r)).collect();
        below.extend(reflected);
    }
    let mut out: Vec<IntegerSet> = below.into_iter().collect();
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// `{J : roof(J) = K}`: the closure of `{K}` under [`up_inverse`].
pub fn roof_fiber(stable: &IntegerSet) -> Result<BTreeSet<IntegerSet>> {
    require_stable(stable)?;
    let mut seen = BTreeSet::from([stable.clone()]);
    let mut queue = VecDeque::from([stable.clone()]);
    while let Some(hat) = queue.pop_front() {
        for j in up_inverse(&hat)? {
            if seen.insert(j.clone()) {
                queue.push_back(j);
            }
        }
    }
    Ok(seen)
}

/// The Demazure crystal `𝒞_w(L_m)` generated bottom-up from its extremal set
/// `K_w = w(L_m)`.
pub fn demazure_bottom_up(top: &IntegerSet) -> Result<BTreeSet<IntegerSet>> {
    demazure_bottom_up_with(top, 1)
}

/// As [`demazure_bottom_up`], spreading the fibers over `jobs` threads.
/// The result does not depend on `jobs`.
pub fn demazure_bottom_up_with(top: &IntegerSet, jobs: usize) -> Result<BTreeSet<IntegerSet>> {
    let stables = enumerate_stable_below(top)?;
    let fibers: Vec<BTreeSet<IntegerSet>> = if jobs <= 1 {
        stables.iter().map(roof_fiber).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| stables.par_iter().map(roof_fiber).collect::<Result<_>>())?
    };
    Ok(fibers.into_iter().flatten().collect())
}

/// Membership in `𝒞_w(L_m)` decided by comparing the roof with `K_w`.
pub fn member(set: &IntegerSet, top: &IntegerSet) -> Result<bool> {
    require_bounded(set)?;
    require_stable(top)?;
    if set.order() != top.order() {
        return Err(Error::OrderMismatch {
            left: set.order(),
            right: top.order(),
        });
    }
    Ok(roof(set)?.set.bruhat_leq(top))
}
