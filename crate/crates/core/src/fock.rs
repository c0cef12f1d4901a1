//! Exact arithmetic in the fermionic Fock space: the operators `E′_{pq}` and
//! `Ê_{pq}`, the standard vectors `v_J`, their divided-power variants `v′_J`,
//! and reduction modulo a prime.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roof::{roof, UpStep};
use crate::sets::{residue, IntegerSet};

/// A finite signed integer combination of basis vectors `ε_K`.
///
/// Zero coefficients are never stored. Iteration follows the order on
/// [`IntegerSet`], so the last key is the lexicographically leading one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    terms: BTreeMap<IntegerSet, BigInt>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(set: IntegerSet) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(set, BigInt::one());
        FockVector { terms }
    }

    /// Sums the given terms, dropping anything that cancels.
    pub fn from_terms(terms: impl IntoIterator<Item = (IntegerSet, BigInt)>) -> Self {
        let mut v = FockVector::zero();
        for (set, c) in terms {
            v.add_term(set, c);
        }
        v
    }

    fn add_term(&mut self, set: IntegerSet, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(set) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending key order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&IntegerSet, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &IntegerSet> {
        self.terms.keys()
    }

    pub fn coefficient(&self, set: &IntegerSet) -> BigInt {
        self.terms.get(set).cloned().unwrap_or_default()
    }

    /// The lexicographically largest key and its coefficient.
    pub fn leading_term(&self) -> Option<(&IntegerSet, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn scaled(&self, c: &BigInt) -> FockVector {
        if c.is_zero() {
            return FockVector::zero();
        }
        FockVector {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Divides every coefficient by `d`, failing unless all divisions are
    /// exact.
    pub fn divided_exact(&self, d: &BigInt) -> Result<FockVector> {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            if !(v % d).is_zero() {
                return Err(Error::InexactDivision);
            }
            terms.insert(k.clone(), v / d);
        }
        Ok(FockVector { terms })
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    /// One line per term, `<coefficient> * <set literal>`, leading term first.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.terms.iter().rev() {
            out.push_str(&format!("{} * {}\n", v, k));
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<FockVector> {
        let mut terms = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (c, set) = line
                .split_once(" * ")
                .ok_or_else(|| Error::Parse(format!("term without ' * ': {}", line)))?;
            let c = BigInt::from_str(c.trim())
                .map_err(|_| Error::Parse(format!("bad coefficient '{}'", c)))?;
            terms.push((set.trim().parse::<IntegerSet>()?, c));
        }
        Ok(FockVector::from_terms(terms))
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dump())
    }
}

#[derive(Serialize)]
struct TermRecord<'a> {
    coefficient: String,
    set: &'a IntegerSet,
}

impl Serialize for FockVector {
    /// A list of `{coefficient, set}` records, leading term first. Coefficients
    /// are decimal strings since they may exceed 64 bits.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (set, c) in self.terms.iter().rev() {
            seq.serialize_element(&TermRecord {
                coefficient: c.to_string(),
                set,
            })?;
        }
        seq.end()
    }
}

/// The shift class of `Ê_{pq}`; only `p mod n` and `q − p` matter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OperatorSpec {
    p: i64,
    q: i64,
}

impl OperatorSpec {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p >= q {
            return Err(Error::InvalidOperator { p, q });
        }
        Ok(OperatorSpec { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn distance(&self) -> i64 {
        self.q - self.p
    }
}

impl From<UpStep> for OperatorSpec {
    fn from(step: UpStep) -> Self {
        debug_assert!(step.p < step.q);
        OperatorSpec {
            p: step.p,
            q: step.q,
        }
    }
}

/// `|K ∩ (p, q]|` for `p < q`.
fn count_in(set: &IntegerSet, p: i64, q: i64) -> usize {
    let from_tail = (set.tail().min(q) - p).max(0) as usize;
    let above = set.above();
    let lo = above.partition_point(|&x| x <= p);
    let hi = above.partition_point(|&x| x <= q);
    from_tail + (hi - lo)
}

/// `E′_{pq} ε_K` on a single basis vector.
fn e_prime_basis(p: i64, q: i64, set: &IntegerSet) -> Option<(IntegerSet, bool)> {
    if !set.contains(q) || set.contains(p) {
        return None;
    }
    // p ∉ K, so |K ∩ [p, q]| − 1 counts the elements strictly between
    let negative = (count_in(set, p, q) - 1) % 2 == 1;
    Some((set.moved(q, p), negative))
}

fn signed(negative: bool, c: &BigInt) -> BigInt {
    if negative {
        -c
    } else {
        c.clone()
    }
}

/// `E′_{pq}`: replaces `q` by `p` with sign `(−1)^{|K ∩ [p,q]| − 1}`.
pub fn e_prime_apply(p: i64, q: i64, v: &FockVector) -> Result<FockVector> {
    if p >= q {
        return Err(Error::InvalidOperator { p, q });
    }
    let mut out = FockVector::zero();
    for (set, c) in v.terms() {
        if let Some((image, negative)) = e_prime_basis(p, q, set) {
            out.add_term(image, signed(negative, c));
        }
    }
    Ok(out)
}

/// Images of `Ê_{pq} ε_K`: one per `q′ ≡ q` above the tail of `K` with
/// `q′ − (q − p)` vacant. Shifts with `q′` in the tail contribute nothing.
fn e_hat_basis(spec: OperatorSpec, set: &IntegerSet) -> Vec<(IntegerSet, bool)> {
    let n = set.n();
    let d = spec.distance();
    let r = residue(spec.q, n);
    set.above()
        .iter()
        .filter(|&&q| residue(q, n) == r)
        .filter_map(|&q| e_prime_basis(q - d, q, set))
        .collect()
}

/// `Ê_{pq} = Σ_k E′_{p+nk, q+nk}`.
pub fn e_hat_apply(spec: OperatorSpec, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (set, c) in v.terms() {
        for (image, negative) in e_hat_basis(spec, set) {
            out.add_term(image, signed(negative, c));
        }
    }
    out
}

/// `v_J = Ê_{p_1,q_1} ⋯ Ê_{p_ℓ,q_ℓ} ε_{roof(J)}`, the last trace step acting
/// first.
pub fn standard_vector(set: &IntegerSet) -> Result<FockVector> {
    let r = roof(set)?;
    Ok(r.trace
        .iter()
        .rev()
        .fold(FockVector::basis(r.set), |v, &step| e_hat_apply(step.into(), &v)))
}

pub fn coefficient(v: &FockVector, set: &IntegerSet) -> BigInt {
    v.coefficient(set)
}

/// `a_K^J`, the coefficient of `ε_K` in `v_J`, without expanding `v_J` in
/// full. Every operator lowers one element, so a partial term can only
/// reach `K` if it dominates `K` and differs from it in at most as many
/// elements as there are operators left.
pub fn standard_coefficient(set: &IntegerSet, target: &IntegerSet) -> Result<BigInt> {
    let r = roof(set)?;
    if target.n() != set.n() || target.order() != set.order() || target.height() != set.height() {
        return Ok(BigInt::zero());
    }
    let mut v = FockVector::basis(r.set);
    for (done, &step) in r.trace.iter().rev().enumerate() {
        let remaining = r.trace.len() - done - 1;
        let mut next = FockVector::zero();
        for (k, c) in v.terms() {
            for (image, negative) in e_hat_basis(step.into(), k) {
                if target.bruhat_leq(&image) && image.difference_count(target) <= remaining {
                    next.add_term(image, signed(negative, c));
                }
            }
        }
        v = next;
    }
    Ok(v.coefficient(target))
}

/// Splits a trace into maximal runs whose `p` values share a residue.
pub fn trace_groups(trace: &[UpStep], n: u32) -> Vec<&[UpStep]> {
    let mut groups = Vec::new();
    let mut start = 0;
    for idx in 1..=trace.len() {
        if idx == trace.len() || residue(trace[idx].p, n) != residue(trace[start].p, n) {
            groups.push(&trace[start..idx]);
            start = idx;
        }
    }
    groups
}

/// Multiplicities `μ_d` of each distance within one group.
fn distance_counts(group: &[UpStep]) -> BTreeMap<i64, u64> {
    let mut mu = BTreeMap::new();
    for step in group {
        *mu.entry(step.distance()).or_insert(0) += 1;
    }
    mu
}

fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// `|a_J^J| = Π over trace groups of Π_d μ_d!`.
pub fn leading_coefficient_formula(set: &IntegerSet) -> Result<BigUint> {
    let r = roof(set)?;
    Ok(trace_groups(&r.trace, set.n())
        .into_iter()
        .flat_map(|g| distance_counts(g).into_values())
        .fold(BigUint::one(), |acc, mu| acc * factorial(mu)))
}

/// The factorial exponents `μ_d` of [`leading_coefficient_formula`], one
/// list per trace group.
pub fn leading_coefficient_exponents(set: &IntegerSet) -> Result<Vec<Vec<u64>>> {
    let r = roof(set)?;
    Ok(trace_groups(&r.trace, set.n())
        .into_iter()
        .map(|g| distance_counts(g).into_values().collect())
        .collect())
}

/// `v′_J`: as `v_J`, but each group's `Ê_{p,p+d}^{μ_d}` is replaced by the
/// divided power `Ê_{p,p+d}^{μ_d} / μ_d!`.
pub fn divided_vector(set: &IntegerSet) -> Result<FockVector> {
    let r = roof(set)?;
    let mut v = FockVector::basis(r.set);
    for group in trace_groups(&r.trace, set.n()).into_iter().rev() {
        let p = group[0].p;
        for (d, mu) in distance_counts(group) {
            let spec = OperatorSpec::new(p, p + d)?;
            for _ in 0..mu {
                v = e_hat_apply(spec, &v);
            }
            v = v.divided_exact(&BigInt::from(factorial(mu)))?;
        }
    }
    Ok(v)
}

/// A vector over the prime field `𝔽_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPVector {
    prime: u64,
    terms: BTreeMap<IntegerSet, u64>,
}

impl ModPVector {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&IntegerSet, &u64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, set: &IntegerSet) -> u64 {
        self.terms.get(set).copied().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&IntegerSet, &u64)> {
        self.terms.iter().next_back()
    }

    /// Same layout as [`FockVector::to_dump`], coefficients in `0..p`.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.terms.iter().rev() {
            out.push_str(&format!("{} * {}\n", v, k));
        }
        out
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn mod_p_reduce(v: &FockVector, p: u64) -> Result<ModPVector> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let modulus = BigInt::from(p);
    let terms = v
        .terms()
        .filter_map(|(k, c)| {
            let r = reduce(c, &modulus);
            (r != 0).then(|| (k.clone(), r))
        })
        .collect();
    Ok(ModPVector { prime: p, terms })
}

fn reduce(c: &BigInt, modulus: &BigInt) -> u64 {
    let mut r = c % modulus;
    if r.is_negative() {
        r += modulus;
    }
    u64::try_from(r).expect("residue below a u64 modulus")
}
