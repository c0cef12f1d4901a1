//! Semi-infinite integer sets and their order-theoretic structure.
//!
//! A set `J` comparable to the non-positive integers is stored as a tail
//! `a` (every integer `<= a` belongs to `J`) plus the finitely many elements
//! of `J` above `a + 1`. The tail is kept maximal, so `a + 1` is never in
//! `J` and two sets are equal exactly when their encodings are.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Residue of `x` modulo `n`, always in `0..n`.
#[inline]
pub fn residue(x: i64, n: u32) -> u32 {
    x.rem_euclid(n as i64) as u32
}

fn check_modulus(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    Ok(())
}

/// A set `J ⊂ ℤ` with `J ∖ ℤ≤0` and `ℤ≤0 ∖ J` finite, together with the
/// modulus `n` of the affine root system it lives in.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawSet", into = "RawSet")]
pub struct IntegerSet {
    n: u32,
    tail: i64,
    above: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawSet {
    n: u32,
    tail: i64,
    above: Vec<i64>,
}

impl TryFrom<RawSet> for IntegerSet {
    type Error = Error;

    fn try_from(raw: RawSet) -> Result<Self> {
        IntegerSet::new(raw.n, raw.tail, raw.above)
    }
}

impl From<IntegerSet> for RawSet {
    fn from(set: IntegerSet) -> Self {
        RawSet {
            n: set.n,
            tail: set.tail,
            above: set.above,
        }
    }
}

/// A maximal arithmetic progression of step `n` inside a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Seam {
    /// Largest element of the progression.
    pub top: i64,
    /// Smallest element, or `None` when the progression runs into the tail.
    pub loose_end: Option<i64>,
    /// Number of elements, `None` for infinite seams.
    pub len: Option<usize>,
    /// The vacant position `top + n`.
    pub tight_end: i64,
}

impl IntegerSet {
    /// Builds `ℤ≤tail ∪ elements` in canonical form. Elements at or below
    /// the tail are absorbed, duplicates are dropped and consecutive
    /// elements starting at `tail + 1` extend the tail.
    pub fn new(n: u32, tail: i64, elements: impl IntoIterator<Item = i64>) -> Result<Self> {
        check_modulus(n)?;
        Ok(Self::canonical(n, tail, elements.into_iter().collect()))
    }

    pub(crate) fn canonical(n: u32, mut tail: i64, mut elements: Vec<i64>) -> Self {
        elements.retain(|&x| x > tail);
        elements.sort_unstable();
        elements.dedup();
        let mut start = 0;
        while start < elements.len() && elements[start] == tail + 1 {
            tail += 1;
            start += 1;
        }
        elements.drain(..start);
        IntegerSet {
            n,
            tail,
            above: elements,
        }
    }

    /// The set `L_m = ℤ≤m`.
    pub fn vacuum(n: u32, m: i64) -> Result<Self> {
        check_modulus(n)?;
        Ok(IntegerSet {
            n,
            tail: m,
            above: Vec::new(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Largest `a` with `ℤ≤a ⊆ J`.
    pub fn tail(&self) -> i64 {
        self.tail
    }

    /// Elements above the tail, strictly increasing, all `>= tail + 2`.
    pub fn above(&self) -> &[i64] {
        &self.above
    }

    pub fn is_vacuum(&self) -> bool {
        self.above.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        x <= self.tail || self.above.binary_search(&x).is_ok()
    }

    pub fn max_element(&self) -> i64 {
        self.above.last().copied().unwrap_or(self.tail)
    }

    /// Ascending iterator over the elements strictly greater than `lo`.
    /// `lo` must not exceed the tail.
    pub fn elements_above(&self, lo: i64) -> impl Iterator<Item = i64> + '_ {
        debug_assert!(lo <= self.tail);
        (lo + 1..=self.tail).chain(self.above.iter().copied())
    }

    /// `ord(J) = |J ∖ ℤ≤0| − |ℤ≤0 ∖ J|`.
    pub fn order(&self) -> i64 {
        self.tail + self.above.len() as i64
    }

    /// `Σ_{i≤0} (j_i − i − m)`: total displacement from `L_m`.
    pub fn height(&self) -> u64 {
        self.above
            .iter()
            .enumerate()
            .map(|(idx, &x)| (x - self.tail - 1 - idx as i64) as u64)
            .sum()
    }

    /// Every gap between consecutive elements is at most `n`.
    pub fn is_n_bounded(&self) -> bool {
        let n = self.n as i64;
        let mut prev = self.tail;
        for &x in &self.above {
            if x - prev > n {
                return false;
            }
            prev = x;
        }
        true
    }

    /// `j − n ∈ J` for every `j ∈ J`.
    pub fn is_n_stable(&self) -> bool {
        let n = self.n as i64;
        self.above.iter().all(|&x| self.contains(x - n))
    }

    /// All seams, sorted by their top element.
    pub fn seams(&self) -> Vec<Seam> {
        let n = self.n as i64;
        let mut seams: Vec<Seam> = self
            .elements_above(self.tail - n)
            .filter(|&x| !self.contains(x + n))
            .map(|top| {
                let mut x = top;
                let mut len = 1usize;
                while self.contains(x - n) {
                    x -= n;
                    len += 1;
                    if x <= self.tail {
                        return Seam {
                            top,
                            loose_end: None,
                            len: None,
                            tight_end: top + n,
                        };
                    }
                }
                Seam {
                    top,
                    loose_end: Some(x),
                    len: Some(len),
                    tight_end: top + n,
                }
            })
            .collect();
        seams.sort_by_key(|s| s.top);
        seams
    }

    /// Elements `p ∈ J` with `p − n ∉ J`, ascending.
    pub fn loose_ends(&self) -> Vec<i64> {
        let n = self.n as i64;
        self.above
            .iter()
            .copied()
            .filter(|&x| !self.contains(x - n))
            .collect()
    }

    /// Vacant positions `t ∉ J` with `t − n ∈ J`, ascending.
    pub fn tight_ends(&self) -> Vec<i64> {
        let n = self.n as i64;
        (self.tail + 1..=self.max_element() + n)
            .filter(|&t| !self.contains(t) && self.contains(t - n))
            .collect()
    }

    fn aligned<'a>(&'a self, other: &'a IntegerSet) -> impl Iterator<Item = (i64, i64)> + 'a {
        let lo = self.tail.min(other.tail);
        self.elements_above(lo).zip(other.elements_above(lo))
    }

    /// Parabolic Bruhat order: `self ≤ other` componentwise on the
    /// increasing enumerations. Sets of different order or modulus are
    /// incomparable and yield `false`.
    pub fn bruhat_leq(&self, other: &IntegerSet) -> bool {
        if self.n != other.n || self.order() != other.order() {
            return false;
        }
        self.aligned(other).all(|(k, j)| k <= j)
    }

    /// Lexicographic order, decided at the lowest position where the
    /// enumerations differ.
    pub fn lex_compare(&self, other: &IntegerSet) -> Result<Ordering> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(self.lex_unchecked(other))
    }

    fn lex_unchecked(&self, other: &IntegerSet) -> Ordering {
        self.aligned(other)
            .map(|(k, j)| k.cmp(&j))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// Number of elements of `self` missing from `other`.
    pub fn difference_count(&self, other: &IntegerSet) -> usize {
        let lo = self.tail.min(other.tail);
        self.elements_above(lo)
            .filter(|&x| !other.contains(x))
            .count()
    }

    /// `J ∖ remove ∪ insert`. The caller guarantees `remove ∈ J` and
    /// `insert ∉ J`.
    pub fn moved(&self, remove: i64, insert: i64) -> IntegerSet {
        debug_assert!(self.contains(remove) && !self.contains(insert));
        if remove <= self.tail {
            let mut elements: Vec<i64> = (remove + 1..=self.tail).collect();
            elements.extend_from_slice(&self.above);
            elements.push(insert);
            return Self::canonical(self.n, remove - 1, elements);
        }
        let mut elements: Vec<i64> = self.above.iter().copied().filter(|&x| x != remove).collect();
        elements.push(insert);
        Self::canonical(self.n, self.tail, elements)
    }

    /// The simple reflection `s_i`, swapping `j ↔ j + 1` for every `j ≡ i`.
    ///
    /// Panics if `i >= n`.
    pub fn simple_reflection(&self, i: u32) -> IntegerSet {
        assert!(i < self.n, "residue {} out of range for n={}", i, self.n);
        let n = self.n;
        let lo = if residue(self.tail, n) == i {
            self.tail - 1
        } else {
            self.tail
        };
        let next = (i + 1) % n;
        let mapped = self
            .elements_above(lo)
            .map(|x| {
                let r = residue(x, n);
                if r == i {
                    x + 1
                } else if r == next {
                    x - 1
                } else {
                    x
                }
            })
            .collect();
        Self::canonical(n, lo, mapped)
    }

    /// Applies `s_{i_1} ⋯ s_{i_t}` with the rightmost reflection acting first.
    pub fn weyl_apply(&self, word: &Word) -> Result<IntegerSet> {
        if word.n() != self.n {
            return Err(Error::ModulusMismatch {
                left: self.n,
                right: word.n(),
            });
        }
        Ok(word
            .residues()
            .iter()
            .rev()
            .fold(self.clone(), |set, &i| set.simple_reflection(i)))
    }

    /// The partition `λ` with `λ_{i+1} = j_{−i} − (m − i)`. Its size is the
    /// height, and `J` is n-bounded iff `λ_i − λ_{i+1} ≤ n − 1`.
    pub fn to_partition(&self) -> Vec<u64> {
        let m = self.order();
        let mut parts: Vec<u64> = self
            .above
            .iter()
            .rev()
            .enumerate()
            .map(|(i, &x)| (x - (m - i as i64)) as u64)
            .collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        parts
    }

    /// Inverse of [`IntegerSet::to_partition`] for order `m`.
    pub fn from_partition(parts: &[u64], m: i64, n: u32) -> Result<Self> {
        check_modulus(n)?;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NonMonotonePartition);
        }
        let len = parts.len() as i64;
        let elements = parts
            .iter()
            .enumerate()
            .map(|(i, &part)| part as i64 + m - i as i64)
            .collect();
        Ok(Self::canonical(n, m - len, elements))
    }
}

impl Ord for IntegerSet {
    /// Modulus first, then order, then lexicographic order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.order().cmp(&other.order()))
            .then_with(|| self.lex_unchecked(other))
    }
}

impl PartialOrd for IntegerSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IntegerSet {
    /// `n=<n>;<=<tail>;<e1>,<e2>,...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};<={};", self.n, self.tail)?;
        for (idx, x) in self.above.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x)?;
        }
        Ok(())
    }
}

fn parse_int<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid {} {:?}", what, s.trim())))
}

impl FromStr for IntegerSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut fields = s.trim().splitn(3, ';');
        let n_field = fields.next().unwrap_or("");
        let tail_field = fields
            .next()
            .ok_or_else(|| Error::Parse(format!("missing tail in {:?}", s)))?;
        let elems_field = fields
            .next()
            .ok_or_else(|| Error::Parse(format!("missing element list in {:?}", s)))?;
        let n = n_field
            .trim()
            .strip_prefix("n=")
            .ok_or_else(|| Error::Parse(format!("expected n=<n>, got {:?}", n_field)))?;
        let n: u32 = parse_int(n, "modulus")?;
        let tail = tail_field
            .trim()
            .strip_prefix("<=")
            .ok_or_else(|| Error::Parse(format!("expected <=<tail>, got {:?}", tail_field)))?;
        let tail: i64 = parse_int(tail, "tail")?;
        let elements = if elems_field.trim().is_empty() {
            Vec::new()
        } else {
            elems_field
                .split(',')
                .map(|e| parse_int(e, "element"))
                .collect::<Result<Vec<i64>>>()?
        };
        IntegerSet::new(n, tail, elements)
    }
}

/// A word `s_{i_1} ⋯ s_{i_t}` in the simple reflections of the affine Weyl
/// group of type `A_{n−1}^{(1)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    n: u32,
    residues: Vec<u32>,
}

impl Word {
    pub fn new(n: u32, residues: Vec<u32>) -> Result<Self> {
        check_modulus(n)?;
        if let Some(&bad) = residues.iter().find(|&&i| i >= n) {
            return Err(Error::ResidueOutOfRange { residue: bad, n });
        }
        Ok(Word { n, residues })
    }

    pub fn empty(n: u32) -> Result<Self> {
        Word::new(n, Vec::new())
    }

    /// Parses a comma- or whitespace-separated residue list such as `"2,1,0"`.
    pub fn parse(n: u32, s: &str) -> Result<Self> {
        let residues = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| parse_int(t.trim_start_matches('s'), "residue"))
            .collect::<Result<Vec<u32>>>()?;
        Word::new(n, residues)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// True when every letter, applied right to left starting from `L_m`,
    /// strictly raises the current set in Bruhat order.
    pub fn is_reduced_at(&self, m: i64) -> bool {
        let mut set = IntegerSet {
            n: self.n,
            tail: m,
            above: Vec::new(),
        };
        for &i in self.residues.iter().rev() {
            let next = set.simple_reflection(i);
            if next == set || !set.bruhat_leq(&next) {
                return false;
            }
            set = next;
        }
        true
    }

    /// `w(L_m)` for the Demazure product `w` of the word: letters are applied
    /// right to left, skipping any that would not raise the set. Equals
    /// `L_m.weyl_apply(self)` when the word is reduced.
    pub fn demazure_extremal(&self, m: i64) -> IntegerSet {
        let start = IntegerSet {
            n: self.n,
            tail: m,
            above: Vec::new(),
        };
        self.residues.iter().rev().fold(start, |set, &i| {
            let next = set.simple_reflection(i);
            if set.bruhat_leq(&next) {
                next
            } else {
                set
            }
        })
    }

    /// `s2 s1 s3` style rendering.
    pub fn to_reflections(&self) -> String {
        self.residues
            .iter()
            .map(|i| format!("s{}", i))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}
