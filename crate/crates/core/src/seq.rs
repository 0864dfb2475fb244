use std::cmp::Ordering;
use std::fmt;

use crate::error::SeqError;
use crate::order::{compare_streams, equality_horizon};
use crate::word::Word;

/// An eventually periodic one-sided sequence `u v v v …` over `{0,1}`.
///
/// Values are always in canonical form: the preperiod `u` is as short as
/// possible and the period `v` is primitive, which together fix the rotation
/// of `v`. Two values are therefore equal as sequences exactly when they are
/// equal as Rust values.
///
/// `Ord` is the unimodal (parity-lexicographic) order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeqEP {
    pre: Word,
    per: Word,
}

/// Bring `pre (per)^∞` into canonical form.
pub fn canonicalize(pre: Word, per: Word) -> Result<SeqEP, SeqError> {
    if per.is_empty() {
        return Err(SeqError::EmptyPeriod);
    }
    let mut per = primitive_root(per.into_vec());
    let mut pre = pre.into_vec();
    // `u a (v' a)^∞ = u (a v')^∞`
    while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
        if a != b {
            break;
        }
        pre.pop();
        per.rotate_right(1);
    }
    Ok(SeqEP {
        pre: Word::from_vec_unchecked(pre),
        per: Word::from_vec_unchecked(per),
    })
}

fn primitive_root(mut per: Vec<u8>) -> Vec<u8> {
    let n = per.len();
    let d = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| (d..n).all(|i| per[i] == per[i - d]))
        .unwrap_or(n);
    per.truncate(d);
    per
}

impl SeqEP {
    pub fn new(pre: Word, per: Word) -> Result<Self, SeqError> {
        canonicalize(pre, per)
    }

    /// `(per)^∞`.
    pub fn periodic(per: Word) -> Result<Self, SeqError> {
        canonicalize(Word::new(), per)
    }

    /// `symbol^∞`.
    pub fn constant(symbol: u8) -> Self {
        SeqEP { pre: Word::new(), per: Word::constant(symbol, 1) }
    }

    pub fn preperiod(&self) -> &Word {
        &self.pre
    }

    pub fn period(&self) -> &Word {
        &self.per
    }

    /// True when the sequence is purely periodic.
    pub fn is_periodic(&self) -> bool {
        self.pre.is_empty()
    }

    /// True when the sequence ends `0^∞`.
    pub fn ends_in_zeros(&self) -> bool {
        self.per.is_all_zero()
    }

    #[inline]
    pub fn at(&self, i: usize) -> u8 {
        let u = self.pre.as_slice();
        if i < u.len() {
            u[i]
        } else {
            let v = self.per.as_slice();
            v[(i - u.len()) % v.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word::from_vec_unchecked((0..n).map(|i| self.at(i)).collect())
    }

    /// `σ^r(self)`.
    pub fn tail(&self, r: usize) -> SeqEP {
        let u = self.pre.len();
        if r <= u {
            let pre = self.pre.slice(r, u);
            // dropping symbols from a canonical preperiod keeps it canonical
            SeqEP { pre, per: self.per.clone() }
        } else {
            let mut per = self.per.as_slice().to_vec();
            let k = (r - u) % per.len();
            per.rotate_left(k);
            SeqEP { pre: Word::new(), per: Word::from_vec_unchecked(per) }
        }
    }

    /// `word · self`.
    pub fn prepend(&self, word: &Word) -> SeqEP {
        canonicalize(word.concat(&self.pre), self.per.clone()).expect("period is nonempty")
    }

    /// Number of distinct tails `σ^r(self)`: every `r ≥ |u|+|v|` repeats an earlier one.
    pub fn tail_count(&self) -> usize {
        self.pre.len() + self.per.len()
    }

    pub fn tails(&self) -> impl Iterator<Item = (usize, SeqEP)> + '_ {
        (0..self.tail_count()).map(move |r| (r, self.tail(r)))
    }

    /// Comparison horizon against another eventually periodic sequence.
    pub(crate) fn horizon_with(&self, other: &SeqEP) -> usize {
        equality_horizon(self.pre.len(), self.per.len(), other.pre.len(), other.per.len())
    }

    pub fn unimodal_cmp(&self, other: &SeqEP) -> Ordering {
        compare_streams(|i| self.at(i), |i| other.at(i), self.horizon_with(other))
            .unwrap_or(Ordering::Equal)
    }

    pub fn is_shift_maximal(&self) -> bool {
        (1..self.tail_count()).all(|r| self.tail(r).unimodal_cmp(self) != Ordering::Greater)
    }

    /// Does the sequence start with `word`?
    pub fn starts_with(&self, word: &Word) -> bool {
        word.iter().enumerate().all(|(i, b)| self.at(i) == b)
    }
}

/// Compare two eventually periodic sequences in the unimodal order.
///
/// Sequences `u(v)` and `u'(v')` that agree on their first
/// `max(|u|,|u'|) + lcm(|v|,|v'|)` symbols are equal, so the scan is bounded.
pub fn unimodal_cmp(s: &SeqEP, t: &SeqEP) -> Ordering {
    s.unimodal_cmp(t)
}

pub fn is_shift_maximal(s: &SeqEP) -> bool {
    s.is_shift_maximal()
}

/// Compare every extension of the finite word `p` with `t`.
///
/// `None` means `p` is a prefix of `t`, so extensions fall on both sides.
pub fn prefix_cmp(p: &Word, t: &SeqEP) -> Option<Ordering> {
    let bits = p.as_slice();
    compare_streams(|i| bits[i], |i| t.at(i), bits.len())
}

impl Ord for SeqEP {
    fn cmp(&self, other: &Self) -> Ordering {
        self.unimodal_cmp(other)
    }
}

impl PartialOrd for SeqEP {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SeqEP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeqEP({self})")
    }
}
