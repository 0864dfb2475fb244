//! Cutting words `c_q`, the extreme sequences `lhe(q)` and `rhe(q)`, and the
//! height function `q : {0,1}^ℕ → [0, 1/2]`.

use std::cmp::Ordering;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::biseq::{distinct_shifts, BiSeqEP, Reference, ShiftWindow};
use crate::error::ParseError;
use crate::seq::{prefix_cmp, SeqEP};
use crate::word::Word;

/// Exact nonnegative fraction in lowest terms.
pub type Fraction = Ratio<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeightError {
    #[error("q = {0} is outside the admissible range")]
    OutOfRange(Fraction),
    #[error("height search passed denominator {denominator} without converging")]
    GuardExceeded { denominator: u64 },
    #[error("sequence has height {actual}, not {expected}")]
    HeightMismatch { expected: Fraction, actual: Fraction },
    #[error("prefix must be nonempty and start with 1")]
    BadPrefix,
}

/// Parse `m/n` or an integer literal.
pub fn parse_fraction(text: &str) -> Result<Fraction, ParseError> {
    text.trim()
        .parse::<Fraction>()
        .map_err(|_| ParseError::Rational(text.to_string()))
}

fn half() -> Fraction {
    Fraction::new(1, 2)
}

fn check_range(q: Fraction, allow_half: bool) -> Result<(), HeightError> {
    let ok = !q.is_zero() && (q < half() || (allow_half && q == half()));
    if ok {
        Ok(())
    } else {
        Err(HeightError::OutOfRange(q))
    }
}

/// `k_i(q)` for `1 ≤ i ≤ m`: the number of integers in `[(i−1)n/m, in/m]`, minus 2.
pub fn k_seq(q: Fraction) -> Result<Vec<u64>, HeightError> {
    check_range(q, true)?;
    let (m, n) = (*q.numer(), *q.denom());
    Ok((1..=m)
        .map(|i| {
            let hi = (i * n) / m;
            let lo = ((i - 1) * n).div_ceil(m);
            hi + 1 - lo - 2
        })
        .collect())
}

/// `c_q = 1 0^{k_1} 11 0^{k_2} 11 … 11 0^{k_m} 1`, of length `n + 1`.
pub fn c_word(q: Fraction) -> Result<Word, HeightError> {
    let ks = k_seq(q)?;
    let mut c = Word::new();
    for (i, &k) in ks.iter().enumerate() {
        c.push(1);
        if i > 0 {
            c.push(1);
        }
        c.extend_from(&Word::constant(0, k as usize));
    }
    c.push(1);
    Ok(c)
}

/// `(w_q, ŵ_q)`: the first `n − 1` symbols of `c_q` and their reverse.
pub fn w_words(q: Fraction) -> Result<(Word, Word), HeightError> {
    let c = c_word(q)?;
    let w = c.slice(0, c.len() - 2);
    let w_hat = w.reversed();
    Ok((w, w_hat))
}

/// `(lhe(q), rhe(q)) = ((w_q 1)^∞, c_q (1 ŵ_q)^∞)`.
pub fn lhe_rhe(q: Fraction) -> Result<(SeqEP, SeqEP), HeightError> {
    let words = HeightWords::new(q)?;
    Ok((words.lhe, words.rhe))
}

/// Everything derived from a rational `q ∈ (0, 1/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightWords {
    pub q: Fraction,
    pub c: Word,
    pub w: Word,
    pub w_hat: Word,
    pub lhe: SeqEP,
    pub rhe: SeqEP,
}

impl HeightWords {
    pub fn new(q: Fraction) -> Result<Self, HeightError> {
        check_range(q, false)?;
        let c = c_word(q)?;
        let (w, w_hat) = w_words(q)?;
        let mut w1 = w.clone();
        w1.push(1);
        let mut one_w_hat = Word::constant(1, 1);
        one_w_hat.extend_from(&w_hat);
        let lhe = SeqEP::periodic(w1).expect("nonempty");
        let rhe = SeqEP::new(c.clone(), one_w_hat).expect("nonempty");
        Ok(HeightWords { q, c, w, w_hat, lhe, rhe })
    }

    /// `n`, the denominator of `q`.
    pub fn n(&self) -> usize {
        *self.q.denom() as usize
    }

    /// `lhe(q) ⪯ s ⪯ rhe(q)`.
    pub fn contains(&self, s: &SeqEP) -> bool {
        s.unimodal_cmp(&self.lhe) != Ordering::Less && s.unimodal_cmp(&self.rhe) != Ordering::Greater
    }
}

/// `10^∞`, the unique sequence of height 0 and the maximum of the order.
pub fn top() -> SeqEP {
    SeqEP::new(Word::constant(1, 1), Word::constant(0, 1)).expect("nonempty")
}

/// `101^∞`; every sequence at or below it has height 1/2.
pub fn half_bound() -> SeqEP {
    SeqEP::new("10".parse().expect("literal"), Word::constant(1, 1)).expect("nonempty")
}

/// Stern–Brocot walk over `(0, 1/2)`: each step narrows `(lo, hi)` to one side of its mediant.
struct Descent {
    lo: (u64, u64),
    hi: (u64, u64),
}

impl Descent {
    fn new() -> Self {
        Descent { lo: (0, 1), hi: (1, 2) }
    }

    fn mediant(&self) -> Fraction {
        Fraction::new(self.lo.0 + self.hi.0, self.lo.1 + self.hi.1)
    }

    fn go_left(&mut self, q: Fraction) {
        self.hi = (*q.numer(), *q.denom());
    }

    fn go_right(&mut self, q: Fraction) {
        self.lo = (*q.numer(), *q.denom());
    }

    fn bounds(&self) -> (Fraction, Fraction) {
        (Fraction::new(self.lo.0, self.lo.1), Fraction::new(self.hi.0, self.hi.1))
    }
}

/// The height of an eventually periodic sequence.
///
/// Eventually periodic sequences always have rational height, so the search
/// terminates; the guard only catches internal inconsistency.
pub fn height(s: &SeqEP) -> Result<Fraction, HeightError> {
    if *s == top() {
        return Ok(Fraction::zero());
    }
    if s.unimodal_cmp(&half_bound()) != Ordering::Greater {
        return Ok(half());
    }
    let size = (s.preperiod().len() + s.period().len()) as u64;
    let guard = 4 * size * size;
    let mut walk = Descent::new();
    loop {
        let q = walk.mediant();
        if *q.denom() > guard {
            return Err(HeightError::GuardExceeded { denominator: *q.denom() });
        }
        let words = HeightWords::new(q)?;
        if s.unimodal_cmp(&words.rhe) == Ordering::Greater {
            walk.go_left(q);
        } else if s.unimodal_cmp(&words.lhe) == Ordering::Less {
            walk.go_right(q);
        } else {
            return Ok(q);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketStatus {
    Exact,
    Bracket,
}

/// Closed interval holding the height of every extension of a finite prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeightBracket {
    pub lo: Fraction,
    pub hi: Fraction,
    pub status: BracketStatus,
}

impl HeightBracket {
    fn exact(q: Fraction) -> Self {
        HeightBracket { lo: q, hi: q, status: BracketStatus::Exact }
    }

    pub fn is_exact(&self) -> bool {
        self.status == BracketStatus::Exact
    }

    pub fn contains(&self, q: Fraction) -> bool {
        self.lo <= q && q <= self.hi
    }
}

/// Bracket the heights of all sequences that start with `prefix`.
///
/// Each comparison that the prefix decides against `lhe(q)` or `rhe(q)` moves
/// one end of the bracket to `q`; the walk stops at the first mediant where
/// neither comparison is decided.
pub fn height_bracket(prefix: &Word) -> Result<HeightBracket, HeightError> {
    if prefix.get(0) != Some(1) {
        return Err(HeightError::BadPrefix);
    }
    if prefix_cmp(prefix, &half_bound()) == Some(Ordering::Less) {
        return Ok(HeightBracket::exact(half()));
    }
    let guard = 2 * (prefix.len() as u64 + 2);
    let mut walk = Descent::new();
    loop {
        let q = walk.mediant();
        if *q.denom() > guard {
            break;
        }
        let words = HeightWords::new(q)?;
        let vs_lhe = prefix_cmp(prefix, &words.lhe);
        let vs_rhe = prefix_cmp(prefix, &words.rhe);
        match (vs_lhe, vs_rhe) {
            (Some(Ordering::Greater), Some(Ordering::Less)) => return Ok(HeightBracket::exact(q)),
            (_, Some(Ordering::Greater)) | (Some(Ordering::Greater), None) => walk.go_left(q),
            (Some(Ordering::Less), _) | (None, Some(Ordering::Less)) => walk.go_right(q),
            _ => break,
        }
    }
    let (lo, hi) = walk.bounds();
    Ok(HeightBracket { lo, hi, status: BracketStatus::Bracket })
}

/// Result of [`decompose_at_height`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    AtLhe,
    /// `s = (w_q 1)^k t` with `k` greatest; `t` starts with `c_q` or has height below `q`.
    Split { k: usize, t: SeqEP },
}

pub fn decompose_at_height(s: &SeqEP, q: Fraction) -> Result<Decomposition, HeightError> {
    let words = HeightWords::new(q)?;
    let actual = height(s)?;
    if actual != q {
        return Err(HeightError::HeightMismatch { expected: q, actual });
    }
    if *s == words.lhe {
        return Ok(Decomposition::AtLhe);
    }
    let mut block = words.w.clone();
    block.push(1);
    let mut t = s.clone();
    let mut k = 0;
    // terminates because s ≠ (w_q 1)^∞
    while t.starts_with(&block) {
        t = t.tail(block.len());
        k += 1;
    }
    Ok(Decomposition::Split { k, t })
}

/// Infimum of heights over a family of shifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Infimum {
    pub value: Fraction,
    pub attained: bool,
}

/// `inf_r q(fd σ^r S)` and `inf_r q(bd σ^r S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InfimalHeights {
    pub forward: Infimum,
    pub backward: Infimum,
}

/// Both infimal heights of `S`.
///
/// Along each residue class the shifted tails form a sequence `X^k·Y` that is
/// monotone for each parity of `k` and converges to `X^∞`, so the infimum is the
/// least of the first few members and the limits. Whether it is attained is
/// settled on a window where comparisons with the extremes of that height have
/// stabilised.
pub fn infimal_heights(s: &BiSeqEP) -> Result<InfimalHeights, HeightError> {
    let classes = distinct_shifts(s);
    let (ub, vb) = (s.backward().preperiod().len() as i64, s.backward().period().len() as i64);
    let (uf, vf) = (s.forward().preperiod().len() as i64, s.forward().period().len() as i64);
    let near = -(ub + 2 * vb)..=(uf + 2 * vf);
    let mut fwd: Option<Fraction> = None;
    let mut bwd: Option<Fraction> = None;
    let min_into = |acc: &mut Option<Fraction>, h: Fraction| {
        *acc = Some(acc.map_or(h, |a| a.min(h)));
    };
    for r in near {
        min_into(&mut fwd, height(&s.fd_at(r))?);
        min_into(&mut bwd, height(&s.bd_at(r))?);
    }
    for fam in &classes.backward_families {
        min_into(&mut fwd, height(&fam.limit())?);
    }
    for fam in &classes.forward_families {
        min_into(&mut bwd, height(&fam.limit())?);
    }
    let forward = fwd.expect("window is nonempty");
    let backward = bwd.expect("window is nonempty");
    Ok(InfimalHeights {
        forward: Infimum { value: forward, attained: attained(s, forward, true)? },
        backward: Infimum { value: backward, attained: attained(s, backward, false)? },
    })
}

/// Does some `fd σ^r S` (or `bd σ^r S`) have height exactly `q`?
fn attained(s: &BiSeqEP, q: Fraction, forward: bool) -> Result<bool, HeightError> {
    let (top, half) = (top(), half_bound());
    let words = if q.is_zero() || q == Fraction::new(1, 2) { None } else { Some(HeightWords::new(q)?) };
    let refs: Vec<Reference<'_>> = match &words {
        Some(words) => vec![Reference::Exact(&words.lhe), Reference::Exact(&words.rhe)],
        None => vec![Reference::Exact(&top), Reference::Exact(&half)],
    };
    let window = if forward {
        ShiftWindow::stabilized(s, &refs, &[])
    } else {
        ShiftWindow::stabilized(s, &[], &refs)
    };
    let at_q = |t: &SeqEP| -> bool {
        match &words {
            Some(words) => words.contains(t),
            None if q.is_zero() => *t == top,
            None => t.unimodal_cmp(&half) != Ordering::Greater,
        }
    };
    Ok((window.lo..=window.hi).any(|r| at_q(&if forward { s.fd_at(r) } else { s.bd_at(r) })))
}
