//! Kneading sequences, their classification by height, and the forward and
//! backward admissibility conditions for bi-infinite itineraries.
//!
//! Every "for all `r ∈ ℤ`" quantifier is discharged on a finite
//! [`ShiftWindow`] outside which all comparisons repeat.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::biseq::{BiSeqEP, Reference, ShiftWindow};
use crate::height::{half_bound, height, height_bracket, top, Fraction, HeightBracket, HeightError, HeightWords};
use crate::seq::SeqEP;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KappaError {
    #[error("σ^{shift}(κ) ≻ κ, so κ is not shift-maximal")]
    NotShiftMaximal { shift: usize },
    #[error("κ must lie strictly above 101^∞")]
    BelowRange,
    #[error("κ must lie strictly below 10^∞")]
    AboveRange,
    #[error("periodic κ must have an even period word")]
    OddPeriod,
    #[error(transparent)]
    Height(#[from] HeightError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdmissibilityError {
    #[error("κ has kneading type {0}, expected rational interior type")]
    TypeMismatch(KneadingType),
    #[error("constructed witness failed verification: {0}")]
    WitnessRejected(String),
}

/// The kneading type of an eventually periodic `κ`.
///
/// An eventually periodic sequence always has rational height, so irrational
/// type never occurs for exact input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "q")]
pub enum KneadingType {
    #[serde(rename = "left-endpoint")]
    RationalLeftEndpoint(#[serde(serialize_with = "ser_fraction")] Fraction),
    #[serde(rename = "right-endpoint")]
    RationalRightEndpoint(#[serde(serialize_with = "ser_fraction")] Fraction),
    #[serde(rename = "interior")]
    RationalInterior(#[serde(serialize_with = "ser_fraction")] Fraction),
}

pub(crate) fn ser_fraction<S: serde::Serializer>(q: &Fraction, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl KneadingType {
    pub fn height(&self) -> Fraction {
        match *self {
            KneadingType::RationalLeftEndpoint(q)
            | KneadingType::RationalRightEndpoint(q)
            | KneadingType::RationalInterior(q) => q,
        }
    }

    pub fn is_endpoint(&self) -> bool {
        !matches!(self, KneadingType::RationalInterior(_))
    }
}

impl fmt::Display for KneadingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KneadingType::RationalLeftEndpoint(q) => write!(f, "left-endpoint {q}"),
            KneadingType::RationalRightEndpoint(q) => write!(f, "right-endpoint {q}"),
            KneadingType::RationalInterior(q) => write!(f, "interior {q}"),
        }
    }
}

/// A validated kneading sequence together with the data the checkers need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kappa {
    seq: SeqEP,
    epsilon: Option<u8>,
    kind: KneadingType,
    words: HeightWords,
    /// `σ^{n+1}(κ)`, used by the interior-type conditions.
    tail: SeqEP,
}

/// Accept `s` as a kneading sequence when it is shift-maximal, lies strictly
/// between `101^∞` and `10^∞`, and has an even period word if periodic.
pub fn validate_kappa(s: SeqEP) -> Result<Kappa, KappaError> {
    if s.is_periodic() && s.period().is_odd() {
        return Err(KappaError::OddPeriod);
    }
    if s.unimodal_cmp(&half_bound()) != Ordering::Greater {
        return Err(KappaError::BelowRange);
    }
    if s.unimodal_cmp(&top()) != Ordering::Less {
        return Err(KappaError::AboveRange);
    }
    if let Some(shift) = (1..s.tail_count()).find(|&r| s.tail(r).unimodal_cmp(&s) == Ordering::Greater) {
        return Err(KappaError::NotShiftMaximal { shift });
    }
    let epsilon = if s.is_periodic() { s.period().last() } else { None };
    let q = height(&s)?;
    let words = HeightWords::new(q)?;
    let kind = if s == words.lhe {
        KneadingType::RationalLeftEndpoint(q)
    } else if s == words.rhe {
        KneadingType::RationalRightEndpoint(q)
    } else {
        KneadingType::RationalInterior(q)
    };
    let tail = s.tail(words.n() + 1);
    Ok(Kappa { seq: s, epsilon, kind, words, tail })
}

impl Kappa {
    pub fn sequence(&self) -> &SeqEP {
        &self.seq
    }

    /// `ε(f)`, present exactly when `κ` is periodic.
    pub fn epsilon(&self) -> Option<u8> {
        self.epsilon
    }

    pub fn kind(&self) -> KneadingType {
        self.kind
    }

    pub fn height_words(&self) -> &HeightWords {
        &self.words
    }

    /// `σ^{n+1}(κ)` where `n` is the denominator of the height.
    pub fn shifted_tail(&self) -> &SeqEP {
        &self.tail
    }
}

pub fn classify(kappa: &Kappa) -> KneadingType {
    kappa.kind
}

/// Classification from a finite prefix of `κ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefixClass {
    Certified(KneadingType),
    Undecided(HeightBracket),
}

/// Certify rational interior type when the prefix strictly separates `κ` from
/// both `lhe(q)` and `rhe(q)`; endpoint and irrational types never follow from a
/// finite prefix.
pub fn classify_prefix(prefix: &Word) -> Result<PrefixClass, HeightError> {
    let bracket = height_bracket(prefix)?;
    let half = Fraction::new(1, 2);
    Ok(if bracket.is_exact() && bracket.lo < half {
        PrefixClass::Certified(KneadingType::RationalInterior(bracket.lo))
    } else {
        PrefixClass::Undecided(bracket)
    })
}

/// Which condition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    PointA,
    PointB,
    PointC,
    ForwardA,
    ForwardB,
    ForwardC,
    SymmetricA,
    SymmetricB,
    SymmetricC,
    NonSymmetricA,
    NonSymmetricB,
    NonSymmetricC,
    NonSymmetricD,
}

impl Condition {
    pub fn label(&self) -> &'static str {
        match self {
            Condition::PointA => "point(a)",
            Condition::PointB => "point(b)",
            Condition::PointC => "point(c)",
            Condition::ForwardA => "forward(A)",
            Condition::ForwardB => "forward(B)",
            Condition::ForwardC => "forward(C)",
            Condition::SymmetricA => "symmetric(a)",
            Condition::SymmetricB => "symmetric(b)",
            Condition::SymmetricC => "symmetric(c)",
            Condition::NonSymmetricA => "non-symmetric(a)",
            Condition::NonSymmetricB => "non-symmetric(b)",
            Condition::NonSymmetricC => "non-symmetric(c)",
            Condition::NonSymmetricD => "non-symmetric(d)",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Condition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// Outcome of an admissibility check. On failure `condition` names the first
/// violated condition and `shift_index` the least `|r|` at which it fails, when
/// the condition is quantified over shifts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub admissible: bool,
    pub condition: Option<Condition>,
    pub shift_index: Option<i64>,
    pub detail: String,
}

impl Verdict {
    fn pass(detail: impl Into<String>) -> Self {
        Verdict { admissible: true, condition: None, shift_index: None, detail: detail.into() }
    }

    fn fail(condition: Condition, shift_index: Option<i64>, detail: String) -> Self {
        Verdict { admissible: false, condition: Some(condition), shift_index, detail }
    }
}

type Failure = (Condition, String);

fn first_failure<F>(window: ShiftWindow, passed: &str, mut check: F) -> Verdict
where
    F: FnMut(i64) -> Option<Failure>,
{
    for r in window.centre_out() {
        if let Some((condition, detail)) = check(r) {
            return Verdict::fail(condition, Some(r), detail);
        }
    }
    Verdict::pass(passed)
}

#[inline]
fn fd_vs(s: &BiSeqEP, r: i64, t: &Reference<'_>) -> Option<Ordering> {
    t.compare(|i| s.fd_symbol(r, i), s.fd_shape(r))
}

#[inline]
fn bd_vs(s: &BiSeqEP, r: i64, t: &Reference<'_>) -> Option<Ordering> {
    t.compare(|i| s.bd_symbol(r, i), s.bd_shape(r))
}

/// Admissibility of a one-sided itinerary `s` for a map with kneading sequence `κ`.
pub fn forward_point_admissible(s: &SeqEP, kappa: &Kappa) -> Verdict {
    let k = kappa.sequence();
    for (r, t) in s.tails() {
        if t.unimodal_cmp(k) == Ordering::Greater {
            return Verdict::fail(Condition::PointA, Some(r as i64), format!("σ^{r}(s) = {t} ≻ κ = {k}"));
        }
    }
    let sk = k.tail(1);
    if sk.unimodal_cmp(s) == Ordering::Greater {
        return Verdict::fail(Condition::PointB, None, format!("σ(κ) = {sk} ≻ s = {s}"));
    }
    if let Some(eps) = kappa.epsilon() {
        for r in 1..=s.tail_count() {
            if s.tail(r) == *k && s.at(r - 1) != eps {
                return Verdict::fail(
                    Condition::PointC,
                    Some(r as i64),
                    format!("σ^{r}(s) = κ but s_{} = {} ≠ ε = {eps}", r - 1, s.at(r - 1)),
                );
            }
        }
    }
    Verdict::pass("conditions (a), (b) and (c) hold")
}

/// The forward conditions (A), (B), (C) on `S`.
pub fn forward_admissible(s: &BiSeqEP, kappa: &Kappa) -> Verdict {
    if s.starts_with_zeros() {
        return Verdict::fail(Condition::ForwardB, None, "S starts 0^∞".into());
    }
    let k = Reference::Exact(kappa.sequence());
    let window = ShiftWindow::stabilized(s, &[k], &[]);
    first_failure(window, "conditions (A), (B) and (C) hold", |r| match fd_vs(s, r, &k)? {
        Ordering::Greater => Some((Condition::ForwardA, format!("fd σ^{r}(S) = {} ≻ κ", s.fd_at(r)))),
        Ordering::Equal => {
            let eps = kappa.epsilon()?;
            let prev = s.at(r - 1);
            (prev != eps).then(|| (Condition::ForwardC, format!("fd σ^{r}(S) = κ but S_{} = {prev} ≠ ε = {eps}", r - 1)))
        }
        Ordering::Less => None,
    })
}

/// The backward conditions on `S`, chosen by the kneading type of `κ`.
pub fn backward_admissible(s: &BiSeqEP, kappa: &Kappa) -> Verdict {
    if kappa.kind().is_endpoint() {
        symmetric(s, kappa)
    } else {
        non_symmetric(s, kappa)
    }
}

fn symmetric(s: &BiSeqEP, kappa: &Kappa) -> Verdict {
    if s.ends_with_zeros() {
        return Verdict::fail(Condition::SymmetricB, None, "S ends 0^∞".into());
    }
    let k = Reference::Exact(kappa.sequence());
    let left = matches!(kappa.kind(), KneadingType::RationalLeftEndpoint(_));
    let refs = [k];
    let window = ShiftWindow::stabilized(s, if left { &refs[..] } else { &[] }, &refs);
    first_failure(window, "conditions (a), (b) and (c) hold", |r| {
        if bd_vs(s, r, &k)? == Ordering::Greater {
            return Some((Condition::SymmetricA, format!("bd σ^{r}(S) = {} ≻ κ", s.bd_at(r))));
        }
        if left && fd_vs(s, r, &k)? == Ordering::Equal {
            let prev = s.at(r - 1);
            if prev != 1 {
                return Some((Condition::SymmetricC, format!("fd σ^{r}(S) = κ but S_{} = {prev} ≠ 1", r - 1)));
            }
        }
        None
    })
}

fn non_symmetric(s: &BiSeqEP, kappa: &Kappa) -> Verdict {
    if s.ends_with_zeros() {
        return Verdict::fail(Condition::NonSymmetricC, None, "S ends 0^∞".into());
    }
    let words = kappa.height_words();
    let rhe = Reference::Exact(&words.rhe);
    let lhe = Reference::Exact(&words.lhe);
    let u = Reference::Exact(kappa.shifted_tail());
    let k = Reference::Exact(kappa.sequence());
    let eps = kappa.epsilon();
    let backward_refs: Vec<Reference<'_>> = if eps.is_some() { vec![u, k] } else { vec![u] };
    let window = ShiftWindow::stabilized(s, &backward_refs, &[rhe, lhe]);
    first_failure(window, "conditions (a), (b), (c) and (d) hold", |r| {
        if bd_vs(s, r, &rhe)? == Ordering::Greater {
            return Some((Condition::NonSymmetricA, format!("bd σ^{r}(S) = {} ≻ rhe(q)", s.bd_at(r))));
        }
        if fd_vs(s, r, &u)? == Ordering::Greater && bd_vs(s, r, &lhe)? == Ordering::Greater {
            return Some((
                Condition::NonSymmetricB,
                format!("fd σ^{r}(S) ≻ σ^(n+1)(κ) and bd σ^{r}(S) = {} ≻ lhe(q)", s.bd_at(r)),
            ));
        }
        if let Some(eps) = eps {
            if fd_vs(s, r, &k)? == Ordering::Equal && s.at(r - 1) != eps {
                return Some((
                    Condition::NonSymmetricD,
                    format!("fd σ^{r}(S) = κ but S_{} = {} ≠ ε = {eps}", r - 1, s.at(r - 1)),
                ));
            }
        }
        None
    })
}

/// Outcome of a check against a finite prefix of `κ`, assuming `c` is not periodic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrefixVerdict {
    Certified,
    Refuted(Verdict),
    /// Some comparison at `shift_index` runs past the prefix.
    Undecided { shift_index: Option<i64> },
}

impl PrefixVerdict {
    pub fn decided(&self) -> Option<bool> {
        match self {
            PrefixVerdict::Certified => Some(true),
            PrefixVerdict::Refuted(_) => Some(false),
            PrefixVerdict::Undecided { .. } => None,
        }
    }
}

/// Scan the window; a decided failure anywhere wins over undecided shifts.
fn prefix_scan<F>(window: ShiftWindow, mut check: F) -> PrefixVerdict
where
    F: FnMut(i64) -> Result<Option<Failure>, ()>,
{
    let mut undecided = None;
    for r in window.centre_out() {
        match check(r) {
            Ok(Some((condition, detail))) => return PrefixVerdict::Refuted(Verdict::fail(condition, Some(r), detail)),
            Ok(None) => {}
            Err(()) => {
                undecided.get_or_insert(r);
            }
        }
    }
    match undecided {
        Some(r) => PrefixVerdict::Undecided { shift_index: Some(r) },
        None => PrefixVerdict::Certified,
    }
}

/// Forward conditions against a prefix of `κ`: certified when every
/// `fd σ^r(S)` is strictly below the prefix, refuted when one is strictly above.
pub fn forward_admissible_prefix(s: &BiSeqEP, prefix: &Word) -> PrefixVerdict {
    if s.starts_with_zeros() {
        return PrefixVerdict::Refuted(Verdict::fail(Condition::ForwardB, None, "S starts 0^∞".into()));
    }
    let k = Reference::Prefix(prefix);
    let window = ShiftWindow::stabilized(s, &[k], &[]);
    prefix_scan(window, |r| match fd_vs(s, r, &k) {
        Some(Ordering::Greater) => Ok(Some((Condition::ForwardA, format!("fd σ^{r}(S) = {} ≻ κ", s.fd_at(r))))),
        Some(_) => Ok(None),
        None => Err(()),
    })
}

/// Backward conditions against a prefix of `κ`. Decides only when the prefix
/// certifies rational interior type; then `rhe(q)` and `lhe(q)` are exact and
/// only the comparison with `σ^{n+1}(κ)` goes through the prefix.
pub fn backward_admissible_prefix(s: &BiSeqEP, prefix: &Word) -> PrefixVerdict {
    let q = match classify_prefix(prefix) {
        Ok(PrefixClass::Certified(KneadingType::RationalInterior(q))) => q,
        _ => return PrefixVerdict::Undecided { shift_index: None },
    };
    if s.ends_with_zeros() {
        return PrefixVerdict::Refuted(Verdict::fail(Condition::NonSymmetricC, None, "S ends 0^∞".into()));
    }
    let words = HeightWords::new(q).expect("certified height is in range");
    let n = words.n();
    if prefix.len() <= n + 1 {
        return PrefixVerdict::Undecided { shift_index: None };
    }
    let tail = prefix.slice(n + 1, prefix.len());
    let rhe = Reference::Exact(&words.rhe);
    let lhe = Reference::Exact(&words.lhe);
    let u = Reference::Prefix(&tail);
    let window = ShiftWindow::stabilized(s, &[u], &[rhe, lhe]);
    prefix_scan(window, |r| {
        if bd_vs(s, r, &rhe) == Some(Ordering::Greater) {
            return Ok(Some((Condition::NonSymmetricA, format!("bd σ^{r}(S) = {} ≻ rhe(q)", s.bd_at(r)))));
        }
        if bd_vs(s, r, &lhe) != Some(Ordering::Greater) {
            return Ok(None);
        }
        match fd_vs(s, r, &u) {
            Some(Ordering::Greater) => Ok(Some((
                Condition::NonSymmetricB,
                format!("fd σ^{r}(S) ≻ σ^(n+1)(κ) and bd σ^{r}(S) = {} ≻ lhe(q)", s.bd_at(r)),
            ))),
            Some(_) => Ok(None),
            None => Err(()),
        }
    })
}

/// The greatest backward itinerary `rhe(q)` for interior-type `κ`, with an
/// admissible `S` attaining it at shift `n + 1`.
pub fn max_backward_itinerary(kappa: &Kappa) -> Result<(SeqEP, BiSeqEP), AdmissibilityError> {
    let kind = kappa.kind();
    if kind.is_endpoint() {
        return Err(AdmissibilityError::TypeMismatch(kind));
    }
    let words = kappa.height_words();
    let mut w0 = words.w.clone();
    w0.push(0);
    let mut one_w_hat = Word::constant(1, 1);
    one_w_hat.extend_from(&words.w_hat);
    let witness = BiSeqEP::new(
        SeqEP::periodic(one_w_hat).expect("nonempty"),
        SeqEP::periodic(w0).expect("nonempty"),
    );
    let verdict = forward_admissible(&witness, kappa);
    if !verdict.admissible {
        return Err(AdmissibilityError::WitnessRejected(verdict.detail));
    }
    let attained = witness.bd_at(words.n() as i64 + 1);
    if attained != words.rhe {
        return Err(AdmissibilityError::WitnessRejected(format!("bd σ^(n+1)(S) = {attained} ≠ rhe(q)")));
    }
    Ok((words.rhe.clone(), witness))
}
