//! Bi-infinite sequences whose two tails are eventually periodic, and the
//! finite shift windows that stand in for quantifiers over all of `ℤ`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::order::{compare_streams, equality_horizon, first_difference};
use crate::seq::SeqEP;
use crate::word::Word;

/// `S ∈ {0,1}^ℤ` stored as `bd(S) = S₋₁S₋₂…` and `fd(S) = S₀S₁…`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiSeqEP {
    backward: SeqEP,
    forward: SeqEP,
}

impl BiSeqEP {
    pub fn new(backward: SeqEP, forward: SeqEP) -> Self {
        BiSeqEP { backward, forward }
    }

    /// `bd(S) = S₋₁ S₋₂ …`
    pub fn backward(&self) -> &SeqEP {
        &self.backward
    }

    /// `fd(S) = S₀ S₁ …`
    pub fn forward(&self) -> &SeqEP {
        &self.forward
    }

    /// `S_k` for any integer `k`.
    #[inline]
    pub fn at(&self, k: i64) -> u8 {
        if k >= 0 {
            self.forward.at(k as usize)
        } else {
            self.backward.at((-1 - k) as usize)
        }
    }

    /// `σ^r(S)`, so that `σ^r(S)_i = S_{i+r}`.
    pub fn shift(&self, r: i64) -> BiSeqEP {
        match r.cmp(&0) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let r = r as usize;
                let moved = self.forward.prefix(r).reversed();
                BiSeqEP { backward: self.backward.prepend(&moved), forward: self.forward.tail(r) }
            }
            Ordering::Less => {
                let j = (-r) as usize;
                let moved = self.backward.prefix(j).reversed();
                BiSeqEP { backward: self.backward.tail(j), forward: self.forward.prepend(&moved) }
            }
        }
    }

    /// `fd(σ^r(S)) = S_r S_{r+1} …`
    pub fn fd_at(&self, r: i64) -> SeqEP {
        if r >= 0 {
            self.forward.tail(r as usize)
        } else {
            let j = (-r) as usize;
            self.forward.prepend(&self.backward.prefix(j).reversed())
        }
    }

    /// `bd(σ^r(S)) = S_{r-1} S_{r-2} …`
    pub fn bd_at(&self, r: i64) -> SeqEP {
        if r <= 0 {
            self.backward.tail((-r) as usize)
        } else {
            self.backward.prepend(&self.forward.prefix(r as usize).reversed())
        }
    }

    /// The reversal `ρ(S)_r = S_{−r}`.
    pub fn rho(&self) -> BiSeqEP {
        let head = Word::constant(self.forward.at(0), 1);
        BiSeqEP { backward: self.forward.tail(1), forward: self.backward.prepend(&head) }
    }

    /// True unless infinitely many of `S₋₁, S₋₂, …` are `1`.
    pub fn starts_with_zeros(&self) -> bool {
        self.backward.ends_in_zeros()
    }

    /// True unless infinitely many of `S₀, S₁, …` are `1`.
    pub fn ends_with_zeros(&self) -> bool {
        self.forward.ends_in_zeros()
    }

    /// Least `p > 0` with `σ^p(S) = S`, if `S` is periodic.
    pub fn global_period(&self) -> Option<usize> {
        if !self.forward.is_periodic() || !self.backward.is_periodic() {
            return None;
        }
        let p = self.forward.period().len();
        if p != self.backward.period().len() {
            return None;
        }
        (self.shift(p as i64) == *self).then_some(p)
    }

    // Stream views used by the checkers. They avoid materialising a SeqEP per shift.

    #[inline]
    pub(crate) fn fd_symbol(&self, r: i64, i: usize) -> u8 {
        self.at(r + i as i64)
    }

    #[inline]
    pub(crate) fn bd_symbol(&self, r: i64, i: usize) -> u8 {
        self.at(r - 1 - i as i64)
    }

    /// (preperiod bound, period) of `fd(σ^r(S))`.
    pub(crate) fn fd_shape(&self, r: i64) -> (usize, usize) {
        let u = self.forward.preperiod().len();
        let pre = if r >= 0 { u.saturating_sub(r as usize) } else { u + (-r) as usize };
        (pre, self.forward.period().len())
    }

    /// (preperiod bound, period) of `bd(σ^r(S))`.
    pub(crate) fn bd_shape(&self, r: i64) -> (usize, usize) {
        let u = self.backward.preperiod().len();
        let pre = if r <= 0 { u.saturating_sub((-r) as usize) } else { u + r as usize };
        (pre, self.backward.period().len())
    }
}

impl fmt::Debug for BiSeqEP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiSeqEP({self})")
    }
}

/// A reference sequence that shifted views are compared against: either an
/// exact eventually periodic sequence, or a finite prefix whose continuation is
/// unknown.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Reference<'a> {
    Exact(&'a SeqEP),
    Prefix(&'a Word),
}

impl Reference<'_> {
    #[inline]
    fn symbol(&self, i: usize) -> u8 {
        match self {
            Reference::Exact(s) => s.at(i),
            Reference::Prefix(w) => w.as_slice()[i],
        }
    }

    fn horizon(&self, pre: usize, per: usize) -> usize {
        match self {
            Reference::Exact(s) => equality_horizon(pre, per, s.preperiod().len(), s.period().len()),
            Reference::Prefix(w) => w.len(),
        }
    }

    /// Compare a stream of the given shape against this reference.
    ///
    /// Exact references never return `None`; prefix references never return
    /// `Some(Equal)`.
    #[inline]
    pub(crate) fn compare<F: Fn(usize) -> u8>(&self, view: F, shape: (usize, usize)) -> Option<Ordering> {
        let horizon = self.horizon(shape.0, shape.1);
        match compare_streams(view, |i| self.symbol(i), horizon) {
            Some(ord) => Some(ord),
            None => match self {
                Reference::Exact(_) => Some(Ordering::Equal),
                Reference::Prefix(_) => None,
            },
        }
    }
}

/// Inclusive range `[lo, hi]` of shifts that represents every `r ∈ ℤ`.
///
/// Far to the right `fd(σ^r S)` cycles with the forward period while
/// `bd(σ^r S) = X^k·Y` for a fixed rotation `X` of the reversed forward period;
/// far to the left the roles swap. Against a fixed reference `T`, `X^k·Y`
/// compares like `X^∞` once `X^k` covers the first disagreement of `X^∞` and
/// `T`, and when `X^∞ = T` the outcome depends only on `k mod 2`. So once both
/// parities past the stabilisation point are inside the window, every shift
/// outside it has a twin inside with identical comparison outcomes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftWindow {
    pub lo: i64,
    pub hi: i64,
}

impl ShiftWindow {
    /// `backward_refs` are compared against `fd(σ^r S)` for `r → −∞`,
    /// `forward_refs` against `bd(σ^r S)` for `r → +∞`.
    pub(crate) fn stabilized(s: &BiSeqEP, backward_refs: &[Reference<'_>], forward_refs: &[Reference<'_>]) -> Self {
        let hi = side_extent(s.forward(), forward_refs);
        let lo = -side_extent(s.backward(), backward_refs);
        ShiftWindow { lo, hi }
    }

    /// Shifts in the order `0, −1, 1, −2, 2, …`, so the first failure found has least `|r|`.
    pub fn centre_out(&self) -> impl Iterator<Item = i64> {
        let (lo, hi) = (self.lo, self.hi);
        let reach = (-lo).max(hi);
        (0..=reach)
            .flat_map(|d| if d == 0 { vec![0] } else { vec![-d, d] })
            .filter(move |&r| r >= lo && r <= hi)
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }
}

/// `|u| + |v|·(K + 2)`, with `K` the number of period blocks after which every
/// family `X^k·Y` on this side has settled against every reference.
fn side_extent(side: &SeqEP, refs: &[Reference<'_>]) -> i64 {
    let u = side.preperiod().len();
    let v = side.period().as_slice();
    let p = v.len();
    let mut settle = 0usize;
    for rho in 0..p {
        // X_ρ^∞ at position i is v[(ρ − 1 − i) mod p]
        let x = |i: usize| v[(rho + p * (i / p + 1) - 1 - i) % p];
        for reference in refs {
            let horizon = reference.horizon(0, p);
            let d = first_difference(x, |i| reference.symbol(i), horizon);
            let k = match (d, reference) {
                (Some(d), _) => d / p + 1,
                (None, Reference::Exact(_)) => 0,
                (None, Reference::Prefix(w)) => w.len() / p + 1,
            };
            settle = settle.max(k);
        }
    }
    (u + p * (settle + 2)) as i64
}

/// `fd(σ^r S) = X^k · Y` for `r = start − k·step` (backward families) or
/// `bd(σ^r S) = X^k · Y` for `r = start + k·step` (forward families).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftFamily {
    pub residue: usize,
    pub start: i64,
    pub step: usize,
    pub repeated: Word,
    pub tail: SeqEP,
}

impl ShiftFamily {
    /// The limit `X^∞` of the family.
    pub fn limit(&self) -> SeqEP {
        SeqEP::periodic(self.repeated.clone()).expect("family words are nonempty")
    }
}

/// Finitely many shift classes that together describe `{σ^r(S) : r ∈ ℤ}`.
#[derive(Clone, Debug)]
pub struct ShiftClasses {
    /// Distinct shifts from the window `[−(|u_B|+|v_B|), |u_F|+|v_F|]`.
    pub explicit: Vec<(i64, BiSeqEP)>,
    /// Families for `r → −∞`, one per residue of the backward period.
    pub backward_families: Vec<ShiftFamily>,
    /// Families for `r → +∞`, one per residue of the forward period.
    pub forward_families: Vec<ShiftFamily>,
}

impl ShiftClasses {
    pub fn class_count(&self) -> usize {
        self.explicit.len() + self.backward_families.len() + self.forward_families.len()
    }
}

/// Enumerate the shift classes of `S`.
///
/// When `S` is itself periodic the explicit window already holds every shift and
/// no families are reported.
pub fn distinct_shifts(s: &BiSeqEP) -> ShiftClasses {
    let (ub, vb) = (s.backward().preperiod().len(), s.backward().period().len());
    let (uf, vf) = (s.forward().preperiod().len(), s.forward().period().len());
    let lo = -((ub + vb) as i64);
    let hi = (uf + vf) as i64;
    let mut seen = HashSet::new();
    let mut explicit = Vec::new();
    for r in lo..=hi {
        let shifted = s.shift(r);
        if seen.insert(shifted.clone()) {
            explicit.push((r, shifted));
        }
    }
    if s.global_period().is_some() {
        return ShiftClasses { explicit, backward_families: Vec::new(), forward_families: Vec::new() };
    }
    let backward_families = (0..vb)
        .map(|rho| {
            let start = -((ub + rho) as i64);
            family(s.backward(), rho, start, s.fd_at(start))
        })
        .collect();
    let forward_families = (0..vf)
        .map(|rho| {
            let start = (uf + rho) as i64;
            family(s.forward(), rho, start, s.bd_at(start))
        })
        .collect();
    ShiftClasses { explicit, backward_families, forward_families }
}

fn family(side: &SeqEP, rho: usize, start: i64, tail: SeqEP) -> ShiftFamily {
    let v = side.period().as_slice();
    let p = v.len();
    let repeated = Word::from_bits((0..p).map(|i| v[(rho + p * 2 - 1 - i) % p]));
    ShiftFamily { residue: rho, start, step: p, repeated, tail }
}
