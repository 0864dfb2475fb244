//! Exact rational dynamics of the normalised tent map
//! `f(x) = λx` for `x ≤ 1/2`, `f(x) = λ(1−x)` for `x ≥ 1/2`, restricted to its
//! core `[a, b] = [λ − λ²/2, λ/2]`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::biseq::BiSeqEP;
use crate::seq::SeqEP;
use crate::word::Word;

/// Default limit on the bit length of numerators and denominators.
pub const DEFAULT_BIT_BUDGET: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TentError {
    #[error("slope {0} is outside (√2, 2)")]
    SlopeOutOfRange(BigRational),
    #[error("{0} lies outside the core")]
    OutsideCore(BigRational),
    #[error("not realizable at index {index}: {reason}")]
    NotRealizable { index: i64, reason: String },
    #[error("exact arithmetic exceeded the {budget}-bit budget at step {step}")]
    BitBudget { budget: u64, step: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Critical,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPoint {
    pub value: BigRational,
    pub side: Side,
}

/// A tent map with slope `λ ∈ (√2, 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TentMap {
    lambda: BigRational,
    a: BigRational,
    b: BigRational,
    c: BigRational,
    bit_budget: u64,
}

pub fn make_tent(lambda: BigRational) -> Result<TentMap, TentError> {
    TentMap::new(lambda)
}

/// Parse a slope literal `p/q` or an integer.
pub fn parse_slope(text: &str) -> Option<BigRational> {
    text.trim().parse().ok()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn bits(x: &BigRational) -> u64 {
    x.numer().bits().max(x.denom().bits())
}

impl TentMap {
    pub fn new(lambda: BigRational) -> Result<Self, TentError> {
        let two = rat(2, 1);
        if !lambda.is_positive() || &lambda * &lambda <= two || lambda >= two {
            return Err(TentError::SlopeOutOfRange(lambda));
        }
        let b = &lambda / &two;
        let a = &lambda - &lambda * &lambda / &two;
        Ok(TentMap { lambda, a, b, c: rat(1, 2), bit_budget: DEFAULT_BIT_BUDGET })
    }

    pub fn with_bit_budget(mut self, budget: u64) -> Self {
        self.bit_budget = budget;
        self
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn in_core(&self, x: &BigRational) -> bool {
        &self.a <= x && x <= &self.b
    }

    pub fn side(&self, x: &BigRational) -> Side {
        match x.cmp(&self.c) {
            std::cmp::Ordering::Less => Side::Left,
            std::cmp::Ordering::Equal => Side::Critical,
            std::cmp::Ordering::Greater => Side::Right,
        }
    }

    pub fn point(&self, x: BigRational) -> OrbitPoint {
        let side = self.side(&x);
        OrbitPoint { value: x, side }
    }

    pub fn apply(&self, x: &BigRational) -> BigRational {
        if x <= &self.c {
            &self.lambda * x
        } else {
            &self.lambda * (BigRational::one() - x)
        }
    }

    /// The affine branch of `f` on the side coded by `symbol`.
    pub fn branch(&self, symbol: u8, x: &BigRational) -> BigRational {
        if symbol == 0 {
            &self.lambda * x
        } else {
            &self.lambda * (BigRational::one() - x)
        }
    }

    /// Inverse of [`Self::branch`]: `y/λ` for `0`, `1 − y/λ` for `1`.
    pub fn inverse_branch(&self, symbol: u8, y: &BigRational) -> BigRational {
        let z = y / &self.lambda;
        if symbol == 0 {
            z
        } else {
            BigRational::one() - z
        }
    }

    fn budget(&self, x: &BigRational, step: i64) -> Result<(), TentError> {
        if bits(x) > self.bit_budget {
            Err(TentError::BitBudget { budget: self.bit_budget, step })
        } else {
            Ok(())
        }
    }

    /// Whether `x` may carry `symbol`; `critical` is `Some(ε)` when `c` is periodic.
    pub fn admits(&self, x: &BigRational, symbol: u8, critical: Option<u8>) -> Result<(), String> {
        if !self.in_core(x) {
            return Err(format!("{x} lies outside the core"));
        }
        match (self.side(x), symbol) {
            (Side::Left, 1) => Err(format!("{x} < c but the symbol is 1")),
            (Side::Right, 0) => Err(format!("{x} > c but the symbol is 0")),
            (Side::Critical, s) => match critical {
                Some(eps) if eps != s => Err(format!("periodic critical point must carry ε = {eps}")),
                _ => Ok(()),
            },
            _ => Ok(()),
        }
    }

    /// Kneading data of `f` to depth `depth`.
    pub fn kneading(&self, depth: usize) -> Result<KneadingResult, TentError> {
        let mut y = self.b.clone();
        let mut w = Word::new();
        for i in 0..depth {
            match self.side(&y) {
                Side::Critical => {
                    let eps = u8::from(w.is_odd());
                    let mut period = w.clone();
                    period.push(eps);
                    let sequence = SeqEP::periodic(period).expect("nonempty");
                    return Ok(KneadingResult::Exact { sequence, epsilon: eps });
                }
                Side::Left => w.push(0),
                Side::Right => w.push(1),
            }
            y = self.apply(&y);
            self.budget(&y, i as i64)?;
        }
        Ok(KneadingResult::Prefix(w))
    }

    /// `Some(ε)` when `f^n(c) = c` for some `n ≤ depth`.
    fn critical_within(&self, depth: usize) -> Result<Option<u8>, TentError> {
        Ok(match self.kneading(depth)? {
            KneadingResult::Exact { epsilon, .. } => Some(epsilon),
            KneadingResult::Prefix(_) => None,
        })
    }

    /// The itinerary of `x` up to `depth` symbols.
    pub fn itinerary(&self, x: &BigRational, depth: usize) -> Result<Itinerary, TentError> {
        if !self.in_core(x) {
            return Err(TentError::OutsideCore(x.clone()));
        }
        let mut y = x.clone();
        let mut w = Word::new();
        let mut critical: Option<Option<u8>> = None;
        for r in 0..depth {
            let symbol = match self.side(&y) {
                Side::Left => 0,
                Side::Right => 1,
                Side::Critical => {
                    let eps = match critical {
                        Some(eps) => eps,
                        None => *critical.insert(self.critical_within(depth)?),
                    };
                    match eps {
                        Some(eps) => eps,
                        None => return Ok(Itinerary::Pair { prefix: w, hit: r }),
                    }
                }
            };
            w.push(symbol);
            y = self.apply(&y);
            self.budget(&y, r as i64)?;
        }
        Ok(Itinerary::Unique(w))
    }

    /// The cycle points of `per^∞` under the affine branches, starting with the
    /// fixed point of the composed branch map.
    fn cycle(&self, per: &Word) -> Vec<BigRational> {
        // F(x) = αx + β after composing the branches coded by `per`
        let mut alpha = BigRational::one();
        let mut beta = BigRational::zero();
        for s in per.iter() {
            if s == 0 {
                alpha = &self.lambda * alpha;
                beta = &self.lambda * beta;
            } else {
                alpha = -(&self.lambda * alpha);
                beta = &self.lambda * (BigRational::one() - beta);
            }
        }
        let mut y = beta / (BigRational::one() - alpha);
        let mut points = Vec::with_capacity(per.len());
        for s in per.iter() {
            let next = self.branch(s, &y);
            points.push(y);
            y = next;
        }
        points
    }

    /// The orbit of the unique point whose itinerary is `s`: the preperiod
    /// points followed by one copy of the cycle.
    fn forward_orbit(&self, s: &SeqEP) -> Result<(Vec<BigRational>, Option<u8>), TentError> {
        let cycle = self.cycle(s.period());
        for (j, y) in cycle.iter().enumerate() {
            self.budget(y, (s.preperiod().len() + j) as i64)?;
        }
        let critical = cycle.iter().position(|y| y == &self.c).map(|j| {
            let others = cycle.iter().enumerate().filter(|&(i, y)| i != j && y > &self.c).count();
            (others % 2) as u8
        });
        let pre = s.preperiod();
        let mut points = vec![BigRational::zero(); pre.len()];
        let mut y = cycle[0].clone();
        for j in (0..pre.len()).rev() {
            y = self.inverse_branch(pre.as_slice()[j], &y);
            self.budget(&y, j as i64)?;
            points[j] = y.clone();
        }
        points.extend(cycle);
        let symbols = (0..points.len()).map(|i| s.at(i));
        for (i, (x, sym)) in points.iter().zip(symbols).enumerate() {
            self.admits(x, sym, critical)
                .map_err(|reason| TentError::NotRealizable { index: i as i64, reason })?;
        }
        Ok((points, critical))
    }

    /// The unique `x ∈ [a, b]` with itinerary `s`.
    pub fn point_from_forward(&self, s: &SeqEP) -> Result<BigRational, TentError> {
        let (points, _) = self.forward_orbit(s)?;
        Ok(points.into_iter().next().expect("orbit is nonempty"))
    }

    /// Realise `S` as an orbit `(x_r)` with `f(x_r) = x_{r+1}` and report `x_r`
    /// for `−depth ≤ r ≤ depth`.
    ///
    /// The whole backward tail is verified, not just the reported window: past
    /// the backward preperiod the points converge geometrically to a backward
    /// cycle, and once the error is below the distance from every cycle point to
    /// the boundaries it does not lie on, admissibility depends only on the sign
    /// of the error, which repeats every two periods.
    pub fn realize_backward(&self, s: &BiSeqEP, depth: usize) -> Result<Realization, TentError> {
        let (forward, critical) = self.forward_orbit(s.forward())?;
        let not_realizable = |index: i64, reason: String| TentError::NotRealizable { index, reason };

        let d = depth as i64;
        let mut points: Vec<(i64, BigRational)> = Vec::new();
        let mut x = forward[0].clone();
        for r in 0..=d {
            points.push((r, x.clone()));
            x = self.apply(&x);
        }

        // backward: x_{r−1} = inverse_branch(S_{r−1}, x_r)
        let bd = s.backward();
        let u = bd.preperiod().len();
        let p = bd.period().len();
        let mut backward: Vec<BigRational> = Vec::with_capacity(depth);
        let mut y = forward[0].clone();
        let step = |i: usize, y: &mut BigRational| -> Result<(), TentError> {
            let sym = bd.at(i);
            *y = self.inverse_branch(sym, y);
            let r = -1 - i as i64;
            self.budget(y, r)?;
            self.admits(y, sym, critical).map_err(|reason| not_realizable(r, reason))
        };
        let mut i = 0usize;
        while i < u {
            step(i, &mut y)?;
            backward.push(y.clone());
            i += 1;
        }

        let zs = self.backward_cycle(bd.period());
        let delta = zs
            .iter()
            .map(|z| {
                [&self.a, &self.c, &self.b]
                    .into_iter()
                    .filter(|e| *e != z)
                    .map(|e| (z - e).abs())
                    .min()
                    .expect("three boundaries")
            })
            .min()
            .expect("period is nonempty");
        // blocks still to check once the error has settled
        let mut remaining: Option<usize> = None;
        loop {
            if remaining.is_none() {
                let error = (&y - &zs[0]).abs();
                if error.is_zero() {
                    remaining = Some(1);
                } else if error < delta {
                    remaining = Some(2);
                }
            }
            if remaining == Some(0) && backward.len() >= depth {
                break;
            }
            for _ in 0..p {
                step(i, &mut y)?;
                if backward.len() < depth {
                    backward.push(y.clone());
                }
                i += 1;
            }
            if let Some(n) = remaining.as_mut() {
                *n = n.saturating_sub(1);
            }
        }
        for (j, y) in backward.into_iter().enumerate().take(depth) {
            points.push((-1 - j as i64, y));
        }
        points.sort_by_key(|(r, _)| *r);
        let orbit = points
            .into_iter()
            .map(|(r, value)| RealizedPoint { index: r, symbol: s.at(r), point: self.point(value) })
            .collect();
        Ok(Realization { orbit })
    }

    /// Fixed point of the backward branch composition for `per`, followed by its
    /// successive preimages inside one period.
    fn backward_cycle(&self, per: &Word) -> Vec<BigRational> {
        // z ↦ G(z) = αz + β pulling back through per[0], per[1], …
        let mut alpha = BigRational::one();
        let mut beta = BigRational::zero();
        let inv = BigRational::one() / &self.lambda;
        for s in per.iter() {
            if s == 0 {
                alpha = &inv * alpha;
                beta = &inv * beta;
            } else {
                alpha = -(&inv * alpha);
                beta = BigRational::one() - &inv * beta;
            }
        }
        let mut z = beta / (BigRational::one() - alpha);
        let mut zs = Vec::with_capacity(per.len() + 1);
        zs.push(z.clone());
        for s in per.iter() {
            z = self.inverse_branch(s, &z);
            zs.push(z.clone());
        }
        zs
    }
}

/// Output of [`TentMap::kneading`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KneadingResult {
    /// The first `depth` symbols of `κ`; `c` was not seen to be periodic.
    Prefix(Word),
    /// `c` is periodic and `κ = (Wε)^∞`.
    Exact { sequence: SeqEP, epsilon: u8 },
}

/// Output of [`TentMap::itinerary`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Itinerary {
    Unique(Word),
    /// The orbit meets a non-periodic `c` at step `hit`; both `prefix·0·κ` and
    /// `prefix·1·κ` are itineraries.
    Pair { prefix: Word, hit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedPoint {
    pub index: i64,
    pub symbol: u8,
    pub point: OrbitPoint,
}

/// A verified orbit window `x_{−D}, …, x_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub orbit: Vec<RealizedPoint>,
}

impl Realization {
    pub fn at(&self, r: i64) -> Option<&BigRational> {
        self.orbit.iter().find(|p| p.index == r).map(|p| &p.point.value)
    }

    /// CSV rows `r,numerator,denominator,symbol`.
    pub fn csv_rows(&self) -> Vec<String> {
        self.orbit
            .iter()
            .map(|p| format!("{},{},{},{}", p.index, p.point.value.numer(), p.point.value.denom(), p.symbol))
            .collect()
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Critical => "critical",
            Side::Right => "right",
        })
    }
}
