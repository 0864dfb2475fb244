//! Independent oracles and generators shared by the integration tests.
//!
//! Nothing here calls the library's comparison, canonicalisation, window or
//! height code. Sequences are expanded into plain arrays and compared symbol by
//! symbol.

#![allow(dead_code)]

use std::cmp::Ordering;

use kneading::{BiSeqEP, Fraction, SeqEP, Word};
use rand::Rng;

/// Shift range and comparison length of the deep-window brute force.
pub const DEEP_R: i64 = 200;
pub const DEEP_LEN: usize = 400;

pub fn bits(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

pub fn to_text(v: &[u8]) -> String {
    v.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

/// The first `len` symbols of `pre (per)^∞`.
pub fn expand_words(pre: &[u8], per: &[u8], len: usize) -> Vec<u8> {
    (0..len).map(|i| if i < pre.len() { pre[i] } else { per[(i - pre.len()) % per.len()] }).collect()
}

pub fn expand(s: &SeqEP, len: usize) -> Vec<u8> {
    expand_words(s.preperiod().as_slice(), s.period().as_slice(), len)
}

/// Parity-lexicographic comparison of two equal-length arrays; `Equal` when
/// they agree everywhere.
pub fn cmp_arrays(a: &[u8], b: &[u8]) -> Ordering {
    let mut odd = false;
    for (&x, &y) in a.iter().zip(b) {
        if x != y {
            return if odd ^ (x == 1) { Ordering::Greater } else { Ordering::Less };
        }
        odd ^= x == 1;
    }
    Ordering::Equal
}

/// `k_i(m/n)` by counting lattice abscissae `x` with `(i−1)n ≤ xm ≤ in`.
pub fn oracle_k(m: u64, n: u64) -> Vec<u64> {
    (1..=m)
        .map(|i| (0..=n).filter(|&x| (i - 1) * n <= x * m && x * m <= i * n).count() as u64 - 2)
        .collect()
}

pub fn oracle_c(m: u64, n: u64) -> Vec<u8> {
    let ks = oracle_k(m, n);
    let mut c = vec![1u8];
    for (i, &k) in ks.iter().enumerate() {
        if i > 0 {
            c.extend([1, 1]);
        }
        c.extend(std::iter::repeat_n(0, k as usize));
    }
    c.push(1);
    c
}

/// `(lhe, rhe)` of `m/n` expanded to `len` symbols.
pub fn oracle_extremes(m: u64, n: u64, len: usize) -> (Vec<u8>, Vec<u8>) {
    let c = oracle_c(m, n);
    let w = &c[..c.len() - 2];
    let mut w1 = w.to_vec();
    w1.push(1);
    let mut one_w_hat = vec![1u8];
    one_w_hat.extend(w.iter().rev());
    (expand_words(&[], &w1, len), expand_words(&c, &one_w_hat, len))
}

/// All reduced fractions `m/n` in the open interval `(0, 1/2)` with `n ≤ max_den`.
pub fn fractions_below_half(max_den: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for n in 3..=max_den {
        for m in 1..n {
            if 2 * m < n && gcd(m, n) == 1 {
                out.push((m, n));
            }
        }
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `S` materialised on `[−off, off)`.
pub struct Deep {
    bits: Vec<u8>,
    off: i64,
}

impl Deep {
    pub fn new(s: &BiSeqEP) -> Self {
        let off = DEEP_R + DEEP_LEN as i64 + 2;
        let fwd = expand(s.forward(), off as usize);
        let bwd = expand(s.backward(), off as usize);
        let bits = (-off..off).map(|k| if k >= 0 { fwd[k as usize] } else { bwd[(-1 - k) as usize] }).collect();
        Deep { bits, off }
    }

    pub fn at(&self, k: i64) -> u8 {
        self.bits[(k + self.off) as usize]
    }

    pub fn cmp_fd(&self, r: i64, t: &[u8]) -> Ordering {
        let mut odd = false;
        for (i, &y) in t.iter().enumerate().take(DEEP_LEN) {
            let x = self.at(r + i as i64);
            if x != y {
                return if odd ^ (x == 1) { Ordering::Greater } else { Ordering::Less };
            }
            odd ^= x == 1;
        }
        Ordering::Equal
    }

    pub fn cmp_bd(&self, r: i64, t: &[u8]) -> Ordering {
        let mut odd = false;
        for (i, &y) in t.iter().enumerate().take(DEEP_LEN) {
            let x = self.at(r - 1 - i as i64);
            if x != y {
                return if odd ^ (x == 1) { Ordering::Greater } else { Ordering::Less };
            }
            odd ^= x == 1;
        }
        Ordering::Equal
    }

    /// Every symbol in the far-left margin is 0.
    pub fn starts_zeros(&self) -> bool {
        (0..100).all(|j| self.bits[j] == 0)
    }

    pub fn ends_zeros(&self) -> bool {
        let n = self.bits.len();
        (n - 100..n).all(|j| self.bits[j] == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeepKind {
    Left,
    Right,
    Interior,
}

/// A kneading sequence as the brute force sees it.
pub struct DeepKappa {
    pub kappa: Vec<u8>,
    pub eps: Option<u8>,
    pub kind: DeepKind,
    pub lhe: Vec<u8>,
    pub rhe: Vec<u8>,
    /// `σ^{n+1}(κ)`.
    pub tail: Vec<u8>,
}

impl DeepKappa {
    pub fn new(k: &SeqEP, m: u64, n: u64) -> Self {
        let len = DEEP_LEN + n as usize + 2;
        let kappa = expand(k, len);
        let (lhe, rhe) = oracle_extremes(m, n, DEEP_LEN);
        let eps = k.preperiod().is_empty().then(|| *k.period().as_slice().last().unwrap());
        let head = &kappa[..DEEP_LEN];
        let kind = if head == &lhe[..] {
            DeepKind::Left
        } else if head == &rhe[..] {
            DeepKind::Right
        } else {
            assert_eq!(cmp_arrays(head, &lhe), Ordering::Greater, "κ must lie above lhe");
            assert_eq!(cmp_arrays(head, &rhe), Ordering::Less, "κ must lie below rhe");
            DeepKind::Interior
        };
        let tail = kappa[n as usize + 1..n as usize + 1 + DEEP_LEN].to_vec();
        DeepKappa { kappa: head.to_vec(), eps, kind, lhe, rhe, tail }
    }
}

/// Conditions (A), (B), (C) on `|r| ≤ DEEP_R`.
pub fn brute_forward(d: &Deep, k: &DeepKappa) -> bool {
    if d.starts_zeros() {
        return false;
    }
    for r in -DEEP_R..=DEEP_R {
        match d.cmp_fd(r, &k.kappa) {
            Ordering::Greater => return false,
            Ordering::Equal => {
                if let Some(eps) = k.eps {
                    if d.at(r - 1) != eps {
                        return false;
                    }
                }
            }
            Ordering::Less => {}
        }
    }
    true
}

/// The backward conditions for the kind of `κ`, on `|r| ≤ DEEP_R`.
pub fn brute_backward(d: &Deep, k: &DeepKappa) -> bool {
    if d.ends_zeros() {
        return false;
    }
    for r in -DEEP_R..=DEEP_R {
        match k.kind {
            DeepKind::Left | DeepKind::Right => {
                if d.cmp_bd(r, &k.kappa) == Ordering::Greater {
                    return false;
                }
                if k.kind == DeepKind::Left && d.cmp_fd(r, &k.kappa) == Ordering::Equal && d.at(r - 1) != 1 {
                    return false;
                }
            }
            DeepKind::Interior => {
                if d.cmp_bd(r, &k.rhe) == Ordering::Greater {
                    return false;
                }
                if d.cmp_fd(r, &k.tail) == Ordering::Greater && d.cmp_bd(r, &k.lhe) == Ordering::Greater {
                    return false;
                }
                if let Some(eps) = k.eps {
                    if d.cmp_fd(r, &k.kappa) == Ordering::Equal && d.at(r - 1) != eps {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn random_bits<R: Rng>(rng: &mut R, len: usize) -> Word {
    Word::from_bits((0..len).map(|_| rng.gen_range(0..2u8)))
}

pub fn random_seq<R: Rng>(rng: &mut R, max_len: usize) -> SeqEP {
    let pre = rng.gen_range(0..=max_len);
    let per = rng.gen_range(1..=max_len);
    SeqEP::new(random_bits(rng, pre), random_bits(rng, per)).unwrap()
}

pub fn random_biseq<R: Rng>(rng: &mut R, max_len: usize) -> BiSeqEP {
    BiSeqEP::new(random_seq(rng, max_len), random_seq(rng, max_len))
}

/// A word of length at most `max_len` glued from `blocks`.
pub fn block_word<R: Rng>(rng: &mut R, blocks: &[Vec<u8>], max_len: usize, nonempty: bool) -> Word {
    let target = rng.gen_range(usize::from(nonempty)..=max_len);
    let mut v = Vec::new();
    while v.len() < target {
        v.extend_from_slice(&blocks[rng.gen_range(0..blocks.len())]);
    }
    v.truncate(target);
    Word::from_bits(v)
}

pub fn block_seq<R: Rng>(rng: &mut R, blocks: &[Vec<u8>], max_len: usize) -> SeqEP {
    let pre = block_word(rng, blocks, max_len, false);
    let per = block_word(rng, blocks, max_len, true);
    SeqEP::new(pre, per).unwrap()
}

/// Bi-infinite sequence built from blocks; the backward side reads blocks in
/// reverse so that it mirrors the forward side.
pub fn block_biseq<R: Rng>(rng: &mut R, blocks: &[Vec<u8>], max_len: usize) -> BiSeqEP {
    let reversed: Vec<Vec<u8>> = blocks.iter().map(|b| b.iter().rev().copied().collect()).collect();
    let bd = if rng.gen_bool(0.5) { block_seq(rng, &reversed, max_len) } else { block_seq(rng, blocks, max_len) };
    BiSeqEP::new(bd, block_seq(rng, blocks, max_len))
}

/// Building blocks around height `m/n`: `w_q`, `ŵ_q`, `c_q` and short pieces.
pub fn height_blocks(m: u64, n: u64) -> Vec<Vec<u8>> {
    let c = oracle_c(m, n);
    let w = c[..c.len() - 2].to_vec();
    let w_hat: Vec<u8> = w.iter().rev().copied().collect();
    let mut w1 = w.clone();
    w1.push(1);
    let mut w0 = w.clone();
    w0.push(0);
    let mut one_w_hat = vec![1];
    one_w_hat.extend(&w_hat);
    vec![w1, w0, one_w_hat, c, w_hat, vec![1], vec![0], vec![1, 0]]
}

pub fn fraction(m: u64, n: u64) -> Fraction {
    Fraction::new(m, n)
}

/// Interior-type kneading sequences of height `m/n`, in a fixed order: periodic
/// `(c_q v)^∞` and eventually periodic `c_q u (v)^∞` with short `u`, `v`,
/// filtered by the library's validation and classification.
pub fn interior_kappas(m: u64, n: u64, count: usize) -> Vec<SeqEP> {
    let c = Word::from_bits(oracle_c(m, n));
    let q = fraction(m, n);
    let mut found: Vec<SeqEP> = Vec::new();
    let consider = |s: SeqEP, found: &mut Vec<SeqEP>| {
        if found.contains(&s) {
            return;
        }
        if let Ok(k) = kneading::validate_kappa(s.clone()) {
            if k.kind() == kneading::KneadingType::RationalInterior(q) {
                found.push(s);
            }
        }
    };
    'outer: for len in 0..=6usize {
        for v in 0..(1u32 << len) {
            let tail = Word::from_bits((0..len).map(|i| ((v >> i) & 1) as u8));
            consider(SeqEP::periodic(c.concat(&tail)).unwrap(), &mut found);
            if found.len() >= count {
                break 'outer;
            }
        }
        for ulen in 0..=len.min(2) {
            for u in 0..(1u32 << ulen) {
                let head = Word::from_bits((0..ulen).map(|i| ((u >> i) & 1) as u8));
                for plen in 1..=3usize {
                    for p in 0..(1u32 << plen) {
                        let per = Word::from_bits((0..plen).map(|i| ((p >> i) & 1) as u8));
                        consider(SeqEP::new(c.concat(&head), per).unwrap(), &mut found);
                        if found.len() >= count {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    found
}
