//! Bounded parity-lexicographic comparison of symbol streams.
//!
//! Everything that compares sequences in the unimodal order funnels through
//! [`compare_streams`]: given two index-addressed streams and a horizon, it
//! reports the order decided by the first disagreement, or `None` when the
//! streams agree on the whole horizon. Callers choose the horizon so that
//! agreement either proves equality (eventually periodic data) or means the
//! comparison is undecided (finite prefixes).

use std::cmp::Ordering;

use num_integer::Integer;

/// `s ≺ t` iff the word `s_0 … s_r` is even, where `r` is the first index with
/// `s_r ≠ t_r`.
#[inline]
pub(crate) fn compare_streams<A, B>(a: A, b: B, horizon: usize) -> Option<Ordering>
where
    A: Fn(usize) -> u8,
    B: Fn(usize) -> u8,
{
    let mut odd = false;
    for i in 0..horizon {
        let x = a(i);
        let y = b(i);
        if x != y {
            let odd_through = odd ^ (x == 1);
            return Some(if odd_through { Ordering::Greater } else { Ordering::Less });
        }
        odd ^= x == 1;
    }
    None
}

/// First index below `horizon` where the streams disagree.
#[inline]
pub(crate) fn first_difference<A, B>(a: A, b: B, horizon: usize) -> Option<usize>
where
    A: Fn(usize) -> u8,
    B: Fn(usize) -> u8,
{
    (0..horizon).find(|&i| a(i) != b(i))
}

/// Number of symbols after which two eventually periodic sequences with the
/// given (preperiod, period) shapes must have disagreed, if they differ at all.
///
/// Past `max(pre)` both are periodic, so one common period `lcm(per)` settles
/// equality.
#[inline]
pub(crate) fn equality_horizon(pre_a: usize, per_a: usize, pre_b: usize, per_b: usize) -> usize {
    pre_a.max(pre_b) + per_a.lcm(&per_b)
}
