//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p kneading --test acceptance`.

mod common;

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use kneading::height::Infimum;
use kneading::tent::KneadingResult;
use kneading::{
    backward_admissible, c_word, forward_admissible, forward_admissible_prefix, height, infimal_heights, lhe_rhe,
    make_tent, max_backward_itinerary, validate_kappa, BiSeqEP, Kappa, KneadingType, SeqEP, Word,
};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

struct Outcome {
    ok: bool,
    summary: String,
}

fn pass(summary: impl Into<String>) -> Outcome {
    Outcome { ok: true, summary: summary.into() }
}

fn fail(summary: impl Into<String>) -> Outcome {
    Outcome { ok: false, summary: summary.into() }
}

fn seq(s: &str) -> SeqEP {
    s.parse().unwrap()
}

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

fn zeros(n: usize) -> String {
    "0".repeat(n)
}

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |m: u64, n: u64, expected: String| {
        let got = c_word(fraction(m, n)).unwrap().to_string();
        let oracle = to_text(&oracle_c(m, n));
        if got != expected || oracle != expected {
            failures.push(format!("c_{m}/{n}: library {got}, oracle {oracle}, expected {expected}"));
        }
    };
    check(5, 17, "100110110011011001".into());
    for n in 2..=20usize {
        let n1 = zeros(n - 1);
        check(1, n as u64, format!("1{n1}1"));
        check(2, 2 * n as u64 + 1, format!("1{n1}11{n1}1"));
        check(3, 3 * n as u64 + 1, format!("1{n1}11{}11{n1}1", zeros(n - 2)));
        check(3, 3 * n as u64 + 2, format!("1{n1}11{n1}11{n1}1"));
    }
    if failures.is_empty() {
        pass("c_5/17 and the four families for 2 ≤ n ≤ 20 match")
    } else {
        fail(failures.join("; "))
    }
}

fn criterion_2() -> Outcome {
    let third = fraction(1, 3);
    let (lhe, rhe) = lhe_rhe(third).unwrap();
    if lhe != seq("(101)") || rhe != seq("10(011)") {
        return fail(format!("lhe = {lhe}, rhe = {rhe}"));
    }
    if height(&lhe).unwrap() != third || height(&rhe).unwrap() != third {
        return fail("endpoint heights differ from 1/3");
    }
    let lo = bits("101101101101101101101101101101");
    let hi = bits("100110110110110110110110110110");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut between = Vec::new();
    while between.len() < 10 {
        let tail = random_seq(&mut rng, 8);
        let s = tail.prepend(&word("10"));
        let e = expand(&s, lo.len());
        let strictly = cmp_arrays(&e, &lo) == Ordering::Greater && cmp_arrays(&e, &hi) == Ordering::Less;
        // the 30-symbol arrays decide strictness only when they differ
        if strictly && !between.contains(&s) {
            between.push(s);
        }
    }
    for s in &between {
        let h = height(s).unwrap();
        if h != third {
            return fail(format!("height({s}) = {h}"));
        }
    }
    let listed: Vec<String> = between.iter().take(3).map(|s| s.to_string()).collect();
    pass(format!("endpoints exact; 10 sampled sequences between them have height 1/3 (e.g. {})", listed.join(", ")))
}

fn criterion_3() -> Outcome {
    let mut qs: Vec<(u64, u64)> = fractions_below_half(40);
    qs.push((1, 2));
    qs.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    let arrays: Vec<Vec<u8>> = qs
        .iter()
        .map(|&(m, n)| {
            let mut c0 = c_word(fraction(m, n)).unwrap().as_slice().to_vec();
            c0.push(0);
            expand_words(&[], &c0, 200)
        })
        .collect();
    let mut pairs = 0usize;
    for i in 0..qs.len() {
        for j in i + 1..qs.len() {
            pairs += 1;
            // q_i < q_j must give (c_{q_j}0)^∞ ≺ (c_{q_i}0)^∞
            if cmp_arrays(&arrays[j], &arrays[i]) != Ordering::Less {
                return fail(format!("monotonicity fails for {:?} < {:?}", qs[i], qs[j]));
            }
        }
    }
    let mut checked = 0;
    for (m, n) in fractions_below_half(60) {
        let c = c_word(fraction(m, n)).unwrap();
        let (w, w_hat) = kneading::w_words(fraction(m, n)).unwrap();
        if !c.is_palindrome() || !c.is_even() || !w.is_odd() || !w_hat.is_odd() || c.len() as u64 != n + 1 {
            return fail(format!("word invariant fails at {m}/{n}"));
        }
        checked += 1;
    }
    pass(format!("{pairs} ordered pairs with denominators ≤ 40 decrease; {checked} cutting words up to 60 are even palindromes"))
}

fn criterion_4() -> Outcome {
    let mut cases = 0;
    for (m, n) in fractions_below_half(30) {
        let ks = oracle_k(m, n);
        let c = oracle_c(m, n);
        for r in 1..=m as usize {
            let mut v = vec![1u8];
            v.extend(std::iter::repeat_n(0, ks[r - 1] as usize + 1));
            for &k in &ks[r..] {
                v.extend([1, 1]);
                v.extend(std::iter::repeat_n(0, k as usize));
            }
            v.push(1);
            let len = v.len().min(c.len());
            let (a, b) = (&v[..len], &c[..len]);
            if a == b {
                return fail(format!("word for r = {r} agrees with c_{m}/{n} on the shorter length"));
            }
            if cmp_arrays(a, b) != Ordering::Greater {
                return fail(format!("word for r = {r} is not greater than c_{m}/{n}"));
            }
            cases += 1;
        }
    }
    pass(format!("{cases} words disagree with c_q and exceed it"))
}

const HEIGHTS: [(u64, u64); 6] = [(1, 3), (2, 5), (1, 4), (2, 7), (3, 8), (3, 7)];

struct KappaCase {
    kappa: Kappa,
    deep: DeepKappa,
}

fn kappa_cases(interior_per_q: usize) -> Vec<KappaCase> {
    let mut out = Vec::new();
    for &(m, n) in &HEIGHTS {
        let (lhe, rhe) = lhe_rhe(fraction(m, n)).unwrap();
        let mut list = vec![lhe, rhe];
        list.extend(interior_kappas(m, n, interior_per_q));
        for s in list {
            let kappa = validate_kappa(s.clone()).unwrap();
            out.push(KappaCase { deep: DeepKappa::new(&s, m, n), kappa });
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let cases = kappa_cases(7);
    let kinds = |f: fn(&KneadingType) -> bool| cases.iter().filter(|c| f(&c.kappa.kind())).count();
    let left = kinds(|k| matches!(k, KneadingType::RationalLeftEndpoint(_)));
    let right = kinds(|k| matches!(k, KneadingType::RationalRightEndpoint(_)));
    let interior = kinds(|k| matches!(k, KneadingType::RationalInterior(_)));
    if cases.len() < 50 {
        return fail(format!("only {} κ values", cases.len()));
    }
    let mut blocks: Vec<Vec<Vec<u8>>> = HEIGHTS.iter().map(|&(m, n)| height_blocks(m, n)).collect();
    for case in &cases {
        blocks.push(vec![case.kappa.sequence().period().as_slice().to_vec(), vec![1], vec![0]]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut pairs = 0usize;
    let mut admissible = 0usize;
    for i in 0..10_000 {
        let s = if i % 2 == 0 {
            random_biseq(&mut rng, 8)
        } else {
            let b = &blocks[rng.gen_range(0..blocks.len())];
            block_biseq(&mut rng, b, 8)
        };
        let deep = Deep::new(&s);
        for case in &cases {
            let f = forward_admissible(&s, &case.kappa).admissible;
            let b = backward_admissible(&s, &case.kappa).admissible;
            let bf = brute_forward(&deep, &case.deep);
            let bb = brute_backward(&deep, &case.deep);
            if !(f == b && b == bf && bf == bb) {
                return fail(format!(
                    "S = {s}, κ = {}: forward {f}, backward {b}, brute forward {bf}, brute backward {bb}",
                    case.kappa.sequence()
                ));
            }
            pairs += 1;
            admissible += usize::from(f);
        }
    }
    pass(format!(
        "{pairs} pairs over {} κ ({left} left, {right} right, {interior} interior); {admissible} admissible; zero disagreements",
        cases.len()
    ))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn criterion_6() -> Outcome {
    let depth = 200;
    let window = 24;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut notes = Vec::new();
    for (p, q) in [(3, 2), (8, 5), (9, 5), (7, 4)] {
        let f = make_tent(rat(p, q)).unwrap();
        let prefix = match f.kneading(depth).unwrap() {
            KneadingResult::Prefix(w) => w,
            KneadingResult::Exact { .. } => return fail("rational slope reported a periodic critical point"),
        };
        let blocks = vec![prefix.as_slice()[..6].to_vec(), vec![1], vec![1, 0], vec![1, 1, 0], vec![0], vec![1, 0, 0]];
        let (mut decided, mut realized, mut attempts) = (0, 0, 0);
        while decided < 250 && attempts < 20_000 {
            attempts += 1;
            let s = if attempts % 2 == 0 { random_biseq(&mut rng, 8) } else { block_biseq(&mut rng, &blocks, 8) };
            let verdict = forward_admissible_prefix(&s, &prefix);
            let Some(expected) = verdict.decided() else { continue };
            decided += 1;
            match f.realize_backward(&s, window) {
                Ok(real) => {
                    if !expected {
                        return fail(format!("λ = {p}/{q}: {s} refuted but realized"));
                    }
                    realized += 1;
                    for pair in real.orbit.windows(2) {
                        if f.apply(&pair[0].point.value) != pair[1].point.value {
                            return fail(format!("λ = {p}/{q}: orbit of {s} breaks at r = {}", pair[0].index));
                        }
                    }
                    for pt in &real.orbit {
                        let x = &pt.point.value;
                        let sym = s.at(pt.index);
                        let side_ok = if sym == 0 { x <= f.c() } else { x >= f.c() };
                        if pt.symbol != sym || !side_ok || !f.in_core(x) {
                            return fail(format!("λ = {p}/{q}: x_{} = {x} does not carry S_r = {sym}", pt.index));
                        }
                    }
                }
                Err(e) => {
                    if expected {
                        return fail(format!("λ = {p}/{q}: {s} certified but not realized: {e}"));
                    }
                }
            }
        }
        if decided < 200 || realized == 0 || realized == decided {
            return fail(format!("λ = {p}/{q}: decided {decided}, realized {realized}"));
        }
        notes.push(format!("{p}/{q}: {realized}/{decided} realized"));
    }
    pass(format!("realizations match prefix decisions ({})", notes.join(", ")))
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    for ((m, n), required) in [((1u64, 3u64), vec!["(10010)", "1001(10)"]), ((2, 5), vec!["(1011010)"])] {
        let q = fraction(m, n);
        let (_, rhe) = lhe_rhe(q).unwrap();
        let mut kappas: Vec<SeqEP> = required.iter().map(|s| seq(s)).collect();
        for k in interior_kappas(m, n, 8) {
            if !kappas.contains(&k) {
                kappas.push(k);
            }
        }
        kappas.truncate(6);
        let rhe_bits = oracle_extremes(m, n, 300).1;
        for k in &kappas {
            let kappa = validate_kappa(k.clone()).unwrap();
            if kappa.kind() != KneadingType::RationalInterior(q) {
                return fail(format!("{k} is not interior at {q}"));
            }
            let (max, witness) = max_backward_itinerary(&kappa).unwrap();
            if max != rhe {
                return fail(format!("max for {k} is {max}"));
            }
            if !forward_admissible(&witness, &kappa).admissible || !backward_admissible(&witness, &kappa).admissible {
                return fail(format!("witness {witness} rejected for {k}"));
            }
            let deep = Deep::new(&witness);
            let bd: Vec<u8> = (0..300).map(|i| deep.at(n as i64 + 1 - 1 - i)).collect();
            if bd != rhe_bits {
                return fail(format!("bd σ^(n+1) of {witness} is not rhe({q})"));
            }
        }
        let distinct = kappas.iter().enumerate().all(|(i, a)| kappas[i + 1..].iter().all(|b| a != b));
        if kappas.len() < 5 || !distinct {
            return fail(format!("need 5 distinct κ at {q}, have {}", kappas.len()));
        }
        notes.push(format!("{q}: {} κ → {rhe}", kappas.len()));
    }
    pass(format!("maximum backward itinerary is constant ({})", notes.join("; ")))
}

fn criterion_8() -> Outcome {
    let example = BiSeqEP::new(seq("(1)"), seq("(101)"));
    let inf = infimal_heights(&example).unwrap();
    let third = fraction(1, 3);
    if inf.forward != (Infimum { value: third, attained: true }) || inf.backward != (Infimum { value: third, attained: false }) {
        return fail(format!("example gives {inf:?}"));
    }
    // every backward height in a wide window stays above 1/3
    if (-60..=60).any(|r| height(&example.bd_at(r)).unwrap() <= third) {
        return fail("a backward height of the example reaches 1/3");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let blocks: Vec<Vec<Vec<u8>>> = HEIGHTS.iter().map(|&(m, n)| height_blocks(m, n)).collect();
    let mut tested = 0;
    let mut unattained = 0;
    while tested < 5_000 {
        let s = if tested % 2 == 0 {
            random_biseq(&mut rng, 8)
        } else {
            let b = &blocks[rng.gen_range(0..blocks.len())];
            block_biseq(&mut rng, b, 8)
        };
        if s.starts_with_zeros() || s.ends_with_zeros() {
            continue;
        }
        tested += 1;
        let inf = infimal_heights(&s).unwrap();
        if inf.forward.value != inf.backward.value {
            return fail(format!("S = {s}: forward {} ≠ backward {}", inf.forward.value, inf.backward.value));
        }
        // no shift in a wide window goes below the reported infimum
        for r in -40..=40 {
            if height(&s.fd_at(r)).unwrap() < inf.forward.value || height(&s.bd_at(r)).unwrap() < inf.backward.value {
                return fail(format!("S = {s}: height below the infimum at r = {r}"));
            }
        }
        unattained += usize::from(!inf.forward.attained || !inf.backward.attained);
    }
    pass(format!("{tested} sequences have equal infima ({unattained} with one side unattained); example reproduces"))
}

fn criterion_9() -> Outcome {
    let right = validate_kappa(seq("10(011)")).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let blocks = height_blocks(1, 3);
    let mut admissible = 0;
    for i in 0..2_000 {
        let s = if i % 2 == 0 { random_biseq(&mut rng, 8) } else { block_biseq(&mut rng, &blocks, 8) };
        let a = backward_admissible(&s, &right).admissible;
        let b = backward_admissible(&s.rho(), &right).admissible;
        if a != b || a != forward_admissible(&s, &right).admissible {
            return fail(format!("ρ changes admissibility of {s}"));
        }
        admissible += usize::from(a);
    }
    let left = validate_kappa(seq("(101)")).unwrap();
    let good = BiSeqEP::new(seq("(101)"), seq("(1)"));
    let bad = BiSeqEP::new(seq("0(1)"), seq("(101)"));
    if !backward_admissible(&good, &left).admissible || !forward_admissible(&good, &left).admissible {
        return fail("bd = (101)^∞, fd = 1^∞ should be admissible");
    }
    let v = backward_admissible(&bad, &left);
    if v.admissible || v.condition.map(|c| c.label()) != Some("symmetric(c)") || v.shift_index != Some(0) {
        return fail(format!("fd = (101)^∞, bd = 01^∞ gave {v:?}"));
    }
    pass(format!("ρ preserves admissibility on 2000 sequences ({admissible} admissible); left-endpoint pair reproduces with (c) at r = 0"))
}

/// Exact iteration of the tent map with `i128` fractions.
fn kneading_by_hand(p: i128, q: i128, depth: usize) -> String {
    let lambda = Ratio::new(p, q);
    let half = Ratio::new(1, 2);
    let mut x = lambda / 2;
    let mut out = String::new();
    for _ in 0..depth {
        assert_ne!(x, half);
        out.push(if x < half { '0' } else { '1' });
        x = if x <= half { lambda * x } else { lambda * (Ratio::one() - x) };
    }
    out
}

fn criterion_10() -> Outcome {
    let mut notes = Vec::new();
    for (p, q, depth, expected) in [(3, 2, 7, "1011110"), (9, 5, 5, "10011")] {
        let by_hand = kneading_by_hand(p, q, depth);
        let lib = match make_tent(rat(p as i64, q as i64)).unwrap().kneading(depth).unwrap() {
            KneadingResult::Prefix(w) => w.to_string(),
            KneadingResult::Exact { sequence, .. } => sequence.to_string(),
        };
        if lib != by_hand || by_hand != expected {
            return fail(format!("λ = {p}/{q}: library {lib}, iteration {by_hand}, expected {expected}"));
        }
        notes.push(format!("{p}/{q} → {lib}"));
    }
    pass(notes.join(", "))
}

type Criterion = (u32, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, Duration::from_secs(1), criterion_1),
        (2, Duration::from_secs(1), criterion_2),
        (3, Duration::from_secs(10), criterion_3),
        (4, Duration::from_secs(10), criterion_4),
        (5, Duration::from_secs(60), criterion_5),
        (6, Duration::from_secs(60), criterion_6),
        (7, Duration::from_secs(5), criterion_7),
        (8, Duration::from_secs(30), criterion_8),
        (9, Duration::from_secs(10), criterion_9),
        (10, Duration::from_secs(1), criterion_10),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (id, limit, run) in criteria {
        if filter.is_some_and(|f| f != id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let ok = outcome.ok && in_time;
        failed += usize::from(!ok);
        let timing = if in_time { String::new() } else { format!(" (exceeded {limit:?})") };
        println!(
            "[{}] criterion {id}: {} [{:.2?}{timing}]",
            if ok { "PASS" } else { "FAIL" },
            outcome.summary,
            elapsed
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
