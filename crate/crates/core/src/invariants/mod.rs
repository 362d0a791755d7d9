//! Exact Kauffman brackets by two independent routes, and the certificate
//! that ties a synthesized braid back to its pretzel diagram.
//!
//! `bracket_pd` enumerates all `2^c` smoothing states of a planar diagram;
//! `bracket_braid` evaluates a braid closure through the Temperley-Lieb
//! algebra. The two must agree exactly on closures, and a pretzel diagram
//! must match its synthesized closure up to a framing unit `(-A^3)^k`.

pub mod laurent;
mod tl;

pub use laurent::{framing_ratio, LaurentPoly};

use crate::braid::BraidWord;
use crate::diagram::{pretzel_pd, PlanarDiagram};
use crate::error::{Error, Result};
use crate::pretzel::{synthesize, CaseTag, CountPrediction, Pretzel};
use num_bigint::BigInt;

/// Resource limits for the exact oracles. These are configuration: the
/// defaults keep both evaluations desk-scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// State-sum limit: diagrams with more crossings are refused.
    pub max_crossings: usize,
    /// Transfer limit: words on more strands are refused.
    pub max_strands: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_crossings: 22, max_strands: 10 }
    }
}

/// Kauffman bracket of an unoriented diagram by brute-force state
/// enumeration: the sum over all `2^c` smoothings of
/// `A^(#A - #B) * d^(loops - 1)` with `d = -A^2 - A^-2`.
pub fn bracket_pd(pd: &PlanarDiagram, caps: &Caps) -> Result<LaurentPoly> {
    let c = pd.crossing_count();
    if c > caps.max_crossings {
        return Err(Error::CrossingCapExceeded { actual: c, cap: caps.max_crossings });
    }
    let extra = pd.free_loop_count();
    let d = LaurentPoly::loop_value();
    if c == 0 {
        // a bare unknot is the empty state sum, normalized to 1
        return Ok(if extra == 0 { LaurentPoly::one() } else { d.pow(extra as u32 - 1) });
    }

    let n = 4 * c;
    let partner: Vec<u32> = (0..n as u32).map(|s| pd.partner(s)).collect();

    // smoothing-partner array for the current state; state bit 1 = B
    let mut smooth = vec![0u32; n];
    let apply = |smooth: &mut [u32], t: usize, b_side: bool| {
        let pairs = if b_side {
            PlanarDiagram::b_smoothing(t)
        } else {
            PlanarDiagram::a_smoothing(t)
        };
        for (x, y) in pairs {
            smooth[x as usize] = y;
            smooth[y as usize] = x;
        }
    };
    for t in 0..c {
        apply(&mut smooth, t, false);
    }

    // histogram over (#B smoothings, loop count)
    let max_loops = 2 * c;
    let mut hist = vec![0u64; (c + 1) * (max_loops + 1)];
    let mut stamp = vec![0u32; n];
    let mut stamp_id = 0u32;
    let mut state: u64 = 0;

    for i in 0..(1u64 << c) {
        if i > 0 {
            // Gray order: exactly one crossing flips per step
            let flip = i.trailing_zeros() as usize;
            state ^= 1 << flip;
            apply(&mut smooth, flip, state >> flip & 1 == 1);
        }
        stamp_id += 1;
        let mut loops = 0usize;
        for s0 in 0..n {
            if stamp[s0] == stamp_id {
                continue;
            }
            loops += 1;
            let mut cur = s0;
            loop {
                stamp[cur] = stamp_id;
                let j = smooth[cur] as usize;
                stamp[j] = stamp_id;
                cur = partner[j] as usize;
                if cur == s0 {
                    break;
                }
            }
        }
        let nb = state.count_ones() as usize;
        hist[nb * (max_loops + 1) + loops] += 1;
    }

    let mut dpow = Vec::with_capacity(max_loops + extra);
    dpow.push(LaurentPoly::one());
    for _ in 1..max_loops + extra {
        dpow.push(&dpow[dpow.len() - 1] * &d);
    }
    let mut acc = LaurentPoly::zero();
    for nb in 0..=c {
        for loops in 1..=max_loops {
            let count = hist[nb * (max_loops + 1) + loops];
            if count == 0 {
                continue;
            }
            let exp = c as i64 - 2 * nb as i64;
            let term =
                &LaurentPoly::monomial(exp, BigInt::from(count)) * &dpow[loops + extra - 1];
            acc = &acc + &term;
        }
    }
    Ok(acc)
}

/// Kauffman bracket of a braid closure through the Temperley-Lieb
/// algebra: each letter `m` expands to `A * identity + A^-1 * e_|m|` when
/// positive and `A^-1 * identity + A * e_|m|` when negative; the result is
/// closed with the Markov trace, each basis diagram weighted by
/// `d^(loops - 1)`. Equals `bracket_pd(closure_pd(w))` exactly.
pub fn bracket_braid(w: &BraidWord, caps: &Caps) -> Result<LaurentPoly> {
    let s = w.strands();
    if s > caps.max_strands {
        return Err(Error::StrandCapExceeded { actual: s, cap: caps.max_strands });
    }
    let tables = tl::tables_for(s);
    match tl::transfer::<i128>(w.letters(), &tables) {
        Some(p) => Ok(p),
        None => Ok(tl::transfer::<BigInt>(w.letters(), &tables)
            .expect("big-integer transfer cannot overflow")),
    }
}

/// Everything `certify` measured for one pretzel.
#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub case: CaseTag,
    pub word: BraidWord,
    pub predicted: CountPrediction,
    pub counts_match: bool,
    pub components_pretzel: usize,
    pub components_closure: usize,
    pub components_match: bool,
    pub bracket_pretzel: LaurentPoly,
    pub bracket_closure: LaurentPoly,
    /// `k` with pretzel bracket = `(-A^3)^k` times the closure bracket.
    pub framing_exponent: Option<i64>,
    pub passed: bool,
}

/// Outcome of the certificate: a full report, or a skip when the instance
/// exceeds the oracle caps.
#[derive(Debug, Clone)]
pub enum CertifyOutcome {
    Done(Box<CertifyReport>),
    Skipped { crossings: usize, strands: usize, caps: Caps },
}

impl CertifyOutcome {
    pub fn passed(&self) -> Option<bool> {
        match self {
            CertifyOutcome::Done(r) => Some(r.passed),
            CertifyOutcome::Skipped { .. } => None,
        }
    }
}

/// Checks a synthesized braid against its pretzel: the predicted counts,
/// the component counts on both sides, and bracket equality up to a
/// framing unit. Bracket equivalence is necessary, not sufficient, for
/// link equality, so this is a consistency certificate.
pub fn certify(p: &Pretzel, caps: &Caps) -> Result<CertifyOutcome> {
    let synthesis = synthesize(p)?;
    let crossings = p.crossing_total();
    let strands = synthesis.word.strands();
    if crossings > caps.max_crossings || strands > caps.max_strands {
        return Ok(CertifyOutcome::Skipped { crossings, strands, caps: *caps });
    }

    let word = synthesis.word;
    let counts_match =
        word.len() == synthesis.counts.crossings && strands == synthesis.counts.strands;

    let pd = pretzel_pd(p);
    let components_pretzel = pd.components();
    let components_closure = word.closure_components();
    let components_match = components_pretzel == components_closure;

    let bracket_pretzel = bracket_pd(&pd, caps)?;
    let bracket_closure = bracket_braid(&word, caps)?;
    let framing_exponent = framing_ratio(&bracket_pretzel, &bracket_closure)?;

    let passed = counts_match && components_match && framing_exponent.is_some();
    Ok(CertifyOutcome::Done(Box::new(CertifyReport {
        case: synthesis.case,
        word,
        predicted: synthesis.counts,
        counts_match,
        components_pretzel,
        components_closure,
        components_match,
        bracket_pretzel,
        bracket_closure,
        framing_exponent,
        passed,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{closure_pd, Container, Sense};

    fn word(letters: &[i64], strands: usize) -> BraidWord {
        BraidWord::new(letters.to_vec(), strands).unwrap()
    }

    fn pretzel(entries: &[i64]) -> Pretzel {
        Pretzel::new(entries.to_vec()).unwrap()
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn unknot_brackets() {
        // 0-crossing unknot
        let pd = closure_pd(&BraidWord::empty(1));
        assert_eq!(bracket_pd(&pd, &caps()).unwrap(), LaurentPoly::one());
        assert_eq!(bracket_braid(&BraidWord::empty(1), &caps()).unwrap(), LaurentPoly::one());

        // empty word on three strands: d^2
        let d = LaurentPoly::loop_value();
        assert_eq!(bracket_braid(&BraidWord::empty(3), &caps()).unwrap(), d.pow(2));
        let pd = closure_pd(&BraidWord::empty(3));
        assert_eq!(bracket_pd(&pd, &caps()).unwrap(), d.pow(2));
    }

    #[test]
    fn positive_kink_bracket() {
        // single positive letter: both smoothings by hand give
        // A*d + A^-1 = -A^3
        let expected = LaurentPoly::monomial(3, -1);
        let w = word(&[1], 2);
        assert_eq!(bracket_braid(&w, &caps()).unwrap(), expected);
        assert_eq!(bracket_pd(&closure_pd(&w), &caps()).unwrap(), expected);

        let mirror = LaurentPoly::monomial(-3, -1);
        assert_eq!(bracket_braid(&word(&[-1], 2), &caps()).unwrap(), mirror);
    }

    #[test]
    fn oracle_agreement_fixed_words() {
        for (letters, strands) in [
            (vec![1i64, 1, 1], 2),
            (vec![1, -2, 1, -2], 3),
            (vec![-1, 2, -3, 2], 4),
            (vec![2], 4),
            (vec![1, 3, 1, 3], 4),
            (vec![-1, -1, -1, -1, -1], 2),
        ] {
            let w = BraidWord::new(letters, strands).unwrap();
            let lhs = bracket_braid(&w, &caps()).unwrap();
            let rhs = bracket_pd(&closure_pd(&w), &caps()).unwrap();
            assert_eq!(lhs, rhs, "{w}");
        }
    }

    #[test]
    fn trefoil_pretzel_bracket() {
        let pd = pretzel_pd(&pretzel(&[1, 1, 1]));
        let b = bracket_pd(&pd, &caps()).unwrap();
        assert_eq!(b.term_count(), 3);
        // framing-equivalent to the synthesized closure's bracket
        let s = synthesize(&pretzel(&[1, 1, 1])).unwrap();
        let bb = bracket_braid(&s.word, &caps()).unwrap();
        assert!(framing_ratio(&b, &bb).unwrap().is_some());
    }

    #[test]
    fn mirror_sends_a_to_a_inverse() {
        for (letters, strands) in
            [(vec![1i64, 1, 1], 2), (vec![1, -2, 1, -2], 3), (vec![1, 2, 3], 4)]
        {
            let w = BraidWord::new(letters, strands).unwrap();
            let lhs = bracket_braid(&w.mirrored(), &caps()).unwrap();
            let rhs = bracket_braid(&w, &caps()).unwrap().invert_variable();
            assert_eq!(lhs, rhs, "{w}");
        }
    }

    #[test]
    fn distant_circle_multiplies_by_d() {
        let w = word(&[1, 1, 1], 2);
        let mut pd = closure_pd(&w);
        let base = bracket_pd(&pd, &caps()).unwrap();
        pd.add_free_loop(Container::Outer, Sense::Ccw);
        let with_loop = bracket_pd(&pd, &caps()).unwrap();
        assert_eq!(with_loop, &base * &LaurentPoly::loop_value());
    }

    #[test]
    fn twist_chain_matches_skein_recurrence() {
        // closure of sigma_1^k on two strands: resolving the last crossing
        // gives <k> = A <k-1> + A^-1 (-A^-3)^(k-1), <0> = d, since each
        // remaining letter absorbs into the cup-cap as sigma e = -A^-3 e.
        // k = 90 also exercises the big-integer fallback lane.
        let a = LaurentPoly::variable();
        let ainv = LaurentPoly::monomial(-1, 1);
        let unit = LaurentPoly::monomial(-3, -1);
        let mut expected = LaurentPoly::loop_value();
        let mut unit_pow = LaurentPoly::one();
        for _ in 1..=90usize {
            expected = &(&a * &expected) + &(&ainv * &unit_pow);
            unit_pow = &unit_pow * &unit;
        }
        let w = word(&vec![1i64; 90], 2);
        assert_eq!(bracket_braid(&w, &caps()).unwrap(), expected);
    }

    #[test]
    fn caps_are_enforced() {
        let p = pretzel(&[9, 5, 7, 11, 13]);
        let pd = pretzel_pd(&p);
        assert_eq!(
            bracket_pd(&pd, &caps()),
            Err(Error::CrossingCapExceeded { actual: 45, cap: 22 })
        );
        let s = synthesize(&p).unwrap();
        assert_eq!(
            bracket_braid(&s.word, &caps()),
            Err(Error::StrandCapExceeded { actual: 22, cap: 10 })
        );
    }

    #[test]
    fn certify_examples() {
        for entries in [vec![1i64, 2, 1], vec![1, 1, 1], vec![2, 2]] {
            let outcome = certify(&pretzel(&entries), &caps()).unwrap();
            match outcome {
                CertifyOutcome::Done(r) => {
                    assert!(r.passed, "{r:?}");
                    if entries == [1, 1, 1] {
                        assert_eq!(r.components_pretzel, 1);
                        assert_eq!(r.components_closure, 1);
                    }
                    if entries == [2, 2] {
                        assert_eq!(r.components_pretzel, 2);
                        assert_eq!(r.components_closure, 2);
                    }
                }
                CertifyOutcome::Skipped { .. } => panic!("unexpected skip"),
            }
        }
    }

    #[test]
    fn certify_skips_beyond_caps() {
        let outcome = certify(&pretzel(&[9, 5, 7, 11, 13]), &caps()).unwrap();
        match outcome {
            CertifyOutcome::Skipped { crossings, strands, .. } => {
                assert_eq!(crossings, 45);
                assert_eq!(strands, 22);
            }
            CertifyOutcome::Done(_) => panic!("expected a skip"),
        }
    }

    #[test]
    fn free_reduction_preserves_the_bracket() {
        for (letters, strands) in [
            (vec![1i64, 2, -2, -1, 1], 3),
            (vec![3, -3, 1, -2, 2], 4),
            (vec![1, -1], 2),
        ] {
            let w = BraidWord::new(letters, strands).unwrap();
            let r = w.free_reduce();
            assert_eq!(
                bracket_braid(&w, &caps()).unwrap(),
                bracket_braid(&r, &caps()).unwrap(),
                "{w} vs {r}"
            );
        }
    }

    #[test]
    fn cyclic_rotations_are_framing_equivalent() {
        for entries in [vec![1i64, 2, 3], vec![3, 3, 5, 1], vec![-2, 3, -1]] {
            let p = pretzel(&entries);
            let base =
                bracket_braid(&synthesize(&p).unwrap().word, &caps()).unwrap();
            for k in 1..p.len() {
                let rotated = p.rotated(k);
                let b =
                    bracket_braid(&synthesize(&rotated).unwrap().word, &caps()).unwrap();
                assert!(
                    framing_ratio(&b, &base).unwrap().is_some(),
                    "{p} vs {rotated}"
                );
            }
        }
    }

    #[test]
    fn cross_route_three_entry_brackets_agree() {
        use crate::pretzel::{synth_odd_n_all_odd, synth_three_all_odd};
        let p = pretzel(&[3, 3, 3]);
        let w1 = synth_three_all_odd(3, 3, 3).unwrap();
        let w2 = synth_odd_n_all_odd(&p).unwrap();
        let b1 = bracket_braid(&w1, &caps()).unwrap();
        let b2 = bracket_braid(&w2, &caps()).unwrap();
        assert!(framing_ratio(&b1, &b2).unwrap().is_some());
    }
}
