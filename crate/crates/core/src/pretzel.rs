//! Pretzel-link classification and the closed-form braid synthesis
//! templates, together with their crossing/strand count predictions.
//!
//! Every synthesis routine emits its word verbatim in template order, with
//! no free reduction, so that the count formulas can be asserted exactly.

use crate::braid::{block_repeat, range_seq, sigma_power, sign_scale, BraidWord, Dir, IntSeq, Shift};
use crate::error::{Error, Result};
use serde::Serialize;

/// An ordered list of nonzero integer entries `(a_1, ..., a_n)`.
///
/// Zero entries are rejected: every synthesis template divides by `|a_i|`
/// or assumes an orientable column pattern, and supporting zeros would
/// require link-splitting preprocessing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pretzel {
    entries: Vec<i64>,
}

impl Pretzel {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyPretzel);
        }
        if entries.iter().any(|&a| a == 0) {
            return Err(Error::ZeroEntry);
        }
        Ok(Pretzel { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Cyclic left rotation by `k`.
    pub fn rotated(&self, k: usize) -> Pretzel {
        let n = self.entries.len();
        let k = k % n;
        let mut entries = Vec::with_capacity(n);
        entries.extend_from_slice(&self.entries[k..]);
        entries.extend_from_slice(&self.entries[..k]);
        Pretzel { entries }
    }

    /// Entry-wise negation (the mirror link).
    pub fn mirrored(&self) -> Pretzel {
        Pretzel { entries: self.entries.iter().map(|&a| -a).collect() }
    }

    pub fn crossing_total(&self) -> usize {
        self.entries.iter().map(|&a| a.unsigned_abs() as usize).sum()
    }

    pub fn even_count(&self) -> usize {
        self.entries.iter().filter(|&&a| a % 2 == 0).count()
    }
}

impl std::fmt::Display for Pretzel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "P(")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Which synthesis template applies; uniquely determined by `n` and the
/// parity multiset of the entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    Single,
    Pair,
    ThreeEvenCenter,
    ThreeAllOdd,
    EvenN,
    OddNEvenEntry,
    OddNAllOdd,
}

pub fn classify(p: &Pretzel) -> CaseTag {
    let n = p.len();
    let has_even = p.even_count() > 0;
    match n {
        1 => CaseTag::Single,
        2 => CaseTag::Pair,
        3 if has_even => CaseTag::ThreeEvenCenter,
        3 => CaseTag::ThreeAllOdd,
        _ if n % 2 == 0 => CaseTag::EvenN,
        _ if has_even => CaseTag::OddNEvenEntry,
        _ => CaseTag::OddNAllOdd,
    }
}

/// Where to place an even entry by cyclic rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotateTarget {
    /// Position 2 of a three-entry pretzel.
    CenterOfThree,
    /// Position 1.
    First,
}

/// Rotates the earliest even entry into the target position. Deterministic:
/// the earliest even entry in the original list wins.
pub fn rotate_even_to(p: &Pretzel, target: RotateTarget) -> Result<Pretzel> {
    let n = p.len();
    let e = p
        .entries
        .iter()
        .position(|&a| a % 2 == 0)
        .ok_or(Error::NoEvenEntry)?;
    let t = match target {
        RotateTarget::CenterOfThree => {
            if n != 3 {
                return Err(Error::InvalidArgument(
                    "center-of-3 rotation needs exactly three entries".into(),
                ));
            }
            1
        }
        RotateTarget::First => 0,
    };
    Ok(p.rotated((e + n - t) % n))
}

fn require_odd(a: i64) -> Result<()> {
    if a % 2 == 0 {
        Err(Error::InvalidArgument(format!("entry {a} must be odd")))
    } else {
        Ok(())
    }
}

fn asc(i: i64, j: i64) -> IntSeq {
    range_seq(i, j, Dir::Asc)
}

fn desc(i: i64, j: i64) -> IntSeq {
    range_seq(i, j, Dir::Desc)
}

/// `sign_scale` for a factor already known to be nonzero.
fn scaled(a: i64, s: IntSeq) -> IntSeq {
    sign_scale(a, &s).expect("nonzero scale factor")
}

/// `P(a, b)` is the closure of `sigma_1^(a+b)` on two strands.
pub fn synth_pair(a: i64, b: i64) -> BraidWord {
    debug_assert!(a != 0 && b != 0);
    BraidWord::from_seq(&sigma_power(1, a + b), 2).expect("pair word fits two strands")
}

/// Three entries with the central one even:
/// `1^c  s_b[-2 v -|b|/2-1]  1^a  s_b([2 ^ |b|/2][-|b|/2-1 ^ -2])`
/// on `|b|/2 + 2` strands.
pub fn synth_three_even_center(a: i64, b: i64, c: i64) -> Result<BraidWord> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::ZeroEntry);
    }
    if b % 2 != 0 {
        return Err(Error::InvalidArgument(format!("central entry {b} must be even")));
    }
    let h = b.abs() / 2;
    let mut w = IntSeq::new();
    w.append(sigma_power(1, c));
    w.append(scaled(b, desc(-2, -h - 1)));
    w.append(sigma_power(1, a));
    let mut tail = asc(2, h);
    tail.append(asc(-h - 1, -2));
    w.append(scaled(b, tail));
    BraidWord::from_seq(&w, (h + 2) as usize)
}

/// Three odd entries, via the five-line template with
/// `a' = (|a|-1)/2`, `b' = (|b|-1)/2`, `c' = (|c|-1)/2`,
/// on `(|a|+|b|+|c|+1)/2` strands.
pub fn synth_three_all_odd(a: i64, b: i64, c: i64) -> Result<BraidWord> {
    require_odd(a)?;
    require_odd(b)?;
    require_odd(c)?;
    let ap = (a.abs() - 1) / 2;
    let bp = (b.abs() - 1) / 2;
    let cp = (c.abs() - 1) / 2;

    let mut w = block_repeat(bp + cp + 2, bp + 3, Dir::Desc, ap as usize, Shift::Up);

    let mut pa = desc(-bp - 2, -bp - ap - 1);
    pa.append(asc(bp + 1, bp + ap));
    pa.append(asc(-bp - ap - 1, -bp - 1));
    w.append(scaled(a, pa));

    w.append(block_repeat(-bp - ap - 2, -bp - 3, Dir::Asc, cp as usize, Shift::Down));

    let mut pb = asc(-bp, -1);
    pb.append(desc(-1, -bp - 1));
    pb.append(asc(1, bp));
    w.append(scaled(b, pb));

    let mut pc = desc(-bp - 2, -bp - cp - 1);
    pc.append(asc(bp + 1, bp + cp));
    pc.append(asc(-bp - cp - 1, -bp - 1));
    w.append(scaled(c, pc));

    let strands = (a.abs() + b.abs() + c.abs() + 1) / 2;
    BraidWord::from_seq(&w, strands as usize)
}

/// Even `n > 2`:
/// `[1 ^ n-2]  (n-1)^{a_1}(n-3)^{a_3}...1^{a_{n-1}}  [-(n-2) ^ -1]
///  (n-1)^{a_2}(n-3)^{a_4}...1^{a_n}` on `n` strands.
pub fn synth_even_n(p: &Pretzel) -> Result<BraidWord> {
    let n = p.len() as i64;
    if n % 2 != 0 || n <= 2 {
        return Err(Error::InvalidArgument(format!(
            "even-count template needs an even number of entries greater than two, got {n}"
        )));
    }
    let a = p.entries();
    let mut w = asc(1, n - 2);
    for t in 0..(n / 2) {
        w.append(sigma_power(n - 1 - 2 * t, a[2 * t as usize]));
    }
    w.append(asc(-(n - 2), -1));
    for t in 0..(n / 2) {
        w.append(sigma_power(n - 1 - 2 * t, a[2 * t as usize + 1]));
    }
    BraidWord::from_seq(&w, n as usize)
}

/// Odd `n >= 3` with `a_1` even (rotate first via [`rotate_even_to`]):
/// `1^{a_{n-1}} 3^{a_{n-3}} ... (n-2)^{a_2}
///  s_{a_1}[1-n v 2-n-|a_1|/2]  [2-n ^ -1]
///  1^{a_n} 3^{a_{n-2}} ... (n-2)^{a_3}  [1 ^ n-2]
///  s_{a_1}([n-1 ^ n-3+|a_1|/2] [2-n-|a_1|/2 ^ 1-n])`
/// on `|a_1|/2 + n - 1` strands.
pub fn synth_odd_n_even_entry(p: &Pretzel) -> Result<BraidWord> {
    let n = p.len() as i64;
    if n % 2 == 0 || n < 3 {
        return Err(Error::InvalidArgument(format!(
            "odd-count template needs an odd number of entries of at least three, got {n}"
        )));
    }
    let a = p.entries();
    let a1 = a[0];
    if a1 % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "first entry {a1} must be even; rotate an even entry into place first"
        )));
    }
    let h = a1.abs() / 2;

    let mut w = IntSeq::new();
    // generators 1, 3, ..., n-2 paired with entries a_{n-1}, a_{n-3}, ..., a_2
    for t in 0..(n - 1) / 2 {
        w.append(sigma_power(1 + 2 * t, a[(n - 1 - 2 * t) as usize - 1]));
    }
    w.append(scaled(a1, desc(1 - n, 2 - n - h)));
    w.append(asc(2 - n, -1));
    // generators 1, 3, ..., n-2 paired with entries a_n, a_{n-2}, ..., a_3
    for t in 0..(n - 1) / 2 {
        w.append(sigma_power(1 + 2 * t, a[(n - 2 * t) as usize - 1]));
    }
    w.append(asc(1, n - 2));
    let mut tail = asc(n - 1, n - 3 + h);
    tail.append(asc(2 - n - h, 1 - n));
    w.append(scaled(a1, tail));

    BraidWord::from_seq(&w, (h + n - 1) as usize)
}

/// Half-crossing data for the all-odd templates: `b_j = (|a_j|-1)/2` and
/// the sign `eps_j` of each entry.
#[derive(Debug, Clone)]
pub struct TwistParams {
    b: Vec<i64>,
    eps: Vec<i64>,
}

impl TwistParams {
    pub fn new(p: &Pretzel) -> Result<Self> {
        for &a in p.entries() {
            require_odd(a)?;
        }
        Ok(TwistParams {
            b: p.entries().iter().map(|&a| (a.abs() - 1) / 2).collect(),
            eps: p.entries().iter().map(|&a| a.signum()).collect(),
        })
    }

    /// `b_j`, 1-based.
    pub fn b(&self, j: usize) -> i64 {
        self.b[j - 1]
    }

    /// `eps_j`, 1-based.
    pub fn eps(&self, j: usize) -> i64 {
        self.eps[j - 1]
    }

    /// The strand offset `B(i, j) = 2 + b_{i+1} + ... + b_{j-1}` for
    /// `1 <= i < j <= n`: the number of strands surrounding the outside of
    /// the reducing-move crossing block.
    pub fn offset(&self, i: usize, j: usize) -> i64 {
        assert!(1 <= i && i < j && j <= self.b.len());
        2 + self.b[i..j - 1].iter().sum::<i64>()
    }
}

/// The column twist word
/// `T(j) = eps_j([-2 v -b_j-1][1 ^ b_j][-b_j-1 ^ -1])`, of length
/// `3 b_j + 1`. The sign factor scales the whole template; the special
/// cases `b_j = 0 -> (-1)` and `b_j = 1 -> (-2,1,-2,-1)` hold for
/// `eps_j = +1` and flip for negative entries.
pub fn twist_seq(j: usize, tp: &TwistParams) -> IntSeq {
    let b = tp.b(j);
    let mut s = desc(-2, -b - 1);
    s.append(asc(1, b));
    s.append(asc(-b - 1, -1));
    scaled(tp.eps(j), s)
}

/// The reducing-move block between columns `i < j`:
/// `G(i, j) = [-B(i,j)-b_j v -B(i,j)-b_j-b_i+1]^(^ b_j ^)`, of length
/// `b_i * b_j`; empty when either `b` vanishes.
pub fn clasp_seq(i: usize, j: usize, tp: &TwistParams) -> IntSeq {
    let bi = tp.b(i);
    let bj = tp.b(j);
    let off = tp.offset(i, j);
    block_repeat(-off - bj, -off - bj - bi + 1, Dir::Desc, bj as usize, Shift::Up)
}

/// `G(k) = G(k-1, k) ... G(2, k) G(1, k)`.
pub fn clasp_group(k: usize, tp: &TwistParams) -> IntSeq {
    let mut s = IntSeq::new();
    for i in (1..k).rev() {
        s.append(clasp_seq(i, k, tp));
    }
    s
}

/// Odd `n` with every entry odd:
/// `G(n) ... G(3) G(2) T(1) G(2)^-1 T(2) G(3)^-1 ... T(n-1) G(n)^-1 T(n)`
/// on `(4 - n + sum |a_j|) / 2` strands. Exposed for `n = 3` as well so the
/// two three-entry routes can be cross-checked.
pub fn synth_odd_n_all_odd(p: &Pretzel) -> Result<BraidWord> {
    let n = p.len();
    if n % 2 == 0 || n < 3 {
        return Err(Error::InvalidArgument(format!(
            "all-odd template needs an odd number of entries of at least three, got {n}"
        )));
    }
    let tp = TwistParams::new(p)?;

    let mut w = IntSeq::new();
    for k in (2..=n).rev() {
        w.append(clasp_group(k, &tp));
    }
    for j in 1..n {
        w.append(twist_seq(j, &tp));
        w.append(clasp_group(j + 1, &tp).inverse());
    }
    w.append(twist_seq(n, &tp));

    let total: i64 = p.entries().iter().map(|&a| a.abs()).sum();
    let strands = (4 - n as i64 + total) / 2;
    BraidWord::from_seq(&w, strands as usize)
}

/// Crossing and strand counts predicted by the applicable template,
/// computed from the formulas alone (never from the word) so the two can
/// be cross-asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountPrediction {
    pub crossings: usize,
    pub strands: usize,
}

/// The synthesis result: the braid word, the formula-predicted counts
/// (already checked against the word), and the case that produced it.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub word: BraidWord,
    pub counts: CountPrediction,
    pub case: CaseTag,
}

fn counts_for(p: &Pretzel, case: CaseTag) -> Result<CountPrediction> {
    let n = p.len() as i64;
    let total: i64 = p.entries().iter().map(|&a| a.abs()).sum();
    let (crossings, strands) = match case {
        CaseTag::Single => (0, 1),
        CaseTag::Pair => ((p.entries[0] + p.entries[1]).abs(), 2),
        CaseTag::ThreeEvenCenter => {
            let q = rotate_even_to(p, RotateTarget::CenterOfThree)?;
            let (a, b, c) = (q.entries[0], q.entries[1], q.entries[2]);
            (a.abs() + c.abs() + 3 * b.abs() / 2 - 1, b.abs() / 2 + 2)
        }
        CaseTag::ThreeAllOdd => {
            let (a, b, c) = (p.entries[0], p.entries[1], p.entries[2]);
            (
                a.abs() + c.abs() - 1 + (3 * b.abs() + a.abs() * c.abs()) / 2,
                (a.abs() + b.abs() + c.abs() + 1) / 2,
            )
        }
        CaseTag::EvenN => (2 * n + total - 4, n),
        CaseTag::OddNEvenEntry => {
            let q = rotate_even_to(p, RotateTarget::First)?;
            let h = q.entries[0].abs() / 2;
            (h + total + 2 * n - 5, h + n - 1)
        }
        CaseTag::OddNAllOdd => {
            let pair_sum: i64 = {
                let mut s = 0;
                for i in 0..p.len() {
                    for j in i + 1..p.len() {
                        s += (p.entries[i].abs() - 1) * (p.entries[j].abs() - 1);
                    }
                }
                s
            };
            ((3 * total + pair_sum - n) / 2, (4 - n + total) / 2)
        }
    };
    Ok(CountPrediction { crossings: crossings as usize, strands: strands as usize })
}

/// Counts the applicable template predicts for `p`, without synthesizing.
pub fn predict_counts(p: &Pretzel) -> Result<CountPrediction> {
    counts_for(p, classify(p))
}

/// Dispatches to the applicable template. Three entries prefer the
/// dedicated three-entry templates (strictly fewer crossings than the
/// general odd route); the even entry, when present, is rotated to the
/// canonical position first. The returned word is checked against the
/// formula-predicted counts; a mismatch is an internal error.
pub fn synthesize(p: &Pretzel) -> Result<Synthesis> {
    let case = classify(p);
    let word = match case {
        CaseTag::Single => BraidWord::empty(1),
        CaseTag::Pair => synth_pair(p.entries[0], p.entries[1]),
        CaseTag::ThreeEvenCenter => {
            let q = rotate_even_to(p, RotateTarget::CenterOfThree)?;
            synth_three_even_center(q.entries[0], q.entries[1], q.entries[2])?
        }
        CaseTag::ThreeAllOdd => {
            synth_three_all_odd(p.entries[0], p.entries[1], p.entries[2])?
        }
        CaseTag::EvenN => synth_even_n(p)?,
        CaseTag::OddNEvenEntry => {
            let q = rotate_even_to(p, RotateTarget::First)?;
            synth_odd_n_even_entry(&q)?
        }
        CaseTag::OddNAllOdd => synth_odd_n_all_odd(p)?,
    };
    let counts = counts_for(p, case)?;
    if word.len() != counts.crossings || word.strands() != counts.strands {
        return Err(Error::Internal(format!(
            "{p}: word has {} letters on {} strands, formulas predict {} on {}",
            word.len(),
            word.strands(),
            counts.crossings,
            counts.strands
        )));
    }
    Ok(Synthesis { word, counts, case })
}
