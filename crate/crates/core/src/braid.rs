//! Braid words, the integer-sequence calculus used by the synthesis
//! templates, and closure combinatorics.
//!
//! A sequence of nonzero integers `(m_1, ..., m_k)` codes the braid word
//! `sigma_{|m_1|}^{sign m_1} ... sigma_{|m_k|}^{sign m_k}`.

use crate::error::{Error, Result};
use std::fmt;

/// Range direction for [`range_seq`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Asc,
    Desc,
}

/// Per-group endpoint shift for [`block_repeat`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shift {
    Up,
    Down,
}

/// A braid-word fragment: a sequence of nonzero integers with no strand
/// count attached yet.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntSeq(Vec<i64>);

impl IntSeq {
    pub fn new() -> Self {
        IntSeq(Vec::new())
    }

    /// Wraps a vector of letters. Panics on zero entries; parsers must
    /// reject zeros before constructing.
    pub fn from_values(values: Vec<i64>) -> Self {
        assert!(values.iter().all(|&v| v != 0), "IntSeq entries must be nonzero");
        IntSeq(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, v: i64) {
        assert!(v != 0, "IntSeq entries must be nonzero");
        self.0.push(v);
    }

    /// Appends another fragment, consuming it.
    pub fn append(&mut self, mut other: IntSeq) {
        self.0.append(&mut other.0);
    }

    /// Reversed and negated: the inverse of the coded braid word.
    pub fn inverse(&self) -> IntSeq {
        IntSeq(self.0.iter().rev().map(|&v| -v).collect())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, i64> {
        self.0.iter()
    }
}

impl From<IntSeq> for Vec<i64> {
    fn from(s: IntSeq) -> Vec<i64> {
        s.0
    }
}

impl FromIterator<IntSeq> for IntSeq {
    fn from_iter<T: IntoIterator<Item = IntSeq>>(iter: T) -> IntSeq {
        let mut out = IntSeq::new();
        for part in iter {
            out.append(part);
        }
        out
    }
}

/// The bracket-range notation: ascending yields `(i, i+1, ..., j)` when
/// `i <= j` and `i`, `j` share a sign; descending yields `(i, i-1, ..., j)`
/// when `i >= j` under the same sign condition. Everything else is the
/// empty word, including ranges that would cross zero.
pub fn range_seq(i: i64, j: i64, dir: Dir) -> IntSeq {
    let same_sign = (i > 0 && j > 0) || (i < 0 && j < 0);
    if !same_sign {
        return IntSeq::new();
    }
    match dir {
        Dir::Asc if i <= j => IntSeq((i..=j).collect()),
        Dir::Desc if i >= j => IntSeq((j..=i).rev().collect()),
        _ => IntSeq::new(),
    }
}

/// Multiplies every value by the sign of `a`.
pub fn sign_scale(a: i64, s: &IntSeq) -> Result<IntSeq> {
    if a == 0 {
        return Err(Error::ZeroScale);
    }
    let sg = a.signum();
    Ok(IntSeq(s.0.iter().map(|&v| sg * v).collect()))
}

/// Concatenation of `m` ranges, the k-th (k = 0..m-1) with both endpoints
/// shifted by `+k` (up) or `-k` (down). Each group is independently subject
/// to the empty-range rule; `m = 0` gives the empty word.
pub fn block_repeat(i: i64, j: i64, dir: Dir, m: usize, shift: Shift) -> IntSeq {
    let step: i64 = match shift {
        Shift::Up => 1,
        Shift::Down => -1,
    };
    let mut out = IntSeq::new();
    for k in 0..m as i64 {
        out.append(range_seq(i + k * step, j + k * step, dir));
    }
    out
}

/// The exponent notation `k^e`: `|e|` consecutive letters `sign(e) * k`.
pub fn sigma_power(gen: i64, exp: i64) -> IntSeq {
    assert!(gen > 0, "generator index must be positive");
    IntSeq(std::iter::repeat(gen * exp.signum()).take(exp.unsigned_abs() as usize).collect())
}

/// A braid word on an explicit number of strands. Letter `m` encodes the
/// generator `sigma_{|m|}` with exponent `sign(m)`; every `|m|` must be at
/// most `strands - 1`. Strand count is carried explicitly because the
/// synthesis strand counts can exceed `max |letter| + 1` in degenerate
/// cases.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    letters: Vec<i64>,
    strands: usize,
}

impl BraidWord {
    pub fn new(letters: Vec<i64>, strands: usize) -> Result<Self> {
        if strands == 0 {
            return Err(Error::NoStrands);
        }
        for &m in &letters {
            if m == 0 || m.unsigned_abs() as usize > strands - 1 {
                return Err(Error::LetterOutOfRange { letter: m, strands });
            }
        }
        Ok(BraidWord { letters, strands })
    }

    pub fn from_seq(seq: &IntSeq, strands: usize) -> Result<Self> {
        Self::new(seq.values().to_vec(), strands)
    }

    pub fn empty(strands: usize) -> Self {
        assert!(strands >= 1);
        BraidWord { letters: Vec::new(), strands }
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters reversed and negated; `w.concat(&w.inverse())` freely
    /// reduces to the empty word.
    pub fn inverse(&self) -> Self {
        BraidWord {
            letters: self.letters.iter().rev().map(|&m| -m).collect(),
            strands: self.strands,
        }
    }

    /// Concatenation on the same strand count.
    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.strands, other.strands, "strand counts must match");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters, strands: self.strands }
    }

    /// Negates every letter (the mirror braid).
    pub fn mirrored(&self) -> Self {
        BraidWord {
            letters: self.letters.iter().map(|&m| -m).collect(),
            strands: self.strands,
        }
    }

    /// Deletes adjacent `(m, -m)` pairs until none remain. Synthesis output
    /// is never reduced by default; this is an explicit opt-in.
    pub fn free_reduce(&self) -> Self {
        let mut stack: Vec<i64> = Vec::with_capacity(self.letters.len());
        for &m in &self.letters {
            if stack.last() == Some(&-m) {
                stack.pop();
            } else {
                stack.push(m);
            }
        }
        BraidWord { letters: stack, strands: self.strands }
    }

    /// Underlying permutation: the composition of the transpositions
    /// `(|m|, |m|+1)` in letter order, over/under ignored.
    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.strands).collect();
        for &m in &self.letters {
            let g = m.unsigned_abs() as usize - 1;
            // strand currently at position g trades places with position g+1
            images.swap(g, g + 1);
        }
        // images[p] currently holds "which start-position ends at p";
        // invert so images[start] = end.
        let mut perm = vec![0usize; self.strands];
        for (end, &start) in images.iter().enumerate() {
            perm[start] = end;
        }
        Permutation { images: perm }
    }

    /// Number of link components of the Markov closure.
    pub fn closure_components(&self) -> usize {
        self.permutation().cycle_count()
    }

    /// Sum of letter signs.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&m| m.signum()).sum()
    }
}

impl fmt::Display for BraidWord {
    /// Sequence form, e.g. `(1,-2,1,-2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// A bijection on `{0, ..., n-1}` (spoken of 1-based in reports).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::InvalidArgument("not a bijection".into()));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.images.len(), other.images.len());
        Permutation { images: self.images.iter().map(|&v| other.images[v]).collect() }
    }

    /// Number of cycles, counting fixed points.
    pub fn cycle_count(&self) -> usize {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur];
            }
        }
        cycles
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(values: &[i64]) -> IntSeq {
        IntSeq::from_values(values.to_vec())
    }

    #[test]
    fn range_notation_examples() {
        // the three verbatim notation examples, plus the reversed-arrow one
        assert_eq!(range_seq(-5, -3, Dir::Asc), seq(&[-5, -4, -3]));
        assert_eq!(range_seq(-3, -5, Dir::Asc), IntSeq::new());
        assert_eq!(range_seq(-3, 5, Dir::Asc), IntSeq::new());
        assert_eq!(range_seq(-2, -1, Dir::Desc), IntSeq::new());
        assert_eq!(range_seq(-2, -4, Dir::Desc), seq(&[-2, -3, -4]));
        // zero endpoints never produce letters
        assert_eq!(range_seq(0, 3, Dir::Asc), IntSeq::new());
        assert_eq!(range_seq(-1, 0, Dir::Desc), IntSeq::new());
    }

    #[test]
    fn block_repeat_examples() {
        assert_eq!(
            block_repeat(2, 4, Dir::Asc, 3, Shift::Up),
            seq(&[2, 3, 4, 3, 4, 5, 4, 5, 6])
        );
        // second group crosses zero and is empty
        assert_eq!(block_repeat(-3, -1, Dir::Asc, 2, Shift::Up), seq(&[-3, -2, -1]));
        assert_eq!(block_repeat(7, 9, Dir::Asc, 0, Shift::Down), IntSeq::new());
        assert_eq!(block_repeat(2, 4, Dir::Asc, 2, Shift::Down), seq(&[2, 3, 4, 1, 2, 3]));
    }

    #[test]
    fn sign_scale_examples() {
        assert_eq!(sign_scale(-7, &seq(&[2, 3])).unwrap(), seq(&[-2, -3]));
        assert_eq!(sign_scale(3, &seq(&[-1, 4])).unwrap(), seq(&[-1, 4]));
        assert_eq!(
            sign_scale(-1, &range_seq(1, 2, Dir::Asc)).unwrap(),
            seq(&[-1, -2])
        );
        assert_eq!(sign_scale(0, &seq(&[1])), Err(Error::ZeroScale));
    }

    #[test]
    fn sigma_power_expands() {
        assert_eq!(sigma_power(3, 2), seq(&[3, 3]));
        assert_eq!(sigma_power(1, -3), seq(&[-1, -1, -1]));
        assert_eq!(sigma_power(2, 0), IntSeq::new());
    }

    #[test]
    fn word_construction() {
        let w = BraidWord::new(vec![1, 1, 1], 2).unwrap();
        assert_eq!(w.len(), 3);
        let e = BraidWord::new(vec![], 5).unwrap();
        assert!(e.is_empty());
        assert_eq!(
            BraidWord::new(vec![3], 3),
            Err(Error::LetterOutOfRange { letter: 3, strands: 3 })
        );
        assert_eq!(BraidWord::new(vec![], 0), Err(Error::NoStrands));
    }

    #[test]
    fn inverse_examples() {
        let w = BraidWord::new(vec![1, -2], 3).unwrap();
        assert_eq!(w.inverse().letters(), &[2, -1]);
        assert!(BraidWord::empty(4).inverse().is_empty());
        let v = BraidWord::new(vec![-3, -4], 5).unwrap();
        assert_eq!(v.inverse().inverse(), v);
    }

    #[test]
    fn free_reduce_examples() {
        let w = BraidWord::new(vec![1, 2, -2, -1], 3).unwrap();
        assert!(w.free_reduce().is_empty());
        let v = BraidWord::new(vec![1, -2, 1], 3).unwrap();
        assert_eq!(v.free_reduce(), v);
        let u = BraidWord::new(vec![3, -3, 3], 4).unwrap();
        assert_eq!(u.free_reduce().letters(), &[3]);
    }

    #[test]
    fn permutation_examples() {
        let w = BraidWord::new(vec![1, 1], 2).unwrap();
        assert!(w.permutation().is_identity());
        let v = BraidWord::new(vec![1, 2], 3).unwrap();
        let p = v.permutation();
        assert!(!p.is_identity());
        assert_eq!(p.cycle_count(), 1); // a 3-cycle
        assert!(BraidWord::empty(7).permutation().is_identity());
    }

    #[test]
    fn closure_component_examples() {
        assert_eq!(BraidWord::new(vec![1, 1, 1], 2).unwrap().closure_components(), 1);
        assert_eq!(BraidWord::new(vec![1, 1], 2).unwrap().closure_components(), 2);
        assert_eq!(BraidWord::empty(5).closure_components(), 5);
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(BraidWord::new(vec![1, 1, 1], 2).unwrap().writhe(), 3);
        assert_eq!(BraidWord::new(vec![1, -2], 3).unwrap().writhe(), 0);
        assert_eq!(BraidWord::empty(2).writhe(), 0);
    }

    #[test]
    fn display_is_seq_form() {
        let w = BraidWord::new(vec![1, -2, 1, -2], 3).unwrap();
        assert_eq!(w.to_string(), "(1,-2,1,-2)");
        assert_eq!(BraidWord::empty(2).to_string(), "()");
    }

    fn arb_word() -> impl Strategy<Value = BraidWord> {
        (2usize..7).prop_flat_map(|strands| {
            let letter = (1i64..strands as i64).prop_flat_map(|g| {
                prop_oneof![Just(g), Just(-g)]
            });
            proptest::collection::vec(letter, 0..20)
                .prop_map(move |letters| BraidWord::new(letters, strands).unwrap())
        })
    }

    proptest! {
        #[test]
        fn range_asc_length(i in -9i64..9, j in -9i64..9) {
            let r = range_seq(i, j, Dir::Asc);
            let nonempty = i <= j && ((i > 0 && j > 0) || (i < 0 && j < 0));
            prop_assert_eq!(!r.is_empty(), nonempty);
            if nonempty {
                prop_assert_eq!(r.len() as i64, j - i + 1);
            }
        }

        #[test]
        fn range_desc_length(i in -9i64..9, j in -9i64..9) {
            let r = range_seq(i, j, Dir::Desc);
            let nonempty = i >= j && ((i > 0 && j > 0) || (i < 0 && j < 0));
            prop_assert_eq!(!r.is_empty(), nonempty);
            if nonempty {
                prop_assert_eq!(r.len() as i64, i - j + 1);
            }
        }

        #[test]
        fn sign_scale_preserves_length(a in prop_oneof![-9i64..-1, 1i64..9],
                                       v in proptest::collection::vec(prop_oneof![-9i64..-1, 1i64..9], 0..12)) {
            let s = IntSeq::from_values(v);
            let scaled = sign_scale(a, &s).unwrap();
            prop_assert_eq!(scaled.len(), s.len());
            let twice = sign_scale(a, &scaled).unwrap();
            if a < 0 {
                prop_assert_eq!(twice, s);
            } else {
                prop_assert_eq!(twice, scaled);
            }
        }

        #[test]
        fn block_repeat_length(i in 1i64..9, len in 0i64..5, m in 0usize..5) {
            // groups that stay on one side of zero keep their length
            let j = i + len;
            let r = block_repeat(i, j, Dir::Asc, m, Shift::Up);
            prop_assert_eq!(r.len() as i64, m as i64 * (len + 1));
            let r = block_repeat(-i, -i - len, Dir::Desc, m, Shift::Down);
            prop_assert_eq!(r.len() as i64, m as i64 * (len + 1));
        }

        #[test]
        fn free_reduce_idempotent(w in arb_word()) {
            let r = w.free_reduce();
            prop_assert!(r.len() <= w.len());
            prop_assert_eq!(r.free_reduce(), r);
        }

        #[test]
        fn word_times_inverse_cancels(w in arb_word()) {
            prop_assert!(w.concat(&w.inverse()).free_reduce().is_empty());
        }

        #[test]
        fn permutation_is_morphism(u in arb_word(), v in arb_word()) {
            let s = u.strands().max(v.strands());
            let u = BraidWord::new(u.letters().to_vec(), s).unwrap();
            let v = BraidWord::new(v.letters().to_vec(), s).unwrap();
            let lhs = u.concat(&v).permutation();
            let rhs = u.permutation().then(&v.permutation());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn components_at_most_strands(w in arb_word()) {
            let c = w.closure_components();
            prop_assert!(c >= 1 && c <= w.strands());
        }
    }
}
