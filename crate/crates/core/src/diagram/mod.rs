//! Planar diagrams for pretzel links and braid closures.
//!
//! A diagram is a combinatorial map: each crossing owns four half-edge
//! slots stored in counterclockwise rotation order, an involution pairs
//! slots into edges, and crossing-free components are carried as free
//! loops. The over-strand always occupies the slot diagonal `(0, 2)`, and
//! slot 0 is chosen so that the bracket A-smoothing joins slots `(0, 1)`
//! and `(2, 3)`.
//!
//! Plane structure beyond the sphere: every connected piece records which
//! face of an earlier piece contains it, and the piece holding the
//! unbounded region records the dart whose left face is that region. Faces
//! are traced with `next(d) = cw_next(partner(d))`, which keeps each face
//! on the left of its darts.

mod seifert;

pub use seifert::{Orientation, Scar, SeifertDecomposition, Sense};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::pretzel::Pretzel;

/// Where a connected piece of the diagram sits in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Container {
    /// Directly in the unbounded region.
    Outer,
    /// Inside the face to the left of this dart (a dart of an earlier
    /// piece; never that piece's own outer face).
    InsideFace { dart: u32 },
    /// Inside the disk bounded by an earlier free loop.
    InsideLoop { index: usize },
}

/// One connected piece: either a crossing subdiagram or a bare circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Piece {
    Core {
        /// Any slot of the piece, identifying its crossing component.
        root_slot: u32,
        /// Dart whose left face is the face of this piece adjacent to its
        /// container (the piece's own outer face).
        outer_dart: u32,
        container: Container,
    },
    Loop {
        container: Container,
    },
}

impl Piece {
    pub fn container(&self) -> Container {
        match self {
            Piece::Core { container, .. } | Piece::Loop { container } => *container,
        }
    }
}

/// An unoriented link diagram with designated plane placement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    n_crossings: usize,
    /// Slot involution; `partner[s]` is the other end of slot `s`'s edge.
    partner: Vec<u32>,
    pieces: Vec<Piece>,
    orientation: Option<Orientation>,
}

impl PlanarDiagram {
    pub fn crossing_count(&self) -> usize {
        self.n_crossings
    }

    pub fn slot_count(&self) -> usize {
        4 * self.n_crossings
    }

    pub fn free_loop_count(&self) -> usize {
        self.pieces.iter().filter(|p| matches!(p, Piece::Loop { .. })).count()
    }

    pub fn partner(&self, slot: u32) -> u32 {
        self.partner[slot as usize]
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn orientation(&self) -> Option<&Orientation> {
        self.orientation.as_ref()
    }

    pub fn set_orientation(&mut self, orientation: Option<Orientation>) {
        self.orientation = orientation;
    }

    /// Edge list as sorted slot pairs `(low, high)`.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(2 * self.n_crossings);
        for s in 0..self.slot_count() as u32 {
            let t = self.partner(s);
            if s < t {
                out.push((s, t));
            }
        }
        out
    }

    /// The other slot of the strand passing through `slot`'s crossing.
    pub fn pass_partner(slot: u32) -> u32 {
        (slot & !3) + ((slot + 2) & 3)
    }

    /// The A-smoothing of crossing `t` joins these two slot pairs.
    pub fn a_smoothing(t: usize) -> [(u32, u32); 2] {
        let b = 4 * t as u32;
        [(b, b + 1), (b + 2, b + 3)]
    }

    /// The B-smoothing of crossing `t`.
    pub fn b_smoothing(t: usize) -> [(u32, u32); 2] {
        let b = 4 * t as u32;
        [(b + 1, b + 2), (b + 3, b)]
    }

    /// Number of link components: strands traced straight through every
    /// crossing, plus the free loops.
    pub fn components(&self) -> usize {
        let n = self.slot_count();
        if n == 0 {
            return self.free_loop_count();
        }
        let mut dsu = Dsu::new(n);
        for s in 0..n as u32 {
            dsu.union(s as usize, Self::pass_partner(s) as usize);
            dsu.union(s as usize, self.partner(s) as usize);
        }
        dsu.class_count() + self.free_loop_count()
    }

    /// Face-trace successor: the next dart of the face to the left of `d`.
    pub(crate) fn face_next(&self, d: u32) -> u32 {
        let t = self.partner(d);
        (t & !3) + ((t + 3) & 3)
    }

    /// Assigns a face id to every dart (dart = slot, traversed outward)
    /// and returns `(face_of, face_count)`.
    pub(crate) fn faces(&self) -> (Vec<u32>, usize) {
        let n = self.slot_count();
        let mut face_of = vec![u32::MAX; n];
        let mut count = 0u32;
        for start in 0..n as u32 {
            if face_of[start as usize] != u32::MAX {
                continue;
            }
            let mut d = start;
            loop {
                face_of[d as usize] = count;
                d = self.face_next(d);
                if d == start {
                    break;
                }
            }
            count += 1;
        }
        (face_of, count as usize)
    }

    /// Canonical id (minimum dart) of the unbounded face, when the diagram
    /// has any crossings.
    pub fn outer_face_dart(&self) -> Option<u32> {
        let root = self.pieces.iter().find_map(|p| match p {
            Piece::Core { outer_dart, container: Container::Outer, .. } => Some(*outer_dart),
            _ => None,
        })?;
        let (face_of, _) = self.faces();
        let target = face_of[root as usize];
        (0..self.slot_count() as u32).find(|&d| face_of[d as usize] == target)
    }

    /// Crossing-component ids via union-find over slots; returns
    /// `(component_of_slot, component_count)`.
    pub(crate) fn crossing_components(&self) -> (Vec<usize>, usize) {
        let n = self.slot_count();
        let mut dsu = Dsu::new(n);
        for s in 0..n as u32 {
            dsu.union(s as usize, (s & !3) as usize);
            dsu.union(s as usize, self.partner(s) as usize);
        }
        dsu.compact()
    }

    /// Structural checks: the slot pairing is a fixed-point-free
    /// involution, every crossing component satisfies the sphere Euler
    /// formula `V - E + F = 2`, each component has exactly one core piece,
    /// and containers only reference earlier pieces.
    pub fn validate(&self) -> Result<()> {
        let n = self.slot_count();
        if self.partner.len() != n {
            return Err(Error::Internal("slot pairing has wrong length".into()));
        }
        for s in 0..n as u32 {
            let t = self.partner(s);
            if t == s || t as usize >= n || self.partner(t) != s {
                return Err(Error::Internal(format!("bad slot pairing at {s}")));
            }
        }

        let (comp_of, comp_count) = self.crossing_components();
        let (face_of, face_count) = self.faces();
        let mut vertices = vec![0i64; comp_count];
        for t in 0..self.n_crossings {
            vertices[comp_of[4 * t]] += 1;
        }
        let mut faces = vec![0i64; comp_count];
        let mut face_owner = vec![usize::MAX; face_count];
        for s in 0..n {
            face_owner[face_of[s] as usize] = comp_of[s];
        }
        for &c in &face_owner {
            faces[c] += 1;
        }
        for c in 0..comp_count {
            let v = vertices[c];
            let e = 2 * v;
            if v - e + faces[c] != 2 {
                return Err(Error::Internal(format!(
                    "Euler check failed on component {c}: V={v} E={e} F={}",
                    faces[c]
                )));
            }
        }

        let mut core_of_comp = vec![false; comp_count];
        for (i, piece) in self.pieces.iter().enumerate() {
            match piece {
                Piece::Core { root_slot, outer_dart, container } => {
                    let c = comp_of[*root_slot as usize];
                    if comp_of[*outer_dart as usize] != c {
                        return Err(Error::Internal(format!(
                            "piece {i}: outer dart lies outside its component"
                        )));
                    }
                    if core_of_comp[c] {
                        return Err(Error::Internal(format!("component {c} covered twice")));
                    }
                    core_of_comp[c] = true;
                    self.check_container(i, container, &comp_of)?;
                }
                Piece::Loop { container } => {
                    self.check_container(i, container, &comp_of)?;
                }
            }
        }
        if core_of_comp.iter().any(|&covered| !covered) {
            return Err(Error::Internal("crossing component without a core piece".into()));
        }

        if let Some(orientation) = &self.orientation {
            orientation.check(self)?;
        }
        Ok(())
    }

    fn check_container(&self, at: usize, container: &Container, comp_of: &[usize]) -> Result<()> {
        match container {
            Container::Outer => Ok(()),
            Container::InsideFace { dart } => {
                if *dart as usize >= self.slot_count() {
                    return Err(Error::Internal(format!(
                        "piece {at}: container dart out of range"
                    )));
                }
                let c = comp_of[*dart as usize];
                let owner = self.pieces[..at].iter().any(|p| {
                    matches!(p, Piece::Core { root_slot, .. } if comp_of[*root_slot as usize] == c)
                });
                if !owner {
                    return Err(Error::Internal(format!(
                        "piece {at}: container must reference an earlier piece"
                    )));
                }
                Ok(())
            }
            Container::InsideLoop { index } => {
                let earlier = self.pieces[..at]
                    .iter()
                    .filter(|p| matches!(p, Piece::Loop { .. }))
                    .count();
                if *index >= earlier {
                    return Err(Error::Internal(format!(
                        "piece {at}: container loop {index} is not an earlier piece"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Appends a bare circle in the given container. When the diagram is
    /// oriented the loop takes the given sense.
    pub fn add_free_loop(&mut self, container: Container, sense: Sense) {
        self.pieces.push(Piece::Loop { container });
        if let Some(orientation) = &mut self.orientation {
            orientation.loop_senses.push(sense);
        }
    }

    /// Assigns a deterministic orientation: within each link component the
    /// lowest slot is directed outward, and free loops turn
    /// counterclockwise.
    pub fn orient_canonical(&mut self) {
        let n = self.slot_count();
        let mut out: Vec<Option<bool>> = vec![None; n];
        for seed in 0..n as u32 {
            if out[seed as usize].is_some() {
                continue;
            }
            out[seed as usize] = Some(true);
            let mut stack = vec![seed];
            while let Some(s) = stack.pop() {
                let v = out[s as usize].unwrap();
                for t in [Self::pass_partner(s), self.partner(s)] {
                    if out[t as usize].is_none() {
                        out[t as usize] = Some(!v);
                        stack.push(t);
                    }
                }
            }
        }
        let flows = (0..self.n_crossings)
            .map(|t| (out[4 * t + 2].unwrap(), out[4 * t + 3].unwrap()))
            .collect();
        let loop_senses = vec![Sense::Ccw; self.free_loop_count()];
        self.orientation = Some(Orientation { flows, loop_senses });
    }

    /// Oriented Seifert smoothing, senses, nesting and scars.
    pub fn seifert(&self) -> Result<SeifertDecomposition> {
        seifert::decompose(self)
    }

    /// Number of incompatible pairs of oriented Seifert circles; zero
    /// exactly on braid-form diagrams.
    pub fn complexity(&self) -> Result<usize> {
        Ok(self.seifert()?.complexity())
    }
}

/// Standard pretzel diagram: `n` vertical columns of `|a_i|` stacked
/// crossings, adjacent columns joined by short arcs, and the outer closure
/// arcs wrapping the first column's left side over (and under) to the last
/// column's right side.
///
/// Handedness convention: a positive entry's crossings are encoded with
/// slot 0 at the upper-left corner, which makes the bracket of the
/// pretzel diagram match the bracket of the synthesized braid closure
/// (pinned by the chiral case P(1,1,1)). The mirror convention is the
/// only other globally consistent choice; nothing inside the library can
/// observe which of the two is "really" positive.
pub fn pretzel_pd(p: &Pretzel) -> PlanarDiagram {
    // geometric corner -> slot offset, per crossing sign:
    // positive: NW=0, SW=1, SE=2, NE=3 ; negative: NE=0, NW=1, SW=2, SE=3
    const POS: [u32; 4] = [0, 3, 1, 2]; // indexed by [NW, NE, SW, SE]
    const NEG: [u32; 4] = [1, 0, 2, 3];
    const NW: usize = 0;
    const NE: usize = 1;
    const SW: usize = 2;
    const SE: usize = 3;

    let total: usize = p.crossing_total();
    let mut partner = vec![u32::MAX; 4 * total];
    fn pair(partner: &mut [u32], a: u32, b: u32) {
        partner[a as usize] = b;
        partner[b as usize] = a;
    }

    let n = p.len();
    let heights: Vec<usize> = p.entries().iter().map(|&a| a.unsigned_abs() as usize).collect();
    let positive: Vec<bool> = p.entries().iter().map(|&a| a > 0).collect();
    let base: Vec<usize> = {
        let mut acc = 0;
        heights
            .iter()
            .map(|&h| {
                let b = acc;
                acc += h;
                b
            })
            .collect()
    };
    let corner = |col: usize, row: usize, which: usize| -> u32 {
        let map = if positive[col] { POS } else { NEG };
        4 * (base[col] + row) as u32 + map[which]
    };

    for col in 0..n {
        for row in 0..heights[col] - 1 {
            pair(&mut partner, corner(col, row, SW), corner(col, row + 1, NW));
            pair(&mut partner, corner(col, row, SE), corner(col, row + 1, NE));
        }
    }
    let top_left = |col: usize| corner(col, 0, NW);
    let top_right = |col: usize| corner(col, 0, NE);
    let bot_left = |col: usize| corner(col, heights[col] - 1, SW);
    let bot_right = |col: usize| corner(col, heights[col] - 1, SE);
    for col in 0..n - 1 {
        pair(&mut partner, top_right(col), top_left(col + 1));
        pair(&mut partner, bot_right(col), bot_left(col + 1));
    }
    pair(&mut partner, top_left(0), top_right(n - 1));
    pair(&mut partner, bot_left(0), bot_right(n - 1));

    let pd = PlanarDiagram {
        n_crossings: total,
        partner,
        pieces: vec![Piece::Core {
            root_slot: 0,
            // heading up and over from the first column's top-left end,
            // the unbounded region is on the left
            outer_dart: top_left(0),
            container: Container::Outer,
        }],
        orientation: None,
    };
    debug_assert!(pd.validate().is_ok(), "{:?}", pd.validate());
    pd
}

/// Markov closure of a braid word: letters stacked top to bottom, strand
/// `i` of each letter crossing per the letter sign, closure arcs joining
/// each strand's bottom back to its top around the right. Comes oriented
/// with every strand running downward; all Seifert circles are then the
/// strand circles. Strands untouched by any letter become free loops
/// nested in place.
pub fn closure_pd(w: &BraidWord) -> PlanarDiagram {
    let s = w.strands();
    let c = w.len();
    let mut partner = vec![u32::MAX; 4 * c];
    fn pair(partner: &mut [u32], a: u32, b: u32) {
        partner[a as usize] = b;
        partner[b as usize] = a;
    }

    let mut top_slot: Vec<Option<u32>> = vec![None; s];
    let mut open: Vec<Option<u32>> = vec![None; s];
    let mut flows = Vec::with_capacity(c);
    let mut first_crossing_at: Vec<Option<usize>> = vec![None; s];

    for (t, &m) in w.letters().iter().enumerate() {
        let g = m.unsigned_abs() as usize; // 1-based generator
        let (l, r) = (g - 1, g);
        let base = 4 * t as u32;
        // positive: NW=0, SW=1, SE=2, NE=3 ; negative: NE=0, NW=1, SW=2, SE=3
        let (nw, sw, se, ne) = if m > 0 {
            (base, base + 1, base + 2, base + 3)
        } else {
            (base + 1, base + 2, base + 3, base)
        };
        for (pos, slot) in [(l, nw), (r, ne)] {
            match open[pos] {
                Some(prev) => pair(&mut partner, prev, slot),
                None => top_slot[pos] = Some(slot),
            }
        }
        open[l] = Some(sw);
        open[r] = Some(se);
        for pos in [l, r] {
            if first_crossing_at[pos].is_none() {
                first_crossing_at[pos] = Some(t);
            }
        }
        // downward flow: the over pass runs 0 -> 2 either way; the under
        // pass runs 3 -> 1 for positive letters, 1 -> 3 for negative ones
        flows.push((true, m < 0));
    }

    let bottom_slot = open.clone();
    for pos in 0..s {
        if let Some(top) = top_slot[pos] {
            pair(&mut partner, bottom_slot[pos].unwrap(), top);
        }
    }

    // connected runs of strand positions, split where a generator is unused
    let mut used = vec![false; s + 1]; // used[g]: generator g joins pos g-1, g
    for &m in w.letters() {
        used[m.unsigned_abs() as usize] = true;
    }
    let mut pieces = Vec::new();
    let mut container = Container::Outer;
    let mut lo = 0usize;
    let mut loops = 0usize;
    while lo < s {
        let mut hi = lo;
        while hi + 1 < s && used[hi + 1] {
            hi += 1;
        }
        if top_slot[lo].is_none() {
            pieces.push(Piece::Loop { container });
            container = Container::InsideLoop { index: loops };
            loops += 1;
        } else {
            let t0 = first_crossing_at[lo].unwrap();
            pieces.push(Piece::Core {
                root_slot: 4 * t0 as u32,
                outer_dart: top_slot[lo].unwrap(),
                container,
            });
            container = Container::InsideFace { dart: bottom_slot[hi].unwrap() };
        }
        lo = hi + 1;
    }

    let pd = PlanarDiagram {
        n_crossings: c,
        partner,
        pieces,
        orientation: Some(Orientation { flows, loop_senses: vec![Sense::Ccw; loops] }),
    };
    debug_assert!(pd.validate().is_ok(), "{:?}", pd.validate());
    pd
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn class_count(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&x| self.find(x) == x).count()
    }

    /// Returns `(class_of, class_count)` with classes renumbered from zero.
    fn compact(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for x in 0..n {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[x] = label[r];
        }
        (out, next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pretzel::synthesize;

    fn pretzel(entries: &[i64]) -> Pretzel {
        Pretzel::new(entries.to_vec()).unwrap()
    }

    fn word(letters: &[i64], strands: usize) -> BraidWord {
        BraidWord::new(letters.to_vec(), strands).unwrap()
    }

    #[test]
    fn pretzel_pd_structure() {
        let pd = pretzel_pd(&pretzel(&[1, 1, 1]));
        assert_eq!(pd.crossing_count(), 3);
        pd.validate().unwrap();

        let pd = pretzel_pd(&pretzel(&[2, -3]));
        assert_eq!(pd.crossing_count(), 5);
        pd.validate().unwrap();

        let pd = pretzel_pd(&pretzel(&[9, 5, 7, 11, 13]));
        assert_eq!(pd.crossing_count(), 45);
        pd.validate().unwrap();

        let pd = pretzel_pd(&pretzel(&[4]));
        assert_eq!(pd.crossing_count(), 4);
        pd.validate().unwrap();
    }

    #[test]
    fn pretzel_component_counts() {
        assert_eq!(pretzel_pd(&pretzel(&[2, 2])).components(), 2);
        assert_eq!(pretzel_pd(&pretzel(&[1, 1, 1, 1])).components(), 2);
        assert_eq!(pretzel_pd(&pretzel(&[1, 2, 3])).components(), 1);
        assert_eq!(pretzel_pd(&pretzel(&[5])).components(), 1);
        assert_eq!(pretzel_pd(&pretzel(&[2])).components(), 1);
        assert_eq!(pretzel_pd(&pretzel(&[2, 4, 6])).components(), 3);
    }

    #[test]
    fn closure_pd_structure() {
        let pd = closure_pd(&word(&[1, 1, 1], 2));
        assert_eq!(pd.crossing_count(), 3);
        assert_eq!(pd.components(), 1);
        pd.validate().unwrap();

        let pd = closure_pd(&BraidWord::empty(3));
        assert_eq!(pd.crossing_count(), 0);
        assert_eq!(pd.free_loop_count(), 3);
        assert_eq!(pd.components(), 3);
        pd.validate().unwrap();

        // bare strands on both sides of the used generator
        let pd = closure_pd(&word(&[2], 4));
        assert_eq!(pd.free_loop_count(), 2);
        assert_eq!(pd.components(), 3);
        pd.validate().unwrap();
    }

    #[test]
    fn closure_matches_permutation_components() {
        for (letters, strands) in [
            (vec![1i64, 1, 1], 2),
            (vec![1, 2, 1, -2], 3),
            (vec![-1, -1], 2),
            (vec![1, 3], 4),
            (vec![2, 2, 1], 4),
            (vec![], 5),
        ] {
            let w = BraidWord::new(letters, strands).unwrap();
            assert_eq!(closure_pd(&w).components(), w.closure_components(), "{w}");
        }
    }

    #[test]
    fn pretzel_and_closure_components_agree() {
        for entries in [
            vec![1i64, 2, 1],
            vec![2, 2],
            vec![1, 1, 1, 1],
            vec![3, 3, 3],
            vec![2, 1, 1],
            vec![1, 2, 3, 4],
            vec![-2, 3, -4, 5, 1],
        ] {
            let p = pretzel(&entries);
            let s = synthesize(&p).unwrap();
            assert_eq!(
                pretzel_pd(&p).components(),
                closure_pd(&s.word).components(),
                "{p}"
            );
        }
    }

    #[test]
    fn component_counts_agree_exhaustively_up_to_three_entries() {
        let values = [-3i64, -2, -1, 1, 2, 3];
        let mut check = |entries: Vec<i64>| {
            let p = pretzel(&entries);
            let s = synthesize(&p).unwrap();
            let via_pd = pretzel_pd(&p).components();
            assert_eq!(via_pd, closure_pd(&s.word).components(), "{p}");
            assert_eq!(via_pd, s.word.closure_components(), "{p}");
        };
        for &a in &values {
            check(vec![a]);
            for &b in &values {
                check(vec![a, b]);
                for &c in &values {
                    check(vec![a, b, c]);
                }
            }
        }
    }

    #[test]
    fn synthesized_closures_validate() {
        for entries in [
            vec![1i64, 1, 1, -2],
            vec![9, 5, 7, 11, 13],
            vec![2, 1, 1],
            vec![4, 1, 1, 1, 1],
            vec![-2, 4, 3],
        ] {
            let p = pretzel(&entries);
            let s = synthesize(&p).unwrap();
            closure_pd(&s.word).validate().unwrap();
        }
    }
}
