//! Oriented Seifert smoothing: circles, rotational senses, the nesting
//! forest relative to the outer face, and the incompatible-pair count.
//!
//! Conventions fixed here and relied on by the tests:
//! - the left face of a dart is its `face_next` orbit (see `mod.rs`);
//! - a circle is counterclockwise exactly when its left face is its
//!   interior (the adjacent face farther from the outer face);
//! - two disjoint oriented circles are incompatible when they are nested
//!   with opposite senses or un-nested with equal senses (the gear rule).

use super::{Container, Piece, PlanarDiagram};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Rotational sense relative to the outer face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Cw,
    Ccw,
}

/// Per-edge flow assignment, stored per crossing: `flows[t] = (a, b)`
/// where `a` means the over pass runs slot `4t -> 4t+2` and `b` means the
/// under pass runs slot `4t+1 -> 4t+3`. Free loops carry their sense
/// directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub flows: Vec<(bool, bool)>,
    pub loop_senses: Vec<Sense>,
}

impl Orientation {
    /// True when the edge attached at `slot` carries flow away from the
    /// crossing there.
    pub fn outgoing(&self, slot: u32) -> bool {
        let (a_fwd, b_fwd) = self.flows[slot as usize / 4];
        match slot & 3 {
            0 => !a_fwd,
            2 => a_fwd,
            1 => !b_fwd,
            _ => b_fwd,
        }
    }

    /// Checks every edge runs out of one end and into the other.
    pub fn check(&self, pd: &PlanarDiagram) -> Result<()> {
        if self.flows.len() != pd.crossing_count()
            || self.loop_senses.len() != pd.free_loop_count()
        {
            return Err(Error::Internal("orientation has wrong shape".into()));
        }
        for s in 0..pd.slot_count() as u32 {
            let t = pd.partner(s);
            if self.outgoing(s) == self.outgoing(t) {
                return Err(Error::InconsistentOrientation(s.min(t), s.max(t)));
            }
        }
        Ok(())
    }
}

/// One crossing's trace in the smoothed picture: its sign and the two
/// circles it joins (which may coincide).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scar {
    pub sign: i8,
    pub circles: (usize, usize),
}

/// The smoothed diagram: core circles first (as sequences of flow darts),
/// then one entry per free loop (with an empty dart list).
#[derive(Debug, Clone)]
pub struct SeifertDecomposition {
    pub circles: Vec<Vec<u32>>,
    pub senses: Vec<Sense>,
    /// Containment forest: `parent[c]` is the circle directly enclosing
    /// `c`, if any.
    pub parent: Vec<Option<usize>>,
    pub scars: Vec<Scar>,
}

impl SeifertDecomposition {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    fn is_ancestor(&self, a: usize, mut c: usize) -> bool {
        while let Some(p) = self.parent[c] {
            if p == a {
                return true;
            }
            c = p;
        }
        false
    }

    /// True when one circle encloses the other.
    pub fn is_nested_pair(&self, i: usize, j: usize) -> bool {
        self.is_ancestor(i, j) || self.is_ancestor(j, i)
    }

    /// The number of incompatible pairs: nested with different senses, or
    /// un-nested with equal senses.
    pub fn complexity(&self) -> usize {
        let n = self.circles.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                let nested = self.is_nested_pair(i, j);
                let equal = self.senses[i] == self.senses[j];
                if nested != equal {
                    count += 1;
                }
            }
        }
        count
    }
}

pub(super) fn decompose(pd: &PlanarDiagram) -> Result<SeifertDecomposition> {
    let orientation = pd.orientation().ok_or(Error::MissingOrientation)?;
    orientation.check(pd)?;

    let n_slots = pd.slot_count();
    let n_crossings = pd.crossing_count();

    // Seifert smoothing: at each crossing the two in-slots are cyclically
    // adjacent, say k and k+1; the smoothing arcs join (k, k+3) and
    // (k+1, k+2), and the channel between them merges the corner regions
    // at k and k+2.
    let mut smooth = vec![u32::MAX; n_slots];
    let mut channel_k = vec![0u32; n_crossings];
    for t in 0..n_crossings {
        let (a_fwd, b_fwd) = orientation.flows[t];
        let in_a = if a_fwd { 0 } else { 2 };
        let in_b = if b_fwd { 1 } else { 3 };
        let k = if (in_a + 1) % 4 == in_b { in_a } else { in_b };
        debug_assert!((k + 1) % 4 == in_a || (k + 1) % 4 == in_b);
        channel_k[t] = k;
        let base = 4 * t as u32;
        let join = |smooth: &mut [u32], x: u32, y: u32| {
            smooth[(base + x) as usize] = base + y;
            smooth[(base + y) as usize] = base + x;
        };
        join(&mut smooth, k, (k + 3) % 4);
        join(&mut smooth, (k + 1) % 4, (k + 2) % 4);
    }

    // circles traced along the flow
    let mut circle_of = vec![usize::MAX; n_slots];
    let mut circles: Vec<Vec<u32>> = Vec::new();
    for s in 0..n_slots as u32 {
        if !orientation.outgoing(s) || circle_of[s as usize] != usize::MAX {
            continue;
        }
        let idx = circles.len();
        let mut darts = Vec::new();
        let mut cur = s;
        loop {
            circle_of[cur as usize] = idx;
            darts.push(cur);
            let arrive = pd.partner(cur);
            cur = smooth[arrive as usize];
            if cur == s {
                break;
            }
        }
        circles.push(darts);
    }
    let n_core = circles.len();

    // merged faces of the circle arrangement
    let (face_of, face_count) = pd.faces();
    let mut dsu = super::Dsu::new(face_count);
    for t in 0..n_crossings {
        let k = channel_k[t] as usize;
        let f1 = face_of[4 * t + k];
        let f2 = face_of[4 * t + (k + 2) % 4];
        dsu.union(f1 as usize, f2 as usize);
    }

    // each circle's adjacent merged faces
    let mut left = vec![0usize; n_core];
    let mut right = vec![0usize; n_core];
    for (idx, darts) in circles.iter().enumerate() {
        left[idx] = dsu.find(face_of[darts[0] as usize] as usize);
        right[idx] = dsu.find(face_of[pd.partner(darts[0]) as usize] as usize);
        debug_assert!(darts.iter().all(|&d| {
            dsu.find(face_of[d as usize] as usize) == left[idx]
                && dsu.find(face_of[pd.partner(d) as usize] as usize) == right[idx]
        }));
        if left[idx] == right[idx] {
            return Err(Error::Internal(format!("circle {idx} does not separate")));
        }
    }

    // group circles by crossing component, then walk each piece's face
    // tree from its outer face
    let (comp_of, comp_count) = pd.crossing_components();
    let mut comp_circles: Vec<Vec<usize>> = vec![Vec::new(); comp_count];
    for (idx, darts) in circles.iter().enumerate() {
        comp_circles[comp_of[darts[0] as usize]].push(idx);
    }

    let mut parent = vec![None; n_core + pd.free_loop_count()];
    let mut senses = vec![Sense::Ccw; n_core + pd.free_loop_count()];
    // merged face -> circle separating it from the outer face
    let mut face_parent_circle: HashMap<usize, usize> = HashMap::new();
    // merged face -> its piece's root face marker, for container checks
    let mut piece_root_face: Vec<Option<usize>> = vec![None; pd.pieces().len()];

    let resolve_container = |container: &Container,
                             face_parent_circle: &HashMap<usize, usize>,
                             piece_root_face: &[Option<usize>],
                             dsu: &mut super::Dsu|
     -> Result<Option<usize>> {
        match container {
            Container::Outer => Ok(None),
            Container::InsideFace { dart } => {
                let f = dsu.find(face_of[*dart as usize] as usize);
                if piece_root_face.iter().flatten().any(|&rf| rf == f) {
                    return Err(Error::Internal(
                        "container face is a piece's own outer face".into(),
                    ));
                }
                face_parent_circle.get(&f).copied().map(Some).ok_or_else(|| {
                    Error::Internal("container face not reached by an earlier piece".into())
                })
            }
            Container::InsideLoop { index } => Ok(Some(n_core + index)),
        }
    };

    let mut loop_no = 0usize;
    for (pi, piece) in pd.pieces().iter().enumerate() {
        match piece {
            Piece::Loop { container } => {
                let idx = n_core + loop_no;
                parent[idx] =
                    resolve_container(container, &face_parent_circle, &piece_root_face, &mut dsu)?;
                senses[idx] = orientation.loop_senses[loop_no];
                loop_no += 1;
            }
            Piece::Core { root_slot, outer_dart, container } => {
                let comp = comp_of[*root_slot as usize];
                let root_face = dsu.find(face_of[*outer_dart as usize] as usize);
                piece_root_face[pi] = Some(root_face);
                let above =
                    resolve_container(container, &face_parent_circle, &piece_root_face, &mut dsu)?;

                // breadth-first walk of this piece's face tree
                let mut adjacency: HashMap<usize, Vec<usize>> = HashMap::new();
                for &c in &comp_circles[comp] {
                    adjacency.entry(left[c]).or_default().push(c);
                    adjacency.entry(right[c]).or_default().push(c);
                }
                let mut depth: HashMap<usize, usize> = HashMap::new();
                depth.insert(root_face, 0);
                let mut queue = std::collections::VecDeque::from([root_face]);
                while let Some(f) = queue.pop_front() {
                    let d = depth[&f];
                    for &c in adjacency.get(&f).into_iter().flatten() {
                        let g = if left[c] == f { right[c] } else { left[c] };
                        if let std::collections::hash_map::Entry::Vacant(v) = depth.entry(g) {
                            v.insert(d + 1);
                            face_parent_circle.insert(g, c);
                            queue.push_back(g);
                        }
                    }
                }

                for &c in &comp_circles[comp] {
                    let (dl, dr) = (depth[&left[c]], depth[&right[c]]);
                    debug_assert_eq!(dl.abs_diff(dr), 1, "face tree depths must step by one");
                    let near = if dl < dr { left[c] } else { right[c] };
                    parent[c] = if near == root_face {
                        above
                    } else {
                        Some(face_parent_circle[&near])
                    };
                    // counterclockwise when the interior is on the left
                    senses[c] = if left[c] == near { Sense::Cw } else { Sense::Ccw };
                }
                // sphere count: one more face than circles in this piece
                debug_assert_eq!(depth.len(), comp_circles[comp].len() + 1);
            }
        }
    }

    // scars: crossing sign and the circles its smoothing arcs lie on
    let mut scars = Vec::with_capacity(n_crossings);
    for t in 0..n_crossings {
        let (a_fwd, b_fwd) = orientation.flows[t];
        let over_out = if a_fwd { 2 } else { 0 };
        let under_out = if b_fwd { 3 } else { 1 };
        let sign = if (over_out + 4 - under_out) % 4 == 1 { 1 } else { -1 };
        let ca = circle_of[4 * t + over_out];
        let cb = circle_of[4 * t + under_out];
        scars.push(Scar { sign, circles: (ca, cb) });
    }

    let mut all_circles = circles;
    all_circles.extend(std::iter::repeat_with(Vec::new).take(pd.free_loop_count()));
    Ok(SeifertDecomposition { circles: all_circles, senses, parent, scars })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::diagram::{closure_pd, pretzel_pd};
    use crate::pretzel::{synthesize, Pretzel};

    fn word(letters: &[i64], strands: usize) -> BraidWord {
        BraidWord::new(letters.to_vec(), strands).unwrap()
    }

    fn pretzel(entries: &[i64]) -> Pretzel {
        Pretzel::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn braid_closures_are_braid_form() {
        // circles = strands, chain-nested, coherent, complexity zero
        for (letters, strands) in [
            (vec![1i64], 2),
            (vec![1, 1, 1], 2),
            (vec![1, -2, 1, -2], 3),
            (vec![2], 4),
            (vec![1, 3, -2], 4),
            (vec![], 3),
        ] {
            let w = BraidWord::new(letters, strands).unwrap();
            let pd = closure_pd(&w);
            let dec = pd.seifert().unwrap();
            assert_eq!(dec.circle_count(), strands, "{w}");
            assert!(dec.senses.iter().all(|&s| s == dec.senses[0]), "{w}");
            // chain nesting: exactly one root, every other circle has a parent
            assert_eq!(dec.parent.iter().filter(|p| p.is_none()).count(), 1, "{w}");
            for i in 0..strands {
                for j in i + 1..strands {
                    assert!(dec.is_nested_pair(i, j), "{w}: circles {i},{j}");
                }
            }
            assert_eq!(dec.complexity(), 0, "{w}");
        }
    }

    #[test]
    fn trefoil_closure_circles() {
        let pd = closure_pd(&word(&[1, 1, 1], 2));
        let dec = pd.seifert().unwrap();
        assert_eq!(dec.circle_count(), 2);
        assert!(dec.is_nested_pair(0, 1));
        assert_eq!(dec.senses[0], dec.senses[1]);
        // all three scars join the two circles and share a sign
        for scar in &dec.scars {
            let (a, b) = scar.circles;
            assert_ne!(a, b);
            assert_eq!(scar.sign, dec.scars[0].sign);
        }
    }

    #[test]
    fn empty_word_closure() {
        let pd = closure_pd(&BraidWord::empty(3));
        let dec = pd.seifert().unwrap();
        assert_eq!(dec.circle_count(), 3);
        assert_eq!(dec.complexity(), 0);
    }

    #[test]
    fn missing_orientation_is_an_error() {
        let pd = pretzel_pd(&pretzel(&[1, 1, 1]));
        assert_eq!(pd.seifert().err(), Some(Error::MissingOrientation));
    }

    /// Hand-derived smoothing of the raw all-odd pretzel diagram.
    ///
    /// With the standard picture every column is anti-parallel, so column
    /// j smooths into |a_j| - 1 stacked circles with alternating senses,
    /// plus one circle along the top line and one along the bottom; all of
    /// them mutually un-nested. The top and bottom circles turn opposite
    /// ways, and each column's stack starts with the sense of the bottom
    /// circle. Same-sense pairs: the top circle with each column's second,
    /// fourth, ... circle and so on, giving
    /// 2 * C(1 + sum b_j, 2) incompatible pairs for odd entries.
    #[test]
    fn pretzel_complexity_values() {
        // P(1,1,1): two circles (top and bottom lines), opposite senses,
        // un-nested: compatible, complexity 0.
        let mut pd = pretzel_pd(&pretzel(&[1, 1, 1]));
        pd.orient_canonical();
        let dec = pd.seifert().unwrap();
        assert_eq!(dec.circle_count(), 2);
        assert!(!dec.is_nested_pair(0, 1));
        assert_ne!(dec.senses[0], dec.senses[1]);
        assert_eq!(dec.complexity(), 0);

        // P(3,3,3): 2 + 3*2 = 8 circles, senses split 4/4,
        // complexity 2 * C(4,2) = 12.
        let mut pd = pretzel_pd(&pretzel(&[3, 3, 3]));
        pd.orient_canonical();
        let dec = pd.seifert().unwrap();
        assert_eq!(dec.circle_count(), 8);
        let ccw = dec.senses.iter().filter(|&&s| s == Sense::Ccw).count();
        assert_eq!(ccw, 4);
        assert_eq!(dec.complexity(), 12);

        // P(9,5,7,11,13): 2 + 40 = 42 circles, 21 of each sense,
        // complexity 2 * C(21,2) = 420.
        let mut pd = pretzel_pd(&pretzel(&[9, 5, 7, 11, 13]));
        pd.orient_canonical();
        let dec = pd.seifert().unwrap();
        assert_eq!(dec.circle_count(), 42);
        assert_eq!(dec.complexity(), 420);
    }

    #[test]
    fn synthesized_words_close_to_braid_form() {
        for entries in [
            vec![1i64, 2, 1],
            vec![3, 3, 3],
            vec![1, 1, 1, -2],
            vec![2, 1, 1],
            vec![4, 1, 1, 1, 1],
            vec![2, -2],
            vec![5],
        ] {
            let p = pretzel(&entries);
            let s = synthesize(&p).unwrap();
            let pd = closure_pd(&s.word);
            assert_eq!(pd.complexity().unwrap(), 0, "{p}");
        }
    }

    #[test]
    fn scar_signs_follow_letter_signs() {
        let pd = closure_pd(&word(&[1, -2, 1, -2], 3));
        let dec = pd.seifert().unwrap();
        let signs: Vec<i8> = dec.scars.iter().map(|s| s.sign).collect();
        assert_eq!(signs, vec![1, -1, 1, -1]);
    }
}
