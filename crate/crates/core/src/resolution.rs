//! Kauffman states: smoothing every crossing, tracing the resulting circles,
//! and recording the marked points each smoothing leaves behind.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::diagram::{Dart, FaceMap, LinkDiagram, Side, SlotRef};
use crate::error::{Error, Result};

/// Largest crossing count accepted by the state-sum routines unless a
/// caller passes its own cap.
pub const DEFAULT_CAP: usize = 20;

/// Hard limit from the `u32` smoothing masks.
const MASK_LIMIT: usize = 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Smoothing {
    A,
    AInv,
}

impl Smoothing {
    /// Slot paired with `p` by this smoothing.
    pub fn partner(self, p: usize) -> usize {
        match self {
            Smoothing::A => p ^ 1,
            Smoothing::AInv => 3 - p,
        }
    }

    pub fn flip(self) -> Smoothing {
        match self {
            Smoothing::A => Smoothing::AInv,
            Smoothing::AInv => Smoothing::A,
        }
    }
}

impl Serialize for Smoothing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Smoothing::A => "A",
            Smoothing::AInv => "A^-1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CircleType {
    D,
    H,
}

impl CircleType {
    /// `d = 1`, `h = 0`.
    pub fn parity(self) -> u8 {
        match self {
            CircleType::D => 1,
            CircleType::H => 0,
        }
    }

    pub fn from_parity(p: usize) -> CircleType {
        if p % 2 == 1 {
            CircleType::D
        } else {
            CircleType::H
        }
    }
}

impl Serialize for CircleType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            CircleType::D => "d",
            CircleType::H => "h",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateCircle {
    /// Smallest edge id on the circle; free loop `k` gets `num_edges + k`.
    pub id: usize,
    #[serde(skip)]
    pub edges: Vec<usize>,
    #[serde(rename = "breaks")]
    pub break_points: usize,
    #[serde(rename = "seiferts")]
    pub seifert_points: usize,
    #[serde(rename = "type")]
    pub circle_type: CircleType,
}

impl StateCircle {
    fn new(id: usize, edges: Vec<usize>, break_points: usize, seifert_points: usize) -> Self {
        debug_assert!(break_points.is_multiple_of(2));
        StateCircle {
            id,
            edges,
            break_points,
            seifert_points,
            circle_type: CircleType::from_parity(break_points / 2 + seifert_points),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KauffmanState {
    pub smoothing: Vec<Smoothing>,
    /// Sorted by id.
    pub circles: Vec<StateCircle>,
    pub sigma: i32,
    edge_circle: Vec<usize>,
}

impl KauffmanState {
    /// Index into `circles` of the circle through edge `e`.
    pub fn circle_of_edge(&self, e: usize) -> usize {
        self.edge_circle[e]
    }

    /// Bit `c` set when crossing `c` is `A^-1`-smoothed.
    pub fn mask(&self) -> u32 {
        mask_of(&self.smoothing)
    }

    pub fn d_count(&self) -> usize {
        self.circles.iter().filter(|c| c.circle_type == CircleType::D).count()
    }

    pub fn h_count(&self) -> usize {
        self.circles.len() - self.d_count()
    }
}

pub fn mask_of(smoothing: &[Smoothing]) -> u32 {
    smoothing
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == Smoothing::AInv)
        .fold(0, |m, (c, _)| m | 1 << c)
}

pub fn smoothing_of(mask: u32, n: usize) -> Vec<Smoothing> {
    (0..n)
        .map(|c| if mask >> c & 1 == 1 { Smoothing::AInv } else { Smoothing::A })
        .collect()
}

/// True when smoothing crossing `x` this way joins incoming to outgoing
/// slots, leaving Seifert points; otherwise it leaves break points.
pub fn respects_orientation(x: &crate::diagram::Crossing, s: Smoothing) -> bool {
    x.dir(0) != x.dir(s.partner(0))
}

/// Canonical encoding of an unordered rooted forest of planar circles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NestingForest(String);

pub const EMPTY_FOREST: &str = "∅";

impl NestingForest {
    pub fn empty() -> Self {
        NestingForest(EMPTY_FOREST.to_string())
    }

    /// Forest of `k` side-by-side childless circles.
    pub fn unnested(k: usize) -> Self {
        Self::from_trees(vec![wrap(Vec::new()); k])
    }

    fn from_trees(mut trees: Vec<String>) -> Self {
        if trees.is_empty() {
            return Self::empty();
        }
        trees.sort();
        NestingForest(trees.join(" "))
    }

    /// Parses and re-canonicalizes an encoding such as `"( ( ) ) ( )"`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s == EMPTY_FOREST || s.is_empty() {
            return Some(Self::empty());
        }
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        fn trees(toks: &[char], pos: &mut usize) -> Option<Vec<String>> {
            let mut out = Vec::new();
            while *pos < toks.len() && toks[*pos] == '(' {
                *pos += 1;
                let kids = trees(toks, pos)?;
                if toks.get(*pos) != Some(&')') {
                    return None;
                }
                *pos += 1;
                out.push(wrap(kids));
            }
            Some(out)
        }
        let mut pos = 0;
        let t = trees(&toks, &mut pos)?;
        (pos == toks.len()).then(|| Self::from_trees(t))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn circle_count(&self) -> usize {
        self.0.matches('(').count()
    }

    /// Adds one childless circle next to the existing roots.
    pub fn with_extra_root(&self) -> Self {
        let mut trees = self.root_trees();
        trees.push(wrap(Vec::new()));
        Self::from_trees(trees)
    }

    fn root_trees(&self) -> Vec<String> {
        if self.0 == EMPTY_FOREST {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut depth = 0;
        let mut start = 0;
        for (i, ch) in self.0.char_indices() {
            match ch {
                '(' => {
                    if depth == 0 {
                        start = i;
                    }
                    depth += 1;
                }
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        out.push(self.0[start..=i].to_string());
                    }
                }
                _ => {}
            }
        }
        out
    }
}

impl fmt::Display for NestingForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn wrap(mut children: Vec<String>) -> String {
    if children.is_empty() {
        "( )".to_string()
    } else {
        children.sort();
        format!("( {} )", children.join(" "))
    }
}

/// Per-diagram data reused across all states: the face structure and the
/// index of the unbounded face.
pub struct Resolver<'a> {
    diagram: &'a LinkDiagram,
    faces: FaceMap,
    outer: usize,
}

impl<'a> Resolver<'a> {
    pub fn new(diagram: &'a LinkDiagram) -> Self {
        let faces = diagram.face_map();
        let outer = diagram.outer_face_index(&faces);
        Resolver { diagram, faces, outer }
    }

    pub fn diagram(&self) -> &LinkDiagram {
        self.diagram
    }

    pub fn resolve(&self, smoothing: &[Smoothing]) -> Result<KauffmanState> {
        let d = self.diagram;
        let n = d.num_crossings();
        if smoothing.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: smoothing.len(),
            });
        }
        let ne = d.num_edges();
        let seifert: Vec<bool> = (0..n)
            .map(|c| respects_orientation(d.crossing(c), smoothing[c]))
            .collect();

        let mut edge_circle = vec![usize::MAX; ne];
        let mut raw = Vec::new();
        for start in 0..ne {
            if edge_circle[start] != usize::MAX {
                continue;
            }
            let idx = raw.len();
            let mut edges = Vec::new();
            let (mut breaks, mut seiferts) = (0, 0);
            let mut e = start;
            let mut exit: SlotRef = d.edge(e).head;
            loop {
                edge_circle[e] = idx;
                edges.push(e);
                let c = exit.crossing;
                if seifert[c] {
                    seiferts += 1;
                } else {
                    breaks += 1;
                }
                let q = SlotRef {
                    crossing: c,
                    slot: smoothing[c].partner(exit.slot),
                };
                let f = d.slot_edge(q);
                if f == start {
                    break;
                }
                let fe = d.edge(f);
                exit = if fe.tail == q { fe.head } else { fe.tail };
                e = f;
            }
            edges.sort_unstable();
            raw.push(StateCircle::new(edges[0], edges, breaks, seiferts));
        }
        // circles are discovered in increasing order of their smallest edge
        for k in 0..d.free_loops() {
            raw.push(StateCircle::new(ne + k, Vec::new(), 0, 0));
        }
        let sigma = smoothing
            .iter()
            .map(|s| if *s == Smoothing::A { 1 } else { -1 })
            .sum();
        Ok(KauffmanState {
            smoothing: smoothing.to_vec(),
            circles: raw,
            sigma,
            edge_circle,
        })
    }

    pub fn resolve_mask(&self, mask: u32) -> KauffmanState {
        self.resolve(&smoothing_of(mask, self.diagram.num_crossings()))
            .expect("mask has the right length")
    }

    /// Nesting forest of the h-circles of `s`.
    pub fn nesting_forest(&self, s: &KauffmanState) -> NestingForest {
        let d = self.diagram;
        let n = d.num_crossings();
        let nf = if n == 0 { 1 } else { self.faces.len() - d.free_loops() };
        // union-find over faces: the smoothing opens two opposite corners
        let mut parent: Vec<usize> = (0..nf).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for c in 0..n {
            let (a, b) = match s.smoothing[c] {
                Smoothing::A => (1, 3),
                Smoothing::AInv => (0, 2),
            };
            let fa = self.faces.face_of(d.corner_dart(c, a));
            let fb = self.faces.face_of(d.corner_dart(c, b));
            let (ra, rb) = (find(&mut parent, fa), find(&mut parent, fb));
            parent[ra] = rb;
        }
        let mut region_id = vec![usize::MAX; nf];
        let mut nregions = 0;
        for f in 0..nf {
            let r = find(&mut parent, f);
            if region_id[r] == usize::MAX {
                region_id[r] = nregions;
                nregions += 1;
            }
        }
        let region = |p: &mut Vec<usize>, f: usize| region_id[find(p, f)];
        let root = region(&mut parent, if n == 0 { 0 } else { self.outer });

        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nregions + d.free_loops()];
        for (ci, circ) in s.circles.iter().enumerate() {
            let (a, b) = if circ.edges.is_empty() {
                let k = circ.id - d.num_edges();
                (root, nregions + k)
            } else {
                let e = circ.edges[0];
                let fl = self.faces.face_of(Dart::new(e, Side::Left));
                let fr = self.faces.face_of(Dart::new(e, Side::Right));
                (region(&mut parent, fl), region(&mut parent, fr))
            };
            debug_assert_ne!(a, b);
            adj[a].push((ci, b));
            adj[b].push((ci, a));
        }

        fn encode(
            adj: &[Vec<(usize, usize)>],
            s: &KauffmanState,
            node: usize,
            via: usize,
        ) -> Vec<String> {
            let mut out = Vec::new();
            for &(ci, other) in &adj[node] {
                if ci == via {
                    continue;
                }
                let inner = encode(adj, s, other, ci);
                match s.circles[ci].circle_type {
                    CircleType::H => out.push(wrap(inner)),
                    CircleType::D => out.extend(inner),
                }
            }
            out
        }
        NestingForest::from_trees(encode(&adj, s, root, usize::MAX))
    }

    /// All `2^n` states in lexicographic smoothing order (`A < A^-1`,
    /// crossing 0 most significant).
    pub fn states(&self, cap: usize) -> Result<impl Iterator<Item = KauffmanState> + '_> {
        let n = self.diagram.num_crossings();
        check_cap(n, cap)?;
        Ok((0..1u64 << n).map(move |t| {
            let sm: Vec<Smoothing> = (0..n)
                .map(|c| {
                    if t >> (n - 1 - c) & 1 == 1 {
                        Smoothing::AInv
                    } else {
                        Smoothing::A
                    }
                })
                .collect();
            self.resolve(&sm).expect("length matches")
        }))
    }
}

/// Fails with `CapExceeded` when `n` crossings exceed `cap` or the state
/// enumeration limit.
pub fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap.min(MASK_LIMIT) {
        return Err(Error::CapExceeded { crossings: n, cap });
    }
    Ok(())
}

pub fn resolve(d: &LinkDiagram, smoothing: &[Smoothing]) -> Result<KauffmanState> {
    Resolver::new(d).resolve(smoothing)
}

pub fn nesting_forest(d: &LinkDiagram, s: &KauffmanState) -> NestingForest {
    Resolver::new(d).nesting_forest(s)
}

pub fn enumerate_states(d: &LinkDiagram, cap: usize) -> Result<Vec<KauffmanState>> {
    Ok(Resolver::new(d).states(cap)?.collect())
}

/// JSON debug dump of a state.
pub fn state_json(d: &LinkDiagram, s: &KauffmanState) -> serde_json::Value {
    serde_json::json!({
        "sigma": s.sigma,
        "circles": s.circles,
        "forest": nesting_forest(d, s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Crossing;

    fn kink() -> LinkDiagram {
        LinkDiagram::new(vec![Crossing::new(1, [1, 1, 0, 0])], 2, 0, None, None).unwrap()
    }

    #[test]
    fn unknot_state() {
        let u = LinkDiagram::unknot();
        let s = resolve(&u, &[]).unwrap();
        assert_eq!(s.circles.len(), 1);
        assert_eq!(s.circles[0].circle_type, CircleType::H);
        assert_eq!(nesting_forest(&u, &s).as_str(), "( )");
    }

    #[test]
    fn kink_a_state_has_two_d_circles() {
        let k = kink();
        let s = resolve(&k, &[Smoothing::A]).unwrap();
        assert_eq!(s.circles.len(), 2);
        for c in &s.circles {
            assert_eq!((c.break_points, c.seifert_points), (0, 1));
            assert_eq!(c.circle_type, CircleType::D);
        }
        assert_eq!(nesting_forest(&k, &s), NestingForest::empty());
    }

    #[test]
    fn kink_ainv_state_has_one_d_circle() {
        let k = kink();
        let s = resolve(&k, &[Smoothing::AInv]).unwrap();
        assert_eq!(s.circles.len(), 1);
        assert_eq!(s.circles[0].break_points, 2);
        assert_eq!(s.circles[0].circle_type, CircleType::D);
        assert_eq!(s.sigma, -1);
    }

    #[test]
    fn a_smoothing_of_positive_crossing_is_seifert() {
        let k = kink();
        assert!(respects_orientation(k.crossing(0), Smoothing::A));
        assert!(!respects_orientation(k.mirror().crossing(0), Smoothing::A));
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(
            resolve(&kink(), &[]),
            Err(Error::LengthMismatch { expected: 1, got: 0 })
        ));
    }

    #[test]
    fn cap_exceeded() {
        assert!(matches!(enumerate_states(&kink(), 0), Err(Error::CapExceeded { .. })));
        assert_eq!(enumerate_states(&LinkDiagram::unknot(), 0).unwrap().len(), 1);
    }

    #[test]
    fn forest_parse_is_canonical() {
        let f = NestingForest::parse("( ) ( ( ) )").unwrap();
        let g = NestingForest::parse("(( )) ()").unwrap();
        assert_eq!(f, g);
        assert_eq!(f.circle_count(), 3);
        assert_eq!(NestingForest::parse("∅").unwrap(), NestingForest::empty());
        assert_eq!(NestingForest::empty().with_extra_root().as_str(), "( )");
        assert!(NestingForest::parse("( ( )").is_none());
    }
}
