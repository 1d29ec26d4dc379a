//! Oriented link diagrams stored as signed combinatorial maps.
//!
//! A crossing lists four directed edge ids counterclockwise, starting with
//! the incoming under-strand (`p0`). The under-strand runs `p0 -> p2`; the
//! over-strand runs `p3 -> p1` on a positive crossing and `p1 -> p3` on a
//! negative one. Faces are orbits of darts, a dart being an edge together
//! with the side of it the face lies on.

mod canonical;
mod parse;

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;

pub use parse::{parse_diagram, DiagramJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    In,
    Out,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::In => Dir::Out,
            Dir::Out => Dir::In,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A position `slot` (0..4) at crossing `crossing`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotRef {
    pub crossing: usize,
    pub slot: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub sign: i8,
    pub slots: [usize; 4],
}

impl Crossing {
    pub fn new(sign: i8, slots: [usize; 4]) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Crossing { sign, slots }
    }

    /// Direction of the edge end sitting in slot `p`.
    pub fn dir(&self, p: usize) -> Dir {
        match (p % 4, self.sign > 0) {
            (0, _) => Dir::In,
            (2, _) => Dir::Out,
            (1, true) | (3, false) => Dir::Out,
            _ => Dir::In,
        }
    }

    pub fn dirs(&self) -> [Dir; 4] {
        [self.dir(0), self.dir(1), self.dir(2), self.dir(3)]
    }

    /// Builds a crossing from four counterclockwise entries `(edge, dir)`.
    /// `under` is the position (0 or 1) of the first entry of the
    /// under-strand; the under-strand occupies `under` and `under + 2`.
    pub fn from_ccw(ccw: [(usize, Dir); 4], under: usize) -> Crossing {
        let start = if ccw[under].1 == Dir::In { under } else { under + 2 };
        let rot: Vec<(usize, Dir)> = (0..4).map(|k| ccw[(start + k) % 4]).collect();
        debug_assert_eq!(rot[0].1, Dir::In);
        debug_assert_eq!(rot[2].1, Dir::Out);
        debug_assert_ne!(rot[1].1, rot[3].1);
        let sign = if rot[3].1 == Dir::In { 1 } else { -1 };
        Crossing::new(sign, [rot[0].0, rot[1].0, rot[2].0, rot[3].0])
    }

    /// Counterclockwise `(edge, dir)` entries, starting at `p0`.
    pub fn ccw(&self) -> [(usize, Dir); 4] {
        [0, 1, 2, 3].map(|p| (self.slots[p], self.dir(p)))
    }

    /// The same crossing with over and under exchanged.
    pub fn switched(&self) -> Crossing {
        Crossing::from_ccw(self.ccw(), 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: SlotRef,
    pub head: SlotRef,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OuterFace {
    pub edge: usize,
    pub side: Side,
}

/// An edge traversed so that the face of interest lies on `side` of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub side: Side,
}

impl Dart {
    pub fn new(edge: usize, side: Side) -> Self {
        Dart { edge, side }
    }

    fn index(self) -> usize {
        2 * self.edge + (self.side == Side::Right) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Boundary darts in traversal order. Empty for the regions created by
    /// crossing-free loops (and for the plane itself when there are no
    /// crossings).
    pub boundary: Vec<Dart>,
}

/// Face structure of the underlying 4-valent map.
#[derive(Debug, Clone)]
pub struct FaceMap {
    dart_face: Vec<usize>,
    pub faces: Vec<Face>,
}

impl FaceMap {
    pub fn face_of(&self, d: Dart) -> usize {
        self.dart_face[d.index()]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    free_loops: usize,
    outer_face: Option<OuterFace>,
    label_order: Vec<usize>,
}

impl LinkDiagram {
    /// Validates and assembles a diagram. `label_order[c]` is the 0-based
    /// rank of crossing `c` in the ordering used by differential signs.
    pub fn new(
        crossings: Vec<Crossing>,
        num_edges: usize,
        free_loops: usize,
        outer_face: Option<OuterFace>,
        label_order: Option<Vec<usize>>,
    ) -> Result<Self, DiagramError> {
        let n = crossings.len();
        if n == 0 && num_edges > 0 {
            return Err(DiagramError::MalformedInput(
                "edges without crossings".into(),
            ));
        }
        if num_edges != 2 * n {
            return Err(DiagramError::MalformedInput(format!(
                "{n} crossings need {} edges, got {num_edges}",
                2 * n
            )));
        }
        for (c, x) in crossings.iter().enumerate() {
            if x.sign != 1 && x.sign != -1 {
                return Err(DiagramError::MalformedInput(format!(
                    "crossing {c} has sign {}",
                    x.sign
                )));
            }
            if let Some(&e) = x.slots.iter().find(|&&e| e >= num_edges) {
                return Err(DiagramError::MalformedInput(format!(
                    "crossing {c} references edge {e} (only {num_edges} edges)"
                )));
            }
        }

        let mut tails: Vec<Option<SlotRef>> = vec![None; num_edges];
        let mut heads: Vec<Option<SlotRef>> = vec![None; num_edges];
        for (c, x) in crossings.iter().enumerate() {
            for p in 0..4 {
                let e = x.slots[p];
                let here = SlotRef { crossing: c, slot: p };
                let target = match x.dir(p) {
                    Dir::In => &mut heads[e],
                    Dir::Out => &mut tails[e],
                };
                if target.is_some() {
                    return Err(DiagramError::InconsistentOrientation {
                        edge: e,
                        detail: format!(
                            "used twice as {}",
                            if x.dir(p) == Dir::In { "head" } else { "tail" }
                        ),
                    });
                }
                *target = Some(here);
            }
        }
        let mut edges = Vec::with_capacity(num_edges);
        for e in 0..num_edges {
            match (tails[e], heads[e]) {
                (Some(tail), Some(head)) => edges.push(Edge { tail, head }),
                _ => return Err(DiagramError::DisconnectedEdge { edge: e }),
            }
        }

        let label_order = match label_order {
            Some(order) => {
                let mut seen = vec![false; n];
                if order.len() != n {
                    return Err(DiagramError::MalformedInput(format!(
                        "label_order has length {}, expected {n}",
                        order.len()
                    )));
                }
                for &l in &order {
                    if l >= n || seen[l] {
                        return Err(DiagramError::MalformedInput(
                            "label_order is not a permutation".into(),
                        ));
                    }
                    seen[l] = true;
                }
                order
            }
            None => (0..n).collect(),
        };

        let outer_face = if n == 0 {
            if outer_face.is_some() {
                return Err(DiagramError::MalformedInput(
                    "outer_face given for a diagram without edges".into(),
                ));
            }
            None
        } else {
            let of = outer_face.unwrap_or(OuterFace {
                edge: 0,
                side: Side::Left,
            });
            if of.edge >= num_edges {
                return Err(DiagramError::MalformedInput(format!(
                    "outer_face edge {} out of range",
                    of.edge
                )));
            }
            Some(of)
        };

        let d = LinkDiagram {
            crossings,
            edges,
            free_loops,
            outer_face,
            label_order,
        };
        d.check_connected()?;
        d.check_planar()?;
        Ok(d)
    }

    /// Like [`LinkDiagram::new`], but edge ids may be arbitrary; they are
    /// renumbered densely in increasing order.
    pub fn from_sparse(
        crossings: Vec<Crossing>,
        free_loops: usize,
        outer_face: Option<OuterFace>,
        label_order: Option<Vec<usize>>,
    ) -> Result<Self, DiagramError> {
        let mut ids: Vec<usize> = crossings.iter().flat_map(|x| x.slots).collect();
        ids.sort_unstable();
        ids.dedup();
        let remap = |e: usize| ids.binary_search(&e).ok();
        let crossings: Vec<Crossing> = crossings
            .iter()
            .map(|x| Crossing::new(x.sign, x.slots.map(|e| remap(e).unwrap())))
            .collect();
        let outer_face = match outer_face {
            Some(of) => Some(OuterFace {
                edge: remap(of.edge).ok_or_else(|| {
                    DiagramError::MalformedInput(format!(
                        "outer_face edge {} does not exist",
                        of.edge
                    ))
                })?,
                side: of.side,
            }),
            None => None,
        };
        LinkDiagram::new(crossings, ids.len(), free_loops, outer_face, label_order)
    }

    /// The crossing-free diagram of `loops` disjoint circles.
    pub fn unlink(loops: usize) -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            edges: Vec::new(),
            free_loops: loops,
            outer_face: None,
            label_order: Vec::new(),
        }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    fn check_connected(&self) -> Result<(), DiagramError> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for &e in &self.crossings[c].slots {
                for end in [self.edges[e].tail, self.edges[e].head] {
                    if !seen[end.crossing] {
                        seen[end.crossing] = true;
                        stack.push(end.crossing);
                    }
                }
            }
        }
        let missing = seen.iter().filter(|s| !**s).count();
        if missing > 0 {
            // count components properly for the message
            let mut comps = 1;
            let mut seen2 = seen.clone();
            for start in 0..n {
                if seen2[start] {
                    continue;
                }
                comps += 1;
                let mut stack = vec![start];
                seen2[start] = true;
                while let Some(c) = stack.pop() {
                    for &e in &self.crossings[c].slots {
                        for end in [self.edges[e].tail, self.edges[e].head] {
                            if !seen2[end.crossing] {
                                seen2[end.crossing] = true;
                                stack.push(end.crossing);
                            }
                        }
                    }
                }
            }
            return Err(DiagramError::Disconnected { components: comps });
        }
        Ok(())
    }

    fn check_planar(&self) -> Result<(), DiagramError> {
        let n = self.crossings.len() as i64;
        if n == 0 {
            return Ok(());
        }
        let f = self.face_map().faces.len() as i64 - self.free_loops as i64;
        let euler = n - self.edges.len() as i64 + f;
        if euler != 2 {
            return Err(DiagramError::NonPlanar { euler });
        }
        Ok(())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, c: usize) -> &Crossing {
        &self.crossings[c]
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn outer_face(&self) -> Option<OuterFace> {
        self.outer_face
    }

    pub fn label_order(&self) -> &[usize] {
        &self.label_order
    }

    /// 1-based label of crossing `c`.
    pub fn label(&self, c: usize) -> usize {
        self.label_order[c] + 1
    }

    /// Edge id sitting in `slot`.
    pub fn slot_edge(&self, s: SlotRef) -> usize {
        self.crossings[s.crossing].slots[s.slot]
    }

    pub fn with_label_order(&self, order: Vec<usize>) -> Result<Self, DiagramError> {
        LinkDiagram::new(
            self.crossings.clone(),
            self.edges.len(),
            self.free_loops,
            self.outer_face,
            Some(order),
        )
    }

    pub fn with_outer_face(&self, outer: OuterFace) -> Result<Self, DiagramError> {
        LinkDiagram::new(
            self.crossings.clone(),
            self.edges.len(),
            self.free_loops,
            Some(outer),
            Some(self.label_order.clone()),
        )
    }

    pub fn with_free_loops(&self, loops: usize) -> Self {
        LinkDiagram {
            free_loops: loops,
            ..self.clone()
        }
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|x| x.sign as i32).sum()
    }

    /// Exchanges over and under at every crossing. Edge ids, the outer face
    /// and the crossing labels are kept.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings: Vec<Crossing> = self.crossings.iter().map(Crossing::switched).collect();
        LinkDiagram::new(
            crossings,
            self.edges.len(),
            self.free_loops,
            self.outer_face,
            Some(self.label_order.clone()),
        )
        .expect("mirror of a valid diagram is valid")
    }

    /// Exchanges over and under at crossing `c` only.
    pub fn switch_crossing(&self, c: usize) -> LinkDiagram {
        let mut crossings = self.crossings.clone();
        crossings[c] = crossings[c].switched();
        LinkDiagram::new(
            crossings,
            self.edges.len(),
            self.free_loops,
            self.outer_face,
            Some(self.label_order.clone()),
        )
        .expect("switching a crossing keeps the diagram valid")
    }

    /// Number of link components, counting free loops.
    pub fn num_components(&self) -> usize {
        let mut seen = vec![false; self.edges.len()];
        let mut comps = 0;
        for start in 0..self.edges.len() {
            if seen[start] {
                continue;
            }
            comps += 1;
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                e = self.next_on_strand(e);
            }
        }
        comps + self.free_loops
    }

    /// The edge following `e` along its strand.
    pub fn next_on_strand(&self, e: usize) -> usize {
        let h = self.edges[e].head;
        self.crossings[h.crossing].slots[(h.slot + 2) % 4]
    }

    /// Slot at which dart `d` arrives when its face is kept on the left.
    fn arrival(&self, d: Dart) -> SlotRef {
        match d.side {
            Side::Left => self.edges[d.edge].head,
            Side::Right => self.edges[d.edge].tail,
        }
    }

    /// Dart leaving crossing slot `s` outward.
    fn leaving(&self, s: SlotRef) -> Dart {
        let e = self.slot_edge(s);
        if self.edges[e].tail == s {
            Dart::new(e, Side::Left)
        } else {
            Dart::new(e, Side::Right)
        }
    }

    /// Dart arriving at crossing slot `s`.
    fn arriving(&self, s: SlotRef) -> Dart {
        let e = self.slot_edge(s);
        if self.edges[e].head == s {
            Dart::new(e, Side::Left)
        } else {
            Dart::new(e, Side::Right)
        }
    }

    /// Next dart on the boundary of the face lying to the left of travel.
    pub fn next_dart(&self, d: Dart) -> Dart {
        let s = self.arrival(d);
        self.leaving(SlotRef {
            crossing: s.crossing,
            slot: (s.slot + 3) % 4,
        })
    }

    /// Dart whose face is the corner between slots `p` and `p + 1` of `c`.
    pub fn corner_dart(&self, c: usize, p: usize) -> Dart {
        self.arriving(SlotRef {
            crossing: c,
            slot: (p + 1) % 4,
        })
    }

    /// Faces of the 4-valent map followed by one empty-boundary region per
    /// free loop (plus the plane itself for crossing-free diagrams).
    pub fn face_map(&self) -> FaceMap {
        let ne = self.edges.len();
        let mut dart_face = vec![usize::MAX; 2 * ne];
        let mut faces = Vec::new();
        for start in 0..2 * ne {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let first = Dart::new(start / 2, if start % 2 == 0 { Side::Left } else { Side::Right });
            let mut boundary = Vec::new();
            let mut d = first;
            loop {
                dart_face[d.index()] = id;
                boundary.push(d);
                d = self.next_dart(d);
                if d == first {
                    break;
                }
            }
            faces.push(Face { boundary });
        }
        if self.crossings.is_empty() {
            faces.push(Face { boundary: Vec::new() });
        }
        for _ in 0..self.free_loops {
            faces.push(Face { boundary: Vec::new() });
        }
        FaceMap { dart_face, faces }
    }

    pub fn faces(&self) -> Vec<Face> {
        self.face_map().faces
    }

    /// Index (in [`LinkDiagram::face_map`]) of the unbounded face.
    pub fn outer_face_index(&self, fm: &FaceMap) -> usize {
        match self.outer_face {
            Some(of) => fm.face_of(Dart::new(of.edge, of.side)),
            None => 0,
        }
    }

    /// Reverses the orientation of every strand in the link component that
    /// contains edge `e`.
    pub fn reverse_component(&self, e: usize) -> LinkDiagram {
        let mut comp = vec![false; self.edges.len()];
        let mut cur = e;
        while !comp[cur] {
            comp[cur] = true;
            cur = self.next_on_strand(cur);
        }
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let ccw = x.ccw().map(|(g, dir)| (g, if comp[g] { dir.flip() } else { dir }));
                Crossing::from_ccw(ccw, 0)
            })
            .collect();
        // a reversed edge has its sides swapped
        let outer = self.outer_face.map(|of| OuterFace {
            edge: of.edge,
            side: if comp[of.edge] { of.side.flip() } else { of.side },
        });
        LinkDiagram::new(
            crossings,
            self.edges.len(),
            self.free_loops,
            outer,
            Some(self.label_order.clone()),
        )
        .expect("reversal preserves validity")
    }
}
