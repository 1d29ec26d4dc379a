//! Star-like Reidemeister moves as local surgeries on the combinatorial map,
//! and seeded random move sequences.
//!
//! Moves keep the id of every edge they do not delete, and when an edge is
//! split, the piece nearest its tail keeps the old id. The outer face
//! designation therefore usually survives unchanged. Where it cannot
//! (a designated edge disappears), another dart of the same face is chosen.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{Crossing, Dart, Dir, LinkDiagram, OuterFace, Side, SlotRef};
use crate::error::{DiagramError, Error, Result};

/// One Reidemeister I kink. The strand passes the new crossing twice; the
/// first passage is under when `first_under` holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Kink {
    pub sign: i8,
    pub first_under: bool,
}

impl Kink {
    pub const ALL: [Kink; 4] = [
        Kink { sign: 1, first_under: true },
        Kink { sign: -1, first_under: true },
        Kink { sign: 1, first_under: false },
        Kink { sign: -1, first_under: false },
    ];

    /// Slots of the kink crossing for incoming edge `a`, outgoing `b` and
    /// loop `l`.
    fn slots(self, a: usize, b: usize, l: usize) -> [usize; 4] {
        match (self.sign > 0, self.first_under) {
            (true, true) => [a, b, l, l],
            (false, true) => [a, l, l, b],
            (true, false) => [l, l, b, a],
            (false, false) => [l, a, b, l],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum MoveSite {
    /// Two kinks on one edge; `edge: None` turns a free loop of a
    /// crossing-free diagram into a two-kink circle.
    R1Pair { edge: Option<usize>, kinks: [Kink; 2] },
    /// Pushes a finger of `edge_a` across the face on `side_a` of it, over
    /// (`a_over`) or under `edge_b`, which bounds that face on `side_b`.
    R2Insert {
        edge_a: usize,
        side_a: Side,
        edge_b: usize,
        side_b: Side,
        a_over: bool,
    },
    /// Removes the bigon bounded by the two edges.
    R2Remove { edges: [usize; 2] },
    R3g { edges: [usize; 3] },
    R3h { edges: [usize; 3] },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Pair { .. } => MoveKind::R1Pair,
            MoveSite::R2Insert { .. } => MoveKind::R2Insert,
            MoveSite::R2Remove { .. } => MoveKind::R2Remove,
            MoveSite::R3g { .. } => MoveKind::R3g,
            MoveSite::R3h { .. } => MoveKind::R3h,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    R1Pair,
    R2Insert,
    R2Remove,
    R3g,
    R3h,
}

fn not_applicable(why: impl Into<String>) -> Error {
    Error::NotApplicable(why.into())
}

/// Mutable crossing list with fresh edge ids.
struct Surgery {
    crossings: Vec<Crossing>,
    labels: Vec<usize>,
    next_id: usize,
}

impl Surgery {
    fn new(d: &LinkDiagram) -> Self {
        Surgery {
            crossings: d.crossings().to_vec(),
            labels: d.label_order().to_vec(),
            next_id: d.num_edges(),
        }
    }

    fn fresh(&mut self) -> usize {
        self.next_id += 1;
        self.next_id - 1
    }

    fn set(&mut self, s: SlotRef, e: usize) {
        self.crossings[s.crossing].slots[s.slot] = e;
    }

    fn push(&mut self, x: Crossing) {
        self.labels.push(self.crossings.len());
        self.crossings.push(x);
    }

    /// Inserts a kink on the edge `a` whose head is `head`; returns the
    /// edge continuing from the kink to `head`.
    fn kink(&mut self, a: usize, head: SlotRef, k: Kink) -> usize {
        let (b, l) = (self.fresh(), self.fresh());
        self.set(head, b);
        self.push(Crossing::new(k.sign, k.slots(a, b, l)));
        b
    }

    fn finish(self, free_loops: usize, outer: Option<OuterFace>) -> Result<LinkDiagram> {
        let d = LinkDiagram::from_sparse(self.crossings, free_loops, outer, Some(self.labels))?;
        Ok(d.canonical())
    }
}

pub fn apply_move(d: &LinkDiagram, m: &MoveSite) -> Result<LinkDiagram> {
    match *m {
        MoveSite::R1Pair { edge, kinks } => r1_pair(d, edge, kinks),
        MoveSite::R2Insert {
            edge_a,
            side_a,
            edge_b,
            side_b,
            a_over,
        } => {
            if side_a == side_b {
                return Err(not_applicable(
                    "edges have opposite tangent directions along the face (IIb pattern)",
                ));
            }
            r2_insert(d, edge_a, side_a, edge_b, side_b, a_over)
        }
        MoveSite::R2Remove { edges } => r2_remove(d, edges),
        MoveSite::R3g { edges } | MoveSite::R3h { edges } => {
            let class = r3_class(d, edges)?;
            if class != m.kind() {
                return Err(not_applicable(format!("triangle is of class {class:?}")));
            }
            r3(d, edges)
        }
    }
}

fn check_edge(d: &LinkDiagram, e: usize) -> Result<()> {
    if e >= d.num_edges() {
        return Err(not_applicable(format!("edge {e} does not exist")));
    }
    Ok(())
}

fn r1_pair(d: &LinkDiagram, edge: Option<usize>, kinks: [Kink; 2]) -> Result<LinkDiagram> {
    if kinks.iter().any(|k| k.sign.abs() != 1) {
        return Err(not_applicable("kink sign must be ±1"));
    }
    let mut s = Surgery::new(d);
    match edge {
        None => {
            if d.num_crossings() > 0 || d.free_loops() == 0 {
                return Err(not_applicable("free-loop R1 pair needs a crossing-free diagram"));
            }
            let (e0, e1, l0, l1) = (0, 1, 2, 3);
            s.push(Crossing::new(kinks[0].sign, kinks[0].slots(e0, e1, l0)));
            s.push(Crossing::new(kinks[1].sign, kinks[1].slots(e1, e0, l1)));
            let outer = OuterFace {
                edge: e0,
                side: Side::Left,
            };
            s.finish(d.free_loops() - 1, Some(outer))
        }
        Some(e) => {
            check_edge(d, e)?;
            let head = d.edge(e).head;
            let b = s.kink(e, head, kinks[0]);
            s.kink(b, head, kinks[1]);
            s.finish(d.free_loops(), d.outer_face())
        }
    }
}

/// A finger move; `side_a == side_b` gives the IIb pattern. On a
/// crossing-free diagram the edge ids name free loops.
fn r2_insert(d: &LinkDiagram, e: usize, s_e: Side, f: usize, s_f: Side, e_over: bool) -> Result<LinkDiagram> {
    if e == f {
        return Err(not_applicable("R2 needs two distinct edges"));
    }
    if d.num_crossings() == 0 {
        if e.max(f) >= d.free_loops() {
            return Err(not_applicable("R2 on a crossing-free diagram needs two free loops"));
        }
        let mut s = Surgery::new(d);
        // each loop is cut into two edges at the new crossings
        let [p, q] = finger(s_e, s_f, e_over, [0, 2, 0], [1, 3, 1]);
        s.push(p);
        s.push(q);
        let outer = OuterFace { edge: 0, side: s_e };
        return s.finish(d.free_loops() - 2, Some(outer));
    }
    check_edge(d, e)?;
    check_edge(d, f)?;
    let fm = d.face_map();
    if fm.face_of(Dart::new(e, s_e)) != fm.face_of(Dart::new(f, s_f)) {
        return Err(not_applicable("edges do not bound a common face"));
    }
    let mut s = Surgery::new(d);
    let (he, hf) = (d.edge(e).head, d.edge(f).head);
    let (e2, e3, f2, f3) = (s.fresh(), s.fresh(), s.fresh(), s.fresh());
    s.set(he, e3);
    s.set(hf, f3);
    let [p, q] = finger(s_e, s_f, e_over, [e, e2, e3], [f, f2, f3]);
    s.push(p);
    s.push(q);
    s.finish(d.free_loops(), d.outer_face())
}

/// The two crossings of a finger move, given the three pieces of each strand
/// in order along it.
///
/// Local picture: `e` runs along y=0 with the face above it, `f` along y=1
/// with the face below it; `e` bumps up through `f` at x=1 (P) and x=2 (Q).
fn finger(s_e: Side, s_f: Side, e_over: bool, [e1, e2, e3]: [usize; 3], [f1, f2, f3]: [usize; 3]) -> [Crossing; 2] {
    let e_east = s_e == Side::Left;
    let f_east = s_f == Side::Right;
    // rays at 0°, 90°, 180°, 270°
    let mut p = [(0, Dir::In); 4];
    let mut q = [(0, Dir::In); 4];
    let (e_first, e_second) = if e_east { (&mut p, &mut q) } else { (&mut q, &mut p) };
    e_first[3] = (e1, Dir::In);
    e_first[1] = (e2, Dir::Out);
    e_second[1] = (e2, Dir::In);
    e_second[3] = (e3, Dir::Out);
    if f_east {
        p[2] = (f1, Dir::In);
        p[0] = (f2, Dir::Out);
        q[2] = (f2, Dir::In);
        q[0] = (f3, Dir::Out);
    } else {
        q[0] = (f1, Dir::In);
        q[2] = (f2, Dir::Out);
        p[0] = (f2, Dir::In);
        p[2] = (f3, Dir::Out);
    }
    let under = if e_over { 0 } else { 1 };
    [Crossing::from_ccw(p, under), Crossing::from_ccw(q, under)]
}

/// Deletes the given crossings, letting strands run straight through them.
/// Returns the surgery, the number of crossing-free loops created, and the
/// surviving id of every old edge.
fn remove_crossings(d: &LinkDiagram, removed: &[usize]) -> (Surgery, usize, Vec<Option<usize>>) {
    let gone = |c: usize| removed.contains(&c);
    let mut s = Surgery::new(d);
    let mut map: Vec<Option<usize>> = vec![None; d.num_edges()];
    for e in 0..d.num_edges() {
        if gone(d.edge(e).tail.crossing) {
            continue;
        }
        let mut cur = e;
        map[cur] = Some(e);
        while gone(d.edge(cur).head.crossing) {
            cur = d.next_on_strand(cur);
            map[cur] = Some(e);
        }
        s.set(d.edge(cur).head, e);
    }
    let mut loops = 0;
    for e in 0..d.num_edges() {
        if map[e].is_none() {
            loops += 1;
            let mut cur = e;
            while map[cur].is_none() {
                map[cur] = Some(usize::MAX);
                cur = d.next_on_strand(cur);
            }
        }
    }
    for m in &mut map {
        if *m == Some(usize::MAX) {
            *m = None;
        }
    }
    let keep: Vec<usize> = (0..d.num_crossings()).filter(|&c| !gone(c)).collect();
    let crossings = keep.iter().map(|&c| s.crossings[c].clone()).collect();
    let mut order: Vec<usize> = keep.iter().map(|&c| d.label_order()[c]).collect();
    let mut ranked = order.clone();
    ranked.sort_unstable();
    for o in &mut order {
        *o = ranked.binary_search(o).unwrap();
    }
    s.crossings = crossings;
    s.labels = order;
    (s, loops, map)
}

/// The bigon face bounded by darts of `g` and `h`, if any.
fn bigon_face(d: &LinkDiagram, g: usize, h: usize) -> Option<(usize, crate::diagram::FaceMap)> {
    let fm = d.face_map();
    for side in [Side::Left, Side::Right] {
        let f = fm.face_of(Dart::new(g, side));
        let b = &fm.faces[f].boundary;
        if b.len() == 2 && b.iter().any(|x| x.edge == h) {
            return Some((f, fm));
        }
    }
    None
}

fn r2_remove_check(d: &LinkDiagram, [g, h]: [usize; 2]) -> Result<usize> {
    check_edge(d, g)?;
    check_edge(d, h)?;
    if g == h {
        return Err(not_applicable("bigon needs two distinct edges"));
    }
    let (f, fm) = bigon_face(d, g, h).ok_or_else(|| not_applicable("edges do not bound a bigon"))?;
    if f == d.outer_face_index(&fm) {
        return Err(not_applicable("bigon is the outer face"));
    }
    let (eg, eh) = (d.edge(g), d.edge(h));
    if eg.tail.crossing != eh.tail.crossing || eg.head.crossing != eh.head.crossing {
        return Err(not_applicable("bigon edges are not co-oriented"));
    }
    if eg.tail.crossing == eg.head.crossing {
        return Err(not_applicable("bigon needs two distinct crossings"));
    }
    if eg.tail.slot % 2 != eg.head.slot % 2 {
        return Err(not_applicable("the same strand is not over at both crossings"));
    }
    Ok(f)
}

fn r2_remove(d: &LinkDiagram, edges: [usize; 2]) -> Result<LinkDiagram> {
    r2_remove_check(d, edges)?;
    let (x, y) = (d.edge(edges[0]).tail.crossing, d.edge(edges[0]).head.crossing);
    let (s, loops, mut map) = remove_crossings(d, &[x, y]);
    if s.crossings.is_empty() {
        if loops == 1 {
            return Ok(LinkDiagram::unlink(d.free_loops() + 1));
        }
        return Err(not_applicable("removal leaves a split diagram"));
    }
    if loops > 0 {
        return Err(not_applicable("removal leaves a crossing-free component"));
    }
    // inside the bigon the strands run swapped, so the sides of the bigon
    // edges do not carry over to the merged edges
    for e in edges {
        map[e] = None;
    }
    let outer = redesignate_outer(d, &map);
    match s.finish(d.free_loops(), outer) {
        Err(Error::Diagram(DiagramError::Disconnected { .. })) => {
            Err(not_applicable("removal disconnects the diagram"))
        }
        r => r,
    }
}

/// A dart of the old outer face whose edge survives, translated through
/// `map`.
fn redesignate_outer(d: &LinkDiagram, map: &[Option<usize>]) -> Option<OuterFace> {
    let of = d.outer_face()?;
    if let Some(e) = map[of.edge] {
        return Some(OuterFace { edge: e, side: of.side });
    }
    let fm = d.face_map();
    let outer = d.outer_face_index(&fm);
    fm.faces[outer]
        .boundary
        .iter()
        .find_map(|dt| map[dt.edge].map(|e| OuterFace { edge: e, side: dt.side }))
}

/// Checks the star-like R3 pattern and returns its class.
pub fn r3_class(d: &LinkDiagram, edges: [usize; 3]) -> Result<MoveKind> {
    for &e in &edges {
        check_edge(d, e)?;
    }
    let fm = d.face_map();
    let side = [Side::Left, Side::Right]
        .into_iter()
        .find(|&s| {
            let b = &fm.faces[fm.face_of(Dart::new(edges[0], s))].boundary;
            b.len() == 3 && edges.iter().all(|&e| b.iter().any(|x| x.edge == e))
        })
        .ok_or_else(|| not_applicable("edges do not bound a triangle"))?;
    let f = fm.face_of(Dart::new(edges[0], side));
    if f == d.outer_face_index(&fm) {
        return Err(not_applicable("triangle is the outer face"));
    }
    let b = &fm.faces[f].boundary;
    if b.iter().any(|x| x.side != side) {
        return Err(not_applicable("triangle is braid-like (edges not cyclically oriented)"));
    }
    let mut cs: Vec<usize> = edges.iter().map(|&e| d.edge(e).tail.crossing).collect();
    cs.sort_unstable();
    cs.dedup();
    if cs.len() != 3 {
        return Err(not_applicable("triangle needs three distinct crossings"));
    }
    // triangle edge t is over at a crossing when it sits in an odd slot; a
    // strand is on top when it is over at both of its crossings
    let top = edges
        .iter()
        .filter(|&&t| {
            let e = d.edge(t);
            e.tail.slot % 2 == 1 && e.head.slot % 2 == 1
        })
        .count();
    if top != 1 {
        return Err(not_applicable("strand heights are cyclic"));
    }
    let plus = cs.iter().filter(|&&c| d.crossing(c).sign > 0).count();
    Ok(if plus >= 2 { MoveKind::R3g } else { MoveKind::R3h })
}

fn r3(d: &LinkDiagram, edges: [usize; 3]) -> Result<LinkDiagram> {
    let mut s = Surgery::new(d);
    for &t in &edges {
        let et = d.edge(t);
        let (u, v) = (et.tail, et.head);
        let u_in = SlotRef {
            crossing: u.crossing,
            slot: (u.slot + 2) % 4,
        };
        let v_out = SlotRef {
            crossing: v.crossing,
            slot: (v.slot + 2) % 4,
        };
        let in_e = d.slot_edge(u_in);
        let out_e = d.slot_edge(v_out);
        // the strand now meets v first, then u
        s.set(v, in_e);
        s.set(v_out, t);
        s.set(u_in, t);
        s.set(u, out_e);
    }
    let map: Vec<Option<usize>> = (0..d.num_edges())
        .map(|e| (!edges.contains(&e)).then_some(e))
        .collect();
    let outer = redesignate_outer(d, &map);
    s.finish(d.free_loops(), outer)
}

/// Every applicable move site, in a deterministic order.
pub fn sites(d: &LinkDiagram) -> Vec<MoveSite> {
    let mut out = r1_sites(d);
    out.extend(r2_insert_sites(d));
    out.extend(r2_remove_sites(d));
    out.extend(r3_sites(d));
    out
}

pub fn r1_sites(d: &LinkDiagram) -> Vec<MoveSite> {
    let edges: Vec<Option<usize>> = if d.num_crossings() == 0 {
        if d.free_loops() > 0 {
            vec![None]
        } else {
            vec![]
        }
    } else {
        (0..d.num_edges()).map(Some).collect()
    };
    let mut out = Vec::new();
    for edge in edges {
        for a in Kink::ALL {
            for b in Kink::ALL {
                out.push(MoveSite::R1Pair { edge, kinks: [a, b] });
            }
        }
    }
    out
}

pub fn r2_insert_sites(d: &LinkDiagram) -> Vec<MoveSite> {
    let mut out = Vec::new();
    if d.num_crossings() == 0 {
        if d.free_loops() >= 2 {
            for a_over in [true, false] {
                out.push(MoveSite::R2Insert {
                    edge_a: 0,
                    side_a: Side::Left,
                    edge_b: 1,
                    side_b: Side::Right,
                    a_over,
                });
            }
        }
        return out;
    }
    for face in d.faces() {
        for &a in &face.boundary {
            for &b in &face.boundary {
                if a.edge == b.edge || a.side == b.side {
                    continue;
                }
                for a_over in [true, false] {
                    out.push(MoveSite::R2Insert {
                        edge_a: a.edge,
                        side_a: a.side,
                        edge_b: b.edge,
                        side_b: b.side,
                        a_over,
                    });
                }
            }
        }
    }
    out
}

pub fn r2_remove_sites(d: &LinkDiagram) -> Vec<MoveSite> {
    let mut out = Vec::new();
    for face in d.faces() {
        if face.boundary.len() != 2 {
            continue;
        }
        let mut edges = [face.boundary[0].edge, face.boundary[1].edge];
        edges.sort_unstable();
        let m = MoveSite::R2Remove { edges };
        if r2_remove_check(d, edges).is_ok() && apply_move(d, &m).is_ok() {
            out.push(m);
        }
    }
    out
}

pub fn r3_sites(d: &LinkDiagram) -> Vec<MoveSite> {
    let mut out = Vec::new();
    for face in d.faces() {
        if face.boundary.len() != 3 {
            continue;
        }
        let mut edges = [face.boundary[0].edge, face.boundary[1].edge, face.boundary[2].edge];
        edges.sort_unstable();
        match r3_class(d, edges) {
            Ok(MoveKind::R3g) => out.push(MoveSite::R3g { edges }),
            Ok(MoveKind::R3h) => out.push(MoveSite::R3h { edges }),
            _ => {}
        }
    }
    out
}

/// One step of a trajectory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub site: MoveSite,
    pub diagram: LinkDiagram,
}

/// A seeded random walk of star-like moves. Each step picks a move kind
/// uniformly among those with an applicable site, then a site uniformly.
///
/// Growth moves that would exceed `cap` are skipped, and R1 pairs are only
/// offered while four crossings of headroom remain. An R2 insertion always
/// leaves its bigon removable and an R3 move always leaves its inverse, so
/// the walk does not strand itself at the cap.
pub fn random_sequence(d: &LinkDiagram, steps: usize, seed: u64, cap: usize) -> Result<Vec<Step>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let n = cur.num_crossings();
        let mut by_kind: Vec<Vec<MoveSite>> = Vec::new();
        if n + 4 <= cap {
            by_kind.push(r1_sites(&cur));
        }
        if n + 2 <= cap {
            by_kind.push(r2_insert_sites(&cur));
        }
        by_kind.push(r2_remove_sites(&cur));
        let r3 = r3_sites(&cur);
        by_kind.push(r3.iter().copied().filter(|m| m.kind() == MoveKind::R3g).collect());
        by_kind.push(r3.into_iter().filter(|m| m.kind() == MoveKind::R3h).collect());
        by_kind.retain(|v| !v.is_empty());
        let Some(kind) = by_kind.choose(&mut rng) else {
            return Err(Error::CapExceeded {
                crossings: cur.num_crossings() + 2,
                cap,
            });
        };
        let site = kind[rng.gen_range(0..kind.len())];
        cur = apply_move(&cur, &site)?;
        out.push(Step {
            site,
            diagram: cur.clone(),
        });
    }
    Ok(out)
}

/// `[{"move": {...}, "diagram_hash": hex}, ...]`
pub fn trajectory_json(steps: &[Step]) -> serde_json::Value {
    serde_json::Value::Array(
        steps
            .iter()
            .map(|s| serde_json::json!({"move": s.site, "diagram_hash": s.diagram.canonical_hash()}))
            .collect(),
    )
}

/// Operations that are not star-like isotopies, for witness tests.
pub mod witness {
    use super::*;

    /// A single Reidemeister I kink on edge `e`.
    pub fn single_kink(d: &LinkDiagram, e: usize, k: Kink) -> Result<LinkDiagram> {
        check_edge(d, e)?;
        let mut s = Surgery::new(d);
        s.kink(e, d.edge(e).head, k);
        s.finish(d.free_loops(), d.outer_face())
    }

    /// An R2 finger move between edges with opposite tangent directions.
    pub fn r2_opposite(d: &LinkDiagram, e: usize, f: usize, side: Side, e_over: bool) -> Result<LinkDiagram> {
        r2_insert(d, e, side, f, side, e_over)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::v_st;

    fn unknot_with_pair() -> LinkDiagram {
        let m = MoveSite::R1Pair {
            edge: None,
            kinks: [Kink::ALL[0], Kink::ALL[1]],
        };
        apply_move(&LinkDiagram::unknot(), &m).unwrap()
    }

    #[test]
    fn r1_pair_on_unknot_keeps_v_st() {
        let u = LinkDiagram::unknot();
        for a in Kink::ALL {
            for b in Kink::ALL {
                let m = MoveSite::R1Pair { edge: None, kinks: [a, b] };
                let d = apply_move(&u, &m).unwrap();
                assert_eq!(d.num_crossings(), 2);
                assert_eq!(d.writhe(), (a.sign + b.sign) as i32);
                assert_eq!(v_st(&d, 12).unwrap(), v_st(&u, 12).unwrap(), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn r2_insert_then_remove_round_trips() {
        let d = unknot_with_pair();
        let before = v_st(&d, 12).unwrap();
        for m in r2_insert_sites(&d) {
            let e = apply_move(&d, &m).unwrap();
            assert_eq!(e.num_crossings(), 4);
            assert_eq!(v_st(&e, 12).unwrap(), before, "{m:?}");
            let back: Vec<LinkDiagram> = r2_remove_sites(&e)
                .into_iter()
                .map(|r| apply_move(&e, &r).unwrap())
                .collect();
            assert!(back.iter().any(|b| b.canonical_key() == d.canonical_key()), "{m:?}");
        }
    }

    #[test]
    fn iib_is_rejected() {
        let d = unknot_with_pair();
        let fm = d.face_map();
        let outer = d.outer_face_index(&fm);
        let b = &fm.faces[outer].boundary;
        let same: Vec<(Dart, Dart)> = b
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .filter(|(x, y)| x.edge != y.edge && x.side == y.side)
            .collect();
        let (x, y) = same[0];
        let m = MoveSite::R2Insert {
            edge_a: x.edge,
            side_a: x.side,
            edge_b: y.edge,
            side_b: y.side,
            a_over: true,
        };
        assert!(matches!(apply_move(&d, &m), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn random_sequence_is_deterministic() {
        let a = random_sequence(&LinkDiagram::unknot(), 6, 42, 8).unwrap();
        let b = random_sequence(&LinkDiagram::unknot(), 6, 42, 8).unwrap();
        assert_eq!(a, b);
        assert!(random_sequence(&LinkDiagram::unknot(), 0, 1, 8).unwrap().is_empty());
    }

    #[test]
    fn r2_on_two_free_loops() {
        let u = LinkDiagram::unlink(2);
        for m in r2_insert_sites(&u) {
            let d = apply_move(&u, &m).unwrap();
            assert_eq!((d.num_crossings(), d.free_loops(), d.writhe()), (2, 0, 0));
            assert_eq!(v_st(&d, 12).unwrap(), v_st(&u, 12).unwrap());
        }
    }

    #[test]
    fn r3_preserves_homology_and_mirror_swaps_class() {
        use crate::complex::Diff;
        use crate::homology::homology_table;
        let mut seen = [false; 2];
        for d in crate::random::corpus(3, 40, 4) {
            for step in random_sequence(&d, 6, 5, 8).unwrap() {
                let d = step.diagram;
                for m in r3_sites(&d) {
                    let e = apply_move(&d, &m).unwrap();
                    assert_eq!(
                        homology_table(&d, Diff::D, 12).unwrap(),
                        homology_table(&e, Diff::D, 12).unwrap()
                    );
                    let edges = match m {
                        MoveSite::R3g { edges } | MoveSite::R3h { edges } => edges,
                        _ => unreachable!(),
                    };
                    let swapped = match m.kind() {
                        MoveKind::R3g => MoveKind::R3h,
                        _ => MoveKind::R3g,
                    };
                    assert_eq!(r3_class(&d.mirror(), edges).unwrap(), swapped);
                    seen[(m.kind() == MoveKind::R3h) as usize] = true;
                }
            }
        }
        assert_eq!(seen, [true, true]);
    }

    #[test]
    fn witnesses_change_v_st() {
        let u = LinkDiagram::unknot();
        let d = unknot_with_pair();
        let kink = witness::single_kink(&d, 0, Kink::ALL[0]).unwrap();
        assert_ne!(v_st(&kink, 12).unwrap(), v_st(&d, 12).unwrap());
        assert_eq!(v_st(&d, 12).unwrap(), v_st(&u, 12).unwrap());
        let before = v_st(&d, 12).unwrap();
        let changed = d.faces().iter().any(|face| {
            face.boundary.iter().any(|a| {
                face.boundary.iter().any(|b| {
                    a.edge != b.edge
                        && a.side == b.side
                        && witness::r2_opposite(&d, a.edge, b.edge, a.side, true)
                            .map(|x| v_st(&x, 12).unwrap() != before)
                            .unwrap_or(false)
                })
            })
        });
        assert!(changed);
    }
}
