//! Seeded random diagrams: closures of random braids with random component
//! orientations and a random unbounded face.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Crossing, Dir, LinkDiagram, OuterFace, Side};
use crate::error::DiagramError;

/// A braid generator `σ_i` (or its inverse when `positive` is false),
/// crossing strand positions `i` and `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub i: usize,
    pub positive: bool,
}

/// Closure of a braid on `strands` strands, read bottom to top, with the
/// closing arcs passing to the right. Every position must be touched by
/// some generator and the word must connect all positions.
pub fn braid_closure(strands: usize, word: &[Generator]) -> Result<LinkDiagram, DiagramError> {
    if word.iter().any(|g| g.i + 1 >= strands) {
        return Err(DiagramError::MalformedInput("generator index out of range".into()));
    }
    let mut cur: Vec<usize> = (0..strands).collect();
    let mut next_id = strands;
    let mut crossings = Vec::with_capacity(word.len());
    for g in word {
        let (left_in, right_in) = (cur[g.i], cur[g.i + 1]);
        let (left_out, right_out) = (next_id, next_id + 1);
        next_id += 2;
        // rays counterclockwise from the east: left strand leaves at 45°,
        // right strand leaves at 135°, left enters at 225°, right at 315°
        let ccw = [
            (left_out, Dir::Out),
            (right_out, Dir::Out),
            (left_in, Dir::In),
            (right_in, Dir::In),
        ];
        // σ_i puts the left-to-right strand over
        let under = if g.positive { 1 } else { 0 };
        crossings.push(Crossing::from_ccw(ccw, under));
        cur[g.i] = right_out;
        cur[g.i + 1] = left_out;
    }
    // closing arcs identify each top edge with the bottom edge below it
    let mut alias: Vec<usize> = (0..next_id).collect();
    for (p, &top) in cur.iter().enumerate() {
        if top == p {
            return Err(DiagramError::Disconnected { components: 2 });
        }
        alias[top] = p;
    }
    for x in &mut crossings {
        x.slots = x.slots.map(|e| alias[e]);
    }
    let outer = OuterFace {
        edge: 0,
        side: Side::Left,
    };
    LinkDiagram::from_sparse(crossings, 0, Some(outer), None)
}

/// A random connected diagram with between 1 and `max_crossings` crossings.
pub fn random_diagram<R: Rng>(rng: &mut R, max_crossings: usize) -> LinkDiagram {
    assert!(max_crossings >= 1);
    let n = rng.gen_range(1..=max_crossings);
    let strands = rng.gen_range(2..=(n + 1).min(4));
    let mut gens: Vec<usize> = (0..strands - 1).collect();
    while gens.len() < n {
        gens.push(rng.gen_range(0..strands - 1));
    }
    gens.shuffle(rng);
    let word: Vec<Generator> = gens
        .into_iter()
        .map(|i| Generator {
            i,
            positive: rng.gen_bool(0.5),
        })
        .collect();
    let mut d = braid_closure(strands, &word).expect("word touches every position");
    let mut seen = vec![false; d.num_edges()];
    for e in 0..d.num_edges() {
        if seen[e] {
            continue;
        }
        let mut cur = e;
        while !seen[cur] {
            seen[cur] = true;
            cur = d.next_on_strand(cur);
        }
        if rng.gen_bool(0.5) {
            d = d.reverse_component(e);
        }
    }
    let outer = OuterFace {
        edge: rng.gen_range(0..d.num_edges()),
        side: if rng.gen_bool(0.5) { Side::Left } else { Side::Right },
    };
    d.with_outer_face(outer).expect("any dart bounds a face")
}

/// `count` random diagrams from a fixed seed.
pub fn corpus(seed: u64, count: usize, max_crossings: usize) -> Vec<LinkDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_diagram(&mut rng, max_crossings)).collect()
}

/// A uniformly random relabeling of the crossings.
pub fn random_label_order<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_closure() {
        let g = Generator { i: 0, positive: true };
        let d = braid_closure(2, &[g, g, g]).unwrap();
        assert_eq!(d.num_crossings(), 3);
        assert_eq!(d.writhe(), 3);
        assert_eq!(d.num_components(), 1);
        assert_eq!(d.faces().len(), 5);
    }

    #[test]
    fn hopf_closure() {
        let g = Generator { i: 0, positive: false };
        let d = braid_closure(2, &[g, g]).unwrap();
        assert_eq!(d.num_components(), 2);
        assert_eq!(d.writhe(), -2);
    }

    #[test]
    fn corpus_is_deterministic_and_valid() {
        let a = corpus(7, 30, 8);
        let b = corpus(7, 30, 8);
        assert_eq!(a, b);
        for d in &a {
            assert!(d.num_crossings() <= 8);
            assert_eq!(d.faces().len(), d.num_crossings() + 2);
            assert_eq!(d.mirror().mirror(), *d);
        }
    }
}
