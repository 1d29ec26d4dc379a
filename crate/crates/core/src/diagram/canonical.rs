use std::collections::VecDeque;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use super::{Crossing, Dart, LinkDiagram, OuterFace};

impl LinkDiagram {
    /// Relabels edges and crossings by walking strands from the root edge.
    /// Crossing labels travel with their crossings.
    fn relabel_from(&self, root: Dart) -> (LinkDiagram, String) {
        let ne = self.num_edges();
        let n = self.num_crossings();
        let mut emap = vec![usize::MAX; ne];
        let mut cmap = vec![usize::MAX; n];
        let (mut next_e, mut next_c) = (0, 0);
        let mut queue = VecDeque::from([root.edge]);
        while let Some(start) = queue.pop_front() {
            let mut cur = start;
            while emap[cur] == usize::MAX {
                emap[cur] = next_e;
                next_e += 1;
                let h = self.edge(cur).head;
                let x = self.crossing(h.crossing);
                if cmap[h.crossing] == usize::MAX {
                    cmap[h.crossing] = next_c;
                    next_c += 1;
                    let other = if h.slot.is_multiple_of(2) {
                        if x.dir(1) == super::Dir::In { 1 } else { 3 }
                    } else {
                        0
                    };
                    queue.push_back(x.slots[other]);
                }
                cur = x.slots[(h.slot + 2) % 4];
            }
        }
        debug_assert_eq!(next_e, ne);
        let mut crossings = vec![Crossing::new(1, [0; 4]); n];
        let mut labels = vec![0; n];
        for c in 0..n {
            let x = self.crossing(c);
            crossings[cmap[c]] = Crossing::new(x.sign, x.slots.map(|e| emap[e]));
            labels[cmap[c]] = self.label_order()[c];
        }
        let outer = OuterFace {
            edge: emap[root.edge],
            side: root.side,
        };
        let mut key = format!("{n};{};{:?};", self.free_loops(), outer.side);
        for x in &crossings {
            let _ = write!(key, "{}:{},{},{},{};", x.sign, x.slots[0], x.slots[1], x.slots[2], x.slots[3]);
        }
        let d = LinkDiagram::new(crossings, ne, self.free_loops(), Some(outer), Some(labels))
            .expect("relabeling preserves validity");
        (d, key)
    }

    fn canonical_pair(&self) -> (LinkDiagram, String) {
        if self.num_crossings() == 0 {
            return (self.clone(), format!("0;{}", self.free_loops()));
        }
        let fm = self.face_map();
        let outer = self.outer_face_index(&fm);
        fm.faces[outer]
            .boundary
            .iter()
            .map(|&root| self.relabel_from(root))
            .min_by(|a, b| a.1.cmp(&b.1))
            .expect("outer face has a boundary")
    }

    /// Canonical relabeling: two diagrams related by an orientation
    /// preserving homeomorphism of the plane have equal canonical forms
    /// (up to crossing labels).
    pub fn canonical(&self) -> LinkDiagram {
        self.canonical_pair().0
    }

    pub fn canonical_key(&self) -> String {
        self.canonical_pair().1
    }

    /// Hex SHA-256 of the canonical key.
    pub fn canonical_hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_key().as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use crate::diagram::parse_diagram;

    #[test]
    fn canonical_is_idempotent_and_relabel_invariant() {
        let d = parse_diagram("X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]").unwrap();
        let c = d.canonical();
        assert_eq!(c.canonical(), c);
        let shifted = parse_diagram("X[3,1,4,6], X[5,3,6,2], X[1,5,2,4]").unwrap();
        assert_eq!(shifted.canonical_key(), d.canonical_key());
        assert_eq!(d.canonical_hash().len(), 64);
    }
}
