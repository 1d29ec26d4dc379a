//! Standard Khovanov homology on the same enhanced states, graded by
//! `(i, q)` with `q = j + k`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::complex::{Diff, Filtration, SliceKey, StateSpace};
use crate::diagram::LinkDiagram;
use crate::error::Result;
use crate::homology::{slice_table, Group, HomologyTable, Theory};

/// Nonzero groups indexed by `(i, q)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KhTable(pub BTreeMap<(i32, i32), Group>);

#[derive(Serialize)]
struct KhRow<'a> {
    i: i32,
    q: i32,
    rank: usize,
    torsion: &'a [u64],
}

impl KhTable {
    pub fn get(&self, i: i32, q: i32) -> Group {
        self.0.get(&(i, q)).cloned().unwrap_or_default()
    }

    pub fn rank(&self, i: i32, q: i32) -> usize {
        self.get(i, q).rank
    }

    pub fn total_rank(&self) -> usize {
        self.0.values().map(|g| g.rank).sum()
    }

    /// Reindexes by `i -> -i`.
    pub fn flipped(&self) -> KhTable {
        KhTable(self.0.iter().map(|(&(i, q), g)| ((-i, q), g.clone())).collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<KhRow> = self
            .0
            .iter()
            .map(|(&(i, q), g)| KhRow {
                i,
                q,
                rank: g.rank,
                torsion: &g.torsion,
            })
            .collect();
        serde_json::to_value(rows).expect("table serializes")
    }
}

impl fmt::Display for KhTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(i, q), g) in &self.0 {
            writeln!(f, "(i={i}, q={q}): {g}")?;
        }
        Ok(())
    }
}

pub fn kh_of(space: &StateSpace, which: Diff) -> KhTable {
    KhTable(
        slice_table(space, Filtration::Khovanov, Theory::Homology(which))
            .into_iter()
            .map(|((key, i), g)| match key {
                SliceKey::Q(q) => ((i, q), g),
                SliceKey::JK(..) => unreachable!("Khovanov slices are keyed by q"),
            })
            .collect(),
    )
}

/// Khovanov homology of the `d`-type differential (lowering `i`).
pub fn kh_table(d: &LinkDiagram, cap: usize) -> Result<KhTable> {
    Ok(kh_of(&StateSpace::new(d, cap)?, Diff::D))
}

/// True when, for every enhanced state, the star-like differential is the
/// `(j, k)`-preserving part of the Khovanov differential.
pub fn refinement_holds(space: &StateSpace, which: Diff) -> bool {
    space.enhanced().into_iter().all(|s| {
        let (star, kh) = match which {
            Diff::D => (
                space.differential_d(s, Filtration::StarLike),
                space.differential_d(s, Filtration::Khovanov),
            ),
            Diff::DPrime => (
                space.differential_dprime(s, Filtration::StarLike),
                space.differential_dprime(s, Filtration::Khovanov),
            ),
        };
        let g = space.gradings(s);
        let mut restricted = crate::complex::Combination::new();
        for (t, c) in kh.terms() {
            let h = space.gradings(t);
            if (h.j, h.k) == (g.j, g.k) {
                restricted.add(t, c);
            }
        }
        restricted == star
    })
}

/// `rank Kh_{i,q} <= Σ_{j+k=q} rank H_{i,j,k}` for every `(i, q)`.
pub fn rank_inequality_holds(kh: &KhTable, star: &HomologyTable) -> bool {
    let collapsed = crate::homology::collapse_grading(star);
    kh.0.iter()
        .all(|(&(i, q), g)| g.rank <= collapsed.get(&(i, q)).map_or(0, |h| h.rank))
}

/// `Σ_i (-1)^i rank` for each `q`, from either side.
pub fn euler_by_q(ranks: impl Iterator<Item = (i32, i32, usize)>) -> BTreeMap<i32, i64> {
    let mut out: BTreeMap<i32, i64> = BTreeMap::new();
    for (i, q, r) in ranks {
        *out.entry(q).or_default() += if i.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) };
    }
    out.retain(|_, v| *v != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Crossing;

    #[test]
    fn unknot() {
        let t = kh_table(&LinkDiagram::unknot(), 12).unwrap();
        assert_eq!(t.0.keys().copied().collect::<Vec<_>>(), vec![(0, -1), (0, 1)]);
    }

    #[test]
    fn kink_refines() {
        let d = LinkDiagram::new(vec![Crossing::new(1, [1, 1, 0, 0])], 2, 0, None, None).unwrap();
        let sp = StateSpace::new(&d, 12).unwrap();
        assert!(refinement_holds(&sp, Diff::D));
        assert!(refinement_holds(&sp, Diff::DPrime));
        let kh = kh_of(&sp, Diff::D);
        assert_eq!(kh.total_rank(), 2);
    }
}
