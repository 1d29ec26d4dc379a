//! Integer homology and cohomology of the trigraded complexes, the duality
//! maps relating a diagram to its mirror, and Euler characteristics.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{ChainSlice, Diff, EnhancedState, Filtration, SliceKey, StateSpace};
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::laurent::BiLaurent;
use crate::snf::{smith, SmithSummary};

/// A finitely generated abelian group `Z^rank ⊕ torsion`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Group {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl Group {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    fn merge(&mut self, other: &Group) {
        self.rank += other.rank;
        self.torsion.extend_from_slice(&other.torsion);
        self.torsion.sort_unstable();
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Nonzero groups indexed by `(i, j, k)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HomologyTable(pub BTreeMap<(i32, i32, i32), Group>);

#[derive(Serialize)]
struct TableRow<'a> {
    i: i32,
    j: i32,
    k: i32,
    rank: usize,
    torsion: &'a [u64],
}

impl HomologyTable {
    pub fn get(&self, i: i32, j: i32, k: i32) -> Group {
        self.0.get(&(i, j, k)).cloned().unwrap_or_default()
    }

    pub fn total_rank(&self) -> usize {
        self.0.values().map(|g| g.rank).sum()
    }

    pub fn has_torsion(&self) -> bool {
        self.0.values().any(|g| !g.torsion.is_empty())
    }

    /// Reindexes by `(i, j, k) -> (-i, -j, -k)`.
    pub fn negated(&self) -> HomologyTable {
        HomologyTable(self.0.iter().map(|(&(i, j, k), g)| ((-i, -j, -k), g.clone())).collect())
    }

    /// JSON rows sorted by `(j, k, i)`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut rows: Vec<TableRow> = self
            .0
            .iter()
            .map(|(&(i, j, k), g)| TableRow {
                i,
                j,
                k,
                rank: g.rank,
                torsion: &g.torsion,
            })
            .collect();
        rows.sort_by_key(|r| (r.j, r.k, r.i));
        serde_json::to_value(rows).expect("table serializes")
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.0.keys().copied().collect();
        keys.sort_by_key(|&(i, j, k)| (j, k, i));
        for (i, j, k) in keys {
            writeln!(f, "(i={i}, j={j}, k={k}): {}", self.0[&(i, j, k)])?;
        }
        Ok(())
    }
}

/// Homology of a differential or cohomology of `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theory {
    Homology(Diff),
    Cohomology,
}

/// Smith data of the differential leaving each degree of a slice.
fn slice_groups(space: &StateSpace, slice: &ChainSlice, theory: Theory) -> Vec<(i32, Group)> {
    let diff = match theory {
        Theory::Homology(x) => x,
        Theory::Cohomology => Diff::D,
    };
    let smith_out: BTreeMap<i32, SmithSummary> = slice
        .degrees()
        .into_iter()
        .map(|i| (i, smith(&slice.matrix(space, diff, i))))
        .collect();
    let out_of = |i: i32| smith_out.get(&i).cloned().unwrap_or_default();
    slice
        .degrees()
        .into_iter()
        .map(|i| {
            // `into` is the map arriving at degree i
            let step = diff.step();
            let outgoing = out_of(i);
            let incoming = out_of(i - step);
            let rank = slice.dim(i) - outgoing.rank - incoming.rank;
            let torsion = match theory {
                Theory::Homology(_) => incoming.torsion,
                // the coboundary into degree i is the transpose of d out of i
                Theory::Cohomology => outgoing.torsion,
            };
            (i, Group { rank, torsion })
        })
        .collect()
}

/// Groups for every slice of the given filtration, keyed by `(slice, i)`.
pub fn slice_table(space: &StateSpace, f: Filtration, theory: Theory) -> BTreeMap<(SliceKey, i32), Group> {
    let slices = space.slices(f);
    let per_slice: Vec<Vec<((SliceKey, i32), Group)>> = slices
        .par_iter()
        .map(|s| {
            slice_groups(space, s, theory)
                .into_iter()
                .filter(|(_, g)| !g.is_zero())
                .map(|(i, g)| ((s.key, i), g))
                .collect()
        })
        .collect();
    per_slice.into_iter().flatten().collect()
}

fn trigraded(space: &StateSpace, theory: Theory) -> HomologyTable {
    HomologyTable(
        slice_table(space, Filtration::StarLike, theory)
            .into_iter()
            .map(|((key, i), g)| match key {
                SliceKey::JK(j, k) => ((i, j, k), g),
                SliceKey::Q(_) => unreachable!("star-like slices are keyed by (j, k)"),
            })
            .collect(),
    )
}

pub fn homology_table(d: &LinkDiagram, which: Diff, cap: usize) -> Result<HomologyTable> {
    Ok(trigraded(&StateSpace::new(d, cap)?, Theory::Homology(which)))
}

pub fn homology_of(space: &StateSpace, which: Diff) -> HomologyTable {
    trigraded(space, Theory::Homology(which))
}

/// Cohomology of `d`, with the coboundary raising `i`.
pub fn cohomology_table(d: &LinkDiagram, cap: usize) -> Result<HomologyTable> {
    Ok(trigraded(&StateSpace::new(d, cap)?, Theory::Cohomology))
}

/// Merges `(j, k)` into `q = j + k`.
pub fn collapse_grading(t: &HomologyTable) -> BTreeMap<(i32, i32), Group> {
    let mut out: BTreeMap<(i32, i32), Group> = BTreeMap::new();
    for (&(i, j, k), g) in &t.0 {
        out.entry((i, j + k)).or_default().merge(g);
    }
    out
}

/// `Σ (-1)^i (-A^2)^j (-H^2)^k rank`, as a polynomial in `A` and `H`.
pub fn euler_characteristic(t: &HomologyTable) -> BiLaurent {
    let mut out = BiLaurent::zero();
    for (&(i, j, k), g) in &t.0 {
        let sign = if (i + j + k).rem_euclid(2) == 0 { 1 } else { -1 };
        out.add_term(2 * j, 2 * k, sign * g.rank as i64);
    }
    out
}

/// Outcome of the duality checks on one diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    /// `ψ d' = d^T ψ` entrywise.
    pub psi_intertwines: bool,
    /// `φ d_D = d'_{mirror D} φ` entrywise.
    pub phi_intertwines: bool,
    /// `H(D)` agrees with `H'(mirror D)` under negated gradings.
    pub homology_vs_mirror_dprime: bool,
    /// `H(D)` agrees with the cohomology of `mirror D` under negated gradings.
    pub homology_vs_mirror_cohomology: bool,
    /// Ranks of `H_{i,j,k}(D)` and `H_{-i,-j,-k}(mirror D)` agree.
    pub mirror_ranks: bool,
    /// Torsion of `H_{i,j,k}(D)` equals that of `H_{-i+1,-j,-k}(mirror D)`.
    pub mirror_torsion_shift_up: bool,
    /// Torsion of `H_{i,j,k}(D)` equals that of `H_{-i-1,-j,-k}(mirror D)`.
    pub mirror_torsion_shift_down: bool,
    /// Whether any torsion occurred, so the shift checks carry information.
    pub has_torsion: bool,
}

impl DualityReport {
    /// All checks prescribed for the mirror corollary, using the `-i+1`
    /// torsion shift.
    pub fn passed(&self) -> bool {
        self.psi_intertwines
            && self.phi_intertwines
            && self.homology_vs_mirror_dprime
            && self.homology_vs_mirror_cohomology
            && self.mirror_ranks
            && self.mirror_torsion_shift_up
    }
}

/// Entries `(source, target) -> coefficient` of a differential.
fn entries(space: &StateSpace, which: Diff) -> HashMap<(EnhancedState, EnhancedState), i64> {
    let mut out = HashMap::new();
    for s in space.enhanced() {
        let image = match which {
            Diff::D => space.differential_d(s, Filtration::StarLike),
            Diff::DPrime => space.differential_dprime(s, Filtration::StarLike),
        };
        for (t, c) in image.terms() {
            out.insert((s, t), c);
        }
    }
    out
}

fn parity_sign(u: usize) -> i64 {
    if u.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Checks `(-1)^u(T) [d'(S) : T] = (-1)^u(S) [d(T) : S]` for all `S, T`.
pub fn psi_intertwines(space: &StateSpace) -> Option<(EnhancedState, EnhancedState)> {
    let d = entries(space, Diff::D);
    let dp = entries(space, Diff::DPrime);
    let mut lhs: HashMap<(EnhancedState, EnhancedState), i64> = HashMap::new();
    for (&(s, t), &c) in &dp {
        lhs.insert((t, s), c * parity_sign(space.u_sign(t)));
    }
    let mut rhs: HashMap<(EnhancedState, EnhancedState), i64> = HashMap::new();
    for (&(t, s), &c) in &d {
        rhs.insert((t, s), c * parity_sign(space.u_sign(s)));
    }
    first_difference(&lhs, &rhs)
}

/// The state of `mirror D` corresponding to `s`: complemented smoothing,
/// inverted labels.
pub fn phi(space: &StateSpace, s: EnhancedState) -> EnhancedState {
    let n = space.diagram().num_crossings();
    let m = space.state(s.mask).circles.len();
    EnhancedState {
        mask: !s.mask & ((1u64 << n) - 1) as u32,
        minus: !s.minus & ((1u128 << m) - 1) as u64,
    }
}

/// Checks `[d'_{mirror}(φS) : φT] = [d(S) : T]` for all `S, T`.
pub fn phi_intertwines(space: &StateSpace, mirror: &StateSpace) -> Option<(EnhancedState, EnhancedState)> {
    let d = entries(space, Diff::D);
    let mapped: HashMap<(EnhancedState, EnhancedState), i64> =
        d.iter().map(|(&(s, t), &c)| ((phi(space, s), phi(space, t)), c)).collect();
    let dp = entries(mirror, Diff::DPrime);
    first_difference(&mapped, &dp)
}

fn first_difference(
    a: &HashMap<(EnhancedState, EnhancedState), i64>,
    b: &HashMap<(EnhancedState, EnhancedState), i64>,
) -> Option<(EnhancedState, EnhancedState)> {
    let mut bad: Vec<(EnhancedState, EnhancedState)> = a
        .iter()
        .filter(|(k, v)| b.get(k) != Some(v))
        .map(|(k, _)| *k)
        .chain(b.keys().filter(|k| !a.contains_key(k)).copied())
        .collect();
    bad.sort();
    bad.into_iter().next()
}

fn torsion_shift_holds(h: &HomologyTable, mirror_h: &HomologyTable, shift: i32) -> bool {
    let keys: std::collections::BTreeSet<(i32, i32, i32)> = h
        .0
        .keys()
        .copied()
        .chain(mirror_h.0.keys().map(|&(i, j, k)| (-(i - shift), -j, -k)))
        .collect();
    keys.into_iter()
        .all(|(i, j, k)| h.get(i, j, k).torsion == mirror_h.get(-i + shift, -j, -k).torsion)
}

pub fn verify_duality(d: &LinkDiagram, cap: usize) -> Result<DualityReport> {
    let m = d.mirror();
    let space = StateSpace::new(d, cap)?;
    let mspace = StateSpace::new(&m, cap)?;
    let h = homology_of(&space, Diff::D);
    let mh = homology_of(&mspace, Diff::D);
    let mhp = homology_of(&mspace, Diff::DPrime);
    let mco = trigraded(&mspace, Theory::Cohomology);
    let ranks = |t: &HomologyTable| -> BTreeMap<(i32, i32, i32), usize> {
        t.0.iter().filter(|(_, g)| g.rank > 0).map(|(&k, g)| (k, g.rank)).collect()
    };
    Ok(DualityReport {
        psi_intertwines: psi_intertwines(&space).is_none(),
        phi_intertwines: phi_intertwines(&space, &mspace).is_none(),
        homology_vs_mirror_dprime: h == mhp.negated(),
        homology_vs_mirror_cohomology: h == mco.negated(),
        mirror_ranks: ranks(&h) == ranks(&mh.negated()),
        mirror_torsion_shift_up: torsion_shift_holds(&h, &mh, 1),
        mirror_torsion_shift_down: torsion_shift_holds(&h, &mh, -1),
        has_torsion: h.has_torsion(),
    })
}

/// Like [`verify_duality`] but turns the first failing check into an error.
pub fn require_duality(d: &LinkDiagram, cap: usize) -> Result<DualityReport> {
    let r = verify_duality(d, cap)?;
    if r.passed() {
        return Ok(r);
    }
    let space = StateSpace::new(d, cap)?;
    let at = |s: EnhancedState| {
        let g = space.gradings(s);
        (g.i, g.j, g.k)
    };
    let (grading, detail) = if let Some((s, _)) = psi_intertwines(&space) {
        (at(s), "psi does not intertwine d' with the transpose of d".to_string())
    } else if let Some((s, _)) = phi_intertwines(&space, &StateSpace::new(&d.mirror(), cap)?) {
        (at(s), "phi does not intertwine d with d' of the mirror".to_string())
    } else {
        ((0, 0, 0), format!("table comparison failed: {r:?}"))
    };
    Err(Error::DualityViolation { grading, detail })
}
