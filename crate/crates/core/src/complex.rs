//! Enhanced states, their `(i, j, k)` gradings, incidence numbers, and the
//! differentials `d` (lowering `i`) and `d'` (raising `i`).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::LinkDiagram;
use crate::error::Result;
use crate::resolution::{check_cap, CircleType, KauffmanState, Resolver, Smoothing};
use crate::snf::SparseMatrix;

/// A Kauffman state (by smoothing mask, bit `c` set when crossing `c` is
/// `A^-1`-smoothed) plus labels on its circles (bit set means `-`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnhancedState {
    pub mask: u32,
    pub minus: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Gradings {
    pub i: i32,
    pub j: i32,
    pub k: i32,
}

impl Gradings {
    pub fn q(&self) -> i32 {
        self.j + self.k
    }
}

/// Which gradings an incidence must preserve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Filtration {
    /// Both `j` and `k`: the star-like theories.
    StarLike,
    /// Only `q = j + k`: standard Khovanov homology.
    Khovanov,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SliceKey {
    JK(i32, i32),
    Q(i32),
}

impl Filtration {
    pub fn key(self, g: Gradings) -> SliceKey {
        match self {
            Filtration::StarLike => SliceKey::JK(g.j, g.k),
            Filtration::Khovanov => SliceKey::Q(g.q()),
        }
    }
}

/// Circle correspondence between a state and the state obtained by
/// switching one crossing.
#[derive(Debug, Clone)]
struct Transition {
    target: u32,
    /// For each target circle, the source circle with the same edge set.
    common: Vec<Option<usize>>,
    fresh: Vec<usize>,
}

/// All Kauffman states of a diagram, with the circle correspondences
/// needed by the differentials precomputed.
pub struct StateSpace {
    diagram: LinkDiagram,
    n: usize,
    writhe: i32,
    states: Vec<KauffmanState>,
    /// `transitions[mask][v]`
    transitions: Vec<Vec<Transition>>,
}

impl StateSpace {
    pub fn new(d: &LinkDiagram, cap: usize) -> Result<Self> {
        let n = d.num_crossings();
        check_cap(n, cap)?;
        let r = Resolver::new(d);
        let states: Vec<KauffmanState> = (0..1u32 << n).into_par_iter().map(|m| r.resolve_mask(m)).collect();
        let transitions = (0..1u32 << n)
            .into_par_iter()
            .map(|m| {
                (0..n)
                    .map(|v| {
                        let target = m ^ 1 << v;
                        let (s, t) = (&states[m as usize], &states[target as usize]);
                        let common: Vec<Option<usize>> = t
                            .circles
                            .iter()
                            .map(|tc| {
                                s.circles
                                    .binary_search_by_key(&tc.id, |c| c.id)
                                    .ok()
                                    .filter(|&si| s.circles[si].edges == tc.edges)
                            })
                            .collect();
                        let fresh = (0..t.circles.len()).filter(|&c| common[c].is_none()).collect();
                        Transition { target, common, fresh }
                    })
                    .collect()
            })
            .collect();
        Ok(StateSpace {
            diagram: d.clone(),
            n,
            writhe: d.writhe(),
            states,
            transitions,
        })
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn state(&self, mask: u32) -> &KauffmanState {
        &self.states[mask as usize]
    }

    pub fn gradings(&self, s: EnhancedState) -> Gradings {
        let st = self.state(s.mask);
        let (mut td, mut th) = (0, 0);
        for (c, circ) in st.circles.iter().enumerate() {
            let t = if s.minus >> c & 1 == 1 { -1 } else { 1 };
            match circ.circle_type {
                CircleType::D => td += t,
                CircleType::H => th += t,
            }
        }
        let w = self.writhe;
        Gradings {
            i: (st.sigma - w) / 2,
            j: (st.sigma - 3 * w) / 2 + td,
            k: th,
        }
    }

    /// Every enhanced state, in canonical order.
    pub fn enhanced(&self) -> Vec<EnhancedState> {
        let mut out = Vec::new();
        for mask in self.masks_in_order() {
            let m = self.state(mask).circles.len();
            for minus in 0..1u64 << m {
                // label vectors in lex order with + < -, circle 0 first
                out.push(EnhancedState {
                    mask,
                    minus: reverse_bits(minus, m),
                });
            }
        }
        out
    }

    /// Masks in lexicographic smoothing order, crossing 0 most significant.
    fn masks_in_order(&self) -> impl Iterator<Item = u32> + '_ {
        (0..1u32 << self.n).map(move |t| reverse_bits(t as u64, self.n) as u32)
    }

    /// Sort key realizing the canonical order of enhanced states.
    pub fn order_key(&self, s: EnhancedState) -> (u32, u64) {
        let m = self.state(s.mask).circles.len();
        (reverse_bits(s.mask as u64, self.n) as u32, reverse_bits(s.minus, m))
    }

    /// `[S : S']_v` for the chosen filtration.
    pub fn incidence_with(&self, s: EnhancedState, t: EnhancedState, v: usize, f: Filtration) -> bool {
        if s.mask >> v & 1 != 0 || t.mask != s.mask | 1 << v {
            return false;
        }
        let tr = &self.transitions[s.mask as usize][v];
        let labels_agree = tr
            .common
            .iter()
            .enumerate()
            .all(|(tc, sc)| sc.is_none_or(|sc| (t.minus >> tc & 1) == (s.minus >> sc & 1)));
        labels_agree && f.key(self.gradings(s)) == f.key(self.gradings(t))
    }

    /// `[S : S']_v` with conditions i) to iv).
    pub fn incidence(&self, s: EnhancedState, t: EnhancedState, v: usize) -> bool {
        self.incidence_with(s, t, v, Filtration::StarLike)
    }

    /// Enhanced states over `mask ^ (1 << v)` that agree with `s` on common
    /// circles and share its slice key.
    fn neighbours(&self, s: EnhancedState, v: usize, f: Filtration) -> Vec<EnhancedState> {
        let tr = &self.transitions[s.mask as usize][v];
        let mut base = 0u64;
        for (tc, sc) in tr.common.iter().enumerate() {
            if let Some(sc) = sc {
                base |= (s.minus >> sc & 1) << tc;
            }
        }
        let key = f.key(self.gradings(s));
        (0..1u64 << tr.fresh.len())
            .map(|bits| {
                let mut minus = base;
                for (b, &tc) in tr.fresh.iter().enumerate() {
                    minus |= (bits >> b & 1) << tc;
                }
                EnhancedState {
                    mask: tr.target,
                    minus,
                }
            })
            .filter(|t| f.key(self.gradings(*t)) == key)
            .collect()
    }

    /// `(-1)^t` where `t` counts crossings smoothed as `which` in `s` whose
    /// label exceeds that of `v`.
    fn sign(&self, s: EnhancedState, v: usize, which: Smoothing) -> i64 {
        let lv = self.diagram.label(v);
        let t = (0..self.n)
            .filter(|&c| {
                let sc = if s.mask >> c & 1 == 1 { Smoothing::AInv } else { Smoothing::A };
                sc == which && self.diagram.label(c) > lv
            })
            .count();
        if t % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `d_v(S)`, empty unless `v` is `A`-smoothed in `S`.
    pub fn partial_d(&self, s: EnhancedState, v: usize, f: Filtration) -> Vec<(EnhancedState, i64)> {
        if s.mask >> v & 1 != 0 {
            return Vec::new();
        }
        let e = self.sign(s, v, Smoothing::AInv);
        self.neighbours(s, v, f).into_iter().map(|t| (t, e)).collect()
    }

    /// `d'_v(S)`, empty unless `v` is `A^-1`-smoothed in `S`.
    pub fn partial_dprime(&self, s: EnhancedState, v: usize, f: Filtration) -> Vec<(EnhancedState, i64)> {
        if s.mask >> v & 1 == 0 {
            return Vec::new();
        }
        let e = self.sign(s, v, Smoothing::A);
        self.neighbours(s, v, f).into_iter().map(|t| (t, e)).collect()
    }

    pub fn differential_d(&self, s: EnhancedState, f: Filtration) -> Combination {
        let mut out = Combination::new();
        for v in 0..self.n {
            for (t, e) in self.partial_d(s, v, f) {
                out.add(t, e);
            }
        }
        out
    }

    pub fn differential_dprime(&self, s: EnhancedState, f: Filtration) -> Combination {
        let mut out = Combination::new();
        for v in 0..self.n {
            for (t, e) in self.partial_dprime(s, v, f) {
                out.add(t, e);
            }
        }
        out
    }

    /// `u(S) = Σ (n - label(v))` over `A`-smoothed crossings.
    pub fn u_sign(&self, s: EnhancedState) -> usize {
        (0..self.n)
            .filter(|&c| s.mask >> c & 1 == 0)
            .map(|c| self.n - self.diagram.label(c))
            .sum()
    }

    /// Groups the enhanced states into slices with ordered bases per degree.
    pub fn slices(&self, f: Filtration) -> Vec<ChainSlice> {
        let mut by_key: BTreeMap<SliceKey, BTreeMap<i32, Vec<EnhancedState>>> = BTreeMap::new();
        for s in self.enhanced() {
            let g = self.gradings(s);
            by_key.entry(f.key(g)).or_default().entry(g.i).or_default().push(s);
        }
        by_key
            .into_iter()
            .map(|(key, basis)| ChainSlice {
                key,
                filtration: f,
                basis,
            })
            .collect()
    }
}

/// Finite integer combination of enhanced states.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Combination(BTreeMap<EnhancedState, i64>);

impl Combination {
    pub fn new() -> Self {
        Combination(BTreeMap::new())
    }

    pub fn add(&mut self, s: EnhancedState, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.0.entry(s).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.0.remove(&s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (EnhancedState, i64)> + '_ {
        self.0.iter().map(|(&s, &c)| (s, c))
    }

    pub fn coeff(&self, s: EnhancedState) -> i64 {
        self.0.get(&s).copied().unwrap_or(0)
    }

    /// Applies a linear map given on basis elements.
    pub fn map(&self, f: impl Fn(EnhancedState) -> Combination) -> Combination {
        let mut out = Combination::new();
        for (s, c) in self.terms() {
            for (t, e) in f(s).terms() {
                out.add(t, c * e);
            }
        }
        out
    }
}

/// The summand of the chain module with one fixed slice key.
#[derive(Debug, Clone)]
pub struct ChainSlice {
    pub key: SliceKey,
    pub filtration: Filtration,
    /// Canonically ordered basis for each homological degree.
    pub basis: BTreeMap<i32, Vec<EnhancedState>>,
}

/// Which differential a matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Diff {
    #[serde(rename = "d")]
    D,
    #[serde(rename = "d'")]
    DPrime,
}

impl Diff {
    /// Degree shift of the differential.
    pub fn step(self) -> i32 {
        match self {
            Diff::D => -1,
            Diff::DPrime => 1,
        }
    }
}

impl ChainSlice {
    pub fn dim(&self, i: i32) -> usize {
        self.basis.get(&i).map_or(0, Vec::len)
    }

    /// Matrix of `which` from degree `i` to `i + step`; rows index the
    /// target basis.
    pub fn matrix(&self, space: &StateSpace, which: Diff, i: i32) -> SparseMatrix {
        let empty = Vec::new();
        let src = self.basis.get(&i).unwrap_or(&empty);
        let dst = self.basis.get(&(i + which.step())).unwrap_or(&empty);
        let index: std::collections::HashMap<EnhancedState, usize> =
            dst.iter().enumerate().map(|(r, &s)| (s, r)).collect();
        let mut m = SparseMatrix::new(dst.len(), src.len());
        for (col, &s) in src.iter().enumerate() {
            let image = match which {
                Diff::D => space.differential_d(s, self.filtration),
                Diff::DPrime => space.differential_dprime(s, self.filtration),
            };
            for (t, c) in image.terms() {
                m.add(index[&t], col, c);
            }
        }
        m
    }

    /// Degrees with nonzero chain groups.
    pub fn degrees(&self) -> Vec<i32> {
        self.basis.keys().copied().collect()
    }

    /// JSON dump `{j, k, degrees, matrices}` of the differential; matrix
    /// `m` maps `degrees[m]` to its neighbour in the direction of `which`.
    pub fn dump(&self, space: &StateSpace, which: Diff) -> serde_json::Value {
        let degrees = self.degrees();
        let matrices: Vec<Vec<Vec<i64>>> = degrees.iter().map(|&i| self.matrix(space, which, i).to_dense()).collect();
        let (j, k) = match self.key {
            SliceKey::JK(j, k) => (serde_json::json!(j), serde_json::json!(k)),
            SliceKey::Q(q) => (serde_json::json!(q), serde_json::Value::Null),
        };
        serde_json::json!({"j": j, "k": k, "degrees": degrees, "matrices": matrices})
    }
}

fn reverse_bits(x: u64, width: usize) -> u64 {
    if width == 0 {
        0
    } else {
        x.reverse_bits() >> (64 - width)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Crossing;

    fn kink() -> LinkDiagram {
        LinkDiagram::new(vec![Crossing::new(1, [1, 1, 0, 0])], 2, 0, None, None).unwrap()
    }

    #[test]
    fn unknot_enhanced_states() {
        let sp = StateSpace::new(&LinkDiagram::unknot(), 12).unwrap();
        let g: Vec<Gradings> = sp.enhanced().into_iter().map(|s| sp.gradings(s)).collect();
        assert_eq!(g, vec![Gradings { i: 0, j: 0, k: 1 }, Gradings { i: 0, j: 0, k: -1 }]);
    }

    #[test]
    fn kink_counts_and_gradings() {
        let sp = StateSpace::new(&kink(), 12).unwrap();
        assert_eq!(sp.enhanced().len(), 6);
        let s = EnhancedState { mask: 1, minus: 1 };
        assert_eq!(sp.gradings(s), Gradings { i: -1, j: -3, k: 0 });
    }

    #[test]
    fn incidence_needs_one_switch() {
        let sp = StateSpace::new(&kink(), 12).unwrap();
        let s = EnhancedState { mask: 0, minus: 0 };
        assert!(!sp.incidence(s, s, 0));
    }

    #[test]
    fn u_sign_formula() {
        let d = crate::diagram::parse_diagram("X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]").unwrap();
        let sp = StateSpace::new(&d, 12).unwrap();
        assert_eq!(sp.u_sign(EnhancedState { mask: 0b111, minus: 0 }), 0);
        // crossings 0 and 2 A-smoothed, labels 1 and 3
        assert_eq!(sp.u_sign(EnhancedState { mask: 0b010, minus: 0 }), 2);
    }

    #[test]
    fn trefoil_d_squared_vanishes() {
        let d = crate::diagram::parse_diagram("X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]").unwrap();
        let sp = StateSpace::new(&d, 12).unwrap();
        for s in sp.enhanced() {
            let f = Filtration::StarLike;
            assert!(sp.differential_d(s, f).map(|t| sp.differential_d(t, f)).is_zero());
            assert!(sp.differential_dprime(s, f).map(|t| sp.differential_dprime(t, f)).is_zero());
        }
    }
}
