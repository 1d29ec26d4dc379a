//! Oracles written independently of the library's resolution and complex
//! code. They read only the raw crossing slots of a diagram.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use starlike_core::complex::{EnhancedState, Filtration, StateSpace};
use starlike_core::random::corpus;
use starlike_core::resolution::{CircleType, StateCircle};
use starlike_core::{Laurent, LinkDiagram};

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut x = x;
    while parent[x] != r {
        let next = parent[x];
        parent[x] = r;
        x = next;
    }
    r
}

/// Circles of the resolution where bit `c` of `mask` selects the
/// A⁻¹-smoothing at crossing `c`, as a map from edge to circle index, plus
/// the circle count (free loops included).
pub fn circles(d: &LinkDiagram, mask: u32) -> (Vec<usize>, usize) {
    let m = d.num_edges();
    let mut parent: Vec<usize> = (0..m).collect();
    for (c, x) in d.crossings().iter().enumerate() {
        let pairs = if mask >> c & 1 == 0 {
            [(0, 1), (2, 3)]
        } else {
            [(0, 3), (1, 2)]
        };
        for (a, b) in pairs {
            let (ra, rb) = (find(&mut parent, x.slots[a]), find(&mut parent, x.slots[b]));
            parent[ra] = rb;
        }
    }
    let mut index: HashMap<usize, usize> = HashMap::new();
    let mut of_edge = Vec::with_capacity(m);
    for e in 0..m {
        let r = find(&mut parent, e);
        let next = index.len();
        of_edge.push(*index.entry(r).or_insert(next));
    }
    let count = index.len() + d.free_loops();
    (of_edge, count)
}

/// Classical unreduced Kauffman bracket normalized by `(-A)^{-3w}`.
pub fn kauffman_oracle(d: &LinkDiagram) -> Laurent {
    let n = d.num_crossings();
    let loop_value = Laurent::from_terms([(2, -1), (-2, -1)]);
    let mut sum = Laurent::zero();
    for mask in 0..1u32 << n {
        let b = mask.count_ones() as i32;
        let (_, loops) = circles(d, mask);
        let term = &Laurent::monomial(1, n as i32 - 2 * b) * &loop_value.pow(loops as u32);
        sum = &sum + &term;
    }
    let w = d.writhe();
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    &sum * &Laurent::monomial(sign, -3 * w)
}

const P: i64 = 1_000_003;

fn rank_mod_p(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> usize {
    let mut m = vec![vec![0i64; cols]; rows];
    for &(r, c, v) in entries {
        m[r][c] = (m[r][c] + v).rem_euclid(P);
    }
    let inv = |a: i64| {
        let (mut base, mut e, mut acc) = (a, P - 2, 1i64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let iv = inv(m[rank][col]);
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col] * iv % P;
                for c in col..cols {
                    m[r][c] = (m[r][c] - f * m[rank][c]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rational Khovanov homology ranks `(i, q) -> rank` from the Frobenius
/// algebra `Z[x]/(x²)` on the cube of resolutions, with the usual
/// normalization `i = |v| - n₋`, `q = deg + |v| + n₊ - 2n₋` where the
/// 0-resolution is the A-smoothing and `v₊` has degree +1.
pub fn khovanov_oracle(d: &LinkDiagram) -> BTreeMap<(i32, i32), usize> {
    let n = d.num_crossings();
    let n_plus = d.crossings().iter().filter(|x| x.sign > 0).count() as i32;
    let n_minus = n as i32 - n_plus;
    let res: Vec<(Vec<usize>, usize)> = (0..1u32 << n).map(|m| circles(d, m)).collect();
    // generator: (mask, minus-bits over circles)
    let mut gens: BTreeMap<(i32, i32), Vec<(u32, u32)>> = BTreeMap::new();
    for mask in 0..1u32 << n {
        let k = res[mask as usize].1;
        let h = mask.count_ones() as i32;
        for minus in 0..1u32 << k {
            let deg = k as i32 - 2 * minus.count_ones() as i32;
            let i = h - n_minus;
            let q = deg + h + n_plus - 2 * n_minus;
            gens.entry((i, q)).or_default().push((mask, minus));
        }
    }
    let index: HashMap<(u32, u32), usize> = gens
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(i, &g)| (g, i)))
        .collect();
    let differential = |mask: u32, minus: u32| -> Vec<((u32, u32), i64)> {
        let (src_of, src_k) = &res[mask as usize];
        let mut out = Vec::new();
        for c in 0..n {
            if mask >> c & 1 == 1 {
                continue;
            }
            let sign = if (mask & ((1u32 << c) - 1)).count_ones().is_multiple_of(2) { 1 } else { -1 };
            let t = mask | 1 << c;
            let (dst_of, dst_k) = &res[t as usize];
            // circle correspondence through edges; free loops map to themselves
            let mut src_to_dst = vec![usize::MAX; *src_k];
            for e in 0..d.num_edges() {
                src_to_dst[src_of[e]] = dst_of[e];
            }
            let fl = d.free_loops();
            for l in 0..fl {
                src_to_dst[src_k - fl + l] = dst_k - fl + l;
            }
            let lab = |m: u32, i: usize| m >> i & 1;
            let x = d.crossing(c);
            // the A-smoothing joins slots 0,1 and slots 2,3
            let (a, b) = (src_of[x.slots[0]], src_of[x.slots[2]]);
            if a != b {
                // merge
                let a_minus = lab(minus, a);
                let b_minus = lab(minus, b);
                if a_minus + b_minus == 2 {
                    continue;
                }
                let mut tm = 0u32;
                for s in 0..*src_k {
                    if s != a && s != b && lab(minus, s) == 1 {
                        tm |= 1 << src_to_dst[s];
                    }
                }
                if a_minus + b_minus == 1 {
                    tm |= 1 << src_to_dst[a];
                }
                out.push(((t, tm), sign));
            } else {
                // split; the A⁻¹-smoothing separates slots 0 and 1
                let (a2, b2) = (dst_of[x.slots[0]], dst_of[x.slots[1]]);
                let mut base = 0u32;
                for s in 0..*src_k {
                    if s != a && lab(minus, s) == 1 {
                        base |= 1 << src_to_dst[s];
                    }
                }
                if lab(minus, a) == 1 {
                    out.push(((t, base | 1 << a2 | 1 << b2), sign));
                } else {
                    out.push(((t, base | 1 << a2), sign));
                    out.push(((t, base | 1 << b2), sign));
                }
            }
        }
        out
    };
    let mut ranks: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    let rank_out = |i: i32, q: i32| -> usize {
        let Some(src) = gens.get(&(i, q)) else { return 0 };
        let Some(dst) = gens.get(&(i + 1, q)) else { return 0 };
        let mut entries = Vec::new();
        for (col, &(mask, minus)) in src.iter().enumerate() {
            for (g, s) in differential(mask, minus) {
                entries.push((index[&g], col, s));
            }
        }
        rank_mod_p(dst.len(), src.len(), &entries)
    };
    for (&(i, q), g) in &gens {
        let r = g.len() - rank_out(i, q) - rank_out(i - 1, q);
        if r > 0 {
            ranks.insert((i, q), r);
        }
    }
    ranks
}

/// One row of the local table for `d_v`: the types and labels of the
/// circles that disappear, and the types of the circles that appear.
pub type Row = (Vec<(CircleType, bool)>, Vec<CircleType>);

fn tau(cs: &[(CircleType, bool)], t: CircleType) -> i32 {
    cs.iter()
        .filter(|c| c.0 == t)
        .map(|c| if c.1 { -1 } else { 1 })
        .sum()
}

/// All labelings of the new circles that raise `τ_d` by one and keep
/// `τ_h`, which is what switching an A-smoothing to an A⁻¹-smoothing needs
/// to preserve `j` and `k`.
pub fn expected_outputs(row: &Row) -> BTreeSet<Vec<bool>> {
    let (old, new) = row;
    let mut out = BTreeSet::new();
    for bits in 0..1u32 << new.len() {
        let labels: Vec<bool> = (0..new.len()).map(|b| bits >> b & 1 == 1).collect();
        let cs: Vec<(CircleType, bool)> = new.iter().copied().zip(labels.iter().copied()).collect();
        if tau(&cs, CircleType::D) == tau(old, CircleType::D) + 1 && tau(&cs, CircleType::H) == tau(old, CircleType::H) {
            out.insert(labels);
        }
    }
    out
}

/// Machine-enumerated local transitions of `d_v` on small diagrams.
pub fn observed_table() -> BTreeMap<Row, BTreeSet<Vec<bool>>> {
    let mut table: BTreeMap<Row, BTreeSet<Vec<bool>>> = BTreeMap::new();
    for d in corpus(13, 120, 4) {
        let sp = StateSpace::new(&d, 12).unwrap();
        for s in sp.enhanced() {
            for v in 0..d.num_crossings() {
                if s.mask >> v & 1 == 1 {
                    continue;
                }
                let t_mask = s.mask | 1 << v;
                let (src, dst) = (sp.state(s.mask), sp.state(t_mask));
                let common = |a: &StateCircle, other: &[StateCircle]| {
                    other.iter().any(|b| b.id == a.id && b.edges == a.edges)
                };
                let old_idx: Vec<usize> = (0..src.circles.len()).filter(|&i| !common(&src.circles[i], &dst.circles)).collect();
                let new_idx: Vec<usize> = (0..dst.circles.len()).filter(|&i| !common(&dst.circles[i], &src.circles)).collect();
                let mut old: Vec<(CircleType, bool)> = old_idx
                    .iter()
                    .map(|&i| (src.circles[i].circle_type, s.minus >> i & 1 == 1))
                    .collect();
                old.sort();
                // order new circles by type so rows are canonical
                let mut new_sorted = new_idx.clone();
                new_sorted.sort_by_key(|&i| dst.circles[i].circle_type);
                let new: Vec<CircleType> = new_sorted.iter().map(|&i| dst.circles[i].circle_type).collect();
                let outs: BTreeSet<Vec<bool>> = sp
                    .partial_d(s, v, Filtration::StarLike)
                    .into_iter()
                    .map(|(t, _): (EnhancedState, i64)| new_sorted.iter().map(|&i| t.minus >> i & 1 == 1).collect())
                    .collect();
                let entry = table.entry((old, new)).or_default();
                entry.extend(outs);
            }
        }
    }
    table
}

