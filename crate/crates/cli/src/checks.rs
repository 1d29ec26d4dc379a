//! Property checks run on a single input diagram.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use starlike_core::bracket::{chi_poly, skein_identity_sides, skein_recursion_holds, v_st};
use starlike_core::complex::{Diff, Filtration, StateSpace};
use starlike_core::homology::{euler_characteristic, homology_of, homology_table};
use starlike_core::moves::random_sequence;
use starlike_core::random::random_label_order;
use starlike_core::resolution::{CircleType, KauffmanState, Resolver, StateCircle};
use starlike_core::{LinkDiagram, Result};

/// Outcome of a check: whether it held, and a JSON report.
pub struct Verdict {
    pub ok: bool,
    pub report: Value,
}

pub fn invariance(d: &LinkDiagram, steps: usize, seed: u64, cap: usize) -> Result<Verdict> {
    let invariants = |d: &LinkDiagram| -> Result<_> {
        Ok((
            v_st(d, cap)?,
            homology_table(d, Diff::D, cap)?,
            homology_table(d, Diff::DPrime, cap)?,
        ))
    };
    let base = invariants(d)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for step in random_sequence(d, steps, seed, cap)? {
        let same = invariants(&step.diagram)? == base;
        ok &= same;
        rows.push(json!({
            "move": step.site,
            "diagram_hash": step.diagram.canonical_hash(),
            "crossings": step.diagram.num_crossings(),
            "invariants_equal": same,
        }));
    }
    Ok(Verdict {
        ok,
        report: json!({"check": "invariance", "seed": seed, "ok": ok, "steps": rows}),
    })
}

pub fn euler(d: &LinkDiagram, cap: usize) -> Result<Verdict> {
    let space = StateSpace::new(d, cap)?;
    let expected = chi_poly(&v_st(d, cap)?).expand_x_in_h();
    let mut report = serde_json::Map::new();
    let mut ok = true;
    for (name, which) in [("d", Diff::D), ("d'", Diff::DPrime)] {
        let got = euler_characteristic(&homology_of(&space, which));
        ok &= got == expected;
        report.insert(name.into(), json!(got == expected));
    }
    Ok(Verdict {
        ok,
        report: json!({"check": "euler", "ok": ok, "expected": expected.to_string(), "differentials": report}),
    })
}

pub fn ordering(d: &LinkDiagram, count: usize, seed: u64, cap: usize) -> Result<Verdict> {
    let base = (homology_table(d, Diff::D, cap)?, homology_table(d, Diff::DPrime, cap)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut differing = Vec::new();
    for _ in 0..count {
        let order = random_label_order(&mut rng, d.num_crossings());
        let p = d.with_label_order(order.clone())?;
        let t = (homology_table(&p, Diff::D, cap)?, homology_table(&p, Diff::DPrime, cap)?);
        if t != base {
            differing.push(order);
        }
    }
    let ok = differing.is_empty();
    Ok(Verdict {
        ok,
        report: json!({"check": "ordering", "seed": seed, "permutations": count, "ok": ok, "differing": differing}),
    })
}

/// The bracket recursion and the oriented-smoothing skein identity at every
/// crossing.
pub fn skein(d: &LinkDiagram, cap: usize) -> Result<Verdict> {
    let mut rows = Vec::new();
    let mut ok = true;
    for c in 0..d.num_crossings() {
        let recursion = skein_recursion_holds(d, c, cap)?;
        let (lhs, rhs) = skein_identity_sides(d, c, cap)?;
        let identity = lhs == rhs;
        ok &= recursion && identity;
        rows.push(json!({
            "crossing": c,
            "recursion": recursion,
            "identity": identity,
            "lhs": lhs.to_string(),
            "rhs": rhs.to_string(),
        }));
    }
    Ok(Verdict {
        ok,
        report: json!({"check": "skein", "ok": ok, "crossings": rows}),
    })
}

fn is_common(a: &StateCircle, other: &[StateCircle]) -> bool {
    other.iter().any(|b| b.id == a.id && b.edges == a.edges)
}

/// Indices of the circles of `s` that do not survive into `t`.
fn changed(s: &KauffmanState, t: &KauffmanState) -> Vec<usize> {
    (0..s.circles.len())
        .filter(|&i| !is_common(&s.circles[i], &t.circles))
        .collect()
}

/// Local rows of `d_v`: for each pattern of vanishing circles (type and
/// label) and appearing circle types, the labelings the differential
/// produces. Each is compared with the rule that the switch must raise
/// `τ_d` by one and keep `τ_h`.
pub fn fig8(d: &LinkDiagram, cap: usize) -> Result<Verdict> {
    type Row = (Vec<(CircleType, bool)>, Vec<CircleType>);
    let space = StateSpace::new(d, cap)?;
    let mut table: BTreeMap<Row, BTreeSet<Vec<bool>>> = BTreeMap::new();
    for s in space.enhanced() {
        for v in (0..d.num_crossings()).filter(|&v| s.mask >> v & 1 == 0) {
            let (src, dst) = (space.state(s.mask), space.state(s.mask | 1 << v));
            let mut old: Vec<(CircleType, bool)> = changed(src, dst)
                .into_iter()
                .map(|i| (src.circles[i].circle_type, s.minus >> i & 1 == 1))
                .collect();
            old.sort();
            let mut new_idx = changed(dst, src);
            new_idx.sort_by_key(|&i| dst.circles[i].circle_type);
            let new: Vec<CircleType> = new_idx.iter().map(|&i| dst.circles[i].circle_type).collect();
            let outs = table.entry((old, new)).or_default();
            for (t, _) in space.partial_d(s, v, Filtration::StarLike) {
                outs.insert(new_idx.iter().map(|&i| t.minus >> i & 1 == 1).collect());
            }
        }
    }
    let tau = |cs: &[(CircleType, bool)], ty: CircleType| -> i32 {
        cs.iter().filter(|c| c.0 == ty).map(|c| if c.1 { -1 } else { 1 }).sum()
    };
    let symmetrize = |row: &Row, set: &mut BTreeSet<Vec<bool>>| {
        if row.1.len() == 2 && row.1[0] == row.1[1] {
            let swapped: Vec<Vec<bool>> = set.iter().map(|v| vec![v[1], v[0]]).collect();
            set.extend(swapped);
        }
    };
    let mut rows = Vec::new();
    let mut ok = true;
    for (row, outs) in &table {
        let mut expected = BTreeSet::new();
        for bits in 0..1u32 << row.1.len() {
            let labels: Vec<bool> = (0..row.1.len()).map(|b| bits >> b & 1 == 1).collect();
            let cs: Vec<(CircleType, bool)> = row.1.iter().copied().zip(labels.iter().copied()).collect();
            if tau(&cs, CircleType::D) == tau(&row.0, CircleType::D) + 1
                && tau(&cs, CircleType::H) == tau(&row.0, CircleType::H)
            {
                expected.insert(labels);
            }
        }
        let mut got = outs.clone();
        symmetrize(row, &mut expected);
        symmetrize(row, &mut got);
        let matches = got == expected;
        ok &= matches;
        rows.push(json!({"from": row.0, "to_types": row.1, "outputs": outs, "matches_rule": matches}));
    }
    Ok(Verdict {
        ok,
        report: json!({"check": "fig8", "ok": ok, "rows": rows}),
    })
}

/// Merging two circles of equal type gives a d-circle and of different
/// types an h-circle; splitting obeys the same law read backwards.
pub fn merge_law(d: &LinkDiagram, cap: usize) -> Result<Verdict> {
    starlike_core::resolution::check_cap(d.num_crossings(), cap)?;
    let resolver = Resolver::new(d);
    let n = d.num_crossings();
    let states: Vec<KauffmanState> = (0..1u32 << n).map(|m| resolver.resolve_mask(m)).collect();
    let h_parity = |s: &KauffmanState, idx: Vec<usize>| {
        idx.into_iter()
            .fold(false, |acc, i| acc ^ (s.circles[i].circle_type == CircleType::H))
    };
    let mut pairs = 0usize;
    let mut violations = Vec::new();
    for mask in 0..1u32 << n {
        for v in (0..n).filter(|&v| mask >> v & 1 == 0) {
            let (s, t) = (&states[mask as usize], &states[(mask | 1 << v) as usize]);
            pairs += 1;
            if h_parity(s, changed(s, t)) != h_parity(t, changed(t, s)) {
                violations.push(json!({"mask": mask, "crossing": v}));
            }
        }
    }
    let ok = violations.is_empty();
    Ok(Verdict {
        ok,
        report: json!({"check": "merge-law", "ok": ok, "pairs": pairs, "violations": violations}),
    })
}
