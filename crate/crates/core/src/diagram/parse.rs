//! JSON and PD-text input for diagrams.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Crossing, Dir, LinkDiagram, OuterFace};
use crate::error::DiagramError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingJson {
    pub sign: i64,
    pub slots: [usize; 4],
    pub slot_dirs: [Dir; 4],
}

/// Serialized diagram. `pd` may carry `X[a,b,c,d]` text instead of
/// `crossings`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    #[serde(default)]
    pub crossings: Vec<CrossingJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<usize>,
    #[serde(default)]
    pub free_loops: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_face: Option<OuterFace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_order: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd: Option<String>,
}

impl From<&LinkDiagram> for DiagramJson {
    fn from(d: &LinkDiagram) -> Self {
        DiagramJson {
            crossings: d
                .crossings()
                .iter()
                .map(|x| CrossingJson {
                    sign: x.sign as i64,
                    slots: x.slots,
                    slot_dirs: x.dirs(),
                })
                .collect(),
            edges: Some(d.num_edges()),
            free_loops: d.free_loops(),
            outer_face: d.outer_face(),
            label_order: if d.label_order().iter().enumerate().all(|(i, &l)| i == l) {
                None
            } else {
                Some(d.label_order().to_vec())
            },
            pd: None,
        }
    }
}

impl LinkDiagram {
    pub fn to_json(&self) -> DiagramJson {
        DiagramJson::from(self)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("diagram serializes")
    }
}

impl TryFrom<DiagramJson> for LinkDiagram {
    type Error = DiagramError;

    fn try_from(j: DiagramJson) -> Result<Self, Self::Error> {
        if let Some(pd) = &j.pd {
            if !j.crossings.is_empty() {
                return Err(DiagramError::MalformedInput(
                    "both `pd` and `crossings` given".into(),
                ));
            }
            let crossings = desugar_pd(pd)?;
            let n = crossings.len();
            return LinkDiagram::new(crossings, 2 * n, j.free_loops, j.outer_face, j.label_order);
        }
        let mut crossings = Vec::with_capacity(j.crossings.len());
        for (c, x) in j.crossings.iter().enumerate() {
            let d = x.slot_dirs;
            if d[0] != Dir::In || d[2] != Dir::Out || d[1] == d[3] {
                return Err(DiagramError::MalformedInput(format!(
                    "crossing {c}: slot_dirs must be [in, ?, out, ?] with one of p1/p3 incoming"
                )));
            }
            let actual = if d[3] == Dir::In { 1 } else { -1 };
            if x.sign != actual {
                return Err(DiagramError::SignMismatch {
                    crossing: c,
                    declared: x.sign,
                    actual,
                });
            }
            crossings.push(Crossing::new(actual as i8, x.slots));
        }
        let max_id = crossings.iter().flat_map(|x| x.slots).max().map(|m| m + 1).unwrap_or(0);
        let num_edges = j.edges.unwrap_or(max_id);
        if num_edges < max_id {
            return Err(DiagramError::MalformedInput(format!(
                "edges = {num_edges} but edge id {} is used",
                max_id - 1
            )));
        }
        if num_edges > 2 * crossings.len() {
            // some declared edge is never referenced
            let used: std::collections::BTreeSet<usize> =
                crossings.iter().flat_map(|x| x.slots).collect();
            let e = (0..num_edges).find(|e| !used.contains(e)).unwrap_or(0);
            return Err(DiagramError::DisconnectedEdge { edge: e });
        }
        LinkDiagram::new(crossings, num_edges, j.free_loops, j.outer_face, j.label_order)
    }
}

/// Parses either the JSON schema or bare PD text (`X[1,4,2,5] X[...]`,
/// optionally wrapped in `PD[...]`).
pub fn parse_diagram(text: &str) -> Result<LinkDiagram, DiagramError> {
    let t = text.trim();
    if t.starts_with('{') {
        let j: DiagramJson = serde_json::from_str(t)
            .map_err(|e| DiagramError::MalformedInput(e.to_string()))?;
        LinkDiagram::try_from(j)
    } else {
        let crossings = desugar_pd(t)?;
        let n = crossings.len();
        LinkDiagram::new(crossings, 2 * n, 0, None, None)
    }
}

fn parse_pd_tuples(text: &str) -> Result<Vec<[i64; 4]>, DiagramError> {
    let mut s = text.trim();
    if let Some(rest) = s.strip_prefix("PD[") {
        s = rest.strip_suffix(']').ok_or_else(|| {
            DiagramError::MalformedInput("unterminated PD[".into())
        })?;
    }
    let mut out = Vec::new();
    let mut rest = s;
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        if rest.is_empty() {
            break;
        }
        let body = rest
            .strip_prefix("X[")
            .ok_or_else(|| DiagramError::MalformedInput(format!("expected X[ at `{rest}`")))?;
        let close = body
            .find(']')
            .ok_or_else(|| DiagramError::MalformedInput("unterminated X[".into()))?;
        let nums: Result<Vec<i64>, _> = body[..close].split(',').map(|v| v.trim().parse::<i64>()).collect();
        let nums = nums.map_err(|e| DiagramError::MalformedInput(e.to_string()))?;
        let arr: [i64; 4] = nums
            .try_into()
            .map_err(|_| DiagramError::MalformedInput("X[...] needs 4 labels".into()))?;
        out.push(arr);
        rest = &body[close + 1..];
    }
    Ok(out)
}

/// Resolves over-strand directions of PD tuples. Directions forced by
/// edge consistency are propagated first; remaining choices follow the
/// usual convention that labels increase along each component.
fn desugar_pd(text: &str) -> Result<Vec<Crossing>, DiagramError> {
    let tuples = parse_pd_tuples(text)?;
    let mut labels: Vec<i64> = tuples.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let id = |l: i64| labels.binary_search(&l).unwrap();
    let n = tuples.len();
    let slots: Vec<[usize; 4]> = tuples.iter().map(|t| t.map(id)).collect();

    let mut occ: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, s) in slots.iter().enumerate() {
        for p in 0..4 {
            occ.entry(s[p]).or_default().push((c, p));
        }
    }
    for (&e, v) in &occ {
        if v.len() != 2 {
            return Err(DiagramError::DisconnectedEdge { edge: e });
        }
    }

    let mut dirs: Vec<[Option<Dir>; 4]> = vec![[Some(Dir::In), None, Some(Dir::Out), None]; n];
    let set = |dirs: &mut Vec<[Option<Dir>; 4]>, c: usize, p: usize, d: Dir, e: usize| -> Result<bool, DiagramError> {
        match dirs[c][p] {
            Some(old) if old != d => Err(DiagramError::InconsistentOrientation {
                edge: e,
                detail: "PD labels force conflicting directions".into(),
            }),
            Some(_) => Ok(false),
            None => {
                dirs[c][p] = Some(d);
                Ok(true)
            }
        }
    };
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            for (&e, v) in &occ {
                let (a, b) = (v[0], v[1]);
                if let Some(d) = dirs[a.0][a.1] {
                    changed |= set(&mut dirs, b.0, b.1, d.flip(), e)?;
                }
                if let Some(d) = dirs[b.0][b.1] {
                    changed |= set(&mut dirs, a.0, a.1, d.flip(), e)?;
                }
            }
            for c in 0..n {
                for (p, q) in [(1, 3), (3, 1)] {
                    if let Some(d) = dirs[c][p] {
                        changed |= set(&mut dirs, c, q, d.flip(), slots[c][q])?;
                    }
                }
            }
        }
        let Some(c) = (0..n).find(|&c| dirs[c][1].is_none()) else {
            break;
        };
        let (j, l) = (tuples[c][1], tuples[c][3]);
        // over-strand runs l -> j when j follows l
        let l_to_j = j == l + 1 || l > j + 1;
        let d1 = if l_to_j { Dir::Out } else { Dir::In };
        set(&mut dirs, c, 1, d1, slots[c][1])?;
    }

    Ok((0..n)
        .map(|c| {
            let sign = if dirs[c][3] == Some(Dir::In) { 1 } else { -1 };
            Crossing::new(sign, slots[c])
        })
        .collect())
}
