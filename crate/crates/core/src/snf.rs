//! Rank and elementary divisors of sparse integer matrices.
//!
//! Unit pivots are eliminated first on the sparse representation with
//! overflow-checked `i64` arithmetic. Whatever survives is diagonalized
//! densely over arbitrary-precision integers. Any diagonal form suffices:
//! the prime-power factorization of its entries is the elementary divisor
//! multiset.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Sparse integer matrix stored by rows.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BTreeMap<usize, i64>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        if v == 0 {
            return;
        }
        let slot = self.data[r].entry(c).or_insert(0);
        *slot += v;
        if *slot == 0 {
            self.data[r].remove(&c);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r].get(&c).copied().unwrap_or(0)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, &v)| (r, c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::new(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.add(c, r, v);
        }
        t
    }

    /// `self * other`, panicking on dimension mismatch.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = SparseMatrix::new(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (&k, &a) in row {
                for (&c, &b) in &other.data[k] {
                    out.add(r, c, a * b);
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            m[r][c] = v;
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SmithSummary {
    pub rank: usize,
    /// Prime-power elementary divisors greater than one, sorted.
    pub torsion: Vec<u64>,
}

pub fn smith(m: &SparseMatrix) -> SmithSummary {
    let mut rows: Vec<BTreeMap<usize, i64>> = m.data.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut rank = eliminate_units(&mut rows);
    let mut diag = Vec::new();
    rank += diagonalize(&rows, &mut diag);
    let mut torsion: Vec<u64> = diag.iter().flat_map(prime_powers).collect();
    torsion.sort_unstable();
    SmithSummary { rank, torsion }
}

/// Removes rows and columns through `±1` pivots and returns their number.
/// Stops early, leaving an equivalent matrix, if `i64` arithmetic would
/// overflow.
fn eliminate_units(rows: &mut Vec<BTreeMap<usize, i64>>) -> usize {
    // column -> rows containing it
    let mut col_rows: BTreeMap<usize, std::collections::BTreeSet<usize>> = BTreeMap::new();
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows.entry(c).or_default().insert(r);
        }
    }
    let mut pivots = 0;
    // Sweep the rows in order, pivoting on each row's unit entry with the
    // shortest column to limit fill-in. Eliminations can create new units,
    // so sweep again until a pass finds nothing.
    loop {
        let before = pivots;
        for pr in 0..rows.len() {
            let pick = rows[pr]
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .min_by_key(|(c, _)| col_rows[c].len())
                .map(|(&c, _)| c);
            let Some(pc) = pick else { continue };
            match pivot(rows, &mut col_rows, pr, pc) {
                Some(()) => pivots += 1,
                None => {
                    rows.retain(|r| !r.is_empty());
                    return pivots;
                }
            }
        }
        if pivots == before {
            break;
        }
    }
    rows.retain(|r| !r.is_empty());
    pivots
}

/// Clears column `pc` with the unit at row `pr`, then drops the pivot row.
/// Returns `None` on `i64` overflow; rows updated so far stay
/// row-equivalent, so the caller hands the rest to the dense phase.
fn pivot(
    rows: &mut [BTreeMap<usize, i64>],
    col_rows: &mut BTreeMap<usize, std::collections::BTreeSet<usize>>,
    pr: usize,
    pc: usize,
) -> Option<()> {
    let prow = rows[pr].clone();
    let pv = prow[&pc];
    let others: Vec<usize> = col_rows[&pc].iter().copied().filter(|&r| r != pr).collect();
    for r in others {
        let f = rows[r][&pc] * pv; // pv = ±1 so this is the exact multiplier
        let mut updated = rows[r].clone();
        for (&c, &v) in &prow {
            let old = updated.get(&c).copied().unwrap_or(0);
            let new = f.checked_mul(v).and_then(|fv| old.checked_sub(fv))?;
            if new == 0 {
                updated.remove(&c);
            } else {
                updated.insert(c, new);
            }
        }
        for &c in prow.keys() {
            let set = col_rows.get_mut(&c).unwrap();
            if updated.contains_key(&c) {
                set.insert(r);
            } else {
                set.remove(&r);
            }
        }
        rows[r] = updated;
    }
    for &c in prow.keys() {
        col_rows.get_mut(&c).unwrap().remove(&pr);
    }
    // column operations clear the rest of the pivot row; no other row
    // touches the pivot column any more
    rows[pr].clear();
    Some(())
}

/// Dense diagonalization over `BigInt`; pushes nonzero diagonal entries and
/// returns their count.
fn diagonalize(rows: &[BTreeMap<usize, i64>], diag: &mut Vec<BigInt>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols: Vec<usize> = {
        let mut c: Vec<usize> = rows.iter().flat_map(|r| r.keys().copied()).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    let cidx: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let (nr, nc) = (rows.len(), cols.len());
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); nc]; nr];
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row {
            a[r][cidx[c]] = BigInt::from(v);
        }
    }
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in a.iter().enumerate().skip(t) {
            for (c, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(br, bc)| v.abs() < a[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        a.swap(t, br);
        for row in a.iter_mut() {
            row.swap(t, bc);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for r in t + 1..nr {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&p);
                for c in t..nc {
                    let sub = &q * &a[t][c];
                    a[r][c] -= sub;
                }
                if !a[r][t].is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..nc {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&p);
                for r in t..nr {
                    let sub = &q * &a[r][t];
                    a[r][c] -= sub;
                }
                if !a[t][c].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // move the smallest remainder in row/column t onto the diagonal
            let mut best = (t, t);
            for r in t + 1..nr {
                if !a[r][t].is_zero() && a[r][t].abs() < a[best.0][best.1].abs() {
                    best = (r, t);
                }
            }
            for c in t + 1..nc {
                if !a[t][c].is_zero() && a[t][c].abs() < a[best.0][best.1].abs() {
                    best = (t, c);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            } else if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    t
}

fn prime_powers(n: &BigInt) -> Vec<u64> {
    if n.is_one() {
        return Vec::new();
    }
    let mut n = n.to_u64().expect("elementary divisor exceeds u64");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(m: &[&[i64]]) -> SparseMatrix {
        let mut s = SparseMatrix::new(m.len(), m.first().map_or(0, |r| r.len()));
        for (r, row) in m.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                s.add(r, c, v);
            }
        }
        s
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(smith(&from_dense(&[&[1, 0], &[0, 1]])).rank, 2);
        assert_eq!(smith(&SparseMatrix::new(3, 4)), SmithSummary::default());
    }

    #[test]
    fn torsion_is_split_into_prime_powers() {
        let s = smith(&from_dense(&[&[2, 0], &[0, 6]]));
        assert_eq!(s.rank, 2);
        assert_eq!(s.torsion, vec![2, 2, 3]);
        let s = smith(&from_dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        // invariant factors 2, 6, 12
        assert_eq!(s.rank, 3);
        assert_eq!(s.torsion, vec![2, 2, 3, 3, 4]);
    }

    #[test]
    fn unit_elimination_then_dense() {
        let s = smith(&from_dense(&[&[1, 2, 0], &[3, 4, 0], &[0, 0, 0]]));
        // det = -2
        assert_eq!(s.rank, 2);
        assert_eq!(s.torsion, vec![2]);
    }

    #[test]
    fn transpose_and_product() {
        let a = from_dense(&[&[1, 2], &[0, 3]]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.mul(&a).to_dense(), vec![vec![1, 8], vec![0, 9]]);
    }
}
