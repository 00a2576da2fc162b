//! Linear algebra over `F_p`: an incremental sparse echelon form that can
//! express a vector in the row span as a combination of the inserted rows,
//! plus small dense helpers.

use std::collections::HashMap;

use crate::coeff::{add_mod, inv_mod, mul_mod, sub_mod, Scalar};

/// Sparse vector: `(column, value)` pairs, strictly increasing columns,
/// nonzero values.
pub type SparseVec = Vec<(u32, u64)>;

/// `a - c * b` over `F_p`.
fn axpy_neg(a: &SparseVec, c: u64, b: &SparseVec, p: u64) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |x| x.0);
        let cb = b.get(j).map_or(u32::MAX, |x| x.0);
        if ca < cb {
            out.push(a[i]);
            i += 1;
        } else if cb < ca {
            let v = sub_mod(0, mul_mod(c, b[j].1, p), p);
            if v != 0 {
                out.push((cb, v));
            }
            j += 1;
        } else {
            let v = sub_mod(a[i].1, mul_mod(c, b[j].1, p), p);
            if v != 0 {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Build a canonical sparse vector from unsorted entries.
pub fn sparse_from(mut entries: Vec<(u32, u64)>, p: u64) -> SparseVec {
    entries.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = add_mod(last.1, v, p),
            _ => out.push((c, v % p)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

struct Pivot {
    row: SparseVec,
    origin: usize,
    /// `row = scale * (input[origin] - sum coef * pivot[idx])`
    scale: u64,
    parents: Vec<(u32, u64)>,
}

/// Row echelon form built one row at a time.
///
/// Pivot rows are normalized to leading coefficient 1 and reduced only on
/// their leading entry. With `track = true` each pivot remembers how it was
/// obtained, so [`Echelon::solve`] can return coefficients on the original
/// inserted rows.
pub struct Echelon {
    p: u64,
    track: bool,
    by_col: HashMap<u32, u32>,
    pivots: Vec<Pivot>,
    inserted: usize,
}

impl Echelon {
    pub fn new(p: u64, track: bool) -> Self {
        Self {
            p,
            track,
            by_col: HashMap::new(),
            pivots: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Number of rows inserted so far (row ids are `0..inserted`).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce(&self, mut v: SparseVec, ops: &mut Vec<(u32, u64)>) -> SparseVec {
        while let Some(&(col, val)) = v.first() {
            let Some(&pi) = self.by_col.get(&col) else {
                break;
            };
            v = axpy_neg(&v, val, &self.pivots[pi as usize].row, self.p);
            if self.track {
                ops.push((pi, val));
            }
        }
        v
    }

    /// Insert the next row; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let origin = self.inserted;
        self.inserted += 1;
        let mut ops = Vec::new();
        let mut r = self.reduce(v, &mut ops);
        let Some(&(col, lead)) = r.first() else {
            return false;
        };
        let scale = inv_mod(lead, self.p);
        for e in r.iter_mut() {
            e.1 = mul_mod(e.1, scale, self.p);
        }
        self.by_col.insert(col, self.pivots.len() as u32);
        self.pivots.push(Pivot {
            row: r,
            origin,
            scale,
            parents: if self.track { ops } else { Vec::new() },
        });
        true
    }

    /// Whether `v` lies in the row span.
    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v, &mut Vec::new()).is_empty()
    }

    /// Residue of `v` modulo the row span (zero iff `v` is in the span).
    pub fn residue(&self, v: SparseVec) -> SparseVec {
        self.reduce(v, &mut Vec::new())
    }

    /// Coefficients `c` on inserted rows with `sum c_i row_i = v`, or `None`
    /// when `v` is outside the span. Requires tracking.
    pub fn solve(&self, v: SparseVec) -> Option<Vec<(usize, u64)>> {
        assert!(self.track, "solve needs an echelon built with tracking");
        let mut ops = Vec::new();
        if !self.reduce(v, &mut ops).is_empty() {
            return None;
        }
        Some(self.expand(&ops))
    }

    /// Like [`Echelon::solve`] but for the part of `v` that reduces away:
    /// returns `(residue, combination)` with `v = residue + sum c_i row_i`.
    pub fn decompose(&self, v: SparseVec) -> (SparseVec, Vec<(usize, u64)>) {
        assert!(self.track, "decompose needs an echelon built with tracking");
        let mut ops = Vec::new();
        let res = self.full_reduce(v, &mut ops);
        (res, self.expand(&ops))
    }

    /// Reduce every entry that sits on a pivot column, not only the leading
    /// one, so the residue is a canonical normal form.
    fn full_reduce(&self, mut v: SparseVec, ops: &mut Vec<(u32, u64)>) -> SparseVec {
        let mut kept: SparseVec = Vec::new();
        loop {
            let Some(&(col, val)) = v.first() else {
                break;
            };
            match self.by_col.get(&col) {
                Some(&pi) => {
                    v = axpy_neg(&v, val, &self.pivots[pi as usize].row, self.p);
                    ops.push((pi, val));
                }
                None => {
                    kept.push((col, val));
                    v.remove(0);
                }
            }
        }
        kept
    }

    fn expand(&self, ops: &[(u32, u64)]) -> Vec<(usize, u64)> {
        let p = self.p;
        let mut lambda: HashMap<u32, u64> = HashMap::new();
        for &(pi, c) in ops {
            let e = lambda.entry(pi).or_insert(0);
            *e = add_mod(*e, c, p);
        }
        let mut order: Vec<u32> = lambda.keys().copied().collect();
        order.sort_unstable();
        let mut out: HashMap<usize, u64> = HashMap::new();
        // Parents always have smaller indices, so a max-heap walk sees every
        // contribution to a pivot before expanding it.
        let mut heap: std::collections::BinaryHeap<u32> = order.into_iter().collect();
        let mut done = std::collections::HashSet::new();
        while let Some(pi) = heap.pop() {
            if !done.insert(pi) {
                continue;
            }
            let l = lambda.get(&pi).copied().unwrap_or(0);
            if l == 0 {
                continue;
            }
            let piv = &self.pivots[pi as usize];
            let ls = mul_mod(l, piv.scale, p);
            let e = out.entry(piv.origin).or_insert(0);
            *e = add_mod(*e, ls, p);
            for &(pj, c) in &piv.parents {
                let e = lambda.entry(pj).or_insert(0);
                *e = sub_mod(*e, mul_mod(ls, c, p), p);
                heap.push(pj);
            }
        }
        let mut out: Vec<(usize, u64)> = out.into_iter().filter(|e| e.1 != 0).collect();
        out.sort_unstable();
        out
    }
}

/// Rank of a dense matrix over `F_p`.
pub fn dense_rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut e = Echelon::new(p, false);
    for r in rows {
        let v = r
            .iter()
            .enumerate()
            .filter(|(_, &x)| x % p != 0)
            .map(|(c, &x)| (c as u32, x % p))
            .collect();
        e.insert(v);
    }
    e.rank()
}

/// Basis of `{x : M x = 0}` for an `m x n` dense matrix over `F_p`.
pub fn dense_nullspace(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..a.len()).find(|&k| a[k][c] != 0) else {
            continue;
        };
        a.swap(r, k);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for k in 0..a.len() {
            if k != r && a[k][c] != 0 {
                let f = a[k][c];
                for j in 0..ncols {
                    let t = mul_mod(f, a[r][j], p);
                    a[k][j] = sub_mod(a[k][j], t, p);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = sub_mod(0, a[i][f], p);
            }
            v
        })
        .collect()
}

/// Rank over `Q(q1, q2)` by fraction-free-free Gaussian elimination on
/// exact scalars. Meant for small matrices.
pub fn exact_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(k) = (rank..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, k);
        let inv = rows[rank][c].inv().expect("nonzero pivot");
        let piv: Vec<Scalar> = rows[rank].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..ncols {
                let t = &f * &piv[j];
                row[j] -= &t;
            }
        }
        rows[rank] = piv;
        rank += 1;
    }
    rank
}
