//! Exact rational linear algebra.
//!
//! Rank, nullspace and solving are done by fraction-free (Bareiss) Gaussian
//! elimination over arbitrary-precision integers, after clearing denominators
//! row by row. No pivot thresholds exist anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Q = BigRational;

/// Shorthand for an integer as a rational.
pub fn qz(n: i64) -> Q {
    Q::from_integer(Int::from(n))
}

/// Shorthand for the rational n/d.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(Int::from(n), Int::from(d))
}

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    a: Vec<Q>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, a: vec![Q::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Mat { rows: r, cols: c, a: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.a[i * self.cols + j] = v;
    }

    /// Integer matrix with the same row space and kernel, obtained by scaling
    /// each row by the lcm of its denominators.
    fn cleared(&self) -> Vec<Vec<Int>> {
        (0..self.rows)
            .map(|i| {
                let row = &self.a[i * self.cols..(i + 1) * self.cols];
                let mut lcm = Int::one();
                for v in row {
                    let d = v.denom();
                    let g = num_integer::gcd(lcm.clone(), d.clone());
                    lcm = lcm / g * d;
                }
                row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut m = self.cleared();
        bareiss(&mut m, self.cols).len()
    }

    /// Basis of the right kernel {x : A x = 0}.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut m = self.cleared();
        let pivots = bareiss(&mut m, self.cols);
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> =
            (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::with_capacity(free_cols.len());
        for &fc in &free_cols {
            let mut x = vec![Q::zero(); self.cols];
            x[fc] = Q::one();
            // Back-substitute through the echelon rows, bottom-up.
            for &(r, c) in pivots.iter().rev() {
                let mut s = Q::zero();
                for j in c + 1..self.cols {
                    if !m[r][j].is_zero() && !x[j].is_zero() {
                        s += Q::from_integer(m[r][j].clone()) * &x[j];
                    }
                }
                x[c] = -s / Q::from_integer(m[r][c].clone());
            }
            basis.push(x);
        }
        basis
    }

    /// One solution of A x = b, if the system is consistent.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let mut m = aug.cleared();
        // Eliminate only over the coefficient columns.
        let pivots = bareiss(&mut m, self.cols);
        // Any leftover nonzero entry in the b-column of a pivotless row means
        // the system is inconsistent.
        let pivot_rows: Vec<usize> = pivots.iter().map(|&(r, _)| r).collect();
        for (r, row) in m.iter().enumerate() {
            if !pivot_rows.contains(&r) && !row[self.cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![Q::zero(); self.cols];
        for &(r, c) in pivots.iter().rev() {
            let mut s = Q::from_integer(m[r][self.cols].clone());
            for j in c + 1..self.cols {
                if !m[r][j].is_zero() && !x[j].is_zero() {
                    s -= Q::from_integer(m[r][j].clone()) * &x[j];
                }
            }
            x[c] = s / Q::from_integer(m[r][c].clone());
        }
        Some(x)
    }
}

/// Fraction-free Bareiss elimination to row echelon form, in place.
///
/// Eliminates over columns `0..cols` (the slice rows may be longer, e.g. for
/// augmented systems; trailing columns are updated but never pivoted on).
/// Returns the (row, col) pivot positions in elimination order.
fn bareiss(m: &mut [Vec<Int>], cols: usize) -> Vec<(usize, usize)> {
    let rows = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prev = Int::one();
    let mut r = 0;
    for c in 0..cols {
        // Partial pivot: smallest nonzero magnitude keeps entries modest.
        let mut best: Option<usize> = None;
        for i in r..rows {
            if !m[i][c].is_zero()
                && best.is_none_or(|b| m[i][c].abs() < m[b][c].abs())
            {
                best = Some(i);
            }
        }
        let Some(p) = best else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in 0..width {
                if j == c {
                    continue;
                }
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = Int::zero();
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Kernel dimension of a sparse linear map given by columns.
///
/// Splits columns into connected components (columns sharing a row index are
/// linked) and runs dense elimination per component; columns with empty
/// support contribute directly to the kernel.
pub fn kernel_dim_sparse(cols: &[Vec<(usize, Q)>]) -> usize {
    let n = cols.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    let mut row_owner: std::collections::HashMap<usize, usize> =
        std::collections::HashMap::new();
    for (ci, col) in cols.iter().enumerate() {
        for (ri, _) in col {
            match row_owner.get(ri) {
                Some(&other) => {
                    let a = find(&mut parent, ci);
                    let b = find(&mut parent, other);
                    parent[a] = b;
                }
                None => {
                    row_owner.insert(*ri, ci);
                }
            }
        }
    }
    let mut groups: std::collections::HashMap<usize, Vec<usize>> =
        std::collections::HashMap::new();
    for ci in 0..n {
        if cols[ci].is_empty() {
            continue;
        }
        let r = find(&mut parent, ci);
        groups.entry(r).or_default().push(ci);
    }
    let empty = cols.iter().filter(|c| c.is_empty()).count();
    let mut kernel = empty;
    for (_, group) in groups {
        let mut row_ids: Vec<usize> = group
            .iter()
            .flat_map(|&ci| cols[ci].iter().map(|(r, _)| *r))
            .collect();
        row_ids.sort_unstable();
        row_ids.dedup();
        let rmap: std::collections::HashMap<usize, usize> =
            row_ids.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let mut mat = Mat::zero(row_ids.len(), group.len());
        for (j, &ci) in group.iter().enumerate() {
            for (ri, v) in &cols[ci] {
                mat.set(rmap[ri], j, v.clone());
            }
        }
        kernel += group.len() - mat.rank();
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain rational Gauss-Jordan rank, kept independent of the Bareiss path.
    fn oracle_rank(rows: Vec<Vec<Q>>) -> usize {
        let mut m = rows;
        let nrows = m.len();
        let ncols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..nrows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][c].clone();
            for j in 0..ncols {
                let v = m[rank][j].clone() / &inv;
                m[rank][j] = v;
            }
            for i in 0..nrows {
                if i != rank && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..ncols {
                        let v = m[i][j].clone() - &f * &m[rank][j];
                        m[i][j] = v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn simple_rng(seed: u64) -> impl FnMut() -> i64 {
        let mut s = seed;
        move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 33) as i64 % 7) - 3
        }
    }

    #[test]
    fn rank_matches_oracle_on_random_matrices() {
        let mut rng = simple_rng(12345);
        for trial in 0..60 {
            let rows = 1 + trial % 7;
            let cols = 1 + (trial / 3) % 8;
            let m: Vec<Vec<Q>> = (0..rows)
                .map(|_| (0..cols).map(|_| qr(rng(), 1 + rng().abs().max(1))).collect())
                .collect();
            assert_eq!(Mat::from_rows(m.clone()).rank(), oracle_rank(m));
        }
    }

    #[test]
    fn nullspace_vectors_are_in_kernel_and_complete() {
        let mut rng = simple_rng(999);
        for trial in 0..40 {
            let rows = 1 + trial % 6;
            let cols = 1 + (trial / 2) % 7;
            let rowsv: Vec<Vec<Q>> =
                (0..rows).map(|_| (0..cols).map(|_| qz(rng())).collect()).collect();
            let m = Mat::from_rows(rowsv.clone());
            let ns = m.nullspace();
            assert_eq!(ns.len(), cols - m.rank());
            for x in &ns {
                for row in &rowsv {
                    let s: Q = row.iter().zip(x).map(|(a, b)| a * b).sum();
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn solve_finds_solutions_and_detects_inconsistency() {
        // x + y = 3, x - y = 1  =>  x = 2, y = 1
        let m = Mat::from_rows(vec![vec![qz(1), qz(1)], vec![qz(1), qz(-1)]]);
        let x = m.solve(&[qz(3), qz(1)]).unwrap();
        assert_eq!(x, vec![qz(2), qz(1)]);
        // Inconsistent: x + y = 1, x + y = 2
        let m = Mat::from_rows(vec![vec![qz(1), qz(1)], vec![qz(1), qz(1)]]);
        assert!(m.solve(&[qz(1), qz(2)]).is_none());
        // Underdetermined but consistent.
        let m = Mat::from_rows(vec![vec![qz(1), qz(1)]]);
        let x = m.solve(&[qz(5)]).unwrap();
        assert_eq!(x[0].clone() + &x[1], qz(5));
    }

    #[test]
    fn sparse_kernel_dim_agrees_with_dense() {
        let mut rng = simple_rng(777);
        for _ in 0..30 {
            let cols = 8;
            let rows = 6;
            let mut sparse: Vec<Vec<(usize, Q)>> = Vec::new();
            let mut dense = vec![vec![Q::zero(); cols]; rows];
            for c in 0..cols {
                let mut col = Vec::new();
                for r in 0..rows {
                    let v = rng();
                    if v.rem_euclid(3) == 0 && v != 0 {
                        col.push((r, qz(v)));
                        dense[r][c] = qz(v);
                    }
                }
                sparse.push(col);
            }
            let dim = kernel_dim_sparse(&sparse);
            let m = Mat::from_rows(dense);
            assert_eq!(dim, cols - m.rank());
        }
    }
}
