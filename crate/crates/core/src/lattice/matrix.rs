//! Dense arbitrary-precision integer matrices with the two normal forms
//! everything else is built on: Hermite (row style, `U*M = H`) and Smith
//! (`U*M*V = S`). Sizes in this crate stay small (rank <= 16), so the
//! classical fraction-free algorithms are plenty.

use crate::{int, Int};
use num::{Integer, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = Int;
    fn index(&self, (r, c): (usize, usize)) -> &Int {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = int(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(nr, nc);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), nc, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    pub fn row(&self, r: usize) -> Vec<Int> {
        (0..self.cols).map(|c| self[(r, c)].clone()).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = IntMat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self[(r, k)].is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = &self[(r, k)] * &other[(k, c)];
                    out[(r, c)] += add;
                }
            }
        }
        out
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        (0..self.cols).all(|c| self[(r, c)].is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row a -= q * row b
    fn row_sub(&mut self, a: usize, b: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let sub = q * &self[(b, c)];
            self[(a, c)] -= sub;
        }
    }

    /// col a -= q * col b
    fn col_sub(&mut self, a: usize, b: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let sub = q * &self[(r, b)];
            self[(r, a)] -= sub;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self[(r, c)].clone();
            self[(r, c)] = v;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return int(1);
        }
        let mut a = self.clone();
        let mut sign = 1i64;
        let mut prev = int(1);
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return Int::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = &num / &prev;
                }
                a[(i, k)] = Int::zero();
            }
            prev = a[(k, k)].clone();
        }
        a[(n - 1, n - 1)].clone() * int(sign)
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs() == int(1)
    }

    /// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular
    /// and `U * self = H`. `H` is upper echelon with positive pivots and
    /// entries above each pivot reduced into `[0, pivot)`. Zero rows of `H`
    /// sink to the bottom.
    pub fn hnf(&self) -> (IntMat, IntMat) {
        let mut h = self.clone();
        let mut u = IntMat::identity(self.rows);
        let (m, n) = (self.rows, self.cols);
        let mut pivot = 0usize;
        for col in 0..n {
            if pivot >= m {
                break;
            }
            loop {
                // pick the row with the smallest nonzero |entry| in this column
                let mut best: Option<(usize, Int)> = None;
                for r in pivot..m {
                    let v = h[(r, col)].abs();
                    if v.is_zero() {
                        continue;
                    }
                    if best.as_ref().map_or(true, |(_, b)| v < *b) {
                        best = Some((r, v));
                    }
                }
                let Some((r, _)) = best else { break };
                h.swap_rows(pivot, r);
                u.swap_rows(pivot, r);
                let mut any_left = false;
                for r in pivot + 1..m {
                    if h[(r, col)].is_zero() {
                        continue;
                    }
                    let q = &h[(r, col)] / &h[(pivot, col)];
                    h.row_sub(r, pivot, &q);
                    u.row_sub(r, pivot, &q);
                    if !h[(r, col)].is_zero() {
                        any_left = true;
                    }
                }
                if !any_left {
                    break;
                }
            }
            if !h[(pivot, col)].is_zero() {
                if h[(pivot, col)].is_negative() {
                    h.negate_row(pivot);
                    u.negate_row(pivot);
                }
                for r in 0..pivot {
                    let q = h[(r, col)].div_floor(&h[(pivot, col)]);
                    h.row_sub(r, pivot, &q);
                    u.row_sub(r, pivot, &q);
                }
                pivot += 1;
            }
        }
        (h, u)
    }

    /// Smith normal form: `(U, S, V)` with `U * self * V = S`, `U`, `V`
    /// unimodular and `S` diagonal with a divisibility chain
    /// `S[0,0] | S[1,1] | ...`.
    pub fn snf(&self) -> (IntMat, IntMat, IntMat) {
        let mut s = self.clone();
        let mut u = IntMat::identity(self.rows);
        let mut v = IntMat::identity(self.cols);
        let (m, n) = (self.rows, self.cols);
        let dim = m.min(n);
        let mut t = 0usize;
        while t < dim {
            // locate a pivot: smallest nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize, Int)> = None;
            for r in t..m {
                for c in t..n {
                    let a = s[(r, c)].abs();
                    if a.is_zero() {
                        continue;
                    }
                    if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                        best = Some((r, c, a));
                    }
                }
            }
            let Some((pr, pc, _)) = best else { break };
            s.swap_rows(t, pr);
            u.swap_rows(t, pr);
            s.swap_cols(t, pc);
            v.swap_cols(t, pc);
            // clear row/col t; restart whenever a smaller remainder shows up
            let mut dirty = false;
            for r in t + 1..m {
                if s[(r, t)].is_zero() {
                    continue;
                }
                let q = &s[(r, t)] / &s[(t, t)];
                s.row_sub(r, t, &q);
                u.row_sub(r, t, &q);
                if !s[(r, t)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            for c in t + 1..n {
                if s[(t, c)].is_zero() {
                    continue;
                }
                let q = &s[(t, c)] / &s[(t, t)];
                s.col_sub(c, t, &q);
                v.col_sub(c, t, &q);
                if !s[(t, c)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the trailing block by s[t][t]
            let mut fixed = true;
            'scan: for r in t + 1..m {
                for c in t + 1..n {
                    if !(&s[(r, c)] % &s[(t, t)]).is_zero() {
                        // fold row r into row t so the offending entry
                        // enters the pivot row, then restart this step
                        let one = int(1);
                        for cc in 0..n {
                            let add = s[(r, cc)].clone();
                            s[(t, cc)] += add;
                        }
                        for cc in 0..m {
                            let add = u[(r, cc)].clone() * &one;
                            u[(t, cc)] += add;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if !fixed {
                continue;
            }
            if s[(t, t)].is_negative() {
                s.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        (u, s, v)
    }

    /// Basis (as rows) of the left integer kernel `{x : x * self = 0}`,
    /// extracted from the unimodular transform of the HNF.
    pub fn left_kernel(&self) -> IntMat {
        let (h, u) = self.hnf();
        let mut rows = Vec::new();
        for r in 0..self.rows {
            if h.is_zero_row(r) {
                rows.push(u.row(r));
            }
        }
        if rows.is_empty() {
            IntMat::zero(0, self.rows)
        } else {
            IntMat::from_rows(rows)
        }
    }

    pub fn rank(&self) -> usize {
        let (h, _) = self.hnf();
        (0..self.rows).filter(|&r| !h.is_zero_row(r)).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_identity_fixed() {
        let m = IntMat::identity(3);
        let (h, u) = m.hnf();
        assert_eq!(h, m);
        assert!(u.is_unimodular());
    }

    #[test]
    fn hnf_already_diagonal() {
        let m = IntMat::from_i64_rows(&[vec![2, 0], vec![0, 2]]);
        let (h, _) = m.hnf();
        assert_eq!(h, m);
    }

    #[test]
    fn snf_cartan_a2() {
        // Cartan matrix of A2: det 3, gcd of entries 1 -> diag(1, 3)
        let m = IntMat::from_i64_rows(&[vec![2, -1], vec![-1, 2]]);
        let (u, s, v) = m.snf();
        assert_eq!(s, IntMat::from_i64_rows(&[vec![1, 0], vec![0, 3]]));
        assert_eq!(u.mul(&m).mul(&v), s);
        assert!(u.is_unimodular() && v.is_unimodular());
    }

    #[test]
    fn snf_scalar() {
        let m = IntMat::from_i64_rows(&[vec![2]]);
        let (_, s, _) = m.snf();
        assert_eq!(s[(0, 0)], int(2));
        let m2 = IntMat::from_i64_rows(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        let (_, s2, _) = m2.snf();
        for i in 0..3 {
            assert_eq!(s2[(i, i)], int(2));
        }
    }

    #[test]
    fn left_kernel_simple() {
        let m = IntMat::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        let k = m.left_kernel();
        assert_eq!(k.rows, 1);
        let prod = k.mul(&m);
        assert!(prod.is_zero_row(0));
    }

    #[test]
    fn det_bareiss() {
        let m = IntMat::from_i64_rows(&[vec![2, 3, 1], vec![0, 1, -1], vec![4, 0, 2]]);
        assert_eq!(m.det(), int(2 * (1 * 2 - (-1) * 0) - 3 * (0 - (-4)) + 1 * (0 - 4)));
    }
}
