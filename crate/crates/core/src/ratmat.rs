//! Small dense exact-rational matrices. Used for module realizations,
//! centralizer kernels and coordinate changes; sizes stay modest so plain
//! Gauss elimination over `BigRational` is fine.

use crate::Rat;
use num::{One, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl std::fmt::Debug for RatMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RatMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }
}

impl RatMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(nr, nc);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), nc);
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn row(&self, r: usize) -> Vec<Rat> {
        (0..self.cols).map(|c| self[(r, c)].clone()).collect()
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMat::zero(self.rows, other.cols);
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

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut s = Rat::zero();
                for c in 0..self.cols {
                    if !self[(r, c)].is_zero() {
                        s += &self[(r, c)] * &v[c];
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] += other.data[i].clone();
        }
        out
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] -= other.data[i].clone();
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> RatMat {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= k.clone();
        }
        out
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, other: &RatMat) -> RatMat {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Reduced row echelon form in place; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            for c in 0..self.cols {
                self.data.swap(row * self.cols + c, p * self.cols + c);
            }
            let inv = self[(row, col)].recip();
            for c in 0..self.cols {
                let v = &self[(row, c)] * &inv;
                self[(row, c)] = v;
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let f = self[(r, col)].clone();
                    for c in 0..self.cols {
                        let sub = &f * &self[(row, c)];
                        self[(r, c)] -= sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis (rows) of the right kernel `{x : self * x = 0}`.
    pub fn right_kernel(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[fc] = Rat::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(ri, fc)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = b`; `None` if inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = RatMat::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(ri, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix; `None` if singular.
    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = RatMat::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rat::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut inv = RatMat::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = aug[(r, n + c)].clone();
            }
        }
        Some(inv)
    }
}

/// Row space basis in reduced echelon form (zero rows dropped).
pub fn row_space_basis(rows: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        return vec![];
    }
    let mut m = RatMat::from_rows(rows);
    let pivots = m.rref();
    (0..pivots.len()).map(|r| m.row(r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn kernel_and_solve() {
        let m = RatMat::from_rows(vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
        ]);
        let k = m.right_kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
        let sol = m.solve(&[rat(6), rat(12)]).unwrap();
        assert_eq!(m.apply(&sol), vec![rat(6), rat(12)]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RatMat::from_rows(vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMat::identity(2));
    }
}
