//! Exact integer-lattice arithmetic: normal forms, membership, quotient
//! structure, annihilators and character kernels.
//!
//! Every lattice is canonicalized to Hermite normal form at construction,
//! so structural equality of bases is mathematical equality of lattices.
//! Arbitrary-precision integers are used throughout; there is no floating
//! point in this module.

pub mod matrix;

use crate::{int, Error, Int, Rat, Result};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use matrix::IntMat;

/// Hermite normal form with transform, `U * m = H`.
pub fn hnf(m: &IntMat) -> (IntMat, IntMat) {
    m.hnf()
}

/// Smith normal form with transforms, `U * m * V = S`.
pub fn snf(m: &IntMat) -> (IntMat, IntMat, IntMat) {
    m.snf()
}

/// A full- or partial-rank integer lattice inside `Z^ambient_rank`,
/// stored by a Hermite-normal-form basis (rows are generators).
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    basis: IntMat,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice(ambient={}, basis={:?})", self.ambient, self.basis)
    }
}

impl Lattice {
    pub fn from_rows(ambient: usize, rows: Vec<Vec<Int>>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), ambient, "generator has wrong length");
        }
        if rows.is_empty() {
            return Lattice { ambient, basis: IntMat::zero(0, ambient) };
        }
        let m = IntMat::from_rows(rows);
        let (h, _) = m.hnf();
        let kept: Vec<Vec<Int>> =
            (0..h.rows).filter(|&r| !h.is_zero_row(r)).map(|r| h.row(r)).collect();
        let basis =
            if kept.is_empty() { IntMat::zero(0, ambient) } else { IntMat::from_rows(kept) };
        Lattice { ambient, basis }
    }

    pub fn from_i64_rows(ambient: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(ambient, rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    pub fn zero(ambient: usize) -> Self {
        Lattice { ambient, basis: IntMat::zero(0, ambient) }
    }

    /// The full lattice `Z^ambient`.
    pub fn full(ambient: usize) -> Self {
        Lattice { ambient, basis: IntMat::identity(ambient) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Int>> {
        self.basis.rows_vec()
    }

    /// Multiply every generator by `k`.
    pub fn scale(&self, k: i64) -> Lattice {
        let rows = self
            .basis_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|v| v * int(k)).collect())
            .collect();
        Lattice::from_rows(self.ambient, rows)
    }

    /// Solve `x * basis = v` over the integers by echelon back-substitution.
    fn solve_int(&self, v: &[Int]) -> Option<Vec<Int>> {
        let mut rem: Vec<Int> = v.to_vec();
        let mut coeffs = vec![Int::zero(); self.basis.rows];
        for r in 0..self.basis.rows {
            let pivot_col = (0..self.ambient).find(|&c| !self.basis[(r, c)].is_zero())?;
            let (q, m) = num::Integer::div_rem(&rem[pivot_col], &self.basis[(r, pivot_col)]);
            if !m.is_zero() {
                return None;
            }
            for c in 0..self.ambient {
                let sub = &q * &self.basis[(r, c)];
                rem[c] -= sub;
            }
            coeffs[r] = q;
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(coeffs)
        } else {
            None
        }
    }

    /// Solve `x * basis = v` over the rationals.
    fn solve_rat(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let mut rem: Vec<Rat> = v.to_vec();
        let mut coeffs = vec![Rat::zero(); self.basis.rows];
        for r in 0..self.basis.rows {
            let pivot_col = (0..self.ambient).find(|&c| !self.basis[(r, c)].is_zero())?;
            let q = &rem[pivot_col] / Rat::from_integer(self.basis[(r, pivot_col)].clone());
            for c in 0..self.ambient {
                let sub = &q * Rat::from_integer(self.basis[(r, c)].clone());
                rem[c] -= sub;
            }
            coeffs[r] = q;
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn member(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.solve_int(v).is_some()
    }

    pub fn member_i64(&self, v: &[i64]) -> bool {
        let vv: Vec<Int> = v.iter().map(|&x| int(x)).collect();
        self.member(&vv)
    }

    pub fn contains(&self, other: &Lattice) -> bool {
        other.basis_rows().iter().all(|r| self.member(r))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Lattice::from_rows(self.ambient, rows)
    }

    /// Intersection, computed from the left kernel of the stacked-basis
    /// relation `x*A - y*B = 0`.
    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        if self.rank() == 0 || other.rank() == 0 {
            return Lattice::zero(self.ambient);
        }
        let mut stacked = Vec::new();
        stacked.extend(self.basis_rows());
        stacked.extend(other.basis_rows());
        let m = IntMat::from_rows(stacked);
        let k = m.left_kernel();
        let mut rows = Vec::new();
        for r in 0..k.rows {
            let mut v = vec![Int::zero(); self.ambient];
            for i in 0..self.basis.rows {
                for c in 0..self.ambient {
                    let add = &k[(r, i)] * &self.basis[(i, c)];
                    v[c] += add;
                }
            }
            rows.push(v);
        }
        Lattice::from_rows(self.ambient, rows)
    }

    /// Direct sum as block-diagonal lattice in the concatenated ambient space.
    pub fn direct_sum(parts: &[Lattice]) -> Lattice {
        let ambient: usize = parts.iter().map(|p| p.ambient).sum();
        let mut rows = Vec::new();
        let mut offset = 0usize;
        for p in parts {
            for r in p.basis_rows() {
                let mut v = vec![Int::zero(); ambient];
                v[offset..offset + p.ambient].clone_from_slice(&r);
                rows.push(v);
            }
            offset += p.ambient;
        }
        Lattice::from_rows(ambient, rows)
    }

    /// Coordinates of `small`'s basis in `big`'s basis (integer because of
    /// nesting), as a `rank(small) x rank(big)` matrix.
    fn coordinate_matrix(big: &Lattice, small: &Lattice) -> Result<IntMat> {
        let mut rows = Vec::new();
        for r in small.basis_rows() {
            let coords = big.solve_int(&r).ok_or(Error::NonNested)?;
            rows.push(coords);
        }
        Ok(if rows.is_empty() {
            IntMat::zero(0, big.rank())
        } else {
            IntMat::from_rows(rows)
        })
    }
}

/// Index `[big : small]`; `None` stands for infinite index.
pub fn index(big: &Lattice, small: &Lattice) -> Result<Option<Int>> {
    let c = Lattice::coordinate_matrix(big, small)?;
    if small.rank() < big.rank() {
        return Ok(None);
    }
    Ok(Some(c.det().abs()))
}

/// Finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_k`
/// with `d_1 | d_2 | ... | d_k`, each `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianQuotient {
    pub free_rank: usize,
    #[serde(with = "crate::lattice::serde_ints")]
    pub invariant_factors: Vec<Int>,
}

impl AbelianQuotient {
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().fold(Int::one(), |a, b| a * b))
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }
}

/// Structure of `big / small` via the Smith normal form of the coordinate
/// matrix of `small`'s basis in `big`'s basis.
pub fn quotient(big: &Lattice, small: &Lattice) -> Result<AbelianQuotient> {
    let c = Lattice::coordinate_matrix(big, small)?;
    let (_, s, _) = c.snf();
    let dim = c.rows.min(c.cols);
    let mut factors = Vec::new();
    let mut nonzero = 0usize;
    for i in 0..dim {
        if s[(i, i)].is_zero() {
            continue;
        }
        nonzero += 1;
        if s[(i, i)].abs() > int(1) {
            factors.push(s[(i, i)].abs());
        }
    }
    factors.sort();
    Ok(AbelianQuotient { free_rank: big.rank() - nonzero, invariant_factors: factors })
}

/// Order of the image of `v` in `big/small`; `None` stands for infinite.
pub fn order_in_quotient(big: &Lattice, small: &Lattice, v: &[Int]) -> Result<Option<Int>> {
    if !big.member(v) {
        return Err(Error::NonNested);
    }
    let vr: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
    let Some(coords) = small.solve_rat(&vr) else {
        return Ok(None); // not in the rational span of `small`
    };
    let mut k = Int::one();
    for c in &coords {
        let d = c.denom().clone();
        k = num::Integer::lcm(&k, &d);
    }
    Ok(Some(k))
}

/// A rational character on a lattice, `x -> <c, x> mod 1`, used to present
/// elements of the dual of a finite quotient group.
pub type RationalCharacter = Vec<Rat>;

/// The sublattice `{x in X : <c_j, x> in Z for all j}` for characters that
/// are trivial on `lam` (so they descend to `X/lam`). Always contains `lam`.
pub fn annihilator_preimage(
    x: &Lattice,
    lam: &Lattice,
    gens: &[RationalCharacter],
) -> Result<Lattice> {
    if !x.contains(lam) {
        return Err(Error::NonNested);
    }
    for g in gens {
        assert_eq!(g.len(), x.ambient_rank());
        for row in lam.basis_rows() {
            let mut pair = Rat::zero();
            for (a, b) in row.iter().zip(g.iter()) {
                pair += Rat::from_integer(a.clone()) * b;
            }
            if !pair.denom().is_one() {
                return Err(Error::CharacterNotDefined);
            }
        }
    }
    if gens.is_empty() {
        return Ok(x.clone());
    }
    let r = x.rank();
    // q_j = basis * c_j in Q^r; condition on coords t: t . q_j in Z
    let mut w_cols: Vec<Vec<Int>> = Vec::new();
    let mut moduli: Vec<Int> = Vec::new();
    for g in gens {
        let mut q = vec![Rat::zero(); r];
        for (i, row) in x.basis_rows().iter().enumerate() {
            for (a, b) in row.iter().zip(g.iter()) {
                q[i] += Rat::from_integer(a.clone()) * b;
            }
        }
        let mut d = Int::one();
        for e in &q {
            d = num::Integer::lcm(&d, e.denom());
        }
        let w: Vec<Int> = q.iter().map(|e| (e * Rat::from_integer(d.clone())).to_integer()).collect();
        w_cols.push(w);
        moduli.push(d);
    }
    // Solve t * W = s * D for integer (t, s): left kernel of [W; -D] stacked.
    let k = gens.len();
    let mut stacked = IntMat::zero(r + k, k);
    for (j, w) in w_cols.iter().enumerate() {
        for i in 0..r {
            stacked[(i, j)] = w[i].clone();
        }
        stacked[(r + j, j)] = -moduli[j].clone();
    }
    let kern = stacked.left_kernel();
    let mut rows = Vec::new();
    for kr in 0..kern.rows {
        let mut v = vec![Int::zero(); x.ambient_rank()];
        for i in 0..r {
            for c in 0..x.ambient_rank() {
                let add = &kern[(kr, i)] * &x.basis()[(i, c)];
                v[c] += add;
            }
        }
        rows.push(v);
    }
    let result = Lattice::from_rows(x.ambient_rank(), rows);
    debug_assert!(result.contains(lam));
    Ok(result)
}

/// Description of the diagonalizable group `cap_{chi in X} ker chi` inside
/// a torus of rank `ambient_rank(X)`: a subtorus of rank `torus_rank` times
/// a finite group with the given invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterKernel {
    pub torus_rank: usize,
    #[serde(with = "crate::lattice::serde_ints")]
    pub invariant_factors: Vec<Int>,
    #[serde(skip)]
    pub characters: IntMat,
}

impl CharacterKernel {
    pub fn is_trivial(&self) -> bool {
        self.torus_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn finite_order(&self) -> Option<Int> {
        if self.torus_rank > 0 {
            None
        } else {
            Some(self.invariant_factors.iter().fold(Int::one(), |a, b| a * b))
        }
    }
}

/// Common kernel of all characters of `X` on the torus `(C^*)^R`,
/// `R = ambient_rank(X)`, via the Smith normal form of the character matrix.
pub fn kernel_subgroup(x: &Lattice) -> CharacterKernel {
    let m = x.basis().clone();
    let r = x.ambient_rank();
    if m.rows == 0 {
        return CharacterKernel { torus_rank: r, invariant_factors: vec![], characters: m };
    }
    let (_, s, _) = m.snf();
    let dim = m.rows.min(m.cols);
    let mut rank = 0usize;
    let mut factors = Vec::new();
    for i in 0..dim {
        if s[(i, i)].is_zero() {
            continue;
        }
        rank += 1;
        if s[(i, i)].abs() > int(1) {
            factors.push(s[(i, i)].abs());
        }
    }
    factors.sort();
    CharacterKernel { torus_rank: r - rank, invariant_factors: factors, characters: x.basis().clone() }
}

/// serde helpers: big integers as decimal strings, to keep JSON exact.
pub mod serde_ints {
    use crate::Int;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &Vec<Int>, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        serde::Serialize::serialize(&strs, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let strs: Vec<String> = Vec::deserialize(d)?;
        strs.iter()
            .map(|x| Int::from_str(x).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// JSON form of a lattice: ambient rank plus basis rows as decimal strings.
#[derive(Serialize, Deserialize)]
pub struct LatticeJson {
    pub ambient_rank: usize,
    pub basis: Vec<Vec<String>>,
}

impl From<&Lattice> for LatticeJson {
    fn from(l: &Lattice) -> Self {
        LatticeJson {
            ambient_rank: l.ambient_rank(),
            basis: l
                .basis_rows()
                .iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }
}

impl LatticeJson {
    pub fn to_lattice(&self) -> Result<Lattice> {
        use std::str::FromStr;
        let mut rows = Vec::new();
        for r in &self.basis {
            let mut row = Vec::new();
            for v in r {
                row.push(Int::from_str(v).map_err(|e| Error::Parse(e.to_string()))?);
            }
            if row.len() != self.ambient_rank {
                return Err(Error::Dimension { expected: self.ambient_rank, got: row.len() });
            }
            rows.push(row);
        }
        Ok(Lattice::from_rows(self.ambient_rank, rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(ambient: usize, rows: &[Vec<i64>]) -> Lattice {
        Lattice::from_i64_rows(ambient, rows)
    }

    #[test]
    fn membership_and_sum() {
        let l = lat(2, &[vec![1, 1], vec![0, 3]]);
        assert!(l.member_i64(&[1, 4]));
        assert!(!l.member_i64(&[0, 1]));
        let two = l.scale(2);
        assert_eq!(l.sum(&two), l);
    }

    #[test]
    fn index_scaling() {
        let l = Lattice::full(3);
        let l2 = l.scale(2);
        assert_eq!(index(&l, &l2).unwrap(), Some(int(8)));
        assert_eq!(index(&l2, &l).err().is_some(), true);
    }

    #[test]
    fn quotient_by_double() {
        let l = Lattice::full(3);
        let q = quotient(&l, &l.scale(2)).unwrap();
        assert_eq!(q.free_rank, 0);
        assert_eq!(q.invariant_factors, vec![int(2), int(2), int(2)]);
    }

    #[test]
    fn intersect_basic() {
        let a = lat(2, &[vec![2, 0], vec![0, 1]]);
        let b = lat(2, &[vec![1, 0], vec![0, 3]]);
        let c = a.intersect(&b);
        assert!(c.member_i64(&[2, 0]) && c.member_i64(&[0, 3]));
        assert!(!c.member_i64(&[1, 0]) && !c.member_i64(&[0, 1]));
        assert_eq!(index(&Lattice::full(2), &c).unwrap(), Some(int(6)));
    }

    #[test]
    fn annihilator_preimage_examples() {
        // X = Z^1, Lam = 4Z: X/Lam = Z/4. Order-2 subgroup generated by the
        // character x -> x/2 mod 1: preimage is 2Z (index 2 in X).
        let x = Lattice::full(1);
        let lam = x.scale(4);
        let halves = vec![vec![Rat::new(int(1), int(2))]];
        let pre = annihilator_preimage(&x, &lam, &halves).unwrap();
        assert_eq!(pre, x.scale(2));
        // empty generator set -> X itself
        assert_eq!(annihilator_preimage(&x, &lam, &[]).unwrap(), x);
        // full dual group (generator of order 4) -> Lam
        let fourth = vec![vec![Rat::new(int(1), int(4))]];
        assert_eq!(annihilator_preimage(&x, &lam, &fourth).unwrap(), lam);
        // a generator that does not kill Lam errors out
        let bad = vec![vec![Rat::new(int(1), int(3))]];
        assert!(annihilator_preimage(&x, &lam, &bad).is_err());
    }

    #[test]
    fn kernel_subgroup_examples() {
        // X = {0} -> whole torus
        let k = kernel_subgroup(&Lattice::zero(2));
        assert_eq!(k.torus_rank, 2);
        assert!(k.invariant_factors.is_empty());
        // X = 2Z in X(C^*) = Z -> finite part Z/2, torus rank 0
        let k = kernel_subgroup(&Lattice::full(1).scale(2));
        assert_eq!(k.torus_rank, 0);
        assert_eq!(k.invariant_factors, vec![int(2)]);
        // X = full character lattice -> trivial group
        let k = kernel_subgroup(&Lattice::full(3));
        assert!(k.is_trivial());
    }

    #[test]
    fn order_in_quotient_works() {
        let x = Lattice::full(2);
        let lam = lat(2, &[vec![1, 1], vec![0, 4]]);
        // image of (0,1) has order 4 in Z^2 / lam
        assert_eq!(order_in_quotient(&x, &lam, &[int(0), int(1)]).unwrap(), Some(int(4)));
        // rank-deficient small lattice -> infinite order off the span
        let line = lat(2, &[vec![1, 0]]);
        assert_eq!(order_in_quotient(&x, &line, &[int(0), int(1)]).unwrap(), None);
    }
}
