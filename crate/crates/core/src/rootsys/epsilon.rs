//! Epsilon-coordinate realizations of the classical root systems, used as
//! an I/O layer. Internally everything is stored in the fundamental-weight
//! basis; these tables translate back and forth.
//!
//! Realizations (epsilon vectors carry the unit Euclidean form):
//!
//! * `A_{n-1}` in `Q^n`, simple roots `e_i - e_{i+1}`; weights are read
//!   modulo the line `(1,...,1)` and `to_epsilon` normalizes to sum zero.
//! * `B_n` in `Q^n`, last simple root `e_n`.
//! * `C_n` in `Q^n`, last simple root `2 e_n`.
//! * `D_n` in `Q^n`, last simple root `e_{n-1} + e_n`.
//!
//! `F4` also gets a realization in `Q^4` (simple roots ordered short,
//! short, long, long to match the crate's numbering); it is crate-internal
//! and only used to instantiate table data, never exposed through the
//! public conversion API.

use super::{Family, SimpleType, WeightVec};
use crate::{rat, Error, Rat, Result};
use num::{One, Zero};

/// Dimension of the epsilon space, including the internal F4 realization.
pub(crate) fn eps_dim_any(t: SimpleType) -> Option<usize> {
    match t.family() {
        Family::A => Some(t.rank() + 1),
        Family::B | Family::C | Family::D => Some(t.rank()),
        Family::F => Some(4),
        _ => None,
    }
}

/// Simple roots in epsilon coordinates.
pub(crate) fn simple_roots_eps_any(t: SimpleType) -> Option<Vec<Vec<Rat>>> {
    let n = t.rank();
    let dim = eps_dim_any(t)?;
    let unit = |i: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        v[i] = Rat::one();
        v
    };
    let diff = |i: usize, j: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        v[i] = Rat::one();
        v[j] = -Rat::one();
        v
    };
    let mut roots = Vec::with_capacity(n);
    match t.family() {
        Family::A => {
            for i in 0..n {
                roots.push(diff(i, i + 1));
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                roots.push(diff(i, i + 1));
            }
            roots.push(unit(n - 1));
        }
        Family::C => {
            for i in 0..n - 1 {
                roots.push(diff(i, i + 1));
            }
            let mut v = vec![Rat::zero(); dim];
            v[n - 1] = rat(2);
            roots.push(v);
        }
        Family::D => {
            for i in 0..n - 1 {
                roots.push(diff(i, i + 1));
            }
            let mut v = vec![Rat::zero(); dim];
            v[n - 2] = Rat::one();
            v[n - 1] = Rat::one();
            roots.push(v);
        }
        Family::F => {
            // numbering short, short, long, long (see crate conventions)
            let half = Rat::new(crate::int(1), crate::int(2));
            roots.push(vec![half.clone(), -half.clone(), -half.clone(), -half]);
            roots.push(unit(3));
            roots.push(diff(2, 3));
            roots.push(diff(1, 2));
        }
        _ => return None,
    }
    Some(roots)
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        s += x * y;
    }
    s
}

/// Fundamental coordinates of an epsilon vector: pairing with the simple
/// coroots of the realization. Internal variant that also accepts F4.
pub(crate) fn from_epsilon_rat_any(t: SimpleType, x: &[Rat]) -> Result<Vec<Rat>> {
    let dim = eps_dim_any(t).ok_or_else(|| Error::NotClassical(t.to_string()))?;
    if x.len() != dim {
        return Err(Error::Dimension { expected: dim, got: x.len() });
    }
    let roots = simple_roots_eps_any(t).unwrap();
    Ok(roots
        .iter()
        .map(|alpha| {
            let norm = dot(alpha, alpha);
            rat(2) * dot(x, alpha) / norm
        })
        .collect())
}

pub(crate) fn from_epsilon_any(t: SimpleType, x: &[Rat]) -> Result<WeightVec> {
    let coords = from_epsilon_rat_any(t, x)?;
    let mut v = Vec::with_capacity(coords.len());
    for c in coords {
        if !c.denom().is_one() {
            return Err(Error::NonIntegralWeight);
        }
        let big = c.to_integer();
        let small: i64 = big.try_into().map_err(|_| Error::NonIntegralWeight)?;
        v.push(small);
    }
    Ok(WeightVec(v))
}

/// Epsilon coordinates of a weight. For type A the representative with
/// coordinate sum zero is returned; for B, C, D (and internal F4) the
/// solution is unique.
pub(crate) fn to_epsilon_any(t: SimpleType, v: &WeightVec) -> Result<Vec<Rat>> {
    let dim = eps_dim_any(t).ok_or_else(|| Error::NotClassical(t.to_string()))?;
    if v.0.len() != t.rank() {
        return Err(Error::Dimension { expected: t.rank(), got: v.0.len() });
    }
    let roots = simple_roots_eps_any(t).unwrap();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for (i, alpha) in roots.iter().enumerate() {
        let norm = dot(alpha, alpha);
        rows.push(alpha.iter().map(|a| rat(2) * a / norm.clone()).collect());
        rhs.push(rat(v.0[i]));
    }
    if t.family() == Family::A {
        rows.push(vec![Rat::one(); dim]);
        rhs.push(Rat::zero());
    }
    let m = crate::ratmat::RatMat::from_rows(rows);
    m.solve(&rhs).ok_or(Error::NonIntegralWeight)
}

/// Public conversions are restricted to the classical families.
pub fn is_classical(t: SimpleType) -> bool {
    matches!(t.family(), Family::A | Family::B | Family::C | Family::D)
}

pub fn to_epsilon(t: SimpleType, v: &WeightVec) -> Result<Vec<Rat>> {
    if !is_classical(t) {
        return Err(Error::NotClassical(t.to_string()));
    }
    to_epsilon_any(t, v)
}

pub fn from_epsilon(t: SimpleType, x: &[Rat]) -> Result<WeightVec> {
    if !is_classical(t) {
        return Err(Error::NotClassical(t.to_string()));
    }
    from_epsilon_any(t, x)
}

/// Convenience: build a weight from integer epsilon coordinates.
pub fn from_epsilon_i64(t: SimpleType, x: &[i64]) -> Result<WeightVec> {
    let xr: Vec<Rat> = x.iter().map(|&v| rat(v)).collect();
    from_epsilon(t, &xr)
}

pub(crate) fn from_epsilon_i64_any(t: SimpleType, x: &[i64]) -> Result<WeightVec> {
    let xr: Vec<Rat> = x.iter().map(|&v| rat(v)).collect();
    from_epsilon_any(t, &xr)
}
