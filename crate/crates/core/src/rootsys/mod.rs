//! Exact root systems, Weyl group actions and minimal root systems for the
//! simple types A–G.
//!
//! Internal coordinates are the fundamental-weight basis: a weight is the
//! integer vector of its pairings with the simple coroots, so simple roots
//! are the columns of the Cartan matrix and all arithmetic stays in `i64`.
//! Epsilon coordinates exist only as an I/O conversion layer for the
//! classical types (see [`epsilon`]).
//!
//! # Numbering conventions
//!
//! Classical Cartan matrices follow the usual epsilon realizations
//! (`alpha_i = e_i - e_{i+1}` along the chain). For the exceptional types
//! the Cartan matrices are fixed here, once, and used consistently:
//!
//! * `E_l` (l = 6, 7, 8): the simple roots `alpha_1 ... alpha_{l-1}` form a
//!   chain and `alpha_l` is the branch node attached to `alpha_{l-3}`. With
//!   this numbering `pi_1` of E6 is the 27-dimensional node and `pi_1` of
//!   E7 is the 56-dimensional (minuscule) node.
//! * `F4`: `alpha_1, alpha_2` short, `alpha_3, alpha_4` long, so the
//!   subalgebra generated by `alpha_1, alpha_2, alpha_3` is of type C3.
//! * `G2`: `alpha_1` short, `alpha_2` long.

pub mod epsilon;

use crate::lattice::Lattice;
use crate::{int, rat, Error, Int, Rat, Result};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};

/// Default cap for Weyl orbit sizes, a guard against E8-scale misuse.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }
}

/// A simple type `X_n` with the rank constraints enforced at construction:
/// `A, B, C >= 1`, `D >= 2`, `E in {6,7,8}`, `F = 4`, `G = 2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<SimpleType> {
        let ok = match family {
            Family::A | Family::B | Family::C => rank >= 1,
            Family::D => rank >= 2,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(Error::InvalidSimpleType { family: family.letter(), rank })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Is the root system genuinely simple (D2 = A1 + A1 is not)?
    pub fn is_simple(self) -> bool {
        !(self.family == Family::D && self.rank == 2)
    }

    /// Low-rank coincidence normalization: B1 ~ A1, C1 ~ A1, C2 ~ B2,
    /// D3 ~ A3. D2 is not simple and is left untouched.
    pub fn canonical(self) -> SimpleType {
        match (self.family, self.rank) {
            (Family::B, 1) | (Family::C, 1) => SimpleType { family: Family::A, rank: 1 },
            (Family::C, 2) => SimpleType { family: Family::B, rank: 2 },
            (Family::D, 3) => SimpleType { family: Family::A, rank: 3 },
            _ => self,
        }
    }

    /// Dimension of the Lie algebra.
    pub fn dim(self) -> usize {
        self.rank + RootDatum::new(self).roots().len()
    }
}

impl std::fmt::Display for SimpleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Integer vector in the fundamental-weight basis of a fixed root datum.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightVec(pub Vec<i64>);

impl WeightVec {
    pub fn zero(rank: usize) -> WeightVec {
        WeightVec(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> WeightVec {
        let mut v = vec![0; rank];
        v[i] = 1;
        WeightVec(v)
    }

    pub fn add(&self, other: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> WeightVec {
        WeightVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> WeightVec {
        WeightVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn to_ints(&self) -> Vec<Int> {
        self.0.iter().map(|&a| int(a)).collect()
    }

    pub fn to_rats(&self) -> Vec<Rat> {
        self.0.iter().map(|&a| rat(a)).collect()
    }
}

/// One root, carried in both coordinate systems: `fund` is the
/// fundamental-weight coordinates, `root_coords` the coefficients on the
/// simple roots. `coroot` is the pairing functional of the dual root:
/// `<v, beta^vee> = sum_j v_j * coroot_j` for `v` in fundamental
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub fund: WeightVec,
    pub root_coords: Vec<i64>,
    pub len2: i64,
    pub coroot: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.root_coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }
}

/// Cartan matrix of a simple type; entry `[i][j]` is `<alpha_j, alpha_i^vee>`.
pub fn cartan_matrix(t: SimpleType) -> Vec<Vec<i64>> {
    let n = t.rank();
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i64>>, upto: usize| {
        for i in 0..upto {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    };
    match t.family() {
        Family::A => chain(&mut a, n - 1),
        Family::B => {
            chain(&mut a, n.saturating_sub(1));
            if n >= 2 {
                a[n - 2][n - 1] = -1;
                a[n - 1][n - 2] = -2;
            }
        }
        Family::C => {
            chain(&mut a, n.saturating_sub(1));
            if n >= 2 {
                a[n - 2][n - 1] = -2;
                a[n - 1][n - 2] = -1;
            }
        }
        Family::D => {
            if n >= 3 {
                chain(&mut a, n - 2);
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
            }
            // n = 2: two disconnected nodes
        }
        Family::E => {
            chain(&mut a, n - 2);
            a[n - 4][n - 1] = -1;
            a[n - 1][n - 4] = -1;
        }
        Family::F => {
            return vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -2, 0],
                vec![0, -1, 2, -1],
                vec![0, 0, -1, 2],
            ];
        }
        Family::G => {
            a[0][1] = -3;
            a[1][0] = -1;
        }
    }
    a
}

/// Symmetrizer `d` with `d_i * a_{ij} = d_j * a_{ji}`; normalized so that
/// short roots have squared length 2.
pub fn symmetrizer(t: SimpleType) -> Vec<i64> {
    let n = t.rank();
    match t.family() {
        Family::A | Family::D | Family::E => vec![1; n],
        Family::B => {
            let mut d = vec![2; n];
            if n >= 1 {
                d[n - 1] = 1;
            }
            if n == 1 {
                d[0] = 1;
            }
            d
        }
        Family::C => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            if n == 1 {
                d[0] = 1;
            }
            d
        }
        Family::F => vec![1, 1, 2, 2],
        Family::G => vec![1, 3],
    }
}

/// A simple type's full root datum: roots, coroots, Cartan matrix and the
/// induced exact bilinear form. Immutable after construction.
pub struct RootDatum {
    t: SimpleType,
    cartan: Vec<Vec<i64>>,
    sym: Vec<i64>,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    cartan_inv: crate::ratmat::RatMat,
}

impl RootDatum {
    /// Builds the datum with `all_roots` computed by reflection closure of
    /// the simple roots (computed, not assumed).
    pub fn new(t: SimpleType) -> RootDatum {
        let n = t.rank();
        let cartan = cartan_matrix(t);
        let sym = symmetrizer(t);
        // simple roots in both coordinate systems
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = VecDeque::new();
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        for j in 0..n {
            let fund: Vec<i64> = (0..n).map(|i| cartan[i][j]).collect();
            let mut rc = vec![0i64; n];
            rc[j] = 1;
            seen.insert(fund.clone(), rc.clone());
            queue.push_back((fund, rc));
        }
        while let Some((fund, rc)) = queue.pop_front() {
            for i in 0..n {
                let k = fund[i];
                if k == 0 {
                    continue;
                }
                let mut nf = fund.clone();
                let mut nrc = rc.clone();
                for (x, c) in nf.iter_mut().zip(0..n) {
                    *x -= k * cartan[c][i];
                }
                nrc[i] -= k;
                if !seen.contains_key(&nf) {
                    seen.insert(nf.clone(), nrc.clone());
                    queue.push_back((nf, nrc));
                }
            }
        }
        // include negatives (closure under negation)
        let pairs: Vec<(Vec<i64>, Vec<i64>)> =
            seen.iter().map(|(f, r)| (f.clone(), r.clone())).collect();
        for (f, r) in pairs {
            let nf: Vec<i64> = f.iter().map(|x| -x).collect();
            if !seen.contains_key(&nf) {
                seen.insert(nf, r.iter().map(|x| -x).collect());
            }
        }
        let mut roots: Vec<Root> = seen
            .into_iter()
            .map(|(fund, rc)| {
                let len2: i64 = (0..n).map(|j| rc[j] * sym[j] * fund[j]).sum();
                assert!(len2 > 0, "root with nonpositive length");
                let coroot: Vec<i64> = (0..n)
                    .map(|j| {
                        let num = 2 * rc[j] * sym[j];
                        assert_eq!(num % len2, 0, "non-integral coroot entry");
                        num / len2
                    })
                    .collect();
                Root { fund: WeightVec(fund), root_coords: rc, len2, coroot }
            })
            .collect();
        roots.sort_by(|a, b| {
            (b.height(), &b.fund.0).partial_cmp(&(a.height(), &a.fund.0)).unwrap()
        });
        let index = roots.iter().enumerate().map(|(i, r)| (r.fund.0.clone(), i)).collect();
        let cartan_rat = crate::ratmat::RatMat::from_rows(
            cartan.iter().map(|row| row.iter().map(|&v| rat(v)).collect()).collect(),
        );
        let cartan_inv = cartan_rat.inverse().expect("Cartan matrix invertible");
        RootDatum { t, cartan, sym, roots, index, cartan_inv }
    }

    pub fn simple_type(&self) -> SimpleType {
        self.t
    }

    pub fn rank(&self) -> usize {
        self.t.rank()
    }

    pub fn cartan(&self) -> &Vec<Vec<i64>> {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    pub fn root_index(&self, fund: &WeightVec) -> Option<usize> {
        self.index.get(&fund.0).copied()
    }

    pub fn is_root(&self, fund: &WeightVec) -> bool {
        self.index.contains_key(&fund.0)
    }

    pub fn simple_root(&self, i: usize) -> WeightVec {
        WeightVec((0..self.rank()).map(|k| self.cartan[k][i]).collect())
    }

    pub fn fundamental_weight(&self, i: usize) -> WeightVec {
        let mut v = vec![0i64; self.rank()];
        v[i] = 1;
        WeightVec(v)
    }

    /// `rho`, the half sum of positive roots, is `(1, ..., 1)`.
    pub fn rho(&self) -> WeightVec {
        WeightVec(vec![1; self.rank()])
    }

    pub fn max_len2(&self) -> i64 {
        self.roots.iter().map(|r| r.len2).max().unwrap()
    }

    pub fn min_len2(&self) -> i64 {
        self.roots.iter().map(|r| r.len2).min().unwrap()
    }

    /// Some long root (maximal squared length).
    pub fn long_root(&self) -> &Root {
        let m = self.max_len2();
        self.roots.iter().find(|r| r.len2 == m).unwrap()
    }

    /// The highest root (dominant long root); requires a simple system.
    pub fn highest_root(&self) -> Result<&Root> {
        if !self.t.is_simple() {
            return Err(Error::RowNotApplicable { row: 0, what: format!("{} not simple", self.t) });
        }
        let m = self.max_len2();
        self.roots
            .iter()
            .find(|r| r.len2 == m && r.fund.is_dominant())
            .ok_or_else(|| Error::Verification("no dominant long root".into()))
    }

    /// Pairing `<v, beta^vee>` with the coroot of a stored root.
    pub fn pair_coroot(&self, v: &WeightVec, root: &Root) -> i64 {
        v.0.iter().zip(root.coroot.iter()).map(|(a, b)| a * b).sum()
    }

    /// Reflection `v - <v, mirror^vee> * mirror`.
    pub fn reflect(&self, v: &WeightVec, mirror: &Root) -> WeightVec {
        let k = self.pair_coroot(v, mirror);
        v.sub(&mirror.fund.scale(k))
    }

    /// Simple reflection `s_i`.
    pub fn simple_reflect(&self, v: &WeightVec, i: usize) -> WeightVec {
        let k = v.0[i];
        let alpha = self.simple_root(i);
        v.sub(&alpha.scale(k))
    }

    /// Coefficients of `v` on the simple roots (rational in general).
    pub fn root_coords(&self, v: &WeightVec) -> Vec<Rat> {
        self.cartan_inv.apply(&v.to_rats())
    }

    /// The exact symmetric bilinear form induced by the symmetrized Cartan
    /// matrix (short roots have squared length 2).
    pub fn form(&self, v: &WeightVec, w: &WeightVec) -> Rat {
        let cw = self.root_coords(w);
        let mut s = Rat::zero();
        for j in 0..self.rank() {
            s += &cw[j] * rat(self.sym[j] * v.0[j]);
        }
        s
    }

    /// Rational variant of the form for non-integral arguments.
    pub fn form_rat(&self, v: &[Rat], w: &[Rat]) -> Rat {
        let cw = self.cartan_inv.apply(w);
        let mut s = Rat::zero();
        for j in 0..self.rank() {
            s += &cw[j] * &v[j] * rat(self.sym[j]);
        }
        s
    }

    /// Dominant representative of the Weyl orbit of `v`.
    pub fn dominant_rep(&self, v: &WeightVec) -> WeightVec {
        let mut w = v.clone();
        loop {
            let Some(i) = w.0.iter().position(|&c| c < 0) else {
                return w;
            };
            w = self.simple_reflect(&w, i);
        }
    }

    /// Weyl orbit by breadth-first closure under simple reflections.
    pub fn weyl_orbit(&self, v: &WeightVec, cap: usize) -> Result<BTreeSet<WeightVec>> {
        let mut seen: BTreeSet<WeightVec> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(v.clone());
        queue.push_back(v.clone());
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                let r = self.simple_reflect(&w, i);
                if !seen.contains(&r) {
                    if seen.len() >= cap {
                        return Err(Error::OrbitCapExceeded { cap });
                    }
                    seen.insert(r.clone());
                    queue.push_back(r);
                }
            }
        }
        Ok(seen)
    }

    /// Partition of the roots by squared length: `(min, max)`. For
    /// simply-laced types the max part is empty and min holds all roots.
    pub fn min_max_partition(&self) -> (Vec<&Root>, Vec<&Root>) {
        let lo = self.min_len2();
        let hi = self.max_len2();
        if lo == hi {
            (self.roots.iter().collect(), Vec::new())
        } else {
            (
                self.roots.iter().filter(|r| r.len2 == lo).collect(),
                self.roots.iter().filter(|r| r.len2 != lo).collect(),
            )
        }
    }

    /// The root lattice as a lattice in fundamental coordinates.
    pub fn root_lattice(&self) -> Lattice {
        let rows: Vec<Vec<i64>> = (0..self.rank()).map(|i| self.simple_root(i).0).collect();
        Lattice::from_i64_rows(self.rank(), &rows)
    }

    /// The full weight lattice `Z^rank` in fundamental coordinates.
    pub fn weight_lattice(&self) -> Lattice {
        Lattice::full(self.rank())
    }
}

/// A subset of the datum's roots closed under negation and under the
/// reflections in its own members.
#[derive(Clone, Debug)]
pub struct RootSubsystem {
    members: BTreeSet<usize>,
}

impl RootSubsystem {
    /// Closure of a generator set under negation and mutual reflections;
    /// generators must be roots of the datum.
    pub fn from_generators(datum: &RootDatum, gens: &[WeightVec]) -> Result<RootSubsystem> {
        let mut members: BTreeSet<usize> = BTreeSet::new();
        for g in gens {
            let idx = datum
                .root_index(g)
                .ok_or_else(|| Error::Verification(format!("{:?} is not a root", g)))?;
            members.insert(idx);
            members.insert(datum.root_index(&g.neg()).unwrap());
        }
        // fixpoint: add s_a(b) for all member pairs until stable
        loop {
            let snapshot: Vec<usize> = members.iter().copied().collect();
            let before = members.len();
            for &a in &snapshot {
                let mirror = datum.roots()[a].clone();
                for &b in &snapshot {
                    let r = datum.reflect(&datum.roots()[b].fund, &mirror);
                    let ridx = datum.root_index(&r).expect("reflection of a root is a root");
                    members.insert(ridx);
                }
            }
            if members.len() == before {
                break;
            }
        }
        Ok(RootSubsystem { members })
    }

    pub fn full(datum: &RootDatum) -> RootSubsystem {
        RootSubsystem { members: (0..datum.roots().len()).collect() }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn roots<'a>(&'a self, datum: &'a RootDatum) -> impl Iterator<Item = &'a Root> + 'a {
        self.members.iter().map(move |&i| &datum.roots()[i])
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.contains(&idx)
    }

    /// Does every reflection of the subsystem stabilize the lattice?
    pub fn stabilizes(&self, datum: &RootDatum, l: &Lattice) -> bool {
        for root in self.roots(datum) {
            for row in l.basis_rows() {
                let v = WeightVec(
                    row.iter()
                        .map(|x| {
                            let s: i64 = x.try_into().expect("lattice entry fits i64");
                            s
                        })
                        .collect(),
                );
                let rv = datum.reflect(&v, root);
                if !l.member(&rv.to_ints()) {
                    return false;
                }
            }
        }
        true
    }
}

/// The minimal root system of `(Gamma, L)`: all primitive vectors `v` of
/// `L` whose reflection lies in the reflection group generated by `gamma`.
/// Since reflections of a reflection subgroup of a Weyl group biject with
/// a root subsystem, the membership test "s_v in Gamma" is implemented as
/// "v proportional to a member of the subsystem closure".
pub fn minimal_root_system(
    datum: &RootDatum,
    l: &Lattice,
    gamma: &RootSubsystem,
) -> Result<Vec<WeightVec>> {
    if !gamma.stabilizes(datum, l) {
        return Err(Error::UnstableLattice);
    }
    let mut out: BTreeSet<WeightVec> = BTreeSet::new();
    for root in gamma.roots(datum) {
        // primitive generator of the line Q*root intersected with L
        let vr: Vec<Rat> = root.fund.to_rats();
        let Some(coords) = solve_scaling(l, &vr) else { continue };
        // coords: s such that s*root in L form the fractional ideal c*Z;
        // find minimal positive c
        let c = coords;
        let v: Vec<i64> = root
            .fund
            .0
            .iter()
            .map(|&x| {
                let scaled = rat(x) * &c;
                assert!(scaled.denom().is_one());
                let b: i64 = scaled.to_integer().try_into().unwrap();
                b
            })
            .collect();
        out.insert(WeightVec(v.clone()));
        out.insert(WeightVec(v).neg());
    }
    Ok(out.into_iter().collect())
}

/// Minimal positive rational `c` with `c * dir` in `L`, or `None` if the
/// line misses `L`.
fn solve_scaling(l: &Lattice, dir: &[Rat]) -> Option<Rat> {
    // write dir = y * basis over Q; then c*dir in L iff c*y integral
    let rows: Vec<Vec<Rat>> = l
        .basis_rows()
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    if rows.is_empty() {
        return None;
    }
    let m = crate::ratmat::RatMat::from_rows(rows);
    // solve y * m = dir  <=>  m^T y^T = dir^T
    let mt = transpose_rows(&m);
    let y = mt.solve(dir)?;
    if y.iter().all(|v| v.is_zero()) {
        return None;
    }
    // minimal c > 0 with c*y_i integral for all i: c = lcm(denoms)/gcd(nums of c0*y)
    let mut l_den = Int::one();
    for v in &y {
        l_den = num::Integer::lcm(&l_den, v.denom());
    }
    let mut g_num = Int::zero();
    for v in &y {
        let scaled = v * Rat::from_integer(l_den.clone());
        g_num = num::Integer::gcd(&g_num, &scaled.to_integer());
    }
    if g_num.is_zero() {
        return None;
    }
    Some(Rat::new(l_den, g_num))
}

fn transpose_rows(m: &crate::ratmat::RatMat) -> crate::ratmat::RatMat {
    let mut t = crate::ratmat::RatMat::zero(m.cols, m.rows);
    for r in 0..m.rows {
        for c in 0..m.cols {
            t[(c, r)] = m[(r, c)].clone();
        }
    }
    t
}

/// Simple-type weight in JSON form.
#[derive(Serialize, Deserialize)]
pub struct WeightJson {
    pub family: char,
    pub rank: usize,
    pub coords: Vec<i64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice;

    fn ty(f: Family, r: usize) -> SimpleType {
        SimpleType::new(f, r).unwrap()
    }

    #[test]
    fn rank_constraints_enforced() {
        assert!(SimpleType::new(Family::E, 5).is_err());
        assert!(SimpleType::new(Family::F, 3).is_err());
        assert!(SimpleType::new(Family::G, 2).is_ok());
        assert!(SimpleType::new(Family::D, 1).is_err());
    }

    #[test]
    fn a1_has_two_roots() {
        let d = RootDatum::new(ty(Family::A, 1));
        assert_eq!(d.roots().len(), 2);
        assert_eq!(d.rank(), 1);
    }

    #[test]
    fn g2_has_twelve_roots_six_short_six_long() {
        let d = RootDatum::new(ty(Family::G, 2));
        assert_eq!(d.roots().len(), 12);
        let (short, long) = d.min_max_partition();
        assert_eq!(short.len(), 6);
        assert_eq!(long.len(), 6);
    }

    #[test]
    fn root_counts_match_closure() {
        let expect = [
            (ty(Family::A, 3), 12),
            (ty(Family::B, 3), 18),
            (ty(Family::C, 3), 18),
            (ty(Family::D, 4), 24),
            (ty(Family::F, 4), 48),
            (ty(Family::E, 6), 72),
            (ty(Family::E, 7), 126),
            (ty(Family::E, 8), 240),
        ];
        for (t, n) in expect {
            assert_eq!(RootDatum::new(t).roots().len(), n, "{}", t);
        }
    }

    #[test]
    fn reflection_closure_is_permutation() {
        for t in [ty(Family::B, 2), ty(Family::G, 2), ty(Family::D, 4), ty(Family::F, 4)] {
            let d = RootDatum::new(t);
            for i in 0..d.rank() {
                for r in d.roots() {
                    let im = d.simple_reflect(&r.fund, i);
                    assert!(d.is_root(&im), "{} reflection closure", t);
                }
            }
        }
    }

    #[test]
    fn cartan_pairings_match_matrix() {
        for t in [ty(Family::A, 2), ty(Family::C, 3), ty(Family::F, 4), ty(Family::G, 2)] {
            let d = RootDatum::new(t);
            let a = cartan_matrix(t);
            for i in 0..d.rank() {
                let ai = d.simple_root(i);
                let idx = d.root_index(&ai).unwrap();
                let root_i = &d.roots()[idx];
                for j in 0..d.rank() {
                    let aj = d.simple_root(j);
                    assert_eq!(d.pair_coroot(&aj, root_i), a[i][j]);
                }
            }
        }
    }

    #[test]
    fn reflect_examples() {
        let d = RootDatum::new(ty(Family::A, 2));
        let alpha = d.roots()[d.root_index(&d.simple_root(0)).unwrap()].clone();
        // reflect(alpha, alpha) = -alpha
        assert_eq!(d.reflect(&alpha.fund, &alpha), alpha.fund.neg());
        // fixed hyperplane
        let orth = WeightVec(vec![0, 1]); // pi2 pairs 0 with alpha1^vee? <pi2, a1^vee> = 0
        assert_eq!(d.reflect(&orth, &alpha), orth);
        // in A2: reflect(pi1, alpha1) = pi1 - alpha1 since <pi1, a1^vee> = 1
        let pi1 = d.fundamental_weight(0);
        assert_eq!(d.reflect(&pi1, &alpha), pi1.sub(&alpha.fund));
    }

    #[test]
    fn orbit_examples() {
        let d = RootDatum::new(ty(Family::A, 2));
        let zero = WeightVec::zero(2);
        assert_eq!(d.weyl_orbit(&zero, 10).unwrap().len(), 1);
        let pi1 = d.fundamental_weight(0);
        assert_eq!(d.weyl_orbit(&pi1, 100).unwrap().len(), 3);
        // orbit of a long root = set of long roots (one length class)
        let d2 = RootDatum::new(ty(Family::G, 2));
        let long = d2.long_root().fund.clone();
        let orbit = d2.weyl_orbit(&long, 100).unwrap();
        assert_eq!(orbit.len(), 6);
        for v in &orbit {
            let idx = d2.root_index(v).unwrap();
            assert_eq!(d2.roots()[idx].len2, d2.max_len2());
        }
    }

    #[test]
    fn orbit_has_unique_dominant_element() {
        for t in [ty(Family::B, 3), ty(Family::G, 2)] {
            let d = RootDatum::new(t);
            for i in 0..d.rank() {
                let orbit = d.weyl_orbit(&d.fundamental_weight(i), 10_000).unwrap();
                let dom: Vec<_> = orbit.iter().filter(|v| v.is_dominant()).collect();
                assert_eq!(dom.len(), 1);
            }
        }
    }

    #[test]
    fn orbit_cap_guard() {
        let d = RootDatum::new(ty(Family::D, 5));
        let rho = d.rho();
        assert!(matches!(d.weyl_orbit(&rho, 10), Err(Error::OrbitCapExceeded { .. })));
    }

    /// Independent brute-force orbit size: enumerate the Weyl group as
    /// matrices (rank <= 4), then orbit size = |W| / |stabilizer|.
    fn orbit_size_by_group(d: &RootDatum, v: &WeightVec) -> usize {
        let n = d.rank();
        let apply = |m: &Vec<Vec<i64>>, v: &WeightVec| -> WeightVec {
            WeightVec(
                (0..n).map(|r| (0..n).map(|c| m[r][c] * v.0[c]).sum::<i64>()).collect(),
            )
        };
        let matmul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            let mut out = vec![vec![0i64; n]; n];
            for r in 0..n {
                for k in 0..n {
                    for c in 0..n {
                        out[r][c] += a[r][k] * b[k][c];
                    }
                }
            }
            out
        };
        let mut gens = Vec::new();
        for i in 0..n {
            let mut m = vec![vec![0i64; n]; n];
            for j in 0..n {
                m[j][j] = 1;
            }
            let alpha = d.simple_root(i);
            for j in 0..n {
                m[j][i] -= alpha.0[j];
            }
            gens.push(m);
        }
        let mut group: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
        let id: Vec<Vec<i64>> =
            (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
        let mut queue = VecDeque::from([id.clone()]);
        group.insert(id);
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let h = matmul(s, &g);
                if group.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        let stab = group.iter().filter(|m| apply(m, v) == *v).count();
        group.len() / stab
    }

    #[test]
    fn orbit_sizes_match_stabilizer_index_small_rank() {
        for t in [ty(Family::A, 3), ty(Family::B, 3), ty(Family::C, 4), ty(Family::G, 2)] {
            let d = RootDatum::new(t);
            for i in 0..d.rank() {
                let v = d.fundamental_weight(i);
                let fast = d.weyl_orbit(&v, 1_000_000).unwrap().len();
                let slow = orbit_size_by_group(&d, &v);
                assert_eq!(fast, slow, "{} pi_{}", t, i + 1);
            }
        }
    }

    #[test]
    fn epsilon_roundtrip_and_examples() {
        use super::epsilon::*;
        // alpha_1 of A2 -> e1 - e2
        let a2 = ty(Family::A, 2);
        let d = RootDatum::new(a2);
        let eps = to_epsilon(a2, &d.simple_root(0)).unwrap();
        assert_eq!(eps, vec![rat(1), rat(-1), rat(0)]);
        // zero -> zero
        assert!(to_epsilon(a2, &WeightVec::zero(2)).unwrap().iter().all(|v| v.is_zero()));
        // alpha_n of B_n -> e_n
        let b3 = ty(Family::B, 3);
        let d3 = RootDatum::new(b3);
        let eps3 = to_epsilon(b3, &d3.simple_root(2)).unwrap();
        assert_eq!(eps3, vec![rat(0), rat(0), rat(1)]);
        // alpha_n of C_n -> 2 e_n
        let c3 = ty(Family::C, 3);
        let dc = RootDatum::new(c3);
        let epsc = to_epsilon(c3, &dc.simple_root(2)).unwrap();
        assert_eq!(epsc, vec![rat(0), rat(0), rat(2)]);
        // roundtrip on a batch of weights
        for t in [a2, b3, c3, ty(Family::D, 4)] {
            let d = RootDatum::new(t);
            for i in 0..d.rank() {
                let v = d.fundamental_weight(i).add(&d.simple_root(i % d.rank()));
                let eps = to_epsilon(t, &v).unwrap();
                assert_eq!(from_epsilon(t, &eps).unwrap(), v, "{}", t);
            }
        }
        // exceptional type requested -> error
        assert!(to_epsilon(ty(Family::G, 2), &WeightVec::zero(2)).is_err());
    }

    #[test]
    fn min_partition_examples() {
        let a3 = RootDatum::new(ty(Family::A, 3));
        let (mn, mx) = a3.min_max_partition();
        assert_eq!(mn.len(), 12);
        assert!(mx.is_empty());
        // B2: short roots are the +-e_i, i.e. 4 of them
        let b2 = RootDatum::new(ty(Family::B, 2));
        let (short, long) = b2.min_max_partition();
        assert_eq!(short.len(), 4);
        assert_eq!(long.len(), 4);
    }

    #[test]
    fn span_of_min_roots_is_root_lattice() {
        for t in [
            ty(Family::A, 3),
            ty(Family::B, 3),
            ty(Family::C, 3),
            ty(Family::D, 4),
            ty(Family::F, 4),
            ty(Family::G, 2),
            ty(Family::E, 6),
        ] {
            let d = RootDatum::new(t);
            let (short, _) = d.min_max_partition();
            let rows: Vec<Vec<i64>> = short.iter().map(|r| r.fund.0.clone()).collect();
            let span = Lattice::from_i64_rows(d.rank(), &rows);
            assert_eq!(span, d.root_lattice(), "{}", t);
        }
    }

    #[test]
    fn minimal_root_system_scaled_a1() {
        // L = 2 * root lattice of A1, gamma = full system -> {+-2 alpha}
        let d = RootDatum::new(ty(Family::A, 1));
        let l = d.root_lattice().scale(2);
        let gamma = RootSubsystem::full(&d);
        let mins = minimal_root_system(&d, &l, &gamma).unwrap();
        assert_eq!(mins.len(), 2);
        assert!(mins.contains(&WeightVec(vec![4]))); // 2*alpha = (4) in fund coords
    }

    #[test]
    fn minimal_root_system_contains_short_roots() {
        // L = root lattice, gamma = full -> result contains all short roots
        for t in [ty(Family::B, 3), ty(Family::C, 3), ty(Family::G, 2)] {
            let d = RootDatum::new(t);
            let l = d.root_lattice();
            let gamma = RootSubsystem::full(&d);
            let mins = minimal_root_system(&d, &l, &gamma).unwrap();
            let (short, _) = d.min_max_partition();
            for r in short {
                assert!(mins.contains(&r.fund), "{}", t);
            }
            // the result generates a sublattice of L with the same Weyl group:
            let rows: Vec<Vec<i64>> = mins.iter().map(|v| v.0.clone()).collect();
            let span = Lattice::from_i64_rows(d.rank(), &rows);
            assert!(l.contains(&span));
            assert_eq!(span, l); // here it even generates L itself
        }
    }

    #[test]
    fn minimal_root_system_requires_stability() {
        let d = RootDatum::new(ty(Family::A, 2));
        // a lattice not stable under the full Weyl group
        let l = Lattice::from_i64_rows(2, &[vec![1, 0]]);
        let gamma = RootSubsystem::full(&d);
        assert!(matches!(minimal_root_system(&d, &l, &gamma), Err(Error::UnstableLattice)));
    }

    #[test]
    fn quotient_weight_by_root_lattice() {
        // |P/Q| = n+1 for A_n, 3 for E6, 2 for E7, 1 for E8/F4/G2
        let cases = [
            (ty(Family::A, 2), 3i64),
            (ty(Family::E, 6), 3),
            (ty(Family::E, 7), 2),
            (ty(Family::E, 8), 1),
            (ty(Family::F, 4), 1),
            (ty(Family::G, 2), 1),
        ];
        for (t, order) in cases {
            let d = RootDatum::new(t);
            let q = lattice::quotient(&d.weight_lattice(), &d.root_lattice()).unwrap();
            assert_eq!(q.order(), Some(int(order)), "{}", t);
        }
    }
}
