//! The pipeline for module actions: iterated semiinvariant reduction
//! computing the kernel group `L_0` and the weight lattice of a module
//! over an almost connected reductive group, the bundle composition step,
//! and two independent oracles (degree-bounded semiinvariant enumeration
//! and a randomized generic-stabilizer probe).
//!
//! Module realizations carry explicit operator matrices for each simple
//! root (lowering and raising) over a fixed global torus; realizations for
//! semisimple factors are built inside tensor powers of the defining
//! representation (classical types, highest weights with nonnegative
//! integral epsilon coordinates), generated by lowering from an explicit
//! highest-weight vector.

pub mod oracle;
pub mod reduce;

use crate::liealg::datum;
use crate::ratmat::RatMat;
use crate::rootsys::{Family, SimpleType, WeightVec};
use crate::{rat, Error, Rat, Result};
use num::{One, Signed, Zero};

pub use oracle::{oracle_generic_stabilizer, oracle_semiinvariant_weights, StabilizerReport};
pub use reduce::{l0_bundle, run_reduction, QuasiTorusModule, ReductionOutcome, ReductionState};

/// A reductive group equal to its identity component times its center:
/// a torus and simple factors, plus finitely many central component
/// generators (given by their diagonal module actions; only orders 1 and 2
/// are realizable with rational entries).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostConnectedGroup {
    pub center_rank: usize,
    pub factors: Vec<SimpleType>,
    /// number of central component generators
    pub component_gens: usize,
}

impl AlmostConnectedGroup {
    pub fn torus(rank: usize) -> Self {
        AlmostConnectedGroup { center_rank: rank, factors: vec![], component_gens: 0 }
    }

    pub fn semisimple(factors: Vec<SimpleType>) -> Self {
        AlmostConnectedGroup { center_rank: 0, factors, component_gens: 0 }
    }

    /// Rank of the global torus; weights are integer vectors of this
    /// length: central coordinates first, then the fundamental-weight
    /// coordinates of each factor.
    pub fn torus_rank(&self) -> usize {
        self.center_rank + self.factors.iter().map(|t| t.rank()).sum::<usize>()
    }

    /// Offset of a factor's coordinate block.
    pub fn factor_offset(&self, f: usize) -> usize {
        self.center_rank + self.factors[..f].iter().map(|t| t.rank()).sum::<usize>()
    }

    /// Global indices of all simple roots, as (factor, root) pairs.
    pub fn simple_roots(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (f, t) in self.factors.iter().enumerate() {
            for i in 0..t.rank() {
                out.push((f, i));
            }
        }
        out
    }

    /// The coordinate shift of a simple root in global coordinates.
    pub fn root_shift(&self, f: usize, i: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.torus_rank()];
        let alpha = datum(self.factors[f]).simple_root(i);
        let off = self.factor_offset(f);
        v[off..off + alpha.0.len()].copy_from_slice(&alpha.0);
        v
    }
}

/// A module with explicit weight and operator data over a fixed group.
#[derive(Clone, Debug)]
pub struct ModuleRealization {
    pub dim: usize,
    /// torus weight of each basis vector (global coordinates)
    pub weights: Vec<Vec<i64>>,
    /// lowering operator per simple root, in the order of
    /// `group.simple_roots()`
    pub lowering: Vec<RatMat>,
    /// raising operator per simple root
    pub raising: Vec<RatMat>,
    /// diagonal actions of the central component generators (entries must
    /// be +-1)
    pub comp_actions: Vec<Vec<Rat>>,
}

impl ModuleRealization {
    pub fn torus_module(group: &AlmostConnectedGroup, weights: Vec<Vec<i64>>) -> Result<Self> {
        if !group.factors.is_empty() {
            return Err(Error::BadRealization("torus_module needs a torus group".into()));
        }
        for w in &weights {
            if w.len() != group.torus_rank() {
                return Err(Error::Dimension { expected: group.torus_rank(), got: w.len() });
            }
        }
        Ok(ModuleRealization {
            dim: weights.len(),
            weights,
            lowering: vec![],
            raising: vec![],
            comp_actions: vec![],
        })
    }

    pub fn zero(group: &AlmostConnectedGroup) -> Self {
        let nroots = group.simple_roots().len();
        ModuleRealization {
            dim: 0,
            weights: vec![],
            lowering: vec![RatMat::zero(0, 0); nroots],
            raising: vec![RatMat::zero(0, 0); nroots],
            comp_actions: vec![],
        }
    }

    pub fn with_component_gen(mut self, diag: Vec<Rat>) -> Result<Self> {
        if diag.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: diag.len() });
        }
        self.comp_actions.push(diag);
        Ok(self)
    }

    /// Direct sum of realizations over the same group.
    pub fn direct_sum(group: &AlmostConnectedGroup, parts: &[ModuleRealization]) -> Result<Self> {
        let nroots = group.simple_roots().len();
        let ncomp = parts.first().map_or(0, |p| p.comp_actions.len());
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let mut weights = Vec::with_capacity(dim);
        let mut lowering = vec![RatMat::zero(dim, dim); nroots];
        let mut raising = vec![RatMat::zero(dim, dim); nroots];
        let mut comp_actions = vec![Vec::with_capacity(dim); ncomp];
        let mut off = 0usize;
        for p in parts {
            if p.comp_actions.len() != ncomp {
                return Err(Error::BadRealization("component actions mismatch in sum".into()));
            }
            weights.extend(p.weights.iter().cloned());
            for r in 0..nroots {
                for a in 0..p.dim {
                    for b in 0..p.dim {
                        lowering[r][(off + a, off + b)] = p.lowering[r][(a, b)].clone();
                        raising[r][(off + a, off + b)] = p.raising[r][(a, b)].clone();
                    }
                }
            }
            for (c, action) in p.comp_actions.iter().enumerate() {
                comp_actions[c].extend(action.iter().cloned());
            }
            off += p.dim;
        }
        Ok(ModuleRealization { dim, weights, lowering, raising, comp_actions })
    }

    /// Consistency checks: operators shift weights by the right root, the
    /// sl2 commutation relations hold, and component actions are diagonal
    /// sign actions commuting with everything.
    pub fn validate(&self, group: &AlmostConnectedGroup) -> Result<()> {
        let roots = group.simple_roots();
        if self.lowering.len() != roots.len() || self.raising.len() != roots.len() {
            return Err(Error::BadRealization("operator count mismatch".into()));
        }
        if self.weights.len() != self.dim {
            return Err(Error::BadRealization("weight count mismatch".into()));
        }
        for w in &self.weights {
            if w.len() != group.torus_rank() {
                return Err(Error::BadRealization("weight length mismatch".into()));
            }
        }
        for (ri, &(f, i)) in roots.iter().enumerate() {
            let shift = group.root_shift(f, i);
            let check_shift = |m: &RatMat, sign: i64| -> Result<()> {
                for a in 0..self.dim {
                    for b in 0..self.dim {
                        if m[(a, b)].is_zero() {
                            continue;
                        }
                        let ok = (0..shift.len())
                            .all(|c| self.weights[a][c] == self.weights[b][c] + sign * shift[c]);
                        if !ok {
                            return Err(Error::BadRealization(format!(
                                "operator for root ({f},{i}) does not shift by the root"
                            )));
                        }
                    }
                }
                Ok(())
            };
            check_shift(&self.lowering[ri], -1)?;
            check_shift(&self.raising[ri], 1)?;
        }
        // [E_i, F_j] = delta_ij H_i  (H_i is diagonal with the coroot pairing)
        for (ri, &(f, i)) in roots.iter().enumerate() {
            for (rj, _) in roots.iter().enumerate() {
                let comm = self.raising[ri].commutator(&self.lowering[rj]);
                if ri == rj {
                    let off = group.factor_offset(f) + i;
                    for a in 0..self.dim {
                        for b in 0..self.dim {
                            let expect = if a == b { rat(self.weights[a][off]) } else { Rat::zero() };
                            if comm[(a, b)] != expect {
                                return Err(Error::BadRealization(format!(
                                    "sl2 relation fails for root ({f},{i})"
                                )));
                            }
                        }
                    }
                } else if !comm.is_zero() {
                    return Err(Error::BadRealization("cross-root commutator not zero".into()));
                }
            }
        }
        for action in &self.comp_actions {
            if action.len() != self.dim {
                return Err(Error::BadRealization("component action length".into()));
            }
            for v in action {
                if v != &rat(1) && v != &rat(-1) {
                    return Err(Error::BadRealization(
                        "component generators must act by +-1".into(),
                    ));
                }
            }
            for m in self.lowering.iter().chain(self.raising.iter()) {
                for a in 0..self.dim {
                    for b in 0..self.dim {
                        if !m[(a, b)].is_zero() && action[a] != action[b] {
                            return Err(Error::BadRealization(
                                "component generator does not centralize the operators".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Sign bits of the component actions per basis vector.
    pub fn comp_bits(&self, b: usize) -> Vec<i64> {
        self.comp_actions
            .iter()
            .map(|a| if a[b] == rat(-1) { 1 } else { 0 })
            .collect()
    }
}

// -------------------------------------------------------------------
// construction of factor modules inside tensor powers of the defining
// representation
// -------------------------------------------------------------------

/// Weights and operators of one classical defining representation, in the
/// factor's own fundamental coordinates.
struct SingleModule {
    dim: usize,
    weights: Vec<Vec<i64>>,
    lowering: Vec<RatMat>,
    raising: Vec<RatMat>,
}

fn defining_rep(t: SimpleType) -> Result<SingleModule> {
    use crate::rootsys::epsilon::from_epsilon_i64;
    let r = t.rank();
    let n: usize = match t.family() {
        Family::A => r + 1,
        Family::B => 2 * r + 1,
        Family::C | Family::D => 2 * r,
        _ => {
            return Err(Error::BadRealization(format!(
                "no defining-module realization for {t}"
            )))
        }
    };
    // epsilon coordinates of the basis vectors
    let mut eps_rows: Vec<Vec<i64>> = Vec::with_capacity(n);
    let m = if t.family() == Family::A { r + 1 } else { r };
    for b in 0..n {
        let mut e = vec![0i64; m];
        if t.family() == Family::A {
            e[b] = 1;
        } else if b < r {
            e[b] = 1;
        } else if n % 2 == 1 && b == r {
            // middle basis vector of the odd orthogonal module
        } else {
            let k = n - 1 - b;
            e[k] = -1;
        }
        eps_rows.push(e);
    }
    let weights: Vec<Vec<i64>> = eps_rows
        .iter()
        .map(|e| from_epsilon_i64(t, e).map(|w| w.0))
        .collect::<Result<_>>()?;
    // lowering matrices (1-based formulas translated to 0-based indices)
    let mut lowering = Vec::with_capacity(r);
    let put = |entries: &[(usize, usize, i64)]| -> RatMat {
        let mut mat = RatMat::zero(n, n);
        for &(a, b, v) in entries {
            mat[(a, b)] = rat(v);
        }
        mat
    };
    for i in 1..=r {
        let f = match t.family() {
            Family::A => put(&[(i, i - 1, 1)]),
            Family::B if i < r => put(&[(i, i - 1, 1), (n - i, n - 1 - i, -1)]),
            Family::B => put(&[(r, r - 1, 1), (r + 1, r, -1)]),
            Family::C if i < r => put(&[(i, i - 1, 1), (n - i, n - 1 - i, -1)]),
            Family::C => put(&[(r, r - 1, 1)]),
            Family::D if i < r => put(&[(i, i - 1, 1), (n - i, n - 1 - i, -1)]),
            Family::D => put(&[(r, r - 2, 1), (r + 1, r - 1, -1)]),
            _ => unreachable!(),
        };
        lowering.push(f);
    }
    let raising = raising_from_strings(&weights, &lowering, t)?;
    Ok(SingleModule { dim: n, weights, lowering, raising })
}

/// Recovers the raising operators from the lowering ones on a module all
/// of whose weight spaces are one-dimensional, using the sl2 string
/// relations (exact rationals).
fn raising_from_strings(
    weights: &[Vec<i64>],
    lowering: &[RatMat],
    t: SimpleType,
) -> Result<Vec<RatMat>> {
    let dim = weights.len();
    let mut raising = Vec::with_capacity(lowering.len());
    for (i, f) in lowering.iter().enumerate() {
        // each basis vector's h-eigenvalue for this root
        let h: Vec<i64> = weights.iter().map(|w| w[i]).collect();
        let mut e = RatMat::zero(dim, dim);
        // build strings: follow F from each vector with no F-preimage
        let mut f_image_of: Vec<Option<(usize, Rat)>> = vec![None; dim];
        for b in 0..dim {
            for a in 0..dim {
                if !f[(a, b)].is_zero() {
                    if f_image_of[b].is_some() {
                        return Err(Error::BadRealization(format!(
                            "weight spaces of the defining module of {t} are not chains"
                        )));
                    }
                    f_image_of[b] = Some((a, f[(a, b)].clone()));
                }
            }
        }
        let has_preimage: std::collections::HashSet<usize> =
            f_image_of.iter().flatten().map(|(a, _)| *a).collect();
        for top in 0..dim {
            if has_preimage.contains(&top) {
                continue;
            }
            // walk the string downward; with F u_k = phi_k u_{k+1} and
            // E u_{k+1} = eps_k u_k, the sl2 relation gives
            // eps_k = (h_k + eps_{k-1} phi_{k-1}) / phi_k, starting from 0
            let mut prev_e = Rat::zero();
            let mut cur = top;
            while let Some((next, fcoef)) = f_image_of[cur].clone() {
                // E(next) = coef * cur with coef = (h_cur + prev_e * f-into-cur) / fcoef
                let coef = (rat(h[cur]) + prev_e) / fcoef.clone();
                e[(cur, next)] = coef.clone();
                prev_e = coef * fcoef;
                cur = next;
            }
        }
        raising.push(e);
    }
    Ok(raising)
}

fn tensor_single(a: &SingleModule, b: &SingleModule, nroots: usize) -> SingleModule {
    let dim = a.dim * b.dim;
    let mut weights = Vec::with_capacity(dim);
    for wa in &a.weights {
        for wb in &b.weights {
            weights.push(wa.iter().zip(wb.iter()).map(|(x, y)| x + y).collect());
        }
    }
    let embed = |ma: &RatMat, mb: &RatMat| -> RatMat {
        // ma (x) I + I (x) mb
        let mut out = RatMat::zero(dim, dim);
        for i in 0..a.dim {
            for j in 0..a.dim {
                if !ma[(i, j)].is_zero() {
                    for k in 0..b.dim {
                        out[(i * b.dim + k, j * b.dim + k)] = ma[(i, j)].clone();
                    }
                }
            }
        }
        for k in 0..a.dim {
            for i in 0..b.dim {
                for j in 0..b.dim {
                    if !mb[(i, j)].is_zero() {
                        let cur = out[(k * b.dim + i, k * b.dim + j)].clone();
                        out[(k * b.dim + i, k * b.dim + j)] = cur + mb[(i, j)].clone();
                    }
                }
            }
        }
        out
    };
    let mut lowering = Vec::with_capacity(nroots);
    let mut raising = Vec::with_capacity(nroots);
    for r in 0..nroots {
        lowering.push(embed(&a.lowering[r], &b.lowering[r]));
        raising.push(embed(&a.raising[r], &b.raising[r]));
    }
    SingleModule { dim, weights, lowering, raising }
}

/// Antisymmetrized basis tensor `e_0 ^ e_1 ^ ... ^ e_{h-1}` as a vector in
/// the h-fold tensor power coordinates of an n-dimensional space.
fn wedge_vector(n: usize, h: usize) -> Vec<Rat> {
    let dim = n.pow(h as u32);
    let mut v = vec![Rat::zero(); dim];
    let mut perm: Vec<usize> = (0..h).collect();
    loop {
        let mut idx = 0usize;
        for &p in &perm {
            idx = idx * n + p;
        }
        let sign = permutation_sign(&perm);
        v[idx] = rat(sign);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    v
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut sign = 1i64;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n <= 1 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Irreducible module of a single classical factor, generated by lowering
/// from an explicit highest-weight vector inside a tensor power of the
/// defining representation. Supports highest weights with nonnegative
/// integral epsilon coordinates (no spin weights).
fn irreducible_single(t: SimpleType, hw: &WeightVec) -> Result<SingleModule> {
    use crate::rootsys::epsilon::to_epsilon;
    if !hw.is_dominant() {
        return Err(Error::NotDominant);
    }
    if hw.is_zero() {
        let r = t.rank();
        return Ok(SingleModule {
            dim: 1,
            weights: vec![vec![0; r]],
            lowering: vec![RatMat::zero(1, 1); r],
            raising: vec![RatMat::zero(1, 1); r],
        });
    }
    let parts: Vec<i64> = if t.family() == Family::A {
        // suffix sums of the fundamental coordinates give a partition
        let mut acc = 0i64;
        let mut a: Vec<i64> = hw.0.iter().rev().map(|&c| {
            acc += c;
            acc
        })
        .collect();
        a.reverse();
        a
    } else {
        let eps = to_epsilon(t, hw)?;
        let mut a = Vec::new();
        for e in &eps {
            if !e.denom().is_one() || e.is_negative() {
                return Err(Error::BadRealization(format!(
                    "highest weight {:?} of {t} has no tensor realization (epsilon coords {:?})",
                    hw, eps
                )));
            }
            a.push(e.to_integer().try_into().unwrap());
        }
        a
    };
    // columns of the partition give wedge heights
    let deg: i64 = parts.iter().sum();
    if deg == 0 {
        return Err(Error::BadRealization("zero tensor degree".into()));
    }
    let base = defining_rep(t)?;
    let n = base.dim;
    let mut heights = Vec::new();
    let a1 = parts[0];
    for j in 1..=a1 {
        heights.push(parts.iter().filter(|&&a| a >= j).count());
    }
    // ambient = tensor power of degree sum(heights) = deg
    let mut ambient = defining_rep(t)?;
    for _ in 1..deg {
        ambient = tensor_single(&ambient, &base, t.rank());
    }
    // highest vector = tensor of wedge vectors
    let mut hv: Vec<Rat> = vec![Rat::one()];
    for &h in &heights {
        let w = wedge_vector(n, h as usize);
        let mut next = Vec::with_capacity(hv.len() * w.len());
        for x in &hv {
            for y in &w {
                next.push(x * y);
            }
        }
        hv = next;
    }
    assert_eq!(hv.len(), ambient.dim);
    // close under lowering operators
    let mut span = SpanTracker::new();
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    span.try_add(hv.clone());
    basis.push(hv);
    let mut queue = vec![0usize];
    while let Some(i) = queue.pop() {
        for f in &ambient.lowering {
            let img = f.apply(&basis[i]);
            if img.iter().all(|c| c.is_zero()) {
                continue;
            }
            if span.try_add(img.clone()) {
                basis.push(img);
                queue.push(basis.len() - 1);
            }
        }
    }
    // verify stability under raising (a genuine submodule)
    for e in &ambient.raising {
        for v in &basis {
            let img = e.apply(v);
            if !span.contains(&img) {
                return Err(Error::UnstableSubspace);
            }
        }
    }
    let sub = restrict(&ambient, &basis)?;
    // cross-check the dimension against the Weyl formula
    let expect = crate::liealg::weyl_dim(&datum(t), hw)?;
    if sub.dim as u64 != expect {
        return Err(Error::TableMismatch {
            computed: sub.dim.to_string(),
            stored: expect.to_string(),
        });
    }
    Ok(sub)
}

/// Incremental reduced-echelon span bookkeeping over the rationals.
pub(crate) struct SpanTracker {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl SpanTracker {
    pub(crate) fn new() -> Self {
        SpanTracker { rows: vec![], pivots: vec![] }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut Vec<Rat>) {
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }

    pub(crate) fn contains(&self, v: &[Rat]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|c| c.is_zero())
    }

    /// Returns true if the vector enlarged the span.
    pub(crate) fn try_add(&mut self, mut v: Vec<Rat>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= inv.clone();
        }
        for (row, &q) in self.rows.iter_mut().zip(self.pivots.iter()) {
            if !row[p].is_zero() && q != p {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(v.iter()) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// Restriction of a module to an invariant subspace with weight-pure basis.
fn restrict(ambient: &SingleModule, basis: &[Vec<Rat>]) -> Result<SingleModule> {
    let dim = basis.len();
    // the subspace basis must be weight-homogeneous for exact bookkeeping
    let mut weights = Vec::with_capacity(dim);
    for b in basis {
        let mut wt: Option<Vec<i64>> = None;
        for (c, coef) in b.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            match &wt {
                None => wt = Some(ambient.weights[c].clone()),
                Some(w) => {
                    if *w != ambient.weights[c] {
                        return Err(Error::BadRealization(
                            "subspace basis vector mixes weights".into(),
                        ));
                    }
                }
            }
        }
        weights.push(wt.ok_or_else(|| Error::BadRealization("zero basis vector".into()))?);
    }
    let big = RatMat::from_rows(basis.to_vec());
    // solve x * big = img for each operator image
    let solve_in = |img: &[Rat]| -> Result<Vec<Rat>> {
        let mt = {
            let mut t = RatMat::zero(big.cols, big.rows);
            for r in 0..big.rows {
                for c in 0..big.cols {
                    t[(c, r)] = big[(r, c)].clone();
                }
            }
            t
        };
        mt.solve(img).ok_or(Error::UnstableSubspace)
    };
    let mut lowering = Vec::new();
    let mut raising = Vec::new();
    for (f, e) in ambient.lowering.iter().zip(ambient.raising.iter()) {
        let mut fl = RatMat::zero(dim, dim);
        let mut rl = RatMat::zero(dim, dim);
        for (j, b) in basis.iter().enumerate() {
            let fi = solve_in(&f.apply(b))?;
            let ei = solve_in(&e.apply(b))?;
            for i in 0..dim {
                fl[(i, j)] = fi[i].clone();
                rl[(i, j)] = ei[i].clone();
            }
        }
        lowering.push(fl);
        raising.push(rl);
    }
    Ok(SingleModule { dim, weights, lowering, raising })
}

/// Builds the irreducible module of the product group with the given
/// highest weight per factor and central character, realized as an outer
/// tensor product of factor modules.
pub fn highest_weight_module(
    group: &AlmostConnectedGroup,
    factor_hws: &[WeightVec],
    central: &[i64],
) -> Result<ModuleRealization> {
    if factor_hws.len() != group.factors.len() {
        return Err(Error::Dimension { expected: group.factors.len(), got: factor_hws.len() });
    }
    if central.len() != group.center_rank {
        return Err(Error::Dimension { expected: group.center_rank, got: central.len() });
    }
    // outer tensor: dim = product, weights concatenate, operators act on
    // their own factor slot
    let singles: Vec<SingleModule> = group
        .factors
        .iter()
        .zip(factor_hws.iter())
        .map(|(t, hw)| irreducible_single(*t, hw))
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = singles.iter().map(|s| s.dim).collect();
    let total: usize = dims.iter().product::<usize>().max(1);
    let r_global = group.torus_rank();
    let mut weights = Vec::with_capacity(total);
    for flat in 0..total {
        let mut idx = flat;
        let mut per: Vec<usize> = vec![0; singles.len()];
        for f in (0..singles.len()).rev() {
            per[f] = idx % dims[f];
            idx /= dims[f];
        }
        let mut w = vec![0i64; r_global];
        w[..group.center_rank].copy_from_slice(central);
        for (f, s) in singles.iter().enumerate() {
            let off = group.factor_offset(f);
            let fw = &s.weights[per[f]];
            w[off..off + fw.len()].copy_from_slice(fw);
        }
        weights.push(w);
    }
    let stride_after = |f: usize| -> usize { dims[f + 1..].iter().product::<usize>().max(1) };
    let mut lowering = Vec::new();
    let mut raising = Vec::new();
    for (f, s) in singles.iter().enumerate() {
        let stride = stride_after(f);
        let block = dims[f] * stride;
        let lift = |m: &RatMat| -> RatMat {
            let mut out = RatMat::zero(total, total);
            for i in 0..s.dim {
                for j in 0..s.dim {
                    if m[(i, j)].is_zero() {
                        continue;
                    }
                    let mut base = 0usize;
                    while base < total {
                        for k in 0..stride {
                            out[(base + i * stride + k, base + j * stride + k)] =
                                m[(i, j)].clone();
                        }
                        base += block;
                    }
                }
            }
            out
        };
        for r in 0..s.lowering.len() {
            lowering.push(lift(&s.lowering[r]));
            raising.push(lift(&s.raising[r]));
        }
    }
    let m = ModuleRealization { dim: total, weights, lowering, raising, comp_actions: vec![] };
    m.validate(group)?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(f: Family, r: usize) -> SimpleType {
        SimpleType::new(f, r).unwrap()
    }

    #[test]
    fn defining_reps_validate() {
        for t in [
            ty(Family::A, 1),
            ty(Family::A, 3),
            ty(Family::B, 2),
            ty(Family::B, 3),
            ty(Family::C, 2),
            ty(Family::C, 3),
            ty(Family::D, 3),
            ty(Family::D, 4),
        ] {
            let group = AlmostConnectedGroup::semisimple(vec![t]);
            let hw = WeightVec::fundamental(t.rank(), 0);
            let m = highest_weight_module(&group, &[hw], &[]).unwrap();
            m.validate(&group).unwrap();
        }
    }

    #[test]
    fn adjoint_of_sl2_realizes() {
        let group = AlmostConnectedGroup::semisimple(vec![ty(Family::A, 1)]);
        let m = highest_weight_module(&group, &[WeightVec(vec![2])], &[]).unwrap();
        assert_eq!(m.dim, 3);
        let mut ws: Vec<i64> = m.weights.iter().map(|w| w[0]).collect();
        ws.sort();
        assert_eq!(ws, vec![-2, 0, 2]);
    }

    #[test]
    fn sp4_second_fundamental_realizes() {
        let group = AlmostConnectedGroup::semisimple(vec![ty(Family::C, 2)]);
        let m = highest_weight_module(&group, &[WeightVec(vec![0, 1])], &[]).unwrap();
        assert_eq!(m.dim, 5);
        m.validate(&group).unwrap();
    }

    #[test]
    fn outer_tensor_of_two_sl2() {
        // C^4 = V(1) (x) V(1) over A1 + A1 (the so_4 vector module)
        let group = AlmostConnectedGroup::semisimple(vec![ty(Family::A, 1), ty(Family::A, 1)]);
        let m = highest_weight_module(
            &group,
            &[WeightVec(vec![1]), WeightVec(vec![1])],
            &[],
        )
        .unwrap();
        assert_eq!(m.dim, 4);
        m.validate(&group).unwrap();
    }
}
