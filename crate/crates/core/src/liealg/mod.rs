//! Representation-theoretic arithmetic over weights: weight systems of
//! irreducible modules (Freudenthal recursion, exact rationals), trace
//! forms, the constants `k_h`, Dynkin indices of embeddings, and the
//! two-equation Diophantine systems used by the classification
//! certificates.

pub mod embed;
pub mod subid;

use crate::rootsys::{RootDatum, SimpleType, WeightVec};
use crate::{int, rat, Error, Rat, Result};
use num::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub use embed::{check_trace_identity, BranchSummand, CartanElement, EmbeddingSpec, TraceVariant};
pub use subid::{SubFactor, SubName, SubalgebraId};

/// A reductive Lie algebra: a central torus plus simple factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductiveAlgebra {
    pub center_rank: usize,
    pub factors: Vec<SimpleType>,
}

impl ReductiveAlgebra {
    pub fn simple(t: SimpleType) -> Self {
        ReductiveAlgebra { center_rank: 0, factors: vec![t] }
    }

    pub fn torus(rank: usize) -> Self {
        ReductiveAlgebra { center_rank: rank, factors: vec![] }
    }

    pub fn rank(&self) -> usize {
        self.center_rank + self.factors.iter().map(|t| t.rank()).sum::<usize>()
    }

    pub fn is_semisimple(&self) -> bool {
        self.center_rank == 0
    }
}

/// Shared, immutable root datum per simple type.
pub fn datum(t: SimpleType) -> Arc<RootDatum> {
    static CACHE: OnceLock<Mutex<HashMap<SimpleType, Arc<RootDatum>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard.entry(t).or_insert_with(|| Arc::new(RootDatum::new(t))).clone()
}

/// Full weight multiplicity table of an irreducible module, stable under
/// the Weyl group by construction.
#[derive(Clone, Debug)]
pub struct WeightSystem {
    pub simple_type: SimpleType,
    pub weights: Vec<(WeightVec, u64)>,
    pub dim: u64,
}

impl WeightSystem {
    pub fn multiplicity(&self, w: &WeightVec) -> u64 {
        self.weights.iter().find(|(v, _)| v == w).map_or(0, |(_, m)| *m)
    }
}

/// Is `lo <= hi` in the root order, i.e. `hi - lo` a nonnegative integer
/// combination of simple roots?
fn below(datum: &RootDatum, hi: &WeightVec, lo: &WeightVec) -> bool {
    let diff = hi.sub(lo);
    let coords = datum.root_coords(&diff);
    coords.iter().all(|c| c.denom().is_one() && !c.is_negative())
}

/// Weyl dimension formula, evaluated with coroot pairings only.
pub fn weyl_dim(datum: &RootDatum, hw: &WeightVec) -> Result<u64> {
    if !hw.is_dominant() {
        return Err(Error::NotDominant);
    }
    let rho = datum.rho();
    let lr = hw.add(&rho);
    let mut num = int(1);
    let mut den = int(1);
    for alpha in datum.positive_roots() {
        num *= int(datum.pair_coroot(&lr, alpha));
        den *= int(datum.pair_coroot(&rho, alpha));
    }
    let (q, r) = num::Integer::div_rem(&num, &den);
    assert!(r.is_zero(), "Weyl dimension not integral");
    Ok(q.try_into().expect("dimension fits u64"))
}

fn weight_system_uncached(t: SimpleType, hw: &WeightVec) -> Result<WeightSystem> {
    let d = datum(t);
    if !hw.is_dominant() {
        return Err(Error::NotDominant);
    }
    // Enumerate the saturated weight set {v : dominant_rep(v) <= hw} by BFS.
    let mut all: Vec<WeightVec> = Vec::new();
    let mut seen: std::collections::HashSet<WeightVec> = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::from([hw.clone()]);
    seen.insert(hw.clone());
    while let Some(v) = queue.pop_front() {
        all.push(v.clone());
        for i in 0..d.rank() {
            let w = v.sub(&d.simple_root(i));
            if seen.contains(&w) {
                continue;
            }
            if below(&d, hw, &d.dominant_rep(&w)) {
                seen.insert(w.clone());
                queue.push_back(w);
            }
        }
    }
    // Freudenthal on dominant weights, in increasing depth below hw.
    let mut dominants: Vec<WeightVec> = all.iter().filter(|v| v.is_dominant()).cloned().collect();
    let depth = |v: &WeightVec| -> i64 {
        let c = d.root_coords(&hw.sub(v));
        c.iter().map(|x| x.to_integer().try_into().unwrap_or(0i64)).sum()
    };
    dominants.sort_by_key(|v| depth(v));
    let rho = d.rho();
    let lr = hw.add(&rho);
    let lr2 = d.form(&lr, &lr);
    let mut mult: HashMap<WeightVec, u64> = HashMap::new();
    mult.insert(hw.clone(), 1);
    for mu in dominants.iter().skip(1) {
        let mr = mu.add(&rho);
        let den = &lr2 - d.form(&mr, &mr);
        let mut num = Rat::zero();
        for alpha in d.positive_roots() {
            let mut k = 1i64;
            loop {
                let w = mu.add(&alpha.fund.scale(k));
                if !seen.contains(&w) {
                    break;
                }
                let m = mult.get(&d.dominant_rep(&w)).copied().unwrap_or(0);
                if m > 0 {
                    num += rat(m as i64) * d.form(&w, &alpha.fund);
                }
                k += 1;
            }
        }
        num *= rat(2);
        let m = &num / &den;
        assert!(m.denom().is_one() && !m.is_negative(), "Freudenthal gave a bad multiplicity");
        let mval: u64 = m.to_integer().try_into().unwrap();
        mult.insert(mu.clone(), mval);
    }
    let mut weights = Vec::with_capacity(all.len());
    let mut dim: u64 = 0;
    for v in all {
        let m = mult.get(&d.dominant_rep(&v)).copied().unwrap_or(0);
        if m > 0 {
            dim += m;
            weights.push((v, m));
        }
    }
    weights.sort();
    // cross-check against the Weyl dimension formula
    let expect = weyl_dim(&d, hw)?;
    if dim != expect {
        return Err(Error::TableMismatch { computed: dim.to_string(), stored: expect.to_string() });
    }
    Ok(WeightSystem { simple_type: t, weights, dim })
}

/// Weight system of the irreducible module with highest weight `hw`,
/// memoized per `(type, hw)`. The cache tolerates idempotent concurrent
/// writes (values for equal keys are equal).
pub fn weight_system(t: SimpleType, hw: &WeightVec) -> Result<Arc<WeightSystem>> {
    static CACHE: OnceLock<Mutex<HashMap<(SimpleType, Vec<i64>), Arc<WeightSystem>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(ws) = cache.lock().unwrap().get(&(t, hw.0.clone())) {
        return Ok(ws.clone());
    }
    let ws = Arc::new(weight_system_uncached(t, hw)?);
    cache.lock().unwrap().insert((t, hw.0.clone()), ws.clone());
    Ok(ws)
}

/// The adjoint weight table built directly from the root system (roots
/// plus `rank` zero weights). Valid for every simple type and also for the
/// reducible D2; cross-checked against the Freudenthal route in tests.
pub fn adjoint_weight_system(t: SimpleType) -> WeightSystem {
    let d = datum(t);
    let mut weights: Vec<(WeightVec, u64)> =
        d.roots().iter().map(|r| (r.fund.clone(), 1u64)).collect();
    weights.push((WeightVec::zero(d.rank()), d.rank() as u64));
    weights.sort();
    let dim = d.roots().len() as u64 + d.rank() as u64;
    WeightSystem { simple_type: t, weights, dim }
}

/// `sum_lambda mult(lambda) * <lambda, x>^2` for a Cartan element `x`
/// given in the coroot basis (so `<pi_i, x> = x_i`).
pub fn trace_sq(ws: &WeightSystem, x: &[Rat]) -> Rat {
    let mut total = Rat::zero();
    for (w, m) in &ws.weights {
        let mut p = Rat::zero();
        for (c, xi) in w.0.iter().zip(x.iter()) {
            if *c != 0 {
                p += rat(*c) * xi;
            }
        }
        if !p.is_zero() {
            total += rat(*m as i64) * (&p * &p);
        }
    }
    total
}

/// Stored closed forms of `k_h = tr_adj((long coroot)^2)`:
/// `A_l: 4l+4`, `B_l: 8l-4 (l>=2)`, `C_l: 4l+4`, `D_l: 8l-8`, `E6: 48`,
/// `E7: 72`, `E8: 120`, `F4: 36`, `G2: 16`. Low-rank coincidences are
/// normalized first (`B1 ~ A1` etc.), which is why `k(so_3) = 8`.
pub fn k_const_stored(t: SimpleType) -> i64 {
    use crate::rootsys::Family::*;
    let c = t.canonical();
    let l = c.rank() as i64;
    match c.family() {
        A => 4 * l + 4,
        B => 8 * l - 4,
        C => 4 * l + 4,
        D => 8 * l - 8,
        E => match l {
            6 => 48,
            7 => 72,
            _ => 120,
        },
        F => 36,
        G => 16,
    }
}

/// Computes the trace of the squared long coroot on the adjoint module and
/// asserts equality with the stored closed form. A mismatch signals a bug
/// and is reported as an error, never returned silently.
pub fn k_const(t: SimpleType) -> Result<i64> {
    let d = datum(t);
    let long = d.long_root();
    let x: Vec<Rat> = long.coroot.iter().map(|&c| rat(c)).collect();
    let ws = adjoint_weight_system(t);
    let computed = trace_sq(&ws, &x);
    assert!(computed.denom().is_one());
    let computed: i64 = computed.to_integer().try_into().unwrap();
    let stored = k_const_stored(t);
    if computed != stored {
        return Err(Error::TableMismatch {
            computed: computed.to_string(),
            stored: stored.to_string(),
        });
    }
    Ok(computed)
}

/// Which of the two Diophantine systems to solve:
/// `Four`  — `sum a_j i_j = 4`, `sum a_j k_j = 2 k_g - 16`;
/// `Eight` — `sum a_j i_j = 8`, `sum a_j k_j = 4 k_g - 16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AkVariant {
    Four,
    Eight,
}

impl AkVariant {
    pub fn rhs(self, k_g: i64) -> (i64, i64) {
        match self {
            AkVariant::Four => (4, 2 * k_g - 16),
            AkVariant::Eight => (8, 4 * k_g - 16),
        }
    }
}

/// Exhaustive enumeration of the nonnegative integer solutions `(a_j)` of
/// the chosen system for ambient `g` and candidate simple ideals with
/// their Dynkin indices.
pub fn solve_ak_system(
    g: SimpleType,
    candidates: &[(SimpleType, i64)],
    variant: AkVariant,
) -> Result<Vec<Vec<i64>>> {
    let k_g = k_const(g)?;
    let (rhs1, rhs2) = variant.rhs(k_g);
    let ks: Vec<i64> = candidates
        .iter()
        .map(|(t, _)| k_const(*t))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    let mut a = vec![0i64; candidates.len()];
    fn rec(
        j: usize,
        left1: i64,
        left2: i64,
        candidates: &[(SimpleType, i64)],
        ks: &[i64],
        a: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if j == candidates.len() {
            if left1 == 0 && left2 == 0 {
                out.push(a.clone());
            }
            return;
        }
        let i_j = candidates[j].1;
        let k_j = ks[j];
        let max1 = if i_j > 0 { left1 / i_j } else { 0 };
        let max2 = if k_j > 0 { left2 / k_j } else { max1 };
        for v in 0..=max1.min(max2).max(0) {
            a[j] = v;
            rec(j + 1, left1 - v * i_j, left2 - v * k_j, candidates, ks, a, out);
        }
        a[j] = 0;
    }
    if rhs2 >= 0 {
        rec(0, rhs1, rhs2, candidates, &ks, &mut a, &mut out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn ty(f: Family, r: usize) -> SimpleType {
        SimpleType::new(f, r).unwrap()
    }

    #[test]
    fn weight_system_examples() {
        // A2, pi1: 3 weights, multiplicity 1 (minuscule)
        let ws = weight_system(ty(Family::A, 2), &WeightVec(vec![1, 0])).unwrap();
        assert_eq!(ws.dim, 3);
        assert!(ws.weights.iter().all(|(_, m)| *m == 1));
        // A1, 2*pi1: weights 2, 0, -2 each with multiplicity 1
        let ws = weight_system(ty(Family::A, 1), &WeightVec(vec![2])).unwrap();
        assert_eq!(ws.dim, 3);
        for w in [-2i64, 0, 2] {
            assert_eq!(ws.multiplicity(&WeightVec(vec![w])), 1);
        }
        // C2, pi2: dimension 5
        let ws = weight_system(ty(Family::C, 2), &WeightVec(vec![0, 1])).unwrap();
        assert_eq!(ws.dim, 5);
        // non-dominant is rejected
        assert!(weight_system(ty(Family::A, 2), &WeightVec(vec![-1, 0])).is_err());
    }

    #[test]
    fn weight_system_dimensions_cross_checked() {
        let cases = [
            (ty(Family::B, 3), vec![0, 0, 1], 8u64),   // spinor of so7
            (ty(Family::D, 4), vec![0, 0, 0, 1], 8),   // half spin of so8
            (ty(Family::G, 2), vec![1, 0], 7),         // 7-dim of G2
            (ty(Family::C, 3), vec![0, 0, 1], 14),     // V(pi3) of sp6
            (ty(Family::C, 4), vec![0, 0, 0, 1], 42),  // V(pi4) of sp8
            (ty(Family::A, 7), vec![0, 0, 0, 1, 0, 0, 0], 70), // Lambda^4 C^8
            (ty(Family::D, 8), vec![0, 0, 0, 0, 0, 0, 0, 1], 128), // half spin of so16
            (ty(Family::A, 2), vec![1, 1], 8),         // adjoint of sl3
        ];
        for (t, hw, dim) in cases {
            let ws = weight_system(t, &WeightVec(hw)).unwrap();
            assert_eq!(ws.dim, dim, "{}", t);
        }
    }

    #[test]
    fn adjoint_matches_freudenthal_route() {
        for t in [ty(Family::A, 2), ty(Family::B, 3), ty(Family::G, 2), ty(Family::F, 4)] {
            let d = datum(t);
            let theta = d.highest_root().unwrap().fund.clone();
            let via_freudenthal = weight_system(t, &theta).unwrap();
            let direct = adjoint_weight_system(t);
            assert_eq!(via_freudenthal.dim, direct.dim);
            assert_eq!(via_freudenthal.weights, direct.weights);
        }
    }

    #[test]
    fn trace_sq_examples() {
        let a1 = ty(Family::A, 1);
        let d = datum(a1);
        let coroot: Vec<Rat> = d.long_root().coroot.iter().map(|&c| rat(c)).collect();
        // x = 0 -> 0
        assert!(trace_sq(&adjoint_weight_system(a1), &[Rat::zero()]).is_zero());
        // adjoint of A1 at the coroot -> 2^2 + 0 + (-2)^2 = 8
        assert_eq!(trace_sq(&adjoint_weight_system(a1), &coroot), rat(8));
        // defining module of A1 at the coroot -> 1 + 1 = 2
        let def = weight_system(a1, &WeightVec(vec![1])).unwrap();
        assert_eq!(trace_sq(&def, &coroot), rat(2));
    }

    #[test]
    fn trace_sq_weyl_invariant() {
        // trace_sq(ws, w.x) = trace_sq(ws, x) for Weyl images of coroots
        let t = ty(Family::B, 2);
        let d = datum(t);
        let ws = weight_system(t, &WeightVec(vec![1, 1])).unwrap();
        for root in d.roots() {
            let x: Vec<Rat> = root.coroot.iter().map(|&c| rat(c)).collect();
            let base = trace_sq(&ws, &x);
            // Weyl action on coroots: reflect the root, take its coroot
            for mirror in d.roots() {
                let image = d.reflect(&root.fund, mirror);
                let idx = d.root_index(&image).unwrap();
                let xi: Vec<Rat> = d.roots()[idx].coroot.iter().map(|&c| rat(c)).collect();
                assert_eq!(trace_sq(&ws, &xi), base);
            }
        }
    }

    #[test]
    fn k_const_table() {
        let cases = [
            (ty(Family::A, 1), 8),
            (ty(Family::A, 7), 32),
            (ty(Family::B, 2), 12),
            (ty(Family::B, 5), 36),
            (ty(Family::C, 3), 16),
            (ty(Family::D, 4), 24),
            (ty(Family::D, 8), 56),
            (ty(Family::E, 6), 48),
            (ty(Family::E, 7), 72),
            (ty(Family::E, 8), 120),
            (ty(Family::F, 4), 36),
            (ty(Family::G, 2), 16),
        ];
        for (t, k) in cases {
            assert_eq!(k_const(t).unwrap(), k, "{}", t);
        }
        // low-rank aliases: so_3 = B1 ~ A1 has k = 8, not 8*1-4
        assert_eq!(k_const(ty(Family::B, 1)).unwrap(), 8);
        assert_eq!(k_const(ty(Family::C, 1)).unwrap(), 8);
        assert_eq!(k_const(ty(Family::D, 2)).unwrap(), 8);
    }

    #[test]
    fn ak_system_literal_instances() {
        // E6 variant: RHS pair (4, 2*48-16 = 80)
        assert_eq!(AkVariant::Four.rhs(48), (4, 80));
        // E7 variant: (4, 128)
        assert_eq!(AkVariant::Four.rhs(72), (4, 128));
        // E8: (4, 224)
        assert_eq!(AkVariant::Four.rhs(120), (4, 224));
        // F4 variant: (8, 4*36-16 = 128)
        assert_eq!(AkVariant::Eight.rhs(36), (8, 128));
        // E6 with candidate C4 (index 1): a = 4, 4*20 = 80
        let sols =
            solve_ak_system(ty(Family::E, 6), &[(ty(Family::C, 4), 1)], AkVariant::Four).unwrap();
        assert_eq!(sols, vec![vec![4]]);
        // F4 with candidate C3 (index 1) under the Four variant: none
        let none =
            solve_ak_system(ty(Family::F, 4), &[(ty(Family::C, 3), 1)], AkVariant::Four).unwrap();
        assert!(none.is_empty());
        // F4 with C3 under Eight: a = 8
        let sols =
            solve_ak_system(ty(Family::F, 4), &[(ty(Family::C, 3), 1)], AkVariant::Eight).unwrap();
        assert_eq!(sols, vec![vec![8]]);
    }
}
