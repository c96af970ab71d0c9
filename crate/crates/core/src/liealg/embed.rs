//! Embeddings of reductive subalgebras specified by branching data: the
//! decomposition of a fixed faithful reference module of the ambient
//! algebra (defining module for classical types, adjoint for exceptional
//! ones) into sub-irreducibles with central characters.
//!
//! Every quantity needed downstream — trace forms, Dynkin indices,
//! `tr h^2` evaluations — is a weight-system functional, so branching data
//! is the whole input.

use super::subid::{SubFactor, SubName, SubalgebraId};
use super::{adjoint_weight_system, datum, k_const, trace_sq, weight_system, ReductiveAlgebra};
use crate::rootsys::{Family, SimpleType, WeightVec};
use crate::{rat, Error, Rat, Result};
use num::{One, Signed, Zero};
use std::sync::Arc;

/// One irreducible summand of the restricted reference module: a highest
/// weight per simple factor of the subalgebra, a central character, and a
/// multiplicity.
#[derive(Clone, Debug)]
pub struct BranchSummand {
    pub factor_hws: Vec<WeightVec>,
    pub central: Vec<Rat>,
    pub mult: usize,
}

impl BranchSummand {
    fn dim(&self, sub: &ReductiveAlgebra) -> Result<u64> {
        let mut d = 1u64;
        for (t, hw) in sub.factors.iter().zip(self.factor_hws.iter()) {
            d *= weight_system(*t, hw)?.dim;
        }
        Ok(d * self.mult as u64)
    }
}

/// An element of the subalgebra's Cartan, given by coroot-basis
/// coordinates per simple factor plus pairings with the central
/// characters. Rational entries are allowed.
#[derive(Clone, Debug)]
pub struct CartanElement {
    pub per_factor: Vec<Vec<Rat>>,
    pub central: Vec<Rat>,
}

impl CartanElement {
    pub fn zero(sub: &ReductiveAlgebra) -> Self {
        CartanElement {
            per_factor: sub.factors.iter().map(|t| vec![Rat::zero(); t.rank()]).collect(),
            central: vec![Rat::zero(); sub.center_rank],
        }
    }

    /// Element supported on a single factor.
    pub fn on_factor(sub: &ReductiveAlgebra, j: usize, coords: Vec<Rat>) -> Self {
        let mut x = Self::zero(sub);
        x.per_factor[j] = coords;
        x
    }
}

/// A reductive subalgebra of a simple ambient algebra, given by the
/// branching of the reference module.
#[derive(Clone, Debug)]
pub struct EmbeddingSpec {
    pub ambient: SimpleType,
    pub sub: ReductiveAlgebra,
    pub branching: Vec<BranchSummand>,
    pub name: String,
}

/// Highest weight of the reference module: defining for classical types,
/// adjoint for exceptional ones.
pub fn reference_module(t: SimpleType) -> Result<WeightVec> {
    match t.family() {
        Family::A | Family::B | Family::C | Family::D => {
            let mut v = vec![0i64; t.rank()];
            v[0] = 1;
            Ok(WeightVec(v))
        }
        _ => Ok(datum(t).highest_root()?.fund.clone()),
    }
}

pub fn reference_dim(t: SimpleType) -> Result<u64> {
    match t.family() {
        Family::A => Ok(t.rank() as u64 + 1),
        Family::B => Ok(2 * t.rank() as u64 + 1),
        Family::C | Family::D => Ok(2 * t.rank() as u64),
        _ => Ok(datum(t).roots().len() as u64 + t.rank() as u64),
    }
}

/// Dynkin index of the reference module itself:
/// `tr_ref((long coroot)^2) / 2`. Equals 1 for sl/sp defining, 2 for the
/// so vector module, and `k_g / 2` for the exceptional adjoints.
pub fn reference_index(t: SimpleType) -> Result<Rat> {
    let d = datum(t);
    let x: Vec<Rat> = d.long_root().coroot.iter().map(|&c| rat(c)).collect();
    let tr = match t.family() {
        Family::A | Family::B | Family::C | Family::D => {
            let ws = weight_system(t, &reference_module(t)?)?;
            trace_sq(&ws, &x)
        }
        _ => trace_sq(&adjoint_weight_system(t), &x),
    };
    Ok(tr / rat(2))
}

impl EmbeddingSpec {
    pub fn new(
        ambient: SimpleType,
        sub: ReductiveAlgebra,
        branching: Vec<BranchSummand>,
        name: impl Into<String>,
    ) -> Result<EmbeddingSpec> {
        let e = EmbeddingSpec { ambient, sub, branching, name: name.into() };
        e.validate()?;
        Ok(e)
    }

    fn validate(&self) -> Result<()> {
        let expected = reference_dim(self.ambient)?;
        let mut total = 0u64;
        for s in &self.branching {
            if s.factor_hws.len() != self.sub.factors.len() {
                return Err(Error::Dimension {
                    expected: self.sub.factors.len(),
                    got: s.factor_hws.len(),
                });
            }
            if s.central.len() != self.sub.center_rank {
                return Err(Error::Dimension {
                    expected: self.sub.center_rank,
                    got: s.central.len(),
                });
            }
            total += s.dim(&self.sub)?;
        }
        if total != expected {
            return Err(Error::TableMismatch {
                computed: total.to_string(),
                stored: expected.to_string(),
            });
        }
        Ok(())
    }

    /// `tr_{V_ref}(x^2)` evaluated through the branching.
    pub fn trace_ref(&self, x: &CartanElement) -> Result<Rat> {
        let mut systems: Vec<Vec<Arc<super::WeightSystem>>> = Vec::new();
        for s in &self.branching {
            let mut per = Vec::new();
            for (t, hw) in self.sub.factors.iter().zip(s.factor_hws.iter()) {
                per.push(weight_system(*t, hw)?);
            }
            systems.push(per);
        }
        let mut total = Rat::zero();
        for (s, per) in self.branching.iter().zip(systems.iter()) {
            let mut base = Rat::zero();
            for (c, xc) in s.central.iter().zip(x.central.iter()) {
                base += c * xc;
            }
            // iterate the product of factor weight systems
            let mut acc = Rat::zero();
            cartesian_trace(per, &x.per_factor, 0, base, Rat::one(), &mut acc);
            total += acc * rat(s.mult as i64);
        }
        Ok(total)
    }

    /// `tr_g(x^2)` on the ambient adjoint: rescale the reference-module
    /// trace by `k_g / (2 * index(V_ref))`.
    pub fn trace_ambient_adjoint(&self, x: &CartanElement) -> Result<Rat> {
        let t_ref = self.trace_ref(x)?;
        let kg = rat(k_const(self.ambient)?);
        let iref = reference_index(self.ambient)?;
        Ok(t_ref * kg / (rat(2) * iref))
    }

    /// `tr_h(x^2)` on the subalgebra's own adjoint (the center contributes
    /// nothing).
    pub fn trace_sub_adjoint(&self, x: &CartanElement) -> Rat {
        let mut total = Rat::zero();
        for (t, coords) in self.sub.factors.iter().zip(x.per_factor.iter()) {
            total += trace_sq(&adjoint_weight_system(*t), coords);
        }
        total
    }

    /// Dynkin index of the designated simple factor, computed as the ratio
    /// of the normalized ambient and factor trace forms. Independence of
    /// the test element is checked on two elements; the result is a
    /// positive rational, asserted integral when the subalgebra is
    /// semisimple.
    pub fn dynkin_index(&self, factor: usize) -> Result<Rat> {
        let t = self.sub.factors[factor];
        let dj = datum(t);
        let x1: Vec<Rat> = dj.long_root().coroot.iter().map(|&c| rat(c)).collect();
        let mut x2: Vec<Rat> = {
            let idx = dj.root_index(&dj.simple_root(0)).unwrap();
            dj.roots()[idx].coroot.iter().map(|&c| rat(c)).collect()
        };
        if x2 == x1 {
            x2 = x1.iter().map(|v| v * rat(2)).collect();
        }
        let i1 = self.index_at(factor, &x1)?;
        let i2 = self.index_at(factor, &x2)?;
        if i1 != i2 {
            return Err(Error::Verification(format!(
                "Dynkin index of factor {} of {} depends on the test element: {} vs {}",
                factor, self.name, i1, i2
            )));
        }
        if !i1.is_positive() {
            return Err(Error::NotFaithful);
        }
        if self.sub.is_semisimple() && !i1.denom().is_one() {
            return Err(Error::Verification(format!(
                "Dynkin index {} of semisimple factor {} in {} is not an integer",
                i1, factor, self.name
            )));
        }
        Ok(i1)
    }

    pub fn dynkin_index_i64(&self, factor: usize) -> Result<i64> {
        let i = self.dynkin_index(factor)?;
        if !i.denom().is_one() {
            return Err(Error::Verification(format!("index {} is not an integer", i)));
        }
        Ok(i.to_integer().try_into().unwrap())
    }

    fn index_at(&self, factor: usize, coords: &[Rat]) -> Result<Rat> {
        let t = self.sub.factors[factor];
        let x = CartanElement::on_factor(&self.sub, factor, coords.to_vec());
        let t_w = self.trace_ref(&x)?;
        if t_w.is_zero() {
            return Err(Error::NotFaithful);
        }
        let k_h = rat(k_const(t)?);
        let t_adj = trace_sq(&adjoint_weight_system(t), coords);
        let i_g = reference_index(self.ambient)?;
        // K_g(x,x) = t_w / I_g ; K_h(x,x) = 2 * t_adj / k_h
        Ok((t_w / i_g) * k_h / (rat(2) * t_adj))
    }

    /// Per-factor candidates `(type, Dynkin index)` for the Diophantine
    /// certificates.
    pub fn certificate_candidates(&self) -> Result<Vec<(SimpleType, i64)>> {
        (0..self.sub.factors.len())
            .map(|j| Ok((self.sub.factors[j], self.dynkin_index_i64(j)?)))
            .collect()
    }
}

fn cartesian_trace(
    systems: &[Arc<super::WeightSystem>],
    coords: &[Vec<Rat>],
    j: usize,
    pairing: Rat,
    mult: Rat,
    acc: &mut Rat,
) {
    if j == systems.len() {
        *acc += mult * (&pairing * &pairing);
        return;
    }
    for (w, m) in &systems[j].weights {
        let mut p = pairing.clone();
        for (c, xc) in w.0.iter().zip(coords[j].iter()) {
            if *c != 0 {
                p += rat(*c) * xc;
            }
        }
        cartesian_trace(systems, coords, j + 1, p, mult.clone() * rat(*m as i64), acc);
    }
}

/// Which exact trace identity to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceVariant {
    /// `tr_g h^2 = 2 tr_h h^2 + 8`
    Standard,
    /// the G2 variant `tr_h h^2 = 4`
    G2Short,
}

/// Evaluates both sides of the chosen identity exactly; returns the
/// verdict together with `(tr_g h^2, tr_h h^2)`.
pub fn check_trace_identity(
    e: &EmbeddingSpec,
    x: &CartanElement,
    variant: TraceVariant,
) -> Result<(bool, Rat, Rat)> {
    let tr_g = e.trace_ambient_adjoint(x)?;
    let tr_h = e.trace_sub_adjoint(x);
    let ok = match variant {
        TraceVariant::Standard => tr_g == rat(2) * &tr_h + rat(8),
        TraceVariant::G2Short => tr_h == rat(4),
    };
    Ok((ok, tr_g, tr_h))
}

// ---------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------

fn hw(coords: Vec<i64>) -> WeightVec {
    WeightVec(coords)
}

fn fund(rank: usize, i: usize) -> WeightVec {
    WeightVec::fundamental(rank, i)
}

fn st(f: Family, r: usize) -> Result<SimpleType> {
    SimpleType::new(f, r)
}

/// The identity embedding `g` in `g`.
pub fn identity_embedding(t: SimpleType) -> Result<EmbeddingSpec> {
    let summand =
        BranchSummand { factor_hws: vec![reference_module(t)?], central: vec![], mult: 1 };
    EmbeddingSpec::new(t, ReductiveAlgebra::simple(t), vec![summand], format!("{t} in {t}"))
}

/// Branching pieces contributed by one named factor inside a classical
/// defining module: simple factors, an optional central charge direction,
/// summands over those factors, and the dimension of the support.
struct Piece {
    factors: Vec<SimpleType>,
    has_center: bool,
    /// (per-factor highest weights, central charge, multiplicity)
    summands: Vec<(Vec<WeightVec>, i64, usize)>,
    support: usize,
}

fn so_vector_piece(k: usize) -> Result<Piece> {
    Ok(match k {
        0 => return Err(Error::UnrecognizedSubalgebra("so(0)".into())),
        1 => Piece { factors: vec![], has_center: false, summands: vec![(vec![], 0, 1)], support: 1 },
        2 => Piece {
            factors: vec![],
            has_center: true,
            summands: vec![(vec![], 1, 1), (vec![], -1, 1)],
            support: 2,
        },
        3 => Piece {
            factors: vec![st(Family::A, 1)?],
            has_center: false,
            summands: vec![(vec![hw(vec![2])], 0, 1)],
            support: 3,
        },
        4 => Piece {
            factors: vec![st(Family::A, 1)?, st(Family::A, 1)?],
            has_center: false,
            summands: vec![(vec![hw(vec![1]), hw(vec![1])], 0, 1)],
            support: 4,
        },
        5 => Piece {
            factors: vec![st(Family::B, 2)?],
            has_center: false,
            summands: vec![(vec![fund(2, 0)], 0, 1)],
            support: 5,
        },
        6 => Piece {
            factors: vec![st(Family::D, 3)?],
            has_center: false,
            summands: vec![(vec![fund(3, 0)], 0, 1)],
            support: 6,
        },
        _ => {
            let t = if k % 2 == 1 { st(Family::B, k / 2)? } else { st(Family::D, k / 2)? };
            Piece {
                factors: vec![t],
                has_center: false,
                summands: vec![(vec![fund(t.rank(), 0)], 0, 1)],
                support: k,
            }
        }
    })
}

fn sl_defining_piece(k: usize) -> Result<Piece> {
    Ok(match k {
        0 => return Err(Error::UnrecognizedSubalgebra("sl(0)".into())),
        1 => Piece { factors: vec![], has_center: false, summands: vec![(vec![], 0, 1)], support: 1 },
        _ => {
            let t = st(Family::A, k - 1)?;
            Piece {
                factors: vec![t],
                has_center: false,
                summands: vec![(vec![fund(k - 1, 0)], 0, 1)],
                support: k,
            }
        }
    })
}

fn sp_defining_piece(k: usize) -> Result<Piece> {
    if k % 2 != 0 || k == 0 {
        return Err(Error::UnrecognizedSubalgebra(format!("sp({k})")));
    }
    let m = k / 2;
    let t = if m == 1 { st(Family::A, 1)? } else { st(Family::C, m)? };
    Ok(Piece {
        factors: vec![t],
        has_center: false,
        summands: vec![(vec![fund(t.rank(), 0)], 0, 1)],
        support: k,
    })
}

/// tau + tau* of a piece (equal to two copies when tau is self-dual).
fn doubled_piece(inner: Piece, dualize_sl: bool) -> Piece {
    let mut summands = Vec::new();
    for (hws, c, m) in &inner.summands {
        summands.push((hws.clone(), *c, *m));
        if dualize_sl {
            // dual of the defining module of A_{k-1} is the last fundamental
            let dual: Vec<WeightVec> = hws
                .iter()
                .zip(inner.factors.iter())
                .map(|(w, t)| {
                    if w == &fund(t.rank(), 0) && t.family() == Family::A && t.rank() >= 2 {
                        fund(t.rank(), t.rank() - 1)
                    } else {
                        w.clone()
                    }
                })
                .collect();
            summands.push((dual, -c, *m));
        } else {
            summands.push((hws.clone(), -c, *m));
        }
    }
    Piece {
        factors: inner.factors,
        has_center: inner.has_center,
        summands,
        support: inner.support * 2,
    }
}

fn spin7_piece() -> Result<Piece> {
    let t = st(Family::B, 3)?;
    Ok(Piece {
        factors: vec![t],
        has_center: false,
        summands: vec![(vec![fund(3, 2)], 0, 1)],
        support: 8,
    })
}

fn g2_piece() -> Result<Piece> {
    let t = st(Family::G, 2)?;
    Ok(Piece {
        factors: vec![t],
        has_center: false,
        summands: vec![(vec![fund(2, 0)], 0, 1)],
        support: 7,
    })
}

fn piece_for(ambient: SimpleType, f: &SubFactor) -> Result<Piece> {
    let amb = ambient.family();
    match (f.name, amb) {
        (SubName::Sl, Family::A) => sl_defining_piece(f.k),
        (SubName::So, Family::A) => so_vector_piece(f.k),
        (SubName::Sp, Family::A) => sp_defining_piece(f.k),
        (SubName::So, Family::B | Family::D) if !f.diag => so_vector_piece(f.k),
        (SubName::Sp, Family::C) if !f.diag => sp_defining_piece(f.k),
        // tau + tau* embeddings into so_n and sp_n
        (SubName::Gl | SubName::Sl, Family::B | Family::C | Family::D) => {
            let mut p = doubled_piece(sl_defining_piece(f.k)?, true);
            p.has_center = f.name == SubName::Gl;
            if p.has_center {
                // charges +-1 on tau / tau*
                p.summands = p
                    .summands
                    .iter()
                    .enumerate()
                    .map(|(i, (hws, _, m))| (hws.clone(), if i % 2 == 0 { 1 } else { -1 }, *m))
                    .collect();
            }
            Ok(p)
        }
        (SubName::So, Family::B | Family::C | Family::D) if f.diag => {
            Ok(doubled_piece(so_vector_piece(f.k)?, false))
        }
        (SubName::Sp, Family::B | Family::C | Family::D) if f.diag => {
            Ok(doubled_piece(sp_defining_piece(f.k)?, false))
        }
        (SubName::Spin, Family::B | Family::D) => spin7_piece(),
        (SubName::G2, Family::B | Family::D) => g2_piece(),
        _ => Err(Error::UnrecognizedSubalgebra(format!("{f} in {ambient}"))),
    }
}

/// Builds the embedding of a subalgebra named by `id` inside a classical
/// ambient algebra, via the defining module. Direct sums get complementary
/// supports; the remainder of the defining module is trivial.
pub fn classical_subalgebra(ambient: SimpleType, id: &SubalgebraId) -> Result<EmbeddingSpec> {
    let n = reference_dim(ambient)? as usize;
    let mut pieces = Vec::new();
    for f in &id.0 {
        pieces.push(piece_for(ambient, f)?);
    }
    let used: usize = pieces.iter().map(|p| p.support).sum();
    if used > n {
        return Err(Error::UnrecognizedSubalgebra(format!(
            "{id} does not fit into the defining module of {ambient}"
        )));
    }
    let mut factors = Vec::new();
    let mut center_rank = 0usize;
    for p in &pieces {
        factors.extend(p.factors.iter().copied());
        if p.has_center {
            center_rank += 1;
        }
    }
    let sub = ReductiveAlgebra { center_rank, factors };
    let mut branching: Vec<BranchSummand> = Vec::new();
    let mut factor_offset = 0usize;
    let mut center_offset = 0usize;
    for p in &pieces {
        for (hws, charge, mult) in &p.summands {
            let mut all_hws: Vec<WeightVec> =
                sub.factors.iter().map(|t| WeightVec::zero(t.rank())).collect();
            for (i, w) in hws.iter().enumerate() {
                all_hws[factor_offset + i] = w.clone();
            }
            let mut central = vec![Rat::zero(); center_rank];
            if p.has_center {
                central[center_offset] = rat(*charge);
            }
            branching.push(BranchSummand { factor_hws: all_hws, central, mult: *mult });
        }
        factor_offset += p.factors.len();
        if p.has_center {
            center_offset += 1;
        }
    }
    if used < n {
        branching.push(BranchSummand {
            factor_hws: sub.factors.iter().map(|t| WeightVec::zero(t.rank())).collect(),
            central: vec![Rat::zero(); center_rank],
            mult: n - used,
        });
    }
    EmbeddingSpec::new(ambient, sub, branching, format!("{id} in {ambient}"))
}

/// Curated adjoint branchings for the exceptional table rows.
pub mod exceptional {
    use super::*;

    fn spec(
        ambient: SimpleType,
        factors: Vec<SimpleType>,
        summands: Vec<(Vec<WeightVec>, usize)>,
        name: &str,
    ) -> Result<EmbeddingSpec> {
        let sub = ReductiveAlgebra { center_rank: 0, factors };
        let branching = summands
            .into_iter()
            .map(|(hws, mult)| BranchSummand { factor_hws: hws, central: vec![], mult })
            .collect();
        EmbeddingSpec::new(ambient, sub, branching, name)
    }

    /// `A1 + A1~` in G2 (long-root sl2 times short-root sl2):
    /// `g2 = (3,1) + (1,3) + (2,4)`. The first factor is the long one
    /// (Dynkin index 1), the second the short one (index 3).
    pub fn g2_a1_a1() -> Result<EmbeddingSpec> {
        let g2 = st(Family::G, 2)?;
        let a1 = st(Family::A, 1)?;
        spec(
            g2,
            vec![a1, a1],
            vec![
                (vec![hw(vec![2]), hw(vec![0])], 1),
                (vec![hw(vec![0]), hw(vec![2])], 1),
                (vec![hw(vec![1]), hw(vec![3])], 1),
            ],
            "sl(2)+sl(2) in G2",
        )
    }

    /// C3 in F4: `f4 = sp6 + V(pi3)^2 + C^3`.
    pub fn f4_c3() -> Result<EmbeddingSpec> {
        let f4 = st(Family::F, 4)?;
        let c3 = st(Family::C, 3)?;
        spec(
            f4,
            vec![c3],
            vec![
                (vec![hw(vec![2, 0, 0])], 1),
                (vec![fund(3, 2)], 2),
                (vec![hw(vec![0, 0, 0])], 3),
            ],
            "sp(6) in F4",
        )
    }

    /// C3 + A1 in F4: `f4 = (21,1) + (1,3) + (14', 2)`.
    pub fn f4_c3_a1() -> Result<EmbeddingSpec> {
        let f4 = st(Family::F, 4)?;
        let c3 = st(Family::C, 3)?;
        let a1 = st(Family::A, 1)?;
        spec(
            f4,
            vec![c3, a1],
            vec![
                (vec![hw(vec![2, 0, 0]), hw(vec![0])], 1),
                (vec![hw(vec![0, 0, 0]), hw(vec![2])], 1),
                (vec![fund(3, 2), hw(vec![1])], 1),
            ],
            "sp(6)+sl(2) in F4",
        )
    }

    /// C4 in E6: `e6 = sp8 + V(pi4)`.
    pub fn e6_c4() -> Result<EmbeddingSpec> {
        let e6 = st(Family::E, 6)?;
        let c4 = st(Family::C, 4)?;
        spec(
            e6,
            vec![c4],
            vec![(vec![hw(vec![2, 0, 0, 0])], 1), (vec![fund(4, 3)], 1)],
            "sp(8) in E6",
        )
    }

    /// A7 in E7: `e7 = sl8 + Lambda^4 C^8`.
    pub fn e7_a7() -> Result<EmbeddingSpec> {
        let e7 = st(Family::E, 7)?;
        let a7 = st(Family::A, 7)?;
        spec(
            e7,
            vec![a7],
            vec![
                (vec![hw(vec![1, 0, 0, 0, 0, 0, 1])], 1),
                (vec![fund(7, 3)], 1),
            ],
            "sl(8) in E7",
        )
    }

    /// D8 in E8: `e8 = so16 + half-spin`.
    pub fn e8_d8() -> Result<EmbeddingSpec> {
        let e8 = st(Family::E, 8)?;
        let d8 = st(Family::D, 8)?;
        spec(
            e8,
            vec![d8],
            vec![(vec![fund(8, 1)], 1), (vec![fund(8, 7)], 1)],
            "so(16) in E8",
        )
    }
}

/// Builds the embedding for a subalgebra id inside any simple ambient:
/// classical ambients go through the defining module; the exceptional
/// pairs of the classification table are curated.
pub fn subalgebra_embedding(ambient: SimpleType, id: &SubalgebraId) -> Result<EmbeddingSpec> {
    use Family::*;
    match ambient.family() {
        A | B | C | D => classical_subalgebra(ambient, id),
        G => match id.sorted().as_slice() {
            [f1, f2]
                if f1.name == SubName::Sl
                    && f2.name == SubName::Sl
                    && f1.k == 2
                    && f2.k == 2 =>
            {
                exceptional::g2_a1_a1()
            }
            _ => Err(Error::UnrecognizedSubalgebra(format!("{id} in {ambient}"))),
        },
        F => match id.sorted().as_slice() {
            [f] if f.name == SubName::Sp && f.k == 6 => exceptional::f4_c3(),
            [f1, f2]
                if f1.name == SubName::Sl
                    && f1.k == 2
                    && f2.name == SubName::Sp
                    && f2.k == 6 =>
            {
                exceptional::f4_c3_a1()
            }
            _ => Err(Error::UnrecognizedSubalgebra(format!("{id} in {ambient}"))),
        },
        E => match (ambient.rank(), id.sorted().as_slice()) {
            (6, [f]) if f.name == SubName::Sp && f.k == 8 => exceptional::e6_c4(),
            (7, [f]) if f.name == SubName::Sl && f.k == 8 => exceptional::e7_a7(),
            (8, [f]) if f.name == SubName::So && f.k == 16 => exceptional::e8_d8(),
            _ => Err(Error::UnrecognizedSubalgebra(format!("{id} in {ambient}"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(f: Family, r: usize) -> SimpleType {
        SimpleType::new(f, r).unwrap()
    }

    #[test]
    fn identity_embedding_has_index_one() {
        for t in [ty(Family::A, 3), ty(Family::B, 2), ty(Family::G, 2)] {
            let e = identity_embedding(t).unwrap();
            assert_eq!(e.dynkin_index(0).unwrap(), rat(1), "{}", t);
        }
    }

    #[test]
    fn principal_so3_in_sl3_has_index_four() {
        let id = SubalgebraId::parse("so(3)").unwrap();
        let e = classical_subalgebra(ty(Family::A, 2), &id).unwrap();
        assert_eq!(e.dynkin_index(0).unwrap(), rat(4));
    }

    #[test]
    fn so3_diag_in_sp6_has_index_eight_and_additivity() {
        // so3 -> sl3 -> sp6: indices 4 and 2, product 8
        let so3_sl3 = classical_subalgebra(ty(Family::A, 2), &SubalgebraId::parse("so(3)").unwrap())
            .unwrap();
        let sl3_sp6 =
            classical_subalgebra(ty(Family::C, 3), &SubalgebraId::parse("sl(3)").unwrap()).unwrap();
        assert_eq!(so3_sl3.dynkin_index(0).unwrap(), rat(4));
        assert_eq!(sl3_sp6.dynkin_index(0).unwrap(), rat(2));
        // direct route: so3 with C^6 = V(2) + V(2)
        let e = classical_subalgebra(ty(Family::C, 3), &SubalgebraId::parse("so(3)^diag").unwrap())
            .unwrap();
        assert_eq!(e.dynkin_index(0).unwrap(), rat(8));
    }

    #[test]
    fn block_indices() {
        // so_n in sl_n has index 2 (vector module index 2, defining index 1)
        for n in [5usize, 6, 7] {
            let e = classical_subalgebra(
                ty(Family::A, n - 1),
                &SubalgebraId::parse(&format!("so({n})")).unwrap(),
            )
            .unwrap();
            assert_eq!(e.dynkin_index(0).unwrap(), rat(2), "so({n}) in sl({n})");
        }
        // so_{n+1} block in so_{2n+1} has index 1
        let e = classical_subalgebra(ty(Family::B, 5), &SubalgebraId::parse("so(6)").unwrap())
            .unwrap();
        assert_eq!(e.dynkin_index(0).unwrap(), rat(1));
        // sl_n^diag in sp_2n has index 2
        let e = classical_subalgebra(ty(Family::C, 4), &SubalgebraId::parse("sl(4)").unwrap())
            .unwrap();
        assert_eq!(e.dynkin_index(0).unwrap(), rat(2));
    }

    #[test]
    fn g2_factor_indices() {
        let e = exceptional::g2_a1_a1().unwrap();
        assert_eq!(e.dynkin_index(0).unwrap(), rat(1));
        assert_eq!(e.dynkin_index(1).unwrap(), rat(3));
    }

    #[test]
    fn exceptional_rows_have_index_one() {
        for e in [
            exceptional::e6_c4().unwrap(),
            exceptional::e7_a7().unwrap(),
            exceptional::e8_d8().unwrap(),
        ] {
            assert_eq!(e.dynkin_index(0).unwrap(), rat(1), "{}", e.name);
        }
        let f = exceptional::f4_c3_a1().unwrap();
        assert_eq!(f.dynkin_index(0).unwrap(), rat(1));
        assert_eq!(f.dynkin_index(1).unwrap(), rat(1));
    }

    #[test]
    fn trace_identity_g2() {
        // x = (coroot1 + coroot2)/2 satisfies both tr_h = 4 and the
        // standard identity tr_g = 2 tr_h + 8 = 16
        let e = exceptional::g2_a1_a1().unwrap();
        let half = Rat::new(crate::int(1), crate::int(2));
        let x = CartanElement {
            per_factor: vec![vec![half.clone()], vec![half]],
            central: vec![],
        };
        let (ok, trg, trh) = check_trace_identity(&e, &x, TraceVariant::G2Short).unwrap();
        assert!(ok);
        assert_eq!(trh, rat(4));
        assert_eq!(trg, rat(16));
        let (ok2, _, _) = check_trace_identity(&e, &x, TraceVariant::Standard).unwrap();
        assert!(ok2);
    }

    #[test]
    fn trace_identity_fails_for_identity_embedding() {
        // tr_g = 2 tr_g + 8 would force tr_g = -8, impossible
        let e = identity_embedding(ty(Family::A, 2)).unwrap();
        let d = datum(ty(Family::A, 2));
        let x = CartanElement::on_factor(
            &e.sub,
            0,
            d.long_root().coroot.iter().map(|&c| rat(c)).collect(),
        );
        let (ok, _, _) = check_trace_identity(&e, &x, TraceVariant::Standard).unwrap();
        assert!(!ok);
    }
}
