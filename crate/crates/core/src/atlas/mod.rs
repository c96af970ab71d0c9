//! The classification database: Λ-essential subalgebras and their root
//! lattices, weight lattices of affine homogeneous spaces of full rank,
//! the duality between `X/Λ` and the component group of the saturated
//! subgroup, and self-verification of every stored row.
//!
//! Table rows are data with symbolic rank parameters (shipped as a JSON
//! resource, see [`rows`]), instantiated on demand; every instantiation is
//! re-verified by [`verify::verify_row`] rather than trusted.
//!
//! All stored lattices use the simply-connected normalization, with one
//! exception: the row for `so_{2n+1} ⊇ so_{n+1}` stores its weight
//! lattice at the `SO_{2n+1}` level (flagged on the row).

pub mod rows;
pub mod verify;

use crate::lattice::{self, Lattice, RationalCharacter};
use crate::liealg::{datum, ReductiveAlgebra, SubFactor, SubName, SubalgebraId};
use crate::rootsys::{Family, SimpleType};
use crate::{int, Error, Int, Result};

pub use rows::{ChiValue, DualityRow, EssentialRow, RowSixReading};
pub use verify::{verify_row, Check, RowReport};

/// All table rows applicable to a simple type, instantiated at its rank.
pub fn lookup_essential(g: SimpleType) -> Result<Vec<EssentialRow>> {
    let mut out = Vec::new();
    for spec in &rows::table().rows {
        if let Some(n) = spec.ambient.param_for(g) {
            out.push(rows::instantiate_row(spec.row_no, n, RowSixReading::Inclusive)?);
        }
    }
    Ok(out)
}

/// Normalizes a factor for matching: inside `so_n` and `sp_2n` the plain
/// and `^diag` spellings of `sl_k` and `gl_k` name the same embedding.
fn normalize_factor(ambient: SimpleType, f: &SubFactor) -> SubFactor {
    let mut g = *f;
    if matches!(ambient.family(), Family::B | Family::C | Family::D)
        && matches!(f.name, SubName::Sl | SubName::Gl)
    {
        g.diag = false;
    }
    g
}

fn multiset_contains(haystack: &[SubFactor], needle: &[SubFactor]) -> bool {
    let mut pool: Vec<SubFactor> = haystack.to_vec();
    for item in needle {
        match pool.iter().position(|p| p == item) {
            Some(i) => {
                pool.remove(i);
            }
            None => return false,
        }
    }
    true
}

/// The unique maximal ideal of `h` (given as a list of ideals) that is a
/// Λ-essential subalgebra of `g`: the table row whose pattern matches a
/// sub-multiset of the ideals. Empty when none matches.
pub fn lambda_essential_ideal(
    g: SimpleType,
    ideals: &SubalgebraId,
) -> Result<Option<(u8, SubalgebraId)>> {
    let given: Vec<SubFactor> = ideals.0.iter().map(|f| normalize_factor(g, f)).collect();
    let mut best: Option<(u8, SubalgebraId)> = None;
    let mut best_size = 0usize;
    for spec in &rows::table().rows {
        let Some(n) = spec.ambient.param_for(g) else { continue };
        let pattern = rows::instantiate_pattern(&spec.sub_pattern, n)?;
        let pat: Vec<SubFactor> = pattern.0.iter().map(|f| normalize_factor(g, f)).collect();
        if multiset_contains(&given, &pat) && pat.len() > best_size {
            best_size = pat.len();
            best = Some((spec.row_no, pattern));
        }
    }
    Ok(best)
}

/// Root lattice `Λ(g, h)` of a reductive pair, assembled block-diagonally
/// over the central torus (zero block) and the simple factors; each factor
/// contributes its table row's lattice, or the full root lattice `Λ(g_i)`
/// when no essential ideal exists (in particular for `h_i = 0`).
pub fn root_lattice(g: &ReductiveAlgebra, subs: &[SubalgebraId]) -> Result<Lattice> {
    if subs.len() != g.factors.len() {
        return Err(Error::Dimension { expected: g.factors.len(), got: subs.len() });
    }
    let mut blocks = vec![Lattice::zero(g.center_rank)];
    for (t, id) in g.factors.iter().zip(subs.iter()) {
        let block = match lambda_essential_ideal(*t, id)? {
            Some((row_no, _)) => {
                let spec = rows::row_spec(row_no)?;
                let n = spec.ambient.param_for(*t).unwrap();
                rows::instantiate_row(row_no, n, RowSixReading::Inclusive)?.lattice
            }
            None => datum(*t).root_lattice(),
        };
        blocks.push(block);
    }
    Ok(Lattice::direct_sum(&blocks))
}

/// A weight-lattice query for an affine homogeneous space `G/H` of full
/// rank. The rank condition `rk_G(G/H) = rk G` is declared by the caller.
#[derive(Clone, Debug)]
pub struct HomSpaceQuery {
    pub ambient: ReductiveAlgebra,
    /// per-simple-factor subalgebra ids (trivial id for no intersection)
    pub subs: Vec<SubalgebraId>,
    /// generators of the characters of `H/H^0` on `X/Λ`, as rational
    /// characters of the ambient weight coordinates (must kill `Λ(g,h)`);
    /// only meaningful when `H` is contained in the saturation
    pub component_gens: Vec<RationalCharacter>,
    /// `H = H^{X-sat}`: the weight lattice is exactly `Λ(g,h)`
    pub saturated: bool,
}

impl HomSpaceQuery {
    pub fn connected(ambient: ReductiveAlgebra, subs: Vec<SubalgebraId>) -> Self {
        HomSpaceQuery { ambient, subs, component_gens: vec![], saturated: false }
    }
}

/// The stored weight lattice `X_{G_i, G_i/H_i^0}` of one simple factor.
fn factor_x_lattice(t: SimpleType, id: &SubalgebraId) -> Result<Lattice> {
    if id.0.is_empty() {
        // G_i / {e}: every character appears
        return Ok(Lattice::full(t.rank()));
    }
    match lambda_essential_ideal(t, id)? {
        Some((row_no, _)) => {
            let spec = rows::row_spec(row_no)?;
            let n = spec.ambient.param_for(t).unwrap();
            Ok(rows::instantiate_row(row_no, n, RowSixReading::Inclusive)?.x_lattice)
        }
        // No essential ideal: Λ(g,h) = Λ(g) and the connected weight
        // lattice is the full character lattice. (Valid when the center
        // meets H^0 trivially, which holds for the block subalgebras with
        // a fixed vector treated here.)
        None => Ok(Lattice::full(t.rank())),
    }
}

/// Weight lattice `X_{G, G/H}` per the classification:
/// * `H = H^0` connected: the stored per-row data,
/// * `H = H^{X-sat}`: exactly `Λ(g, h)`,
/// * `H^0 ⊆ H ⊆ H^{X-sat}`: the inverse image of the annihilator of
///   `H/H^0` under `X_{G,G/H^0} → X_{G,G/H^0}/Λ(g,h)`.
///
/// The result always satisfies `Λ(g,h) ⊆ X ⊆ X_{G,G/H^0}`.
pub fn weight_lattice(q: &HomSpaceQuery) -> Result<Lattice> {
    let lam = root_lattice(&q.ambient, &q.subs)?;
    if q.saturated {
        return Ok(lam);
    }
    let mut blocks = vec![Lattice::full(q.ambient.center_rank)];
    for (t, id) in q.ambient.factors.iter().zip(q.subs.iter()) {
        blocks.push(factor_x_lattice(*t, id)?);
    }
    let x0 = Lattice::direct_sum(&blocks);
    if q.component_gens.is_empty() {
        return Ok(x0);
    }
    let result = lattice::annihilator_preimage(&x0, &lam, &q.component_gens)?;
    debug_assert!(result.contains(&lam) && x0.contains(&result));
    Ok(result)
}

/// `chi_{k lambda}(h^m)` for a duality row; errors on the rows without a
/// nontrivial duality (10–13 and 15).
pub fn duality_pairing(row_no: u8, n: usize, k: i64, m: i64) -> Result<ChiValue> {
    let row = rows::instantiate_row(row_no, n, RowSixReading::Inclusive)?;
    let d = row.duality.ok_or(Error::NoDuality(row_no))?;
    Ok(d.pairing(k, m))
}

/// Stored dimension data of the distinguished-component cases: the
/// ambient group, the normalizer of `L_0` in it, the subgroup, and the
/// normalizer of `L_0` in the subgroup.
#[derive(Clone, Debug)]
pub struct DistinguishedCase {
    pub case: u8,
    pub param_n: usize,
    pub dim_g: Int,
    pub dim_ng: Int,
    pub dim_h: Int,
    pub dim_nh: Int,
}

impl DistinguishedCase {
    pub fn new(case: u8, n: usize) -> Result<DistinguishedCase> {
        let ni = n as i64;
        let (dim_g, dim_ng, dim_h, dim_nh) = match case {
            // so_{2n+1} >= so_{n+1}; N_G(L0) = S(O_2n x O_1), N_H = S(O_n x O_1)
            4 if n >= 3 => (
                ni * (2 * ni + 1),
                ni * (2 * ni - 1),
                (ni + 1) * ni / 2,
                ni * (ni - 1) / 2,
            ),
            // so_{2n+1} >= gl_n; N_G(L0) = S(O_{n+1} x O_n), N_H(L0)^0 = SO_n
            6 if n >= 3 => (ni * (2 * ni + 1), ni * ni, ni * ni, ni * (ni - 1) / 2),
            // sp_2n >= sl_n; N_G(L0)^0 = SL_2^n, N_H(L0)^0 a maximal torus
            7 if n >= 2 => (ni * (2 * ni + 1), 3 * ni, ni * ni - 1, ni - 1),
            // F4 >= C3: g^{L0} = D4 (dim 28), h^{L0} = sl2^3 (dim 9)
            11 => (52, 28, 21, 9),
            _ => {
                return Err(Error::RowNotApplicable { row: case, what: format!("n = {n}") });
            }
        };
        Ok(DistinguishedCase {
            case,
            param_n: n,
            dim_g: int(dim_g),
            dim_ng: int(dim_ng),
            dim_h: int(dim_h),
            dim_nh: int(dim_nh),
        })
    }

    /// The identity `dim G - dim N_G(L_0) = 2 (dim H - dim N_H(L_0))`.
    pub fn identity_holds(&self) -> bool {
        let lhs = &self.dim_g - &self.dim_ng;
        let rhs = int(2) * (&self.dim_h - &self.dim_nh);
        lhs == rhs
    }
}

/// Evaluates the dimension identity for a stored distinguished case.
pub fn verify_distinguished(case: u8, n: usize) -> Result<bool> {
    Ok(DistinguishedCase::new(case, n)?.identity_holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::quotient;

    fn st(f: Family, r: usize) -> SimpleType {
        SimpleType::new(f, r).unwrap()
    }

    #[test]
    fn lookup_matches_spec_examples() {
        // sl_5 -> rows 1 (so_5), 2 (sl_3), 3 (sp_4)
        let rows = lookup_essential(st(Family::A, 4)).unwrap();
        let mut nos: Vec<u8> = rows.iter().map(|r| r.row_no).collect();
        nos.sort();
        assert_eq!(nos, vec![1, 2, 3]);
        let r2 = rows.iter().find(|r| r.row_no == 2).unwrap();
        assert_eq!(r2.sub.to_string(), "sl(3)");
        let r3 = rows.iter().find(|r| r.row_no == 3).unwrap();
        assert_eq!(r3.sub.to_string(), "sp(4)");
        // G2 -> row 10 only, lattice 2 Lambda(g)
        let rows = lookup_essential(st(Family::G, 2)).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].row_no, 10);
        assert_eq!(rows[0].lattice, datum(st(Family::G, 2)).root_lattice().scale(2));
        // so_7 = B3 -> rows 4, 5, 6
        let rows = lookup_essential(st(Family::B, 3)).unwrap();
        let mut nos: Vec<u8> = rows.iter().map(|r| r.row_no).collect();
        nos.sort();
        assert_eq!(nos, vec![4, 5, 6]);
    }

    #[test]
    fn essential_ideal_examples() {
        // sp_{2n} with h = gl_n -> gl_n itself (row 8)
        let g = st(Family::C, 4);
        let id = SubalgebraId::parse("gl(4)").unwrap();
        let got = lambda_essential_ideal(g, &id).unwrap().unwrap();
        assert_eq!(got.0, 8);
        // sp_{4m+2} with h = sp_{2m} -> empty
        let g = st(Family::C, 5); // sp_10, m = 2
        let id = SubalgebraId::parse("sp(4)").unwrap();
        assert!(lambda_essential_ideal(g, &id).unwrap().is_none());
        // h = 0 -> empty
        assert!(lambda_essential_ideal(g, &SubalgebraId::trivial()).unwrap().is_none());
        // B_n: so(n+1)+so(n) matches row 5 over row 4
        let g = st(Family::B, 4);
        let id = SubalgebraId::parse("so(5)+so(4)").unwrap();
        assert_eq!(lambda_essential_ideal(g, &id).unwrap().unwrap().0, 5);
    }

    #[test]
    fn root_lattice_examples() {
        // sl_n, so_n -> 2 Lambda(g)
        let g = ReductiveAlgebra::simple(st(Family::A, 5));
        let l = root_lattice(&g, &[SubalgebraId::parse("so(6)").unwrap()]).unwrap();
        assert_eq!(l, datum(st(Family::A, 5)).root_lattice().scale(2));
        // sl_3 + sl_3, h = so_3 + 0 -> 2 Lambda(sl_3) + Lambda(sl_3)
        let g = ReductiveAlgebra { center_rank: 0, factors: vec![st(Family::A, 2); 2] };
        let l = root_lattice(
            &g,
            &[SubalgebraId::parse("so(3)").unwrap(), SubalgebraId::trivial()],
        )
        .unwrap();
        let expect = Lattice::direct_sum(&[
            datum(st(Family::A, 2)).root_lattice().scale(2),
            datum(st(Family::A, 2)).root_lattice(),
        ]);
        assert_eq!(l, expect);
        // sp_{4m+2} with sp_{2m}: Lambda(g,h) = Lambda(g)
        let g = ReductiveAlgebra::simple(st(Family::C, 5));
        let l = root_lattice(&g, &[SubalgebraId::parse("sp(4)").unwrap()]).unwrap();
        assert_eq!(l, datum(st(Family::C, 5)).root_lattice());
    }

    #[test]
    fn weight_lattice_examples() {
        // SL_n / SO_n connected: X = Span(2 pi_1, ..., 2 pi_{n-1})
        let g = ReductiveAlgebra::simple(st(Family::A, 5));
        let q = HomSpaceQuery::connected(g.clone(), vec![SubalgebraId::parse("so(6)").unwrap()]);
        assert_eq!(weight_lattice(&q).unwrap(), Lattice::full(5).scale(2));
        // H = H^{X-sat} -> Lambda(g,h) exactly
        let mut qs = q.clone();
        qs.saturated = true;
        assert_eq!(
            weight_lattice(&qs).unwrap(),
            datum(st(Family::A, 5)).root_lattice().scale(2)
        );
        // F4 / C3: X_{G,G/H^0} = Lambda(g,h)
        let g = ReductiveAlgebra::simple(st(Family::F, 4));
        let q = HomSpaceQuery::connected(g, vec![SubalgebraId::parse("sp(6)").unwrap()]);
        let x = weight_lattice(&q).unwrap();
        let row11 = rows::instantiate_row(11, 4, RowSixReading::Inclusive).unwrap();
        assert_eq!(x, row11.lattice);
    }

    #[test]
    fn weight_lattice_with_components() {
        // SL2 / SO2 with the full component group: X drops from 2P to
        // Lambda = 2Q = 4Z (in fundamental coordinates P = Z, Q = 2Z).
        let g = ReductiveAlgebra::simple(st(Family::A, 1));
        let mut q = HomSpaceQuery::connected(g, vec![SubalgebraId::parse("so(2)").unwrap()]);
        let x0 = weight_lattice(&q).unwrap();
        assert_eq!(x0, Lattice::full(1).scale(2));
        // X/Lambda = 2Z/4Z = Z/2; kill it with the character x -> x/4
        q.component_gens = vec![vec![crate::Rat::new(int(1), int(4))]];
        let x = weight_lattice(&q).unwrap();
        assert_eq!(x, Lattice::full(1).scale(4));
    }

    #[test]
    fn duality_examples() {
        // row 4: chi_{pi_1}(h) = -1
        let v = duality_pairing(4, 5, 1, 1).unwrap();
        assert_eq!(v, ChiValue::RootOfUnity { numer: 1, denom: 2 });
        assert_eq!(v.to_string(), "-1");
        // row 2: chi_{pi_1}(h(t)) = t^{-n-1}
        let v = duality_pairing(2, 3, 1, 1).unwrap();
        assert_eq!(v, ChiValue::Monomial { exponent: -4 });
        // k = 0 -> trivial character
        let v = duality_pairing(1, 4, 0, 5).unwrap();
        assert_eq!(v, ChiValue::RootOfUnity { numer: 0, denom: 1 });
        // rows without duality error out
        assert!(matches!(duality_pairing(13, 6, 1, 1), Err(Error::NoDuality(13))));
    }

    #[test]
    fn duality_orders_by_quotient() {
        // row 1 at n: order of 2 pi_1 in X/Lambda is n
        for n in 2..=8usize {
            let row = rows::instantiate_row(1, n, RowSixReading::Inclusive).unwrap();
            let d = row.duality.as_ref().unwrap();
            let ord = lattice::order_in_quotient(&row.x_lattice, &row.lattice, &d.lambda.to_ints())
                .unwrap();
            assert_eq!(ord, Some(int(n as i64)), "row 1 at n = {n}");
            assert_eq!(d.order, Some(int(n as i64)));
        }
        // row 1: X/Lambda = 2P/2Q is cyclic of order n
        let row = rows::instantiate_row(1, 6, RowSixReading::Inclusive).unwrap();
        let q = quotient(&row.x_lattice, &row.lattice).unwrap();
        assert_eq!(q.order(), Some(int(6)));
    }

    #[test]
    fn distinguished_cases() {
        // case 4, n = 5: dim so_11 - dim so_10 = 10 = 2(dim so_6 - dim so_5)
        let c = DistinguishedCase::new(4, 5).unwrap();
        assert_eq!(&c.dim_g - &c.dim_ng, int(10));
        assert!(c.identity_holds());
        // case 7, n = 3: N_G(L0)^0 = SL_2^3 has dimension 9
        let c = DistinguishedCase::new(7, 3).unwrap();
        assert_eq!(c.dim_ng, int(9));
        assert!(c.identity_holds());
        // case 11: D4 (28) versus sl_2^3 (9)
        let c = DistinguishedCase::new(11, 4).unwrap();
        assert_eq!((c.dim_ng.clone(), c.dim_nh.clone()), (int(28), int(9)));
        assert!(c.identity_holds());
        for n in 3..=8 {
            assert!(verify_distinguished(4, n).unwrap());
            assert!(verify_distinguished(6, n).unwrap());
            assert!(verify_distinguished(7, n).unwrap());
        }
    }
}
