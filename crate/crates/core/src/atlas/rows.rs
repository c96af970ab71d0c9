//! Machine records of the classification table rows, shipped as a
//! versioned JSON resource and instantiated at concrete rank on demand.
//! The `ATLAS_DATA` environment variable overrides the bundled resource
//! path.

use crate::lattice::Lattice;
use crate::liealg::{AkVariant, SubalgebraId};
use crate::rootsys::epsilon;
use crate::rootsys::{Family, SimpleType, WeightVec};
use crate::{int, Error, Int, Rat, Result};
use serde::Deserialize;
use std::sync::OnceLock;

#[derive(Deserialize, Clone, Debug)]
pub struct TablesFile {
    pub version: u32,
    pub rows: Vec<RowSpec>,
}

#[derive(Deserialize, Clone, Debug)]
pub struct AmbientPattern {
    pub family: String,
    #[serde(default)]
    pub min_n: usize,
}

#[derive(Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    DoubleRootLattice,
    EpsOffCenterIndex,
    EpsParityClassesSumZero,
    EpsTotalParity,
    EpsClassParity,
    EpsDoubled,
    F4TotalParity,
}

#[derive(Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum XRuleKind {
    DoubleWeightLattice,
    FullWeightLattice,
    EpsIntegerLattice,
    LambdaAdjoin,
    SameAsLambda,
}

#[derive(Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum LambdaKind {
    TwoPi1,
    Pi1,
    Pi2,
    PiN,
    TwoPiN,
}

#[derive(Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    N,
    Two,
    Infinite,
}

#[derive(Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ChiKind {
    RootOfUnityMinusOneOverN,
    MinusOne,
    MonomialMinusNPlusOne,
    MonomialTwo,
}

#[derive(Deserialize, Clone, Debug)]
pub struct DualitySpec {
    pub lambda: LambdaKind,
    pub order: OrderKind,
    pub chi: ChiKind,
    pub generator: String,
    #[serde(default)]
    pub rank_guard: Option<String>,
}

#[derive(Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum CertVariant {
    Four,
    Eight,
    G2Trace,
}

#[derive(Deserialize, Clone, Copy, Debug)]
pub struct CertSpec {
    pub variant: CertVariant,
    pub expect_solvable: bool,
    pub min_n: usize,
}

#[derive(Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum WRuleKind {
    Full,
    OffCenterIndex,
    ParityClasses,
    ClassPair,
}

#[derive(Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum TraceTripleKind {
    /// element of eigenvalues (1, -1, 0, ...) in a single so block
    SoBlockOne,
    /// element of eigenvalues (2, -2, 0, ...) in a single so block
    SoBlockTwo,
    /// eigenvalues (1, -1) in each of two so blocks
    SoPairOne,
}

#[derive(Deserialize, Clone, Debug)]
pub struct RowSpec {
    pub row_no: u8,
    pub ambient: AmbientPattern,
    pub sub_pattern: String,
    pub lattice_rule: RuleKind,
    pub expected_corank: usize,
    pub x_rule: XRuleKind,
    pub w_rule: WRuleKind,
    #[serde(default)]
    pub duality: Option<DualitySpec>,
    #[serde(default)]
    pub certs: Vec<CertSpec>,
    #[serde(default)]
    pub trace_triple: Option<TraceTripleKind>,
    #[serde(default)]
    pub index_in_root_lattice: Option<String>,
    #[serde(default)]
    pub so_normalization: bool,
}

/// Loads the row table, honoring the `ATLAS_DATA` override.
pub fn table() -> &'static TablesFile {
    static TABLE: OnceLock<TablesFile> = OnceLock::new();
    TABLE.get_or_init(|| {
        let text = match std::env::var("ATLAS_DATA") {
            Ok(path) => std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("cannot read ATLAS_DATA={path}: {e}")),
            Err(_) => include_str!("tables.json").to_string(),
        };
        let file: TablesFile = serde_json::from_str(&text).expect("malformed atlas table data");
        assert_eq!(file.version, 1, "unsupported atlas table version");
        assert_eq!(file.rows.len(), 15, "atlas table must have 15 rows");
        file
    })
}

pub fn row_spec(row_no: u8) -> Result<&'static RowSpec> {
    table()
        .rows
        .iter()
        .find(|r| r.row_no == row_no)
        .ok_or(Error::RowNotApplicable { row: row_no, what: "no such row".into() })
}

impl AmbientPattern {
    /// The simple ambient type at table parameter `n`.
    pub fn ambient_at(&self, n: usize) -> Result<SimpleType> {
        match self.family.as_str() {
            "sl" => SimpleType::new(Family::A, n - 1),
            "sl_odd" => SimpleType::new(Family::A, 2 * n),
            "so_odd" => SimpleType::new(Family::B, n),
            "sp" => SimpleType::new(Family::C, n),
            "so_even" => SimpleType::new(Family::D, n),
            "G2" => SimpleType::new(Family::G, 2),
            "F4" => SimpleType::new(Family::F, 4),
            "E6" => SimpleType::new(Family::E, 6),
            "E7" => SimpleType::new(Family::E, 7),
            "E8" => SimpleType::new(Family::E, 8),
            other => Err(Error::Parse(format!("unknown ambient family {other}"))),
        }
    }

    /// Inverse of `ambient_at`: the table parameter realizing `g`, if any.
    pub fn param_for(&self, g: SimpleType) -> Option<usize> {
        let n = match (self.family.as_str(), g.family(), g.rank()) {
            ("sl", Family::A, r) => r + 1,
            ("sl_odd", Family::A, r) if r % 2 == 0 => r / 2,
            ("so_odd", Family::B, r) => r,
            ("sp", Family::C, r) => r,
            ("so_even", Family::D, r) => r,
            ("G2", Family::G, _) => 2,
            ("F4", Family::F, _) => 4,
            ("E6", Family::E, 6) => 6,
            ("E7", Family::E, 7) => 7,
            ("E8", Family::E, 8) => 8,
            _ => return None,
        };
        if n >= self.min_n.max(1) {
            Some(n)
        } else {
            None
        }
    }
}

/// Evaluates a linear expression in `n` like `2n+1`, `n`, `6`.
fn eval_expr(expr: &str, n: usize) -> Result<usize> {
    let e = expr.trim();
    let bad = || Error::Parse(format!("bad rank expression {expr}"));
    let (head, tail) = match e.find(['+', '-']) {
        Some(pos) => (&e[..pos], Some((e.as_bytes()[pos] as char, &e[pos + 1..]))),
        None => (e, None),
    };
    let head_val = parse_term(head, n).ok_or_else(bad)?;
    match tail {
        None => Ok(head_val),
        Some((op, rest)) => {
            let rest_val = parse_term(rest, n).ok_or_else(bad)?;
            match op {
                '+' => Ok(head_val + rest_val),
                '-' => head_val.checked_sub(rest_val).ok_or_else(bad),
                _ => Err(bad()),
            }
        }
    }
}

fn parse_term(t: &str, n: usize) -> Option<usize> {
    let t = t.trim();
    if let Some(coef) = t.strip_suffix('n') {
        let c: usize = if coef.is_empty() { 1 } else { coef.trim().parse().ok()? };
        Some(c * n)
    } else {
        t.parse().ok()
    }
}

/// Splits `so(n+1)+so(n)` on top-level `+` only.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Instantiates a symbolic sub pattern like `so(n+1)+so(n)` at rank `n`.
pub fn instantiate_pattern(pattern: &str, n: usize) -> Result<SubalgebraId> {
    let mut rendered = Vec::new();
    for part in split_top_level(pattern) {
        let part = part.trim();
        if let Some(open) = part.find('(') {
            let close = part.rfind(')').ok_or_else(|| Error::Parse(part.to_string()))?;
            let k = eval_expr(&part[open + 1..close], n)?;
            rendered.push(format!("{}({}){}", &part[..open], k, &part[close + 1..]));
        } else {
            rendered.push(part.to_string());
        }
    }
    SubalgebraId::parse(&rendered.join("+"))
}

fn eps_gen(t: SimpleType, v: &[i64]) -> Result<WeightVec> {
    epsilon::from_epsilon_i64_any(t, v)
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0i64; dim];
    v[i] = 1;
    v
}

fn two_unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0i64; dim];
    v[i] = 2;
    v
}

fn pair(dim: usize, i: usize, j: usize, si: i64, sj: i64) -> Vec<i64> {
    let mut v = vec![0i64; dim];
    v[i] = si;
    v[j] = sj;
    v
}

/// Index set of the row-6 parity condition: all `j` in `1..=n` congruent
/// to `n` mod 2. The paper's literal reading (omitting `x_n`) is kept
/// available behind the flag for comparison; the inclusive reading is the
/// one passing the verification gate and is the default.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowSixReading {
    /// indices `n, n-2, n-4, ...` (default)
    Inclusive,
    /// the literal `i >= 1` range `n-2, n-4, ...`
    Literal,
}

pub fn row_six_class(n: usize, reading: RowSixReading) -> Vec<usize> {
    let mut s: Vec<usize> = (1..=n).filter(|j| j % 2 == n % 2).collect();
    if reading == RowSixReading::Literal {
        s.retain(|&j| j != n);
    }
    s
}

fn parity_class_lattice(ambient: SimpleType, class: &[usize]) -> Result<Lattice> {
    // {x in Z^n : sum over `class` of x_j even}, 1-based indices
    let n = ambient.rank();
    let mut gens = Vec::new();
    let inside: Vec<usize> = class.iter().map(|&j| j - 1).collect();
    let outside: Vec<usize> = (0..n).filter(|i| !inside.contains(i)).collect();
    for &i in &outside {
        gens.push(eps_gen(ambient, &unit(n, i))?);
    }
    for w in inside.windows(2) {
        gens.push(eps_gen(ambient, &pair(n, w[0], w[1], 1, 1))?);
    }
    if let Some(&first) = inside.first() {
        gens.push(eps_gen(ambient, &two_unit(n, first))?);
    }
    let rows: Vec<Vec<i64>> = gens.into_iter().map(|g| g.0).collect();
    Ok(Lattice::from_i64_rows(n, &rows))
}

impl RuleKind {
    /// Instantiates the lattice rule at table parameter `n`, producing a
    /// lattice in the fundamental coordinates of the ambient type.
    pub fn instantiate(
        self,
        ambient: SimpleType,
        n: usize,
        row6: RowSixReading,
    ) -> Result<Lattice> {
        let rank = ambient.rank();
        match self {
            RuleKind::DoubleRootLattice => {
                Ok(crate::liealg::datum(ambient).root_lattice().scale(2))
            }
            RuleKind::EpsOffCenterIndex => {
                // {sum over i != n+1 of x_i eps_i : sum = 0} inside sl_{2n+1}
                let dim = 2 * n + 1;
                let idx: Vec<usize> = (0..dim).filter(|&i| i != n).collect();
                let mut rows = Vec::new();
                for w in idx.windows(2) {
                    rows.push(eps_gen(ambient, &pair(dim, w[0], w[1], 1, -1))?.0);
                }
                Ok(Lattice::from_i64_rows(rank, &rows))
            }
            RuleKind::EpsParityClassesSumZero => {
                // {x : sum over even indices = sum over odd indices = 0}
                let dim = 2 * n + 1;
                let mut rows = Vec::new();
                for i in 0..dim.saturating_sub(2) {
                    rows.push(eps_gen(ambient, &pair(dim, i, i + 2, 1, -1))?.0);
                }
                Ok(Lattice::from_i64_rows(rank, &rows))
            }
            RuleKind::EpsTotalParity => {
                // {x in Z^n : sum x_i even}
                let mut rows = Vec::new();
                for i in 0..rank - 1 {
                    rows.push(eps_gen(ambient, &pair(rank, i, i + 1, 1, 1))?.0);
                }
                rows.push(eps_gen(ambient, &two_unit(rank, rank - 1))?.0);
                Ok(Lattice::from_i64_rows(rank, &rows))
            }
            RuleKind::EpsClassParity => {
                parity_class_lattice(ambient, &row_six_class(n, row6))
            }
            RuleKind::EpsDoubled => {
                // {2 sum x_i eps_i}
                let mut rows = Vec::new();
                for i in 0..rank {
                    rows.push(eps_gen(ambient, &two_unit(rank, i))?.0);
                }
                Ok(Lattice::from_i64_rows(rank, &rows))
            }
            RuleKind::F4TotalParity => {
                // {x in Z^4 : sum x_i even} in the internal F4 realization
                let mut rows = Vec::new();
                rows.push(eps_gen(ambient, &two_unit(4, 0))?.0);
                for i in 0..3 {
                    rows.push(eps_gen(ambient, &pair(4, i, i + 1, 1, 1))?.0);
                }
                Ok(Lattice::from_i64_rows(rank, &rows))
            }
        }
    }
}

impl LambdaKind {
    pub fn instantiate(self, ambient: SimpleType) -> WeightVec {
        let rank = ambient.rank();
        match self {
            LambdaKind::TwoPi1 => WeightVec::fundamental(rank, 0).scale(2),
            LambdaKind::Pi1 => WeightVec::fundamental(rank, 0),
            LambdaKind::Pi2 => WeightVec::fundamental(rank, 1),
            LambdaKind::PiN => WeightVec::fundamental(rank, rank - 1),
            LambdaKind::TwoPiN => WeightVec::fundamental(rank, rank - 1).scale(2),
        }
    }
}

impl XRuleKind {
    pub fn instantiate(
        self,
        ambient: SimpleType,
        lambda: Option<&WeightVec>,
        lattice: &Lattice,
    ) -> Result<Lattice> {
        let rank = ambient.rank();
        match self {
            XRuleKind::DoubleWeightLattice => Ok(Lattice::full(rank).scale(2)),
            XRuleKind::FullWeightLattice => Ok(Lattice::full(rank)),
            XRuleKind::EpsIntegerLattice => {
                let mut rows = Vec::new();
                for i in 0..rank {
                    rows.push(eps_gen(ambient, &unit(rank, i))?.0);
                }
                Ok(Lattice::from_i64_rows(rank, &rows))
            }
            XRuleKind::LambdaAdjoin => {
                let l = lambda.ok_or_else(|| {
                    Error::Verification("lambda_adjoin needs a duality element".into())
                })?;
                let mut rows = lattice.basis_rows();
                rows.push(l.to_ints());
                Ok(Lattice::from_rows(rank, rows))
            }
            XRuleKind::SameAsLambda => Ok(lattice.clone()),
        }
    }
}

impl WRuleKind {
    /// Generator roots of the stored reflection group `W(g,h)`, expressed
    /// in fundamental coordinates.
    pub fn generators(self, ambient: SimpleType, n: usize) -> Result<Vec<WeightVec>> {
        let rank = ambient.rank();
        match self {
            WRuleKind::Full => {
                Ok((0..rank).map(|i| crate::liealg::datum(ambient).simple_root(i)).collect())
            }
            WRuleKind::OffCenterIndex => {
                let dim = 2 * n + 1;
                let idx: Vec<usize> = (0..dim).filter(|&i| i != n).collect();
                idx.windows(2)
                    .map(|w| eps_gen(ambient, &pair(dim, w[0], w[1], 1, -1)))
                    .collect()
            }
            WRuleKind::ParityClasses => {
                let dim = 2 * n + 1;
                (0..dim - 2)
                    .map(|i| eps_gen(ambient, &pair(dim, i, i + 2, 1, -1)))
                    .collect()
            }
            WRuleKind::ClassPair => {
                // B_p x B_q on the two parity classes of indices
                let mut gens = Vec::new();
                for i in 0..rank {
                    gens.push(eps_gen(ambient, &unit(rank, i))?);
                }
                for cls in [0usize, 1] {
                    let inside: Vec<usize> = (0..rank).filter(|i| (i + 1) % 2 == cls).collect();
                    for w in inside.windows(2) {
                        gens.push(eps_gen(ambient, &pair(rank, w[0], w[1], 1, -1))?);
                    }
                }
                Ok(gens)
            }
        }
    }
}

/// Either a root of unity `e^{2 pi i q}` or a monomial `t^e`; the exact
/// value of a duality pairing.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ChiValue {
    /// `e^{2 pi i q}` with `q` reduced mod 1
    RootOfUnity { numer: i64, denom: i64 },
    /// `t^e`
    Monomial { exponent: i64 },
}

impl std::fmt::Display for ChiValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChiValue::RootOfUnity { numer: 0, .. } => write!(f, "1"),
            ChiValue::RootOfUnity { numer, denom } => {
                if *numer * 2 == *denom || *numer * -2 == *denom {
                    write!(f, "-1")
                } else {
                    write!(f, "e^(2*pi*i*{numer}/{denom})")
                }
            }
            ChiValue::Monomial { exponent } => write!(f, "t^{exponent}"),
        }
    }
}

impl ChiKind {
    /// `chi_{k lambda}(h^m)`, computed as the stored character value
    /// raised to the power `k*m`.
    pub fn pairing(self, n: usize, k: i64, m: i64) -> ChiValue {
        let km = k * m;
        match self {
            ChiKind::RootOfUnityMinusOneOverN => root_of_unity(Rat::new(int(-km), int(n as i64))),
            ChiKind::MinusOne => root_of_unity(Rat::new(int(-km), int(2))),
            ChiKind::MonomialMinusNPlusOne => {
                ChiValue::Monomial { exponent: -(n as i64 + 1) * km }
            }
            ChiKind::MonomialTwo => ChiValue::Monomial { exponent: 2 * km },
        }
    }
}

fn root_of_unity(q: Rat) -> ChiValue {
    use num::{One, Signed, Zero};
    // reduce q mod 1 into [0, 1)
    let den = q.denom().clone();
    let mut num = q.numer().clone() % &den;
    if num.is_negative() {
        num += &den;
    }
    if num.is_zero() {
        return ChiValue::RootOfUnity { numer: 0, denom: 1 };
    }
    let g = num::Integer::gcd(&num, &den);
    let num = &num / &g;
    let den = &den / &g;
    let _ = Int::one();
    ChiValue::RootOfUnity {
        numer: num.try_into().unwrap(),
        denom: den.try_into().unwrap(),
    }
}

/// A Table 7.0.7 record instantiated at concrete rank.
#[derive(Clone, Debug)]
pub struct DualityRow {
    pub row_no: u8,
    pub param_n: usize,
    pub lambda: WeightVec,
    /// `None` is infinite order
    pub order: Option<Int>,
    pub generator_desc: String,
    chi: ChiKind,
}

impl DualityRow {
    pub fn pairing(&self, k: i64, m: i64) -> ChiValue {
        self.chi.pairing(self.param_n, k, m)
    }
}

/// A Table 7.0.3 record instantiated at concrete rank.
#[derive(Clone, Debug)]
pub struct EssentialRow {
    pub row_no: u8,
    pub ambient: SimpleType,
    pub param_n: usize,
    pub sub: SubalgebraId,
    /// the root lattice `Lambda(g, h)` in fundamental coordinates
    pub lattice: Lattice,
    /// the stored weight lattice `X_{G, G/H^0}`
    pub x_lattice: Lattice,
    pub duality: Option<DualityRow>,
    /// expected rank of `lattice` (rk g, or rk g - 1 for rows 2 and 3)
    pub expected_rank: usize,
    /// `SO_{2n+1}` normalization flag for row 4
    pub so_normalization: bool,
}

/// Instantiates row `row_no` at table parameter `n`.
pub fn instantiate_row(row_no: u8, n: usize, row6: RowSixReading) -> Result<EssentialRow> {
    let spec = row_spec(row_no)?;
    if n < spec.ambient.min_n.max(1) {
        return Err(Error::RowNotApplicable { row: row_no, what: format!("n = {n}") });
    }
    let ambient = spec.ambient.ambient_at(n)?;
    let sub = instantiate_pattern(&spec.sub_pattern, n)?;
    let lattice = spec.lattice_rule.instantiate(ambient, n, row6)?;
    let lambda = spec.duality.as_ref().map(|d| d.lambda.instantiate(ambient));
    let x_lattice = spec.x_rule.instantiate(ambient, lambda.as_ref(), &lattice)?;
    let duality = match &spec.duality {
        Some(d) => {
            let guard_ok = match d.rank_guard.as_deref() {
                Some("even_n") => n % 2 == 0,
                _ => true,
            };
            if guard_ok {
                Some(DualityRow {
                    row_no,
                    param_n: n,
                    lambda: lambda.clone().unwrap(),
                    order: match d.order {
                        OrderKind::N => Some(int(n as i64)),
                        OrderKind::Two => Some(int(2)),
                        OrderKind::Infinite => None,
                    },
                    generator_desc: d.generator.clone(),
                    chi: d.chi,
                })
            } else {
                None
            }
        }
        None => None,
    };
    Ok(EssentialRow {
        row_no,
        ambient,
        param_n: n,
        sub,
        lattice,
        x_lattice,
        duality,
        expected_rank: ambient.rank() - spec.expected_corank,
        so_normalization: spec.so_normalization,
    })
}

impl CertVariant {
    pub fn ak_variant(self) -> Option<AkVariant> {
        match self {
            CertVariant::Four => Some(AkVariant::Four),
            CertVariant::Eight => Some(AkVariant::Eight),
            CertVariant::G2Trace => None,
        }
    }
}
