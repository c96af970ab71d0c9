//! Subalgebra naming grammar, shared with the atlas module:
//!
//! ```text
//! FACTOR ::= name "(" k ")" ["^diag"]     name in {sl, so, sp, gl, spin, G2}
//! SUBALG ::= "0" | FACTOR ("+" FACTOR)*
//! ```
//!
//! The ambient algebra is always given separately, e.g. `so(4)+so(4)` in
//! `so(8)`. For classical ambients a factor names the block subalgebra
//! acting on a subspace of the defining module (annihilating a complement);
//! `^diag` marks the tau + tau* embeddings into so_n / sp_n. Direct sums
//! require complementary supports in the defining module. `G2` denotes the
//! image of G2 under its 7-dimensional module plus trivials and takes no
//! rank argument.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubName {
    Sl,
    So,
    Sp,
    Gl,
    Spin,
    G2,
}

impl SubName {
    pub fn as_str(self) -> &'static str {
        match self {
            SubName::Sl => "sl",
            SubName::So => "so",
            SubName::Sp => "sp",
            SubName::Gl => "gl",
            SubName::Spin => "spin",
            SubName::G2 => "G2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubFactor {
    pub name: SubName,
    pub k: usize,
    pub diag: bool,
}

impl std::fmt::Display for SubFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.name == SubName::G2 {
            write!(f, "G2")?;
        } else {
            write!(f, "{}({})", self.name.as_str(), self.k)?;
        }
        if self.diag {
            write!(f, "^diag")?;
        }
        Ok(())
    }
}

/// A subalgebra id: an unordered list of factors; empty means the zero
/// subalgebra (printed `0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubalgebraId(pub Vec<SubFactor>);

impl std::fmt::Display for SubalgebraId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl SubalgebraId {
    pub fn trivial() -> Self {
        SubalgebraId(vec![])
    }

    pub fn parse(s: &str) -> Result<SubalgebraId> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(SubalgebraId(vec![]));
        }
        let mut factors = Vec::new();
        for raw in s.split('+') {
            factors.push(parse_factor(raw.trim())?);
        }
        Ok(SubalgebraId(factors))
    }

    /// Multiset of factors, for unordered matching.
    pub fn sorted(&self) -> Vec<SubFactor> {
        let mut v = self.0.clone();
        v.sort();
        v
    }
}

fn parse_factor(s: &str) -> Result<SubFactor> {
    let bad = || Error::UnrecognizedSubalgebra(s.to_string());
    let (body, diag) = match s.strip_suffix("^diag") {
        Some(b) => (b, true),
        None => (s, false),
    };
    if body == "G2" {
        return Ok(SubFactor { name: SubName::G2, k: 7, diag });
    }
    let open = body.find('(').ok_or_else(bad)?;
    if !body.ends_with(')') {
        return Err(bad());
    }
    let name = match &body[..open] {
        "sl" => SubName::Sl,
        "so" => SubName::So,
        "sp" => SubName::Sp,
        "gl" => SubName::Gl,
        "spin" => SubName::Spin,
        _ => return Err(bad()),
    };
    let k: usize = body[open + 1..body.len() - 1].trim().parse().map_err(|_| bad())?;
    if k == 0 {
        return Err(bad());
    }
    if name == SubName::Sp && k % 2 != 0 {
        return Err(Error::UnrecognizedSubalgebra(format!("{s}: sp rank must be even")));
    }
    if name == SubName::Spin && k != 7 {
        return Err(Error::UnrecognizedSubalgebra(format!("{s}: only spin(7) is recognized")));
    }
    Ok(SubFactor { name, k, diag })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let id = SubalgebraId::parse("so(4)+so(4)").unwrap();
        assert_eq!(id.0.len(), 2);
        assert_eq!(id.to_string(), "so(4)+so(4)");
        let id = SubalgebraId::parse("gl(3)^diag").unwrap();
        assert!(id.0[0].diag);
        assert_eq!(SubalgebraId::parse("0").unwrap().0.len(), 0);
        assert_eq!(SubalgebraId::parse("G2").unwrap().0[0].name, SubName::G2);
        assert!(SubalgebraId::parse("xy(3)").is_err());
        assert!(SubalgebraId::parse("sp(3)").is_err());
        assert!(SubalgebraId::parse("sl(").is_err());
    }
}
