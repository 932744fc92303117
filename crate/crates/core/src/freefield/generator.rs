use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::Parity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Beta,
    Gamma,
    B,
    C,
}

impl Kind {
    pub fn parity(self) -> Parity {
        match self {
            Kind::Beta | Kind::Gamma => Parity::Even,
            Kind::B | Kind::C => Parity::Odd,
        }
    }

    pub fn spelling(self) -> &'static str {
        match self {
            Kind::Beta => "beta",
            Kind::Gamma => "gamma",
            Kind::B => "b",
            Kind::C => "c",
        }
    }

    pub fn from_spelling(s: &str) -> Option<Kind> {
        Some(match s {
            "beta" => Kind::Beta,
            "gamma" => Kind::Gamma,
            "b" => Kind::B,
            "c" => Kind::C,
            _ => return None,
        })
    }
}

/// A free-field generator `beta^i`, `gamma^i`, `b^i` or `c^i` (1-based index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneratorSymbol {
    pub kind: Kind,
    pub index: u32,
}

impl GeneratorSymbol {
    pub fn new(kind: Kind, index: u32) -> Self {
        Self { kind, index }
    }

    pub fn beta(i: u32) -> Self {
        Self::new(Kind::Beta, i)
    }

    pub fn gamma(i: u32) -> Self {
        Self::new(Kind::Gamma, i)
    }

    pub fn b(i: u32) -> Self {
        Self::new(Kind::B, i)
    }

    pub fn c(i: u32) -> Self {
        Self::new(Kind::C, i)
    }

    pub fn parity(self) -> Parity {
        self.kind.parity()
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.kind.spelling(), self.index)
    }
}

/// Constant `[x_lambda y]` of two generators: the coefficient of the simple
/// pole of `x(z) y(w)`.
pub fn contraction(x: GeneratorSymbol, y: GeneratorSymbol) -> i64 {
    if x.index != y.index {
        return 0;
    }
    match (x.kind, y.kind) {
        (Kind::Beta, Kind::Gamma) => 1,
        (Kind::Gamma, Kind::Beta) => -1,
        (Kind::B, Kind::C) | (Kind::C, Kind::B) => 1,
        _ => 0,
    }
}

/// Ranks of the beta-gamma and b-c parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeFieldContext {
    pub n_bg: u32,
    pub n_bc: u32,
}

impl FreeFieldContext {
    pub fn new(n_bg: u32, n_bc: u32) -> Result<Self> {
        if n_bg == 0 && n_bc == 0 {
            return Err(Error::InvalidParameter("free-field context needs a nonzero rank".into()));
        }
        Ok(Self { n_bg, n_bc })
    }

    pub fn rank(&self, kind: Kind) -> u32 {
        match kind {
            Kind::Beta | Kind::Gamma => self.n_bg,
            Kind::B | Kind::C => self.n_bc,
        }
    }

    pub fn check(&self, g: GeneratorSymbol) -> Result<()> {
        if g.index == 0 || g.index > self.rank(g.kind) {
            return Err(Error::IndexOutOfRange(format!("{g} in {self}")));
        }
        Ok(())
    }

    pub fn check_compatible(&self, other: &FreeFieldContext) -> Result<()> {
        if self != other {
            return Err(Error::ContextMismatch(self.to_string(), other.to_string()));
        }
        Ok(())
    }

    /// All generators in canonical order.
    pub fn generators(&self) -> Vec<GeneratorSymbol> {
        let mut out = Vec::new();
        for kind in [Kind::Beta, Kind::Gamma, Kind::B, Kind::C] {
            for i in 1..=self.rank(kind) {
                out.push(GeneratorSymbol::new(kind, i));
            }
        }
        out
    }
}

impl fmt::Display for FreeFieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({})xE({})", self.n_bg, self.n_bc)
    }
}
