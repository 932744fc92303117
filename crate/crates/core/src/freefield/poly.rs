use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::generator::{FreeFieldContext, GeneratorSymbol};
use crate::error::{Error, Result};
use crate::grading::{Parity, Weight};
use crate::rational::{fmt_q, q, Q};

/// `d`-th derivative of a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub gen: GeneratorSymbol,
    pub d: u32,
}

impl Factor {
    pub fn new(gen: GeneratorSymbol, d: u32) -> Self {
        Self { gen, d }
    }

    pub fn parity(&self) -> Parity {
        self.gen.parity()
    }

    pub fn is_odd(&self) -> bool {
        self.gen.parity().is_odd()
    }

    /// Doubled conformal weight `1 + 2d`.
    pub fn weight(&self) -> Weight {
        Weight(1 + 2 * self.d as i64)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            write!(f, "{}", self.gen)
        } else {
            write!(f, "d^{} {}", self.d, self.gen)
        }
    }
}

/// Normally ordered monomial with factors in canonical order. The empty
/// monomial is the identity field.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<Factor>);

impl Monomial {
    pub fn identity() -> Self {
        Monomial(Vec::new())
    }

    /// Sorts factors into canonical order. Returns `None` if an odd factor
    /// repeats (the monomial vanishes), otherwise the monomial and whether
    /// the Koszul sign is negative.
    pub fn canonicalize(mut factors: Vec<Factor>) -> Option<(Monomial, bool)> {
        let mut neg = false;
        for i in 1..factors.len() {
            let mut j = i;
            while j > 0 && factors[j - 1] > factors[j] {
                if factors[j - 1].is_odd() && factors[j].is_odd() {
                    neg = !neg;
                }
                factors.swap(j - 1, j);
                j -= 1;
            }
        }
        if factors.windows(2).any(|w| w[0] == w[1] && w[0].is_odd()) {
            return None;
        }
        Some((Monomial(factors), neg))
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> Weight {
        self.0.iter().fold(Weight::ZERO, |w, f| w + f.weight())
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.0.iter().filter(|f| f.is_odd()).count() % 2 == 1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.len() {
            0 => Ok(()),
            1 => write!(f, "{}", self.0[0]),
            _ => {
                let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
                write!(f, ":{}:", parts.join(" "))
            }
        }
    }
}

/// JSON view of a single term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldTerm {
    pub factors: Vec<Factor>,
    #[serde(with = "crate::rational::serde_q")]
    pub coeff: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldWeight {
    Homogeneous(Weight),
    Inhomogeneous,
    Zero,
}

/// Finite linear combination of canonical monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldPoly {
    pub ctx: FreeFieldContext,
    terms: BTreeMap<Monomial, Q>,
}

impl FieldPoly {
    pub fn zero(ctx: FreeFieldContext) -> Self {
        Self { ctx, terms: BTreeMap::new() }
    }

    pub fn identity(ctx: FreeFieldContext) -> Self {
        Self::scalar(ctx, Q::one())
    }

    pub fn scalar(ctx: FreeFieldContext, c: Q) -> Self {
        let mut p = Self::zero(ctx);
        p.add_monomial(Monomial::identity(), c);
        p
    }

    pub fn generator(ctx: FreeFieldContext, g: GeneratorSymbol) -> Result<Self> {
        Self::from_factors(ctx, vec![Factor::new(g, 0)], Q::one())
    }

    /// `:f_1 ... f_k:` with factors in the given order, times `coeff`.
    pub fn from_factors(ctx: FreeFieldContext, factors: Vec<Factor>, coeff: Q) -> Result<Self> {
        for f in &factors {
            ctx.check(f.gen)?;
        }
        let mut p = Self::zero(ctx);
        p.add_factors(factors, coeff);
        Ok(p)
    }

    pub fn from_terms(ctx: FreeFieldContext, terms: &[FieldTerm]) -> Result<Self> {
        let mut p = Self::zero(ctx);
        for t in terms {
            for f in &t.factors {
                ctx.check(f.gen)?;
            }
            p.add_factors(t.factors.clone(), t.coeff.clone());
        }
        Ok(p)
    }

    pub(crate) fn add_monomial(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Adds `c * :factors:`, canonicalizing the factor order.
    pub(crate) fn add_factors(&mut self, factors: Vec<Factor>, c: Q) {
        if let Some((m, neg)) = Monomial::canonicalize(factors) {
            self.add_monomial(m, if neg { -c } else { c });
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Scalar part (coefficient of the identity field).
    pub fn scalar_part(&self) -> Q {
        self.coeff(&Monomial::identity())
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn check_same_ctx(&self, other: &FieldPoly) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(self.ctx.to_string(), other.ctx.to_string()));
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &FieldPoly, c: &Q) -> Result<()> {
        self.check_same_ctx(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (m, x) in &other.terms {
            self.add_monomial(m.clone(), x * c);
        }
        Ok(())
    }

    pub fn plus(&self, other: &FieldPoly) -> Result<FieldPoly> {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one())?;
        Ok(out)
    }

    pub fn minus(&self, other: &FieldPoly) -> Result<FieldPoly> {
        let mut out = self.clone();
        out.add_scaled(other, &q(-1))?;
        Ok(out)
    }

    pub fn scaled(&self, c: &Q) -> FieldPoly {
        let mut out = FieldPoly::zero(self.ctx);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        out
    }

    /// Translation operator: Leibniz rule on the factors.
    pub fn derivative(&self) -> FieldPoly {
        let mut out = FieldPoly::zero(self.ctx);
        for (m, c) in &self.terms {
            for i in 0..m.degree() {
                let mut fs = m.0.clone();
                fs[i].d += 1;
                out.add_factors(fs, c.clone());
            }
        }
        out
    }

    pub fn derivative_n(&self, k: u32) -> FieldPoly {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn weight(&self) -> FieldWeight {
        let mut w = None;
        for m in self.terms.keys() {
            match w {
                None => w = Some(m.weight()),
                Some(x) if x != m.weight() => return FieldWeight::Inhomogeneous,
                _ => {}
            }
        }
        w.map_or(FieldWeight::Zero, FieldWeight::Homogeneous)
    }

    /// Common parity of all terms, `None` if mixed. The zero field is even.
    pub fn parity(&self) -> Option<Parity> {
        let mut p = None;
        for m in self.terms.keys() {
            match p {
                None => p = Some(m.parity()),
                Some(x) if x != m.parity() => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(Parity::Even))
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn to_terms(&self) -> Vec<FieldTerm> {
        self.terms.iter().map(|(m, c)| FieldTerm { factors: m.0.clone(), coeff: c.clone() }).collect()
    }

    /// Canonical text form, e.g. `1/2 :beta_1 d^1 gamma_1: + -1/2 :d^1 beta_1 gamma_1:`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.degree() == 0 {
                    fmt_q(c)
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("{} {}", fmt_q(c), m)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for FieldPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            ctx: FreeFieldContext,
            text: String,
            terms: Vec<FieldTerm>,
            #[serde(skip)]
            _p: std::marker::PhantomData<&'a ()>,
        }
        View { ctx: self.ctx, text: self.to_string(), terms: self.to_terms(), _p: Default::default() }.serialize(s)
    }
}
