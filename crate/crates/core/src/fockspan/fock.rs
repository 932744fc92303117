//! Vacuum Fock module of `S(n_bg) x E(n_bc)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freefield::{contraction, FreeFieldContext, GeneratorSymbol};
use crate::grading::Weight;
use crate::linalg::SparseVec;
use crate::rational::{fmt_q, q, Q};

/// Creation operator `g_(-1-p)`, i.e. the mode `g_{-p-1/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Creator {
    pub gen: GeneratorSymbol,
    pub p: u32,
}

impl Creator {
    pub fn is_odd(&self) -> bool {
        self.gen.parity().is_odd()
    }

    /// Doubled weight `2p + 1`.
    pub fn weight(&self) -> Weight {
        Weight(2 * self.p as i64 + 1)
    }
}

impl fmt::Display for Creator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[-{}]", self.gen, Weight(2 * self.p as i64 + 1))
    }
}

/// Product of creators applied to the vacuum, in nondecreasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FockMonomial(pub Vec<Creator>);

impl FockMonomial {
    pub fn vacuum() -> Self {
        Self(Vec::new())
    }

    pub fn weight(&self) -> Weight {
        self.0.iter().fold(Weight::ZERO, |w, c| w + c.weight())
    }

    pub fn creators(&self) -> &[Creator] {
        &self.0
    }
}

impl fmt::Display for FockMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "|0>");
        }
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}|0>", parts.join(" "))
    }
}

impl FockMonomial {
    /// Sorts creators with Koszul signs; `None` when an odd creator repeats.
    pub fn canonical(mut cs: Vec<Creator>) -> Option<(FockMonomial, bool)> {
        let mut neg = false;
        for i in 1..cs.len() {
            let mut j = i;
            while j > 0 && cs[j - 1] > cs[j] {
                if cs[j - 1].is_odd() && cs[j].is_odd() {
                    neg = !neg;
                }
                cs.swap(j - 1, j);
                j -= 1;
            }
        }
        if cs.windows(2).any(|w| w[0] == w[1] && w[0].is_odd()) {
            return None;
        }
        Some((FockMonomial(cs), neg))
    }
}

pub type FockVector = SparseVec<FockMonomial>;

pub fn vacuum() -> FockVector {
    let mut v = FockVector::new();
    v.insert(FockMonomial::vacuum(), Q::one());
    v
}

pub fn fock_text(v: &FockVector) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter().map(|(m, c)| format!("{} {}", fmt_q(c), m)).collect::<Vec<_>>().join(" + ")
}

/// Highest doubled weight occurring in `v`.
pub fn max_weight(v: &FockVector) -> Option<Weight> {
    v.keys().map(|m| m.weight()).max()
}

fn add(out: &mut FockVector, m: FockMonomial, c: Q) {
    crate::linalg::add_into(out, m, c);
}

/// `g_(n)` on a Fock vector.
pub fn apply_generator(g: GeneratorSymbol, n: i64, v: &FockVector) -> FockVector {
    let mut out = FockVector::new();
    let odd = g.parity().is_odd();
    if n >= 0 {
        for (m, c) in v {
            let mut odd_before = false;
            for (i, cr) in m.0.iter().enumerate() {
                if cr.p as i64 == n {
                    let k = contraction(g, cr.gen);
                    if k != 0 {
                        let mut rest = m.0.clone();
                        rest.remove(i);
                        let mut coef = c * q(k);
                        if odd && odd_before {
                            coef = -coef;
                        }
                        add(&mut out, FockMonomial(rest), coef);
                    }
                }
                if cr.is_odd() {
                    odd_before = !odd_before;
                }
            }
        }
    } else {
        let new = Creator { gen: g, p: (-1 - n) as u32 };
        for (m, c) in v {
            let pos = m.0.partition_point(|x| *x <= new);
            if odd && pos > 0 && m.0[pos - 1] == new {
                continue;
            }
            let passed_odd = m.0[..pos].iter().filter(|x| x.is_odd()).count();
            let mut coef = c.clone();
            if odd && passed_odd % 2 == 1 {
                coef = -coef;
            }
            let mut cs = m.0.clone();
            cs.insert(pos, new);
            add(&mut out, FockMonomial(cs), coef);
        }
    }
    out
}

/// Resource limits for Fock-space computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest number of basis monomials (or subalgebra vectors) per weight.
    pub max_per_weight: usize,
    /// Largest truncation weight accepted.
    pub max_weight: Weight,
}

impl Default for Caps {
    fn default() -> Self {
        Self { max_per_weight: 2_000_000, max_weight: Weight::integer(8) }
    }
}

impl Caps {
    pub fn check_weight(&self, w: Weight) -> Result<()> {
        if w > self.max_weight {
            return Err(Error::ResourceCap(format!("truncation weight {w} above cap {}", self.max_weight)));
        }
        Ok(())
    }

    pub fn check_count(&self, what: &str, w: Weight, count: usize) -> Result<()> {
        if count > self.max_per_weight {
            return Err(Error::ResourceCap(format!(
                "{what} at weight {w} has {count} elements (cap {})",
                self.max_per_weight
            )));
        }
        Ok(())
    }
}

/// Monomial basis of the Fock module, weight by weight.
#[derive(Clone, Debug, Serialize)]
pub struct GradedBasis {
    pub ctx: FreeFieldContext,
    pub max_weight: Weight,
    /// Keyed by doubled weight.
    pub blocks: BTreeMap<i64, Vec<FockMonomial>>,
}

impl GradedBasis {
    pub fn dim(&self, w: Weight) -> usize {
        self.blocks.get(&w.0).map_or(0, |b| b.len())
    }

    pub fn dims(&self) -> Vec<(Weight, usize)> {
        self.blocks.iter().map(|(&w, b)| (Weight(w), b.len())).collect()
    }
}

pub fn enumerate_basis(ctx: FreeFieldContext, max_weight: Weight, caps: &Caps) -> Result<GradedBasis> {
    if max_weight.0 < 0 {
        return Err(Error::InvalidParameter(format!("negative truncation weight {max_weight}")));
    }
    caps.check_weight(max_weight)?;
    let top = max_weight.0;
    let mut slots = Vec::new();
    for p in 0..=((top - 1).max(0) / 2) as u32 {
        for g in ctx.generators() {
            slots.push(Creator { gen: g, p });
        }
    }
    slots.sort();
    let mut blocks: BTreeMap<i64, Vec<FockMonomial>> = (0..=top).map(|w| (w, Vec::new())).collect();

    fn go(
        slots: &[Creator],
        budget: i64,
        acc: &mut Vec<Creator>,
        blocks: &mut BTreeMap<i64, Vec<FockMonomial>>,
        top: i64,
        caps: &Caps,
    ) -> Result<()> {
        let w = top - budget;
        let block = blocks.get_mut(&w).expect("weight in range");
        block.push(FockMonomial(acc.clone()));
        caps.check_count("Fock basis", Weight(w), block.len())?;
        for (i, s) in slots.iter().enumerate() {
            let sw = s.weight().0;
            if sw > budget {
                continue;
            }
            acc.push(*s);
            let next = if s.is_odd() { &slots[i + 1..] } else { &slots[i..] };
            go(next, budget - sw, acc, blocks, top, caps)?;
            acc.pop();
        }
        Ok(())
    }
    go(&slots, top, &mut Vec::new(), &mut blocks, top, caps)?;
    for b in blocks.values_mut() {
        b.sort();
    }
    Ok(GradedBasis { ctx, max_weight, blocks })
}

/// Coefficients of `prod_{j>=0} (1+q^{j+1/2})^{2 n_bc} / (1-q^{j+1/2})^{2 n_bg}`
/// up to the given weight, indexed by doubled weight.
pub fn character(ctx: FreeFieldContext, max_weight: Weight) -> Vec<u64> {
    let top = max_weight.0.max(0) as usize;
    let mut series = vec![0u64; top + 1];
    series[0] = 1;
    let mut step = 1;
    while step <= top {
        for _ in 0..2 * ctx.n_bg {
            // multiply by 1/(1 - x^step)
            for i in step..=top {
                series[i] += series[i - step];
            }
        }
        for _ in 0..2 * ctx.n_bc {
            // multiply by (1 + x^step)
            for i in (step..=top).rev() {
                series[i] += series[i - step];
            }
        }
        step += 2;
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freefield::GeneratorSymbol as G;

    #[test]
    fn small_bases() {
        let caps = Caps::default();
        let s1 = FreeFieldContext::new(1, 0).unwrap();
        let b = enumerate_basis(s1, Weight::integer(1), &caps).unwrap();
        assert_eq!(b.dim(Weight::ZERO), 1);
        assert_eq!(b.dim(Weight::HALF), 2);
        assert_eq!(b.dim(Weight::ONE), 3);
        let e1 = FreeFieldContext::new(0, 1).unwrap();
        let b = enumerate_basis(e1, Weight::integer(1), &caps).unwrap();
        assert_eq!(b.dim(Weight::ONE), 1);
    }

    #[test]
    fn character_identity() {
        let caps = Caps::default();
        for (nb, nc) in [(1, 0), (0, 1), (1, 1), (2, 2), (1, 3)] {
            let ctx = FreeFieldContext::new(nb, nc).unwrap();
            let top = Weight::integer(3);
            let b = enumerate_basis(ctx, top, &caps).unwrap();
            let ch = character(ctx, top);
            for w in 0..=top.0 {
                assert_eq!(b.dim(Weight(w)) as u64, ch[w as usize], "{ctx} at {}", Weight(w));
            }
        }
    }

    #[test]
    fn basis_cap_is_a_hard_error() {
        let caps = Caps { max_per_weight: 10, ..Caps::default() };
        let ctx = FreeFieldContext::new(2, 2).unwrap();
        assert!(matches!(enumerate_basis(ctx, Weight::integer(2), &caps), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn creation_and_annihilation() {
        let v = vacuum();
        let g = apply_generator(G::gamma(1), -1, &v);
        let back = apply_generator(G::beta(1), 0, &g);
        assert_eq!(back, vacuum());
        let back = apply_generator(G::gamma(1), 0, &apply_generator(G::beta(1), -1, &v));
        assert_eq!(back, vacuum().into_iter().map(|(m, c)| (m, -c)).collect());
        for gen in [G::beta(1), G::gamma(1), G::b(1), G::c(1)] {
            for n in 0..3 {
                assert!(apply_generator(gen, n, &v).is_empty());
            }
        }
        let bb = apply_generator(G::b(1), -1, &apply_generator(G::b(1), -1, &v));
        assert!(bb.is_empty());
        // b c = - c b on the vacuum
        let bc = apply_generator(G::b(1), -1, &apply_generator(G::c(1), -1, &v));
        let cb = apply_generator(G::c(1), -1, &apply_generator(G::b(1), -1, &v));
        let sum: FockVector = {
            let mut s = bc.clone();
            for (m, c) in cb {
                add(&mut s, m, c);
            }
            s
        };
        assert!(sum.is_empty());
    }
}
