use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::fock::{max_weight, vacuum, Caps, FockMonomial, FockVector};
use super::modes::apply_field;
use crate::error::{Error, Result};
use crate::freefield::{FieldPoly, FieldWeight, FreeFieldContext};
use crate::grading::Weight;
use crate::linalg::EchelonBasis;

/// Weight-truncated span of a vertex subalgebra inside the Fock module.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    pub ctx: FreeFieldContext,
    pub max_weight: Weight,
    /// Basis vectors keyed by doubled weight.
    pub blocks: BTreeMap<i64, Vec<FockVector>>,
    echelon: BTreeMap<i64, EchelonBasis<FockMonomial>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightDim {
    pub weight: Weight,
    pub dim: usize,
}

impl GradedSubspace {
    fn new(ctx: FreeFieldContext, max_weight: Weight) -> Self {
        let blocks = (0..=max_weight.0).map(|w| (w, Vec::new())).collect();
        let echelon = (0..=max_weight.0).map(|w| (w, EchelonBasis::new())).collect();
        Self { ctx, max_weight, blocks, echelon }
    }

    fn insert(&mut self, w: i64, v: FockVector) -> bool {
        let e = self.echelon.get_mut(&w).expect("weight in range");
        if e.insert(v.clone()) {
            self.blocks.get_mut(&w).expect("weight in range").push(v);
            true
        } else {
            false
        }
    }

    pub fn dim(&self, w: Weight) -> usize {
        self.blocks.get(&w.0).map_or(0, |b| b.len())
    }

    /// Dimensions at every weight `0, 1/2, 1, ..., max_weight`.
    pub fn dims(&self) -> Vec<WeightDim> {
        self.blocks.iter().map(|(&w, b)| WeightDim { weight: Weight(w), dim: b.len() }).collect()
    }

    pub fn contains(&self, v: &FockVector) -> bool {
        let Some(w) = max_weight(v) else { return true };
        if v.keys().any(|m| m.weight() != w) {
            let mut parts: BTreeMap<i64, FockVector> = BTreeMap::new();
            for (m, c) in v {
                parts.entry(m.weight().0).or_default().insert(m.clone(), c.clone());
            }
            return parts.into_iter().all(|(w, p)| self.echelon.get(&w).is_some_and(|e| e.contains(&p)));
        }
        self.echelon.get(&w.0).is_some_and(|e| e.contains(v))
    }

    pub fn echelon(&self, w: Weight) -> Option<&EchelonBasis<FockMonomial>> {
        self.echelon.get(&w.0)
    }

    /// Whether every generator mode maps the span into itself (within the
    /// truncation window).
    pub fn is_closed_under(&self, gens: &[FieldPoly]) -> bool {
        self.blocks.iter().all(|(&w, block)| {
            block.par_iter().all(|v| {
                gens.iter().all(|a| {
                    mode_range(a, w, self.max_weight.0).all(|(n, _)| self.contains(&apply_field(a, n, v)))
                })
            })
        })
    }
}

fn homogeneous_weight(a: &FieldPoly) -> Result<i64> {
    match a.weight() {
        FieldWeight::Homogeneous(w) => Ok(w.0),
        FieldWeight::Zero => Ok(0),
        FieldWeight::Inhomogeneous => Err(Error::InvalidParameter(format!("generator {a} is not weight-homogeneous"))),
    }
}

/// Modes `n` of `a` taking doubled weight `w` into `[0, top]`, with the target weight.
fn mode_range(a: &FieldPoly, w: i64, top: i64) -> impl Iterator<Item = (i64, i64)> {
    let wa = homogeneous_weight(a).unwrap_or(0);
    // target = w + wa - 2n - 2
    let hi = (w + wa - 2).div_euclid(2);
    let lo = -((top - w - wa + 2).div_euclid(2));
    (lo..=hi).map(move |n| (n, w + wa - 2 * n - 2)).filter(move |&(_, t)| t >= 0 && t <= top)
}

/// Smallest subspace containing the vacuum that is closed under all modes of
/// the generators, truncated at `max_weight`.
pub fn subalgebra_graded_dims(gens: &[FieldPoly], max_weight: Weight, caps: &Caps) -> Result<GradedSubspace> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidParameter("no generators".into()));
    };
    caps.check_weight(max_weight)?;
    for g in gens {
        first.check_same_ctx(g)?;
        homogeneous_weight(g)?;
    }
    let top = max_weight.0;
    let mut space = GradedSubspace::new(first.ctx, max_weight);
    space.insert(0, vacuum());
    let mut frontier: Vec<(i64, FockVector)> = vec![(0, vacuum())];
    while !frontier.is_empty() {
        let images: Vec<(i64, FockVector)> = frontier
            .par_iter()
            .flat_map_iter(|(w, v)| {
                gens.iter()
                    .flat_map(move |a| mode_range(a, *w, top).map(move |(n, t)| (t, apply_field(a, n, v))))
                    .filter(|(_, img)| !img.is_empty())
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut next = Vec::new();
        for (t, img) in images {
            if space.insert(t, img.clone()) {
                caps.check_count("subalgebra span", Weight(t), space.blocks[&t].len())?;
                next.push((t, img));
            }
        }
        frontier = next;
    }
    Ok(space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freefield::{virasoro_s, Factor, GeneratorSymbol as G};
    use crate::rational::q;

    #[test]
    fn free_generators_span_everything() {
        let ctx = FreeFieldContext::new(1, 1).unwrap();
        let gens: Vec<FieldPoly> = ctx.generators().into_iter().map(|g| FieldPoly::generator(ctx, g).unwrap()).collect();
        let top = Weight::integer(2);
        let s = subalgebra_graded_dims(&gens, top, &Caps::default()).unwrap();
        let ch = super::super::fock::character(ctx, top);
        for d in s.dims() {
            assert_eq!(d.dim as u64, ch[d.weight.0 as usize]);
        }
        assert!(s.is_closed_under(&gens));
    }

    #[test]
    fn heisenberg_and_virasoro_spans() {
        let ctx = FreeFieldContext::new(1, 0).unwrap();
        let j = FieldPoly::from_factors(ctx, vec![Factor::new(G::beta(1), 0), Factor::new(G::gamma(1), 0)], q(1)).unwrap();
        let s = subalgebra_graded_dims(std::slice::from_ref(&j), Weight::integer(4), &Caps::default()).unwrap();
        // a rank-one Heisenberg algebra at nonzero level: partitions
        let dims: Vec<usize> = (0..=4).map(|w| s.dim(Weight::integer(w))).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 5]);
        assert_eq!(s.dim(Weight::HALF), 0);
        let l = virasoro_s(ctx).unwrap();
        let s = subalgebra_graded_dims(&[l], Weight::integer(4), &Caps::default()).unwrap();
        let dims: Vec<usize> = (0..=4).map(|w| s.dim(Weight::integer(w))).collect();
        // c = -1 Virasoro vacuum module: 1, 0, 1, 1, 2
        assert_eq!(dims, vec![1, 0, 1, 1, 2]);
    }
}
