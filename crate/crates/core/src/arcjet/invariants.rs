use rayon::prelude::*;

use crate::affine::{symplectic_generator_action, GeneratorAction};
use crate::error::{Error, Result};
use crate::fockspan::{enumerate_basis, Caps, Creator, FockMonomial, WeightDim};
use crate::freefield::GeneratorSymbol;
use crate::grading::Weight;
use crate::linalg::{add_into, EchelonBasis, SparseVec};
use crate::rational::{falling, Q};

use super::diffalg::HilbertTable;

/// Action of `xi t^s` on a monomial in the jet variables `d^j x`.
fn apply_loop(op: &GeneratorAction, s: u32, m: &FockMonomial, tag: usize) -> SparseVec<(usize, FockMonomial)> {
    let mut out = SparseVec::new();
    for (k, c) in m.0.iter().enumerate() {
        if c.p < s {
            continue;
        }
        let factor = falling(c.p as i64, s);
        let img = &op.images.iter().find(|(g, _)| *g == c.gen).expect("generator in action").1;
        for (h, coef) in img {
            let mut cs = m.0.clone();
            cs[k] = Creator { gen: *h, p: c.p - s };
            if let Some((mono, neg)) = FockMonomial::canonical(cs) {
                let v = &factor * coef;
                add_into(&mut out, (tag, mono), if neg { -v } else { v });
            }
        }
    }
    out
}

/// Graded dimensions of `C[J_inf(W)]^{J_inf(Sp_2n)}` for
/// `W = C^{2n} (x) C^{m|2r}`, as the common kernel of the loop algebra
/// `sp_2n[t]` on the jet ring.
pub fn jet_invariant_dims(n: i64, m: i64, r: i64, max_weight: Weight, caps: &Caps) -> Result<HilbertTable> {
    if max_weight.0 < 0 {
        return Err(Error::InvalidParameter(format!("negative truncation weight {max_weight}")));
    }
    caps.check_weight(max_weight)?;
    let (ctx, ops) = symplectic_generator_action(n, m, r)?;
    let torus: Vec<Vec<(GeneratorSymbol, Q)>> = ops.iter().filter_map(|o| o.diagonal()).collect();
    let basis = enumerate_basis(ctx, max_weight, caps)?;
    let zero_weight = |mono: &FockMonomial| {
        torus.iter().all(|t| {
            let total: Q = mono.0.iter().map(|c| t.iter().find(|(g, _)| *g == c.gen).map_or_else(Q::default, |x| x.1.clone())).sum();
            total == Q::default()
        })
    };
    let top = max_weight.0;
    let smax = if top >= 1 { ((top - 1) / 2) as u32 } else { 0 };
    let mut loops: Vec<(usize, u32)> = Vec::new();
    for (i, o) in ops.iter().enumerate() {
        for s in 0..=smax {
            if s == 0 && o.diagonal().is_some() {
                continue;
            }
            loops.push((i, s));
        }
    }
    let mut series = vec![0usize; top as usize + 1];
    for (w, block) in &basis.blocks {
        let cols: Vec<&FockMonomial> = block.iter().filter(|mono| zero_weight(mono)).collect();
        let images: Vec<SparseVec<(usize, FockMonomial)>> = cols
            .par_iter()
            .map(|mono| {
                let mut v = SparseVec::new();
                for (tag, &(i, s)) in loops.iter().enumerate() {
                    for (k, c) in apply_loop(&ops[i], s, mono, tag) {
                        add_into(&mut v, k, c);
                    }
                }
                v
            })
            .collect();
        // kernel dimension = #columns - rank of the image map
        let mut e = EchelonBasis::new();
        for v in images {
            e.insert(v);
        }
        series[*w as usize] = cols.len() - e.rank();
    }
    let integral = (0..=top as usize).filter(|w| w % 2 == 1).all(|w| series[w] == 0);
    Ok(HilbertTable {
        max_weight,
        dims: (0..=top as usize)
            .filter(|w| !integral || w % 2 == 0)
            .map(|w| WeightDim { weight: Weight(w as i64), dim: series[w] })
            .collect(),
        presentation_hash: None,
        relation_degree_bound: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_zero_and_one() {
        let t = jet_invariant_dims(1, 1, 1, Weight::integer(1), &Caps::default()).unwrap();
        assert_eq!(t.dim(Weight::integer(0)), 1);
        // weight one invariants are the osp(1|2) moment map
        assert_eq!(t.dim(Weight::integer(1)), 5);
    }

    #[test]
    fn weight_one_is_osp_dimension() {
        let t = jet_invariant_dims(1, 2, 1, Weight::integer(1), &Caps::default()).unwrap();
        assert_eq!(t.dim(Weight::integer(1)), 8);
    }
}
