//! Zhu's commutative algebra `R_V = V / C2(V)` of a truncated subalgebra and
//! a polynomial presentation on the images of the strong generators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::fock::{vacuum, FockVector};
use super::modes::{apply_field, field_of_state};
use super::subalgebra::{GradedSubspace, WeightDim};
use crate::error::{Error, Result};
use crate::freefield::{FieldPoly, FieldWeight};
use crate::grading::{Parity, Weight};
use crate::linalg::{kernel_of_images, EchelonBasis, Insert, SparseVec};
use crate::rational::fmt_q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresGenerator {
    pub label: String,
    pub parity: Parity,
    pub weight: Weight,
}

/// Supercommutative polynomial: sorted generator-index multisets (odd
/// indices never repeat) with coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuperPoly {
    pub terms: BTreeMap<Vec<usize>, crate::Q>,
}

/// Sorts `idx` with Koszul signs; `None` when an odd index repeats.
pub fn canonical_monomial(mut idx: Vec<usize>, parity: &[Parity]) -> Option<(Vec<usize>, bool)> {
    let mut neg = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            if parity[idx[j - 1]].is_odd() && parity[idx[j]].is_odd() {
                neg = !neg;
            }
            idx.swap(j - 1, j);
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1] && parity[w[0]].is_odd()) {
        return None;
    }
    Some((idx, neg))
}

impl SuperPoly {
    pub fn from_sparse(monos: &[Vec<usize>], v: &SparseVec<usize>) -> Self {
        Self { terms: v.iter().map(|(&i, c)| (monos[i].clone(), c.clone())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// `x^{mono} * self`.
    pub fn times_monomial(&self, mono: &[usize], parity: &[Parity]) -> SuperPoly {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut all = mono.to_vec();
            all.extend_from_slice(m);
            if let Some((k, neg)) = canonical_monomial(all, parity) {
                crate::linalg::add_into(&mut out, k, if neg { -c.clone() } else { c.clone() });
            }
        }
        SuperPoly { terms: out }
    }

    pub fn to_text(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let names: Vec<&str> = m.iter().map(|&i| labels[i].as_str()).collect();
                match (names.is_empty(), c.is_one()) {
                    (true, _) => fmt_q(c),
                    (false, true) => names.join(" "),
                    (false, false) => format!("{} {}", fmt_q(c), names.join(" ")),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..=self.terms.keys().flatten().copied().max().unwrap_or(0)).map(|i| format!("x{i}")).collect();
        f.write_str(&self.to_text(&labels))
    }
}

impl Serialize for SuperPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(m, c)| (m, fmt_q(c))))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub degree: usize,
    pub weight: Weight,
    pub text: String,
    pub poly: SuperPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeKernel {
    pub degree: usize,
    pub monomials: usize,
    pub kernel_dim: usize,
    pub new_relations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct C2Presentation {
    pub generators: Vec<PresGenerator>,
    /// Minimal relations: kernel elements not generated by lower degrees.
    pub relations: Vec<Relation>,
    /// `x^2 = 0` for odd generators, implicit in the supercommutative ring.
    pub odd_squares: Vec<String>,
    pub dims_v: Vec<WeightDim>,
    pub dims_c2: Vec<WeightDim>,
    pub dims_rv: Vec<WeightDim>,
    pub kernels: Vec<DegreeKernel>,
    pub dmax: usize,
    pub verified_through_weight: Weight,
}

impl C2Presentation {
    pub fn parities(&self) -> Vec<Parity> {
        self.generators.iter().map(|g| g.parity).collect()
    }

    pub fn rv_dim(&self, w: Weight) -> usize {
        self.dims_rv.iter().find(|d| d.weight == w).map_or(0, |d| d.dim)
    }
}

/// Span of `a_(-2) b` over bases of the truncated subalgebra, weight by weight.
pub fn c2_span(space: &GradedSubspace) -> Result<BTreeMap<i64, EchelonBasis<super::fock::FockMonomial>>> {
    let ctx = space.ctx;
    let top = space.max_weight.0;
    let fields: BTreeMap<i64, Vec<FieldPoly>> = space
        .blocks
        .iter()
        .filter(|(&w, _)| w > 0)
        .map(|(&w, b)| b.iter().map(|v| field_of_state(ctx, v)).collect::<Result<Vec<_>>>().map(|f| (w, f)))
        .collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for t in 0..=top {
        let mut jobs = Vec::new();
        for (&wa, fa) in &fields {
            let wb = t - wa - 2;
            if wb < 0 {
                continue;
            }
            if let Some(bs) = space.blocks.get(&wb) {
                for a in fa {
                    for b in bs {
                        jobs.push((a, b));
                    }
                }
            }
        }
        let images: Vec<FockVector> = jobs.par_iter().map(|(a, b)| apply_field(a, -2, b)).collect();
        let mut e = EchelonBasis::new();
        for img in images {
            if !img.is_empty() {
                e.insert(img);
            }
        }
        out.insert(t, e);
    }
    Ok(out)
}

fn enumerate_monomials(parity: &[Parity], weights: &[i64], degree: usize, top: i64) -> Vec<Vec<usize>> {
    fn go(start: usize, left: usize, budget: i64, acc: &mut Vec<usize>, parity: &[Parity], weights: &[i64], out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..parity.len() {
            if weights[i] > budget {
                continue;
            }
            acc.push(i);
            let next = if parity[i].is_odd() { i + 1 } else { i };
            go(next, left - 1, budget - weights[i], acc, parity, weights, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, degree, top, &mut Vec::new(), parity, weights, &mut out);
    out
}

/// Computes `R_V` through `space.max_weight` and all relations among the
/// generator images up to polynomial degree `dmax`.
pub fn c2_presentation(space: &GradedSubspace, gens: &[FieldPoly], labels: &[String], dmax: usize) -> Result<C2Presentation> {
    if gens.len() != labels.len() {
        return Err(Error::InvalidParameter("one label per generator required".into()));
    }
    let top = space.max_weight.0;
    let mut generators = Vec::new();
    let mut weights = Vec::new();
    for (g, l) in gens.iter().zip(labels) {
        let FieldWeight::Homogeneous(w) = g.weight() else {
            return Err(Error::InvalidParameter(format!("generator {l} is not weight-homogeneous")));
        };
        let parity = g.parity().ok_or_else(|| Error::InvalidParameter(format!("generator {l} has mixed parity")))?;
        generators.push(PresGenerator { label: l.clone(), parity, weight: w });
        weights.push(w.0);
    }
    let parity: Vec<Parity> = generators.iter().map(|g| g.parity).collect();
    if let Some(&wmax) = weights.iter().max() {
        if dmax as i64 * wmax > top {
            return Err(Error::Uncertifiable(format!(
                "degree bound {dmax} needs weight {} but the subalgebra is truncated at {}",
                Weight(dmax as i64 * wmax),
                space.max_weight
            )));
        }
    }
    let c2 = c2_span(space)?;
    let dim_at = |w: i64| space.blocks.get(&w).map_or(0, |b| b.len());
    let dims_v: Vec<WeightDim> = (0..=top).map(|w| WeightDim { weight: Weight(w), dim: dim_at(w) }).collect();
    let dims_c2: Vec<WeightDim> = (0..=top).map(|w| WeightDim { weight: Weight(w), dim: c2[&w].rank() }).collect();
    let dims_rv: Vec<WeightDim> = (0..=top).map(|w| WeightDim { weight: Weight(w), dim: dim_at(w) - c2[&w].rank() }).collect();

    // states of monomials x^{i_1} ... x^{i_d} = X^{i_1}_(-1) ... X^{i_d}_(-1) |0>
    let mut states: HashMap<Vec<usize>, FockVector> = HashMap::new();
    states.insert(Vec::new(), vacuum());
    let mut image_rank: BTreeMap<i64, EchelonBasis<super::fock::FockMonomial>> = BTreeMap::new();
    image_rank.entry(0).or_default().insert(c2[&0].reduce(vacuum()));
    let mut kernels = Vec::new();
    let mut relations = Vec::new();
    let mut previous_kernel: Vec<SuperPoly> = Vec::new();
    for d in 1..=dmax {
        let monos = enumerate_monomials(&parity, &weights, d, top);
        let new_states: Vec<FockVector> = monos.par_iter().map(|m| apply_field(&gens[m[0]], -1, &states[&m[1..]])).collect();
        for (m, s) in monos.iter().zip(&new_states) {
            states.insert(m.clone(), s.clone());
        }
        let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (k, m) in monos.iter().enumerate() {
            by_weight.entry(m.iter().map(|&i| weights[i]).sum()).or_default().push(k);
        }
        let mut kernel: Vec<SuperPoly> = Vec::new();
        for (w, ks) in &by_weight {
            let reduced: Vec<FockVector> = ks.iter().map(|&k| c2[w].reduce(new_states[k].clone())).collect();
            for r in &reduced {
                image_rank.entry(*w).or_default().insert(r.clone());
            }
            let local: Vec<Vec<usize>> = ks.iter().map(|&k| monos[k].clone()).collect();
            for rel in kernel_of_images(reduced) {
                kernel.push(SuperPoly::from_sparse(&local, &rel));
            }
        }
        // relations generated by lower degrees
        let mut ideal: EchelonBasis<Vec<usize>> = EchelonBasis::new();
        for r in &previous_kernel {
            for i in 0..gens.len() {
                let p = r.times_monomial(&[i], &parity);
                if !p.is_zero() {
                    ideal.insert(p.terms);
                }
            }
        }
        let mut fresh = 0;
        for k in &kernel {
            if let Insert::New(_) = ideal.insert_tagged(k.terms.clone(), SparseVec::new()) {
                fresh += 1;
                let w = k.terms.keys().next().map_or(0, |m| m.iter().map(|&i| weights[i]).sum());
                relations.push(Relation { degree: d, weight: Weight(w), text: k.to_text(labels), poly: k.clone() });
            }
        }
        kernels.push(DegreeKernel { degree: d, monomials: monos.len(), kernel_dim: kernel.len(), new_relations: fresh });
        previous_kernel = kernel;
    }
    // the generator images must span R_V at every weight reachable within dmax
    let wmin = weights.iter().copied().min().unwrap_or(1).max(1);
    for wd in &dims_rv {
        if wd.weight.0 <= dmax as i64 * wmin {
            let got = image_rank.get(&wd.weight.0).map_or(0, |e| e.rank());
            if got != wd.dim {
                return Err(Error::Inconsistent(format!(
                    "generator monomials span {got} of the {} dimensions of R_V at weight {}",
                    wd.dim, wd.weight
                )));
            }
        }
    }
    let odd_squares = generators.iter().filter(|g| g.parity.is_odd()).map(|g| format!("{} {}", g.label, g.label)).collect();
    Ok(C2Presentation {
        generators,
        relations,
        odd_squares,
        dims_v,
        dims_c2,
        dims_rv,
        kernels,
        dmax,
        verified_through_weight: space.max_weight,
    })
}
