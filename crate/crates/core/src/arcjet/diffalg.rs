use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fockspan::{C2Presentation, Caps, SuperPoly, WeightDim};
use crate::grading::{Parity, Weight};
use crate::linalg::{add_into, EchelonBasis, SparseVec};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffGenerator {
    pub label: String,
    pub parity: Parity,
    pub weight: Weight,
}

/// Supercommutative ring `C[x_1..x_k] / (relations)` to which a derivation is
/// freely adjoined.
#[derive(Clone, Debug, Serialize)]
pub struct DiffPresentation {
    pub generators: Vec<DiffGenerator>,
    pub relations: Vec<SuperPoly>,
}

/// `d^s x_gen`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct JetVar {
    pub gen: usize,
    pub s: u32,
}

pub type JetMonomial = Vec<JetVar>;
pub type JetPoly = SparseVec<JetMonomial>;

impl DiffPresentation {
    pub fn new(generators: Vec<DiffGenerator>, relations: Vec<SuperPoly>) -> Result<Self> {
        let p = Self { generators, relations };
        for g in &p.generators {
            if g.weight.0 <= 0 {
                return Err(Error::InvalidParameter(format!("generator {} needs positive weight", g.label)));
            }
        }
        for r in &p.relations {
            if r.terms.keys().flatten().any(|&i| i >= p.generators.len()) {
                return Err(Error::IndexOutOfRange(format!("relation {r} uses an unknown generator")));
            }
            let ws: Vec<i64> = r.terms.keys().map(|m| p.mono_weight(m)).collect();
            if ws.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::InvalidParameter(format!("relation {r} is not weight-homogeneous")));
            }
            let ps: Vec<bool> = r.terms.keys().map(|m| m.iter().filter(|&&i| p.generators[i].parity.is_odd()).count() % 2 == 1).collect();
            if ps.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::InvalidParameter(format!("relation {r} is not parity-homogeneous")));
            }
        }
        Ok(p)
    }

    /// Presentation of `R_V` read off a C2 computation.
    pub fn from_c2(p: &C2Presentation) -> Result<Self> {
        let gens = p.generators.iter().map(|g| DiffGenerator { label: g.label.clone(), parity: g.parity, weight: g.weight }).collect();
        Self::new(gens, p.relations.iter().map(|r| r.poly.clone()).collect())
    }

    fn mono_weight(&self, m: &[usize]) -> i64 {
        m.iter().map(|&i| self.generators[i].weight.0).sum()
    }

    fn var_weight(&self, v: JetVar) -> i64 {
        self.generators[v.gen].weight.0 + 2 * v.s as i64
    }

    fn parities(&self) -> Vec<Parity> {
        self.generators.iter().map(|g| g.parity).collect()
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("presentation serializes");
        hex::encode(Sha256::digest(&json))
    }

    fn integral(&self) -> bool {
        self.generators.iter().all(|g| g.weight.is_integral())
    }
}

fn canonical(mut vs: Vec<JetVar>, parity: &[Parity]) -> Option<(JetMonomial, bool)> {
    let mut neg = false;
    for i in 1..vs.len() {
        let mut j = i;
        while j > 0 && vs[j - 1] > vs[j] {
            if parity[vs[j - 1].gen].is_odd() && parity[vs[j].gen].is_odd() {
                neg = !neg;
            }
            vs.swap(j - 1, j);
            j -= 1;
        }
    }
    if vs.windows(2).any(|w| w[0] == w[1] && parity[w[0].gen].is_odd()) {
        return None;
    }
    Some((vs, neg))
}

fn add_signed(out: &mut JetPoly, vs: Vec<JetVar>, c: &Q, parity: &[Parity]) {
    if let Some((m, neg)) = canonical(vs, parity) {
        add_into(out, m, if neg { -c.clone() } else { c.clone() });
    }
}

/// Applies the derivation `d` (even, Leibniz).
pub fn derivative(p: &JetPoly, parity: &[Parity]) -> JetPoly {
    let mut out = JetPoly::new();
    for (m, c) in p {
        for k in 0..m.len() {
            let mut vs = m.clone();
            vs[k].s += 1;
            add_signed(&mut out, vs, c, parity);
        }
    }
    out
}

fn times_monomial(m: &[JetVar], p: &JetPoly, parity: &[Parity]) -> JetPoly {
    let mut out = JetPoly::new();
    for (k, c) in p {
        let mut vs = m.to_vec();
        vs.extend_from_slice(k);
        add_signed(&mut out, vs, c, parity);
    }
    out
}

fn lift(r: &SuperPoly) -> JetPoly {
    r.terms.iter().map(|(m, c)| (m.iter().map(|&g| JetVar { gen: g, s: 0 }).collect(), c.clone())).collect()
}

/// Graded dimensions per weight with provenance.
#[derive(Clone, Debug, Serialize)]
pub struct HilbertTable {
    pub max_weight: Weight,
    pub dims: Vec<WeightDim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation_hash: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation_degree_bound: Option<usize>,
}

impl HilbertTable {
    fn from_series(series: &[usize], max_weight: Weight, integral: bool) -> Self {
        let dims = series
            .iter()
            .enumerate()
            .filter(|(w, _)| !integral || w % 2 == 0)
            .map(|(w, &d)| WeightDim { weight: Weight(w as i64), dim: d })
            .collect();
        Self { max_weight, dims, presentation_hash: None, relation_degree_bound: None }
    }

    pub fn dim(&self, w: Weight) -> usize {
        self.dims.iter().find(|d| d.weight == w).map_or(0, |d| d.dim)
    }

    pub fn values(&self) -> Vec<usize> {
        self.dims.iter().map(|d| d.dim).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("weight,dim\n");
        for d in &self.dims {
            s.push_str(&format!("{},{}\n", d.weight, d.dim));
        }
        s
    }
}

fn check_top(n: Weight) -> Result<i64> {
    if n.0 < 0 {
        return Err(Error::InvalidParameter(format!("negative truncation weight {n}")));
    }
    Ok(n.0)
}

/// Dimensions of the free differential superalgebra on `gens`: every `d^s g`
/// is a free even or odd variable of weight `w(g) + s`.
pub fn free_diff_dims(gens: &[DiffGenerator], n: Weight) -> Result<HilbertTable> {
    let top = check_top(n)? as usize;
    let mut series = vec![0usize; top + 1];
    series[0] = 1;
    for g in gens {
        let mut w = g.weight.0 as usize;
        while w <= top {
            if g.parity.is_odd() {
                for i in (w..=top).rev() {
                    series[i] += series[i - w];
                }
            } else {
                for i in w..=top {
                    series[i] += series[i - w];
                }
            }
            w += 2;
        }
    }
    let integral = gens.iter().all(|g| g.weight.is_integral());
    Ok(HilbertTable::from_series(&series, n, integral))
}

fn jet_monomials(p: &DiffPresentation, top: i64, caps: &Caps) -> Result<Vec<Vec<JetMonomial>>> {
    let mut vars = Vec::new();
    for (i, g) in p.generators.iter().enumerate() {
        let mut s = 0;
        while g.weight.0 + 2 * s as i64 <= top {
            vars.push(JetVar { gen: i, s });
            s += 1;
        }
    }
    vars.sort();
    let parity = p.parities();
    let mut out = vec![Vec::new(); top as usize + 1];
    #[allow(clippy::too_many_arguments)]
    fn go(
        vars: &[JetVar],
        budget: i64,
        acc: &mut Vec<JetVar>,
        out: &mut [Vec<JetMonomial>],
        p: &DiffPresentation,
        parity: &[Parity],
        top: i64,
        caps: &Caps,
    ) -> Result<()> {
        let w = (top - budget) as usize;
        out[w].push(acc.clone());
        caps.check_count("jet monomials", Weight(w as i64), out[w].len())?;
        for (i, v) in vars.iter().enumerate() {
            let vw = p.var_weight(*v);
            if vw > budget {
                continue;
            }
            acc.push(*v);
            let next = if parity[v.gen].is_odd() { &vars[i + 1..] } else { &vars[i..] };
            go(next, budget - vw, acc, out, p, parity, top, caps)?;
            acc.pop();
        }
        Ok(())
    }
    go(&vars, top, &mut Vec::new(), &mut out, p, &parity, top, caps)?;
    Ok(out)
}

/// Weight-`w` generators `m * d^s(rel)` of the differential ideal.
fn ideal_generators(p: &DiffPresentation, monos: &[Vec<JetMonomial>], derived: &[(i64, JetPoly)], w: i64) -> Vec<JetPoly> {
    let parity = p.parities();
    let mut out = Vec::new();
    for (wr, poly) in derived {
        let rest = w - wr;
        if rest < 0 {
            continue;
        }
        for m in &monos[rest as usize] {
            let prod = times_monomial(m, poly, &parity);
            if !prod.is_empty() {
                out.push(prod);
            }
        }
    }
    out
}

/// Dimensions of `(free differential algebra) / (differential ideal of the
/// relations)` through weight `n`, by exhaustive weight-graded spans.
pub fn quotient_dims(p: &DiffPresentation, n: Weight, caps: &Caps) -> Result<HilbertTable> {
    let top = check_top(n)?;
    caps.check_weight(n)?;
    let parity = p.parities();
    let monos = jet_monomials(p, top, caps)?;
    let mut derived: Vec<(i64, JetPoly)> = Vec::new();
    for r in &p.relations {
        if r.is_zero() {
            continue;
        }
        let w0 = p.mono_weight(r.terms.keys().next().expect("nonzero"));
        let mut poly = lift(r);
        let mut w = w0;
        while w <= top && !poly.is_empty() {
            derived.push((w, poly.clone()));
            poly = derivative(&poly, &parity);
            w += 2;
        }
    }
    let ideals: Vec<EchelonBasis<JetMonomial>> = (0..=top)
        .into_par_iter()
        .map(|w| {
            let mut e = EchelonBasis::new();
            for g in ideal_generators(p, &monos, &derived, w) {
                e.insert(g);
            }
            e
        })
        .collect();
    // the ideal component at weight w must contain d of the one at w - 1
    for w in 2..=top {
        let ok = ideal_generators(p, &monos, &derived, w - 2)
            .par_iter()
            .all(|g| ideals[w as usize].contains(&derivative(g, &parity)));
        if !ok {
            return Err(Error::Inconsistent(format!("ideal component at weight {} is not d-stable", Weight(w))));
        }
    }
    let series: Vec<usize> = (0..=top as usize).map(|w| monos[w].len() - ideals[w].rank()).collect();
    let mut t = HilbertTable::from_series(&series, n, p.integral());
    t.presentation_hash = Some(p.hash());
    t.relation_degree_bound = Some(p.relations.iter().map(|r| r.degree()).max().unwrap_or(0));
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn gen(label: &str, odd: bool, w: i64) -> DiffGenerator {
        DiffGenerator { label: label.into(), parity: Parity::from_bit(odd), weight: Weight::integer(w) }
    }

    fn poly(terms: &[(&[usize], i64)]) -> SuperPoly {
        SuperPoly { terms: terms.iter().map(|(m, c)| (m.to_vec(), q(*c))).collect() }
    }

    #[test]
    fn free_dims() {
        let t = free_diff_dims(&[gen("x", false, 1)], Weight::integer(5)).unwrap();
        assert_eq!(t.values(), vec![1, 1, 2, 3, 5, 7]);
        let t = free_diff_dims(&[gen("v", true, 1)], Weight::integer(5)).unwrap();
        assert_eq!(t.values(), vec![1, 1, 1, 2, 2, 3]);
        let t = free_diff_dims(&[], Weight::integer(3)).unwrap();
        assert_eq!(t.values(), vec![1, 0, 0, 0]);
        assert!(t.to_csv().starts_with("weight,dim\n0,1\n"));
    }

    #[test]
    fn quotient_examples() {
        let caps = Caps::default();
        let x = vec![gen("x", false, 1)];
        let p = DiffPresentation::new(x.clone(), vec![poly(&[(&[0, 0], 1)])]).unwrap();
        let t = quotient_dims(&p, Weight::integer(4), &caps).unwrap();
        assert_eq!(&t.values()[..3], &[1, 1, 1]);
        // brute force: weight 3 monomials {x^3, x dx, d^2x}, ideal {x^3, x dx}
        assert_eq!(t.values()[3], 1);
        let p = DiffPresentation::new(x.clone(), vec![poly(&[(&[0], 1)])]).unwrap();
        assert_eq!(quotient_dims(&p, Weight::integer(4), &caps).unwrap().values(), vec![1, 0, 0, 0, 0]);
        let p = DiffPresentation::new(x.clone(), vec![]).unwrap();
        assert_eq!(quotient_dims(&p, Weight::integer(5), &caps).unwrap().values(), free_diff_dims(&x, Weight::integer(5)).unwrap().values());
    }

    #[test]
    fn odd_generators_anticommute() {
        let caps = Caps::default();
        let gens = vec![gen("u", true, 1), gen("v", true, 1)];
        // u v + v u = 0 identically, so this relation is u v itself
        let p = DiffPresentation::new(gens.clone(), vec![poly(&[(&[0, 1], 1)])]).unwrap();
        let t = quotient_dims(&p, Weight::integer(3), &caps).unwrap();
        let free = free_diff_dims(&gens, Weight::integer(3)).unwrap();
        assert_eq!(t.dim(Weight::integer(2)), free.dim(Weight::integer(2)) - 1);
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let gens = vec![gen("x", false, 1), gen("y", false, 2)];
        assert!(DiffPresentation::new(gens, vec![poly(&[(&[0], 1), (&[1], 1)])]).is_err());
    }

    #[test]
    fn hash_is_stable() {
        let p = DiffPresentation::new(vec![gen("x", false, 1)], vec![poly(&[(&[0, 0], 1)])]).unwrap();
        assert_eq!(p.hash(), p.clone().hash());
        assert_eq!(p.hash().len(), 64);
    }

    fn small_presentation() -> impl Strategy<Value = (Vec<DiffGenerator>, Vec<SuperPoly>, SuperPoly)> {
        let gens = proptest::collection::vec((any::<bool>(), 1i64..3), 1..4);
        gens.prop_flat_map(|g| {
            let k = g.len();
            let gens: Vec<DiffGenerator> = g.iter().enumerate().map(|(i, (odd, w))| gen(&format!("x{i}"), *odd, *w)).collect();
            let rel = proptest::collection::vec((0..k, 0..k, -2i64..3), 1..3);
            (Just(gens), proptest::collection::vec(rel.clone(), 0..3), rel)
        })
        .prop_map(|(gens, rels, extra)| {
            let parity: Vec<Parity> = gens.iter().map(|g| g.parity).collect();
            let weight = |m: &[usize]| m.iter().map(|&i| gens[i].weight.0).sum::<i64>();
            let build = |spec: &Vec<(usize, usize, i64)>| {
                // keep only terms matching the first term's weight and parity
                let mut p = SuperPoly::default();
                let first = spec[0];
                let w0 = weight(&[first.0, first.1]);
                let p0 = parity[first.0] + parity[first.1];
                for &(a, b, c) in spec {
                    if c == 0 || weight(&[a, b]) != w0 || parity[a] + parity[b] != p0 {
                        continue;
                    }
                    if let Some((m, neg)) = crate::fockspan::canonical_monomial(vec![a, b], &parity) {
                        add_into(&mut p.terms, m, q(if neg { -c } else { c }));
                    }
                }
                p
            };
            let rels = rels.iter().map(build).filter(|p| !p.is_zero()).collect();
            let extra = build(&extra);
            (gens, rels, extra)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn adding_a_relation_never_increases_dims((gens, rels, extra) in small_presentation()) {
            let caps = Caps::default();
            let n = Weight::integer(4);
            let base = DiffPresentation::new(gens.clone(), rels.clone()).unwrap();
            let mut more = rels.clone();
            if !extra.is_zero() {
                more.push(extra);
            }
            let bigger = DiffPresentation::new(gens, more).unwrap();
            let a = quotient_dims(&base, n, &caps).unwrap();
            let b = quotient_dims(&bigger, n, &caps).unwrap();
            for (x, y) in a.dims.iter().zip(&b.dims) {
                prop_assert!(y.dim <= x.dim);
            }
        }
    }
}
