//! Operator products by Wick contraction.
//!
//! For normally ordered monomials `A = :a_1 ... a_k:` and `B = :b_1 ... b_l:`
//! in free fields,
//!
//! ```text
//! A(z) B(w) = sum over partial matchings  (sign) * prod <a_i(z) b_j(w)> * :A_rem(z) B_rem(w):
//! ```
//!
//! with `<d^p x(z) d^q y(w)> = [x_lambda y] (-1)^p (p+q)! (z-w)^{-1-p-q}`.
//! Taylor-expanding `A_rem(z)` around `w` and collecting powers of `(z-w)`
//! gives every `n`-th product `a_(n) b` at once: the coefficient of
//! `(z-w)^{-n-1}`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::generator::{contraction, FreeFieldContext};
use super::poly::{Factor, FieldPoly};
use crate::error::Result;
use crate::rational::{factorial, q, Q};

/// Singular part of `a(z) b(w)`: pole order `p >= 1` maps to `a_(p-1) b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpeResult {
    pub ctx: FreeFieldContext,
    pub poles: BTreeMap<u32, FieldPoly>,
}

impl OpeResult {
    pub fn pole(&self, p: u32) -> FieldPoly {
        self.poles.get(&p).cloned().unwrap_or_else(|| FieldPoly::zero(self.ctx))
    }

    pub fn is_regular(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn max_pole(&self) -> u32 {
        self.poles.keys().next_back().copied().unwrap_or(0)
    }
}

struct Contraction {
    coeff: Q,
    order: u32,
    a_rem: Vec<Factor>,
    b_rem: Vec<Factor>,
}

fn parity_sum(fs: &[Factor]) -> bool {
    fs.iter().filter(|f| f.is_odd()).count() % 2 == 1
}

fn enumerate(kept: &mut Vec<Factor>, rest: &[Factor], b: &[Factor], coeff: Q, order: u32, out: &mut Vec<Contraction>) {
    let Some((&x, tail)) = rest.split_first() else {
        out.push(Contraction { coeff, order, a_rem: kept.clone(), b_rem: b.to_vec() });
        return;
    };
    // x stays uncontracted
    kept.push(x);
    enumerate(kept, tail, b, coeff.clone(), order, out);
    kept.pop();
    // x contracted with b[j]: move x right past `tail` and `b[..j]`
    for (j, &y) in b.iter().enumerate() {
        let k = contraction(x.gen, y.gen);
        if k == 0 {
            continue;
        }
        let crossed = parity_sum(tail) != parity_sum(&b[..j]);
        let neg = x.is_odd() && crossed;
        let mut c = q(k) * factorial(x.d + y.d);
        if x.d % 2 == 1 {
            c = -c;
        }
        if neg {
            c = -c;
        }
        let mut b2 = b.to_vec();
        b2.remove(j);
        enumerate(kept, tail, &b2, &coeff * c, order + 1 + x.d + y.d, out);
    }
}

fn contractions(a: &[Factor], b: &[Factor]) -> Vec<Contraction> {
    let mut out = Vec::new();
    enumerate(&mut Vec::new(), a, b, q(1), 0, &mut out);
    out
}

/// Terms of `d^k A / k!` for a product of factors: all ways to distribute
/// `k` derivatives with weights `prod 1/k_i!`.
fn taylor(fs: &[Factor], k: u32) -> Vec<(Vec<Factor>, Q)> {
    fn go(fs: &[Factor], k: u32, acc: &mut Vec<Factor>, w: Q, out: &mut Vec<(Vec<Factor>, Q)>) {
        match fs.split_first() {
            None => {
                if k == 0 {
                    out.push((acc.clone(), w));
                }
            }
            Some((&f, tail)) => {
                let upto = if tail.is_empty() { k..=k } else { 0..=k };
                for ki in upto {
                    acc.push(Factor::new(f.gen, f.d + ki));
                    go(tail, k - ki, acc, &w / factorial(ki), out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(fs, k, &mut Vec::new(), q(1), &mut out);
    out
}

/// All products `a_(n) b` for `n_min <= n <= n_max` that are nonzero.
fn products_range(a: &FieldPoly, b: &FieldPoly, n_min: i64, n_max: Option<i64>) -> Result<BTreeMap<i64, FieldPoly>> {
    a.check_same_ctx(b)?;
    let ctx = a.ctx;
    let mut out: BTreeMap<i64, FieldPoly> = BTreeMap::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let cab = ca * cb;
            for con in contractions(ma.factors(), mb.factors()) {
                let s = con.order as i64;
                let hi = n_max.map_or(s - 1, |m| m.min(s - 1));
                let mut n = hi;
                while n >= n_min {
                    let k = (s - n - 1) as u32;
                    let entry = out.entry(n).or_insert_with(|| FieldPoly::zero(ctx));
                    for (fs, w) in taylor(&con.a_rem, k) {
                        let mut all = fs;
                        all.extend_from_slice(&con.b_rem);
                        entry.add_factors(all, &cab * &con.coeff * w);
                    }
                    n -= 1;
                }
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

/// Every nonzero `a_(n) b` with `n >= n_min`.
pub fn products(a: &FieldPoly, b: &FieldPoly, n_min: i64) -> Result<BTreeMap<i64, FieldPoly>> {
    products_range(a, b, n_min, None)
}

pub fn nth_product(a: &FieldPoly, b: &FieldPoly, n: i64) -> Result<FieldPoly> {
    let mut m = products_range(a, b, n, Some(n))?;
    Ok(m.remove(&n).unwrap_or_else(|| FieldPoly::zero(a.ctx)))
}

/// Normally ordered product `:a b: = a_(-1) b`.
pub fn normal_order(a: &FieldPoly, b: &FieldPoly) -> Result<FieldPoly> {
    nth_product(a, b, -1)
}

/// Singular part of the OPE `a(z) b(w)`.
pub fn ope(a: &FieldPoly, b: &FieldPoly) -> Result<OpeResult> {
    let poles = products(a, b, 0)?.into_iter().map(|(n, p)| ((n + 1) as u32, p)).collect();
    Ok(OpeResult { ctx: a.ctx, poles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freefield::{FieldWeight, GeneratorSymbol as G};
    use crate::grading::Weight;
    use crate::rational::qr;
    use proptest::prelude::*;

    fn ctx() -> FreeFieldContext {
        FreeFieldContext::new(2, 2).unwrap()
    }

    fn gen(g: G) -> FieldPoly {
        FieldPoly::generator(ctx(), g).unwrap()
    }

    #[test]
    fn generator_opes() {
        let c = ctx();
        let one = FieldPoly::identity(c);
        for i in 1..=2 {
            for j in 1..=2 {
                let d = if i == j { 1 } else { 0 };
                let r = ope(&gen(G::beta(i)), &gen(G::gamma(j))).unwrap();
                assert_eq!(r.pole(1), one.scaled(&q(d)));
                assert!(r.max_pole() <= 1);
                let r = ope(&gen(G::gamma(i)), &gen(G::beta(j))).unwrap();
                assert_eq!(r.pole(1), one.scaled(&q(-d)));
                let r = ope(&gen(G::b(i)), &gen(G::c(j))).unwrap();
                assert_eq!(r.pole(1), one.scaled(&q(d)));
                let r = ope(&gen(G::c(i)), &gen(G::b(j))).unwrap();
                assert_eq!(r.pole(1), one.scaled(&q(d)));
                assert!(ope(&gen(G::beta(i)), &gen(G::beta(j))).unwrap().is_regular());
                assert!(ope(&gen(G::gamma(i)), &gen(G::gamma(j))).unwrap().is_regular());
                assert!(ope(&gen(G::b(i)), &gen(G::b(j))).unwrap().is_regular());
                assert!(ope(&gen(G::c(i)), &gen(G::c(j))).unwrap().is_regular());
            }
        }
    }

    #[test]
    fn normal_order_examples() {
        let bg = normal_order(&gen(G::beta(1)), &gen(G::gamma(1))).unwrap();
        assert_eq!(bg.len(), 1);
        assert_eq!(bg.weight(), FieldWeight::Homogeneous(Weight(2)));
        assert!(normal_order(&gen(G::b(1)), &gen(G::b(1))).unwrap().is_zero());
        let bb = normal_order(&gen(G::beta(1)), &gen(G::beta(1))).unwrap();
        assert!(!bb.is_zero());
        assert_eq!(bb.weight(), FieldWeight::Homogeneous(Weight(2)));
    }

    #[test]
    fn quasi_associativity_correction() {
        // ::beta gamma: beta: - :beta :gamma beta:: = -d beta
        let bg = normal_order(&gen(G::beta(1)), &gen(G::gamma(1))).unwrap();
        let left = normal_order(&bg, &gen(G::beta(1))).unwrap();
        let gb = normal_order(&gen(G::gamma(1)), &gen(G::beta(1))).unwrap();
        let right = normal_order(&gen(G::beta(1)), &gb).unwrap();
        let diff = left.minus(&right).unwrap();
        assert_eq!(diff, gen(G::beta(1)).derivative().scaled(&q(-1)));
    }

    #[test]
    fn derivative_pole_pattern() {
        // d beta(z) gamma(w) ~ -(z-w)^{-2}
        let r = ope(&gen(G::beta(1)).derivative(), &gen(G::gamma(1))).unwrap();
        assert_eq!(r.pole(2), FieldPoly::scalar(ctx(), q(-1)));
        assert!(r.pole(1).is_zero());
        // beta(z) d gamma(w) ~ (z-w)^{-2}
        let r = ope(&gen(G::beta(1)), &gen(G::gamma(1)).derivative()).unwrap();
        assert_eq!(r.pole(2), FieldPoly::scalar(ctx(), q(1)));
    }

    #[test]
    fn context_mismatch() {
        let other = FreeFieldContext::new(1, 0).unwrap();
        let x = FieldPoly::generator(other, G::beta(1)).unwrap();
        assert!(ope(&gen(G::beta(1)), &x).is_err());
    }

    fn sample_monomial(idx: &[u8], ctx: FreeFieldContext) -> FieldPoly {
        let gens = ctx.generators();
        let fs: Vec<Factor> = idx
            .chunks(2)
            .map(|c| Factor::new(gens[c[0] as usize % gens.len()], (c.get(1).copied().unwrap_or(0) % 2) as u32))
            .collect();
        FieldPoly::from_factors(ctx, fs, q(1)).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // a_(n) b = (-1)^{ab} sum_j (-1)^{n+j+1} d^j/j! (b_(n+j) a)
        #[test]
        fn skew_symmetry(ia in proptest::collection::vec(0u8..16, 2..5), ib in proptest::collection::vec(0u8..16, 2..5)) {
            let c = ctx();
            let a = sample_monomial(&ia, c);
            let b = sample_monomial(&ib, c);
            prop_assume!(!a.is_zero() && !b.is_zero());
            let sign_ab = a.parity().unwrap().swap_negates(b.parity().unwrap());
            let ab = products(&a, &b, -1).unwrap();
            let ba = products(&b, &a, -1).unwrap();
            for n in -1i64..6 {
                let lhs = ab.get(&n).cloned().unwrap_or_else(|| FieldPoly::zero(c));
                let mut rhs = FieldPoly::zero(c);
                for (&m, p) in ba.range(n..) {
                    let j = (m - n) as u32;
                    let mut coef = if (n + j as i64 + 1) % 2 == 0 { q(1) } else { q(-1) };
                    if sign_ab { coef = -coef; }
                    coef /= factorial(j);
                    rhs.add_scaled(&p.derivative_n(j), &coef).unwrap();
                }
                prop_assert_eq!(lhs, rhs, "n = {}", n);
            }
        }

        // (da)_(n) b = -n a_(n-1) b
        #[test]
        fn derivation_rule(ia in proptest::collection::vec(0u8..16, 2..5), ib in proptest::collection::vec(0u8..16, 2..5)) {
            let c = ctx();
            let a = sample_monomial(&ia, c);
            let b = sample_monomial(&ib, c);
            let da = products(&a.derivative(), &b, 0).unwrap();
            let plain = products(&a, &b, -1).unwrap();
            for n in 0i64..6 {
                let lhs = da.get(&n).cloned().unwrap_or_else(|| FieldPoly::zero(c));
                let rhs = plain.get(&(n - 1)).cloned().unwrap_or_else(|| FieldPoly::zero(c)).scaled(&q(-n));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn normal_order_bilinear_weight_additive(ia in proptest::collection::vec(0u8..16, 2..5), ib in proptest::collection::vec(0u8..16, 2..5), s in -3i64..4) {
            let c = ctx();
            let a = sample_monomial(&ia, c);
            let b = sample_monomial(&ib, c);
            let b2 = sample_monomial(&ia, c).derivative();
            let lhs = normal_order(&a, &b.plus(&b2.scaled(&qr(s, 2))).unwrap()).unwrap();
            let rhs = normal_order(&a, &b).unwrap().plus(&normal_order(&a, &b2).unwrap().scaled(&qr(s, 2))).unwrap();
            prop_assert_eq!(lhs, rhs);
            let ab = normal_order(&a, &b).unwrap();
            if let (FieldWeight::Homogeneous(wa), FieldWeight::Homogeneous(wb)) = (a.weight(), b.weight()) {
                match ab.weight() {
                    FieldWeight::Homogeneous(w) => prop_assert_eq!(w, wa + wb),
                    FieldWeight::Zero => {}
                    FieldWeight::Inhomogeneous => prop_assert!(false),
                }
                if !ab.is_zero() {
                    prop_assert_eq!(ab.parity().unwrap(), a.parity().unwrap() + b.parity().unwrap());
                }
            }
        }
    }
}
