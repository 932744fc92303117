//! Mode actions of normally ordered free-field polynomials on Fock vectors.
//!
//! For `A = :x N:` with `x` a single factor,
//!
//! ```text
//! A_(n) = sum_{j>=0} x_(-1-j) N_(n+j) + (-1)^{|x||N|} sum_{j>=0} N_(n-1-j) x_(j)
//! ```
//!
//! and `(d^k g)_(n) = (-1)^k n (n-1) ... (n-k+1) g_(n-k)`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::fock::{apply_generator, max_weight, vacuum, FockMonomial, FockVector};
use crate::error::{Error, Result};
use crate::freefield::{products, Factor, FieldPoly, FreeFieldContext};
use crate::grading::Weight;
use crate::linalg::axpy;
use crate::rational::{factorial, falling, Q};

fn scale_into(out: &mut FockVector, c: &Q, v: &FockVector) {
    let items: Vec<(FockMonomial, Q)> = v.iter().map(|(m, x)| (m.clone(), x.clone())).collect();
    axpy(out, c, &items);
}

fn apply_factor(f: Factor, n: i64, v: &FockVector) -> FockVector {
    let k = f.d;
    let mut c = falling(n, k);
    if c.is_zero() {
        return FockVector::new();
    }
    if k % 2 == 1 {
        c = -c;
    }
    let w = apply_generator(f.gen, n - k as i64, v);
    if c.is_one() {
        return w;
    }
    w.into_iter().map(|(m, x)| (m, x * &c)).collect()
}

fn doubled(fs: &[Factor]) -> i64 {
    fs.iter().map(|f| f.weight().0).sum()
}

fn apply_factors(fs: &[Factor], n: i64, v: &FockVector) -> FockVector {
    if v.is_empty() {
        return FockVector::new();
    }
    match fs {
        [] => {
            if n == -1 {
                v.clone()
            } else {
                FockVector::new()
            }
        }
        [f] => apply_factor(*f, n, v),
        [x, rest @ ..] => {
            let vw = max_weight(v).map_or(0, |w| w.0);
            let wn = doubled(rest);
            let wx = x.weight().0;
            let sign_neg = x.is_odd() && rest.iter().filter(|f| f.is_odd()).count() % 2 == 1;
            let mut out = FockVector::new();
            // N_(n+j) v has doubled weight vw + wn - 2(n+j+1) >= 0
            let jmax = (vw + wn).div_euclid(2) - n - 1;
            for j in 0..=jmax.max(-1) {
                let inner = apply_factors(rest, n + j, v);
                if inner.is_empty() {
                    continue;
                }
                let t = apply_factor(*x, -1 - j, &inner);
                scale_into(&mut out, &Q::one(), &t);
            }
            let jmax2 = (vw + wx).div_euclid(2) - 1;
            let sign = if sign_neg { -Q::one() } else { Q::one() };
            for j in 0..=jmax2.max(-1) {
                let t = apply_factor(*x, j, v);
                if t.is_empty() {
                    continue;
                }
                let t = apply_factors(rest, n - 1 - j, &t);
                scale_into(&mut out, &sign, &t);
            }
            out
        }
    }
}

/// `a_(n) v` without truncation checks.
pub fn apply_field(a: &FieldPoly, n: i64, v: &FockVector) -> FockVector {
    let mut out = FockVector::new();
    for (m, c) in a.terms() {
        let t = apply_factors(m.factors(), n, v);
        scale_into(&mut out, c, &t);
    }
    out
}

/// `a_(n) v`, failing if the result leaves the truncation window.
pub fn mode_action(a: &FieldPoly, n: i64, v: &FockVector, max: Weight) -> Result<FockVector> {
    let out = apply_field(a, n, v);
    if let Some(w) = max_weight(&out) {
        if w > max {
            return Err(Error::Truncation { got: w, max });
        }
    }
    Ok(out)
}

/// The state `a_(-1)|0>` of a field.
pub fn state_of(a: &FieldPoly) -> FockVector {
    apply_field(a, -1, &vacuum())
}

/// The field whose state is `v`: `g_(-1-p)` corresponds to `d^p g / p!`.
pub fn field_of_state(ctx: FreeFieldContext, v: &FockVector) -> Result<FieldPoly> {
    let mut out = FieldPoly::zero(ctx);
    for (m, c) in v {
        let mut coef = c.clone();
        let mut fs = Vec::with_capacity(m.0.len());
        for cr in &m.0 {
            ctx.check(cr.gen)?;
            coef /= factorial(cr.p);
            fs.push(Factor::new(cr.gen, cr.p));
        }
        out.add_factors(fs, coef);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckFailure {
    pub n: i64,
    pub symbolic: String,
    pub fock: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub a: String,
    pub b: String,
    pub products_checked: usize,
    pub failures: Vec<CrosscheckFailure>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares every `a_(n) b` with `n >= -1` from the OPE engine against the
/// Fock-space mode action on the state of `b`.
pub fn ope_fock_crosscheck(a: &FieldPoly, b: &FieldPoly, max: Weight) -> Result<CrosscheckReport> {
    a.check_same_ctx(b)?;
    let sb = state_of(b);
    let wa = max_weight_of(a);
    let wb = max_weight_of(b);
    // a_(n) b vanishes once 2n + 2 > wa + wb
    let nmax = (wa + wb).div_euclid(2) - 1;
    let poles = products(a, b, -1)?;
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in -1..=nmax {
        let sym = poles.get(&n).cloned().unwrap_or_else(|| FieldPoly::zero(a.ctx));
        let lhs = state_of(&sym);
        let rhs = mode_action(a, n, &sb, max)?;
        checked += 1;
        if lhs != rhs {
            failures.push(CrosscheckFailure {
                n,
                symbolic: super::fock::fock_text(&lhs),
                fock: super::fock::fock_text(&rhs),
            });
        }
    }
    Ok(CrosscheckReport { a: a.to_text(), b: b.to_text(), products_checked: checked, failures })
}

fn max_weight_of(a: &FieldPoly) -> i64 {
    a.terms().map(|(m, _)| m.weight().0).max().unwrap_or(0)
}
