use super::generator::{FreeFieldContext, GeneratorSymbol as G};
use super::ope::ope;
use super::poly::{Factor, FieldPoly, FieldWeight};
use crate::error::{Error, Result};
use crate::rational::{q, qr, Q};

/// `L^S = 1/2 sum_i (:beta^i d gamma^i: - :d beta^i gamma^i:)`, central charge `-n_bg`.
pub fn virasoro_s(ctx: FreeFieldContext) -> Result<FieldPoly> {
    if ctx.n_bg == 0 {
        return Err(Error::InvalidParameter("L^S needs a beta-gamma rank > 0".into()));
    }
    let mut l = FieldPoly::zero(ctx);
    for i in 1..=ctx.n_bg {
        l.add_factors(vec![Factor::new(G::beta(i), 0), Factor::new(G::gamma(i), 1)], qr(1, 2));
        l.add_factors(vec![Factor::new(G::beta(i), 1), Factor::new(G::gamma(i), 0)], qr(-1, 2));
    }
    Ok(l)
}

/// `L^E = 1/2 sum_i (-:b^i d c^i: + :d b^i c^i:)`, central charge `n_bc`.
pub fn virasoro_e(ctx: FreeFieldContext) -> Result<FieldPoly> {
    if ctx.n_bc == 0 {
        return Err(Error::InvalidParameter("L^E needs a b-c rank > 0".into()));
    }
    let mut l = FieldPoly::zero(ctx);
    for i in 1..=ctx.n_bc {
        l.add_factors(vec![Factor::new(G::b(i), 0), Factor::new(G::c(i), 1)], qr(-1, 2));
        l.add_factors(vec![Factor::new(G::b(i), 1), Factor::new(G::c(i), 0)], qr(1, 2));
    }
    Ok(l)
}

/// Reads the central charge from the quartic pole of `L(z) L(w)` after
/// checking the Virasoro shape `{4: c/2, 3: 0, 2: 2L, 1: dL}`.
pub fn central_charge(l: &FieldPoly) -> Result<Q> {
    let r = ope(l, l)?;
    if let Some((&p, _)) = r.poles.range(5..).next() {
        return Err(Error::NotVirasoro { pole: p, reason: "must vanish".into() });
    }
    let p4 = r.pole(4);
    if !p4.is_scalar() {
        return Err(Error::NotVirasoro { pole: 4, reason: format!("is not a scalar: {p4}") });
    }
    if !r.pole(3).is_zero() {
        return Err(Error::NotVirasoro { pole: 3, reason: format!("is {} instead of 0", r.pole(3)) });
    }
    let diff2 = r.pole(2).minus(&l.scaled(&q(2)))?;
    if !diff2.is_zero() {
        return Err(Error::NotVirasoro { pole: 2, reason: format!("differs from 2L by {diff2}") });
    }
    let diff1 = r.pole(1).minus(&l.derivative())?;
    if !diff1.is_zero() {
        return Err(Error::NotVirasoro { pole: 1, reason: format!("differs from dL by {diff1}") });
    }
    Ok(p4.scalar_part() * q(2))
}

/// Common conformal weight of all terms.
pub fn weight(a: &FieldPoly) -> FieldWeight {
    a.weight()
}

/// Whether `a` is primary of weight `h` for `l`: `{2: h a, 1: da}` and no higher poles.
pub fn is_primary(l: &FieldPoly, a: &FieldPoly, h: &Q) -> Result<bool> {
    let r = ope(l, a)?;
    Ok(r.max_pole() <= 2 && r.pole(2) == a.scaled(h) && r.pole(1) == a.derivative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::Weight;

    #[test]
    fn free_field_central_charges() {
        for n in 1..=3 {
            let s = FreeFieldContext::new(n, 0).unwrap();
            assert_eq!(central_charge(&virasoro_s(s).unwrap()).unwrap(), q(-(n as i64)));
            let e = FreeFieldContext::new(0, n).unwrap();
            assert_eq!(central_charge(&virasoro_e(e).unwrap()).unwrap(), q(n as i64));
        }
        let s1 = FreeFieldContext::new(1, 0).unwrap();
        let r = ope(&virasoro_s(s1).unwrap(), &virasoro_s(s1).unwrap()).unwrap();
        assert_eq!(r.pole(4), FieldPoly::scalar(s1, qr(-1, 2)));
        assert!(r.pole(3).is_zero());
        let e1 = FreeFieldContext::new(0, 1).unwrap();
        let r = ope(&virasoro_e(e1).unwrap(), &virasoro_e(e1).unwrap()).unwrap();
        assert_eq!(r.pole(4), FieldPoly::scalar(e1, qr(1, 2)));
    }

    #[test]
    fn central_charges_add() {
        let ctx = FreeFieldContext::new(1, 2).unwrap();
        let l = virasoro_s(ctx).unwrap().plus(&virasoro_e(ctx).unwrap()).unwrap();
        assert_eq!(central_charge(&l).unwrap(), q(1));
    }

    #[test]
    fn non_virasoro_input() {
        let ctx = FreeFieldContext::new(1, 0).unwrap();
        let beta = FieldPoly::generator(ctx, G::beta(1)).unwrap();
        assert!(matches!(central_charge(&beta), Err(Error::NotVirasoro { .. })));
        let two_l = virasoro_s(ctx).unwrap().scaled(&q(2));
        assert!(matches!(central_charge(&two_l), Err(Error::NotVirasoro { pole: 2, .. })));
    }

    #[test]
    fn generators_are_primary_of_weight_half() {
        let ctx = FreeFieldContext::new(2, 2).unwrap();
        let l = virasoro_s(ctx).unwrap().plus(&virasoro_e(ctx).unwrap()).unwrap();
        for g in ctx.generators() {
            let a = FieldPoly::generator(ctx, g).unwrap();
            assert!(is_primary(&l, &a, &qr(1, 2)).unwrap(), "{g}");
        }
        let s1 = FreeFieldContext::new(1, 0).unwrap();
        let beta = FieldPoly::generator(s1, G::beta(1)).unwrap();
        let r = ope(&virasoro_s(s1).unwrap(), &beta).unwrap();
        assert_eq!(r.pole(2), beta.scaled(&qr(1, 2)));
        assert_eq!(r.pole(1), beta.derivative());
    }

    #[test]
    fn weights() {
        let ctx = FreeFieldContext::new(1, 0).unwrap();
        let beta = FieldPoly::generator(ctx, G::beta(1)).unwrap();
        assert_eq!(weight(&beta), FieldWeight::Homogeneous(Weight(1)));
        assert_eq!(weight(&beta.derivative()), FieldWeight::Homogeneous(Weight(3)));
        let bg = FieldPoly::from_factors(ctx, vec![Factor::new(G::beta(1), 0), Factor::new(G::gamma(1), 0)], q(1)).unwrap();
        let mixed = bg.plus(&virasoro_s(ctx).unwrap()).unwrap();
        assert_eq!(weight(&mixed), FieldWeight::Inhomogeneous);
    }
}
