//! Affine current realizations in free fields.
//!
//! The generators of `S(nm) x E(2nr)` span `C^{2n} (x) C^{m|2r}` and those of
//! `S(nm) x E(nr)` span `V + V*` with `V = C^n (x) C^{r|m}` (parity flipped).
//! Currents are weight-one quadratics whose zero modes act on the generators
//! by the representation matrices; their coefficients come from a linear
//! solve, and the affine OPEs are then verified exactly.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freefield::{central_charge, ope, virasoro_e, virasoro_s, Factor, FieldPoly, FreeFieldContext, GeneratorSymbol, Kind};
use crate::grading::Parity;
use crate::liesuper::{build_algebra, LieSuperAlgebra, Mat};
use crate::linalg::{nullspace, rref};
use crate::rational::{q, qr, serde_q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealizationFamily {
    S1,
    S2,
}

impl RealizationFamily {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s1" => Ok(Self::S1),
            "s2" => Ok(Self::S2),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for RealizationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::S1 => "s1",
            Self::S2 => "s2",
        })
    }
}

/// Currents `X^xi` for a basis of `g`, realizing `V^k(g)`.
#[derive(Clone, Debug)]
pub struct AffineRealization {
    pub g: LieSuperAlgebra,
    pub level: Q,
    pub currents: Vec<FieldPoly>,
    pub ctx: FreeFieldContext,
}

#[derive(Clone, Debug)]
pub struct RealizationPair {
    pub family: RealizationFamily,
    pub n: u32,
    pub m: u32,
    pub r: u32,
    pub inner: AffineRealization,
    pub coset: AffineRealization,
}

/// `w = sign * field` for each basis vector `e_i (x) f_a` of the tensor model.
struct TensorModel {
    ctx: FreeFieldContext,
    rows: usize,
    cols: usize,
    slots: Vec<Option<(GeneratorSymbol, i64)>>,
}

impl TensorModel {
    fn slot(&self, i: usize, a: usize) -> Option<(GeneratorSymbol, i64)> {
        self.slots[i * self.cols + a]
    }

    fn position(&self, g: GeneratorSymbol) -> (usize, usize, i64) {
        let k = self.slots.iter().position(|s| s.is_some_and(|(h, _)| h == g)).expect("generator in model");
        (k / self.cols, k % self.cols, self.slots[k].expect("occupied").1)
    }

    /// `S(nm) x E(2nr)` as `C^{2n} (x) C^{m|2r}`.
    fn s2(n: usize, m: usize, r: usize) -> Result<Self> {
        let ctx = FreeFieldContext::new((n * m) as u32, (2 * n * r) as u32)?;
        let rows = 2 * n;
        let cols = m + 2 * r;
        let mut slots = vec![None; rows * cols];
        for a in 0..m {
            for i in 0..n {
                let idx = (a * n + i + 1) as u32;
                slots[i * cols + a] = Some((GeneratorSymbol::beta(idx), 1));
                slots[(rows - 1 - i) * cols + a] = Some((GeneratorSymbol::gamma(idx), 1));
            }
        }
        for u in 0..2 * r {
            let eps = if u < r { 1 } else { -1 };
            for s in 0..n {
                let idx = (u * n + s + 1) as u32;
                slots[s * cols + m + u] = Some((GeneratorSymbol::b(idx), 1));
                slots[(rows - 1 - s) * cols + m + 2 * r - 1 - u] = Some((GeneratorSymbol::c(idx), eps));
            }
        }
        Ok(Self { ctx, rows, cols, slots })
    }

    /// `S(nm) x E(nr)`: only `V = C^n (x) C^{r|m}` is modelled, with `b` on the
    /// first `r` columns and `beta` on the last `m`.
    fn s1(n: usize, m: usize, r: usize) -> Result<Self> {
        let ctx = FreeFieldContext::new((n * m) as u32, (n * r) as u32)?;
        let cols = r + m;
        let mut slots = vec![None; n * cols];
        for i in 0..n {
            for u in 0..r {
                slots[i * cols + u] = Some((GeneratorSymbol::b((u * n + i + 1) as u32), 1));
            }
            for a in 0..m {
                slots[i * cols + r + a] = Some((GeneratorSymbol::beta((a * n + i + 1) as u32), 1));
            }
        }
        Ok(Self { ctx, rows: n, cols, slots })
    }

    fn modelled(&self) -> Vec<GeneratorSymbol> {
        let mut g: Vec<GeneratorSymbol> = self.slots.iter().flatten().map(|(g, _)| *g).collect();
        g.sort();
        g
    }
}

enum Side {
    Left,
    Right,
}

/// `rho(xi) g` as a linear combination of generators.
fn act(model: &TensorModel, side: &Side, mat: &Mat, g: GeneratorSymbol) -> Vec<(GeneratorSymbol, Q)> {
    let (i, a, sg) = model.position(g);
    let mut out = Vec::new();
    match side {
        Side::Left => {
            for k in 0..model.rows {
                let x = &mat[k][i];
                if !x.is_zero() {
                    let (h, sh) = model.slot(k, a).expect("full model");
                    out.push((h, x * q(sg * sh)));
                }
            }
        }
        Side::Right => {
            for b in 0..model.cols {
                let x = &mat[b][a];
                if !x.is_zero() {
                    let (h, sh) = model.slot(i, b).expect("full model");
                    out.push((h, x * q(sg * sh)));
                }
            }
        }
    }
    out
}

fn quadratic_ansatz(ctx: FreeFieldContext, s1: bool) -> Vec<FieldPoly> {
    let gens = ctx.generators();
    let mut out = Vec::new();
    for (x, &g) in gens.iter().enumerate() {
        for &h in &gens[x..] {
            if g == h && g.parity().is_odd() {
                continue;
            }
            if s1 {
                let covariant = |s: GeneratorSymbol| matches!(s.kind, Kind::Beta | Kind::B);
                if covariant(g) == covariant(h) {
                    continue;
                }
            }
            out.push(FieldPoly::from_factors(ctx, vec![Factor::new(g, 0), Factor::new(h, 0)], Q::one()).expect("valid"));
        }
    }
    out
}

fn linear_coeff(p: &FieldPoly, g: GeneratorSymbol) -> Q {
    p.terms()
        .find(|(m, _)| m.factors() == [Factor::new(g, 0)])
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Q::zero)
}

/// Solves `X_(0) g = rho(xi) g` on the modelled generators for every basis element.
fn solve_currents(alg: &LieSuperAlgebra, model: &TensorModel, side: Side, s1: bool) -> Result<Vec<FieldPoly>> {
    let ctx = model.ctx;
    let ansatz = quadratic_ansatz(ctx, s1);
    let targets = model.modelled();
    let outputs = ctx.generators();
    let nu = ansatz.len();
    let dim = alg.dim();
    // zero modes of the ansatz monomials on each target
    let zero_modes: Vec<Vec<FieldPoly>> = ansatz
        .par_iter()
        .map(|x| {
            targets
                .iter()
                .map(|&t| ope(x, &FieldPoly::generator(ctx, t).expect("valid")).map(|r| r.pole(1)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (ti, &t) in targets.iter().enumerate() {
        let images: Vec<Vec<(GeneratorSymbol, Q)>> = (0..dim).map(|x| act(model, &side, &alg.matrices[x], t)).collect();
        for &o in &outputs {
            let mut row: Vec<Q> = (0..nu).map(|u| linear_coeff(&zero_modes[u][ti], o)).collect();
            for img in &images {
                row.push(img.iter().find(|(h, _)| *h == o).map(|(_, c)| c.clone()).unwrap_or_else(Q::zero));
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let mut reduced = rows.clone();
    let pivots = rref(&mut reduced, nu);
    if !nullspace(&rows.iter().map(|r| r[..nu].to_vec()).collect::<Vec<_>>(), nu).is_empty() {
        return Err(Error::SolveFailure(alg.name.clone(), "current ansatz is not determined by its zero modes".into()));
    }
    for row in reduced.iter().skip(pivots.len()) {
        if row[nu..].iter().any(|x| !x.is_zero()) {
            return Err(Error::SolveFailure(alg.name.clone(), "representation does not preserve the free-field pairing".into()));
        }
    }
    let mut currents = Vec::with_capacity(dim);
    for x in 0..dim {
        let mut cur = FieldPoly::zero(ctx);
        for (row, &p) in reduced.iter().zip(&pivots) {
            let c = &row[nu + x];
            if !c.is_zero() {
                cur.add_scaled(&ansatz[p], c)?;
            }
        }
        currents.push(cur);
    }
    Ok(currents)
}

fn check_params(n: i64, m: i64, r: i64) -> Result<(usize, usize, usize)> {
    if n < 1 || r < 1 || m < 0 {
        return Err(Error::InvalidParameter(format!("need n >= 1, r >= 1, m >= 0 (got n={n}, m={m}, r={r})")));
    }
    Ok((n as usize, m as usize, r as usize))
}

/// Builds the inner and coset currents of family `s1` or `s2`.
pub fn build_realization(family: RealizationFamily, n: i64, m: i64, r: i64) -> Result<RealizationPair> {
    let (nu, mu, ru) = check_params(n, m, r)?;
    let (model, inner_alg, coset_alg, k_inner, s1) = match family {
        RealizationFamily::S2 => (
            TensorModel::s2(nu, mu, ru)?,
            build_algebra("sp", &[n])?,
            build_algebra("osp", &[m, r])?,
            qr(-m, 2) + q(r),
            false,
        ),
        RealizationFamily::S1 => (TensorModel::s1(nu, mu, ru)?, build_algebra("gl", &[n])?, build_algebra("sl_super", &[r, m])?, q(r - m), true),
    };
    let ctx = model.ctx;
    let inner = solve_currents(&inner_alg, &model, Side::Left, s1)?;
    let coset = solve_currents(&coset_alg, &model, Side::Right, s1)?;
    Ok(RealizationPair {
        family,
        n: nu as u32,
        m: mu as u32,
        r: ru as u32,
        inner: AffineRealization { g: inner_alg, level: k_inner, currents: inner, ctx },
        coset: AffineRealization { g: coset_alg, level: q(n), currents: coset, ctx },
    })
}

impl RealizationPair {
    pub fn ctx(&self) -> FreeFieldContext {
        self.inner.ctx
    }

    /// Whether the simple-quotient statement for the coset applies to these
    /// parameters.
    pub fn simplicity_asserted(&self) -> bool {
        let (n, m, r) = (self.n as i64, self.m as i64, self.r as i64);
        match self.family {
            RealizationFamily::S1 => m >= 1 && n >= 2 && m != r && -m + r + n > 0,
            RealizationFamily::S2 => m >= 1 && -m + 2 * r + 2 * n + 2 > 0,
        }
    }

    /// Sum of the free-field Virasoro vectors present in the context.
    pub fn ambient_virasoro(&self) -> Result<FieldPoly> {
        free_virasoro(self.ctx())
    }

    /// `-nm + 2nr` for `s2`, `-nm + nr` for `s1`.
    pub fn ambient_central_charge(&self) -> Q {
        let (n, m, r) = (self.n as i64, self.m as i64, self.r as i64);
        match self.family {
            RealizationFamily::S2 => q(-n * m + 2 * n * r),
            RealizationFamily::S1 => q(-n * m + n * r),
        }
    }
}

pub fn free_virasoro(ctx: FreeFieldContext) -> Result<FieldPoly> {
    let mut l = FieldPoly::zero(ctx);
    if ctx.n_bg > 0 {
        l = l.plus(&virasoro_s(ctx)?)?;
    }
    if ctx.n_bc > 0 {
        l = l.plus(&virasoro_e(ctx)?)?;
    }
    Ok(l)
}

/// Linear action of one algebra element on the free-field generators.
#[derive(Clone, Debug)]
pub struct GeneratorAction {
    pub label: String,
    pub images: Vec<(GeneratorSymbol, Vec<(GeneratorSymbol, Q)>)>,
}

impl GeneratorAction {
    /// The diagonal entries when the action is diagonal.
    pub fn diagonal(&self) -> Option<Vec<(GeneratorSymbol, Q)>> {
        let mut out = Vec::new();
        for (g, img) in &self.images {
            match img.as_slice() {
                [] => out.push((*g, Q::zero())),
                [(h, c)] if h == g => out.push((*g, c.clone())),
                _ => return None,
            }
        }
        Some(out)
    }
}

/// The `sp_2n` action on the generators of `S(nm) x E(2nr)` read off from the
/// tensor model, independent of any current.
pub fn symplectic_generator_action(n: i64, m: i64, r: i64) -> Result<(FreeFieldContext, Vec<GeneratorAction>)> {
    let (nu, mu, ru) = check_params(n, m, r)?;
    let model = TensorModel::s2(nu, mu, ru)?;
    let sp = build_algebra("sp", &[n])?;
    let gens = model.ctx.generators();
    let ops = (0..sp.dim())
        .map(|x| GeneratorAction {
            label: sp.basis[x].label.clone(),
            images: gens.iter().map(|&g| (g, act(&model, &Side::Left, &sp.matrices[x], g))).collect(),
        })
        .collect();
    Ok((model.ctx, ops))
}

#[derive(Clone, Debug, Serialize)]
pub struct PoleFailure {
    pub i: usize,
    pub j: usize,
    pub labels: (String, String),
    pub pole: u32,
    pub expected: String,
    pub got: String,
    pub discrepancy: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AffineOpeReport {
    pub algebra: String,
    #[serde(with = "serde_q")]
    pub level: Q,
    pub pairs_checked: usize,
    pub pairs_passed: usize,
    pub failures: Vec<PoleFailure>,
}

impl AffineOpeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl AffineRealization {
    /// The current of an arbitrary algebra element.
    pub fn current_of(&self, coeffs: &[Q]) -> Result<FieldPoly> {
        let mut out = FieldPoly::zero(self.ctx);
        for (c, x) in coeffs.iter().zip(&self.currents) {
            if !c.is_zero() {
                out.add_scaled(x, c)?;
            }
        }
        Ok(out)
    }

    fn bracket_current(&self, i: usize, j: usize) -> Result<FieldPoly> {
        let mut out = FieldPoly::zero(self.ctx);
        for (k, c) in &self.g.structure[i][j] {
            out.add_scaled(&self.currents[*k], c)?;
        }
        Ok(out)
    }

    fn label(&self, i: usize) -> String {
        format!("X[{}]", self.g.basis[i].label)
    }

    pub fn current_labels(&self) -> Vec<String> {
        (0..self.g.dim()).map(|i| self.label(i)).collect()
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<Vec<PoleFailure>> {
        let r = ope(&self.currents[i], &self.currents[j])?;
        let mut out = Vec::new();
        let mut fail = |pole: u32, expected: FieldPoly, got: FieldPoly| -> Result<()> {
            let diff = got.minus(&expected)?;
            if !diff.is_zero() {
                out.push(PoleFailure {
                    i,
                    j,
                    labels: (self.label(i), self.label(j)),
                    pole,
                    expected: expected.to_text(),
                    got: got.to_text(),
                    discrepancy: diff.to_text(),
                });
            }
            Ok(())
        };
        for (&p, got) in r.poles.range(3..) {
            fail(p, FieldPoly::zero(self.ctx), got.clone())?;
        }
        fail(2, FieldPoly::scalar(self.ctx, &self.level * &self.g.form[i][j]), r.pole(2))?;
        fail(1, self.bracket_current(i, j)?, r.pole(1))?;
        Ok(out)
    }
}

/// Checks `X^a(z) X^b(w) ~ k (a,b) (z-w)^-2 + X^[a,b](w) (z-w)^-1` for every
/// ordered basis pair.
pub fn verify_affine_ope(a: &AffineRealization) -> Result<AffineOpeReport> {
    let d = a.g.dim();
    let per_pair: Vec<Vec<PoleFailure>> = (0..d * d).into_par_iter().map(|x| a.check_pair(x / d, x % d)).collect::<Result<_>>()?;
    let pairs_passed = per_pair.iter().filter(|f| f.is_empty()).count();
    Ok(AffineOpeReport {
        algebra: a.g.name.clone(),
        level: a.level.clone(),
        pairs_checked: d * d,
        pairs_passed,
        failures: per_pair.into_iter().flatten().collect(),
    })
}

/// `(1/(2(k+h))) sum_i :X^{x'_i} X^{x_i}:`, with the center of a reductive
/// algebra (only `gl_n` here) contributing `(1/(2k)) sum :J' J:` instead.
pub fn sugawara(a: &AffineRealization) -> Result<FieldPoly> {
    let g = &a.g;
    let d = g.dim();
    let center = center_basis(g);
    let derived = derived_basis(g);
    if center.len() + derived.len() != d {
        return Err(Error::InvalidParameter(format!("{} is not the direct sum of its center and derived algebra", g.name)));
    }
    if !derived.is_empty() && (&a.level + &g.h_dual).is_zero() {
        return Err(Error::CriticalLevel);
    }
    if !center.is_empty() && a.level.is_zero() {
        return Err(Error::CriticalLevel);
    }
    let basis: Vec<Vec<Q>> = derived.iter().chain(&center).cloned().collect();
    // form in the new basis and its inverse give the dual basis
    let gram: Mat = basis.iter().map(|u| basis.iter().map(|v| bilinear(&g.form, u, v)).collect()).collect();
    let inv = crate::linalg::invert(&gram).ok_or_else(|| Error::DegenerateForm(g.name.clone()))?;
    let mut l = FieldPoly::zero(a.ctx);
    for (i, u) in basis.iter().enumerate() {
        let mut dual = vec![Q::zero(); d];
        for (k, v) in basis.iter().enumerate() {
            let c = &inv[k][i];
            if !c.is_zero() {
                for (x, y) in dual.iter_mut().zip(v) {
                    *x += c * y;
                }
            }
        }
        let pref = if i < derived.len() { Q::one() / (q(2) * (&a.level + &g.h_dual)) } else { Q::one() / (q(2) * &a.level) };
        let xu = a.current_of(u)?;
        let xd = a.current_of(&dual)?;
        l.add_scaled(&crate::freefield::normal_order(&xd, &xu)?, &pref)?;
    }
    Ok(l)
}

/// Expected Sugawara central charge `k sdim(g')/(k+h) + sdim(z)`.
pub fn sugawara_central_charge(a: &AffineRealization) -> Result<Q> {
    let g = &a.g;
    let center = center_basis(g);
    let sdim_center = center.len() as i64;
    let sdim_derived = g.sdim() - sdim_center;
    let mut c = q(sdim_center);
    if sdim_derived != 0 || g.dim() > center.len() {
        let denom = &a.level + &g.h_dual;
        if denom.is_zero() {
            return Err(Error::CriticalLevel);
        }
        c += &a.level * q(sdim_derived) / denom;
    }
    Ok(c)
}

fn bilinear(form: &Mat, u: &[Q], v: &[Q]) -> Q {
    let mut s = Q::zero();
    for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            s += a * b * &form[i][j];
        }
    }
    s
}

fn center_basis(g: &LieSuperAlgebra) -> Vec<Vec<Q>> {
    let d = g.dim();
    // sum_a c_a [x_a, x_j] = 0 for all j
    let mut rows = Vec::new();
    for j in 0..d {
        for k in 0..d {
            let row: Vec<Q> = (0..d)
                .map(|a| g.structure[a][j].iter().find(|(kk, _)| *kk == k).map(|(_, c)| c.clone()).unwrap_or_else(Q::zero))
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    nullspace(&rows, d)
}

fn derived_basis(g: &LieSuperAlgebra) -> Vec<Vec<Q>> {
    let d = g.dim();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let mut v = vec![Q::zero(); d];
            for (k, c) in &g.structure[i][j] {
                v[*k] = c.clone();
            }
            if v.iter().any(|x| !x.is_zero()) {
                rows.push(v);
            }
        }
    }
    let pivots = rref(&mut rows, d);
    rows.truncate(pivots.len());
    rows
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetViolation {
    pub inner: String,
    pub coset: String,
    pub poles: Vec<(u32, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetReport {
    pub pairs_checked: usize,
    pub violations: Vec<CosetViolation>,
}

impl CosetReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every OPE between an inner and a coset current must be regular.
pub fn verify_coset(p: &RealizationPair) -> Result<CosetReport> {
    p.inner.ctx.check_compatible(&p.coset.ctx)?;
    let di = p.inner.currents.len();
    let dc = p.coset.currents.len();
    let found: Vec<Option<CosetViolation>> = (0..di * dc)
        .into_par_iter()
        .map(|x| {
            let (i, j) = (x / dc, x % dc);
            let r = ope(&p.inner.currents[i], &p.coset.currents[j])?;
            Ok((!r.is_regular()).then(|| CosetViolation {
                inner: p.inner.label(i),
                coset: p.coset.label(j),
                poles: r.poles.iter().map(|(k, v)| (*k, v.to_text())).collect(),
            }))
        })
        .collect::<Result<_>>()?;
    Ok(CosetReport { pairs_checked: di * dc, violations: found.into_iter().flatten().collect() })
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    #[serde(with = "serde_q")]
    pub c_inner: Q,
    #[serde(with = "serde_q")]
    pub c_coset: Q,
    #[serde(with = "serde_q")]
    pub c_expected: Q,
    pub central_charges_match: bool,
    pub vector_identity_holds: bool,
    /// `L^inner + L^coset - L^ambient`.
    pub discrepancy: String,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.central_charges_match && self.vector_identity_holds
    }
}

/// Checks `L^inner + L^coset = L^S + L^E` and the central-charge sum.
pub fn verify_conformal_embedding(p: &RealizationPair) -> Result<EmbeddingReport> {
    p.inner.ctx.check_compatible(&p.coset.ctx)?;
    let li = sugawara(&p.inner)?;
    let lc = sugawara(&p.coset)?;
    let c_inner = central_charge(&li)?;
    let c_coset = central_charge(&lc)?;
    let total = li.plus(&lc)?;
    let diff = total.minus(&p.ambient_virasoro()?)?;
    let c_expected = p.ambient_central_charge();
    Ok(EmbeddingReport {
        central_charges_match: &c_inner + &c_coset == c_expected,
        c_inner,
        c_coset,
        c_expected,
        vector_identity_holds: diff.is_zero(),
        discrepancy: diff.to_text(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CurrentExport {
    pub label: String,
    pub parity: Parity,
    pub text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationExport {
    pub algebra: String,
    #[serde(with = "serde_q")]
    pub level: Q,
    #[serde(with = "serde_q")]
    pub h_dual: Q,
    pub currents: Vec<CurrentExport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairExport {
    pub family: RealizationFamily,
    pub n: u32,
    pub m: u32,
    pub r: u32,
    pub context: String,
    pub simplicity_asserted: bool,
    pub inner: RealizationExport,
    pub coset: RealizationExport,
}

impl AffineRealization {
    pub fn export(&self) -> RealizationExport {
        RealizationExport {
            algebra: self.g.name.clone(),
            level: self.level.clone(),
            h_dual: self.g.h_dual.clone(),
            currents: (0..self.g.dim())
                .map(|i| CurrentExport { label: self.label(i), parity: self.g.parity(i), text: self.currents[i].to_text() })
                .collect(),
        }
    }
}

impl RealizationPair {
    pub fn export(&self) -> PairExport {
        PairExport {
            family: self.family,
            n: self.n,
            m: self.m,
            r: self.r,
            context: self.ctx().to_string(),
            simplicity_asserted: self.simplicity_asserted(),
            inner: self.inner.export(),
            coset: self.coset.export(),
        }
    }
}
