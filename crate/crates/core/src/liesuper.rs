//! Finite-dimensional Lie superalgebras as matrix subalgebras of `gl(p|q)`.
//!
//! Every family is realized inside the general linear superalgebra of its
//! standard module. A basis is read off from the solution space of the
//! defining linear conditions (trace, supertrace, or preservation of a
//! super-symmetric bilinear form), so structure constants stay in `Q`.
//!
//! The invariant form is `scale * str(XY)` with `scale` chosen per family:
//!
//! | family      | standard module        | scale | `h_dual`        |
//! |-------------|------------------------|-------|-----------------|
//! | `gl_n`      | `C^n`                  | 1     | `n`             |
//! | `sl_n`      | `C^n`                  | 1     | `n`             |
//! | `so_m`      | `C^m`                  | 1/2   | `m - 2`         |
//! | `sp_2n`     | `C^2n`                 | 1     | `n + 1`         |
//! | `sl(r\|m)`  | `C^{r\|m}`             | 1     | `r - m`         |
//! | `osp(m\|2n)`| `C^{m\|2n}`            | -1    | `(2n + 2 - m)/2`|
//!
//! For `osp(m|2n)` the sign makes the form restrict to the usual trace form
//! on the `sp_2n` block and to `-2 x (1/2 tr)` on the `so_m` block.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::Parity;
use crate::linalg::{invert, mat_mul, nullspace_with_free};
use crate::rational::{fmt_q, q, qr, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Gl,
    Sl,
    So,
    Sp,
    SlSuper,
    Osp,
}

impl Family {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "gl" => Family::Gl,
            "sl" => Family::Sl,
            "so" => Family::So,
            "sp" => Family::Sp,
            "sl_super" | "slsuper" => Family::SlSuper,
            "osp" => Family::Osp,
            other => return Err(Error::UnknownFamily(other.to_string())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    pub index: usize,
    pub parity: Parity,
    pub label: String,
}

/// Dense square supermatrix over `Q`.
pub type Mat = Vec<Vec<Q>>;

#[derive(Clone, Debug)]
pub struct LieSuperAlgebra {
    pub name: String,
    pub family: Family,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub basis: Vec<BasisElement>,
    /// `structure[i][j]` is the sparse expansion of `[x_i, x_j]`.
    pub structure: Vec<Vec<Vec<(usize, Q)>>>,
    pub form: Vec<Vec<Q>>,
    pub h_dual: Q,
    /// Parities of the standard module basis.
    pub module_parity: Vec<Parity>,
    /// Basis elements as matrices on the standard module.
    pub matrices: Vec<Mat>,
    coord_pos: Vec<(usize, usize)>,
}

/// Element of a Lie superalgebra in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraVector {
    pub algebra: String,
    pub coeffs: Vec<Q>,
    /// `Some` when the vector is parity-homogeneous.
    pub parity: Option<Parity>,
}

impl fmt::Display for AlgebraVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*x{}", fmt_q(c), i))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn zero_mat(n: usize) -> Mat {
    vec![vec![Q::zero(); n]; n]
}

fn supertrace(m: &Mat, parity: &[Parity]) -> Q {
    let mut s = Q::zero();
    for (i, p) in parity.iter().enumerate() {
        if p.is_odd() {
            s -= &m[i][i];
        } else {
            s += &m[i][i];
        }
    }
    s
}

/// Antidiagonal symplectic form on `C^{2n}`: `J[i][2n-1-i] = +1` for the
/// first half and `-1` for the second.
pub fn symplectic_form(n: usize) -> Mat {
    let d = 2 * n;
    let mut j = zero_mat(d);
    for i in 0..d {
        j[i][d - 1 - i] = if i < n { q(1) } else { q(-1) };
    }
    j
}

/// Even super-symmetric form on `C^{m|2n}`: identity on the orthogonal block,
/// antidiagonal symplectic on the symplectic block.
pub fn orthosymplectic_form(m: usize, n: usize) -> Mat {
    let d = m + 2 * n;
    let mut f = zero_mat(d);
    for i in 0..m {
        f[i][i] = q(1);
    }
    let j = symplectic_form(n);
    for a in 0..2 * n {
        for b in 0..2 * n {
            f[m + a][m + b] = j[a][b].clone();
        }
    }
    f
}

enum Condition {
    None,
    Supertrace,
    Preserves(Mat),
}

impl LieSuperAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn sdim(&self) -> i64 {
        self.dim_even as i64 - self.dim_odd as i64
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn basis_vector(&self, i: usize) -> AlgebraVector {
        let mut coeffs = vec![Q::zero(); self.dim()];
        coeffs[i] = Q::one();
        AlgebraVector { algebra: self.name.clone(), coeffs, parity: Some(self.parity(i)) }
    }

    pub fn vector(&self, coeffs: Vec<Q>) -> Result<AlgebraVector> {
        if coeffs.len() != self.dim() {
            return Err(Error::InvalidParameter(format!(
                "vector of length {} for algebra `{}` of dimension {}",
                coeffs.len(),
                self.name,
                self.dim()
            )));
        }
        let mut parity = None;
        let mut mixed = false;
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match parity {
                None => parity = Some(self.parity(i)),
                Some(p) if p != self.parity(i) => mixed = true,
                _ => {}
            }
        }
        let parity = if mixed { None } else { parity.or(Some(Parity::Even)) };
        Ok(AlgebraVector { algebra: self.name.clone(), coeffs, parity })
    }

    fn check_member(&self, v: &AlgebraVector) -> Result<()> {
        if v.algebra != self.name || v.coeffs.len() != self.dim() {
            return Err(Error::AlgebraMismatch(self.name.clone(), v.algebra.clone()));
        }
        Ok(())
    }

    pub fn bracket(&self, a: &AlgebraVector, b: &AlgebraVector) -> Result<AlgebraVector> {
        self.check_member(a)?;
        self.check_member(b)?;
        let mut out = vec![Q::zero(); self.dim()];
        for (i, ai) in a.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let ab = ai * bj;
                for (k, f) in &self.structure[i][j] {
                    out[*k] += &ab * f;
                }
            }
        }
        self.vector(out)
    }

    pub fn form(&self, a: &AlgebraVector, b: &AlgebraVector) -> Result<Q> {
        self.check_member(a)?;
        self.check_member(b)?;
        let mut s = Q::zero();
        for (i, ai) in a.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if !self.form[i][j].is_zero() {
                    s += ai * bj * &self.form[i][j];
                }
            }
        }
        Ok(s)
    }

    /// Dual basis `x'_j` with `(x_i, x'_j) = delta_ij`.
    pub fn dual_basis(&self) -> Result<Vec<AlgebraVector>> {
        let inv = invert(&self.form).ok_or_else(|| Error::DegenerateForm(self.name.clone()))?;
        // B D^T = 1  =>  D = (B^{-1})^T
        (0..self.dim())
            .map(|j| self.vector((0..self.dim()).map(|k| inv[k][j].clone()).collect()))
            .collect()
    }

    /// Matrix of `v` acting on the standard module.
    pub fn matrix_of(&self, v: &AlgebraVector) -> Result<Mat> {
        self.check_member(v)?;
        let d = self.module_parity.len();
        let mut m = zero_mat(d);
        for (i, c) in v.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (r, row) in self.matrices[i].iter().enumerate() {
                for (s, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        m[r][s] += c * x;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Matrix of `ad(x_a)` in the basis: `ad[k][j] = f[a][j][k]`.
    pub fn ad_matrix(&self, a: usize) -> Mat {
        let n = self.dim();
        let mut m = zero_mat(n);
        for j in 0..n {
            for (k, f) in &self.structure[a][j] {
                m[*k][j] = f.clone();
            }
        }
        m
    }

    /// Quadratic Casimir `sum_i ad(x'_i) ad(x_i)` on the adjoint module.
    pub fn adjoint_casimir(&self) -> Result<Mat> {
        let dual = self.dual_basis()?;
        let n = self.dim();
        let ads: Vec<Mat> = (0..n).map(|a| self.ad_matrix(a)).collect();
        let mut total = zero_mat(n);
        for (i, xi_dual) in dual.iter().enumerate() {
            let mut ad_dual = zero_mat(n);
            for (a, c) in xi_dual.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for r in 0..n {
                    for s in 0..n {
                        if !ads[a][r][s].is_zero() {
                            ad_dual[r][s] += c * &ads[a][r][s];
                        }
                    }
                }
            }
            let prod = mat_mul(&ad_dual, &ads[i]);
            for r in 0..n {
                for s in 0..n {
                    if !prod[r][s].is_zero() {
                        total[r][s] += &prod[r][s];
                    }
                }
            }
        }
        Ok(total)
    }

    /// Exhaustive structural checks; returns a description of each failure.
    pub fn structural_failures(&self) -> Vec<String> {
        let n = self.dim();
        let mut failures = Vec::new();
        let sgn = |i: usize, j: usize| self.parity(i).swap_negates(self.parity(j));
        let dense = |i: usize, j: usize| {
            let mut v = vec![Q::zero(); n];
            for (k, f) in &self.structure[i][j] {
                v[*k] = f.clone();
            }
            v
        };
        for i in 0..n {
            for j in 0..n {
                if self.parity(i) != self.parity(j) && !self.form[i][j].is_zero() {
                    failures.push(format!("form not even at ({i},{j})"));
                }
                let sym = if sgn(i, j) { -self.form[j][i].clone() } else { self.form[j][i].clone() };
                if self.form[i][j] != sym {
                    failures.push(format!("form not super-symmetric at ({i},{j})"));
                }
                let fij = dense(i, j);
                let fji = dense(j, i);
                for k in 0..n {
                    let other = if sgn(i, j) { fji[k].clone() } else { -fji[k].clone() };
                    if fij[k] != other {
                        failures.push(format!("skew-symmetry fails at ({i},{j},{k})"));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.basis_vector_bracket(x, y);
                for z in 0..n {
                    // [x,[y,z]] = [[x,y],z] + (-1)^{xy} [y,[x,z]]
                    let yz = self.basis_vector_bracket(y, z);
                    let xz = self.basis_vector_bracket(x, z);
                    let lhs = self.bracket_coeffs_left(x, &yz);
                    let mut rhs = self.bracket_coeffs_right(&xy, z);
                    let t = self.bracket_coeffs_left(y, &xz);
                    for k in 0..n {
                        if sgn(x, y) {
                            rhs[k] -= &t[k];
                        } else {
                            rhs[k] += &t[k];
                        }
                    }
                    if lhs != rhs {
                        failures.push(format!("Jacobi fails at ({x},{y},{z})"));
                    }
                    // ([x,y],z) = (x,[y,z])
                    let l: Q = (0..n).map(|k| &xy[k] * &self.form[k][z]).sum();
                    let r: Q = (0..n).map(|k| &self.form[x][k] * &yz[k]).sum();
                    if l != r {
                        failures.push(format!("invariance fails at ({x},{y},{z})"));
                    }
                }
            }
        }
        failures
    }

    fn basis_vector_bracket(&self, i: usize, j: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        for (k, f) in &self.structure[i][j] {
            v[*k] = f.clone();
        }
        v
    }

    fn bracket_coeffs_left(&self, i: usize, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (j, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, f) in &self.structure[i][j] {
                out[*k] += c * f;
            }
        }
        out
    }

    fn bracket_coeffs_right(&self, v: &[Q], j: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, f) in &self.structure[i][j] {
                out[*k] += c * f;
            }
        }
        out
    }

    /// Coordinates of a supermatrix lying in the span of the basis.
    pub fn coordinates(&self, m: &Mat) -> Result<Vec<Q>> {
        let coords: Vec<Q> = self.coord_pos.iter().map(|&(r, s)| m[r][s].clone()).collect();
        let d = self.module_parity.len();
        let mut back = zero_mat(d);
        for (c, x) in coords.iter().zip(&self.matrices) {
            if c.is_zero() {
                continue;
            }
            for r in 0..d {
                for s in 0..d {
                    if !x[r][s].is_zero() {
                        back[r][s] += c * &x[r][s];
                    }
                }
            }
        }
        if &back != m {
            return Err(Error::Inconsistent(format!("matrix not in `{}`", self.name)));
        }
        Ok(coords)
    }

    pub fn structure_table(&self) -> StructureTable {
        let mut structure = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for (k, f) in &self.structure[i][j] {
                    structure.push((i, j, *k, fmt_q(f)));
                }
            }
        }
        let mut form = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.form[i][j].is_zero() {
                    form.push((i, j, fmt_q(&self.form[i][j])));
                }
            }
        }
        StructureTable {
            schema: crate::SCHEMA,
            name: self.name.clone(),
            dim_even: self.dim_even,
            dim_odd: self.dim_odd,
            basis: self.basis.clone(),
            structure,
            form,
            h_dual: fmt_q(&self.h_dual),
        }
    }
}

/// JSON export of structure constants as sparse `(i, j, k, "p/q")` triples.
#[derive(Clone, Debug, Serialize)]
pub struct StructureTable {
    pub schema: &'static str,
    pub name: String,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub basis: Vec<BasisElement>,
    pub structure: Vec<(usize, usize, usize, String)>,
    pub form: Vec<(usize, usize, String)>,
    pub h_dual: String,
}

fn supercommutator(a: &Mat, pa: Parity, b: &Mat, pb: Parity) -> Mat {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    let neg = pa.swap_negates(pb);
    ab.into_iter()
        .zip(ba)
        .map(|(r1, r2)| r1.into_iter().zip(r2).map(|(x, y)| if neg { x + y } else { x - y }).collect())
        .collect()
}

/// Solves the defining conditions on the parity-`p` matrix units. Returns
/// basis matrices and the position of each one's free entry.
fn solve_part(module_parity: &[Parity], part: Parity, cond: &Condition) -> Vec<(Mat, (usize, usize))> {
    let d = module_parity.len();
    // variables in reverse row-major order so free entries come first
    let mut vars: Vec<(usize, usize)> = Vec::new();
    for r in 0..d {
        for s in 0..d {
            if module_parity[r] + module_parity[s] == part {
                vars.push((r, s));
            }
        }
    }
    vars.reverse();
    let nv = vars.len();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    match cond {
        Condition::None => {}
        Condition::Supertrace => {
            let row: Vec<Q> = vars
                .iter()
                .map(|&(r, s)| {
                    if r != s {
                        Q::zero()
                    } else if module_parity[r].is_odd() {
                        q(-1)
                    } else {
                        q(1)
                    }
                })
                .collect();
            rows.push(row);
        }
        Condition::Preserves(omega) => {
            // omega(X u_a, u_b) + (-1)^{|X||a|} omega(u_a, X u_b) = 0
            for a in 0..d {
                for b in 0..d {
                    let sign_a = if part.swap_negates(module_parity[a]) { q(-1) } else { q(1) };
                    let row: Vec<Q> = vars
                        .iter()
                        .map(|&(r, s)| {
                            let mut c = Q::zero();
                            // X_{ra} omega_{rb}
                            if s == a {
                                c += &omega[r][b];
                            }
                            // omega_{ar} X_{rb}
                            if s == b {
                                c += &sign_a * &omega[a][r];
                            }
                            c
                        })
                        .collect();
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let mut out: Vec<(Mat, (usize, usize))> = nullspace_with_free(&rows, nv)
        .into_iter()
        .map(|(free, v)| {
            let mut m = zero_mat(d);
            for (idx, x) in v.into_iter().enumerate() {
                if !x.is_zero() {
                    let (r, s) = vars[idx];
                    m[r][s] = x;
                }
            }
            (m, vars[free])
        })
        .collect();
    out.sort_by_key(|(_, pos)| *pos);
    out
}

/// Builds one of the supported families.
///
/// Parameters: `gl [n]`, `sl [n]`, `so [m]`, `sp [n]` (giving `sp_2n`),
/// `sl_super [r, m]` (giving `sl(r|m)`), `osp [m, n]` (giving `osp(m|2n)`).
pub fn build_algebra(family: &str, params: &[i64]) -> Result<LieSuperAlgebra> {
    let fam = Family::parse(family)?;
    let need = match fam {
        Family::SlSuper | Family::Osp => 2,
        _ => 1,
    };
    if params.len() != need {
        return Err(Error::InvalidParameter(format!("`{family}` takes {need} parameter(s), got {}", params.len())));
    }
    if let Some(p) = params.iter().find(|&&p| p < 0) {
        return Err(Error::InvalidParameter(format!("negative parameter {p} for `{family}`")));
    }
    let p: Vec<usize> = params.iter().map(|&x| x as usize).collect();
    let (name, module_parity, cond, scale, h_dual) = match fam {
        Family::Gl | Family::Sl | Family::Sp => {
            if p[0] == 0 {
                return Err(Error::InvalidParameter(format!("`{family}` needs a positive rank")));
            }
            let n = p[0];
            match fam {
                Family::Gl => (format!("gl_{n}"), vec![Parity::Even; n], Condition::None, q(1), q(n as i64)),
                Family::Sl => (format!("sl_{n}"), vec![Parity::Even; n], Condition::Supertrace, q(1), q(n as i64)),
                _ => (
                    format!("sp_{}", 2 * n),
                    vec![Parity::Even; 2 * n],
                    Condition::Preserves(symplectic_form(n)),
                    q(1),
                    q(n as i64 + 1),
                ),
            }
        }
        Family::So => {
            let m = p[0];
            let mut id = zero_mat(m);
            for (i, row) in id.iter_mut().enumerate() {
                row[i] = q(1);
            }
            (format!("so_{m}"), vec![Parity::Even; m], Condition::Preserves(id), qr(1, 2), q(m as i64 - 2))
        }
        Family::SlSuper => {
            let (r, m) = (p[0], p[1]);
            if r + m == 0 {
                return Err(Error::InvalidParameter("sl(0|0) is empty".into()));
            }
            let mut par = vec![Parity::Even; r];
            par.extend(vec![Parity::Odd; m]);
            (format!("sl({r}|{m})"), par, Condition::Supertrace, q(1), q(r as i64 - m as i64))
        }
        Family::Osp => {
            let (m, n) = (p[0], p[1]);
            if m + n == 0 {
                return Err(Error::InvalidParameter("osp(0|0) is empty".into()));
            }
            let mut par = vec![Parity::Even; m];
            par.extend(vec![Parity::Odd; 2 * n]);
            (
                format!("osp({m}|{})", 2 * n),
                par,
                Condition::Preserves(orthosymplectic_form(m, n)),
                q(-1),
                qr(2 * n as i64 + 2 - m as i64, 2),
            )
        }
    };
    let even = solve_part(&module_parity, Parity::Even, &cond);
    let odd = solve_part(&module_parity, Parity::Odd, &cond);
    let dim_even = even.len();
    let dim_odd = odd.len();
    let mut basis = Vec::new();
    let mut matrices = Vec::new();
    let mut coord_pos = Vec::new();
    for (parity, part) in [(Parity::Even, even), (Parity::Odd, odd)] {
        for (m, (r, s)) in part {
            basis.push(BasisElement { index: basis.len(), parity, label: format!("E[{},{}]", r + 1, s + 1) });
            matrices.push(m);
            coord_pos.push((r, s));
        }
    }
    let mut alg = LieSuperAlgebra {
        name,
        family: fam,
        dim_even,
        dim_odd,
        basis,
        structure: Vec::new(),
        form: Vec::new(),
        h_dual,
        module_parity,
        matrices,
        coord_pos,
    };
    let n = alg.dim();
    let mut structure = vec![vec![Vec::new(); n]; n];
    let mut form = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let (pi, pj) = (alg.parity(i), alg.parity(j));
            let c = supercommutator(&alg.matrices[i], pi, &alg.matrices[j], pj);
            let coords = alg.coordinates(&c)?;
            structure[i][j] = coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            let prod = mat_mul(&alg.matrices[i], &alg.matrices[j]);
            form[i][j] = &scale * supertrace(&prod, &alg.module_parity);
        }
    }
    alg.structure = structure;
    alg.form = form;
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_scalar(m: &Mat) -> Option<Q> {
        let n = m.len();
        if n == 0 {
            return None;
        }
        let c = m[0][0].clone();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { c.clone() } else { Q::zero() };
                if m[i][j] != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    fn all_algebras() -> Vec<LieSuperAlgebra> {
        let specs: Vec<(&str, Vec<i64>)> = vec![
            ("gl", vec![1]),
            ("gl", vec![2]),
            ("gl", vec![3]),
            ("sl", vec![2]),
            ("sl", vec![3]),
            ("so", vec![0]),
            ("so", vec![1]),
            ("so", vec![2]),
            ("so", vec![3]),
            ("so", vec![4]),
            ("so", vec![5]),
            ("sp", vec![1]),
            ("sp", vec![2]),
            ("sl_super", vec![2, 1]),
            ("sl_super", vec![1, 2]),
            ("sl_super", vec![3, 1]),
            ("osp", vec![1, 1]),
            ("osp", vec![2, 1]),
            ("osp", vec![1, 2]),
            ("osp", vec![3, 1]),
            ("osp", vec![0, 1]),
        ];
        specs.into_iter().map(|(f, p)| build_algebra(f, &p).unwrap()).collect()
    }

    #[test]
    fn dimensions() {
        let sp2 = build_algebra("sp", &[1]).unwrap();
        assert_eq!((sp2.dim_even, sp2.dim_odd), (3, 0));
        assert_eq!(sp2.h_dual, q(2));
        let osp12 = build_algebra("osp", &[1, 1]).unwrap();
        assert_eq!((osp12.dim_even, osp12.dim_odd), (3, 2));
        assert_eq!(osp12.sdim(), 1);
        assert_eq!(osp12.h_dual, qr(3, 2));
        assert_eq!(build_algebra("so", &[1]).unwrap().dim(), 0);
        assert_eq!(build_algebra("so", &[0]).unwrap().dim(), 0);
        for (m, n) in [(1usize, 1usize), (2, 1), (1, 2), (3, 1), (4, 2)] {
            let a = build_algebra("osp", &[m as i64, n as i64]).unwrap();
            assert_eq!(a.dim_even, m * (m - 1) / 2 + n * (2 * n + 1), "osp({m}|{})", 2 * n);
            assert_eq!(a.dim_odd, 2 * m * n);
        }
        let sl21 = build_algebra("sl_super", &[2, 1]).unwrap();
        assert_eq!((sl21.dim_even, sl21.dim_odd), (4, 4));
    }

    #[test]
    fn errors() {
        assert!(matches!(build_algebra("e8", &[]), Err(Error::UnknownFamily(_))));
        assert!(matches!(build_algebra("sp", &[-1]), Err(Error::InvalidParameter(_))));
        assert!(matches!(build_algebra("osp", &[1]), Err(Error::InvalidParameter(_))));
        let a = build_algebra("sp", &[1]).unwrap();
        let b = build_algebra("osp", &[1, 1]).unwrap();
        assert!(matches!(a.bracket(&a.basis_vector(0), &b.basis_vector(0)), Err(Error::AlgebraMismatch(..))));
    }

    #[test]
    fn sp2_bracket_matches_matrix_commutator() {
        let a = build_algebra("sp", &[1]).unwrap();
        // basis: h = E11 - E22, e = E12, f = E21
        let (h, e, f) = (a.basis_vector(0), a.basis_vector(1), a.basis_vector(2));
        assert_eq!(a.matrix_of(&h).unwrap(), vec![vec![q(1), q(0)], vec![q(0), q(-1)]]);
        let ef = a.bracket(&e, &f).unwrap();
        let oracle = {
            let me = a.matrix_of(&e).unwrap();
            let mf = a.matrix_of(&f).unwrap();
            let c = mat_mul(&me, &mf);
            let d = mat_mul(&mf, &me);
            c.into_iter().zip(d).map(|(x, y)| x.into_iter().zip(y).map(|(u, v)| u - v).collect()).collect::<Mat>()
        };
        assert_eq!(a.matrix_of(&ef).unwrap(), oracle);
        assert_eq!(ef, h);
        assert_eq!(a.form(&h, &h).unwrap(), q(2));
        for i in 0..3 {
            let x = a.basis_vector(i);
            assert!(a.bracket(&x, &x).unwrap().coeffs.iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn osp12_odd_self_bracket_nonzero() {
        let a = build_algebra("osp", &[1, 1]).unwrap();
        for i in 3..5 {
            let v = a.basis_vector(i);
            assert_eq!(v.parity, Some(Parity::Odd));
            let vv = a.bracket(&v, &v).unwrap();
            assert!(vv.coeffs.iter().any(|c| !c.is_zero()));
            assert_eq!(vv.parity, Some(Parity::Even));
            // matrix oracle: [v, v] = 2 v^2
            let m = a.matrix_of(&v).unwrap();
            let sq = mat_mul(&m, &m);
            let twice: Mat = sq.into_iter().map(|r| r.into_iter().map(|x| x * q(2)).collect()).collect();
            assert_eq!(a.matrix_of(&vv).unwrap(), twice);
        }
    }

    #[test]
    fn osp_form_restricts_to_sp_and_so_blocks() {
        for (m, n) in [(1i64, 1i64), (2, 1), (3, 1), (1, 2)] {
            let osp = build_algebra("osp", &[m, n]).unwrap();
            let sp = build_algebra("sp", &[n]).unwrap();
            let so = build_algebra("so", &[m]).unwrap();
            let mu = m as usize;
            let embed = |mat: &Mat, off: usize| {
                let d = osp.module_parity.len();
                let mut big = zero_mat(d);
                for (r, row) in mat.iter().enumerate() {
                    for (s, x) in row.iter().enumerate() {
                        big[r + off][s + off] = x.clone();
                    }
                }
                big
            };
            for i in 0..sp.dim() {
                for j in 0..sp.dim() {
                    let x = osp.vector(osp.coordinates(&embed(&sp.matrices[i], mu)).unwrap()).unwrap();
                    let y = osp.vector(osp.coordinates(&embed(&sp.matrices[j], mu)).unwrap()).unwrap();
                    assert_eq!(osp.form(&x, &y).unwrap(), sp.form[i][j]);
                }
            }
            for i in 0..so.dim() {
                for j in 0..so.dim() {
                    let x = osp.vector(osp.coordinates(&embed(&so.matrices[i], 0)).unwrap()).unwrap();
                    let y = osp.vector(osp.coordinates(&embed(&so.matrices[j], 0)).unwrap()).unwrap();
                    assert_eq!(osp.form(&x, &y).unwrap(), q(-2) * &so.form[i][j]);
                }
            }
        }
    }

    #[test]
    fn structural_identities_hold_exhaustively() {
        for a in all_algebras() {
            let f = a.structural_failures();
            assert!(f.is_empty(), "{}: {:?}", a.name, &f[..f.len().min(5)]);
        }
    }

    #[test]
    fn dual_basis_pairs_to_identity() {
        for a in all_algebras() {
            if a.family == Family::Gl || a.dim() == 0 || a.name == "so_2" {
                continue;
            }
            let dual = a.dual_basis().unwrap();
            for i in 0..a.dim() {
                for (j, d) in dual.iter().enumerate() {
                    let want = if i == j { q(1) } else { q(0) };
                    assert_eq!(a.form(&a.basis_vector(i), d).unwrap(), want);
                }
            }
        }
        let gl = build_algebra("gl", &[3]).unwrap();
        assert!(gl.dual_basis().is_ok());
    }

    #[test]
    fn casimir_eigenvalue_is_twice_dual_coxeter() {
        for a in all_algebras() {
            let simple = matches!(a.family, Family::Sl | Family::Sp | Family::Osp)
                || (a.family == Family::So && a.dim() > 1)
                || (a.family == Family::SlSuper);
            if !simple {
                continue;
            }
            let c = a.adjoint_casimir().unwrap();
            assert_eq!(is_scalar(&c), Some(q(2) * &a.h_dual), "{}", a.name);
        }
    }

    #[test]
    fn sp2_dual_coxeter_by_casimir_brute_force() {
        let a = build_algebra("sp", &[1]).unwrap();
        let c = a.adjoint_casimir().unwrap();
        assert_eq!(is_scalar(&c), Some(q(4)));
    }
}
