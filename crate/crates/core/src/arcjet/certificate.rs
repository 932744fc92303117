use std::collections::BTreeMap;

use serde::Serialize;

use crate::affine::{build_realization, RealizationFamily};
use crate::error::{Error, Result};
use crate::fockspan::{c2_presentation, subalgebra_graded_dims, Caps, WeightDim};
use crate::grading::Weight;

use super::diffalg::{quotient_dims, DiffPresentation, HilbertTable};

pub const IMAGE_ALGEBRA_LABEL: &str = "image algebra, simplicity not asserted";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    EqualThrough { weight: Weight },
    MismatchAt { weight: Weight, dim_arc: usize, dim_v: usize },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::EqualThrough { .. })
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::EqualThrough { weight } => write!(f, "equal-through-{weight}"),
            Verdict::MismatchAt { weight, dim_arc, dim_v } => write!(f, "mismatch-at({weight}, {dim_arc}, {dim_v})"),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CertifyOptions {
    pub dmax: usize,
    pub delta_max: Weight,
    /// Largest relation degree tried when a mismatch suggests an incomplete presentation.
    pub dmax_cap: usize,
    #[serde(skip)]
    pub caps: Caps,
}

impl CertifyOptions {
    /// `Dmax = Delta_max = N`, which suffices for exactness through `N`.
    pub fn for_weight(n: Weight) -> Self {
        let d = (n.0 / 2).max(1) as usize;
        Self { dmax: d, delta_max: n, dmax_cap: d, caps: Caps::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Attempt {
    pub dmax: usize,
    pub relations: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct Params {
    pub n: i64,
    pub m: i64,
    pub r: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessCertificate {
    pub tool_version: String,
    pub params: Params,
    pub max_weight: Weight,
    pub dims_v: Vec<WeightDim>,
    pub dims_arc: Vec<WeightDim>,
    pub verdict: Verdict,
    pub dmax: usize,
    pub delta_max: Weight,
    pub presentation_hash: String,
    pub presentation_status: String,
    pub attempts: Vec<Attempt>,
    pub simplicity_asserted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl FreenessCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Compares `dims_arc` with `dims_v` through `n`.  An arc dimension below the
/// vertex algebra dimension contradicts surjectivity and is an error.
pub fn compare_tables(dims_v: &[WeightDim], arc: &HilbertTable, n: Weight) -> Result<Verdict> {
    let v: BTreeMap<Weight, usize> = dims_v.iter().map(|d| (d.weight, d.dim)).collect();
    let mut first = None;
    for w in 0..=n.0 {
        let w = Weight(w);
        let dv = v.get(&w).copied().unwrap_or(0);
        let da = arc.dim(w);
        if da < dv {
            return Err(Error::Inconsistent(format!("arc dimension {da} below vertex algebra dimension {dv} at weight {w}")));
        }
        if da != dv && first.is_none() {
            first = Some(Verdict::MismatchAt { weight: w, dim_arc: da, dim_v: dv });
        }
    }
    Ok(first.unwrap_or(Verdict::EqualThrough { weight: n }))
}

/// Certifies that `R_V` of the `s2` coset algebra is classically free through
/// weight `n` by comparing the arc quotient with the subalgebra dimensions.
pub fn certify_classical_freeness(n: i64, m: i64, r: i64, max_weight: Weight, opts: &CertifyOptions) -> Result<FreenessCertificate> {
    if max_weight.0 < 0 || !max_weight.is_integral() {
        return Err(Error::InvalidParameter(format!("truncation weight must be a nonnegative integer, got {max_weight}")));
    }
    if opts.delta_max < max_weight {
        return Err(Error::InvalidParameter(format!("Delta_max {} below N {max_weight}", opts.delta_max)));
    }
    let pair = build_realization(RealizationFamily::S2, n, m, r)?;
    let gens = &pair.coset.currents;
    let labels = pair.coset.current_labels();
    let space = subalgebra_graded_dims(gens, opts.delta_max, &opts.caps)?;
    let dims_v: Vec<WeightDim> = space.dims().into_iter().filter(|d| d.weight <= max_weight && (d.weight.is_integral() || d.dim > 0)).collect();

    let mut attempts = Vec::new();
    let mut dmax = opts.dmax;
    loop {
        let pres = c2_presentation(&space, gens, &labels, dmax)?;
        let diff = DiffPresentation::from_c2(&pres)?;
        let arc = quotient_dims(&diff, max_weight, &opts.caps)?;
        let verdict = compare_tables(&dims_v, &arc, max_weight)?;
        attempts.push(Attempt { dmax, relations: diff.relations.len(), verdict: verdict.clone() });
        let retry = !verdict.is_equal() && dmax < opts.dmax_cap && (dmax as i64 + 1) * 2 <= opts.delta_max.0;
        if retry {
            dmax += 1;
            continue;
        }
        let status = match (&verdict, dmax as i64 * 2 >= max_weight.0) {
            (Verdict::EqualThrough { .. }, _) => "complete through N",
            (_, false) => "presentation possibly incomplete",
            (_, true) => "genuine mismatch",
        };
        let simplicity_asserted = pair.simplicity_asserted();
        return Ok(FreenessCertificate {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            params: Params { n, m, r },
            max_weight,
            dims_v,
            dims_arc: arc.dims.clone(),
            verdict,
            dmax,
            delta_max: opts.delta_max,
            presentation_hash: diff.hash(),
            presentation_status: status.to_string(),
            attempts,
            simplicity_asserted,
            label: (!simplicity_asserted).then(|| IMAGE_ALGEBRA_LABEL.to_string()),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcjet::diffalg::DiffGenerator;
    use crate::fockspan::SuperPoly;
    use crate::grading::Parity;
    use crate::rational::q;

    #[test]
    fn osp12_through_two() {
        let n = Weight::integer(2);
        let c = certify_classical_freeness(1, 1, 1, n, &CertifyOptions::for_weight(n)).unwrap();
        assert_eq!(c.verdict, Verdict::EqualThrough { weight: n });
        assert!(c.simplicity_asserted && c.label.is_none());
        assert_eq!(c.presentation_hash.len(), 64);
        let json: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(json["verdict"]["kind"], "equal-through");
    }

    #[test]
    fn low_dmax_is_retried() {
        let n = Weight::integer(2);
        let opts = CertifyOptions { dmax: 1, dmax_cap: 2, ..CertifyOptions::for_weight(n) };
        let c = certify_classical_freeness(1, 1, 1, n, &opts).unwrap();
        assert_eq!(c.attempts.len(), 2);
        assert!(!c.attempts[0].verdict.is_equal());
        assert!(c.verdict.is_equal());
        let opts = CertifyOptions { dmax: 1, dmax_cap: 1, ..CertifyOptions::for_weight(n) };
        let c = certify_classical_freeness(1, 1, 1, n, &opts).unwrap();
        assert_eq!(c.presentation_status, "presentation possibly incomplete");
    }

    #[test]
    fn surjectivity_violation_is_an_error() {
        let g = vec![DiffGenerator { label: "x".into(), parity: Parity::Even, weight: Weight::integer(1) }];
        let p = DiffPresentation::new(g, vec![SuperPoly { terms: [(vec![0], q(1))].into_iter().collect() }]).unwrap();
        let arc = quotient_dims(&p, Weight::integer(1), &Caps::default()).unwrap();
        let v = vec![WeightDim { weight: Weight(0), dim: 1 }, WeightDim { weight: Weight(2), dim: 1 }];
        assert!(matches!(compare_tables(&v, &arc, Weight::integer(1)), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn bad_arguments() {
        let n = Weight::integer(2);
        assert!(certify_classical_freeness(1, -1, 1, n, &CertifyOptions::for_weight(n)).is_err());
        let opts = CertifyOptions { delta_max: Weight::integer(1), ..CertifyOptions::for_weight(n) };
        assert!(certify_classical_freeness(1, 1, 1, n, &opts).is_err());
        assert!(certify_classical_freeness(1, 1, 1, Weight(3), &CertifyOptions::for_weight(Weight(4))).is_err());
    }
}
