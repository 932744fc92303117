use vsa_core::affine::{build_realization, RealizationFamily};
use vsa_core::arcjet::{certify_classical_freeness, free_diff_dims, jet_invariant_dims, quotient_dims, CertifyOptions, DiffPresentation, IMAGE_ALGEBRA_LABEL};
use vsa_core::fockspan::{c2_presentation, subalgebra_graded_dims, Caps};
use vsa_core::Weight;

#[test]
fn zhu_presentation_feeds_arc_quotient() {
    let w = Weight::integer(3);
    let pair = build_realization(RealizationFamily::S2, 1, 1, 1).unwrap();
    let space = subalgebra_graded_dims(&pair.coset.currents, w, &Caps::default()).unwrap();
    let pres = c2_presentation(&space, &pair.coset.currents, &pair.coset.current_labels(), 3).unwrap();
    let diff = DiffPresentation::from_c2(&pres).unwrap();
    let arc = quotient_dims(&diff, w, &Caps::default()).unwrap();
    let free = free_diff_dims(&diff.generators, w).unwrap();
    for (a, f) in arc.dims.iter().zip(&free.dims) {
        assert!(a.dim <= f.dim);
    }
    assert_eq!(arc.values(), vec![1, 5, 9, 21]);
    assert_eq!(arc.presentation_hash.as_deref(), Some(diff.hash().as_str()));
}

#[test]
fn outside_corollary_hypothesis_is_labelled() {
    let w = Weight::integer(1);
    let c = certify_classical_freeness(1, 8, 1, w, &CertifyOptions::for_weight(w)).unwrap();
    assert!(!c.simplicity_asserted);
    assert_eq!(c.label.as_deref(), Some(IMAGE_ALGEBRA_LABEL));
    // weight one of the coset algebra is osp(8|2): 28 + 3 + 16
    assert_eq!(c.dims_v.iter().find(|d| d.weight == Weight::integer(1)).unwrap().dim, 47);
}

#[test]
fn jet_invariants_match_subalgebra_for_osp22() {
    let w = Weight::integer(2);
    let pair = build_realization(RealizationFamily::S2, 1, 2, 1).unwrap();
    let v = subalgebra_graded_dims(&pair.coset.currents, w, &Caps::default()).unwrap();
    let v: Vec<usize> = v.dims().iter().filter(|d| d.weight.is_integral()).map(|d| d.dim).collect();
    assert_eq!(jet_invariant_dims(1, 2, 1, w, &Caps::default()).unwrap().values(), v);
}

#[test]
fn caps_are_hard_errors() {
    let caps = Caps { max_per_weight: 10, max_weight: Weight::integer(8) };
    assert!(jet_invariant_dims(1, 1, 1, Weight::integer(2), &caps).is_err());
    let caps = Caps { max_per_weight: 1_000_000, max_weight: Weight::integer(1) };
    assert!(certify_classical_freeness(1, 1, 1, Weight::integer(2), &CertifyOptions { caps, ..CertifyOptions::for_weight(Weight::integer(2)) }).is_err());
}
