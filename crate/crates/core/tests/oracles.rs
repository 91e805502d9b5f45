use bkernel::kernel::{eval_kernel, general_kernel};
use bkernel::oracle::{
    membership, sample_points, series_kernel, transported_kernel, verify, DomainSpec, OracleKind,
    DEFAULT_TRUNC_CAP,
};
use bkernel::IntMatrix2;
use num_complex::Complex64;
use proptest::prelude::*;

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn oracles_agree_with_each_other() {
    for r in [[[4, -1], [-1, 3]], [[5, -2], [-1, 1]], [[2, -3], [-1, 5]]] {
        let spec = DomainSpec::new(&IntMatrix2::from_rows(r)).unwrap();
        for (z, w) in sample_points(&spec, 10, 99).unwrap() {
            let (s, _) = series_kernel(&spec, z, w, 1e-8, DEFAULT_TRUNC_CAP).unwrap();
            let b = transported_kernel(&spec, z, w).unwrap();
            assert!(rel(s, b) < 1e-7, "{r:?}");
        }
    }
}

#[test]
fn scaled_and_swapped_rows_give_the_same_kernel() {
    let base = general_kernel(&IntMatrix2::new(4, -1, -1, 3)).unwrap();
    for b in [
        IntMatrix2::new(8, -2, -1, 3),
        IntMatrix2::new(-1, 3, 4, -1),
        IntMatrix2::new(-3, 9, 12, -3),
    ] {
        let f = general_kernel(&b).unwrap();
        assert_eq!(f.numerator, base.numerator);
        assert_eq!(f.det_a, base.det_a);
    }
}

#[test]
fn verify_reports_in_order() {
    let spec = DomainSpec::new(&IntMatrix2::new(3, -2, -1, 2)).unwrap();
    let a = verify(&spec, OracleKind::Series, 8, 1e-6, 5, DEFAULT_TRUNC_CAP).unwrap();
    let b = verify(&spec, OracleKind::Series, 8, 1e-6, 5, DEFAULT_TRUNC_CAP).unwrap();
    assert_eq!(a, b);
    let pts = sample_points(&spec, 8, 5).unwrap();
    for (e, (z, w)) in a.entries.iter().zip(pts) {
        assert_eq!((e.z, e.w), (z, w));
    }
    assert!(a.passed);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_is_hermitian(seed in 0u64..10_000) {
        let spec = DomainSpec::new(&IntMatrix2::new(2, -1, -1, 2)).unwrap();
        let (z, w) = sample_points(&spec, 1, seed).unwrap()[0];
        prop_assert!(membership(&spec, z) && membership(&spec, w));
        let (a, _) = series_kernel(&spec, z, w, 1e-9, DEFAULT_TRUNC_CAP).unwrap();
        let (b, _) = series_kernel(&spec, w, z, 1e-9, DEFAULT_TRUNC_CAP).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-12 * a.norm());
    }

    #[test]
    fn closed_form_matches_bell_on_random_domains(
        c in proptest::array::uniform4(0i64..6), seed in 0u64..1000,
    ) {
        let cm = IntMatrix2::new(c[0], c[1], c[2], c[3]);
        prop_assume!(c[0] * c[3] - c[1] * c[2] > 0);
        let b = bkernel::intmat::adjugate(&cm);
        let spec = DomainSpec::new(&b).unwrap();
        let f = general_kernel(&b).unwrap();
        prop_assume!(f.det_a <= 20);
        for (z, w) in sample_points(&spec, 3, seed).unwrap() {
            let closed = eval_kernel(&f, z, w).unwrap();
            let bell = transported_kernel(&spec, z, w).unwrap();
            prop_assert!(rel(bell, closed) < 1e-8, "{} at {:?}, {:?}", b, z, w);
        }
    }
}
