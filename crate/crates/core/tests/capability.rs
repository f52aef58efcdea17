mod common;

use nilmult::capability::{capability, monomorphism_check, quotient_deficiency};
use nilmult::catalog::catalog;
use nilmult::linalg::SparseVec;
use nilmult::Error;

#[test]
fn capability_list() {
    for name in [
        "H(1)",
        "H(1)+A(1)",
        "H(1)+A(2)",
        "H(1)+A(3)",
        "L4_3",
        "L5_5",
        "L5_8",
    ] {
        assert!(
            capability(&catalog(name).unwrap()).unwrap().capable(),
            "{name}"
        );
    }
    for name in ["H(2)", "H(3)"] {
        let c = capability(&catalog(name).unwrap()).unwrap();
        assert!(!c.capable(), "{name}");
        assert!(c.witness().is_some());
    }
}

#[test]
fn monomorphism_agrees_with_epicenter() {
    for name in common::corpus() {
        let l = catalog(&name).unwrap();
        if l.dim() > 7 {
            continue;
        }
        let epicenter = capability(&l).unwrap().epicenter;
        let lines = l.center().intersect(&l.derived()).unwrap();
        assert!(!lines.is_zero());
        for b in lines.basis() {
            let m = monomorphism_check(&l, &b).unwrap();
            assert_eq!(
                m.injective,
                epicenter.contains(&b).unwrap(),
                "{name}, b = {b}"
            );
            assert!(m.dim_quotient_multiplier + m.kernel_dim >= m.dim_multiplier);
        }
    }
}

#[test]
fn monomorphism_examples() {
    let h2 = catalog("H(2)").unwrap();
    let m = monomorphism_check(&h2, &SparseVec::unit(4)).unwrap();
    assert!(m.injective);
    assert_eq!((m.dim_multiplier, m.dim_quotient_multiplier), (20, 20));

    let h1 = catalog("H(1)").unwrap();
    let m = monomorphism_check(&h1, &SparseVec::unit(2)).unwrap();
    assert!(!m.injective);
    assert_eq!((m.dim_multiplier, m.dim_quotient_multiplier), (5, 2));

    let l43 = catalog("L4_3").unwrap();
    assert!(
        !monomorphism_check(&l43, &SparseVec::unit(3))
            .unwrap()
            .injective
    );
}

#[test]
fn deficiency_is_nonnegative() {
    for name in common::corpus() {
        let l = catalog(&name).unwrap();
        if l.dim() > 7 {
            continue;
        }
        for b in l.center().intersect(&l.derived()).unwrap().basis() {
            assert!(quotient_deficiency(&l, &b).unwrap() >= 0, "{name}");
        }
    }
    assert_eq!(
        quotient_deficiency(&catalog("L4_3").unwrap(), &SparseVec::unit(3)).unwrap(),
        2
    );
}

#[test]
fn invalid_lines_are_rejected() {
    let l = catalog("H(1)+A(1)").unwrap();
    assert_eq!(
        quotient_deficiency(&l, &SparseVec::unit(3)).unwrap_err(),
        Error::NotInDerived
    );
    assert_eq!(
        monomorphism_check(&l, &SparseVec::unit(1)).unwrap_err(),
        Error::NotCentral
    );
    assert_eq!(
        monomorphism_check(&l, &SparseVec::new()).unwrap_err(),
        Error::NotOneDimensional(0)
    );
}
