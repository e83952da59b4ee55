//! The embedding of `Mat(ℤ/3)` into differential presheaves, at dimension 1.

use difcat::dpsh::{self, yoneda, PresheafConfig};
use difcat::Z3;

#[test]
fn full_fidelity_over_z3() {
    let cfg = yoneda::FidelityConfig { probe_dim: 1, ..Default::default() };
    let r = yoneda::full_fidelity::<Z3>(1, 1, &cfg).unwrap();
    assert!(r.passed, "{r}");
    assert_eq!(r.config["hom_size"], "3");
    assert_eq!(r.config["faa_maps"], "3");
}

#[test]
fn constructed_presheaves_over_z3() {
    let cfg = PresheafConfig { max_stage: 1, probe_dim: 1 };
    let xs: Vec<dpsh::Presheaf<Z3>> = vec![
        dpsh::representable(1),
        dpsh::unit(),
        dpsh::tensor(dpsh::representable(1), dpsh::representable(1)),
        dpsh::presheaf_q(dpsh::representable(1), 2),
    ];
    for x in xs {
        let r = dpsh::check_presheaf(x.as_ref(), &cfg);
        assert!(r.passed, "{}: {r}", x.name());
    }
}

#[test]
fn reversed_representable_breaks_reindexing() {
    let cfg = PresheafConfig { max_stage: 2, probe_dim: 1 };
    let r = dpsh::check_presheaf(dpsh::sabotaged_representable::<Z3>(2).as_ref(), &cfg);
    assert!(!r.passed);
    assert!(r.failures().any(|c| c.name.starts_with("axiom iii")), "{r}");
}
