//! Faà di Bruno maps over polynomials form a cartesian differential category
//! whose coalgebras embed `Poly` faithfully.

use difcat::cdc::{check_axioms, nth_derivative, CartesianDifferentialCategory, LeftLinearCategory, Sampler};
use difcat::faa::{Faa, FaaMap};
use difcat::poly::{PolyCat, PolyMap, PolySampler};
use difcat::Int;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type FaaPoly = Faa<PolyCat<Int>>;

const SMALL: PolySampler = PolySampler { max_arity: 2, max_degree: 2, max_terms: 2 };

/// Sums of two coalgebras: valid Faà maps that are not coalgebras in general.
struct FamilySampler;

impl Sampler<FaaPoly> for FamilySampler {
    fn object(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(1..=2)
    }

    fn morphism(&self, rng: &mut ChaCha8Rng, dom: usize, cod: usize) -> FaaMap<PolyMap<Int>> {
        let faa = Faa::new(PolyCat::<Int>::default());
        let f = faa.coalgebra(&SMALL.map(rng, dom, cod), 8).unwrap();
        let g = faa.coalgebra(&SMALL.map(rng, dom, cod), 8).unwrap();
        faa.add(&f, &g).unwrap()
    }
}

#[test]
fn faa_of_poly_satisfies_the_axioms() {
    let faa = Faa::new(PolyCat::<Int>::default());
    let report = check_axioms(&faa, &FamilySampler, 12, 11);
    assert!(report.passed, "{report}");
}

fn poly_map(dom: usize, cod: usize) -> impl Strategy<Value = PolyMap<Int>> {
    any::<u64>().prop_map(move |s| {
        let mut rng = difcat::cdc::axioms::case_rng(s, 0, 0);
        SMALL.map(&mut rng, dom, cod)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn composition_is_associative(h in poly_map(2, 1), g in poly_map(2, 2), f in poly_map(1, 2)) {
        let faa = Faa::new(PolyCat::<Int>::default());
        let (cf, cg, ch) = (faa.coalgebra(&f, 8).unwrap(), faa.coalgebra(&g, 8).unwrap(), faa.coalgebra(&h, 8).unwrap());
        let s = faa.add(&cg, &faa.identity(2)).unwrap();
        let lhs = faa.compose(&ch, &faa.compose(&s, &cf).unwrap()).unwrap();
        let rhs = faa.compose(&faa.compose(&ch, &s).unwrap(), &cf).unwrap();
        prop_assert!(faa.equal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn identity_is_neutral(f in poly_map(2, 1)) {
        let faa = Faa::new(PolyCat::<Int>::default());
        let cf = faa.coalgebra(&f, 8).unwrap();
        prop_assert!(faa.equal(&faa.compose(&faa.identity(1), &cf).unwrap(), &cf).unwrap());
        prop_assert!(faa.equal(&faa.compose(&cf, &faa.identity(2)).unwrap(), &cf).unwrap());
    }

    #[test]
    fn composition_is_left_additive(g in poly_map(1, 1), h in poly_map(1, 1), f in poly_map(2, 1)) {
        let faa = Faa::new(PolyCat::<Int>::default());
        let c = |m: &PolyMap<Int>| faa.coalgebra(m, 8).unwrap();
        let lhs = faa.compose(&faa.add(&c(&g), &c(&h)).unwrap(), &c(&f)).unwrap();
        let rhs = faa.add(&faa.compose(&c(&g), &c(&f)).unwrap(), &faa.compose(&c(&h), &c(&f)).unwrap()).unwrap();
        prop_assert!(faa.equal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn coalgebra_components_are_higher_derivatives(f in poly_map(2, 2)) {
        let faa = Faa::new(PolyCat::<Int>::default());
        let cf = faa.coalgebra(&f, 8).unwrap();
        for (n, comp) in cf.family.iter().enumerate() {
            prop_assert_eq!(comp, &nth_derivative(&faa.base, &f, n).unwrap());
        }
        prop_assert_eq!(faa.counit(&cf), f);
    }

    #[test]
    fn coalgebras_commute_with_differentiation(f in poly_map(2, 1)) {
        let faa = Faa::new(PolyCat::<Int>::default());
        let lhs = faa.derivative(&faa.coalgebra(&f, 8).unwrap()).unwrap();
        let rhs = faa.coalgebra(&faa.base.derivative(&f).unwrap(), 8).unwrap();
        prop_assert!(faa.equal(&lhs, &rhs).unwrap());
    }
}
