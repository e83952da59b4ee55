//! Derivatives of polynomial maps against hand-computed values.

use difcat::cdc::{is_d_linear, is_k_linear, nth_derivative, partial_derivative, CartesianDifferentialCategory};
use difcat::poly::{parse_poly_map, PolyCat, PolyMap};
use difcat::{Error, Int, Nat, Rat, Zm};

fn render<R: difcat::Rig>(f: &PolyMap<R>, a: usize) -> String {
    f.render(&|j| {
        let i = j % a + 1;
        match j / a {
            0 => format!("x{i}"),
            1 => format!("v{i}"),
            _ => format!("w{i}"),
        }
    })
}

#[test]
fn derivative_of_square() {
    let f = parse_poly_map::<Int>("[x1^2]", 1).unwrap();
    let df = PolyCat::default().derivative(&f).unwrap();
    assert_eq!(render(&df, 1), "[2*x1*v1]");
}

#[test]
fn second_derivative_of_cube() {
    let f = parse_poly_map::<Int>("[x1^3]", 1).unwrap();
    assert_eq!(render(&nth_derivative(&PolyCat::default(), &f, 2).unwrap(), 1), "[6*x1*v1*w1]");
}

#[test]
fn product_rule_in_two_variables() {
    let f = parse_poly_map::<Rat>("[x1*x2]", 2).unwrap();
    let df = PolyCat::default().derivative(&f).unwrap();
    assert_eq!(df, parse_poly_map::<Rat>("[x2*x3 + x1*x4]", 4).unwrap());
}

#[test]
fn partial_derivative_fixes_other_variables() {
    let f = parse_poly_map::<Int>("[x1^2*x2 + x2^3]", 2).unwrap();
    let d2 = partial_derivative(&PolyCat::default(), &f, &[1, 1], 2).unwrap();
    assert_eq!(d2, parse_poly_map::<Int>("[x1^2*x3 + 3*x2^2*x3]", 3).unwrap());
}

#[test]
fn derivative_of_frobenius_power_vanishes() {
    let f = parse_poly_map::<Zm<5>>("[x1^5]", 1).unwrap();
    let df = PolyCat::default().derivative(&f).unwrap();
    assert!(df.is_zero());
}

#[test]
fn naturals_reject_subtraction() {
    assert!(matches!(parse_poly_map::<Nat>("[x1 - 1]", 1), Err(Error::NegationUnsupported(_))));
}

#[test]
fn frobenius_power_is_k_linear_but_not_d_linear() {
    let cat = PolyCat::<Zm<5>>::default();
    let f = parse_poly_map::<Zm<5>>("[x1^5]", 1).unwrap();
    assert!(is_k_linear(&cat, &f).unwrap().is_none());
    assert!(is_d_linear(&cat, &f).unwrap().is_some());
}
