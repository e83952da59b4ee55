//! `Poly_k` as a cartesian differential category, with a seeded sampler.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::polynomial::{PolyMap, Polynomial};
use crate::algebra::{Rig, RigSpec, RigValue};
use crate::cdc::{CartesianDifferentialCategory, LeftLinearCategory, Sampler};
use crate::error::{Error, Result};

/// Deliberate defect in `D`, used to show the axiom suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyFault {
    /// `D` ignores monomials of total degree 3 or more.
    DropCubicGradient,
}

#[derive(Debug, Clone, Copy)]
pub struct PolyCat<R> {
    pub fault: Option<PolyFault>,
    _rig: std::marker::PhantomData<R>,
}

impl<R> Default for PolyCat<R> {
    fn default() -> Self {
        PolyCat { fault: None, _rig: std::marker::PhantomData }
    }
}

impl<R> PolyCat<R> {
    pub fn with_fault(fault: Option<PolyFault>) -> Self {
        PolyCat { fault, _rig: std::marker::PhantomData }
    }
}

impl<R: Rig> LeftLinearCategory for PolyCat<R> {
    type Scalar = R;
    type Mor = PolyMap<R>;

    fn dom(&self, f: &PolyMap<R>) -> usize {
        f.dom
    }
    fn cod(&self, f: &PolyMap<R>) -> usize {
        f.cod()
    }
    fn identity(&self, a: usize) -> PolyMap<R> {
        PolyMap::identity(a)
    }
    fn compose(&self, g: &PolyMap<R>, f: &PolyMap<R>) -> Result<PolyMap<R>> {
        g.substitute(f)
    }
    fn tuple(&self, dom: usize, parts: &[PolyMap<R>]) -> Result<PolyMap<R>> {
        if parts.iter().any(|p| p.dom != dom) {
            return Err(Error::ArityError(format!("tuple components must have arity {dom}")));
        }
        PolyMap::new(dom, parts.iter().flat_map(|p| p.comps.iter().cloned()).collect())
    }
    fn linear(&self, dom: usize, rows: &[Vec<R>]) -> Result<PolyMap<R>> {
        let comps = rows
            .iter()
            .map(|row| {
                if row.len() != dom {
                    return Err(Error::ArityError(format!("row of length {} for arity {dom}", row.len())));
                }
                let mut p = Polynomial::zero(dom);
                for (j, c) in row.iter().enumerate() {
                    let mut e = vec![0; dom];
                    e[j] = 1;
                    p.add_term(e, c.clone());
                }
                Ok(p)
            })
            .collect::<Result<_>>()?;
        PolyMap::new(dom, comps)
    }
    fn zero(&self, dom: usize, cod: usize) -> PolyMap<R> {
        PolyMap::zero(dom, cod)
    }
    fn add(&self, f: &PolyMap<R>, g: &PolyMap<R>) -> Result<PolyMap<R>> {
        f.plus(g)
    }
    fn scale(&self, c: &R, f: &PolyMap<R>) -> PolyMap<R> {
        f.scaled(c)
    }
    fn equal(&self, f: &PolyMap<R>, g: &PolyMap<R>) -> Result<bool> {
        crate::cdc::same_type(self, f, g)?;
        Ok(f == g)
    }

    /// Syntactic test: every monomial has degree exactly 1 in each of the
    /// last `n` blocks, and swapping adjacent blocks fixes `f`.
    fn is_symmetric_multilinear(&self, f: &PolyMap<R>, a: usize, n: usize) -> Result<bool> {
        if f.dom != a * (n + 1) {
            return Err(Error::ArityError(format!("expected arity {}, got {}", a * (n + 1), f.dom)));
        }
        let linear = f.comps.iter().all(|p| {
            p.terms.keys().all(|e| (1..=n).all(|b| e[b * a..(b + 1) * a].iter().sum::<u32>() == 1))
        });
        if !linear {
            return Ok(false);
        }
        for i in 1..n {
            let mut map: Vec<usize> = (0..f.dom).collect();
            for j in 0..a {
                map.swap(i * a + j, (i + 1) * a + j);
            }
            let swapped: Vec<Polynomial<R>> = f.comps.iter().map(|p| p.reindex(f.dom, &map)).collect();
            if swapped != f.comps {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<R: Rig> CartesianDifferentialCategory for PolyCat<R> {
    fn derivative(&self, f: &PolyMap<R>) -> Result<PolyMap<R>> {
        match self.fault {
            None => Ok(f.derivative()),
            Some(PolyFault::DropCubicGradient) => {
                let low: Vec<Polynomial<R>> = f
                    .comps
                    .iter()
                    .map(|p| {
                        let mut q = Polynomial::zero(p.arity);
                        for (e, c) in &p.terms {
                            if e.iter().sum::<u32>() < 3 {
                                q.add_term(e.clone(), c.clone());
                            }
                        }
                        q
                    })
                    .collect();
                Ok(PolyMap { dom: f.dom, comps: low }.derivative())
            }
        }
    }
}

/// A small random scalar of `R`: naturals in `0..=3`, integers in `-3..=3`,
/// rationals `p/q` with `|p| ≤ 3, 1 ≤ q ≤ 3`, residues uniformly.
pub fn random_scalar<R: Rig>(rng: &mut ChaCha8Rng) -> R {
    let v = match R::spec() {
        RigSpec::Nat => return R::from_u64(rng.gen_range(0..=3)),
        RigSpec::ZMod(m) => return R::from_u64(rng.gen_range(0..m)),
        RigSpec::Int => RigValue::Int(rng.gen_range(-3i64..=3).into()),
        RigSpec::Rat => RigValue::Rat(num_rational::BigRational::new(
            rng.gen_range(-3i64..=3).into(),
            rng.gen_range(1i64..=3).into(),
        )),
    };
    R::from_value(&v).expect("value of the right rig")
}

/// Random polynomial of total degree `≤ max_degree` with a few terms.
pub fn random_polynomial<R: Rig>(rng: &mut ChaCha8Rng, arity: usize, max_degree: u32, max_terms: usize) -> Polynomial<R> {
    let mut p = Polynomial::zero(arity);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let d = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; arity];
        if arity > 0 {
            for _ in 0..d {
                e[rng.gen_range(0..arity)] += 1;
            }
        }
        let mut c = random_scalar::<R>(rng);
        if c.is_zero() {
            c = R::one();
        }
        p.add_term(e, c);
    }
    p
}

/// Seeded sampler of polynomial maps.
#[derive(Debug, Clone, Copy)]
pub struct PolySampler {
    pub max_arity: usize,
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for PolySampler {
    fn default() -> Self {
        PolySampler { max_arity: 3, max_degree: 3, max_terms: 4 }
    }
}

impl PolySampler {
    pub fn map<R: Rig>(&self, rng: &mut ChaCha8Rng, dom: usize, cod: usize) -> PolyMap<R> {
        let comps = (0..cod).map(|_| random_polynomial(rng, dom, self.max_degree, self.max_terms)).collect();
        PolyMap { dom, comps }
    }
}

impl<R: Rig> Sampler<PolyCat<R>> for PolySampler {
    fn object(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(1..=self.max_arity)
    }
    fn morphism(&self, rng: &mut ChaCha8Rng, dom: usize, cod: usize) -> PolyMap<R> {
        self.map(rng, dom, cod)
    }
    fn scalar(&self, rng: &mut ChaCha8Rng) -> R {
        random_scalar(rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Natural, Zm};
    use crate::cdc::{check_axioms, is_d_linear, is_k_linear, multilinear_witness, nth_derivative};
    use crate::poly::parse_poly_map;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn p(src: &str, arity: usize) -> PolyMap<BigInt> {
        parse_poly_map(src, arity).unwrap()
    }

    #[test]
    fn axioms_hold_in_every_rig() {
        assert!(check_axioms(&PolyCat::<BigInt>::default(), &PolySampler::default(), 20, 1).passed);
        assert!(check_axioms(&PolyCat::<Natural>::default(), &PolySampler::default(), 20, 2).passed);
        assert!(check_axioms(&PolyCat::<BigRational>::default(), &PolySampler::default(), 20, 3).passed);
        assert!(check_axioms(&PolyCat::<Zm<5>>::default(), &PolySampler::default(), 20, 4).passed);
    }

    #[test]
    fn sabotaged_derivative_breaks_the_chain_rule() {
        let cat = PolyCat::<BigInt>::with_fault(Some(PolyFault::DropCubicGradient));
        let r = check_axioms(&cat, &PolySampler::default(), 60, 5);
        let chain = r.checks.iter().find(|c| c.name.contains("chain rule")).unwrap();
        assert!(!chain.passed);
        assert!(chain.counterexample.is_some());
    }

    #[test]
    fn linearity_tests() {
        let cat = PolyCat::<BigInt>::default();
        let pi0 = p("[x1]", 2);
        assert!(is_k_linear(&cat, &pi0).unwrap().is_none());
        assert!(is_k_linear(&cat, &p("[x1^2]", 1)).unwrap().is_some());
        assert!(is_k_linear(&cat, &PolyMap::zero(1, 1)).unwrap().is_none());
        assert!(is_d_linear(&cat, &PolyMap::identity(2)).unwrap().is_none());
        assert!(is_d_linear(&cat, &p("[3*x1]", 1)).unwrap().is_none());
        assert!(is_d_linear(&cat, &p("[x1^2]", 1)).unwrap().is_some());
    }

    #[test]
    fn syntactic_and_generic_multilinearity_agree() {
        let cat = PolyCat::<BigInt>::default();
        let f = p("[x1^3]", 1);
        for n in 0..=3 {
            let d = nth_derivative(&cat, &f, n).unwrap();
            assert!(cat.is_symmetric_multilinear(&d, 1, n).unwrap());
            assert!(multilinear_witness(&cat, &d, 1, n).unwrap().is_none());
        }
        let bad = p("[x2^2*x3]", 3);
        assert!(!cat.is_symmetric_multilinear(&bad, 1, 2).unwrap());
        assert!(multilinear_witness(&cat, &bad, 1, 2).unwrap().is_some());
        let asym = p("[x1*x2*x3 + x2]", 3);
        assert!(!cat.is_symmetric_multilinear(&asym, 1, 2).unwrap());
    }
}
