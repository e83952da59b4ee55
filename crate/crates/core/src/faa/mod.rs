//! The Faa di Bruno construction: the cofree cartesian differential
//! category over a cartesian left-`k`-linear base.
//!
//! A map `A ⇝ B` is a finitely supported family `f^(n) : A × A^n → B`,
//! symmetric and `k`-linear in its last `n` arguments. Composition is the
//! higher-order chain rule summed over set partitions; the differential
//! interleaves points and directions slot by slot.

pub mod kleisli;

use crate::cdc::{blocks, nth_derivative, sum, CartesianDifferentialCategory, LeftLinearCategory};
use crate::combinat::{arrange, partial_isos, partitions};
use crate::error::{Error, Result};

/// Deliberate defects used to show the suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaaFault {
    /// Composition skips the one-block partition for `n >= 2`.
    DropPartitionTerm,
    /// The differential keeps only the `f^(n+1)` term.
    OmitDerivativeSum,
}

/// A family `f^(0), ..., f^(N)`; components past the end are zero, and
/// the last stored component is never zero.
#[derive(Clone, PartialEq, Eq)]
pub struct FaaMap<M> {
    pub dom: usize,
    pub cod: usize,
    pub family: Vec<M>,
}

impl<M> FaaMap<M> {
    /// Index of the last nonzero component, or `None` for the zero family.
    pub fn support(&self) -> Option<usize> {
        self.family.len().checked_sub(1)
    }
}

impl<M: std::fmt::Debug> std::fmt::Debug for FaaMap<M> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "family {}⇝{} (", self.dom, self.cod)?;
        for (n, c) in self.family.iter().enumerate() {
            write!(f, "{}f^({n}) = {c:?}", if n > 0 { ", " } else { "" })?;
        }
        write!(f, ")")
    }
}

/// `Faà(B)`, optionally with a fault injected.
#[derive(Debug, Clone, Copy, Default)]
pub struct Faa<B> {
    pub base: B,
    pub fault: Option<FaaFault>,
}

impl<B: LeftLinearCategory> Faa<B> {
    pub fn new(base: B) -> Self {
        Faa { base, fault: None }
    }

    pub fn with_fault(base: B, fault: Option<FaaFault>) -> Self {
        Faa { base, fault }
    }

    fn component(&self, f: &FaaMap<B::Mor>, n: usize) -> B::Mor {
        f.family.get(n).cloned().unwrap_or_else(|| self.base.zero(f.dom * (n + 1), f.cod))
    }

    fn trimmed(&self, dom: usize, cod: usize, mut family: Vec<B::Mor>) -> Result<FaaMap<B::Mor>> {
        while let Some(last) = family.last() {
            let n = family.len() - 1;
            if self.base.equal(last, &self.base.zero(dom * (n + 1), cod))? {
                family.pop();
            } else {
                break;
            }
        }
        Ok(FaaMap { dom, cod, family })
    }

    /// Builds a family after checking every component is symmetric and
    /// multilinear in its last arguments.
    pub fn family(&self, dom: usize, cod: usize, family: Vec<B::Mor>) -> Result<FaaMap<B::Mor>> {
        for (n, f) in family.iter().enumerate() {
            if self.base.dom(f) != dom * (n + 1) || self.base.cod(f) != cod {
                return Err(Error::InvalidFamily(format!(
                    "component {n} has type {}→{}, expected {}→{cod}",
                    self.base.dom(f),
                    self.base.cod(f),
                    dom * (n + 1)
                )));
            }
            if !self.base.is_symmetric_multilinear(f, dom, n)? {
                return Err(Error::InvalidFamily(format!("component {n} is not symmetric multilinear: {f:?}")));
            }
        }
        self.trimmed(dom, cod, family)
    }

    /// `f^(0)`, the cofree counit.
    pub fn counit(&self, f: &FaaMap<B::Mor>) -> B::Mor {
        self.component(f, 0)
    }

    /// The product projections `A_0 × A_1 ⇝ A_i`.
    pub fn projections(&self, a0: usize, a1: usize) -> Result<(FaaMap<B::Mor>, FaaMap<B::Mor>)> {
        let n = a0 + a1;
        let proj = |lo: usize, len: usize| -> Result<FaaMap<B::Mor>> {
            let coords: Vec<Option<usize>> = (lo..lo + len).map(Some).collect();
            self.linear(n, &coords_rows::<B>(n, &coords))
        };
        Ok((proj(0, a0)?, proj(a0, a1)?))
    }

    /// Components `n <= max_n` of `g ∘ f`; exact when both inputs are
    /// known up to `max_n`.
    pub fn compose_upto(&self, g: &FaaMap<B::Mor>, f: &FaaMap<B::Mor>, max_n: usize) -> Result<FaaMap<B::Mor>> {
        if f.cod != g.dom {
            return Err(Error::ObjectMismatch(format!("compose {}⇝{} after {}⇝{}", g.dom, g.cod, f.dom, f.cod)));
        }
        let (a, c) = (f.dom, g.cod);
        let nf = f.family.len();
        let ng = g.family.len();
        let mut family = Vec::new();
        for n in 0..=max_n {
            let mut terms = Vec::new();
            for p in partitions(n) {
                let k = p.len();
                if k >= ng || p.blocks.iter().any(|b| b.len() >= nf) {
                    continue;
                }
                if self.fault == Some(FaaFault::DropPartitionTerm) && n >= 2 && k == 1 {
                    continue;
                }
                let mut parts = vec![self.base.compose(&self.component(f, 0), &blocks(&self.base, a, n + 1, &[Some(0)])?)?];
                for b in &p.blocks {
                    let pick: Vec<Option<usize>> = std::iter::once(Some(0)).chain(b.iter().map(|i| Some(*i))).collect();
                    parts.push(self.base.compose(&f.family[b.len()], &blocks(&self.base, a, n + 1, &pick)?)?);
                }
                let inner = self.base.tuple(a * (n + 1), &parts)?;
                terms.push(self.base.compose(&g.family[k], &inner)?);
            }
            family.push(sum(&self.base, a * (n + 1), c, &terms)?);
        }
        self.trimmed(a, c, family)
    }

    /// `f^(m,n)`: component `n` of the `m`th derivative of `f`, summed over
    /// partial bijections `[m] ≃ [n]`. Slot `j` of the domain holds
    /// `x_{0j}, ..., x_{mj}`.
    pub fn higher(&self, f: &FaaMap<B::Mor>, m: usize, n: usize) -> Result<B::Mor> {
        let a = f.dom;
        let width = (m + 1) * (n + 1);
        let grid: Vec<Vec<Option<usize>>> =
            (0..=m).map(|i| (0..=n).map(|j| Some(j * (m + 1) + i)).collect()).collect();
        let mut terms = Vec::new();
        for theta in partial_isos(m, n) {
            let size = theta.size();
            if size >= f.family.len() {
                continue;
            }
            let pick = arrange(&theta, &grid)?;
            terms.push(self.base.compose(&f.family[size], &blocks(&self.base, a, width, &pick)?)?);
        }
        sum(&self.base, a * width, f.cod, &terms)
    }
}

fn coords_rows<B: LeftLinearCategory>(dom: usize, coords: &[Option<usize>]) -> Vec<Vec<B::Scalar>> {
    use num_traits::{One, Zero};
    coords
        .iter()
        .map(|c| {
            let mut row = vec![B::Scalar::zero(); dom];
            if let Some(j) = c {
                row[*j] = B::Scalar::one();
            }
            row
        })
        .collect()
}

impl<B: CartesianDifferentialCategory> Faa<B> {
    /// `(f, f^(1), f^(2), ...)` from the base derivatives, failing when they
    /// do not vanish by component `bound`.
    pub fn coalgebra(&self, f: &B::Mor, bound: usize) -> Result<FaaMap<B::Mor>> {
        let (a, b) = (self.base.dom(f), self.base.cod(f));
        let mut family = Vec::new();
        let mut cur = f.clone();
        for n in 0..=bound + 1 {
            if self.base.equal(&cur, &self.base.zero(a * (n + 1), b))? {
                return self.trimmed(a, b, family);
            }
            if n > bound {
                break;
            }
            family.push(cur.clone());
            cur = crate::cdc::partial_derivative(&self.base, &cur, &vec![a; n + 1], 1)?;
        }
        Err(Error::NoFiniteSupport(bound))
    }

    /// The first `max_n + 1` components of the coalgebra family.
    pub fn coalgebra_upto(&self, f: &B::Mor, max_n: usize) -> Result<FaaMap<B::Mor>> {
        let (a, b) = (self.base.dom(f), self.base.cod(f));
        let family = (0..=max_n).map(|n| nth_derivative(&self.base, f, n)).collect::<Result<_>>()?;
        self.trimmed(a, b, family)
    }
}

impl<B: LeftLinearCategory> LeftLinearCategory for Faa<B> {
    type Scalar = B::Scalar;
    type Mor = FaaMap<B::Mor>;

    fn dom(&self, f: &Self::Mor) -> usize {
        f.dom
    }
    fn cod(&self, f: &Self::Mor) -> usize {
        f.cod
    }
    fn identity(&self, a: usize) -> Self::Mor {
        let family = vec![self.base.identity(a), blocks(&self.base, a, 2, &[Some(1)]).expect("projection")];
        FaaMap { dom: a, cod: a, family }
    }
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor> {
        let bound = f.family.len().saturating_sub(1) * g.family.len().saturating_sub(1);
        self.compose_upto(g, f, bound)
    }
    fn tuple(&self, dom: usize, parts: &[Self::Mor]) -> Result<Self::Mor> {
        if parts.iter().any(|p| p.dom != dom) {
            return Err(Error::ObjectMismatch(format!("tuple components must have domain {dom}")));
        }
        let len = parts.iter().map(|p| p.family.len()).max().unwrap_or(0);
        let cod = parts.iter().map(|p| p.cod).sum();
        let family = (0..len)
            .map(|n| {
                let comps: Vec<B::Mor> = parts.iter().map(|p| self.component(p, n)).collect();
                self.base.tuple(dom * (n + 1), &comps)
            })
            .collect::<Result<_>>()?;
        self.trimmed(dom, cod, family)
    }
    fn linear(&self, dom: usize, rows: &[Vec<Self::Scalar>]) -> Result<Self::Mor> {
        let l = self.base.linear(dom, rows)?;
        let l1 = self.base.compose(&l, &blocks(&self.base, dom, 2, &[Some(1)])?)?;
        self.trimmed(dom, rows.len(), vec![l, l1])
    }
    fn zero(&self, dom: usize, cod: usize) -> Self::Mor {
        FaaMap { dom, cod, family: Vec::new() }
    }
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        if (f.dom, f.cod) != (g.dom, g.cod) {
            return Err(Error::ObjectMismatch("sum of families of different types".into()));
        }
        let len = f.family.len().max(g.family.len());
        let family = (0..len)
            .map(|n| self.base.add(&self.component(f, n), &self.component(g, n)))
            .collect::<Result<_>>()?;
        self.trimmed(f.dom, f.cod, family)
    }
    fn scale(&self, c: &Self::Scalar, f: &Self::Mor) -> Self::Mor {
        let family = f.family.iter().map(|x| self.base.scale(c, x)).collect();
        self.trimmed(f.dom, f.cod, family).expect("same shapes")
    }
    fn equal(&self, f: &Self::Mor, g: &Self::Mor) -> Result<bool> {
        if (f.dom, f.cod) != (g.dom, g.cod) {
            return Err(Error::ObjectMismatch(format!("{}⇝{} vs {}⇝{}", f.dom, f.cod, g.dom, g.cod)));
        }
        for n in 0..f.family.len().max(g.family.len()) {
            if !self.base.equal(&self.component(f, n), &self.component(g, n))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
    fn test_scalars(&self) -> Vec<Self::Scalar> {
        self.base.test_scalars()
    }
}

impl<B: LeftLinearCategory> CartesianDifferentialCategory for Faa<B> {
    /// `(Df)^(n)(x_0, y_0, ..., x_n, y_n) = f^(n+1)(x, y_0) + Σ_i f^(n)(x[y_i/x_i])`.
    fn derivative(&self, f: &Self::Mor) -> Result<Self::Mor> {
        let (a, b) = (f.dom, f.cod);
        let len = f.family.len();
        let mut family = Vec::with_capacity(len);
        for n in 0..len {
            let slots = 2 * (n + 1);
            let xs: Vec<Option<usize>> = (0..=n).map(|j| Some(2 * j)).collect();
            let mut terms = Vec::new();
            if n + 1 < len {
                let mut pick = xs.clone();
                pick.push(Some(1));
                terms.push(self.base.compose(&f.family[n + 1], &blocks(&self.base, a, slots, &pick)?)?);
            }
            if self.fault != Some(FaaFault::OmitDerivativeSum) {
                for i in 1..=n {
                    let mut pick = xs.clone();
                    pick[i] = Some(2 * i + 1);
                    terms.push(self.base.compose(&f.family[n], &blocks(&self.base, a, slots, &pick)?)?);
                }
            }
            family.push(sum(&self.base, 2 * a * (n + 1), b, &terms)?);
        }
        self.trimmed(2 * a, b, family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdc::{is_d_linear, nth_derivative};
    use crate::poly::{parse_poly_map, PolyCat, PolyMap};
    use num_bigint::BigInt;

    type F = Faa<PolyCat<BigInt>>;

    fn p(src: &str, arity: usize) -> PolyMap<BigInt> {
        parse_poly_map(src, arity).unwrap()
    }

    fn faa() -> F {
        Faa::new(PolyCat::default())
    }

    #[test]
    fn identity_family() {
        let id = faa().identity(2);
        assert_eq!(id.family.len(), 2);
        assert_eq!(id.family[0], PolyMap::identity(2));
        assert_eq!(id.family[1], p("[x3; x4]", 4));
        assert_eq!(faa().counit(&id), PolyMap::identity(2));
    }

    #[test]
    fn coalgebra_of_square() {
        let c = faa().coalgebra(&p("[x1^2]", 1), 8).unwrap();
        assert_eq!(c.family, vec![p("[x1^2]", 1), p("[2*x1*x2]", 2), p("[2*x2*x3]", 3)]);
        assert!(matches!(faa().coalgebra(&p("[x1^5]", 1), 3), Err(Error::NoFiniteSupport(3))));
    }

    #[test]
    fn composite_of_powers() {
        let f = faa().coalgebra(&p("[x1^2]", 1), 8).unwrap();
        let g = faa().coalgebra(&p("[x1^3]", 1), 8).unwrap();
        let gf = faa().compose(&g, &f).unwrap();
        assert_eq!(gf.family[0], p("[x1^6]", 1));
        assert_eq!(gf.family[1], p("[6*x1^5*x2]", 2));
        let direct = faa().coalgebra(&p("[x1^6]", 1), 8).unwrap();
        assert!(faa().equal(&gf, &direct).unwrap());
        assert_eq!(faa().counit(&gf), p("[x1^3]", 1).substitute(&p("[x1^2]", 1)).unwrap());
    }

    #[test]
    fn identity_is_neutral() {
        let f = faa().coalgebra(&p("[x1^2*x2 + x2; x1]", 2), 8).unwrap();
        let id = faa().identity(2);
        assert!(faa().equal(&faa().compose(&f, &id).unwrap(), &f).unwrap());
        assert!(faa().equal(&faa().compose(&faa().identity(2), &f).unwrap(), &f).unwrap());
    }

    #[test]
    fn differential_of_identity_and_cube() {
        let did = faa().derivative(&faa().identity(1)).unwrap();
        assert_eq!(did.family[0], p("[x2]", 2));
        let cube = faa().coalgebra(&p("[x1^3]", 1), 8).unwrap();
        assert_eq!(faa().derivative(&cube).unwrap().family[0], p("[3*x1^2*x2]", 2));
        assert!(is_d_linear(&faa(), &faa().identity(2)).unwrap().is_none());
    }

    #[test]
    fn projections_pair_back() {
        let (p0, p1) = faa().projections(1, 1).unwrap();
        assert_eq!(p0.family[0], p("[x1]", 2));
        assert_eq!(p0.family[1], p("[x3]", 4));
        let f = faa().coalgebra(&p("[x1^2 + x2]", 2), 8).unwrap();
        let g = faa().coalgebra(&p("[x1*x2]", 2), 8).unwrap();
        let pair = faa().tuple(2, &[f.clone(), g.clone()]).unwrap();
        assert!(faa().equal(&faa().compose(&p0, &pair).unwrap(), &f).unwrap());
        assert!(faa().equal(&faa().compose(&p1, &pair).unwrap(), &g).unwrap());
    }

    #[test]
    fn higher_components() {
        let f = faa().coalgebra(&p("[x1^4]", 1), 8).unwrap();
        assert_eq!(faa().higher(&f, 0, 2).unwrap(), f.family[2]);
        let want = p("[12*x1^2*x2*x3 + 4*x1^3*x4]", 4);
        assert_eq!(faa().higher(&f, 1, 1).unwrap(), want);
        for m in 0..=2 {
            let fm = nth_derivative(&faa(), &f, m).unwrap();
            for n in 0..=2 {
                let slow = fm.family.get(n).cloned().unwrap_or_else(|| PolyMap::zero((m + 1) * (n + 1), 1));
                assert_eq!(faa().higher(&f, m, n).unwrap(), slow, "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn constant_after_zero() {
        let g = faa().coalgebra(&p("[x1 + 1]", 1), 8).unwrap();
        let z = faa().zero(1, 1);
        let gz = faa().compose(&g, &z).unwrap();
        assert_eq!(gz.family, vec![p("[1]", 1)]);
    }

    #[test]
    fn invalid_families_are_rejected() {
        assert!(matches!(
            faa().family(1, 1, vec![p("[x1]", 1), p("[x2^2]", 2)]),
            Err(Error::InvalidFamily(_))
        ));
        let ok = faa().family(1, 1, vec![p("[x1]", 1), p("[x1*x2]", 2), PolyMap::zero(3, 1)]).unwrap();
        assert_eq!(ok.family.len(), 2);
    }

    #[test]
    fn faults_change_results() {
        let f = faa().coalgebra(&p("[x1^2]", 1), 8).unwrap();
        let g = faa().coalgebra(&p("[x1^2]", 1), 8).unwrap();
        let bad = Faa::with_fault(PolyCat::default(), Some(FaaFault::DropPartitionTerm));
        assert!(!faa().equal(&bad.compose(&g, &f).unwrap(), &faa().compose(&g, &f).unwrap()).unwrap());
        let bad = Faa::with_fault(PolyCat::default(), Some(FaaFault::OmitDerivativeSum));
        let c = faa().coalgebra(&p("[x1^3]", 1), 8).unwrap();
        assert!(!faa().equal(&bad.derivative(&c).unwrap(), &faa().derivative(&c).unwrap()).unwrap());
    }
}
