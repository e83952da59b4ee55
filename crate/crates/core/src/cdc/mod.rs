//! Cartesian differential categories over pluggable bases.
//!
//! Objects are finite products `k^n` named by their dimension `n`, so the
//! product of `a` and `b` is `a + b` and `A^k` is `k * a`. A base supplies
//! composition, tupling, linear coordinate maps and the hom-module
//! structure; a differential base adds `D`. Everything else in this module
//! (partial and higher derivatives, the decomposition of iterated
//! differentials, linearity tests and the axiom suite) is generic.

pub mod axioms;
pub mod calculus;
pub mod mat;

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::algebra::Rig;
use crate::error::{Error, Result};

pub use axioms::{check_axioms, Sampler};
pub use calculus::{
    decompose_iterated, derivative_on_subset, is_d_linear, is_k_linear, iterated_derivative,
    nth_derivative, partial_derivative, reconstruct_from_iterated,
};
pub use mat::{all_matrices, Mat, Matrix};

/// A cartesian left-`k`-linear category whose objects are dimensions.
pub trait LeftLinearCategory: Sync {
    type Scalar: Rig;
    type Mor: Clone + Send + Sync + Debug;

    fn dom(&self, f: &Self::Mor) -> usize;
    fn cod(&self, f: &Self::Mor) -> usize;
    fn identity(&self, a: usize) -> Self::Mor;

    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;

    /// `⟨f_1, ..., f_k⟩ : dom → cod f_1 + ... + cod f_k`.
    fn tuple(&self, dom: usize, parts: &[Self::Mor]) -> Result<Self::Mor>;

    /// The `k`-linear map `k^dom → k^rows` with the given row-major matrix.
    fn linear(&self, dom: usize, rows: &[Vec<Self::Scalar>]) -> Result<Self::Mor>;

    fn zero(&self, dom: usize, cod: usize) -> Self::Mor;
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn scale(&self, c: &Self::Scalar, f: &Self::Mor) -> Self::Mor;

    /// Exact equality of morphisms.
    fn equal(&self, f: &Self::Mor, g: &Self::Mor) -> Result<bool>;

    /// Scalars used by sampled homogeneity tests.
    fn test_scalars(&self) -> Vec<Self::Scalar> {
        let mut out: Vec<Self::Scalar> = (0..=3).map(Self::Scalar::from_u64).collect();
        if let Some(m) = Self::Scalar::one().try_neg() {
            out.push(m);
        }
        out.sort();
        out.dedup();
        out
    }

    /// Whether `f : A × A^n → B` (with `dim A = block`) is symmetric and
    /// `k`-linear in its last `n` variables.
    fn is_symmetric_multilinear(&self, f: &Self::Mor, block: usize, n: usize) -> Result<bool> {
        Ok(multilinear_witness(self, f, block, n)?.is_none())
    }
}

/// A cartesian differential category.
pub trait CartesianDifferentialCategory: LeftLinearCategory {
    /// `Df : A × A → B`.
    fn derivative(&self, f: &Self::Mor) -> Result<Self::Mor>;
}

/// Coordinate map: output coordinate `i` is input `coords[i]`, or 0.
pub fn select<C: LeftLinearCategory + ?Sized>(cat: &C, dom: usize, coords: &[Option<usize>]) -> Result<C::Mor> {
    let rows: Vec<Vec<C::Scalar>> = coords
        .iter()
        .map(|c| {
            let mut row = vec![C::Scalar::zero(); dom];
            if let Some(j) = c {
                if *j >= dom {
                    return Err(Error::IndexOutOfRange(format!("coordinate {j} of {dom}")));
                }
                row[*j] = C::Scalar::one();
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    cat.linear(dom, &rows)
}

/// Block map `A^k → A^m`: output block `i` is input block `blocks[i]`, or 0.
pub fn blocks<C: LeftLinearCategory + ?Sized>(
    cat: &C,
    a: usize,
    k: usize,
    blocks: &[Option<usize>],
) -> Result<C::Mor> {
    let coords: Vec<Option<usize>> = blocks
        .iter()
        .flat_map(|b| (0..a).map(move |i| b.map(|b| b * a + i)))
        .collect();
    select(cat, a * k, &coords)
}

/// Projection `A^k → A` onto block `i`.
pub fn block<C: LeftLinearCategory + ?Sized>(cat: &C, a: usize, k: usize, i: usize) -> Result<C::Mor> {
    blocks(cat, a, k, &[Some(i)])
}

/// `Σ f_i`, with an explicit zero for the empty sum.
pub fn sum<C: LeftLinearCategory + ?Sized>(cat: &C, dom: usize, cod: usize, fs: &[C::Mor]) -> Result<C::Mor> {
    let mut acc = cat.zero(dom, cod);
    for f in fs {
        acc = cat.add(&acc, f)?;
    }
    Ok(acc)
}

/// Checks that both morphisms share a domain and codomain.
pub fn same_type<C: LeftLinearCategory + ?Sized>(cat: &C, f: &C::Mor, g: &C::Mor) -> Result<()> {
    if cat.dom(f) != cat.dom(g) || cat.cod(f) != cat.cod(g) {
        return Err(Error::ObjectMismatch(format!(
            "{} → {} vs {} → {}",
            cat.dom(f),
            cat.cod(f),
            cat.dom(g),
            cat.cod(g)
        )));
    }
    Ok(())
}

/// First violation of symmetry or multilinearity in the last `n` slots of
/// `f : A × A^n → B`, tested on generic elements.
pub fn multilinear_witness<C: LeftLinearCategory + ?Sized>(
    cat: &C,
    f: &C::Mor,
    a: usize,
    n: usize,
) -> Result<Option<String>> {
    if cat.dom(f) != a * (n + 1) {
        return Err(Error::ArityError(format!("expected domain {}, got {}", a * (n + 1), cat.dom(f))));
    }
    if n == 0 {
        return Ok(None);
    }
    for i in 1..n {
        let mut swap: Vec<Option<usize>> = (0..=n).map(Some).collect();
        swap.swap(i, i + 1);
        let g = cat.compose(f, &blocks(cat, a, n + 1, &swap)?)?;
        if !cat.equal(&g, f)? {
            return Ok(Some(format!("not symmetric in slots {i} and {}", i + 1)));
        }
    }
    // Additivity in slot 1 on A^(n+2): v1 = block 1 + block n+1.
    let k = n + 2;
    let ident: Vec<Option<usize>> = (0..=n).map(Some).collect();
    let lhs_in = {
        let mut parts = Vec::new();
        for (j, b) in ident.iter().enumerate() {
            let p = block(cat, a, k, b.unwrap())?;
            parts.push(if j == 1 { cat.add(&p, &block(cat, a, k, n + 1)?)? } else { p });
        }
        cat.tuple(a * k, &parts)?
    };
    let mut moved = ident.clone();
    moved[1] = Some(n + 1);
    let lhs = cat.compose(f, &lhs_in)?;
    let rhs = cat.add(
        &cat.compose(f, &blocks(cat, a, k, &ident)?)?,
        &cat.compose(f, &blocks(cat, a, k, &moved)?)?,
    )?;
    if !cat.equal(&lhs, &rhs)? {
        return Ok(Some("not additive in slot 1".into()));
    }
    for c in cat.test_scalars() {
        let mut parts = Vec::new();
        for j in 0..=n {
            let p = block(cat, a, n + 1, j)?;
            parts.push(if j == 1 { cat.scale(&c, &p) } else { p });
        }
        let lhs = cat.compose(f, &cat.tuple(a * (n + 1), &parts)?)?;
        if !cat.equal(&lhs, &cat.scale(&c, f))? {
            return Ok(Some(format!("not homogeneous in slot 1 for scalar {c}")));
        }
    }
    Ok(None)
}
