//! The differential calculus derived from `D`: partial and higher-order
//! derivatives and the partition decomposition of iterated differentials.

use super::{block, blocks, same_type, sum, CartesianDifferentialCategory, LeftLinearCategory};
use crate::combinat::partitions;
use crate::error::{Error, Result};

/// `D_i f(x_1, ..., x_n, v) = Df(x_1, ..., x_n, 0, ..., v, ..., 0)` for
/// `f : A_1 × ... × A_n → B` with block sizes `dims`; `i` is 1-based.
pub fn partial_derivative<C: CartesianDifferentialCategory + ?Sized>(
    cat: &C,
    f: &C::Mor,
    dims: &[usize],
    i: usize,
) -> Result<C::Mor> {
    let total: usize = dims.iter().sum();
    if cat.dom(f) != total {
        return Err(Error::ArityError(format!("blocks {dims:?} do not cover domain {}", cat.dom(f))));
    }
    if i == 0 || i > dims.len() {
        return Err(Error::ArityError(format!("partial index {i} outside 1..={}", dims.len())));
    }
    let offset: usize = dims[..i - 1].iter().sum();
    let width = dims[i - 1];
    let mut coords: Vec<Option<usize>> = (0..total).map(Some).collect();
    for j in 0..total {
        coords.push((offset..offset + width).contains(&j).then(|| total + j - offset));
    }
    let embed = super::select(cat, total + width, &coords)?;
    cat.compose(&cat.derivative(f)?, &embed)
}

/// `f^(n) = (D_1)^n f : A × A^n → B`.
pub fn nth_derivative<C: CartesianDifferentialCategory + ?Sized>(cat: &C, f: &C::Mor, n: usize) -> Result<C::Mor> {
    let a = cat.dom(f);
    let mut g = f.clone();
    for k in 0..n {
        g = partial_derivative(cat, &g, &vec![a; k + 1], 1)?;
    }
    Ok(g)
}

/// `f^(I)(x_0, ..., x_n) = f^(|I|)(x_0, x_{i_1}, ..., x_{i_k})` for sorted
/// `I ⊆ [n]`.
pub fn derivative_on_subset<C: CartesianDifferentialCategory + ?Sized>(
    cat: &C,
    f: &C::Mor,
    subset: &[usize],
    n: usize,
) -> Result<C::Mor> {
    if subset.iter().any(|i| *i == 0 || *i > n) || subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::IndexOutOfRange(format!("{subset:?} is not a sorted subset of [{n}]")));
    }
    let a = cat.dom(f);
    let pick: Vec<Option<usize>> = std::iter::once(Some(0)).chain(subset.iter().map(|i| Some(*i))).collect();
    cat.compose(&nth_derivative(cat, f, subset.len())?, &blocks(cat, a, n + 1, &pick)?)
}

/// The literal `D^n f : A^(2^n) → B`.
pub fn iterated_derivative<C: CartesianDifferentialCategory + ?Sized>(cat: &C, f: &C::Mor, n: usize) -> Result<C::Mor> {
    let mut g = f.clone();
    for _ in 0..n {
        g = cat.derivative(&g)?;
    }
    Ok(g)
}

fn mask(set: &[usize]) -> usize {
    set.iter().map(|i| 1usize << (i - 1)).sum()
}

/// `D^n f` rebuilt as `Σ f^(k)(x_∅, x_{A_1}, ..., x_{A_k})` over partitions
/// of `[n]`. Block `p` of `A^(2^n)` holds `x_I` with `p = Σ_{i ∈ I} 2^(i-1)`.
pub fn decompose_iterated<C: CartesianDifferentialCategory + ?Sized>(
    cat: &C,
    f: &C::Mor,
    n: usize,
) -> Result<C::Mor> {
    let (a, b) = (cat.dom(f), cat.cod(f));
    let width = 1usize << n;
    let mut terms = Vec::new();
    let mut derivs: Vec<C::Mor> = Vec::new();
    for p in partitions(n) {
        let k = p.len();
        while derivs.len() <= k {
            derivs.push(nth_derivative(cat, f, derivs.len())?);
        }
        let pick: Vec<Option<usize>> =
            std::iter::once(Some(0)).chain(p.blocks.iter().map(|bl| Some(mask(bl)))).collect();
        terms.push(cat.compose(&derivs[k], &blocks(cat, a, width, &pick)?)?);
    }
    sum(cat, a * width, b, &terms)
}

/// `f^(n)(y) = (D^n f)(y°)`, where `y°_∅ = y_0`, `y°_{k} = y_k` and
/// `y°_I = 0` for `|I| ≥ 2`.
pub fn reconstruct_from_iterated<C: LeftLinearCategory + ?Sized>(
    cat: &C,
    dnf: &C::Mor,
    a: usize,
    n: usize,
) -> Result<C::Mor> {
    let width = 1usize << n;
    if cat.dom(dnf) != a * width {
        return Err(Error::ArityError(format!("expected domain {}, got {}", a * width, cat.dom(dnf))));
    }
    let pick: Vec<Option<usize>> = (0..width)
        .map(|p| match p.count_ones() {
            0 => Some(0),
            1 => Some(p.trailing_zeros() as usize + 1),
            _ => None,
        })
        .collect();
    cat.compose(dnf, &blocks(cat, a, n + 1, &pick)?)
}

/// `None` when `f` is `k`-linear (`f(x + y) = fx + fy`, `f(cx) = c fx` on
/// generic elements), otherwise a witness.
pub fn is_k_linear<C: LeftLinearCategory + ?Sized>(cat: &C, f: &C::Mor) -> Result<Option<String>> {
    let a = cat.dom(f);
    let (p0, p1) = (block(cat, a, 2, 0)?, block(cat, a, 2, 1)?);
    let lhs = cat.compose(f, &cat.add(&p0, &p1)?)?;
    let rhs = cat.add(&cat.compose(f, &p0)?, &cat.compose(f, &p1)?)?;
    if !cat.equal(&lhs, &rhs)? {
        return Ok(Some(format!("f(x + y) ≠ f(x) + f(y) for {f:?}")));
    }
    let id = cat.identity(a);
    for c in cat.test_scalars() {
        let lhs = cat.compose(f, &cat.scale(&c, &id))?;
        if !cat.equal(&lhs, &cat.scale(&c, f))? {
            return Ok(Some(format!("f({c}·x) ≠ {c}·f(x) for {f:?}")));
        }
    }
    Ok(None)
}

/// `None` when `Df = f π_1`, otherwise a witness.
pub fn is_d_linear<C: CartesianDifferentialCategory + ?Sized>(cat: &C, f: &C::Mor) -> Result<Option<String>> {
    let a = cat.dom(f);
    let df = cat.derivative(f)?;
    let rhs = cat.compose(f, &block(cat, a, 2, 1)?)?;
    same_type(cat, &df, &rhs)?;
    Ok((!cat.equal(&df, &rhs)?).then(|| format!("Df = {df:?} but f π₁ = {rhs:?}")))
}
