//! `Mat(k)`: matrices over a rig, a `k`-linear category with biproducts and
//! the trivial differential `Df = f π_1`.

use std::fmt;

use super::{CartesianDifferentialCategory, LeftLinearCategory};
use crate::algebra::Rig;
use crate::error::{Error, Result};

/// A `cod × dom` matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<R> {
    pub dom: usize,
    pub cod: usize,
    pub data: Vec<R>,
}

impl<R: Rig> Matrix<R> {
    pub fn new(dom: usize, cod: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != dom * cod {
            return Err(Error::ArityError(format!("{} entries for a {cod}×{dom} matrix", data.len())));
        }
        Ok(Matrix { dom, cod, data })
    }

    pub fn zero(dom: usize, cod: usize) -> Self {
        Matrix { dom, cod, data: vec![R::zero(); dom * cod] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }

    pub fn from_rows(dom: usize, rows: &[Vec<R>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != dom) {
            return Err(Error::ArityError(format!("rows must have length {dom}")));
        }
        Ok(Matrix { dom, cod: rows.len(), data: rows.concat() })
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.dom + j]
    }

    pub fn apply(&self, x: &[R]) -> Vec<R> {
        (0..self.cod)
            .map(|i| {
                (0..self.dom).fold(R::zero(), |acc, j| acc + self.get(i, j).clone() * x[j].clone())
            })
            .collect()
    }

    /// `self ∘ f`.
    pub fn mul(&self, f: &Matrix<R>) -> Result<Matrix<R>> {
        if self.dom != f.cod {
            return Err(Error::ObjectMismatch(format!("compose {}→{} after {}→{}", self.dom, self.cod, f.dom, f.cod)));
        }
        let mut data = Vec::with_capacity(self.cod * f.dom);
        for i in 0..self.cod {
            for j in 0..f.dom {
                let mut acc = R::zero();
                for k in 0..self.dom {
                    acc = acc + self.get(i, k).clone() * f.get(k, j).clone();
                }
                data.push(acc);
            }
        }
        Ok(Matrix { dom: f.dom, cod: self.cod, data })
    }

    pub fn plus(&self, g: &Matrix<R>) -> Result<Matrix<R>> {
        if (self.dom, self.cod) != (g.dom, g.cod) {
            return Err(Error::ObjectMismatch("matrix sum of different shapes".into()));
        }
        let data = self.data.iter().zip(&g.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Matrix { dom: self.dom, cod: self.cod, data })
    }

    pub fn scaled(&self, c: &R) -> Matrix<R> {
        Matrix { dom: self.dom, cod: self.cod, data: self.data.iter().map(|a| c.clone() * a.clone()).collect() }
    }

    /// Horizontal concatenation `[self | g]`: a map out of a product.
    pub fn hcat(&self, g: &Matrix<R>) -> Result<Matrix<R>> {
        if self.cod != g.cod {
            return Err(Error::ObjectMismatch("hcat needs equal codomains".into()));
        }
        let dom = self.dom + g.dom;
        let mut data = Vec::with_capacity(dom * self.cod);
        for i in 0..self.cod {
            data.extend_from_slice(&self.data[i * self.dom..(i + 1) * self.dom]);
            data.extend_from_slice(&g.data[i * g.dom..(i + 1) * g.dom]);
        }
        Ok(Matrix { dom, cod: self.cod, data })
    }
}

impl<R: Rig> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.cod {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.dom).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]:{}→{}", self.dom, self.cod)
    }
}

/// All `cod × dom` matrices over a finite rig.
pub fn all_matrices<R: crate::algebra::FiniteRig>(dom: usize, cod: usize) -> Vec<Matrix<R>> {
    let els = R::elements();
    let mut out = vec![Vec::new()];
    for _ in 0..dom * cod {
        out = out
            .into_iter()
            .flat_map(|p: Vec<R>| {
                els.iter().map(move |e| {
                    let mut q = p.clone();
                    q.push(e.clone());
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(|data| Matrix { dom, cod, data }).collect()
}

#[derive(Debug, Clone, Copy)]
pub struct Mat<R>(std::marker::PhantomData<R>);

impl<R> Default for Mat<R> {
    fn default() -> Self {
        Mat(std::marker::PhantomData)
    }
}

impl<R: Rig> LeftLinearCategory for Mat<R> {
    type Scalar = R;
    type Mor = Matrix<R>;

    fn dom(&self, f: &Matrix<R>) -> usize {
        f.dom
    }
    fn cod(&self, f: &Matrix<R>) -> usize {
        f.cod
    }
    fn identity(&self, a: usize) -> Matrix<R> {
        Matrix::identity(a)
    }
    fn compose(&self, g: &Matrix<R>, f: &Matrix<R>) -> Result<Matrix<R>> {
        g.mul(f)
    }
    fn tuple(&self, dom: usize, parts: &[Matrix<R>]) -> Result<Matrix<R>> {
        if parts.iter().any(|p| p.dom != dom) {
            return Err(Error::ObjectMismatch(format!("tuple components must have domain {dom}")));
        }
        let cod = parts.iter().map(|p| p.cod).sum();
        Ok(Matrix { dom, cod, data: parts.iter().flat_map(|p| p.data.iter().cloned()).collect() })
    }
    fn linear(&self, dom: usize, rows: &[Vec<R>]) -> Result<Matrix<R>> {
        Matrix::from_rows(dom, rows)
    }
    fn zero(&self, dom: usize, cod: usize) -> Matrix<R> {
        Matrix::zero(dom, cod)
    }
    fn add(&self, f: &Matrix<R>, g: &Matrix<R>) -> Result<Matrix<R>> {
        f.plus(g)
    }
    fn scale(&self, c: &R, f: &Matrix<R>) -> Matrix<R> {
        f.scaled(c)
    }
    fn equal(&self, f: &Matrix<R>, g: &Matrix<R>) -> Result<bool> {
        super::same_type(self, f, g)?;
        Ok(f == g)
    }
}

impl<R: Rig> CartesianDifferentialCategory for Mat<R> {
    fn derivative(&self, f: &Matrix<R>) -> Result<Matrix<R>> {
        Matrix::zero(f.dom, f.cod).hcat(f)
    }
}
