//! `FinFn_k`: all set maps between finite free modules `k^n`, stored as
//! full value tables. A cartesian left-`k`-linear category with no
//! differential of its own; its Faa di Bruno category is the oracle for
//! the co-Kleisli category of `Q`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::polynomial::PolyMap;
use crate::algebra::{FiniteRig, Zm};
use crate::cdc::LeftLinearCategory;
use crate::error::{Error, Result};

/// Largest domain (in points) a table may cover by default.
pub const DEFAULT_POINT_LIMIT: u64 = 1 << 20;

/// A function `k^dom → k^cod` as a table indexed by points; coordinate 0
/// is the least significant digit of the index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinMap<R> {
    pub dom: usize,
    pub cod: usize,
    table: Arc<Vec<R>>,
}

/// Full value table of a finite map.
pub type TableMap<R> = FinMap<R>;

fn point_count<R: FiniteRig>(dim: usize, limit: u64) -> Result<usize> {
    let q = R::order();
    let mut n: u64 = 1;
    for _ in 0..dim {
        n = n.checked_mul(q).filter(|n| *n <= limit).ok_or_else(|| {
            Error::SizeLimit(format!("{q}^{dim} points exceed the limit of {limit}"))
        })?;
    }
    Ok(n as usize)
}

/// The point with the given index.
pub fn decode<R: FiniteRig>(dim: usize, mut index: usize) -> Vec<R> {
    let els = R::elements();
    let q = els.len();
    (0..dim)
        .map(|_| {
            let d = index % q;
            index /= q;
            els[d].clone()
        })
        .collect()
}

pub fn encode<R: FiniteRig>(x: &[R]) -> usize {
    let q = R::order() as usize;
    x.iter().rev().fold(0, |acc, c| acc * q + c.index())
}

/// Every point of `k^dim`, in index order.
pub fn all_points<R: FiniteRig>(dim: usize) -> Vec<Vec<R>> {
    let n = point_count::<R>(dim, u64::MAX).expect("fits");
    (0..n).map(|i| decode(dim, i)).collect()
}

impl<R: FiniteRig> FinMap<R> {
    /// Tabulates `f` over all of `k^dom`.
    pub fn from_fn(dom: usize, cod: usize, limit: u64, f: impl Fn(&[R]) -> Vec<R>) -> Result<Self> {
        let n = point_count::<R>(dom, limit)?;
        let mut table = Vec::with_capacity(n * cod);
        for i in 0..n {
            let y = f(&decode(dom, i));
            if y.len() != cod {
                return Err(Error::ArityError(format!("value of length {} where {cod} expected", y.len())));
            }
            table.extend(y);
        }
        Ok(FinMap { dom, cod, table: Arc::new(table) })
    }

    pub fn from_table(dom: usize, cod: usize, table: Vec<R>) -> Result<Self> {
        let n = point_count::<R>(dom, u64::MAX)?;
        if table.len() != n * cod {
            return Err(Error::ArityError(format!("table of {} entries for {n} points × {cod}", table.len())));
        }
        Ok(FinMap { dom, cod, table: Arc::new(table) })
    }

    pub fn at_index(&self, i: usize) -> &[R] {
        &self.table[i * self.cod..(i + 1) * self.cod]
    }

    pub fn eval(&self, x: &[R]) -> Vec<R> {
        self.at_index(encode(x)).to_vec()
    }

    pub fn table(&self) -> &[R] {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Zero::is_zero)
    }
}

impl<R: FiniteRig> fmt::Debug for FinMap<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.table.len() / self.cod.max(1);
        let shown = n.min(8);
        write!(f, "table {}→{} {{", self.dom, self.cod)?;
        for i in 0..shown {
            let x: Vec<String> = decode::<R>(self.dom, i).iter().map(|c| c.to_string()).collect();
            let y: Vec<String> = self.at_index(i).iter().map(|c| c.to_string()).collect();
            write!(f, "{}({}) ↦ ({})", if i > 0 { ", " } else { "" }, x.join(","), y.join(","))?;
        }
        if n > shown {
            write!(f, ", … {} more", n - shown)?;
        }
        write!(f, "}}")
    }
}

/// The category of finite tables over `R`.
#[derive(Debug, Clone, Copy)]
pub struct FinFn<R> {
    pub limit: u64,
    _rig: std::marker::PhantomData<R>,
}

impl<R> Default for FinFn<R> {
    fn default() -> Self {
        FinFn { limit: DEFAULT_POINT_LIMIT, _rig: std::marker::PhantomData }
    }
}

impl<R> FinFn<R> {
    pub fn with_limit(limit: u64) -> Self {
        FinFn { limit, _rig: std::marker::PhantomData }
    }
}

impl<R: FiniteRig> FinFn<R> {
    fn check_same(&self, f: &FinMap<R>, g: &FinMap<R>) -> Result<()> {
        if (f.dom, f.cod) != (g.dom, g.cod) {
            return Err(Error::ObjectMismatch(format!("{}→{} vs {}→{}", f.dom, f.cod, g.dom, g.cod)));
        }
        Ok(())
    }
}

impl<R: FiniteRig> LeftLinearCategory for FinFn<R> {
    type Scalar = R;
    type Mor = FinMap<R>;

    fn dom(&self, f: &FinMap<R>) -> usize {
        f.dom
    }
    fn cod(&self, f: &FinMap<R>) -> usize {
        f.cod
    }
    fn identity(&self, a: usize) -> FinMap<R> {
        FinMap::from_fn(a, a, self.limit, |x| x.to_vec()).expect("identity within the size limit")
    }
    fn compose(&self, g: &FinMap<R>, f: &FinMap<R>) -> Result<FinMap<R>> {
        if f.cod != g.dom {
            return Err(Error::ObjectMismatch(format!("compose {}→{} after {}→{}", g.dom, g.cod, f.dom, f.cod)));
        }
        let n = f.table.len() / f.cod.max(1);
        let n = if f.cod == 0 { point_count::<R>(f.dom, self.limit)? } else { n };
        let mut table = Vec::with_capacity(n * g.cod);
        for i in 0..n {
            let y = if f.cod == 0 { 0 } else { encode(f.at_index(i)) };
            table.extend_from_slice(g.at_index(y));
        }
        Ok(FinMap { dom: f.dom, cod: g.cod, table: Arc::new(table) })
    }
    fn tuple(&self, dom: usize, parts: &[FinMap<R>]) -> Result<FinMap<R>> {
        if parts.iter().any(|p| p.dom != dom) {
            return Err(Error::ObjectMismatch(format!("tuple components must have domain {dom}")));
        }
        let cod = parts.iter().map(|p| p.cod).sum();
        let n = point_count::<R>(dom, self.limit)?;
        let mut table = Vec::with_capacity(n * cod);
        for i in 0..n {
            for p in parts {
                table.extend_from_slice(p.at_index(i));
            }
        }
        Ok(FinMap { dom, cod, table: Arc::new(table) })
    }
    fn linear(&self, dom: usize, rows: &[Vec<R>]) -> Result<FinMap<R>> {
        if rows.iter().any(|r| r.len() != dom) {
            return Err(Error::ArityError(format!("rows must have length {dom}")));
        }
        FinMap::from_fn(dom, rows.len(), self.limit, |x: &[R]| {
            rows.iter()
                .map(|r| r.iter().zip(x).fold(R::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
                .collect()
        })
    }
    fn zero(&self, dom: usize, cod: usize) -> FinMap<R> {
        let n = point_count::<R>(dom, self.limit).expect("zero map within the size limit");
        FinMap { dom, cod, table: Arc::new(vec![R::zero(); n * cod]) }
    }
    fn add(&self, f: &FinMap<R>, g: &FinMap<R>) -> Result<FinMap<R>> {
        self.check_same(f, g)?;
        let table = f.table.iter().zip(g.table.iter()).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(FinMap { dom: f.dom, cod: f.cod, table: Arc::new(table) })
    }
    fn scale(&self, c: &R, f: &FinMap<R>) -> FinMap<R> {
        let table = f.table.iter().map(|a| c.clone() * a.clone()).collect();
        FinMap { dom: f.dom, cod: f.cod, table: Arc::new(table) }
    }
    fn equal(&self, f: &FinMap<R>, g: &FinMap<R>) -> Result<bool> {
        self.check_same(f, g)?;
        Ok(f.table == g.table)
    }
    fn test_scalars(&self) -> Vec<R> {
        R::elements()
    }
}

/// Evaluation table of a polynomial map over `ℤ/M`.
pub fn table_from_poly<const M: u64>(f: &PolyMap<Zm<M>>, limit: u64) -> Result<FinMap<Zm<M>>> {
    FinMap::from_fn(f.dom, f.cod(), limit, |x| f.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdc::{is_k_linear, multilinear_witness};
    use crate::poly::{parse_poly_map, PolySampler};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tables_of_polynomials() {
        let sq = table_from_poly(&parse_poly_map::<Zm<2>>("[x1^2]", 1).unwrap(), 1 << 10).unwrap();
        assert_eq!(sq.table(), &[Zm::new(0), Zm::new(1)]);
        let cat = FinFn::<Zm<3>>::default();
        let id = table_from_poly(&parse_poly_map::<Zm<3>>("[x1]", 1).unwrap(), 1 << 10).unwrap();
        assert!(cat.equal(&id, &cat.identity(1)).unwrap());
        let cube = table_from_poly(&parse_poly_map::<Zm<3>>("[x1^3]", 1).unwrap(), 1 << 10).unwrap();
        assert_eq!(cube, id);
        assert!(matches!(
            table_from_poly(&PolyMap::<Zm<3>>::identity(30), 1 << 10),
            Err(Error::SizeLimit(_))
        ));
    }

    fn functorial<const M: u64>(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cat = FinFn::<Zm<M>>::default();
        let s = PolySampler { max_arity: 2, max_degree: 3, max_terms: 3 };
        for _ in 0..25 {
            let f = s.map::<Zm<M>>(&mut rng, 2, 2);
            let g = s.map::<Zm<M>>(&mut rng, 2, 1);
            let lhs = table_from_poly(&g.substitute(&f).unwrap(), 1 << 10).unwrap();
            let rhs = cat
                .compose(&table_from_poly(&g, 1 << 10).unwrap(), &table_from_poly(&f, 1 << 10).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn tabulation_is_functorial() {
        functorial::<2>(1);
        functorial::<3>(2);
    }

    #[test]
    fn coding_round_trips() {
        for i in 0..27 {
            assert_eq!(encode(&decode::<Zm<3>>(3, i)), i);
        }
        assert_eq!(all_points::<Zm<2>>(2).len(), 4);
    }

    #[test]
    fn linearity_over_tables() {
        let cat = FinFn::<Zm<3>>::default();
        let lin = cat.linear(2, &[vec![Zm::new(1), Zm::new(2)]]).unwrap();
        assert!(is_k_linear(&cat, &lin).unwrap().is_none());
        let sq = table_from_poly(&parse_poly_map::<Zm<3>>("[x1^2]", 1).unwrap(), 1 << 10).unwrap();
        assert!(is_k_linear(&cat, &sq).unwrap().is_some());
        let bil = table_from_poly(&parse_poly_map::<Zm<3>>("[x1^2*x2]", 2).unwrap(), 1 << 10).unwrap();
        assert!(multilinear_witness(&cat, &bil, 1, 1).unwrap().is_none());
        let not = table_from_poly(&parse_poly_map::<Zm<3>>("[x2^2]", 2).unwrap(), 1 << 10).unwrap();
        assert!(multilinear_witness(&cat, &not, 1, 1).unwrap().is_some());
    }
}
