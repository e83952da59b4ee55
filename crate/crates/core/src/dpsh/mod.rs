//! Differential presheaves over `Mat(k)` for a finite rig `k`.
//!
//! An element of `X(A)` is a [`Vector`] over the basis keys of `X(A)`, and
//! stages are matrix dimensions. Reindexing along `f : C → A` is linear in
//! the element, so presheaves are specified on basis keys and extended
//! linearly.

pub mod yoneda;

use std::sync::Arc;

use crate::algebra::{FiniteRig, Generator, Key, Vector};
use crate::cdc::{all_matrices, blocks, CartesianDifferentialCategory, LeftLinearCategory, Mat, Matrix};
use crate::error::{Error, Result};
use crate::qmodality::laws::multisets;
use crate::qmodality::Modality;
use crate::report::{run_cases, Check, Report};

pub use yoneda::{
    classify, full_fidelity, higher_action, action_round_trip, yoneda_map, Classified, FaaPresheafMap,
};

/// A differential presheaf on `Mat(k)`.
pub trait DifferentialPresheaf<R: FiniteRig>: Send + Sync {
    fn name(&self) -> String;

    /// Basis keys of `X(A)` for `dim A = a`.
    fn basis(&self, a: usize) -> Vec<Key<R>>;

    /// `e · f` for a basis key `e` of `X(A)` and `f : C → A`.
    fn act_key(&self, key: &Key<R>, a: usize, f: &Matrix<R>) -> Result<Vector<R>>;

    /// `D e ∈ X(A × A)` for a basis key `e` of `X(A)`.
    fn d_key(&self, key: &Key<R>, a: usize) -> Result<Vector<R>>;

    fn act(&self, xi: &Vector<R>, a: usize, f: &Matrix<R>) -> Result<Vector<R>> {
        if f.cod != a {
            return Err(Error::ObjectMismatch(format!("reindexing X({a}) along a map into {}", f.cod)));
        }
        let mut out = Vector::zero();
        for (k, c) in xi.iter() {
            out.add_scaled(c, &self.act_key(k, a, f)?);
        }
        Ok(out)
    }

    fn d(&self, xi: &Vector<R>, a: usize) -> Result<Vector<R>> {
        let mut out = Vector::zero();
        for (k, c) in xi.iter() {
            out.add_scaled(c, &self.d_key(k, a)?);
        }
        Ok(out)
    }
}

pub type Presheaf<R> = Arc<dyn DifferentialPresheaf<R>>;

/// Every element of the free module on `keys`.
pub fn all_vectors<R: FiniteRig>(keys: &[Key<R>]) -> Vec<Vector<R>> {
    let mut out = vec![Vector::zero()];
    for k in keys {
        out = out
            .into_iter()
            .flat_map(|v| {
                R::elements().into_iter().map(move |c| {
                    let mut w = v.clone();
                    w.add_term(k.clone(), c);
                    w
                })
            })
            .collect();
    }
    out
}

/// The matrix `A → B` stored as a vector over keys `r * a + c`.
pub fn matrix_vector<R: FiniteRig>(m: &Matrix<R>) -> Vector<R> {
    Vector::from_terms(m.data.iter().enumerate().map(|(i, c)| (Key::Basis(i as u32), c.clone())))
}

pub fn vector_matrix<R: FiniteRig>(v: &Vector<R>, dom: usize, cod: usize) -> Result<Matrix<R>> {
    let mut m = Matrix::zero(dom, cod);
    for (k, c) in v.iter() {
        match k {
            Key::Basis(i) if (*i as usize) < dom * cod => m.data[*i as usize] = c.clone(),
            _ => return Err(Error::SpaceMismatch(format!("{k:?} is not an entry of a {cod}×{dom} matrix"))),
        }
    }
    Ok(m)
}

fn proj<R: FiniteRig>(a: usize, k: usize, i: usize) -> Matrix<R> {
    blocks(&Mat::<R>::default(), a, k, &[Some(i)]).expect("projection")
}

fn stack<R: FiniteRig>(dom: usize, parts: &[Matrix<R>]) -> Result<Matrix<R>> {
    Mat::<R>::default().tuple(dom, parts)
}

/// `y(B)`: `A ↦ Mat(A, B)`, acting by precomposition with the differential
/// of `Mat`. With `reversed`, the direction of `D` is read backwards,
/// which breaks naturality of `D`.
#[derive(Debug, Clone, Copy)]
pub struct Representable {
    pub object: usize,
    pub reversed: bool,
}

pub fn representable<R: FiniteRig>(b: usize) -> Presheaf<R> {
    Arc::new(Representable { object: b, reversed: false })
}

/// `y(B)` with a deliberately broken differential.
pub fn sabotaged_representable<R: FiniteRig>(b: usize) -> Presheaf<R> {
    Arc::new(Representable { object: b, reversed: true })
}

impl<R: FiniteRig> DifferentialPresheaf<R> for Representable {
    fn name(&self) -> String {
        format!("y({}){}", self.object, if self.reversed { " [reversed D]" } else { "" })
    }
    fn basis(&self, a: usize) -> Vec<Key<R>> {
        (0..a * self.object).map(|i| Key::Basis(i as u32)).collect()
    }
    fn act_key(&self, key: &Key<R>, a: usize, f: &Matrix<R>) -> Result<Vector<R>> {
        let xi = vector_matrix(&Vector::basis(key.clone()), a, self.object)?;
        Ok(matrix_vector(&xi.mul(f)?))
    }
    fn d_key(&self, key: &Key<R>, a: usize) -> Result<Vector<R>> {
        let mut xi = vector_matrix(&Vector::basis(key.clone()), a, self.object)?;
        if self.reversed {
            let rev: Vec<Option<usize>> = (0..a).rev().map(Some).collect();
            xi = xi.mul(&crate::cdc::select(&Mat::<R>::default(), a, &rev)?)?;
        }
        Ok(matrix_vector(&Mat::<R>::default().derivative(&xi)?))
    }
}

/// The pointwise unit: constant at `k`, zero differential.
#[derive(Debug, Clone, Copy)]
pub struct Unit;

pub fn unit<R: FiniteRig>() -> Presheaf<R> {
    Arc::new(Unit)
}

impl<R: FiniteRig> DifferentialPresheaf<R> for Unit {
    fn name(&self) -> String {
        "I".into()
    }
    fn basis(&self, _: usize) -> Vec<Key<R>> {
        vec![Key::unit()]
    }
    fn act_key(&self, key: &Key<R>, _: usize, _: &Matrix<R>) -> Result<Vector<R>> {
        Ok(Vector::basis(key.clone()))
    }
    fn d_key(&self, _: &Key<R>, _: usize) -> Result<Vector<R>> {
        Ok(Vector::zero())
    }
}

/// The zero presheaf.
#[derive(Debug, Clone, Copy)]
pub struct Zero;

impl<R: FiniteRig> DifferentialPresheaf<R> for Zero {
    fn name(&self) -> String {
        "0".into()
    }
    fn basis(&self, _: usize) -> Vec<Key<R>> {
        Vec::new()
    }
    fn act_key(&self, _: &Key<R>, _: usize, _: &Matrix<R>) -> Result<Vector<R>> {
        Ok(Vector::zero())
    }
    fn d_key(&self, _: &Key<R>, _: usize) -> Result<Vector<R>> {
        Ok(Vector::zero())
    }
}

/// `X ⊗ Y` with the product-rule differential.
pub struct Tensor<R> {
    pub left: Presheaf<R>,
    pub right: Presheaf<R>,
}

pub fn tensor<R: FiniteRig>(left: Presheaf<R>, right: Presheaf<R>) -> Presheaf<R> {
    Arc::new(Tensor { left, right })
}

fn split_pair<R>(key: &Key<R>) -> Result<(&Key<R>, &Key<R>)> {
    match key {
        Key::Tuple(p) if p.len() == 2 => Ok((&p[0], &p[1])),
        _ => Err(Error::SpaceMismatch("expected a pair key".into())),
    }
}

impl<R: FiniteRig> DifferentialPresheaf<R> for Tensor<R> {
    fn name(&self) -> String {
        format!("({} ⊗ {})", self.left.name(), self.right.name())
    }
    fn basis(&self, a: usize) -> Vec<Key<R>> {
        let rs = self.right.basis(a);
        self.left
            .basis(a)
            .into_iter()
            .flat_map(|l| rs.iter().map(move |r| Key::pair(l.clone(), r.clone())))
            .collect()
    }
    fn act_key(&self, key: &Key<R>, a: usize, f: &Matrix<R>) -> Result<Vector<R>> {
        let (l, r) = split_pair(key)?;
        Ok(self.left.act_key(l, a, f)?.tensor(&self.right.act_key(r, a, f)?))
    }
    fn d_key(&self, key: &Key<R>, a: usize) -> Result<Vector<R>> {
        let (l, r) = split_pair(key)?;
        let p0 = proj::<R>(a, 2, 0);
        let first = self.left.d_key(l, a)?.tensor(&self.right.act_key(r, a, &p0)?);
        let second = self.left.act_key(l, a, &p0)?.tensor(&self.right.d_key(r, a)?);
        Ok(first.plus(&second))
    }
}

/// `QX`, enumerated on generators of degree `<= bound`.
pub struct QPresheaf<R> {
    pub inner: Presheaf<R>,
    pub bound: usize,
    pub modality: Modality,
}

pub fn presheaf_q<R: FiniteRig>(inner: Presheaf<R>, bound: usize) -> Presheaf<R> {
    Arc::new(QPresheaf { inner, bound, modality: Modality::default() })
}

fn as_generator<R: FiniteRig>(key: &Key<R>) -> Result<&Generator<R>> {
    key.as_gen().ok_or_else(|| Error::SpaceMismatch("expected a Q-generator".into()))
}

impl<R: FiniteRig> DifferentialPresheaf<R> for QPresheaf<R> {
    fn name(&self) -> String {
        format!("Q{} (degree <= {})", self.inner.name(), self.bound)
    }
    fn basis(&self, a: usize) -> Vec<Key<R>> {
        let keys = self.inner.basis(a);
        let mut out = Vec::new();
        for p in all_vectors(&keys) {
            for d in 0..=self.bound {
                for tail in multisets(&keys, d) {
                    out.push(Generator::new(p.clone(), tail).key());
                }
            }
        }
        out
    }
    fn act_key(&self, key: &Key<R>, a: usize, f: &Matrix<R>) -> Result<Vector<R>> {
        let g = as_generator(key)?;
        let point = self.inner.act(&g.point, a, f)?;
        let tail = g.tail.iter().map(|t| self.inner.act_key(t, a, f)).collect::<Result<Vec<_>>>()?;
        Ok(self.modality.inject(&point, &tail))
    }
    fn d_key(&self, key: &Key<R>, a: usize) -> Result<Vector<R>> {
        let g = as_generator(key)?;
        let p0 = proj::<R>(a, 2, 0);
        let point = self.inner.act(&g.point, a, &p0)?;
        let tail = g.tail.iter().map(|t| self.inner.act_key(t, a, &p0)).collect::<Result<Vec<_>>>()?;
        let mut extended = tail.clone();
        extended.push(self.inner.d(&g.point, a)?);
        let mut out = self.modality.inject(&point, &extended);
        for (i, t) in g.tail.iter().enumerate() {
            let mut swapped = tail.clone();
            swapped[i] = self.inner.d_key(t, a)?;
            out.add_assign(&self.modality.inject(&point, &swapped));
        }
        Ok(out)
    }
}

/// Stages and probe objects for [`check_presheaf`].
#[derive(Debug, Clone, Copy)]
pub struct PresheafConfig {
    /// Stages `A` with `1 <= dim A <= max_stage` are enumerated.
    pub max_stage: usize,
    /// Generalised elements `x : Z → A` range over `1 <= dim Z <= probe_dim`.
    pub probe_dim: usize,
}

impl Default for PresheafConfig {
    fn default() -> Self {
        PresheafConfig { max_stage: 2, probe_dim: 2 }
    }
}

fn differ_at<R: FiniteRig>(what: &str, lhs: &Vector<R>, rhs: &Vector<R>) -> Option<String> {
    (lhs != rhs).then(|| format!("{what}: lhs = {lhs:?}, rhs = {rhs:?}"))
}

fn witness(r: Result<Option<String>>) -> Option<String> {
    r.unwrap_or_else(|e| Some(format!("error: {e}")))
}

/// Checks functoriality and axioms (i)-(v) of a differential presheaf on
/// every basis element of every stage, against every probe.
pub fn check_presheaf<R: FiniteRig>(x: &dyn DifferentialPresheaf<R>, cfg: &PresheafConfig) -> Report {
    let cat = Mat::<R>::default();
    let mut report = Report::new("presheaf")
        .with_config("presheaf", x.name())
        .with_config("max_stage", cfg.max_stage)
        .with_config("probe_dim", cfg.probe_dim);
    let cases: Vec<(usize, Key<R>)> =
        (1..=cfg.max_stage).flat_map(|a| x.basis(a).into_iter().map(move |k| (a, k))).collect();
    let probes = |a: usize| -> Vec<(usize, Vec<Matrix<R>>)> {
        (1..=cfg.probe_dim).map(|z| (z, all_matrices::<R>(z, a))).collect()
    };

    report.push(run_cases("functor: identity", &cases, |(a, k)| {
        let xi = Vector::basis(k.clone());
        witness(x.act(&xi, *a, &Matrix::identity(*a)).map(|v| differ_at(&format!("{k:?}·id"), &v, &xi)))
    }));

    report.push(run_cases("functor: composition", &cases, |(a, k)| {
        let xi = Vector::basis(k.clone());
        witness((|| {
            for b in 1..=cfg.max_stage {
                for f in all_matrices::<R>(b, *a) {
                    let xf = x.act(&xi, *a, &f)?;
                    for (_, gs) in probes(b) {
                        for g in &gs {
                            let lhs = x.act(&xf, b, g)?;
                            let rhs = x.act(&xi, *a, &f.mul(g)?)?;
                            if let Some(w) = differ_at(&format!("({k:?}·{f:?})·{g:?}"), &lhs, &rhs) {
                                return Ok(Some(w));
                            }
                        }
                    }
                }
            }
            Ok(None)
        })())
    }));

    report.push(run_cases("axiom i: D is linear", &cases, |(a, k)| {
        let xi = Vector::basis(k.clone());
        witness((|| {
            let dxi = x.d(&xi, *a)?;
            for other in x.basis(*a) {
                let ups = Vector::basis(other);
                let lhs = x.d(&xi.plus(&ups), *a)?;
                let rhs = dxi.plus(&x.d(&ups, *a)?);
                if let Some(w) = differ_at(&format!("D({k:?} + {ups:?})"), &lhs, &rhs) {
                    return Ok(Some(w));
                }
            }
            for c in R::elements() {
                let lhs = x.d(&xi.scaled(&c), *a)?;
                if let Some(w) = differ_at(&format!("D({c}·{k:?})"), &lhs, &dxi.scaled(&c)) {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        })())
    }));

    report.push(run_cases("axiom ii: D is linear in its direction", &cases, |(a, k)| {
        witness((|| {
            let dxi = x.d(&Vector::basis(k.clone()), *a)?;
            for (z, ms) in probes(*a) {
                let at = |p: &Matrix<R>, q: &Matrix<R>| x.act(&dxi, 2 * a, &stack(z, &[p.clone(), q.clone()])?);
                for p in &ms {
                    for r in &ms {
                        let base = at(p, r)?;
                        for s in &ms {
                            let lhs = at(p, &r.plus(s)?)?;
                            let rhs = base.plus(&at(p, s)?);
                            if let Some(w) = differ_at(&format!("D{k:?}·(x, r+s), x = {p:?}, r = {r:?}, s = {s:?}"), &lhs, &rhs) {
                                return Ok(Some(w));
                            }
                        }
                        for c in R::elements() {
                            let lhs = at(p, &r.scaled(&c))?;
                            if let Some(w) = differ_at(&format!("D{k:?}·(x, {c}r), x = {p:?}, r = {r:?}"), &lhs, &base.scaled(&c)) {
                                return Ok(Some(w));
                            }
                        }
                    }
                }
            }
            Ok(None)
        })())
    }));

    report.push(run_cases("axiom iii: D commutes with reindexing", &cases, |(a, k)| {
        let xi = Vector::basis(k.clone());
        witness((|| {
            let dxi = x.d(&xi, *a)?;
            for b in 1..=cfg.max_stage {
                let p0 = proj::<R>(b, 2, 0);
                for f in all_matrices::<R>(b, *a) {
                    let lhs = x.d(&x.act(&xi, *a, &f)?, b)?;
                    let pair = stack(2 * b, &[f.mul(&p0)?, cat.derivative(&f)?])?;
                    let rhs = x.act(&dxi, 2 * a, &pair)?;
                    if let Some(w) = differ_at(&format!("D({k:?}·f) vs D{k:?}·(fπ0, Df), f = {f:?}"), &lhs, &rhs) {
                        return Ok(Some(w));
                    }
                }
            }
            Ok(None)
        })())
    }));

    report.push(run_cases("axiom iv: DD(x, r, 0, v) = D(x, v)", &cases, |(a, k)| {
        let xi = Vector::basis(k.clone());
        witness((|| {
            let dxi = x.d(&xi, *a)?;
            let ddxi = x.d(&dxi, 2 * a)?;
            for (z, ms) in probes(*a) {
                let zero = Matrix::zero(z, *a);
                for p in &ms {
                    for r in &ms {
                        for v in &ms {
                            let lhs = x.act(&ddxi, 4 * a, &stack(z, &[p.clone(), r.clone(), zero.clone(), v.clone()])?)?;
                            let rhs = x.act(&dxi, 2 * a, &stack(z, &[p.clone(), v.clone()])?)?;
                            if let Some(w) = differ_at(&format!("{k:?} at x = {p:?}, r = {r:?}, v = {v:?}"), &lhs, &rhs) {
                                return Ok(Some(w));
                            }
                        }
                    }
                }
            }
            Ok(None)
        })())
    }));

    report.push(run_cases("axiom v: DD(x, r, s, 0) = DD(x, s, r, 0)", &cases, |(a, k)| {
        let xi = Vector::basis(k.clone());
        witness((|| {
            let ddxi = x.d(&x.d(&xi, *a)?, 2 * a)?;
            for (z, ms) in probes(*a) {
                let zero = Matrix::zero(z, *a);
                for p in &ms {
                    for r in &ms {
                        for s in &ms {
                            let lhs = x.act(&ddxi, 4 * a, &stack(z, &[p.clone(), r.clone(), s.clone(), zero.clone()])?)?;
                            let rhs = x.act(&ddxi, 4 * a, &stack(z, &[p.clone(), s.clone(), r.clone(), zero.clone()])?)?;
                            if let Some(w) = differ_at(&format!("{k:?} at x = {p:?}, r = {r:?}, s = {s:?}"), &lhs, &rhs) {
                                return Ok(Some(w));
                            }
                        }
                    }
                }
            }
            Ok(None)
        })())
    }));

    if cases.is_empty() {
        report.push(Check::pass("empty presheaf", 0));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Z2;

    fn small() -> PresheafConfig {
        PresheafConfig { max_stage: 2, probe_dim: 1 }
    }

    #[test]
    fn representable_basics() {
        let y = representable::<Z2>(2);
        let id = matrix_vector(&Matrix::<Z2>::identity(2));
        assert_eq!(y.act(&id, 2, &Matrix::identity(2)).unwrap(), id);
        let p1 = proj::<Z2>(2, 2, 1);
        assert_eq!(y.d(&id, 2).unwrap(), matrix_vector(&p1));
    }

    #[test]
    fn constructed_presheaves_pass() {
        let y1 = representable::<Z2>(1);
        let all: Vec<Presheaf<Z2>> = vec![
            y1.clone(),
            representable(2),
            unit(),
            Arc::new(Zero),
            tensor(y1.clone(), representable(2)),
            tensor(unit(), y1.clone()),
            presheaf_q(y1, 2),
        ];
        for x in all {
            let r = check_presheaf(x.as_ref(), &small());
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn reversed_differential_fails_naturality() {
        let r = check_presheaf(sabotaged_representable::<Z2>(1).as_ref(), &small());
        let iii = r.checks.iter().find(|c| c.name.starts_with("axiom iii")).unwrap();
        assert!(!iii.passed);
        assert!(iii.counterexample.is_some());
    }

    #[test]
    fn tensor_with_unit_matches() {
        let y = representable::<Z2>(2);
        let t = tensor(unit(), y.clone());
        for a in 1..=2 {
            assert_eq!(t.basis(a).len(), y.basis(a).len());
            for k in y.basis(a) {
                let pk = Key::pair(Key::unit(), k.clone());
                let dy = y.d_key(&k, a).unwrap();
                let dt = t.d_key(&pk, a).unwrap();
                assert_eq!(dt, dy.relabel(|k| Key::pair(Key::unit(), k.clone())));
            }
        }
        assert!(unit::<Z2>().d_key(&Key::unit(), 2).unwrap().is_zero());
    }

    #[test]
    fn q_differential_in_degree_zero() {
        let y = representable::<Z2>(1);
        let q = presheaf_q(y.clone(), 2);
        let xi = matrix_vector(&Matrix::<Z2>::identity(1));
        let g = Generator::new(xi.clone(), Vec::new()).key();
        let want = Modality::default().inject(
            &y.act(&xi, 1, &proj(1, 2, 0)).unwrap(),
            &[y.d(&xi, 1).unwrap()],
        );
        assert_eq!(q.d_key(&g, 1).unwrap(), want);
    }
}
