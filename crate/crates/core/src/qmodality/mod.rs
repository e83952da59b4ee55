//! The initial monoidal differential modality `Q` on `k`-modules.
//!
//! `QA` is the direct sum over points `x0 ∈ A` of the symmetric algebra on
//! `A`; its generators `<x0, x1, ..., xn>` are multilinear and symmetric in
//! the tail but arbitrary in the point. A [`Vector`] over a `Q`-space keeps
//! generators in normal form: the point is an opaque vector, the tail a
//! sorted list of basis keys, and all tail coefficients are pulled out.
//!
//! The structure maps work on raw vectors and need the ambient spaces only
//! where a projection or injection has to be named. Thin wrappers over
//! [`ModuleElement`] check spaces.

pub mod laws;

use crate::algebra::{Generator, Key, ModuleElement, Rig, Space, Vector};
use crate::combinat::{arrange, partial_isos, partitions, subsets};
use crate::error::{Error, Result};

/// Deliberate defects used to show the law suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QFault {
    /// Tails are stored in argument order, so `<x; a, b> != <x; b, a>`.
    UnsortedTail,
    /// The counit sends `<x0>` to 0 and `<x0, x1>` to `x0`.
    SwapCounitCases,
    /// `Δ` omits the `I = [n]` term for `n >= 1`.
    DropCoproductTerm,
}

/// The structure maps of `Q`, optionally with one fault injected.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Modality {
    pub fault: Option<QFault>,
}

/// Basis vector of `QA` on the generator `<point; tail>`.
pub fn gen<R: Rig>(point: Vector<R>, tail: Vec<Key<R>>) -> Vector<R> {
    Vector::basis(Generator::new(point, tail).key())
}

fn as_gen<R: Rig>(k: &Key<R>) -> &Generator<R> {
    k.as_gen().expect("expected a Q-generator key")
}

/// Applies linear maps to both factors of every pair key.
pub fn tensor_map<R: Rig>(
    t: &Vector<R>,
    mut f: impl FnMut(&Key<R>) -> Vector<R>,
    mut g: impl FnMut(&Key<R>) -> Vector<R>,
) -> Vector<R> {
    let mut out = Vector::zero();
    for (k, c) in t.iter() {
        let Key::Tuple(parts) = k else { panic!("expected a pair key, got {k:?}") };
        let (l, r) = (&parts[0], &parts[1]);
        out.add_scaled(c, &f(l).tensor(&g(r)));
    }
    out
}

/// Splits the pair keys of a vector into `(left, right, coeff)` triples.
pub fn pairs<R: Rig>(t: &Vector<R>) -> Vec<(&Key<R>, &Key<R>, &R)> {
    t.iter()
        .map(|(k, c)| match k {
            Key::Tuple(p) if p.len() == 2 => (&p[0], &p[1], c),
            _ => panic!("expected a pair key, got {k:?}"),
        })
        .collect()
}

/// Product injection `A_i → A_0 × A_1 × ...` on a vector of `A_i`.
pub fn inject_slot<R: Rig>(i: u32, v: &Vector<R>) -> Vector<R> {
    v.relabel(|k| Key::Slot(i, Box::new(k.clone())))
}

/// Product projection onto slot `i`, as a map on keys.
pub fn project_slot<R: Rig>(i: u32) -> impl Fn(&Key<R>) -> Vector<R> {
    move |k| match k {
        Key::Slot(j, inner) if *j == i => Vector::basis((**inner).clone()),
        Key::Slot(..) => Vector::zero(),
        _ => panic!("expected a product key, got {k:?}"),
    }
}

impl Modality {
    pub fn new(fault: Option<QFault>) -> Self {
        Modality { fault }
    }

    fn key<R: Rig>(&self, point: Vector<R>, tail: Vec<Key<R>>) -> Key<R> {
        if self.fault == Some(QFault::UnsortedTail) {
            Key::Gen(Box::new(Generator { point, tail }))
        } else {
            Generator::new(point, tail).key()
        }
    }

    /// `<point, t1, ..., tn>` expanded multilinearly over the tail.
    pub fn inject<R: Rig>(&self, point: &Vector<R>, tail: &[Vector<R>]) -> Vector<R> {
        let mut partial: Vec<(Vec<Key<R>>, R)> = vec![(Vec::new(), R::one())];
        for t in tail {
            let mut next = Vec::with_capacity(partial.len() * t.len());
            for (keys, c) in &partial {
                for (k, d) in t.iter() {
                    let mut ks = keys.clone();
                    ks.push(k.clone());
                    next.push((ks, c.clone() * d.clone()));
                }
            }
            partial = next;
        }
        let mut out = Vector::zero();
        for (keys, c) in partial {
            out.add_term(self.key(point.clone(), keys), c);
        }
        out
    }

    /// `Qf` for a linear `f` given on basis keys.
    pub fn q_map<R: Rig>(&self, f: &dyn Fn(&Key<R>) -> Vector<R>, q: &Vector<R>) -> Vector<R> {
        let mut out = Vector::zero();
        for (k, c) in q.iter() {
            let g = as_gen(k);
            let point = g.point.map_linear(f);
            let tail: Vec<Vector<R>> = g.tail.iter().map(f).collect();
            out.add_scaled(c, &self.inject(&point, &tail));
        }
        out
    }

    /// `ε : QA → A`.
    pub fn counit<R: Rig>(&self, q: &Vector<R>) -> Vector<R> {
        let swap = self.fault == Some(QFault::SwapCounitCases);
        q.map_linear(|k| {
            let g = as_gen(k);
            match (g.degree(), swap) {
                (0, false) => g.point.clone(),
                (1, false) => Vector::basis(g.tail[0].clone()),
                (1, true) => g.point.clone(),
                _ => Vector::zero(),
            }
        })
    }

    /// `δ : QA → QQA`, summing over partitions of the tail.
    pub fn comult<R: Rig>(&self, q: &Vector<R>) -> Vector<R> {
        q.map_linear(|k| {
            let g = as_gen(k);
            let outer_point = Vector::basis(self.key(g.point.clone(), Vec::new()));
            let mut out = Vector::zero();
            for p in partitions(g.degree()) {
                let tail = p
                    .blocks
                    .iter()
                    .map(|b| self.key(g.point.clone(), b.iter().map(|i| g.tail[i - 1].clone()).collect()))
                    .collect();
                out.add_term(self.key(outer_point.clone(), tail), R::one());
            }
            out
        })
    }

    /// `e : QA → k`.
    pub fn comonoid_counit<R: Rig>(&self, q: &Vector<R>) -> R {
        q.functional(|k| if as_gen(k).degree() == 0 { R::one() } else { R::zero() })
    }

    /// `Δ : QA → QA ⊗ QA`, summing over subsets of the tail.
    pub fn comonoid_comult<R: Rig>(&self, q: &Vector<R>) -> Vector<R> {
        let drop = self.fault == Some(QFault::DropCoproductTerm);
        q.map_linear(|k| {
            let g = as_gen(k);
            let n = g.degree();
            let mut out = Vector::zero();
            for s in subsets(n) {
                if drop && n >= 1 && s.len() == n {
                    continue;
                }
                let (inside, outside): (Vec<_>, Vec<_>) =
                    (1..=n).partition(|i| s.contains(i));
                let pick = |ix: &[usize]| ix.iter().map(|i| g.tail[i - 1].clone()).collect();
                out.add_term(
                    Key::pair(self.key(g.point.clone(), pick(&inside)), self.key(g.point.clone(), pick(&outside))),
                    R::one(),
                );
            }
            out
        })
    }

    /// `m_I : k → Qk`, the generator `<1>`.
    pub fn monoidal_unit<R: Rig>(&self) -> Vector<R> {
        Vector::basis(self.key(Vector::basis(Key::unit()), Vec::new()))
    }

    fn entries<R: Rig>(g: &Generator<R>) -> Vec<Vector<R>> {
        std::iter::once(g.point.clone())
            .chain(g.tail.iter().map(|k| Vector::basis(k.clone())))
            .collect()
    }

    /// `m_⊗ : QA ⊗ QB → Q(A ⊗ B)`, summing over partial bijections.
    pub fn monoidal_mult<R: Rig>(&self, p: &Vector<R>, q: &Vector<R>) -> Vector<R> {
        let mut out = Vector::zero();
        for (kp, cp) in p.iter() {
            for (kq, cq) in q.iter() {
                let (gx, gy) = (as_gen(kp), as_gen(kq));
                let (xs, ys) = (Self::entries(gx), Self::entries(gy));
                let grid: Vec<Vec<Vector<R>>> =
                    xs.iter().map(|x| ys.iter().map(|y| x.tensor(y)).collect()).collect();
                let c = cp.clone() * cq.clone();
                for theta in partial_isos(gx.degree(), gy.degree()) {
                    let list = arrange(&theta, &grid).expect("grid covers the arrangement");
                    out.add_scaled(&c, &self.inject(&list[0], &list[1..]));
                }
            }
        }
        out
    }

    /// `d : QA ⊗ A → QA`, appending to the tail; bilinear.
    pub fn deriving<R: Rig>(&self, q: &Vector<R>, y: &Vector<R>) -> Vector<R> {
        let mut out = Vector::zero();
        for (k, c) in q.iter() {
            let g = as_gen(k);
            for (yk, yc) in y.iter() {
                let mut tail = g.tail.clone();
                tail.push(yk.clone());
                out.add_term(self.key(g.point.clone(), tail), c.clone() * yc.clone());
            }
        }
        out
    }

    /// Fusion `H : QA ⊗ QB → Q(A ⊗ QB)`, by its closed formula.
    pub fn fusion<R: Rig>(&self, p: &Vector<R>, q: &Vector<R>) -> Vector<R> {
        let mut out = Vector::zero();
        for (kp, cp) in p.iter() {
            for (kq, cq) in q.iter() {
                let (gx, gy) = (as_gen(kp), as_gen(kq));
                let xs = Self::entries(gx);
                let c = cp.clone() * cq.clone();
                for part in partitions(gy.degree()) {
                    let mut ys = vec![Vector::basis(self.key(gy.point.clone(), Vec::new()))];
                    for b in &part.blocks {
                        let tail = b.iter().map(|i| gy.tail[i - 1].clone()).collect();
                        ys.push(Vector::basis(self.key(gy.point.clone(), tail)));
                    }
                    let grid: Vec<Vec<Vector<R>>> =
                        xs.iter().map(|x| ys.iter().map(|y| x.tensor(y)).collect()).collect();
                    for theta in partial_isos(gx.degree(), part.len()) {
                        let list = arrange(&theta, &grid).expect("grid covers the arrangement");
                        out.add_scaled(&c, &self.inject(&list[0], &list[1..]));
                    }
                }
            }
        }
        out
    }

    /// Storage map `χ = (Qπ0 ⊗ Qπ1) ∘ Δ : Q(A × B) → QA ⊗ QB`.
    pub fn storage<R: Rig>(&self, q: &Vector<R>) -> Vector<R> {
        let p0 = project_slot::<R>(0);
        let p1 = project_slot::<R>(1);
        tensor_map(
            &self.comonoid_comult(q),
            |l| self.q_map(&p0, &Vector::basis(l.clone())),
            |r| self.q_map(&p1, &Vector::basis(r.clone())),
        )
    }

    /// `<x0..xp> ⊗ <y0..yq> ↦ <(x0,y0), (x1,0), ..., (0,y1), ...>`.
    pub fn storage_inv<R: Rig>(&self, t: &Vector<R>) -> Vector<R> {
        let mut out = Vector::zero();
        for (l, r, c) in pairs(t) {
            let (gx, gy) = (as_gen(l), as_gen(r));
            let point = inject_slot(0, &gx.point).plus(&inject_slot(1, &gy.point));
            let tail = gx
                .tail
                .iter()
                .map(|k| Key::Slot(0, Box::new(k.clone())))
                .chain(gy.tail.iter().map(|k| Key::Slot(1, Box::new(k.clone()))))
                .collect();
            out.add_term(self.key(point, tail), c.clone());
        }
        out
    }

    /// Bialgebra unit `u = Q(0) ∘ m_I : k → QA`, which is `<0>`.
    pub fn bialg_unit<R: Rig>(&self) -> Vector<R> {
        self.q_map(&|_| Vector::zero(), &self.monoidal_unit())
    }

    /// `∇ : QA ⊗ QA → QA`, adding points and concatenating tails.
    pub fn bialg_mult<R: Rig>(&self, p: &Vector<R>, q: &Vector<R>) -> Vector<R> {
        let mut out = Vector::zero();
        for (kp, cp) in p.iter() {
            for (kq, cq) in q.iter() {
                let (gx, gy) = (as_gen(kp), as_gen(kq));
                let tail = gx.tail.iter().chain(&gy.tail).cloned().collect();
                out.add_term(self.key(gx.point.plus(&gy.point), tail), cp.clone() * cq.clone());
            }
        }
        out
    }

    /// Codereliction `η(x) = <0, x>`.
    pub fn codereliction<R: Rig>(&self, x: &Vector<R>) -> Vector<R> {
        self.inject(&Vector::zero(), std::slice::from_ref(x))
    }
}

fn q_inner(space: &Space) -> Result<&Space> {
    space
        .q_inner()
        .ok_or_else(|| Error::SpaceMismatch(format!("expected a Q-space, got {space:?}")))
}

fn check_in<R: Rig>(space: &Space, v: &ModuleElement<R>) -> Result<()> {
    if v.space() == space {
        Ok(())
    } else {
        Err(Error::SpaceMismatch(format!("{:?} vs {space:?}", v.space())))
    }
}

/// `<point, tail...>` as an element of `QA`.
pub fn q_inject<R: Rig>(point: &ModuleElement<R>, tail: &[ModuleElement<R>]) -> Result<ModuleElement<R>> {
    for t in tail {
        check_in(point.space(), t)?;
    }
    let tail: Vec<_> = tail.iter().map(|t| t.vector().clone()).collect();
    let v = Modality::default().inject(point.vector(), &tail);
    ModuleElement::new(Space::q(point.space().clone()), v)
}

/// `Qf` for `f : A → B` given by the images of the basis of `A`.
pub fn q_map<R: Rig>(images: &[ModuleElement<R>], q: &ModuleElement<R>) -> Result<ModuleElement<R>> {
    let inner = q_inner(q.space())?;
    let basis = inner
        .basis::<R>()
        .ok_or_else(|| Error::SpaceMismatch("q_map needs a finite-rank domain".into()))?;
    if basis.len() != images.len() {
        return Err(Error::SpaceMismatch(format!("{} images for a basis of {}", images.len(), basis.len())));
    }
    let cod = match images.first() {
        Some(x) => x.space().clone(),
        None => Space::free_dim(0),
    };
    for x in images {
        check_in(&cod, x)?;
    }
    let table: std::collections::BTreeMap<Key<R>, Vector<R>> =
        basis.into_iter().zip(images.iter().map(|x| x.vector().clone())).collect();
    let f = |k: &Key<R>| table.get(k).cloned().unwrap_or_default();
    ModuleElement::new(Space::q(cod), Modality::default().q_map(&f, q.vector()))
}

pub fn counit<R: Rig>(q: &ModuleElement<R>) -> Result<ModuleElement<R>> {
    let inner = q_inner(q.space())?.clone();
    ModuleElement::new(inner, Modality::default().counit(q.vector()))
}

pub fn comult<R: Rig>(q: &ModuleElement<R>) -> Result<ModuleElement<R>> {
    q_inner(q.space())?;
    ModuleElement::new(Space::q(q.space().clone()), Modality::default().comult(q.vector()))
}

pub fn comonoid_counit<R: Rig>(q: &ModuleElement<R>) -> Result<R> {
    q_inner(q.space())?;
    Ok(Modality::default().comonoid_counit(q.vector()))
}

pub fn comonoid_comult<R: Rig>(q: &ModuleElement<R>) -> Result<ModuleElement<R>> {
    q_inner(q.space())?;
    let s = Space::tensor([q.space().clone(), q.space().clone()]);
    ModuleElement::new(s, Modality::default().comonoid_comult(q.vector()))
}

pub fn monoidal_unit<R: Rig>() -> ModuleElement<R> {
    ModuleElement::new(Space::q(Space::unit()), Modality::default().monoidal_unit())
        .expect("<1> lies in Qk")
}

pub fn monoidal_mult<R: Rig>(p: &ModuleElement<R>, q: &ModuleElement<R>) -> Result<ModuleElement<R>> {
    let s = Space::q(Space::tensor([q_inner(p.space())?.clone(), q_inner(q.space())?.clone()]));
    ModuleElement::new(s, Modality::default().monoidal_mult(p.vector(), q.vector()))
}

pub fn deriving<R: Rig>(q: &ModuleElement<R>, y: &ModuleElement<R>) -> Result<ModuleElement<R>> {
    check_in(q_inner(q.space())?, y)?;
    ModuleElement::new(q.space().clone(), Modality::default().deriving(q.vector(), y.vector()))
}

pub fn fusion<R: Rig>(p: &ModuleElement<R>, q: &ModuleElement<R>) -> Result<ModuleElement<R>> {
    let s = Space::q(Space::tensor([q_inner(p.space())?.clone(), q.space().clone()]));
    q_inner(q.space())?;
    ModuleElement::new(s, Modality::default().fusion(p.vector(), q.vector()))
}

pub fn storage<R: Rig>(q: &ModuleElement<R>) -> Result<ModuleElement<R>> {
    let Space::Product(parts) = q_inner(q.space())? else {
        return Err(Error::SpaceMismatch("storage needs Q(A × B)".into()));
    };
    if parts.len() != 2 {
        return Err(Error::SpaceMismatch("storage needs a binary product".into()));
    }
    let s = Space::tensor([Space::q(parts[0].clone()), Space::q(parts[1].clone())]);
    ModuleElement::new(s, Modality::default().storage(q.vector()))
}

pub fn storage_inv<R: Rig>(t: &ModuleElement<R>) -> Result<ModuleElement<R>> {
    let Space::Tensor(parts) = t.space() else {
        return Err(Error::SpaceMismatch("storage_inv needs QA ⊗ QB".into()));
    };
    if parts.len() != 2 {
        return Err(Error::SpaceMismatch("storage_inv needs a binary tensor".into()));
    }
    let s = Space::q(Space::product([q_inner(&parts[0])?.clone(), q_inner(&parts[1])?.clone()]));
    ModuleElement::new(s, Modality::default().storage_inv(t.vector()))
}

pub fn bialg_unit<R: Rig>(space: &Space) -> ModuleElement<R> {
    ModuleElement::new(Space::q(space.clone()), Modality::default().bialg_unit())
        .expect("<0> lies in QA")
}

pub fn bialg_mult<R: Rig>(p: &ModuleElement<R>, q: &ModuleElement<R>) -> Result<ModuleElement<R>> {
    q_inner(p.space())?;
    check_in(p.space(), q)?;
    ModuleElement::new(p.space().clone(), Modality::default().bialg_mult(p.vector(), q.vector()))
}

pub fn codereliction<R: Rig>(x: &ModuleElement<R>) -> ModuleElement<R> {
    ModuleElement::new(Space::q(x.space().clone()), Modality::default().codereliction(x.vector()))
        .expect("<0, x> lies in QA")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Zm;
    use num_bigint::BigInt;

    type E = ModuleElement<BigInt>;

    fn a2() -> Space {
        Space::free_dim(2)
    }

    fn v(c: &[i64]) -> E {
        let vec = c
            .iter()
            .enumerate()
            .map(|(i, x)| (Key::Basis(i as u32), BigInt::from(*x)))
            .collect();
        ModuleElement::new(a2(), vec).unwrap()
    }

    fn g(point: &[i64], tail: &[&[i64]]) -> E {
        let tail: Vec<E> = tail.iter().map(|t| v(t)).collect();
        q_inject(&v(point), &tail).unwrap()
    }

    fn sum(items: &[(i64, E)]) -> E {
        let terms: Vec<_> = items.iter().map(|(c, x)| (BigInt::from(*c), x.clone())).collect();
        crate::algebra::linear_combine(&terms).unwrap()
    }

    #[test]
    fn inject_examples() {
        let x0 = [1, 1];
        assert_eq!(g(&x0, &[]).vector().len(), 1);
        assert_eq!(g(&x0, &[&[1, 1]]), sum(&[(1, g(&x0, &[&[1, 0]])), (1, g(&x0, &[&[0, 1]]))]));
        assert_eq!(g(&x0, &[&[2, 0], &[3, 0]]), sum(&[(6, g(&x0, &[&[1, 0], &[1, 0]]))]));
        assert!(g(&x0, &[&[0, 0]]).is_zero());
        assert!(q_inject(&v(&[1, 0]), &[ModuleElement::zero(Space::free_dim(3))]).is_err());
    }

    #[test]
    fn q_map_examples() {
        let q = g(&[1, 0], &[&[1, 0]]);
        assert_eq!(q_map(&[v(&[1, 0]), v(&[0, 1])], &q).unwrap(), q);
        assert!(q_map(&[v(&[0, 0]), v(&[0, 0])], &q).unwrap().is_zero());
        let img = q_map(&[v(&[1, 1]), v(&[0, 1])], &q).unwrap();
        let want = sum(&[(1, g(&[1, 1], &[&[1, 0]])), (1, g(&[1, 1], &[&[0, 1]]))]);
        assert_eq!(img, want);
    }

    #[test]
    fn counit_examples() {
        let x0 = v(&[1, 2]);
        assert_eq!(counit(&g(&[1, 2], &[])).unwrap(), x0);
        assert_eq!(counit(&g(&[1, 2], &[&[0, 1]])).unwrap(), v(&[0, 1]));
        assert!(counit(&g(&[1, 2], &[&[0, 1], &[1, 0]])).unwrap().is_zero());
    }

    fn qq_gen(point: &E, tail: &[E]) -> Key<BigInt> {
        let t = tail.iter().map(|x| x.vector().keys().next().unwrap().clone()).collect();
        Generator::new(point.vector().clone(), t).key()
    }

    #[test]
    fn comult_examples() {
        let x0 = [1, 0];
        let d0 = comult(&g(&x0, &[])).unwrap();
        assert_eq!(d0.vector(), &Vector::basis(qq_gen(&g(&x0, &[]), &[])));

        let d1 = comult(&g(&x0, &[&[0, 1]])).unwrap();
        assert_eq!(d1.vector(), &Vector::basis(qq_gen(&g(&x0, &[]), &[g(&x0, &[&[0, 1]])])));

        let (e1, e2) = (&[1, 0][..], &[0, 1][..]);
        let d2 = comult(&g(&x0, &[e1, e2])).unwrap();
        let split = qq_gen(&g(&x0, &[]), &[g(&x0, &[e1]), g(&x0, &[e2])]);
        let whole = qq_gen(&g(&x0, &[]), &[g(&x0, &[e1, e2])]);
        assert_eq!(d2.vector(), &Vector::from_terms([(split, BigInt::from(1)), (whole, BigInt::from(1))]));
    }

    #[test]
    fn comonoid_examples() {
        assert_eq!(comonoid_counit(&g(&[1, 0], &[])).unwrap(), BigInt::from(1));
        assert_eq!(comonoid_counit(&g(&[1, 0], &[&[1, 0]])).unwrap(), BigInt::from(0));
        let mixed = sum(&[(3, g(&[1, 0], &[])), (1, g(&[0, 1], &[&[0, 1]]))]);
        assert_eq!(comonoid_counit(&mixed).unwrap(), BigInt::from(3));

        let x = g(&[1, 0], &[]);
        assert_eq!(comonoid_comult(&x).unwrap(), crate::algebra::tensor_elem(&x, &x));
        let x1 = g(&[1, 0], &[&[0, 1]]);
        let want = crate::algebra::tensor_elem(&x, &x1)
            .plus(&crate::algebra::tensor_elem(&x1, &x))
            .unwrap();
        assert_eq!(comonoid_comult(&x1).unwrap(), want);
        let x2 = g(&[1, 0], &[&[0, 1], &[1, 0]]);
        assert_eq!(comonoid_comult(&x2).unwrap().vector().len(), 4);
    }

    #[test]
    fn monoidal_examples() {
        let one = monoidal_unit::<BigInt>();
        assert_eq!(one.vector(), &gen(Vector::basis(Key::unit()), vec![]));
        let u5 = monoidal_unit::<Zm<5>>();
        let k = u5.vector().keys().next().unwrap().as_gen().unwrap().point.coeff(&Key::unit());
        assert_eq!(k, Zm::new(1));

        let (x0, y0) = (v(&[1, 0]), v(&[0, 1]));
        let t = |a: &E, b: &E| crate::algebra::tensor_elem(a, b);
        let m00 = monoidal_mult(&g(&[1, 0], &[]), &g(&[0, 1], &[])).unwrap();
        assert_eq!(m00, q_inject(&t(&x0, &y0), &[]).unwrap());

        let x1 = v(&[1, 1]);
        let m10 = monoidal_mult(&g(&[1, 0], &[&[1, 1]]), &g(&[0, 1], &[])).unwrap();
        assert_eq!(m10, q_inject(&t(&x0, &y0), &[t(&x1, &y0)]).unwrap());

        let y1 = v(&[1, 0]);
        let m11 = monoidal_mult(&g(&[1, 0], &[&[1, 1]]), &g(&[0, 1], &[&[1, 0]])).unwrap();
        let want = q_inject(&t(&x0, &y0), &[t(&x1, &y1)])
            .unwrap()
            .plus(&q_inject(&t(&x0, &y0), &[t(&x1, &y0), t(&x0, &y1)]).unwrap())
            .unwrap();
        assert_eq!(m11, want);
    }

    #[test]
    fn deriving_examples() {
        let q = g(&[1, 0], &[]);
        assert_eq!(deriving(&q, &v(&[0, 1])).unwrap(), g(&[1, 0], &[&[0, 1]]));
        assert!(deriving(&q, &v(&[0, 0])).unwrap().is_zero());
        assert_eq!(deriving(&q, &v(&[2, 0])).unwrap(), sum(&[(2, g(&[1, 0], &[&[1, 0]]))]));
    }

    #[test]
    fn fusion_examples() {
        let p = g(&[1, 0], &[]);
        let q = g(&[0, 1], &[]);
        let h = fusion(&p, &q).unwrap();
        let want = q_inject(&crate::algebra::tensor_elem(&v(&[1, 0]), &q), &[]).unwrap();
        assert_eq!(h, want);

        let q1 = g(&[0, 1], &[&[1, 0]]);
        let direct = fusion(&p, &q1).unwrap();
        let composite = monoidal_mult(&p, &comult(&q1).unwrap()).unwrap();
        assert_eq!(direct, composite);
    }

    fn prod(a: &[i64], b: &[i64]) -> E {
        let s = Space::product([a2(), a2()]);
        let va = v(a).vector().relabel(|k| Key::Slot(0, Box::new(k.clone())));
        let vb = v(b).vector().relabel(|k| Key::Slot(1, Box::new(k.clone())));
        ModuleElement::new(s, va.plus(&vb)).unwrap()
    }

    #[test]
    fn storage_examples() {
        let t = |a: &E, b: &E| crate::algebra::tensor_elem(a, b);
        let q = q_inject(&prod(&[1, 0], &[0, 1]), &[]).unwrap();
        assert_eq!(storage(&q).unwrap(), t(&g(&[1, 0], &[]), &g(&[0, 1], &[])));
        let q = q_inject(&prod(&[1, 0], &[0, 1]), &[prod(&[1, 1], &[0, 0])]).unwrap();
        assert_eq!(storage(&q).unwrap(), t(&g(&[1, 0], &[&[1, 1]]), &g(&[0, 1], &[])));
        assert_eq!(storage_inv(&storage(&q).unwrap()).unwrap(), q);

        let back = storage_inv(&t(&g(&[1, 0], &[]), &g(&[0, 1], &[]))).unwrap();
        assert_eq!(back, q_inject(&prod(&[1, 0], &[0, 1]), &[]).unwrap());
    }

    #[test]
    fn bialgebra_examples() {
        let u = bialg_unit::<BigInt>(&a2());
        assert_eq!(u, q_inject(&v(&[0, 0]), &[]).unwrap());
        assert_eq!(comonoid_counit(&u).unwrap(), BigInt::from(1));
        let q = g(&[1, 2], &[&[0, 1]]);
        assert_eq!(bialg_mult(&u, &q).unwrap(), q);

        let s = bialg_mult(&g(&[1, 0], &[]), &g(&[0, 1], &[])).unwrap();
        assert_eq!(s, g(&[1, 1], &[]));
        let s = bialg_mult(&g(&[1, 0], &[&[1, 0]]), &g(&[0, 1], &[&[0, 1]])).unwrap();
        assert_eq!(s, g(&[1, 1], &[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn codereliction_examples() {
        assert_eq!(codereliction(&v(&[1, 0])), g(&[0, 0], &[&[1, 0]]));
        assert!(codereliction(&v(&[0, 0])).is_zero());
        let q = g(&[1, 1], &[&[1, 0]]);
        let y = v(&[2, 1]);
        assert_eq!(deriving(&q, &y).unwrap(), bialg_mult(&q, &codereliction(&y)).unwrap());
    }
}
