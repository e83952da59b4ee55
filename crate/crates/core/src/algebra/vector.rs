//! Finitely supported vectors over free modules, indexed by structured keys.
//!
//! One representation covers every module the crate works with: a free
//! module on named generators, products, tensors and the direct-sum spaces
//! `QA` whose basis keys are normal-form generators `<x0; tail>`.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::sync::Arc;

use super::rig::Rig;
use crate::error::{Error, Result};

/// Canonical basis key of a [`Space`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key<R> {
    /// Index into the basis of a free space.
    Basis(u32),
    /// Injection of an inner key into a product slot.
    Slot(u32, Box<Key<R>>),
    /// Pure tensor of inner keys; the empty tuple is the unit of `k`.
    Tuple(Vec<Key<R>>),
    /// A normal-form generator of a Q-space.
    Gen(Box<Generator<R>>),
}

/// `<point; tail>`: the point is any element of the inner space, the tail a
/// sorted multiset of inner basis keys.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator<R> {
    pub point: Vector<R>,
    pub tail: Vec<Key<R>>,
}

impl<R> Generator<R> {
    pub fn degree(&self) -> usize {
        self.tail.len()
    }
}

impl<R: Rig> Generator<R> {
    pub fn new(point: Vector<R>, mut tail: Vec<Key<R>>) -> Self {
        tail.sort();
        Generator { point, tail }
    }

    pub fn key(self) -> Key<R> {
        Key::Gen(Box::new(self))
    }
}

impl<R: Rig> Key<R> {
    pub fn unit() -> Self {
        Key::Tuple(Vec::new())
    }

    pub fn pair(a: Key<R>, b: Key<R>) -> Self {
        Key::Tuple(vec![a, b])
    }

    pub fn as_gen(&self) -> Option<&Generator<R>> {
        match self {
            Key::Gen(g) => Some(g),
            _ => None,
        }
    }
}

/// A finitely supported `k`-linear combination of keys with no zero entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vector<R> {
    terms: BTreeMap<Key<R>, R>,
}

impl<R> Default for Vector<R> {
    fn default() -> Self {
        Vector { terms: BTreeMap::new() }
    }
}

impl<R: Rig> Vector<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: Key<R>) -> Self {
        Self::term(key, R::one())
    }

    pub fn term(key: Key<R>, c: R) -> Self {
        let mut v = Self::zero();
        v.add_term(key, c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Key<R>, R)>) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    /// Adds `c * key`, pruning the entry if it cancels.
    pub fn add_term(&mut self, key: Key<R>, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &R, other: &Vector<R>) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), c.clone() * v.clone());
        }
    }

    pub fn add_assign(&mut self, other: &Vector<R>) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn plus(&self, other: &Vector<R>) -> Vector<R> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn scaled(&self, c: &R) -> Vector<R> {
        let mut out = Vector::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn negated(&self) -> Option<Vector<R>> {
        Some(self.scaled(&R::one().try_neg()?))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &Key<R>) -> R {
        self.terms.get(key).cloned().unwrap_or_else(R::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key<R>, &R)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Key<R>> {
        self.terms.keys()
    }

    /// Extends a map defined on keys linearly.
    pub fn map_linear(&self, mut f: impl FnMut(&Key<R>) -> Vector<R>) -> Vector<R> {
        let mut out = Vector::zero();
        for (k, c) in &self.terms {
            out.add_scaled(c, &f(k));
        }
        out
    }

    /// Extends a key-to-scalar map linearly.
    pub fn functional(&self, mut f: impl FnMut(&Key<R>) -> R) -> R {
        let mut out = R::zero();
        for (k, c) in &self.terms {
            out = out + c.clone() * f(k);
        }
        out
    }

    /// Relabels keys by an injective map.
    pub fn relabel(&self, mut f: impl FnMut(&Key<R>) -> Key<R>) -> Vector<R> {
        Vector::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }

    /// Bilinear pairing onto tuple keys.
    pub fn tensor(&self, other: &Vector<R>) -> Vector<R> {
        let mut out = Vector::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(Key::pair(a.clone(), b.clone()), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Sum of a sequence of vectors.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Vector<R>>) -> Vector<R> {
        let mut out = Vector::zero();
        for v in items {
            out.add_assign(v);
        }
        out
    }
}

impl<R: Rig> FromIterator<(Key<R>, R)> for Vector<R> {
    fn from_iter<T: IntoIterator<Item = (Key<R>, R)>>(iter: T) -> Self {
        Vector::from_terms(iter)
    }
}

/// Shape of a free module.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Space {
    Free(Arc<Vec<String>>),
    Product(Vec<Space>),
    Tensor(Vec<Space>),
    Q(Box<Space>),
}

impl Space {
    /// Free space with explicitly named generators; names must be unique.
    pub fn free(names: impl IntoIterator<Item = impl Into<String>>) -> Result<Space> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::SpaceMismatch(format!("duplicate basis names in {names:?}")));
        }
        Ok(Space::Free(Arc::new(names)))
    }

    /// `k^n` with generators `e1, ..., en`.
    pub fn free_dim(n: usize) -> Space {
        Space::Free(Arc::new((1..=n).map(|i| format!("e{i}")).collect()))
    }

    /// The ground rig as a one-dimensional module.
    pub fn unit() -> Space {
        Space::Tensor(Vec::new())
    }

    pub fn product(spaces: impl IntoIterator<Item = Space>) -> Space {
        Space::Product(spaces.into_iter().collect())
    }

    pub fn tensor(spaces: impl IntoIterator<Item = Space>) -> Space {
        Space::Tensor(spaces.into_iter().collect())
    }

    pub fn q(inner: Space) -> Space {
        Space::Q(Box::new(inner))
    }

    pub fn q_inner(&self) -> Option<&Space> {
        match self {
            Space::Q(inner) => Some(inner),
            _ => None,
        }
    }

    /// Rank, when finite.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Space::Free(names) => Some(names.len()),
            Space::Product(parts) => parts.iter().map(Space::dim).sum(),
            Space::Tensor(parts) => parts.iter().map(Space::dim).product(),
            Space::Q(_) => None,
        }
    }

    /// Canonical basis in key order, when finite.
    pub fn basis<R: Rig>(&self) -> Option<Vec<Key<R>>> {
        match self {
            Space::Free(names) => Some((0..names.len() as u32).map(Key::Basis).collect()),
            Space::Product(parts) => {
                let mut out = Vec::new();
                for (i, p) in parts.iter().enumerate() {
                    out.extend(p.basis()?.into_iter().map(|k| Key::Slot(i as u32, Box::new(k))));
                }
                Some(out)
            }
            Space::Tensor(parts) => {
                let mut acc: Vec<Vec<Key<R>>> = vec![Vec::new()];
                for p in parts {
                    let b = p.basis()?;
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            b.iter().map(move |k| {
                                let mut t = prefix.clone();
                                t.push(k.clone());
                                t
                            })
                        })
                        .collect();
                }
                Some(acc.into_iter().map(Key::Tuple).collect())
            }
            Space::Q(_) => None,
        }
    }

    pub fn contains_key<R: Rig>(&self, key: &Key<R>) -> bool {
        match (self, key) {
            (Space::Free(names), Key::Basis(i)) => (*i as usize) < names.len(),
            (Space::Product(parts), Key::Slot(i, inner)) => {
                parts.get(*i as usize).is_some_and(|p| p.contains_key(inner))
            }
            (Space::Tensor(parts), Key::Tuple(keys)) => {
                parts.len() == keys.len() && parts.iter().zip(keys).all(|(p, k)| p.contains_key(k))
            }
            (Space::Q(inner), Key::Gen(g)) => {
                inner.contains(&g.point)
                    && g.tail.iter().all(|k| inner.contains_key(k))
                    && g.tail.windows(2).all(|w| w[0] <= w[1])
            }
            _ => false,
        }
    }

    pub fn contains<R: Rig>(&self, v: &Vector<R>) -> bool {
        v.keys().all(|k| self.contains_key(k))
    }

    pub fn key_name<R: Rig>(&self, key: &Key<R>) -> String {
        match (self, key) {
            (Space::Free(names), Key::Basis(i)) => names
                .get(*i as usize)
                .cloned()
                .unwrap_or_else(|| format!("?{i}")),
            (Space::Product(parts), Key::Slot(i, inner)) => match parts.get(*i as usize) {
                Some(p) => format!("in{}({})", i, p.key_name(inner)),
                None => format!("{key:?}"),
            },
            (Space::Tensor(parts), Key::Tuple(keys)) if parts.len() == keys.len() => {
                if keys.is_empty() {
                    return "1".into();
                }
                let inner: Vec<String> =
                    parts.iter().zip(keys).map(|(p, k)| p.key_name(k)).collect();
                format!("({})", inner.join(" ⊗ "))
            }
            (Space::Q(inner), Key::Gen(g)) => {
                let mut s = format!("<{}", inner.render(&g.point));
                for t in &g.tail {
                    s.push_str(", ");
                    s.push_str(&inner.key_name(t));
                }
                s.push('>');
                s
            }
            _ => format!("{key:?}"),
        }
    }

    /// Pretty form of a vector using this space's basis names.
    pub fn render<R: Rig>(&self, v: &Vector<R>) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = v
            .iter()
            .map(|(k, c)| {
                let name = self.key_name(k);
                if c.is_one() {
                    name
                } else {
                    format!("{c}·{name}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Free(names) => write!(f, "Free{names:?}"),
            Space::Product(p) => write!(f, "Product{p:?}"),
            Space::Tensor(p) => write!(f, "Tensor{p:?}"),
            Space::Q(inner) => write!(f, "Q({inner:?})"),
        }
    }
}

impl<R: Rig> fmt::Debug for Key<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Basis(i) => write!(f, "e{}", i + 1),
            Key::Slot(i, k) => write!(f, "in{i}({k:?})"),
            Key::Tuple(ks) => {
                if ks.is_empty() {
                    return write!(f, "1");
                }
                write!(f, "(")?;
                for (j, k) in ks.iter().enumerate() {
                    if j > 0 {
                        write!(f, " ⊗ ")?;
                    }
                    write!(f, "{k:?}")?;
                }
                write!(f, ")")
            }
            Key::Gen(g) => write!(f, "{g:?}"),
        }
    }
}

impl<R: Rig> fmt::Debug for Generator<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}", self.point)?;
        for t in &self.tail {
            write!(f, ", {t:?}")?;
        }
        write!(f, ">")
    }
}

impl<R: Rig> fmt::Debug for Vector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (j, (k, c)) in self.terms.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{k:?}")?;
            } else {
                write!(f, "{c}·{k:?}")?;
            }
        }
        Ok(())
    }
}

impl<R: Rig> fmt::Display for Vector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A vector together with the space it lives in.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModuleElement<R> {
    space: Space,
    vector: Vector<R>,
}

impl<R: Rig> ModuleElement<R> {
    pub fn new(space: Space, vector: Vector<R>) -> Result<Self> {
        if let Some(bad) = vector.keys().find(|k| !space.contains_key(*k)) {
            return Err(Error::SpaceMismatch(format!("key {bad:?} is not in {space:?}")));
        }
        Ok(ModuleElement { space, vector })
    }

    pub fn zero(space: Space) -> Self {
        ModuleElement { space, vector: Vector::zero() }
    }

    pub fn basis(space: Space, key: Key<R>) -> Result<Self> {
        Self::new(space, Vector::basis(key))
    }

    /// The `i`-th (0-based) generator of a free space.
    pub fn unit_vector(space: &Space, i: usize) -> Result<Self> {
        Self::basis(space.clone(), Key::Basis(i as u32))
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn vector(&self) -> &Vector<R> {
        &self.vector
    }

    pub fn into_vector(self) -> Vector<R> {
        self.vector
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero()
    }

    pub fn coeff(&self, key: &Key<R>) -> R {
        self.vector.coeff(key)
    }

    pub fn scaled(&self, c: &R) -> Self {
        ModuleElement { space: self.space.clone(), vector: self.vector.scaled(c) }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        same_space(&self.space, &other.space)?;
        Ok(ModuleElement { space: self.space.clone(), vector: self.vector.plus(&other.vector) })
    }
}

impl<R: Rig> fmt::Debug for ModuleElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.space.render(&self.vector))
    }
}

impl<R: Rig> fmt::Display for ModuleElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.space.render(&self.vector))
    }
}

pub(crate) fn same_space(a: &Space, b: &Space) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SpaceMismatch(format!("{a:?} vs {b:?}")))
    }
}

/// `sum c_i x_i` over a common space. An empty list has no space to live in
/// and is rejected.
pub fn linear_combine<R: Rig>(terms: &[(R, ModuleElement<R>)]) -> Result<ModuleElement<R>> {
    let space = match terms.first() {
        Some((_, x)) => x.space.clone(),
        None => return Err(Error::SpaceMismatch("empty linear combination".into())),
    };
    let mut out = Vector::zero();
    for (c, x) in terms {
        same_space(&space, &x.space)?;
        out.add_scaled(c, &x.vector);
    }
    Ok(ModuleElement { space, vector: out })
}

/// `a ⊗ b` in `Tensor(A, B)`, expanded bilinearly onto pair keys.
pub fn tensor_elem<R: Rig>(a: &ModuleElement<R>, b: &ModuleElement<R>) -> ModuleElement<R> {
    ModuleElement {
        space: Space::tensor([a.space.clone(), b.space.clone()]),
        vector: a.vector.tensor(&b.vector),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type V = Vector<BigInt>;

    fn e(i: u32) -> Key<BigInt> {
        Key::Basis(i)
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn elem(space: &Space, coeffs: &[i64]) -> ModuleElement<BigInt> {
        let v = V::from_terms(coeffs.iter().enumerate().map(|(i, c)| (e(i as u32), int(*c))));
        ModuleElement::new(space.clone(), v).unwrap()
    }

    #[test]
    fn combine_doubles() {
        let s = Space::free_dim(2);
        let e1 = elem(&s, &[1]);
        let r = linear_combine(&[(int(1), e1.clone()), (int(1), e1)]).unwrap();
        assert_eq!(r, elem(&s, &[2]));
    }

    #[test]
    fn combine_zero_scaling() {
        let s = Space::free_dim(2);
        let r = linear_combine(&[(int(0), elem(&s, &[1]))]).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn combine_mixed() {
        let s = Space::free_dim(2);
        let r = linear_combine(&[(int(2), elem(&s, &[1, 1])), (int(3), elem(&s, &[0, 1]))])
            .unwrap();
        assert_eq!(r, elem(&s, &[2, 5]));
    }

    #[test]
    fn combine_rejects_mixed_spaces() {
        let r = linear_combine(&[
            (int(1), elem(&Space::free_dim(2), &[1])),
            (int(1), elem(&Space::free_dim(3), &[1])),
        ]);
        assert!(matches!(r, Err(Error::SpaceMismatch(_))));
    }

    #[test]
    fn tensor_examples() {
        let s = Space::free_dim(3);
        let t = tensor_elem(&elem(&s, &[1]), &elem(&s, &[0, 1]));
        assert_eq!(t.coeff(&Key::pair(e(0), e(1))), int(1));
        assert_eq!(t.vector().len(), 1);

        let t = tensor_elem(&elem(&s, &[1, 1]), &elem(&s, &[0, 0, 1]));
        assert_eq!(t.coeff(&Key::pair(e(0), e(2))), int(1));
        assert_eq!(t.coeff(&Key::pair(e(1), e(2))), int(1));
        assert_eq!(t.vector().len(), 2);

        let t = tensor_elem(&elem(&s, &[2]), &elem(&s, &[0, 3]));
        assert_eq!(t.coeff(&Key::pair(e(0), e(1))), int(6));
    }

    #[test]
    fn bases_and_dims() {
        let s = Space::tensor([Space::free_dim(2), Space::product([Space::free_dim(1), Space::free_dim(2)])]);
        assert_eq!(s.dim(), Some(6));
        let b = s.basis::<BigInt>().unwrap();
        assert_eq!(b.len(), 6);
        assert!(b.iter().all(|k| s.contains_key(k)));
        assert!(!s.contains_key(&e(0)));
        assert_eq!(Space::unit().basis::<BigInt>().unwrap(), vec![Key::unit()]);
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(Space::free(["a", "a"]).is_err());
        assert!(Space::free(["a", "b"]).is_ok());
    }

    fn small_vec() -> impl Strategy<Value = [i64; 3]> {
        [-4i64..5, -4i64..5, -4i64..5]
    }

    proptest! {
        #[test]
        fn combine_is_order_independent(a in small_vec(), b in small_vec(), c in small_vec(), s in -3i64..4, t in -3i64..4) {
            let sp = Space::free_dim(3);
            let (a, b, c) = (elem(&sp, &a), elem(&sp, &b), elem(&sp, &c));
            let l = linear_combine(&[(int(s), a.clone()), (int(t), b.clone()), (int(1), c.clone())]).unwrap();
            let r = linear_combine(&[(int(1), c), (int(t), b), (int(s), a)]).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn combine_is_homogeneous(a in small_vec(), s in -3i64..4) {
            let sp = Space::free_dim(3);
            let a = elem(&sp, &a);
            prop_assert_eq!(linear_combine(&[(int(s), a.clone())]).unwrap(), a.scaled(&int(s)));
        }

        #[test]
        fn tensor_is_bilinear(a in small_vec(), a2 in small_vec(), b in small_vec()) {
            let sp = Space::free_dim(3);
            let (a, a2, b) = (elem(&sp, &a), elem(&sp, &a2), elem(&sp, &b));
            let lhs = tensor_elem(&a.plus(&a2).unwrap(), &b);
            let rhs = tensor_elem(&a, &b).plus(&tensor_elem(&a2, &b)).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = tensor_elem(&b, &a.plus(&a2).unwrap());
            let rhs = tensor_elem(&b, &a).plus(&tensor_elem(&b, &a2)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
