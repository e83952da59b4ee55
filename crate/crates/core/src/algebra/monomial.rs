//! Commutative monomials: sorted multisets of generators of a free space.

use std::fmt;

use super::rig::Rig;
use super::vector::{same_space, Key, Space};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    space: Space,
    items: Vec<u32>,
}

impl Monomial {
    /// The empty monomial, of degree 0.
    pub fn one(space: &Space) -> Result<Self> {
        Self::from_indices(space, Vec::new())
    }

    pub fn from_indices(space: &Space, mut items: Vec<u32>) -> Result<Self> {
        let dim = match space {
            Space::Free(names) => names.len(),
            other => {
                return Err(Error::SpaceMismatch(format!("monomials need a free space, got {other:?}")))
            }
        };
        if let Some(bad) = items.iter().find(|i| **i as usize >= dim) {
            return Err(Error::IndexOutOfRange(format!("generator {bad} in a space of rank {dim}")));
        }
        items.sort_unstable();
        Ok(Monomial { space: space.clone(), items })
    }

    pub fn from_names(space: &Space, names: &[&str]) -> Result<Self> {
        let Space::Free(basis) = space else {
            return Err(Error::SpaceMismatch(format!("monomials need a free space, got {space:?}")));
        };
        let items = names
            .iter()
            .map(|n| {
                basis
                    .iter()
                    .position(|b| b == n)
                    .map(|i| i as u32)
                    .ok_or_else(|| Error::SpaceMismatch(format!("`{n}` is not a generator")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(space, items)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.items.len()
    }

    pub fn indices(&self) -> &[u32] {
        &self.items
    }

    pub fn names(&self) -> Vec<String> {
        match &self.space {
            Space::Free(basis) => self.items.iter().map(|i| basis[*i as usize].clone()).collect(),
            _ => unreachable!("monomials live over free spaces"),
        }
    }

    /// The tail keys this monomial stands for inside a Q-generator.
    pub fn keys<R: Rig>(&self) -> Vec<Key<R>> {
        self.items.iter().map(|i| Key::Basis(*i)).collect()
    }
}

/// Multiset union.
pub fn monomial_mul(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    same_space(&a.space, &b.space)?;
    let mut items = Vec::with_capacity(a.items.len() + b.items.len());
    items.extend_from_slice(&a.items);
    items.extend_from_slice(&b.items);
    items.sort_unstable();
    Ok(Monomial { space: a.space.clone(), items })
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp() -> Space {
        Space::free(["a", "b", "c"]).unwrap()
    }

    fn m(names: &[&str]) -> Monomial {
        Monomial::from_names(&sp(), names).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(monomial_mul(&m(&[]), &m(&["a"])).unwrap(), m(&["a"]));
        assert_eq!(monomial_mul(&m(&["a"]), &m(&["b"])).unwrap(), m(&["a", "b"]));
        let p = monomial_mul(&m(&["a", "a"]), &m(&["a", "b"])).unwrap();
        assert_eq!(p.names(), ["a", "a", "a", "b"]);
    }

    #[test]
    fn stored_sorted() {
        assert_eq!(m(&["c", "a", "b"]).indices(), &[0, 1, 2]);
    }

    #[test]
    fn mismatched_spaces() {
        let other = Monomial::one(&Space::free_dim(3)).unwrap();
        assert!(matches!(monomial_mul(&m(&["a"]), &other), Err(Error::SpaceMismatch(_))));
        assert!(Monomial::from_names(&sp(), &["z"]).is_err());
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..3, 0..5).prop_map(|v| Monomial::from_indices(&sp(), v).unwrap())
    }

    proptest! {
        #[test]
        fn commutative_monoid(a in mono(), b in mono(), c in mono()) {
            let one = Monomial::one(&sp()).unwrap();
            prop_assert_eq!(monomial_mul(&a, &b).unwrap(), monomial_mul(&b, &a).unwrap());
            prop_assert_eq!(
                monomial_mul(&monomial_mul(&a, &b).unwrap(), &c).unwrap(),
                monomial_mul(&a, &monomial_mul(&b, &c).unwrap()).unwrap()
            );
            prop_assert_eq!(monomial_mul(&a, &one).unwrap(), a);
        }
    }
}
