//! The co-Kleisli side of the comparison with `Q`: a family
//! `(f^(n))` over finite carriers is the same data as a linear map
//! `f̂ : QA → B`, with `f̂<x0; e_i1, ..., e_in> = f^(n)(x0, e_i1, ..., e_in)`.

use std::cell::RefCell;
use std::collections::BTreeMap;

use rand::Rng;

use super::{Faa, FaaMap};
use crate::algebra::{FiniteRig, Generator, Key, Space, Vector};
use crate::error::{Error, Result};
use crate::poly::{FinFn, FinMap};
use crate::qmodality::laws::generators;
use crate::qmodality::Modality;

/// A linear map `QA → B` tabulated on generators of degree `<= bound`.
#[derive(Clone, PartialEq, Eq)]
pub struct KleisliMap<R> {
    pub dom: usize,
    pub cod: usize,
    pub bound: usize,
    pub table: BTreeMap<Key<R>, Vec<R>>,
}

impl<R: FiniteRig> std::fmt::Debug for KleisliMap<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "kleisli {}⇝{} {{", self.dom, self.cod)?;
        let mut first = true;
        for (k, v) in &self.table {
            if v.iter().all(|c| c.is_zero()) {
                continue;
            }
            let vals: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            write!(f, "{}{k:?} ↦ ({})", if first { "" } else { ", " }, vals.join(", "))?;
            first = false;
        }
        write!(f, "}}")
    }
}

pub fn point_vector<R: FiniteRig>(x: &[R]) -> Vector<R> {
    Vector::from_terms(x.iter().enumerate().map(|(i, c)| (Key::Basis(i as u32), c.clone())))
}

pub fn vector_point<R: FiniteRig>(v: &Vector<R>, dim: usize) -> Result<Vec<R>> {
    let mut out = vec![R::zero(); dim];
    for (k, c) in v.iter() {
        match k {
            Key::Basis(i) if (*i as usize) < dim => out[*i as usize] = c.clone(),
            _ => return Err(Error::SpaceMismatch(format!("{k:?} is not a coordinate of a {dim}-dimensional space"))),
        }
    }
    Ok(out)
}

fn basis_index<R>(k: &Key<R>) -> Result<usize> {
    match k {
        Key::Basis(i) => Ok(*i as usize),
        _ => Err(Error::SpaceMismatch("expected a coordinate key".into())),
    }
}

/// Generators `<x0; e_i1, ..., e_in>` of `Q(k^dim)` with `n <= bound`.
pub fn generator_keys<R: FiniteRig>(dim: usize, bound: usize) -> Vec<Key<R>> {
    generators::<R>(&Space::free_dim(dim), bound)
        .into_iter()
        .map(|(_, v)| v.keys().next().expect("basis vector").clone())
        .collect()
}

impl<R: FiniteRig> KleisliMap<R> {
    /// Tabulates a family of finite maps.
    pub fn from_family(f: &FaaMap<FinMap<R>>, bound: usize) -> Result<Self> {
        let mut table = BTreeMap::new();
        for key in generator_keys::<R>(f.dom, bound) {
            let g = key.as_gen().expect("generator key");
            let n = g.degree();
            let value = match f.family.get(n) {
                None => vec![R::zero(); f.cod],
                Some(fun) => {
                    let mut x = vector_point(&g.point, f.dom)?;
                    for t in &g.tail {
                        let mut e = vec![R::zero(); f.dom];
                        e[basis_index(t)?] = R::one();
                        x.extend(e);
                    }
                    fun.eval(&x)
                }
            };
            table.insert(key, value);
        }
        Ok(KleisliMap { dom: f.dom, cod: f.cod, bound, table })
    }

    /// Builds a table from a function of the point and the sorted tail indices.
    pub fn from_fn(dom: usize, cod: usize, bound: usize, mut f: impl FnMut(&[R], &[usize]) -> Vec<R>) -> Result<Self> {
        let mut table = BTreeMap::new();
        for key in generator_keys::<R>(dom, bound) {
            let g = key.as_gen().expect("generator key");
            let x = vector_point(&g.point, dom)?;
            let tail = g.tail.iter().map(basis_index).collect::<Result<Vec<_>>>()?;
            let value = f(&x, &tail);
            if value.len() != cod {
                return Err(Error::ArityError(format!("table value of length {} for codomain {cod}", value.len())));
            }
            table.insert(key, value);
        }
        Ok(KleisliMap { dom, cod, bound, table })
    }

    fn lookup(&self, g: &Generator<R>) -> Result<&Vec<R>> {
        if g.degree() > self.bound {
            return Err(Error::DegreeBoundExceeded(format!("degree {} over bound {}", g.degree(), self.bound)));
        }
        let key = Generator::new(g.point.clone(), g.tail.clone()).key();
        self.table
            .get(&key)
            .ok_or_else(|| Error::SpaceMismatch(format!("{key:?} is not a generator of Q(k^{})", self.dom)))
    }

    /// `f̂` applied to an element of `QA`.
    pub fn apply(&self, q: &Vector<R>) -> Result<Vec<R>> {
        let mut out = vec![R::zero(); self.cod];
        for (k, c) in q.iter() {
            let g = k.as_gen().ok_or_else(|| Error::SpaceMismatch(format!("{k:?} is not a Q-generator")))?;
            for (o, v) in out.iter_mut().zip(self.lookup(g)?) {
                *o = o.clone() + c.clone() * v.clone();
            }
        }
        Ok(out)
    }

    /// Expands the table back into a family, multilinearly in the tail.
    pub fn to_family(&self, faa: &Faa<FinFn<R>>) -> Result<FaaMap<FinMap<R>>> {
        let (a, b) = (self.dom, self.cod);
        let mut family = Vec::new();
        for n in 0..=self.bound {
            let fun = FinMap::from_fn(a * (n + 1), b, faa.base.limit, |x: &[R]| {
                let point = point_vector(&x[..a]);
                let mut out = vec![R::zero(); b];
                let mut idx = vec![0usize; n];
                loop {
                    let coeff = idx
                        .iter()
                        .enumerate()
                        .fold(R::one(), |acc, (j, i)| acc * x[a * (j + 1) + i].clone());
                    if !coeff.is_zero() {
                        let tail = idx.iter().map(|i| Key::Basis(*i as u32)).collect();
                        let v = self.lookup(&Generator::new(point.clone(), tail)).expect("degree within bound");
                        for (o, c) in out.iter_mut().zip(v) {
                            *o = o.clone() + coeff.clone() * c.clone();
                        }
                    }
                    // Odometer over [a]^n.
                    let mut j = 0;
                    while j < n {
                        idx[j] += 1;
                        if idx[j] < a {
                            break;
                        }
                        idx[j] = 0;
                        j += 1;
                    }
                    if j == n {
                        break;
                    }
                }
                out
            })?;
            family.push(fun);
        }
        faa.family(a, b, family)
    }

    pub fn is_zero(&self) -> bool {
        self.table.values().all(|v| v.iter().all(|c| c.is_zero()))
    }
}

/// A random table with values only in degrees `<= support`.
pub fn random_table<R: FiniteRig>(
    rng: &mut impl Rng,
    dom: usize,
    cod: usize,
    support: usize,
) -> Result<KleisliMap<R>> {
    let elems = R::elements();
    KleisliMap::from_fn(dom, cod, support, |_, _| (0..cod).map(|_| elems[rng.gen_range(0..elems.len())].clone()).collect())
}

/// Every table `k^dom ⇝ k^cod` supported in degrees `<= support`.
pub fn all_tables<R: FiniteRig>(dom: usize, cod: usize, support: usize) -> Result<Vec<KleisliMap<R>>> {
    let keys = generator_keys::<R>(dom, support);
    let slots = keys.len() * cod;
    let q = R::order();
    let total = q.checked_pow(slots as u32).filter(|t| *t <= 1 << 20).ok_or_else(|| {
        Error::SizeLimit(format!("{q}^{slots} tables"))
    })?;
    let elems = R::elements();
    let mut out = Vec::with_capacity(total as usize);
    for mut code in 0..total {
        let mut table = BTreeMap::new();
        for k in &keys {
            let v: Vec<R> = (0..cod)
                .map(|_| {
                    let c = elems[(code % q) as usize].clone();
                    code /= q;
                    c
                })
                .collect();
            table.insert(k.clone(), v);
        }
        out.push(KleisliMap { dom, cod, bound: support, table });
    }
    Ok(out)
}

/// `ĝ ∘ Q(f̂) ∘ δ`, tabulated up to `bound`.
pub fn kleisli_compose<R: FiniteRig>(
    q: &Modality,
    g: &KleisliMap<R>,
    f: &KleisliMap<R>,
    bound: usize,
) -> Result<KleisliMap<R>> {
    if f.cod != g.dom {
        return Err(Error::ObjectMismatch(format!("compose {}⇝{} after {}⇝{}", g.dom, g.cod, f.dom, f.cod)));
    }
    let failure = RefCell::new(None);
    let f_hat = |k: &Key<R>| -> Vector<R> {
        let g = k.as_gen().expect("generator key");
        match f.lookup(g) {
            Ok(v) => point_vector(v),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Vector::zero()
            }
        }
    };
    let mut table = BTreeMap::new();
    for key in generator_keys::<R>(f.dom, bound) {
        let pushed = q.q_map(&f_hat, &q.comult(&Vector::basis(key.clone())));
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        table.insert(key, g.apply(&pushed)?);
    }
    Ok(KleisliMap { dom: f.dom, cod: g.cod, bound, table })
}

/// `f̂ ∘ d ∘ (1 ⊗ ε) ∘ χ`, tabulated up to `bound`; coordinate `i < a` of
/// `A × A` is the first factor, `a + i` the second.
pub fn kleisli_d<R: FiniteRig>(q: &Modality, f: &KleisliMap<R>, bound: usize) -> Result<KleisliMap<R>> {
    let a = f.dom as u32;
    let split = |k: &Key<R>| match k {
        Key::Basis(j) => Key::Slot(j / a, Box::new(Key::Basis(j % a))),
        _ => unreachable!("flat coordinate keys"),
    };
    let mut table = BTreeMap::new();
    for key in generator_keys::<R>(2 * f.dom, bound) {
        let g = key.as_gen().expect("generator key");
        let slotted = Generator::new(g.point.relabel(split), g.tail.iter().map(split).collect()).key();
        let mut out = vec![R::zero(); f.cod];
        for (l, r, c) in crate::qmodality::pairs(&q.storage(&Vector::basis(slotted))) {
            let y = q.counit(&Vector::basis(r.clone()));
            let v = f.apply(&q.deriving(&Vector::basis(l.clone()), &y))?;
            for (o, x) in out.iter_mut().zip(v) {
                *o = o.clone() + c.clone() * x;
            }
        }
        table.insert(key, out);
    }
    Ok(KleisliMap { dom: 2 * f.dom, cod: f.cod, bound, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdc::{CartesianDifferentialCategory, LeftLinearCategory};
    use crate::poly::{parse_poly_map, table_from_poly};
    use crate::Z2;
    use rand::SeedableRng;

    fn faa() -> Faa<FinFn<Z2>> {
        Faa::new(FinFn::default())
    }

    #[test]
    fn table_round_trip() {
        let f = parse_poly_map::<Z2>("[x1^2*x2 + x1]", 2).unwrap();
        let base = FinFn::<Z2>::default();
        let fam = Faa::new(crate::poly::PolyCat::<Z2>::default()).coalgebra_upto(&f, 3);
        let fam: Vec<_> = fam.unwrap().family.iter().map(|p| table_from_poly(p, base.limit).unwrap()).collect();
        let fam = faa().family(2, 1, fam).unwrap();
        let k = KleisliMap::from_family(&fam, 3).unwrap();
        assert!(faa().equal(&k.to_family(&faa()).unwrap(), &fam).unwrap());
    }

    #[test]
    fn generator_counts() {
        assert_eq!(generator_keys::<Z2>(1, 2).len(), 6);
        assert_eq!(generator_keys::<Z2>(2, 4).len(), 60);
        assert_eq!(all_tables::<Z2>(1, 1, 2).unwrap().len(), 64);
    }

    #[test]
    fn kleisli_agrees_on_random_families() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let q = Modality::default();
        for _ in 0..20 {
            let f = random_table::<Z2>(&mut rng, 2, 1, 2).unwrap().to_family(&faa()).unwrap();
            let g = random_table::<Z2>(&mut rng, 1, 2, 2).unwrap().to_family(&faa()).unwrap();
            let gf = faa().compose(&g, &f).unwrap();
            let kf = KleisliMap::from_family(&f, 4).unwrap();
            let kg = KleisliMap::from_family(&g, 4).unwrap();
            assert_eq!(kleisli_compose(&q, &kg, &kf, 4).unwrap(), KleisliMap::from_family(&gf, 4).unwrap());
            let df = faa().derivative(&f).unwrap();
            let kf = KleisliMap::from_family(&f, 5).unwrap();
            assert_eq!(kleisli_d(&q, &kf, 4).unwrap(), KleisliMap::from_family(&df, 4).unwrap());
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        let t = random_table::<Z2>(&mut rand_chacha::ChaCha8Rng::seed_from_u64(1), 1, 1, 1).unwrap();
        let big = crate::qmodality::gen(Vector::zero(), vec![Key::Basis(0); 2]);
        assert!(matches!(t.apply(&big), Err(Error::DegreeBoundExceeded(_))));
    }
}
