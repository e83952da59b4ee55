//! Sparse multivariate polynomials and polynomial maps in normal form.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{Rig, RigValue};
use crate::error::{Error, Result};

/// A polynomial in `x_1, ..., x_arity`: exponent vectors to nonzero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial<R> {
    pub arity: usize,
    pub terms: BTreeMap<Vec<u32>, R>,
}

impl<R: Rig> Polynomial<R> {
    pub fn zero(arity: usize) -> Self {
        Polynomial { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: R) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(vec![0; arity], c);
        p
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(arity: usize, i: usize) -> Result<Self> {
        if i >= arity {
            return Err(Error::IndexOutOfRange(format!("variable {} of arity {arity}", i + 1)));
        }
        let mut e = vec![0; arity];
        e[i] = 1;
        let mut p = Self::zero(arity);
        p.add_term(e, R::one());
        Ok(p)
    }

    pub fn monomial(exponents: Vec<u32>, c: R) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: R) {
        debug_assert_eq!(exponents.len(), self.arity);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityError(format!("arity {} vs {}", self.arity, other.arity)));
        }
        Ok(())
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &R) -> Self {
        let mut out = Self::zero(self.arity);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), c.clone() * d.clone());
        }
        out
    }

    pub fn times(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.arity, R::one());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.times(&base).expect("same arity");
            }
            n >>= 1;
            if n > 0 {
                base = base.times(&base).expect("same arity");
            }
        }
        acc
    }

    /// `∂/∂x_{j+1}`, with exponents mapped into the rig by repeated addition.
    pub fn partial(&self, j: usize) -> Self {
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[j] -= 1;
            out.add_term(e2, R::from_u64(u64::from(e[j])) * c.clone());
        }
        out
    }

    /// Re-embeds into `arity` variables, sending `x_{i+1}` to `x_{map[i]+1}`.
    pub fn reindex(&self, arity: usize, map: &[usize]) -> Self {
        let mut out = Self::zero(arity);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; arity];
            for (i, k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Substitutes `args[i]` for `x_{i+1}`; all arguments share one arity.
    pub fn substitute(&self, arity: usize, args: &[Polynomial<R>]) -> Result<Self> {
        if args.len() != self.arity {
            return Err(Error::ArityError(format!("{} arguments for arity {}", args.len(), self.arity)));
        }
        if let Some(a) = args.iter().find(|a| a.arity != arity) {
            return Err(Error::ArityError(format!("argument of arity {} where {arity} expected", a.arity)));
        }
        let mut powers: Vec<Vec<Polynomial<R>>> = args.iter().map(|a| vec![Self::constant(arity, R::one()), a.clone()]).collect();
        let mut out = Self::zero(arity);
        for (e, c) in &self.terms {
            let mut term = Self::constant(arity, c.clone());
            for (i, k) in e.iter().enumerate() {
                let k = *k as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap().times(&args[i])?;
                    powers[i].push(next);
                }
                if k > 0 {
                    term = term.times(&powers[i][k])?;
                }
            }
            out = out.plus(&term)?;
        }
        Ok(out)
    }

    pub fn eval(&self, x: &[R]) -> R {
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, k) in x.iter().zip(e) {
                for _ in 0..*k {
                    t = t * xi.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Renders with variable names from `name`; terms by descending degree.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Vec<u32>, &R)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let (neg, mag) = match negative_magnitude(c) {
                Some(m) => (true, m),
                None => (false, c.clone()),
            };
            if i == 0 {
                if neg {
                    out.push_str("0 - ");
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let constant = e.iter().all(|k| *k == 0);
            if constant || !mag.is_one() {
                factors.push(mag.to_string());
            }
            for (j, k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(name(j)),
                    k => factors.push(format!("{}^{k}", name(j))),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// `Some(|c|)` when `c` is a negative integer or rational.
pub fn negative_magnitude<R: Rig>(c: &R) -> Option<R> {
    let negative = match c.to_value() {
        RigValue::Int(n) => n < num_bigint::BigInt::zero(),
        RigValue::Rat(q) => q < num_rational::BigRational::zero(),
        _ => false,
    };
    if negative {
        c.try_neg()
    } else {
        None
    }
}

/// Default variable names `x1, x2, ...`.
pub fn x_name(i: usize) -> String {
    format!("x{}", i + 1)
}

impl<R: Rig> fmt::Debug for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&x_name))
    }
}

impl<R: Rig> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&x_name))
    }
}

/// A polynomial map `k^dom → k^(comps.len())`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMap<R> {
    pub dom: usize,
    pub comps: Vec<Polynomial<R>>,
}

impl<R: Rig> PolyMap<R> {
    pub fn new(dom: usize, comps: Vec<Polynomial<R>>) -> Result<Self> {
        if let Some(c) = comps.iter().find(|c| c.arity != dom) {
            return Err(Error::ArityError(format!("component of arity {} in a map from {dom}", c.arity)));
        }
        Ok(PolyMap { dom, comps })
    }

    pub fn cod(&self) -> usize {
        self.comps.len()
    }

    pub fn identity(n: usize) -> Self {
        PolyMap { dom: n, comps: (0..n).map(|i| Polynomial::var(n, i).expect("in range")).collect() }
    }

    pub fn zero(dom: usize, cod: usize) -> Self {
        PolyMap { dom, comps: vec![Polynomial::zero(dom); cod] }
    }

    /// `self ∘ f` by substitution.
    pub fn substitute(&self, f: &PolyMap<R>) -> Result<PolyMap<R>> {
        if f.cod() != self.dom {
            return Err(Error::ArityError(format!(
                "cannot substitute a map into {} variables where {} are expected",
                f.cod(),
                self.dom
            )));
        }
        let comps = self.comps.iter().map(|g| g.substitute(f.dom, &f.comps)).collect::<Result<_>>()?;
        Ok(PolyMap { dom: f.dom, comps })
    }

    pub fn plus(&self, g: &PolyMap<R>) -> Result<PolyMap<R>> {
        if self.dom != g.dom || self.cod() != g.cod() {
            return Err(Error::ArityError("sum of maps of different shapes".into()));
        }
        let comps = self.comps.iter().zip(&g.comps).map(|(a, b)| a.plus(b)).collect::<Result<_>>()?;
        Ok(PolyMap { dom: self.dom, comps })
    }

    pub fn scaled(&self, c: &R) -> PolyMap<R> {
        PolyMap { dom: self.dom, comps: self.comps.iter().map(|p| p.scaled(c)).collect() }
    }

    /// Total derivative `Df(x, v) = (Σ_j ∂f_i/∂x_j v_j)_i`.
    pub fn derivative(&self) -> PolyMap<R> {
        let n = self.dom;
        let lift: Vec<usize> = (0..n).collect();
        let comps = self
            .comps
            .iter()
            .map(|p| {
                let mut acc = Polynomial::zero(2 * n);
                for j in 0..n {
                    let d = p.partial(j).reindex(2 * n, &lift);
                    let v = Polynomial::var(2 * n, n + j).expect("in range");
                    acc = acc.plus(&d.times(&v).expect("same arity")).expect("same arity");
                }
                acc
            })
            .collect();
        PolyMap { dom: 2 * n, comps }
    }

    pub fn eval(&self, x: &[R]) -> Vec<R> {
        self.comps.iter().map(|p| p.eval(x)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    /// Whether every monomial has total degree exactly 1.
    pub fn is_linear_syntactic(&self) -> bool {
        self.comps.iter().all(|p| p.terms.keys().all(|e| e.iter().sum::<u32>() == 1))
    }

    /// Maximum total degree, 0 for the zero map.
    pub fn degree(&self) -> u32 {
        self.comps.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        let parts: Vec<String> = self.comps.iter().map(|p| p.render(name)).collect();
        format!("[{}]", parts.join("; "))
    }
}

impl<R: Rig> fmt::Debug for PolyMap<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&x_name))
    }
}

impl<R: Rig> fmt::Display for PolyMap<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&x_name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Zm;
    use num_bigint::BigInt;

    type P = Polynomial<BigInt>;

    fn x(arity: usize, i: usize) -> P {
        P::var(arity, i).unwrap()
    }

    fn c(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn substitution_expands() {
        let g = PolyMap::new(1, vec![x(1, 0).pow(2)]).unwrap();
        let f = PolyMap::new(1, vec![x(1, 0).plus(&P::constant(1, c(1))).unwrap()]).unwrap();
        let h = g.substitute(&f).unwrap();
        let want = x(1, 0).pow(2).plus(&x(1, 0).scaled(&c(2))).unwrap().plus(&P::constant(1, c(1))).unwrap();
        assert_eq!(h.comps[0], want);
        assert_eq!(f.substitute(&PolyMap::identity(1)).unwrap(), f);
        assert_eq!(PolyMap::identity(1).substitute(&f).unwrap(), f);
    }

    #[test]
    fn derivative_examples() {
        let f = PolyMap::new(1, vec![x(1, 0).pow(2)]).unwrap();
        assert_eq!(f.derivative().comps[0], x(2, 0).times(&x(2, 1)).unwrap().scaled(&c(2)));
        let g = PolyMap::new(2, vec![x(2, 0).times(&x(2, 1)).unwrap()]).unwrap();
        let want = x(4, 2).times(&x(4, 1)).unwrap().plus(&x(4, 0).times(&x(4, 3)).unwrap()).unwrap();
        assert_eq!(g.derivative().comps[0], want);
        assert!(PolyMap::new(1, vec![P::constant(1, c(5))]).unwrap().derivative().is_zero());
    }

    #[test]
    fn multiplicities_reduce_mod_m() {
        let p = Polynomial::<Zm<2>>::var(1, 0).unwrap().pow(2);
        assert!(p.partial(0).is_zero());
        let q = Polynomial::<Zm<3>>::var(1, 0).unwrap().pow(2);
        assert_eq!(q.partial(0), Polynomial::var(1, 0).unwrap().scaled(&Zm::new(2)));
    }

    #[test]
    fn rendering() {
        let p = x(2, 0).pow(2).scaled(&c(3)).plus(&x(2, 1).scaled(&c(-1))).unwrap();
        assert_eq!(p.to_string(), "3*x1^2 - x2");
        assert_eq!(x(1, 0).scaled(&c(-2)).to_string(), "0 - 2*x1");
        assert_eq!(P::constant(1, c(1)).to_string(), "1");
        assert_eq!(P::zero(1).to_string(), "0");
    }

    #[test]
    fn eval_and_pow() {
        let p = x(2, 0).plus(&x(2, 1)).unwrap().pow(3);
        assert_eq!(p.eval(&[c(1), c(2)]), c(27));
        assert_eq!(p.terms.len(), 4);
    }
}
