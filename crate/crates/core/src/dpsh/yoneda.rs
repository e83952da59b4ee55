//! Faà di Bruno maps between representables, the Yoneda embedding, the
//! classification of Faà di Bruno sequences by `Q(yA)`, and the passage
//! between first-order differentials and higher-order actions.

use std::collections::BTreeSet;

use super::{all_vectors, matrix_vector, proj, stack, vector_matrix, DifferentialPresheaf, Presheaf, PresheafConfig};
use crate::algebra::{FiniteRig, Key, Vector};
use crate::cdc::{all_matrices, blocks, nth_derivative, CartesianDifferentialCategory, LeftLinearCategory, Mat, Matrix};
use crate::combinat::partitions;
use crate::error::{Error, Result};
use crate::faa::Faa;
use crate::qmodality::laws::multisets;
use crate::qmodality::Modality;
use crate::report::{run_cases, Check, Report};

/// A Faà di Bruno map `yA ⇝ yB`, natural by construction:
/// `α_X^(n)(g_0, ..., g_n) = f^(n) ∘ <g_0, ..., g_n>`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FaaPresheafMap<R> {
    pub dom: usize,
    pub cod: usize,
    pub family: Vec<Matrix<R>>,
}

impl<R: FiniteRig> std::fmt::Debug for FaaPresheafMap<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "y-map {}⇝{} {:?}", self.dom, self.cod, self.family)
    }
}

impl<R: FiniteRig> FaaPresheafMap<R> {
    /// `α_X^(n)` at `g_0, ..., g_n : X → A`.
    pub fn at(&self, n: usize, gs: &[Matrix<R>]) -> Result<Matrix<R>> {
        if gs.len() != n + 1 || gs.iter().any(|g| g.cod != self.dom || g.dom != gs[0].dom) {
            return Err(Error::ArityError(format!("component {n} needs {} maps into {}", n + 1, self.dom)));
        }
        let x = gs[0].dom;
        match self.family.get(n) {
            Some(f) => f.mul(&stack(x, gs)?),
            None => Ok(Matrix::zero(x, self.cod)),
        }
    }
}

/// `y f`, whose components are the higher derivatives of `f`.
pub fn yoneda_map<R: FiniteRig>(f: &Matrix<R>) -> Result<FaaPresheafMap<R>> {
    let fam = Faa::new(Mat::<R>::default()).coalgebra(f, 8)?;
    Ok(FaaPresheafMap { dom: f.dom, cod: f.cod, family: fam.family })
}

/// `(β ∘ α)_X^(n)(g)` by the pointwise Faà di Bruno formula.
pub fn compose_at<R: FiniteRig>(
    beta: &FaaPresheafMap<R>,
    alpha: &FaaPresheafMap<R>,
    n: usize,
    gs: &[Matrix<R>],
) -> Result<Matrix<R>> {
    let x = gs[0].dom;
    let mut out = Matrix::zero(x, beta.cod);
    for p in partitions(n) {
        let mut args = vec![alpha.at(0, &gs[..1])?];
        for b in &p.blocks {
            let picked: Vec<Matrix<R>> =
                std::iter::once(gs[0].clone()).chain(b.iter().map(|i| gs[*i].clone())).collect();
            args.push(alpha.at(b.len(), &picked)?);
        }
        out = out.plus(&beta.at(p.len(), &args)?)?;
    }
    Ok(out)
}

fn tuples<R: FiniteRig>(ms: &[Matrix<R>], len: usize) -> Vec<Vec<Matrix<R>>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t: Vec<Matrix<R>>| {
                ms.iter().map(move |m| {
                    let mut u = t.clone();
                    u.push(m.clone());
                    u
                })
            })
            .collect();
    }
    out
}

/// First failing naturality square `α_W(g ∘ h) = α_X(g) ∘ h`.
pub fn naturality_witness<R: FiniteRig>(alpha: &FaaPresheafMap<R>, max_n: usize, probe_dim: usize) -> Result<Option<String>> {
    for x in 1..=probe_dim {
        for w in 1..=probe_dim {
            let hs = all_matrices::<R>(w, x);
            for n in 0..=max_n {
                for gs in tuples(&all_matrices::<R>(x, alpha.dom), n + 1) {
                    let top = alpha.at(n, &gs)?;
                    for h in &hs {
                        let moved: Vec<Matrix<R>> = gs.iter().map(|g| g.mul(h)).collect::<Result<_>>()?;
                        if alpha.at(n, &moved)? != top.mul(h)? {
                            return Ok(Some(format!("n = {n}, g = {gs:?}, h = {h:?}")));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// First failure of `D(α^(n)(ξ)) = α^(n+1)(ξπ0, Dξ_0) + Σ_i α^(n)(..., Dξ_i, ...)`.
pub fn differential_witness<R: FiniteRig>(alpha: &FaaPresheafMap<R>, max_n: usize, probe_dim: usize) -> Result<Option<String>> {
    let cat = Mat::<R>::default();
    for x in 1..=probe_dim {
        let p0 = proj::<R>(x, 2, 0);
        for n in 0..=max_n {
            for xis in tuples(&all_matrices::<R>(x, alpha.dom), n + 1) {
                let lhs = cat.derivative(&alpha.at(n, &xis)?)?;
                let moved: Vec<Matrix<R>> = xis.iter().map(|g| g.mul(&p0)).collect::<Result<_>>()?;
                let mut first = moved.clone();
                first.push(cat.derivative(&xis[0])?);
                let mut rhs = alpha.at(n + 1, &first)?;
                for i in 1..=n {
                    let mut args = moved.clone();
                    args[i] = cat.derivative(&xis[i])?;
                    rhs = rhs.plus(&alpha.at(n, &args)?)?;
                }
                if lhs != rhs {
                    return Ok(Some(format!("n = {n}, ξ = {xis:?}: {lhs:?} vs {rhs:?}")));
                }
            }
        }
    }
    Ok(None)
}

/// Bounds for [`full_fidelity`].
#[derive(Debug, Clone, Copy)]
pub struct FidelityConfig {
    /// Families are enumerated in components `0..=max_n`.
    pub max_n: usize,
    /// Stages at which the differential condition is tested.
    pub probe_dim: usize,
    /// Stages at which naturality squares are tested.
    pub naturality_dim: usize,
}

impl Default for FidelityConfig {
    fn default() -> Self {
        FidelityConfig { max_n: 2, probe_dim: 2, naturality_dim: 1 }
    }
}

const FAMILY_LIMIT: usize = 1 << 16;

/// Enumerates every Faà di Bruno map `yA ⇝ yB` supported in components
/// `<= max_n` and checks they are exactly the maps `yf`.
pub fn full_fidelity<R: FiniteRig>(a: usize, b: usize, cfg: &FidelityConfig) -> Result<Report> {
    let cat = Mat::<R>::default();
    let mut report = Report::new("yoneda")
        .with_config("dom", a)
        .with_config("cod", b)
        .with_config("max_n", cfg.max_n)
        .with_config("probe_dim", cfg.probe_dim);

    let mut candidates = Vec::new();
    let mut considered = 0usize;
    for n in 0..=cfg.max_n {
        let all = all_matrices::<R>(a * (n + 1), b);
        considered += all.len();
        let mut keep = Vec::new();
        for m in all {
            if cat.is_symmetric_multilinear(&m, a, n)? {
                keep.push(m);
            }
        }
        report = report.with_config(&format!("multilinear_candidates_{n}"), keep.len());
        candidates.push(keep);
    }
    let total: usize = candidates.iter().map(|c| c.len()).product();
    if total > FAMILY_LIMIT {
        return Err(Error::SizeLimit(format!("{total} candidate families")));
    }
    let mut families: Vec<Vec<Matrix<R>>> = vec![Vec::new()];
    for c in &candidates {
        families = families
            .into_iter()
            .flat_map(|f| {
                c.iter().map(move |m| {
                    let mut g = f.clone();
                    g.push(m.clone());
                    g
                })
            })
            .collect();
    }
    let maps: Vec<FaaPresheafMap<R>> = families
        .into_iter()
        .map(|mut family| {
            while family.last().is_some_and(|m| m.data.iter().all(|c| c.is_zero())) {
                family.pop();
            }
            FaaPresheafMap { dom: a, cod: b, family }
        })
        .collect();

    use rayon::prelude::*;
    let natural: Vec<&FaaPresheafMap<R>> = maps
        .par_iter()
        .filter(|m| matches!(naturality_witness(m, cfg.max_n, cfg.naturality_dim), Ok(None)))
        .collect();
    let survivors: Vec<&FaaPresheafMap<R>> = natural
        .par_iter()
        .copied()
        .filter(|m| matches!(differential_witness(m, cfg.max_n, cfg.probe_dim), Ok(None)))
        .collect();
    report = report
        .with_config("component_matrices", considered)
        .with_config("families", maps.len())
        .with_config("natural", natural.len())
        .with_config("eliminated_by_differential", natural.len() - survivors.len())
        .with_config("faa_maps", survivors.len());
    report.push(Check::pass("naturality of enumerated families", maps.len() as u64));

    let homs = all_matrices::<R>(a, b);
    let images: Vec<FaaPresheafMap<R>> = homs.iter().map(yoneda_map).collect::<Result<_>>()?;
    let image_set: BTreeSet<&FaaPresheafMap<R>> = images.iter().collect();
    let survivor_set: BTreeSet<&FaaPresheafMap<R>> = survivors.iter().copied().collect();
    report = report.with_config("hom_size", homs.len());

    let extra = survivor_set.difference(&image_set).next();
    let missing = image_set.difference(&survivor_set).next();
    report.push(match (extra, missing) {
        (None, None) if survivors.len() == homs.len() => Check::pass("bijection with base morphisms", survivors.len() as u64),
        (Some(e), _) => Check::fail("bijection with base morphisms", survivors.len() as u64, format!("{e:?} is not y f for any f")),
        (_, Some(m)) => Check::fail("bijection with base morphisms", survivors.len() as u64, format!("{m:?} was eliminated")),
        _ => Check::fail("bijection with base morphisms", survivors.len() as u64, "duplicate families"),
    });

    let pairs: Vec<(usize, usize)> = (0..homs.len()).flat_map(|i| (0..homs.len()).map(move |j| (i, j))).collect();
    report.push(run_cases("injectivity: y f at id recovers f", &pairs, |(i, j)| {
        let at_id = |k: usize| images[k].at(0, &[Matrix::identity(a)]);
        match (at_id(*i), at_id(*j)) {
            (Ok(fi), Ok(_)) if fi != homs[*i] => Some(format!("y f at id gave {fi:?} for f = {:?}", homs[*i])),
            (Ok(fi), Ok(fj)) => ((i != j) == (fi == fj)).then(|| format!("{:?} and {:?} collide", homs[*i], homs[*j])),
            (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
        }
    }));

    report.push(run_cases("each f^(n) is the nth derivative of f^(0)", &survivors, |m| {
        (0..=cfg.max_n).find_map(|n| {
            let f0 = m.family.first().cloned().unwrap_or_else(|| Matrix::zero(a, b));
            let want = nth_derivative(&cat, &f0, n).ok()?;
            let got = m.family.get(n).cloned().unwrap_or_else(|| Matrix::zero(a * (n + 1), b));
            (want != got).then(|| format!("component {n} of {m:?}"))
        })
    }));
    Ok(report)
}

/// Checks `y(g ∘ f) = y g ∘ y f` pointwise, and unitality.
pub fn check_functoriality<R: FiniteRig>(dims: &[usize], max_n: usize, probe_dim: usize) -> Result<Report> {
    let mut report = Report::new("yoneda-functor").with_config("max_n", max_n);
    let mut cases = Vec::new();
    for &a in dims {
        for &b in dims {
            for &c in dims {
                for f in all_matrices::<R>(a, b) {
                    for g in all_matrices::<R>(b, c) {
                        cases.push((f.clone(), g));
                    }
                }
            }
        }
    }
    report.push(run_cases("y(g ∘ f) = y g ∘ y f", &cases, |(f, g)| {
        (|| -> Result<Option<String>> {
            let (yf, yg, ygf) = (yoneda_map(f)?, yoneda_map(g)?, yoneda_map(&g.mul(f)?)?);
            let id = yoneda_map(&Matrix::identity(f.dom))?;
            for x in 1..=probe_dim {
                for n in 0..=max_n {
                    for gs in tuples(&all_matrices::<R>(x, f.dom), n + 1) {
                        let lhs = compose_at(&yg, &yf, n, &gs)?;
                        if lhs != ygf.at(n, &gs)? {
                            return Ok(Some(format!("f = {f:?}, g = {g:?}, n = {n}, at {gs:?}")));
                        }
                        if compose_at(&yf, &id, n, &gs)? != yf.at(n, &gs)? {
                            return Ok(Some(format!("y f ∘ y id != y f for f = {f:?}")));
                        }
                    }
                }
            }
            Ok(None)
        })()
        .unwrap_or_else(|e| Some(e.to_string()))
    }));
    Ok(report)
}

/// The canonical sequence `<π_0, ..., π_n> ∈ Q(yA)(A × A^n)`.
pub fn canonical_element<R: FiniteRig>(a: usize, n: usize) -> Vector<R> {
    let point = matrix_vector(&proj::<R>(a, n + 1, 0));
    let tail: Vec<Vector<R>> = (1..=n).map(|i| matrix_vector(&proj::<R>(a, n + 1, i))).collect();
    Modality::default().inject(&point, &tail)
}

/// The linear map `Q(yA) → X` classifying a Faà di Bruno sequence.
pub struct Classified<R> {
    pub target: Presheaf<R>,
    pub stage: usize,
    pub sequence: Vec<Vector<R>>,
}

/// `ξ<f_0, ..., f_n> = x^(n) · (f_0, ..., f_n)`, after checking that each
/// `x^(n)` is symmetric and multilinear in its last `n` arguments against
/// probes of dimension `<= probe_dim`.
pub fn classify<R: FiniteRig>(target: Presheaf<R>, a: usize, sequence: Vec<Vector<R>>, probe_dim: usize) -> Result<Classified<R>> {
    for (n, x) in sequence.iter().enumerate() {
        let st = a * (n + 1);
        for z in 1..=probe_dim {
            let ms = all_matrices::<R>(z, a);
            for fs in tuples(&ms, n + 1) {
                let base = target.act(x, st, &stack(z, &fs)?)?;
                for i in 1..=n {
                    if i < n {
                        let mut sw = fs.clone();
                        sw.swap(i, i + 1);
                        if target.act(x, st, &stack(z, &sw)?)? != base {
                            return Err(Error::InvalidSequence(format!("x^({n}) not symmetric at {fs:?}")));
                        }
                    }
                    for g in &ms {
                        let mut with_g = fs.clone();
                        with_g[i] = g.clone();
                        let mut sum = fs.clone();
                        sum[i] = fs[i].plus(g)?;
                        let lhs = target.act(x, st, &stack(z, &sum)?)?;
                        let rhs = base.plus(&target.act(x, st, &stack(z, &with_g)?)?);
                        if lhs != rhs {
                            return Err(Error::InvalidSequence(format!("x^({n}) not additive in slot {i} at {fs:?}")));
                        }
                    }
                    for c in R::elements() {
                        let mut sc = fs.clone();
                        sc[i] = fs[i].scaled(&c);
                        if target.act(x, st, &stack(z, &sc)?)? != base.scaled(&c) {
                            return Err(Error::InvalidSequence(format!("x^({n}) not homogeneous in slot {i}")));
                        }
                    }
                }
            }
        }
    }
    Ok(Classified { target, stage: a, sequence })
}

impl<R: FiniteRig> Classified<R> {
    /// `ξ_B` on an element of `Q(yA)(B)`.
    pub fn apply(&self, b: usize, q: &Vector<R>) -> Result<Vector<R>> {
        let a = self.stage;
        let mut out = Vector::zero();
        for (k, c) in q.iter() {
            let g = k.as_gen().ok_or_else(|| Error::SpaceMismatch("expected a Q-generator".into()))?;
            let n = g.degree();
            let x = self.sequence.get(n).ok_or_else(|| {
                Error::DegreeBoundExceeded(format!("degree {n} with a sequence of length {}", self.sequence.len()))
            })?;
            let mut fs = vec![vector_matrix(&g.point, b, a)?];
            for t in &g.tail {
                fs.push(vector_matrix(&Vector::basis(t.clone()), b, a)?);
            }
            out.add_scaled(c, &self.target.act(x, a * (n + 1), &stack(b, &fs)?)?);
        }
        Ok(out)
    }

    /// Generators of `Q(yA)(B)` within the sequence's degree bound.
    pub fn generators(&self, b: usize) -> Vec<Key<R>> {
        let keys: Vec<Key<R>> = (0..b * self.stage).map(|i| Key::Basis(i as u32)).collect();
        let mut out = Vec::new();
        for p in all_vectors(&keys) {
            for d in 0..self.sequence.len() {
                for tail in multisets(&keys, d) {
                    out.push(crate::algebra::Generator::new(p.clone(), tail).key());
                }
            }
        }
        out
    }

    /// Round trip, naturality, uniqueness and (optionally) preservation of
    /// the differential.
    pub fn check(&self, cfg: &PresheafConfig, with_differential: bool) -> Report {
        let a = self.stage;
        let mut report = Report::new("classify")
            .with_config("target", self.target.name())
            .with_config("stage", a)
            .with_config("bound", self.sequence.len().saturating_sub(1));
        let ns: Vec<usize> = (0..self.sequence.len()).collect();
        report.push(run_cases("round trip at <π0, ..., πn>", &ns, |n| {
            match self.apply(a * (n + 1), &canonical_element(a, *n)) {
                Ok(v) if v == self.sequence[*n] => None,
                Ok(v) => Some(format!("n = {n}: {v:?} vs {:?}", self.sequence[*n])),
                Err(e) => Some(e.to_string()),
            }
        }));
        let cases: Vec<(usize, Key<R>)> =
            (1..=cfg.max_stage).flat_map(|b| self.generators(b).into_iter().map(move |k| (b, k))).collect();
        let source = super::QPresheaf {
            inner: super::representable::<R>(a),
            bound: self.sequence.len().saturating_sub(1),
            modality: Modality::default(),
        };
        report.push(run_cases("uniqueness: <f0..fn> = <π0..πn>·(f0..fn)", &cases, |(b, k)| {
            let g = k.as_gen()?;
            let n = g.degree();
            let mut fs = vec![vector_matrix(&g.point, *b, a).ok()?];
            fs.extend(g.tail.iter().map(|t| vector_matrix(&Vector::basis(t.clone()), *b, a).unwrap()));
            let moved = source.act(&canonical_element(a, n), a * (n + 1), &stack(*b, &fs).ok()?).ok()?;
            (moved != Vector::basis(k.clone())).then(|| format!("{k:?} vs {moved:?}"))
        }));
        report.push(run_cases("naturality", &cases, |(b, k)| {
            let q = Vector::basis(k.clone());
            (|| -> Result<Option<String>> {
                let img = self.apply(*b, &q)?;
                for c in 1..=cfg.probe_dim {
                    for h in all_matrices::<R>(c, *b) {
                        let lhs = self.apply(c, &source.act(&q, *b, &h)?)?;
                        let rhs = self.target.act(&img, *b, &h)?;
                        if lhs != rhs {
                            return Ok(Some(format!("{k:?} along {h:?}")));
                        }
                    }
                }
                Ok(None)
            })()
            .unwrap_or_else(|e| Some(e.to_string()))
        }));
        if with_differential {
            let within: Vec<(usize, Key<R>)> = cases
                .iter()
                .filter(|(_, k)| k.as_gen().is_some_and(|g| g.degree() + 1 < self.sequence.len()))
                .cloned()
                .collect();
            report.push(run_cases("preserves the differential", &within, |(b, k)| {
                let q = Vector::basis(k.clone());
                (|| -> Result<Option<String>> {
                    let lhs = self.apply(2 * b, &source.d(&q, *b)?)?;
                    let rhs = self.target.d(&self.apply(*b, &q)?, *b)?;
                    Ok((lhs != rhs).then(|| format!("{k:?}: {lhs:?} vs {rhs:?}")))
                })()
                .unwrap_or_else(|e| Some(e.to_string()))
            }));
        }
        report
    }
}

/// `ξ^(n) ∈ X(A × A^n)`, the nth derivative of `ξ ∈ X(A)`.
pub fn higher_action<R: FiniteRig>(x: &dyn DifferentialPresheaf<R>, xi: &Vector<R>, a: usize, n: usize) -> Result<Vector<R>> {
    let cat = Mat::<R>::default();
    let mut cur = xi.clone();
    for k in 1..=n {
        let d = x.d(&cur, a * k)?;
        let pick: Vec<Option<usize>> = (0..=k).map(Some).chain(std::iter::repeat(None).take(k - 1)).collect();
        cur = x.act(&d, 2 * a * k, &blocks(&cat, a, k + 1, &pick)?)?;
    }
    Ok(cur)
}

/// Rebuilds `ξ·f = m(ξ ⊗ <f>)` and `Dξ = m(ξ ⊗ <π0, π1>)` from the higher
/// action `m(ξ ⊗ <f_0, ..., f_n>) = ξ^(n)·(f_0, ..., f_n)`.
pub fn action_round_trip<R: FiniteRig>(x: &dyn DifferentialPresheaf<R>, cfg: &PresheafConfig) -> Report {
    let mut report = Report::new("higher-action").with_config("presheaf", x.name());
    let cases: Vec<(usize, Key<R>)> =
        (1..=cfg.max_stage).flat_map(|a| x.basis(a).into_iter().map(move |k| (a, k))).collect();
    let m = |xi: &Vector<R>, a: usize, fs: &[Matrix<R>]| -> Result<Vector<R>> {
        let n = fs.len() - 1;
        x.act(&higher_action(x, xi, a, n)?, a * (n + 1), &stack(fs[0].dom, fs)?)
    };
    let wrap = |r: Result<Option<String>>| r.unwrap_or_else(|e| Some(e.to_string()));
    report.push(run_cases("ξ·f = m(ξ ⊗ <f>)", &cases, |(a, k)| {
        let xi = Vector::basis(k.clone());
        wrap((|| {
            for b in 1..=cfg.max_stage {
                for f in all_matrices::<R>(b, *a) {
                    if m(&xi, *a, std::slice::from_ref(&f))? != x.act(&xi, *a, &f)? {
                        return Ok(Some(format!("{k:?} along {f:?}")));
                    }
                }
            }
            Ok(None)
        })())
    }));
    report.push(run_cases("Dξ = m(ξ ⊗ <π0, π1>)", &cases, |(a, k)| {
        let xi = Vector::basis(k.clone());
        wrap((|| {
            let lhs = m(&xi, *a, &[proj(*a, 2, 0), proj(*a, 2, 1)])?;
            Ok((lhs != x.d(&xi, *a)?).then(|| format!("{k:?}")))
        })())
    }));
    report.push(run_cases("ξ^(2) is symmetric and additive in its directions", &cases, |(a, k)| {
        let xi = Vector::basis(k.clone());
        wrap((|| {
            for z in 1..=cfg.probe_dim {
                let ms = all_matrices::<R>(z, *a);
                for fs in tuples(&ms, 3) {
                    let base = m(&xi, *a, &fs)?;
                    if base != m(&xi, *a, &[fs[0].clone(), fs[2].clone(), fs[1].clone()])? {
                        return Ok(Some(format!("{k:?} not symmetric at {fs:?}")));
                    }
                    let doubled = m(&xi, *a, &[fs[0].clone(), fs[1].plus(&fs[1])?, fs[2].clone()])?;
                    if doubled != base.plus(&base) {
                        return Ok(Some(format!("{k:?} not additive at {fs:?}")));
                    }
                }
            }
            Ok(None)
        })())
    }));
    report
}
