//! Exhaustive law checks for `Q` over a finite rig.
//!
//! Every generator `<x0; tail>` of `QA` with `dim A <= max_dim` and tail
//! degree `<= max_degree` is enumerated. Laws with several `Q`-arguments
//! range over tuples whose total degree stays within `max_degree`.

use std::collections::BTreeMap;

use super::{inject_slot, pairs, project_slot, tensor_map, Modality};
use crate::algebra::{FiniteRig, Generator, Key, Space, Vector};
use crate::report::{differ, run_cases, Report};

#[derive(Debug, Clone, Copy)]
pub struct LawConfig {
    pub max_dim: usize,
    pub max_degree: usize,
    pub modality: Modality,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig { max_dim: 2, max_degree: 3, modality: Modality::default() }
    }
}

/// Every element of a finite-rank space.
pub fn points<R: FiniteRig>(space: &Space) -> Vec<Vector<R>> {
    let basis = space.basis::<R>().expect("finite space");
    let mut out = vec![Vector::zero()];
    for k in basis {
        let mut next = Vec::with_capacity(out.len() * R::order() as usize);
        for v in &out {
            for c in R::elements() {
                let mut w = v.clone();
                w.add_term(k.clone(), c);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Sorted multisets of `keys` of size `k`.
pub fn multisets<T: Clone>(keys: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(keys: &[T], start: usize, k: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..keys.len() {
            cur.push(keys[i].clone());
            go(keys, i, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(keys, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Every generator of `Q(space)` with tail degree `<= max_degree`, as
/// `(degree, basis vector)`.
pub fn generators<R: FiniteRig>(space: &Space, max_degree: usize) -> Vec<(usize, Vector<R>)> {
    let basis = space.basis::<R>().expect("finite space");
    let mut out = Vec::new();
    for p in points::<R>(space) {
        for d in 0..=max_degree {
            for tail in multisets(&basis, d) {
                out.push((d, Vector::basis(Generator::new(p.clone(), tail).key())));
            }
        }
    }
    out
}

fn pairs_within<T: Clone>(xs: &[(usize, T)], ys: &[(usize, T)], max: usize) -> Vec<(T, T)> {
    let mut out = Vec::new();
    for (dx, x) in xs {
        for (dy, y) in ys {
            if dx + dy <= max {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

fn triples_within<T: Clone>(xs: &[(usize, T)], max: usize) -> Vec<(T, T, T)> {
    let mut out = Vec::new();
    for (dx, x) in xs {
        for (dy, y) in xs {
            for (dz, z) in xs {
                if dx + dy + dz <= max {
                    out.push((x.clone(), y.clone(), z.clone()));
                }
            }
        }
    }
    out
}

/// Re-brackets `(a ⊗ b) ⊗ c` as `a ⊗ (b ⊗ c)`.
fn assoc_key<R: FiniteRig>(k: &Key<R>) -> Vector<R> {
    match k {
        Key::Tuple(outer) => match &outer[0] {
            Key::Tuple(inner) => Vector::basis(Key::pair(
                inner[0].clone(),
                Key::pair(inner[1].clone(), outer[1].clone()),
            )),
            _ => panic!("expected ((a ⊗ b) ⊗ c)"),
        },
        _ => panic!("expected ((a ⊗ b) ⊗ c)"),
    }
}

/// Flattens nested pair keys into triples so both bracketings compare.
fn flatten3<R: FiniteRig>(v: &Vector<R>, left_nested: bool) -> Vector<R> {
    v.relabel(|k| {
        let Key::Tuple(o) = k else { panic!("pair") };
        let (a, b, c) = if left_nested {
            let Key::Tuple(i) = &o[0] else { panic!("pair") };
            (i[0].clone(), i[1].clone(), o[1].clone())
        } else {
            let Key::Tuple(i) = &o[1] else { panic!("pair") };
            (o[0].clone(), i[0].clone(), i[1].clone())
        };
        Key::Tuple(vec![a, b, c])
    })
}

fn swap_pairs<R: FiniteRig>(v: &Vector<R>) -> Vector<R> {
    v.relabel(|k| {
        let Key::Tuple(p) = k else { panic!("pair") };
        Key::pair(p[1].clone(), p[0].clone())
    })
}

/// All linear maps `k^a → k^b`, as images of the basis.
pub fn linear_maps<R: FiniteRig>(a: usize, b: usize) -> Vec<Vec<Vector<R>>> {
    let cols = points::<R>(&Space::free_dim(b));
    let mut out: Vec<Vec<Vector<R>>> = vec![Vec::new()];
    for _ in 0..a {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                cols.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect();
    }
    out
}

fn basis_map<R: FiniteRig>(images: &[Vector<R>]) -> impl Fn(&Key<R>) -> Vector<R> + '_ {
    move |k| match k {
        Key::Basis(i) => images[*i as usize].clone(),
        _ => panic!("expected a basis key"),
    }
}

/// Runs every law and collects the results.
pub fn check_modality<R: FiniteRig>(cfg: &LawConfig) -> Report {
    let m = cfg.modality;
    let big_d = cfg.max_degree;
    let mut report = Report::new("modality")
        .with_config("rig", R::spec())
        .with_config("max_dim", cfg.max_dim)
        .with_config("max_degree", big_d);

    let dims: Vec<usize> = (1..=cfg.max_dim).collect();
    let spaces: Vec<Space> = dims.iter().map(|d| Space::free_dim(*d)).collect();

    // Cases over a single space, tagged with the space for readable witnesses.
    let mut unary: Vec<(usize, Vector<R>)> = Vec::new();
    let mut with_point: Vec<(Vector<R>, Vector<R>)> = Vec::new();
    let mut with_two_points: Vec<(Vector<R>, Vector<R>, Vector<R>)> = Vec::new();
    let mut bin_same: Vec<(Vector<R>, Vector<R>)> = Vec::new();
    let mut tri_same: Vec<(Vector<R>, Vector<R>, Vector<R>)> = Vec::new();
    for s in &spaces {
        let gens = generators::<R>(s, big_d);
        let pts = points::<R>(s);
        for (d, g) in &gens {
            unary.push((*d, g.clone()));
            for a in &pts {
                if *d < big_d {
                    with_point.push((g.clone(), a.clone()));
                }
                if *d + 1 < big_d {
                    for b in &pts {
                        with_two_points.push((g.clone(), a.clone(), b.clone()));
                    }
                }
            }
        }
        bin_same.extend(pairs_within(&gens, &gens, big_d));
        tri_same.extend(triples_within(&gens, big_d));
    }
    let gens_only: Vec<Vector<R>> = unary.iter().map(|(_, g)| g.clone()).collect();

    // Pairs of generators over two possibly different spaces.
    let mut bin_mixed: Vec<(Vector<R>, Vector<R>)> = Vec::new();
    for a in &spaces {
        for b in &spaces {
            bin_mixed.extend(pairs_within(&generators::<R>(a, big_d), &generators::<R>(b, big_d), big_d));
        }
    }

    // Comonad.
    report.push(run_cases("comonad: counit after comultiplication is the identity", &gens_only, |q| {
        differ("ε∘δ", &m.counit(&m.comult(q)), q)
    }));
    report.push(run_cases("comonad: Q(counit) after comultiplication is the identity", &gens_only, |q| {
        let eps = |k: &Key<R>| m.counit(&Vector::basis(k.clone()));
        differ("Qε∘δ", &m.q_map(&eps, &m.comult(q)), q)
    }));
    report.push(run_cases("comonad: coassociativity of comultiplication", &gens_only, |q| {
        let d = m.comult(q);
        let delta = |k: &Key<R>| m.comult(&Vector::basis(k.clone()));
        differ("Qδ∘δ vs δ∘δ", &m.q_map(&delta, &d), &m.comult(&d))
    }));

    // Comonoid.
    report.push(run_cases("comonoid: left counit", &gens_only, |q| {
        let mut out = Vector::zero();
        for (l, r, c) in pairs(&m.comonoid_comult(q)) {
            out.add_term(r.clone(), c.clone() * m.comonoid_counit(&Vector::basis(l.clone())));
        }
        differ("(e⊗1)Δ", &out, q)
    }));
    report.push(run_cases("comonoid: right counit", &gens_only, |q| {
        let mut out = Vector::zero();
        for (l, r, c) in pairs(&m.comonoid_comult(q)) {
            out.add_term(l.clone(), c.clone() * m.comonoid_counit(&Vector::basis(r.clone())));
        }
        differ("(1⊗e)Δ", &out, q)
    }));
    report.push(run_cases("comonoid: coassociativity", &gens_only, |q| {
        let dq = m.comonoid_comult(q);
        let id = |k: &Key<R>| Vector::basis(k.clone());
        let split = |k: &Key<R>| m.comonoid_comult(&Vector::basis(k.clone()));
        let left = flatten3(&tensor_map(&dq, split, id), true);
        let right = flatten3(&tensor_map(&dq, id, split), false);
        differ("(Δ⊗1)Δ vs (1⊗Δ)Δ", &left, &right)
    }));
    report.push(run_cases("comonoid: cocommutativity", &gens_only, |q| {
        let dq = m.comonoid_comult(q);
        differ("σΔ vs Δ", &swap_pairs(&dq), &dq)
    }));
    report.push(run_cases("comonoid: comultiplication preserves the counit", &gens_only, |q| {
        differ("e∘δ", &m.comonoid_counit(&m.comult(q)), &m.comonoid_counit(q))
    }));
    report.push(run_cases("comonoid: comultiplication preserves the coproduct", &gens_only, |q| {
        let delta = |k: &Key<R>| m.comult(&Vector::basis(k.clone()));
        let lhs = m.comonoid_comult(&m.comult(q));
        let rhs = tensor_map(&m.comonoid_comult(q), delta, delta);
        differ("Δδ vs (δ⊗δ)Δ", &lhs, &rhs)
    }));

    // Monoidal functor.
    report.push(run_cases("monoidal: associativity", &tri_same, |(p, q, r)| {
        let lhs = m.q_map(&assoc_key, &m.monoidal_mult(&m.monoidal_mult(p, q), r));
        let rhs = m.monoidal_mult(p, &m.monoidal_mult(q, r));
        differ("m(m(p,q),r) vs m(p,m(q,r))", &lhs, &rhs)
    }));
    report.push(run_cases("monoidal: left unit", &gens_only, |q| {
        let lam = |k: &Key<R>| match k {
            Key::Tuple(p) => Vector::basis(p[1].clone()),
            _ => panic!("pair"),
        };
        differ("m(m_I, q)", &m.q_map(&lam, &m.monoidal_mult(&m.monoidal_unit(), q)), q)
    }));
    report.push(run_cases("monoidal: right unit", &gens_only, |q| {
        let rho = |k: &Key<R>| match k {
            Key::Tuple(p) => Vector::basis(p[0].clone()),
            _ => panic!("pair"),
        };
        differ("m(q, m_I)", &m.q_map(&rho, &m.monoidal_mult(q, &m.monoidal_unit())), q)
    }));
    report.push(run_cases("monoidal: symmetry", &bin_mixed, |(p, q)| {
        let sigma = |k: &Key<R>| Vector::basis(swap_pairs(&Vector::basis(k.clone())).keys().next().unwrap().clone());
        differ("Qσ m(p,q) vs m(q,p)", &m.q_map(&sigma, &m.monoidal_mult(p, q)), &m.monoidal_mult(q, p))
    }));
    report.push(run_cases("monoidal: counit is monoidal", &bin_mixed, |(p, q)| {
        let lhs = m.counit(&m.monoidal_mult(p, q));
        differ("ε m(p,q) vs εp ⊗ εq", &lhs, &m.counit(p).tensor(&m.counit(q)))
    }));
    report.push(run_cases("monoidal: counit preserves the unit", &[()], |_| {
        differ("ε m_I", &m.counit::<R>(&m.monoidal_unit()), &Vector::basis(Key::unit()))
    }));
    report.push(run_cases("monoidal: comultiplication is monoidal", &bin_mixed, |(p, q)| {
        let lhs = m.comult(&m.monoidal_mult(p, q));
        let mt = |k: &Key<R>| match k {
            Key::Tuple(t) => m.monoidal_mult(&Vector::basis(t[0].clone()), &Vector::basis(t[1].clone())),
            _ => panic!("pair"),
        };
        let rhs = m.q_map(&mt, &m.monoidal_mult(&m.comult(p), &m.comult(q)));
        differ("δ m(p,q) vs Q(m) m(δp, δq)", &lhs, &rhs)
    }));
    report.push(run_cases("monoidal: comultiplication preserves the unit", &[()], |_| {
        let mi = |_: &Key<R>| m.monoidal_unit();
        let lhs = m.comult::<R>(&m.monoidal_unit());
        differ("δ m_I vs Q(m_I) m_I", &lhs, &m.q_map(&mi, &m.monoidal_unit()))
    }));

    // Deriving transformation.
    report.push(run_cases("deriving: product rule", &with_point, |(q, a)| {
        let lhs = m.comonoid_comult(&m.deriving(q, a));
        let mut rhs = Vector::zero();
        for (l, r, c) in pairs(&m.comonoid_comult(q)) {
            let (l, r) = (Vector::basis(l.clone()), Vector::basis(r.clone()));
            rhs.add_scaled(c, &l.tensor(&m.deriving(&r, a)));
            rhs.add_scaled(c, &m.deriving(&l, a).tensor(&r));
        }
        differ("Δd", &lhs, &rhs)
    }));
    report.push(run_cases("deriving: linear rule", &with_point, |(q, a)| {
        differ("εd vs e⊗1", &m.counit(&m.deriving(q, a)), &a.scaled(&m.comonoid_counit(q)))
    }));
    report.push(run_cases("deriving: chain rule", &with_point, |(q, a)| {
        let lhs = m.comult(&m.deriving(q, a));
        let mut rhs = Vector::zero();
        for (l, r, c) in pairs(&m.comonoid_comult(q)) {
            let term = m.deriving(&m.comult(&Vector::basis(l.clone())), &m.deriving(&Vector::basis(r.clone()), a));
            rhs.add_scaled(c, &term);
        }
        differ("δd", &lhs, &rhs)
    }));
    report.push(run_cases("deriving: interchange rule", &with_two_points, |(q, a, b)| {
        let lhs = m.deriving(&m.deriving(q, a), b);
        let rhs = m.deriving(&m.deriving(q, b), a);
        differ("d(d(q⊗a)⊗b) vs d(d(q⊗b)⊗a)", &lhs, &rhs)
    }));

    // Fusion.
    report.push(run_cases("fusion: closed formula equals m_⊗ after (1 ⊗ δ)", &bin_mixed, |(p, q)| {
        differ("H vs m(1⊗δ)", &m.fusion(p, q), &m.monoidal_mult(p, &m.comult(q)))
    }));

    // Storage.
    let mut prod_gens: Vec<Vector<R>> = Vec::new();
    let mut tensor_pairs: Vec<(Vector<R>, Vector<R>)> = Vec::new();
    for a in &spaces {
        for b in &spaces {
            let ab = Space::product([a.clone(), b.clone()]);
            prod_gens.extend(generators::<R>(&ab, big_d).into_iter().map(|(_, g)| g));
            tensor_pairs.extend(pairs_within(&generators::<R>(a, big_d), &generators::<R>(b, big_d), big_d));
        }
    }
    report.push(run_cases("storage: inverse after storage is the identity", &prod_gens, |q| {
        differ("χ⁻¹χ", &m.storage_inv(&m.storage(q)), q)
    }));
    report.push(run_cases("storage: storage after inverse is the identity", &tensor_pairs, |(p, q)| {
        let t = p.tensor(q);
        differ("χχ⁻¹", &m.storage(&m.storage_inv(&t)), &t)
    }));
    report.push(run_cases("storage: m_I rebuilt from the nullary storage map", &[()], |_| {
        let one_q: Vector<R> = super::gen(Vector::zero(), Vec::new());
        let chi1 = |k: &Key<R>| Vector::basis(Key::unit()).scaled(&m.comonoid_counit(&Vector::basis(k.clone())));
        let rebuilt = m.q_map(&chi1, &m.comult(&one_q));
        differ("Q(χ₁)δχ₁⁻¹ vs m_I", &rebuilt, &m.monoidal_unit())
    }));
    report.push(run_cases("storage: m_⊗ rebuilt from the binary storage map", &tensor_pairs, |(p, q)| {
        let chi = |k: &Key<R>| m.storage(&Vector::basis(k.clone()));
        let eps2 = |k: &Key<R>| match k {
            Key::Tuple(t) => m.counit(&Vector::basis(t[0].clone())).tensor(&m.counit(&Vector::basis(t[1].clone()))),
            _ => panic!("pair"),
        };
        let step = m.q_map(&chi, &m.comult(&m.storage_inv(&p.tensor(q))));
        differ("Q(ε⊗ε)Q(χ)δχ⁻¹ vs m_⊗", &m.q_map(&eps2, &step), &m.monoidal_mult(p, q))
    }));

    // Bialgebra and codereliction.
    report.push(run_cases("bialgebra: multiplication matches its defining composite", &bin_same, |(p, q)| {
        let mix = |k: &Key<R>| match k {
            Key::Tuple(t) => {
                let (l, r) = (Vector::basis(t[0].clone()), Vector::basis(t[1].clone()));
                m.counit(&l).scaled(&m.comonoid_counit(&r)).plus(&m.counit(&r).scaled(&m.comonoid_counit(&l)))
            }
            _ => panic!("pair"),
        };
        let composite = m.q_map(&mix, &m.monoidal_mult(&m.comult(p), &m.comult(q)));
        differ("∇ vs composite", &m.bialg_mult(p, q), &composite)
    }));
    report.push(run_cases("bialgebra: unit is <0>", &[()], |_| {
        differ("u", &m.bialg_unit::<R>(), &super::gen(Vector::zero(), Vec::new()))
    }));
    report.push(run_cases("bialgebra: unit law", &gens_only, |q| {
        let u = m.bialg_unit::<R>();
        differ("∇(u⊗q)", &m.bialg_mult(&u, q), q).or_else(|| differ("∇(q⊗u)", &m.bialg_mult(q, &u), q))
    }));
    report.push(run_cases("bialgebra: multiplication is commutative", &bin_same, |(p, q)| {
        differ("∇ swap", &m.bialg_mult(p, q), &m.bialg_mult(q, p))
    }));
    report.push(run_cases("bialgebra: unit has counit 1", &[()], |_| {
        differ("e(u)", &m.comonoid_counit(&m.bialg_unit::<R>()), &R::one())
    }));
    report.push(run_cases("codereliction: deriving is ∇ after (1 ⊗ η)", &with_point, |(q, y)| {
        differ("d vs ∇(1⊗η)", &m.deriving(q, y), &m.bialg_mult(q, &m.codereliction(y)))
    }));
    let pts_all: Vec<Vector<R>> = spaces.iter().flat_map(|s| points::<R>(s)).collect();
    report.push(run_cases("codereliction: η is d after (u ⊗ 1)", &pts_all, |y| {
        differ("η vs d(u⊗1)", &m.codereliction(y), &m.deriving(&m.bialg_unit(), y))
    }));

    // Naturality in linear maps.
    let mut nat_cases: Vec<(Vec<Vector<R>>, Vector<R>, Vector<R>)> = Vec::new();
    for (ia, a) in dims.iter().enumerate() {
        let gens = generators::<R>(&spaces[ia], big_d);
        let pts = points::<R>(&spaces[ia]);
        for b in &dims {
            for f in linear_maps::<R>(*a, *b) {
                for (d, g) in &gens {
                    // The point argument only matters for d; pair it with a rotating point.
                    let y = pts[(f.len() + d + nat_cases.len()) % pts.len()].clone();
                    nat_cases.push((f.clone(), g.clone(), y));
                }
            }
        }
    }
    report.push(run_cases("naturality in linear maps: ε, δ, e, Δ, d", &nat_cases, |(f, q, y)| {
        let fk = basis_map(f);
        let qf = |k: &Key<R>| m.q_map(&fk, &Vector::basis(k.clone()));
        let fq = m.q_map(&fk, q);
        differ("ε Qf vs f ε", &m.counit(&fq), &m.counit(q).map_linear(&fk))
            .or_else(|| differ("δ Qf vs QQf δ", &m.comult(&fq), &m.q_map(&qf, &m.comult(q))))
            .or_else(|| differ("e Qf vs e", &m.comonoid_counit(&fq), &m.comonoid_counit(q)))
            .or_else(|| {
                differ("Δ Qf vs (Qf⊗Qf) Δ", &m.comonoid_comult(&fq), &tensor_map(&m.comonoid_comult(q), qf, qf))
            })
            .or_else(|| {
                differ("d(Qf⊗f) vs Qf d", &m.deriving(&fq, &y.map_linear(&fk)), &m.q_map(&fk, &m.deriving(q, y)))
            })
    }));

    report
}

/// Products of points: `(x, y) ↦ in0 x + in1 y`.
pub fn pair_point<R: FiniteRig>(x: &Vector<R>, y: &Vector<R>) -> Vector<R> {
    inject_slot(0, x).plus(&inject_slot(1, y))
}

/// Splits a point of a product back into its components.
pub fn split_point<R: FiniteRig>(v: &Vector<R>) -> (Vector<R>, Vector<R>) {
    (v.map_linear(project_slot(0)), v.map_linear(project_slot(1)))
}

/// Counts generators by degree; useful in reports.
pub fn census<R: FiniteRig>(space: &Space, max_degree: usize) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for (d, _) in generators::<R>(space, max_degree) {
        *out.entry(d).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Zm;
    use crate::qmodality::QFault;

    #[test]
    fn enumeration_sizes() {
        let s = Space::free_dim(2);
        assert_eq!(points::<Zm<3>>(&s).len(), 9);
        assert_eq!(generators::<Zm<2>>(&s, 3).len(), 4 * 10);
        assert_eq!(census::<Zm<2>>(&s, 2)[&2], 4 * 3);
        assert_eq!(linear_maps::<Zm<2>>(2, 1).len(), 4);
    }

    #[test]
    fn laws_hold_small() {
        let cfg = LawConfig { max_dim: 1, max_degree: 2, modality: Modality::default() };
        let r = check_modality::<Zm<2>>(&cfg);
        assert!(r.passed, "{r}");
    }

    #[test]
    fn faults_are_detected() {
        for fault in [QFault::UnsortedTail, QFault::SwapCounitCases, QFault::DropCoproductTerm] {
            let cfg = LawConfig { max_dim: 2, max_degree: 2, modality: Modality::new(Some(fault)) };
            let r = check_modality::<Zm<2>>(&cfg);
            assert!(!r.passed, "{fault:?} went unnoticed");
            assert!(r.failures().all(|c| c.counterexample.is_some()));
        }
    }

    #[test]
    fn point_pairing_round_trips() {
        let x: Vector<Zm<3>> = Vector::basis(Key::Basis(0));
        let y: Vector<Zm<3>> = Vector::basis(Key::Basis(1)).scaled(&Zm::new(2));
        assert_eq!(split_point(&pair_point(&x, &y)), (x, y));
    }
}
