//! Ready-made verification suites, shared by the command line and the
//! acceptance tests. Every suite is deterministic for a fixed seed.

use rand::Rng;

use crate::algebra::FiniteRig;
use crate::cdc::{
    check_axioms, decompose_iterated, is_d_linear, iterated_derivative, nth_derivative, reconstruct_from_iterated,
    CartesianDifferentialCategory, LeftLinearCategory, Matrix,
};
use crate::cdc::axioms::case_rng;
use crate::combinat::{arrange, partial_isos, partitions, PartialIso};
use crate::dpsh::{self, yoneda, PresheafConfig};
use crate::error::Result;
use crate::faa::kleisli::{all_tables, kleisli_compose, kleisli_d, random_table, KleisliMap};
use crate::faa::{Faa, FaaFault, FaaMap};
use crate::poly::{FinFn, FinMap, PolyCat, PolyMap, PolySampler};
use crate::qmodality::laws::{check_modality, LawConfig};
use crate::qmodality::{Modality, QFault};
use crate::report::{run_cases, Check, Report};
use crate::{Int, Nat, Rat, Z2, Z3, Z5};

pub const DEFAULT_SEED: u64 = 0x5eed;

fn wrap(r: Result<Option<String>>) -> Option<String> {
    r.unwrap_or_else(|e| Some(format!("error: {e}")))
}

/// The seven axioms for polynomial maps over ℕ, ℤ, ℚ and ℤ/5.
pub fn cdc_suite(samples: usize, seed: u64) -> Report {
    let sampler = PolySampler::default();
    let mut report = Report::new("cdc")
        .with_config("samples", samples)
        .with_config("seed", seed)
        .with_config("max_degree", sampler.max_degree)
        .with_config("max_arity", sampler.max_arity);
    report.absorb("nat", check_axioms(&PolyCat::<Nat>::default(), &sampler, samples, seed));
    report.absorb("int", check_axioms(&PolyCat::<Int>::default(), &sampler, samples, seed));
    report.absorb("rat", check_axioms(&PolyCat::<Rat>::default(), &sampler, samples, seed));
    report.absorb("zmod:5", check_axioms(&PolyCat::<Z5>::default(), &sampler, samples, seed));
    report
}

/// The laws of `Q` over ℤ/2 and ℤ/3.
pub fn modality_suite(max_dim: usize, max_degree: usize, fault: Option<QFault>) -> Report {
    let cfg = LawConfig { max_dim, max_degree, modality: Modality::new(fault) };
    let mut report = Report::new("modality").with_config("max_dim", max_dim).with_config("max_degree", max_degree);
    report.absorb("zmod:2", check_modality::<Z2>(&cfg));
    report.absorb("zmod:3", check_modality::<Z3>(&cfg));
    report
}

/// Bounds for [`kleisli_suite`].
#[derive(Debug, Clone, Copy)]
pub struct KleisliConfig {
    pub max_dim: usize,
    /// Families have nonzero components only in degrees `<= support`.
    pub support: usize,
    /// Tables are compared on generators of degree `<= bound`.
    pub bound: usize,
    /// Random pairs per choice of dimensions beyond the exhaustive case.
    pub samples: usize,
    pub seed: u64,
    pub faa_fault: Option<FaaFault>,
    pub modality: Modality,
}

impl Default for KleisliConfig {
    fn default() -> Self {
        KleisliConfig {
            max_dim: 2,
            support: 2,
            bound: 4,
            samples: 8,
            seed: DEFAULT_SEED,
            faa_fault: None,
            modality: Modality::default(),
        }
    }
}

type Family<R> = FaaMap<FinMap<R>>;

const PAIR_LIMIT: usize = 1 << 16;

/// Composition and differential through `Q` against the Faà di Bruno
/// formulas, for families over a finite rig. Dimension 1 is exhaustive
/// when there are at most `PAIR_LIMIT` pairs; everything else is sampled.
pub fn kleisli_suite<R: FiniteRig>(cfg: &KleisliConfig) -> Result<Report> {
    let faa = Faa::with_fault(FinFn::<R>::default(), cfg.faa_fault);
    let clean = Faa::new(FinFn::<R>::default());
    let mut report = Report::new("kleisli-iso")
        .with_config("rig", R::spec())
        .with_config("max_dim", cfg.max_dim)
        .with_config("support", cfg.support)
        .with_config("bound", cfg.bound)
        .with_config("samples", cfg.samples)
        .with_config("seed", cfg.seed);

    let exhaustive: Vec<Family<R>> = all_tables::<R>(1, 1, cfg.support)?
        .iter()
        .map(|t| t.to_family(&clean))
        .collect::<Result<_>>()?;
    report = report.with_config("exhaustive_families", exhaustive.len());

    let mut pairs: Vec<(Family<R>, Family<R>)> = Vec::new();
    let mut singles: Vec<Family<R>>;
    let n = exhaustive.len();
    if n * n <= PAIR_LIMIT {
        for g in &exhaustive {
            for f in &exhaustive {
                pairs.push((g.clone(), f.clone()));
            }
        }
        singles = exhaustive.clone();
    } else {
        // Too many families at dimension 1 (e.g. over ℤ/3): sample from them.
        let mut rng = case_rng(cfg.seed, 0, 0);
        for _ in 0..cfg.samples * 64 {
            pairs.push((exhaustive[rng.gen_range(0..n)].clone(), exhaustive[rng.gen_range(0..n)].clone()));
        }
        singles = (0..cfg.samples * 64).map(|_| exhaustive[rng.gen_range(0..n)].clone()).collect();
    }
    report = report.with_config("exhaustive_pairs", n * n <= PAIR_LIMIT);
    let dims: Vec<usize> = (1..=cfg.max_dim).collect();
    let mut stream = 0u64;
    for &a in &dims {
        for &b in &dims {
            for &c in &dims {
                if a.max(b).max(c) == 1 {
                    continue;
                }
                stream += 1;
                for s in 0..cfg.samples {
                    let mut rng = case_rng(cfg.seed, stream, s as u64);
                    let f = random_table::<R>(&mut rng, a, b, cfg.support)?.to_family(&clean)?;
                    let g = random_table::<R>(&mut rng, b, c, cfg.support)?.to_family(&clean)?;
                    pairs.push((g, f));
                }
            }
            if a.max(b) > 1 {
                stream += 1;
                for s in 0..cfg.samples {
                    let mut rng = case_rng(cfg.seed, stream, s as u64);
                    singles.push(random_table::<R>(&mut rng, a, b, cfg.support)?.to_family(&clean)?);
                }
            }
        }
    }

    let bound = cfg.bound;
    let q = cfg.modality;
    report.push(run_cases("kleisli_compose = faa_compose", &pairs, |(g, f)| {
        wrap((|| {
            let via_faa = KleisliMap::from_family(&faa.compose_upto(g, f, bound)?, bound)?;
            let via_q = kleisli_compose(&q, &KleisliMap::from_family(g, bound)?, &KleisliMap::from_family(f, bound)?, bound)?;
            Ok((via_faa != via_q).then(|| format!("g = {g:?}, f = {f:?}: Faà gives {via_faa:?}, Q gives {via_q:?}")))
        })())
    }));
    report.push(run_cases("kleisli_D = faa_D", &singles, |f| {
        wrap((|| {
            let via_faa = KleisliMap::from_family(&faa.derivative(f)?, bound)?;
            let via_q = kleisli_d(&q, &KleisliMap::from_family(f, bound + 1)?, bound)?;
            Ok((via_faa != via_q).then(|| format!("f = {f:?}: Faà gives {via_faa:?}, Q gives {via_q:?}")))
        })())
    }));
    report.push(run_cases("Q-linear iff D-linear", &exhaustive, |f| {
        wrap((|| {
            let proj1 = crate::cdc::blocks(&clean.base, f.dom, 2, &[Some(1)])?;
            let g0 = clean.counit(f);
            let g1_ok = clean.base.equal(
                &f.family.get(1).cloned().unwrap_or_else(|| clean.base.zero(2 * f.dom, f.cod)),
                &clean.base.compose(&g0, &proj1)?,
            )?;
            let q_linear = g1_ok && f.family.len() <= 2;
            let d_linear = is_d_linear(&clean, f)?.is_none();
            Ok((q_linear != d_linear).then(|| format!("{f:?}: Q-linear {q_linear}, D-linear {d_linear}")))
        })())
    }));
    Ok(report)
}

/// The Faà di Bruno composite and differential against the coalgebras of
/// substituted and differentiated polynomials over ℤ.
pub fn faa_suite(pairs: usize, seed: u64, max_n: usize, fault: Option<FaaFault>) -> Report {
    let faa = Faa::with_fault(PolyCat::<Int>::default(), fault);
    let sampler = PolySampler { max_arity: 2, max_degree: 3, max_terms: 3 };
    let mut report = Report::new("faa")
        .with_config("pairs", pairs)
        .with_config("seed", seed)
        .with_config("max_n", max_n)
        .with_config("max_degree", sampler.max_degree);
    let cases: Vec<(PolyMap<Int>, PolyMap<Int>)> = (0..pairs)
        .map(|i| {
            let mut rng = case_rng(seed, 40, i as u64);
            let (a, b, c) = (rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(1..=2));
            let f = sampler.map(&mut rng, a, b);
            let g = sampler.map(&mut rng, b, c);
            (g, f)
        })
        .collect();
    report.push(run_cases("composite family = coalgebra of composite", &cases, |(g, f)| {
        wrap((|| {
            let lhs = faa.compose_upto(&faa.coalgebra_upto(g, max_n)?, &faa.coalgebra_upto(f, max_n)?, max_n)?;
            let rhs = faa.coalgebra_upto(&g.substitute(f)?, max_n)?;
            Ok((!faa.equal(&lhs, &rhs)?).then(|| format!("g = {g}, f = {f}: {lhs:?} vs {rhs:?}")))
        })())
    }));
    report.push(run_cases("faa_D of coalgebra = coalgebra of D", &cases, |(_, f)| {
        wrap((|| {
            let lhs = faa.derivative(&faa.coalgebra(f, 8)?)?;
            let rhs = faa.coalgebra(&faa.base.derivative(f)?, 8)?;
            Ok((!faa.equal(&lhs, &rhs)?).then(|| format!("f = {f}: {lhs:?} vs {rhs:?}")))
        })())
    }));
    report.push(run_cases("counit of coalgebra is the map", &cases, |(_, f)| {
        wrap((|| {
            let c = faa.coalgebra(f, 8)?;
            Ok((faa.counit(&c) != *f).then(|| format!("f = {f}")))
        })())
    }));
    report
}

/// The partition decomposition of iterated differentials and the higher
/// components of Faà di Bruno derivatives, on random polynomials over ℤ.
pub fn iterated_suite(samples: usize, seed: u64) -> Report {
    let cat = PolyCat::<Int>::default();
    let faa = Faa::new(cat.clone());
    let sampler = PolySampler { max_arity: 2, max_degree: 3, max_terms: 3 };
    let mut report = Report::new("iterated-derivatives").with_config("samples", samples).with_config("seed", seed);
    let maps: Vec<PolyMap<Int>> = (0..samples)
        .map(|i| {
            let mut rng = case_rng(seed, 50, i as u64);
            let (a, b) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            sampler.map(&mut rng, a, b)
        })
        .collect();
    report.push(run_cases("decompose_iterated = D^n, n <= 3", &maps, |f| {
        wrap((|| {
            for n in 0..=3 {
                if decompose_iterated(&cat, f, n)? != iterated_derivative(&cat, f, n)? {
                    return Ok(Some(format!("f = {f}, n = {n}")));
                }
            }
            Ok(None)
        })())
    }));
    report.push(run_cases("reconstruct_from_iterated(D^n f) = f^(n), n <= 3", &maps, |f| {
        wrap((|| {
            let a = cat.dom(f);
            for n in 0..=3 {
                let lhs = reconstruct_from_iterated(&cat, &iterated_derivative(&cat, f, n)?, a, n)?;
                if lhs != nth_derivative(&cat, f, n)? {
                    return Ok(Some(format!("f = {f}, n = {n}")));
                }
            }
            Ok(None)
        })())
    }));
    report.push(run_cases("faa_higher(m, n) = component n of the mth derivative", &maps, |f| {
        wrap((|| {
            let c = faa.coalgebra(f, 8)?;
            for m in 0..=2 {
                let dm = nth_derivative(&faa, &c, m)?;
                for n in 0..=2 {
                    let width = cat.dom(f) * (m + 1) * (n + 1);
                    let slow = dm.family.get(n).cloned().unwrap_or_else(|| PolyMap::zero(width, cat.cod(f)));
                    if faa.higher(&c, m, n)? != slow {
                        return Ok(Some(format!("f = {f}, m = {m}, n = {n}")));
                    }
                }
            }
            Ok(None)
        })())
    }));
    report
}

fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty")];
        for x in &row {
            next.push(next.last().expect("nonempty") + x);
        }
        row = next;
    }
    row[0]
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Set partitions, partial bijections and the arrangement of a grid.
pub fn combinat_suite() -> Report {
    let mut report = Report::new("combinat");
    let ns: Vec<usize> = (0..=8).collect();
    report.push(run_cases("partitions of [n] count Bell numbers, n <= 8", &ns, |n| {
        let got = partitions(*n).len() as u64;
        (got != bell(*n)).then(|| format!("n = {n}: {got} vs {}", bell(*n)))
    }));
    let mns: Vec<(usize, usize)> = (0..=5).flat_map(|m| (0..=5).map(move |n| (m, n))).collect();
    report.push(run_cases("partial bijections [m] ≃ [n] count Σ C(m,k)C(n,k)k!", &mns, |(m, n)| {
        let want: u64 = (0..=(*m.min(n)) as u64)
            .map(|k| binom(*m as u64, k) * binom(*n as u64, k) * (1..=k).product::<u64>())
            .sum();
        let got = partial_isos(*m, *n).len() as u64;
        (got != want).then(|| format!("m = {m}, n = {n}: {got} vs {want}"))
    }));
    let grid: Vec<Vec<String>> = (0..=3).map(|i| (0..=4).map(|j| format!("x{i}{j}")).collect()).collect();
    let got = PartialIso::new(3, 4, vec![(1, 2), (3, 4)]).and_then(|t| arrange(&t, &grid));
    let want = ["x00", "x12", "x34", "x20", "x01", "x03"];
    report.push(match got {
        Ok(v) if v == want => Check::pass("worked arrangement example", 1),
        other => Check::fail("worked arrangement example", 1, format!("{other:?}")),
    });
    report
}

/// Full fidelity of the Yoneda embedding of `Mat(ℤ/2)` and the presheaf
/// constructions, at stages of dimension `<= max_dim`.
pub fn embedding_suite(max_dim: usize) -> Result<Report> {
    let mut report = Report::new("embedding").with_config("max_dim", max_dim).with_config("rig", "zmod:2");
    report.absorb("yoneda", yoneda_suite(max_dim)?);
    report.absorb("presheaf", presheaf_suite(max_dim, 2));
    Ok(report)
}

/// Full fidelity, functoriality and the classification of sequences.
pub fn yoneda_suite(max_dim: usize) -> Result<Report> {
    let cfg = yoneda::FidelityConfig { probe_dim: max_dim, ..Default::default() };
    let mut report = Report::new("yoneda").with_config("max_dim", max_dim);
    for a in 1..=max_dim {
        for b in 1..=max_dim {
            let r = yoneda::full_fidelity::<Z2>(a, b, &cfg)?;
            for key in ["faa_maps", "hom_size", "eliminated_by_differential"] {
                report = report.with_config(&format!("{key}[{a},{b}]"), &r.config[key]);
            }
            report.absorb(&format!("{a}→{b}"), r);
        }
    }
    let dims: Vec<usize> = (1..=max_dim).collect();
    report.absorb("functor", yoneda::check_functoriality::<Z2>(&dims, 2, 1)?);
    let pcfg = PresheafConfig { max_stage: max_dim, probe_dim: 1 };
    for a in 1..=max_dim.min(1) {
        let q = dpsh::presheaf_q::<Z2>(dpsh::representable(a), 2);
        let seq = (0..=2).map(|n| yoneda::canonical_element(a, n)).collect();
        report.absorb("classify canonical", yoneda::classify(q, a, seq, 1)?.check(&pcfg, true));
    }
    let f = Matrix::new(2, 1, vec![Z2::new(1), Z2::new(1)])?;
    let yf = yoneda::yoneda_map(&f)?;
    let seq = (0..=2)
        .map(|n| dpsh::matrix_vector(&yf.family.get(n).cloned().unwrap_or_else(|| Matrix::zero(2 * (n + 1), 1))))
        .collect();
    report.absorb("classify y f", yoneda::classify(dpsh::representable(1), 2, seq, 1)?.check(&pcfg, true));
    Ok(report)
}

/// The presheaf axioms on every constructed presheaf, plus the dictionary
/// with higher-order actions; the sabotaged representable is reported
/// separately and expected to fail.
pub fn presheaf_suite(max_stage: usize, q_bound: usize) -> Report {
    let cfg = PresheafConfig { max_stage, probe_dim: max_stage };
    let mut report = Report::new("presheaf")
        .with_config("max_stage", max_stage)
        .with_config("probe_dim", max_stage)
        .with_config("q_bound", q_bound);
    for x in constructed_presheaves(max_stage, q_bound) {
        let name = x.name();
        report.absorb(&name, dpsh::check_presheaf(x.as_ref(), &cfg));
        report.absorb(&name, yoneda::action_round_trip(x.as_ref(), &PresheafConfig { max_stage, probe_dim: 1 }));
    }
    report
}

pub fn constructed_presheaves(max_dim: usize, q_bound: usize) -> Vec<dpsh::Presheaf<Z2>> {
    let mut out: Vec<dpsh::Presheaf<Z2>> = Vec::new();
    for b in 1..=max_dim {
        out.push(dpsh::representable(b));
    }
    out.push(dpsh::unit());
    out.push(std::sync::Arc::new(dpsh::Zero));
    out.push(dpsh::tensor(dpsh::representable(1), dpsh::representable(max_dim)));
    out.push(dpsh::tensor(dpsh::unit(), dpsh::representable(1)));
    out.push(dpsh::presheaf_q(dpsh::representable(1), q_bound));
    out
}

/// One sabotage and the first counterexample that exposed it.
#[derive(Debug, Clone)]
pub struct Mutation {
    pub name: &'static str,
    pub suite: String,
    pub detected: bool,
    pub counterexample: Option<String>,
}

fn first_failure(r: &Report) -> Option<String> {
    r.failures().find_map(|c| c.counterexample.as_ref().map(|w| format!("{}: {w}", c.name)))
}

/// Runs reduced suites with each documented fault injected.
pub fn mutation_suite(seed: u64) -> Result<(Report, Vec<Mutation>)> {
    let mut found = Vec::new();
    let faa_faults = [("DropPartitionTerm", FaaFault::DropPartitionTerm), ("OmitDerivativeSum", FaaFault::OmitDerivativeSum)];
    for (name, fault) in faa_faults {
        let r = faa_suite(10, seed, 4, Some(fault));
        found.push(Mutation { name, suite: r.suite.clone(), detected: !r.passed, counterexample: first_failure(&r) });
    }
    let q_faults = [
        ("UnsortedTail", QFault::UnsortedTail),
        ("SwapCounitCases", QFault::SwapCounitCases),
        ("DropCoproductTerm", QFault::DropCoproductTerm),
    ];
    for (name, fault) in q_faults {
        let r = check_modality::<Z2>(&LawConfig { max_dim: 2, max_degree: 2, modality: Modality::new(Some(fault)) });
        found.push(Mutation { name, suite: r.suite.clone(), detected: !r.passed, counterexample: first_failure(&r) });
    }
    let mut report = Report::new("mutation").with_config("seed", seed);
    for m in &found {
        let check = match (&m.counterexample, m.detected) {
            (Some(_), true) => Check::pass(format!("{} is detected by {}", m.name, m.suite), 1),
            _ => Check::fail(format!("{} is detected by {}", m.name, m.suite), 1, "sabotaged suite passed"),
        };
        report.push(check);
        if let Some(w) = &m.counterexample {
            report = report.with_config(&format!("witness:{}", m.name), w);
        }
    }
    Ok((report, found))
}
