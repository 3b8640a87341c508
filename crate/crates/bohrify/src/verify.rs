//! The acceptance suite run by `verify-all`, over the shipped fixture models.

use anyhow::{Context as _, Result};
use bohrify_core::holonomy::GroupValuedField;
use bohrify_core::logic::{
    alpha_is_order_isomorphism, daseinise, excluded_middle_search, projection_lattices,
    ClopenSubobject,
};
use bohrify_core::spectrum::{truncated_chain, ExternalSpectrum, PointSet, SobrietyOptions};
use bohrify_core::symmetry::{diffeo_invariance_check, gauge_invariance_check, intertwining_check};
use bohrify_core::{ComplexMatrix, Exec, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commands::{self, build_poset, build_spectrum, Command};
use crate::model::{parse_model, LoadOptions, LoadedModel};
use crate::report::Report;

/// Name and JSON text of every shipped fixture.
pub const FIXTURES: [(&str, &str); 6] = [
    ("z2_one_edge", include_str!("../fixtures/z2_one_edge.json")),
    ("z2_two_edge", include_str!("../fixtures/z2_two_edge.json")),
    (
        "z2_three_edge",
        include_str!("../fixtures/z2_three_edge.json"),
    ),
    (
        "z2_four_edge",
        include_str!("../fixtures/z2_four_edge.json"),
    ),
    ("s3_one_edge", include_str!("../fixtures/s3_one_edge.json")),
    ("q8_one_edge", include_str!("../fixtures/q8_one_edge.json")),
];

/// The fixture carrying the three-context excluded-middle counterexample.
pub const EXCLUDED_MIDDLE_FIXTURE: &str = "z2-one-edge";

pub const UNITARITY_TOL: f64 = 1e-9;
pub const CONJUGATION_TOL: f64 = 1e-9;
pub const CONJUGATION_SAMPLES: usize = 50;
pub const LOGIC_TRIPLES: usize = 200;
/// Duality is checked exhaustively on posets up to this many contexts.
pub const DUALITY_MAX_CONTEXTS: usize = 6;
/// Brute-force closures enumerate every subset up to this many points.
pub const BRUTE_FORCE_MAX_POINTS: usize = 16;

pub fn load_fixtures(options: LoadOptions) -> Result<Vec<LoadedModel>> {
    FIXTURES
        .iter()
        .map(|(name, text)| parse_model(text, options).with_context(|| format!("fixture {name}")))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub struct Verification {
    pub report: Report,
    pub criteria: Vec<Criterion>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

type Check = fn(&mut Report, &[Prepared], Exec) -> Result<String>;

struct Prepared<'a> {
    model: &'a LoadedModel,
    poset: bohrify_core::context::ContextPoset,
    spectrum: ExternalSpectrum,
}

/// Runs all twelve criteria over `models` and records per-model findings.
pub fn verify_all(models: &[LoadedModel], exec: Exec) -> Result<Verification> {
    let mut report = Report::new("verify-all");
    for m in models {
        report.line(format!("fixture: {} sha256 {}", m.name, m.digest));
    }
    let prepared: Vec<Prepared> = models
        .iter()
        .map(|m| {
            let poset = build_poset(m, exec)?;
            let spectrum = build_spectrum(m, &poset, exec)?;
            Ok(Prepared {
                model: m,
                poset,
                spectrum,
            })
        })
        .collect::<Result<_>>()?;

    let suite: [(&'static str, Check); 12] = [
        ("Weyl operators are unitary", unitarity),
        ("Weyl conjugation law", conjugation),
        ("commuting flows compose", commuting_flows),
        ("mixed context criterion", mixed_contexts),
        ("closed and open sets are dual", duality),
        ("point closure formula", closures),
        ("finite sobriety", sobriety),
        ("truncated ascending chains", chains),
        ("diffeomorphism invariance", diffeo),
        ("gauge invariance", gauge),
        ("logic of daseinised projections", logic),
        ("determinism", determinism),
    ];
    let mut criteria = Vec::with_capacity(suite.len());
    for (i, (name, f)) in suite.iter().enumerate() {
        report.section(format!("criterion {}: {name}", i + 1));
        let failures_before = report.failures();
        let detail = f(&mut report, &prepared, exec)?;
        let passed = report.failures() == failures_before;
        report.check(name, passed, &detail);
        criteria.push(Criterion {
            id: i + 1,
            name,
            passed,
            detail,
        });
    }
    Ok(Verification { report, criteria })
}

/// Fields worth testing on a model: those of its Weyl generators plus every
/// constant field, deduplicated in first-seen order.
fn test_fields(m: &LoadedModel) -> Vec<GroupValuedField> {
    let n = m.model.graph().vertex_count();
    let mut out: Vec<GroupValuedField> = Vec::new();
    let constants = (0..m.model.group().order()).map(|g| GroupValuedField::constant(n, g));
    for d in m
        .weyl_generators()
        .map(|(_, _, d)| d.clone())
        .chain(constants)
    {
        if !out.contains(&d) {
            out.push(d);
        }
    }
    out
}

fn unitarity(r: &mut Report, ps: &[Prepared], _: Exec) -> Result<String> {
    let mut worst = 0.0f64;
    let mut count = 0;
    for p in ps {
        let m = &p.model.model;
        for s in 0..m.surfaces().len() {
            for d in test_fields(p.model) {
                let w = m.weyl_operator(s, &d)?;
                let residual = (&(&w.adjoint() * &w) - &ComplexMatrix::identity(m.hilbert_dim()))
                    .frobenius_norm();
                worst = worst.max(residual);
                count += 1;
                if residual > UNITARITY_TOL {
                    r.check(
                        &format!("{} surface {} unitary", p.model.name, m.surfaces()[s].id),
                        false,
                        format!("residual {residual:e}"),
                    );
                }
            }
        }
    }
    Ok(format!("{count} operators, worst residual {worst:.1e}"))
}

fn random_table(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n)
        .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

fn conjugation(r: &mut Report, ps: &[Prepared], _: Exec) -> Result<String> {
    let mut worst = 0.0f64;
    let mut count = 0;
    for (i, p) in ps.iter().enumerate() {
        let m = &p.model.model;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + i as u64);
        for (name, s, d) in p.model.weyl_generators() {
            let w = m.weyl_operator(s, d)?;
            for _ in 0..CONJUGATION_SAMPLES {
                let f = random_table(&mut rng, m.hilbert_dim());
                let lhs = &(&w * &m.config_operator(&f)?) * &w.adjoint();
                let rhs = m.config_operator(&m.translate_function(s, d, &f)?)?;
                let residual = (&lhs - &rhs).frobenius_norm();
                worst = worst.max(residual);
                count += 1;
                if residual > CONJUGATION_TOL {
                    r.check(
                        &format!("{} {name} conjugation", p.model.name),
                        false,
                        format!("residual {residual:e}"),
                    );
                }
            }
        }
    }
    Ok(format!(
        "{count} random functions, worst residual {worst:.1e}"
    ))
}

fn commuting_flows(r: &mut Report, ps: &[Prepared], _: Exec) -> Result<String> {
    let mut pairs = 0;
    for p in ps {
        let m = &p.model.model;
        let g = m.group();
        let fields = test_fields(p.model);
        let mut ok = true;
        for s in 0..m.surfaces().len() {
            for d1 in &fields {
                for d2 in &fields {
                    if !d1.pointwise_commutes(g, d2) {
                        continue;
                    }
                    pairs += 1;
                    let prod = d1.pointwise_mul(g, d2);
                    let lhs = &m.weyl_operator(s, d1)? * &m.weyl_operator(s, d2)?;
                    ok &= lhs.approx_eq(&m.weyl_operator(s, &prod)?, p.model.tol)
                        && m.theta_compose_check(s, d1, d2)?;
                }
            }
        }
        r.check(
            &format!("{} products of commuting flows", p.model.name),
            ok,
            "",
        );
    }
    Ok(format!("{pairs} commuting pairs"))
}

/// Indicators of the cycles of a permutation: each is translation invariant.
fn orbit_indicators(perm: &[usize]) -> Vec<Vec<C64>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut f = vec![C64::new(0.0, 0.0); perm.len()];
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            f[i] = C64::new(1.0, 0.0);
            i = perm[i];
        }
        out.push(f);
    }
    out
}

fn mixed_contexts(r: &mut Report, ps: &[Prepared], _: Exec) -> Result<String> {
    let mut invariant_total = 0;
    for p in ps {
        let m = &p.model.model;
        let mut invariant_ok = true;
        let mut control = false;
        for (name, s, d) in p.model.weyl_generators() {
            let theta = m.theta_permutation(s, d)?;
            let mut candidates: Vec<(String, Vec<C64>)> = p
                .model
                .config_tables()
                .map(|(n, t)| (n.to_string(), t.to_vec()))
                .collect();
            for (k, f) in orbit_indicators(&theta).into_iter().enumerate() {
                candidates.push((format!("orbit{k}"), f));
            }
            for c in m.connections() {
                candidates.push((format!("delta{}", m.index_of(&c)), m.indicator_table(&c)));
            }
            let found =
                bohrify_core::context::mixed_context_search(m, s, d, &candidates, p.model.tol)?;
            for f in &found {
                if f.invariant {
                    invariant_total += 1;
                    invariant_ok &= f.commutes;
                } else if !f.commutes {
                    control = true;
                }
            }
            r.line(format!(
                "{} {name}: {} invariant of {} candidates",
                p.model.name,
                found.iter().filter(|f| f.invariant).count(),
                found.len()
            ));
        }
        r.check(
            &format!("{} invariant functions commute", p.model.name),
            invariant_ok,
            "",
        );
        r.check(
            &format!("{} negative control", p.model.name),
            control,
            "a non-invariant function fails to commute",
        );
    }
    Ok(format!("{invariant_total} invariant function checks"))
}

fn subset(bits: u64, n: usize) -> PointSet {
    let mut s = PointSet::with_capacity(n);
    for i in 0..n {
        s.set(i, bits >> i & 1 == 1);
    }
    s
}

fn duality(r: &mut Report, ps: &[Prepared], _: Exec) -> Result<String> {
    let mut checked = 0u64;
    for p in ps {
        let s = &p.spectrum;
        if p.poset.len() > DUALITY_MAX_CONTEXTS {
            r.line(format!(
                "{}: {} contexts, skipped",
                p.model.name,
                p.poset.len()
            ));
            continue;
        }
        let n = s.len();
        let total = 1u64 << n;
        if total > p.model.closed_set_cap as u64 {
            r.check(
                &format!("{} duality", p.model.name),
                false,
                format!("2^{n} subsets exceed the enumeration cap"),
            );
            continue;
        }
        let ok = (0..total).all(|bits| {
            let set = subset(bits, n);
            s.is_closed(&set) == s.is_open(&s.complement(&set))
        });
        checked += total;
        r.check(
            &format!("{} duality", p.model.name),
            ok,
            format!("all {total} subsets"),
        );
    }
    Ok(format!("{checked} subsets"))
}

fn closures(r: &mut Report, ps: &[Prepared], _: Exec) -> Result<String> {
    let mut points = 0;
    for p in ps {
        let s = &p.spectrum;
        let n = s.len();
        let (closed, how): (Vec<PointSet>, String) = if n <= BRUTE_FORCE_MAX_POINTS {
            let all = (0..1u64 << n)
                .map(|b| subset(b, n))
                .filter(|set| s.is_closed(set))
                .collect();
            (all, format!("all 2^{n} subsets"))
        } else {
            let all = s.closed_sets(p.model.closed_set_cap)?;
            let k = all.len();
            (all, format!("{k} enumerated closed sets"))
        };
        let ok = (0..n).all(|q| {
            let mut smallest = s.full_set();
            for c in closed.iter().filter(|c| c.contains(q)) {
                smallest.intersect_with(c);
            }
            smallest == s.point_closure(q)
        });
        points += n;
        r.check(&format!("{} closures", p.model.name), ok, how);
    }
    Ok(format!("{points} points"))
}

fn sobriety(r: &mut Report, ps: &[Prepared], exec: Exec) -> Result<String> {
    let mut irreducible = 0;
    for p in ps {
        let options = SobrietyOptions {
            cap: p.model.closed_set_cap,
            allow_partial: false,
        };
        let rep = p.spectrum.sobriety_check_with(options, exec)?;
        irreducible += rep.witnesses.len();
        r.check(
            &format!("{} sober", p.model.name),
            rep.sober,
            format!(
                "{} irreducible closed sets among {} candidates",
                rep.witnesses.len(),
                rep.candidates_examined
            ),
        );
    }
    Ok(format!(
        "{irreducible} irreducible closed sets, each with one generic point"
    ))
}

fn chains(r: &mut Report, ps: &[Prepared], _: Exec) -> Result<String> {
    let mut runs = 0;
    let mut deepest = 0;
    for p in ps {
        let Some(setup) = &p.model.chain else {
            continue;
        };
        for depth in 2..=setup.surfaces.len() {
            let rep = truncated_chain(
                &p.model.model,
                &setup.surfaces[..depth],
                &setup.field,
                &setup.values[..depth],
                p.model.tol,
            )?;
            runs += 1;
            deepest = deepest.max(depth);
            r.check(
                &format!("{} depth {depth}", p.model.name),
                rep.passed(),
                format!("dims {}", crate::report::fmt_list(rep.dims.iter())),
            );
        }
    }
    r.check(
        "depth 4 reached",
        deepest >= 4,
        format!("deepest {deepest}"),
    );
    Ok(format!("{runs} chains"))
}

fn diffeo(r: &mut Report, ps: &[Prepared], exec: Exec) -> Result<String> {
    let mut pairs = 0;
    for p in ps {
        let m = p.model;
        let rep = diffeo_invariance_check(&p.poset, &m.model, &m.automorphisms, m.tol, exec)?;
        pairs += rep.entries.len();
        let fields = test_fields(m);
        let intertwined = m.automorphisms.iter().all(|phi| {
            m.model.surfaces().iter().all(|s| {
                fields
                    .iter()
                    .all(|d| intertwining_check(phi, &m.model, s, d))
            })
        });
        r.check(
            &format!("{} image contexts commutative", m.name),
            rep.passed(),
            format!(
                "{} automorphisms, {} violations",
                m.automorphisms.len(),
                rep.violations().count()
            ),
        );
        r.check(
            &format!("{} intertwining", m.name),
            intertwined,
            "exhaustive",
        );
    }
    Ok(format!("{pairs} context/automorphism pairs"))
}

fn gauge(r: &mut Report, ps: &[Prepared], exec: Exec) -> Result<String> {
    let mut pairs = 0;
    for p in ps {
        let m = p.model;
        let rep = gauge_invariance_check(&p.poset, &m.model, &m.gauges, m.tol, exec)?;
        pairs += rep.entries.len();
        r.check(
            &format!("{} image contexts commutative", m.name),
            rep.passed(),
            format!(
                "{} gauges, {} violations",
                m.gauges.len(),
                rep.violations().count()
            ),
        );
    }
    Ok(format!("{pairs} context/gauge pairs"))
}

fn random_subobject(rng: &mut ChaCha8Rng, s: &ExternalSpectrum) -> ClopenSubobject {
    let picks: Vec<usize> = (0..s.len()).filter(|_| rng.random_bool(0.3)).collect();
    ClopenSubobject::generated_by(s, &picks)
}

fn logic(r: &mut Report, ps: &[Prepared], _: Exec) -> Result<String> {
    let mut violations_found = false;
    for (i, p) in ps.iter().enumerate() {
        let m = p.model;
        let s = &p.spectrum;
        let lattices = projection_lattices(&p.poset, m.tol)?;
        let mut iso = true;
        let mut fixes = true;
        for (c, lat) in lattices.iter().enumerate() {
            iso &=
                alpha_is_order_isomorphism(lat, &p.poset.context(c).algebra, s.spectrum(c), m.tol)?;
            for q in &lat.projections {
                fixes &= daseinise(q, lat, m.tol)?.approx_eq(q, m.tol);
            }
        }
        r.check(&format!("{} alpha order isomorphism", m.name), iso, "");
        r.check(
            &format!("{} daseinisation fixes context projections", m.name),
            fixes,
            "",
        );

        let mut rng = ChaCha8Rng::seed_from_u64(0xd15 + i as u64);
        let mut distributive = true;
        let mut adjunction = true;
        for _ in 0..LOGIC_TRIPLES {
            let a = random_subobject(&mut rng, s);
            let b = random_subobject(&mut rng, s);
            let c = random_subobject(&mut rng, s);
            distributive &= a.meet(&b.join(&c)) == a.meet(&b).join(&a.meet(&c));
            adjunction &= c.meet(&a).leq(&b) == c.leq(&a.implies(&b, s));
        }
        r.check(
            &format!("{} distributivity", m.name),
            distributive,
            format!("{LOGIC_TRIPLES} triples"),
        );
        r.check(
            &format!("{} Heyting adjunction", m.name),
            adjunction,
            format!("{LOGIC_TRIPLES} triples"),
        );

        let found = excluded_middle_search(&p.poset, s, &m.projections, m.tol)?;
        let violating: Vec<&str> = found
            .iter()
            .filter(|e| !e.excluded_middle)
            .map(|e| e.label.as_str())
            .collect();
        r.line(format!(
            "{}: excluded middle fails for {}",
            m.name,
            crate::report::fmt_list(violating.iter())
        ));
        if m.name == EXCLUDED_MIDDLE_FIXTURE {
            violations_found = !violating.is_empty();
            r.check(
                &format!("{} excluded middle violated", m.name),
                violations_found,
                format!("{} contexts", p.poset.len()),
            );
        }
    }
    if !ps.iter().any(|p| p.model.name == EXCLUDED_MIDDLE_FIXTURE) {
        r.check(
            "excluded middle fixture present",
            false,
            EXCLUDED_MIDDLE_FIXTURE,
        );
    }
    Ok(if violations_found {
        "excluded middle fails on the three-context poset".into()
    } else {
        "no excluded-middle counterexample".into()
    })
}

/// Every command's report must not depend on the execution strategy or on
/// repetition.
fn determinism(r: &mut Report, ps: &[Prepared], _: Exec) -> Result<String> {
    let mut compared = 0;
    for p in ps {
        let mut cmds = vec![
            Command::Contexts,
            Command::Spectrum,
            Command::Sobriety { partial: false },
            Command::Logic { projections: None },
        ];
        if let Some(c) = &p.model.chain {
            cmds.push(Command::Chain {
                depth: c.surfaces.len(),
            });
        }
        for cmd in cmds {
            let first = commands::run(&cmd, p.model, Exec::Sequential)?;
            let second = commands::run(&cmd, p.model, Exec::default())?;
            let same = first.report.render() == second.report.render()
                && first.diagrams == second.diagrams;
            compared += 1;
            if !same {
                r.check(
                    &format!("{} {} reproducible", p.model.name, cmd.name()),
                    false,
                    "",
                );
            }
        }
    }
    Ok(format!(
        "{compared} command reports byte-identical across runs"
    ))
}
