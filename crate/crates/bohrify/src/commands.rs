//! The analysis commands. Each one appends its findings to a [`Report`] and
//! may emit DOT diagrams; ordering never depends on the execution strategy.

use anyhow::{bail, Context as _, Result};
use bohrify_core::algebra::ComplexMatrix;
use bohrify_core::context::{build_context_poset_with, ContextPoset};
use bohrify_core::logic::{
    alpha_is_order_isomorphism, daseinise, daseinise_global, dominates, excluded_middle_search,
    projection_lattices,
};
use bohrify_core::spectrum::{truncated_chain, ExternalSpectrum, SobrietyMode, SobrietyOptions};
use bohrify_core::symmetry::{
    diffeo_invariance_check, gauge_invariance_check, intertwining_check, symmetric_weyl_check,
};
use bohrify_core::{Error as CoreError, Exec};

use crate::dot::{contexts_dot, spectrum_dot};
use crate::model::LoadedModel;
use crate::report::{fmt_c, fmt_list, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Contexts,
    Spectrum,
    Sobriety { partial: bool },
    Chain { depth: usize },
    Invariance { diffeo: bool, gauge: bool },
    Logic { projections: Option<Vec<String>> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Contexts => "contexts",
            Command::Spectrum => "spectrum",
            Command::Sobriety { .. } => "sobriety",
            Command::Chain { .. } => "chain",
            Command::Invariance { .. } => "invariance",
            Command::Logic { .. } => "logic",
        }
    }
}

/// A DOT file name and its contents.
pub type Diagram = (String, String);

pub struct Output {
    pub report: Report,
    pub diagrams: Vec<Diagram>,
}

pub fn build_poset(m: &LoadedModel, exec: Exec) -> Result<ContextPoset> {
    build_context_poset_with(m.ambient.clone(), m.generators.clone(), m.tol, exec)
        .context("building the context poset")
}

pub fn build_spectrum(
    m: &LoadedModel,
    poset: &ContextPoset,
    exec: Exec,
) -> Result<ExternalSpectrum> {
    ExternalSpectrum::build(poset, m.tol, exec).context("building the external spectrum")
}

pub fn run(command: &Command, m: &LoadedModel, exec: Exec) -> Result<Output> {
    let mut report = Report::new(command.name());
    report.model(m);
    let mut diagrams = Vec::new();
    let poset = build_poset(m, exec)?;
    match command {
        Command::Contexts => {
            contexts_section(&mut report, &poset);
            diagrams.push((
                format!("{}-contexts.dot", m.name),
                contexts_dot(&m.name, &poset),
            ));
        }
        Command::Spectrum => {
            let s = build_spectrum(m, &poset, exec)?;
            spectrum_section(&mut report, &poset, &s);
            diagrams.push((
                format!("{}-spectrum.dot", m.name),
                spectrum_dot(&m.name, &poset, &s, None),
            ));
        }
        Command::Sobriety { partial } => {
            let s = build_spectrum(m, &poset, exec)?;
            sobriety_section(&mut report, m, &s, *partial, exec)?;
        }
        Command::Chain { depth } => {
            chain_section(&mut report, m, *depth)?;
        }
        Command::Invariance { diffeo, gauge } => {
            let both = !diffeo && !gauge;
            if *diffeo || both {
                diffeo_section(&mut report, m, &poset, exec)?;
            }
            if *gauge || both {
                gauge_section(&mut report, m, &poset, exec)?;
            }
        }
        Command::Logic { projections } => {
            let s = build_spectrum(m, &poset, exec)?;
            diagrams.extend(logic_section(
                &mut report,
                m,
                &poset,
                &s,
                projections.as_deref(),
            )?);
        }
    }
    Ok(Output { report, diagrams })
}

pub fn contexts_section(r: &mut Report, poset: &ContextPoset) {
    r.section("contexts");
    r.line(format!("contexts: {}", poset.len()));
    for (i, c) in poset.contexts().iter().enumerate() {
        r.line(format!(
            "context {i}: {} (dim {})",
            c.label,
            c.algebra.linear_dim()
        ));
    }
    let hasse = poset.hasse_edges();
    r.line(format!("covering relations: {}", hasse.len()));
    for (a, b) in &hasse {
        r.line(format!(
            "  {} < {}",
            poset.context(*a).label,
            poset.context(*b).label
        ));
    }
    let (stabilises, chain) = poset.ascending_chain_check();
    let names: Vec<&str> = chain
        .iter()
        .map(|&i| poset.context(i).label.as_str())
        .collect();
    r.check(
        "ascending chains stabilise",
        stabilises,
        format!(
            "longest chain {} of length {}",
            names.join(" < "),
            chain.len()
        ),
    );
}

pub fn spectrum_section(r: &mut Report, poset: &ContextPoset, s: &ExternalSpectrum) {
    r.section("external spectrum");
    r.line(format!("points: {}", s.len()));
    for (p, sp) in s.points().iter().enumerate() {
        let ctx = poset.context(sp.context);
        let ch = s.character(p);
        let values: Vec<String> = ctx
            .generators
            .iter()
            .map(|&g| {
                let gen = &poset.generators()[g];
                format!(
                    "{}={}",
                    gen.label,
                    fmt_c(ch.evaluate(&ctx.algebra, &gen.matrix))
                )
            })
            .collect();
        r.line(format!(
            "point {p}: ({}, {}) in {} {}",
            sp.context,
            sp.character,
            ctx.label,
            fmt_list(values)
        ));
    }
    r.line(format!("restriction arrows: {}", s.arrows().len()));
    let mut all_closed = true;
    for p in 0..s.len() {
        let cl = s.point_closure(p);
        all_closed &= s.is_closed(&cl);
        r.line(format!("closure of point {p}: {}", fmt_list(cl.ones())));
    }
    r.check("restriction arrows compose", s.arrows_compose(), "");
    r.check("point closures are closed", all_closed, "");
}

pub fn sobriety_section(
    r: &mut Report,
    m: &LoadedModel,
    s: &ExternalSpectrum,
    partial: bool,
    exec: Exec,
) -> Result<bool> {
    r.section("sobriety");
    let options = SobrietyOptions {
        cap: m.closed_set_cap,
        allow_partial: partial,
    };
    let rep = match s.sobriety_check_with(options, exec) {
        Ok(rep) => rep,
        Err(CoreError::EnumerationCap { cap }) => {
            bail!("more than {cap} candidate closed sets; rerun with --partial for a bounded check")
        }
        Err(e) => return Err(e.into()),
    };
    let mode = match rep.mode {
        SobrietyMode::Full => "full",
        SobrietyMode::Partial => "partial (closures of one- and two-point antichains)",
    };
    r.line(format!("mode: {mode}"));
    r.line(format!(
        "candidate closed sets: {}",
        rep.candidates_examined
    ));
    r.line(format!(
        "sober: {}, {} witnesses",
        rep.sober,
        rep.witnesses.len()
    ));
    for (set, w) in &rep.witnesses {
        r.line(format!("  {} = closure of point {w}", fmt_list(set.ones())));
    }
    if let Some((set, w)) = &rep.counterexample {
        r.line(format!(
            "counterexample: {} has generic points {}",
            fmt_list(set.ones()),
            fmt_list(w.iter())
        ));
    }
    Ok(r.check("finite sobriety", rep.sober, format!("{mode} search")))
}

pub fn chain_section(r: &mut Report, m: &LoadedModel, depth: usize) -> Result<bool> {
    let setup = m.chain.as_ref().context("the model has no chain section")?;
    if depth < 2 || depth > setup.surfaces.len() {
        bail!(
            "chain depth must be between 2 and {}, got {depth}",
            setup.surfaces.len()
        );
    }
    r.section(format!("ascending chain, depth {depth}"));
    let rep = truncated_chain(
        &m.model,
        &setup.surfaces[..depth],
        &setup.field,
        &setup.values[..depth],
        m.tol,
    )?;
    r.line(format!("dims: {}", fmt_list(rep.dims.iter())));
    for (k, ch) in rep.characters.iter().enumerate() {
        r.line(format!(
            "lambda_{}: requested {}, realised {}{}, available {}",
            k + 1,
            fmt_c(ch.requested),
            fmt_c(ch.realized),
            if ch.snapped { " (snapped)" } else { "" },
            fmt_list(ch.available.iter().map(|z| fmt_c(*z)))
        ));
    }
    for st in &rep.steps {
        r.line(format!(
            "X*_{}: points {}, closed {}, irreducible {}, witnesses {}, top {}, escapes {}",
            st.depth,
            fmt_list(st.set.ones()),
            st.closed,
            st.irreducible,
            fmt_list(st.witnesses.iter()),
            st.witness_is_top,
            st.escapes
        ));
    }
    r.check("strictly ascending contexts", rep.strictly_ascending, "");
    Ok(r.check(
        "truncated chain witnesses escape",
        rep.passed(),
        "each truncation is closed and irreducible with the chain top as unique witness",
    ))
}

pub fn diffeo_section(
    r: &mut Report,
    m: &LoadedModel,
    poset: &ContextPoset,
    exec: Exec,
) -> Result<bool> {
    r.section("diffeomorphism invariance");
    r.line(format!("automorphisms: {}", m.automorphisms.len()));
    let rep = diffeo_invariance_check(poset, &m.model, &m.automorphisms, m.tol, exec)?;
    for (t, _) in m.automorphisms.iter().enumerate() {
        let images: Vec<String> = rep
            .entries
            .iter()
            .filter(|e| e.transform == t)
            .map(|e| match e.image_context {
                Some(j) => j.to_string(),
                None => "new".to_string(),
            })
            .collect();
        r.line(format!(
            "automorphism {t}: contexts -> {}",
            fmt_list(images)
        ));
    }
    for v in rep.violations() {
        let (a, b) = v.offending.clone().unwrap_or_default();
        r.line(format!(
            "violation: context {} under automorphism {} ({a}, {b})",
            v.context, v.transform
        ));
    }
    let mut ok = r.check(
        "image contexts commutative",
        rep.passed(),
        format!("{} context/automorphism pairs", rep.entries.len()),
    );
    let mut intertwined = true;
    let mut symmetric_cases = 0;
    let mut symmetric_ok = true;
    for phi in &m.automorphisms {
        for (_, s, d) in m.weyl_generators() {
            intertwined &= intertwining_check(phi, &m.model, &m.model.surfaces()[s], d);
            match symmetric_weyl_check(phi, &m.model, s, d, m.tol) {
                Ok(b) => {
                    symmetric_cases += 1;
                    symmetric_ok &= b;
                }
                Err(CoreError::Hypothesis(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    ok &= r.check(
        "translation intertwining",
        intertwined,
        "exhaustive on connections",
    );
    ok &= r.check(
        "symmetric Weyl operators commute with the automorphism",
        symmetric_ok,
        format!("{symmetric_cases} applicable cases"),
    );
    Ok(ok)
}

pub fn gauge_section(
    r: &mut Report,
    m: &LoadedModel,
    poset: &ContextPoset,
    exec: Exec,
) -> Result<bool> {
    r.section("gauge invariance");
    r.line(format!("gauges: {}", m.gauges.len()));
    let rep = gauge_invariance_check(poset, &m.model, &m.gauges, m.tol, exec)?;
    for v in rep.violations() {
        let (a, b) = v.offending.clone().unwrap_or_default();
        r.line(format!(
            "violation: context {} under gauge {} ({a}, {b})",
            v.context, v.transform
        ));
    }
    let mut conj = true;
    for g in &m.gauges {
        let u = g.unitary(&m.model);
        for gen in &m.generators {
            let lhs = bohrify_core::symmetry::apply_gauge_to_algebra(g, gen, &m.model)?;
            conj &= lhs.approx_eq(&(&(&u * &gen.matrix) * &u.adjoint()), m.tol);
        }
    }
    let ok = r.check(
        "image contexts commutative",
        rep.passed(),
        format!("{} context/gauge pairs", rep.entries.len()),
    );
    Ok(r.check("gauge action is unitary conjugation", conj, "") && ok)
}

pub fn logic_section(
    r: &mut Report,
    m: &LoadedModel,
    poset: &ContextPoset,
    s: &ExternalSpectrum,
    selected: Option<&[String]>,
) -> Result<Vec<Diagram>> {
    r.section("logic");
    let d = m.model.hilbert_dim();
    let mut props: Vec<(String, ComplexMatrix)> = vec![
        ("I".into(), ComplexMatrix::identity(d)),
        ("0".into(), ComplexMatrix::zeros(d)),
    ];
    props.extend(m.projections.iter().cloned());
    if let Some(names) = selected {
        for n in names {
            if !props.iter().any(|(p, _)| p == n) {
                bail!("unknown projection `{n}`");
            }
        }
        props.retain(|(p, _)| names.contains(p));
    }
    let lattices = projection_lattices(poset, m.tol)?;
    let mut iso = true;
    let mut fixes = true;
    for (c, lat) in lattices.iter().enumerate() {
        iso &= alpha_is_order_isomorphism(lat, &poset.context(c).algebra, s.spectrum(c), m.tol)?;
        for q in &lat.projections {
            fixes &= daseinise(q, lat, m.tol)?.approx_eq(q, m.tol * 1e3);
        }
    }
    let mut dominated = true;
    let mut monotone = true;
    let mut diagrams = Vec::new();
    for (name, p) in &props {
        let sub = daseinise_global(p, poset, &lattices, s, m.tol)?;
        r.line(format!("projection {name}:"));
        for c in 0..poset.len() {
            r.line(format!(
                "  {}: {}",
                poset.context(c).label,
                fmt_list(sub.component(s, c))
            ));
        }
        let deltas: Vec<ComplexMatrix> = lattices
            .iter()
            .map(|l| daseinise(p, l, m.tol))
            .collect::<Result<_, _>>()?;
        dominated &= deltas.iter().all(|q| dominates(q, p, m.tol));
        monotone &= poset
            .hasse_edges()
            .iter()
            .all(|&(lo, hi)| dominates(&deltas[lo], &deltas[hi], m.tol));
        diagrams.push((
            format!("{}-logic-{name}.dot", m.name),
            spectrum_dot(&m.name, poset, s, Some(sub.points())),
        ));
    }
    let found = excluded_middle_search(poset, s, &props, m.tol)?;
    for e in &found {
        r.line(format!(
            "{}: excluded middle {}, double negation {}",
            e.label,
            if e.excluded_middle { "holds" } else { "fails" },
            if e.double_negation { "holds" } else { "fails" }
        ));
    }
    let violations = found.iter().filter(|e| e.is_violation()).count();
    r.line(format!("classical-law violations: {violations}"));
    r.check("projection lattices match character subsets", iso, "");
    r.check("daseinisation fixes context projections", fixes, "");
    r.check("daseinisation dominates", dominated, "");
    r.check("daseinisation coarsens downward", monotone, "");
    Ok(diagrams)
}
