//! Scenario execution: sample points, evaluate the requested checks, aggregate a report.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compat::{self, AbstractData, CoVanishing, UmbilicalOutcome};
use crate::error::{Result, SpinlabError};
use crate::hypersurface::checks::{self as hc, max_residual};
use crate::hypersurface::{field_jet, riemann_tensor, FieldJet, FieldProvider, Immersion, Riemann};
use crate::registry::CheckSpec;
use crate::report::{CheckRecord, Component, PointSummary, ResidualReport, Verdict};
use crate::scenario::Scenario;
use crate::space_forms::{ProductModel, SpincStructure};
use crate::spinc::{self, InducedSpincData, InducedSpinorField};

pub const TOL_SCALE_ENV: &str = "SPINLAB_TOL_SCALE";

/// Process exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Reads `SPINLAB_TOL_SCALE`; unset means 1.
pub fn tol_scale_from_env() -> Result<f64> {
    match std::env::var(TOL_SCALE_ENV) {
        Err(_) => Ok(1.0),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
            _ => Err(SpinlabError::InvalidScenario(format!("{TOL_SCALE_ENV} must be a positive number, got `{s}`"))),
        },
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub tol_scale: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { tol_scale: 1.0 }
    }
}

impl RunOptions {
    pub fn from_env() -> Result<Self> {
        Ok(RunOptions { tol_scale: tol_scale_from_env()? })
    }
}

/// Uniform samples in the chart's parameter box.
pub fn sample_points(domain: [(f64, f64); 3], n: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| domain.map(|(lo, hi)| lo + (hi - lo) * rng.gen::<f64>())).collect()
}

/// Cell-centred grid with `k` points per axis.
pub fn grid_points(domain: [(f64, f64); 3], k: usize) -> Vec<[f64; 3]> {
    let axis = |(lo, hi): (f64, f64), i: usize| lo + (hi - lo) * (i as f64 + 0.5) / k as f64;
    let mut out = Vec::with_capacity(k * k * k);
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                out.push([axis(domain[0], a), axis(domain[1], b), axis(domain[2], c)]);
            }
        }
    }
    out
}

struct Item {
    name: String,
    value: f64,
    tol: Option<f64>,
}

#[derive(Default)]
struct Eval {
    items: Vec<Item>,
    metrics: Vec<(String, f64)>,
    notes: Vec<String>,
}

impl Eval {
    fn push(&mut self, name: impl Into<String>, value: f64) {
        self.items.push(Item { name: name.into(), value, tol: None });
    }
    fn push_tol(&mut self, name: impl Into<String>, value: f64, tol: f64) {
        self.items.push(Item { name: name.into(), value, tol: Some(tol) });
    }
    fn extend(&mut self, prefix: &str, r: &[(&'static str, f64)]) {
        for (n, v) in r {
            self.push(format!("{prefix}{n}"), *v);
        }
    }
    fn metric(&mut self, name: impl Into<String>, v: f64) {
        self.metrics.push((name.into(), v));
    }
}

type Outcome = std::result::Result<Eval, String>;

/// Everything evaluated at one sample point, computed on demand.
struct PointContext<'a, P: FieldProvider> {
    provider: &'a P,
    product: &'a ProductModel,
    second: SpincStructure,
    u: [f64; 3],
    jet: FieldJet,
    riemann: OnceCell<std::result::Result<Riemann, String>>,
    s1: OnceCell<(InducedSpincData, InducedSpinorField)>,
    s2: OnceCell<(InducedSpincData, InducedSpinorField)>,
}

impl<'a, P: FieldProvider> PointContext<'a, P> {
    fn riemann(&self) -> std::result::Result<&Riemann, String> {
        self.riemann.get_or_init(|| riemann_tensor(self.provider, self.u).map_err(|e| e.to_string())).as_ref().map_err(Clone::clone)
    }
    fn structure(&self, tag: u8) -> &(InducedSpincData, InducedSpinorField) {
        if tag == 1 {
            self.s1.get_or_init(|| spinc::restrict_structure(self.product, &self.jet, SpincStructure::S1))
        } else {
            self.s2.get_or_init(|| spinc::restrict_structure(self.product, &self.jet, self.second))
        }
    }
    fn both(&self) -> [&(InducedSpincData, InducedSpinorField); 2] {
        [self.structure(1), self.structure(2)]
    }
}

fn evaluate<P: FieldProvider>(id: &str, cx: &PointContext<P>, base_tol: f64) -> Outcome {
    let d = &cx.jet.at;
    let (c1, c2) = (cx.product.c1(), cx.product.c2());
    let mut ev = Eval::default();
    match id {
        "immersion.invariants" => ev.extend("", &hc::immersion_invariants(d)),
        "product.lemma-f" => ev.extend("", &hc::lemma_f(d)),
        "product.jf-identities" => ev.extend("", &hc::lemma_f_chi(d)),
        "projections" => ev.extend("", &hc::projection_formula_residuals(d)),
        "rank" => {
            let (rp, rm) = hc::rank_check(d);
            ev.push("rank (F+Id)/2 - 2", (rp as f64 - 2.0).abs());
            ev.push("rank (F-Id)/2 - 2", (rm as f64 - 2.0).abs());
        }
        "gauss" => ev.push("gauss", hc::gauss_max(d, cx.riemann()?, c1, c2)),
        "codazzi" => ev.push("codazzi", hc::codazzi_max(&cx.jet, c1, c2)),
        "structure-derivatives" => ev.extend("", &hc::structure_equation_residuals(&cx.jet)),
        "nabla-xi" => ev.push("nabla_X xi - chi E X", compat::nabla_xi_check(&cx.jet)),
        "spinc.parallel-ambient" => {
            for (label, st) in [("S1", SpincStructure::S1), ("S2", cx.second)] {
                let worst = cx
                    .jet
                    .adapted
                    .iter()
                    .map(|a| cx.product.parallel_residual(&st, &d.p, &cx.product.frame_to_coord(&d.p, a)))
                    .fold(0.0, f64::max);
                ev.push(format!("{label}: |nabla psi|"), worst);
            }
        }
        "spinc.clifford-induced" => {
            for (data, field) in cx.both() {
                ev.push(format!("structure {}", field.tag), spinc::clifford_defect(data, field));
            }
        }
        "spinc.killing" => {
            for (data, field) in cx.both() {
                ev.push(format!("structure {}", field.tag), spinc::killing_max(data, field));
                let grad = d.frame.iter().map(|x| data.nabla(x, &field.phi).norm()).fold(0.0, f64::max);
                ev.metric(format!("max |nabla phi{}|", field.tag), grad);
            }
        }
        "spinc.algebraic" => {
            for (data, field) in cx.both() {
                ev.extend("", &spinc::algebraic_conditions(data, field));
            }
        }
        "spinc.ide" => {
            let (data, field) = cx.structure(2);
            ev.extend("", &spinc::identities_ide(data, field));
        }
        "spinc.omega" => {
            let mut mags = [0.0_f64; 2];
            for (k, (data, field)) in cx.both().into_iter().enumerate() {
                ev.extend(&format!("structure {}: ", field.tag), &spinc::omega_formula_check(cx.product, data));
                mags[k] = data.omega.iter().flatten().fold(0.0, |m, x| m.max(x.abs()));
                ev.metric(format!("max |Omega{}|", field.tag), mags[k]);
            }
            if c1 == 0.0 && c2 == 0.0 {
                ev.push("spin case: Omega1 = Omega2 = 0", mags[0].max(mags[1]));
                ev.notes.push("spin case: c1 = c2 = 0, the two induced structures coincide".into());
            }
        }
        "spinc.projection-lemmas" => {
            let (a, b) = spinc::projection_lemma_check(cx.product, d);
            ev.push("positive-line projection identity", a);
            ev.push("mixed-line projection identity", b);
        }
        "spinc.restriction-2form" => {
            for (data, field) in cx.both() {
                ev.push(format!("structure {}", field.tag), spinc::restriction_2form_check(cx.product, data, field));
            }
        }
        "dirac" | "energy-momentum" => {
            for (data, field) in cx.both() {
                let r = spinc::dirac_and_energy_momentum(data, field).map_err(|e| e.to_string())?;
                let t = field.tag;
                if id == "dirac" {
                    ev.push(format!("D{t} phi{t} = {}(3/2)H phi{t}", if t == 1 { "" } else { "-" }), r.dirac_residual);
                } else {
                    ev.push(format!("Q{t} = {}E/2", if t == 1 { "" } else { "-" }), r.q_half_residual);
                    ev.metric(format!("|Q{t} - E|"), r.q_minus_e);
                    ev.metric(format!("|Q{t} + E|"), r.q_plus_e);
                }
            }
            if id == "energy-momentum" {
                ev.notes.push("Q1 = E/2 and Q2 = -E/2; the literal Q = E is reported as |Q1 - E|".into());
            }
        }
        "system1" | "system2" => {
            let tag = if id == "system1" { 1 } else { 2 };
            let s = compat::system_residuals(tag, &cx.jet, cx.riemann()?, c1, c2);
            for (n, v) in s.residuals {
                ev.push(n, v);
            }
            let v = d.inner(&d.v, &d.v).max(0.0).sqrt();
            if v < 1e-12 {
                ev.notes.push("V = 0 at some points: the V-balance equations reduce to trace identities of d(nabla)E".into());
            }
        }
        "gauss-iff-codazzi" => {
            let r = cx.riemann()?;
            for tag in [1u8, 2] {
                let (data, _) = cx.structure(tag);
                let omega_hyp = max_residual(&spinc::omega_formula_check(cx.product, data));
                let cv = CoVanishing::at(tag, &cx.jet, r, c1, c2, omega_hyp);
                let verdict = compat::gauss_iff_codazzi(&[cv], base_tol);
                if verdict.confirmed == 1 || !verdict.holds() {
                    let conclusion = if cv.gauss <= base_tol { cv.codazzi } else { cv.gauss };
                    ev.push(format!("system {tag}: implication"), conclusion);
                }
                ev.metric(format!("system {tag}: max gauss"), cv.gauss);
                ev.metric(format!("system {tag}: max codazzi"), cv.codazzi);
            }
            if ev.items.is_empty() {
                return Err("precondition fails (system or Omega hypothesis)".into());
            }
        }
        "umbilical" => match compat::umbilical_mean_v(&cx.jet, c1, c2) {
            UmbilicalOutcome::NotUmbilic { .. } => return Err("not umbilic".into()),
            UmbilicalOutcome::Evaluated { dh_xi, dh_frame, norm_identity } => {
                ev.push_tol("dH(xi)", dh_xi, 1e-6);
                ev.push("dH(e_i) - ((c1-c2)/4)(V,e_i)", dh_frame);
                ev.push("4|dH| - |V||c1-c2|", norm_identity);
            }
        },
        "auxiliary-curvature" => {
            for (label, st) in [("S1", SpincStructure::S1), ("S2", cx.second)] {
                let r = cx.product.auxiliary_curvature_consistency(&st, &d.p).map_err(|e| e.to_string())?;
                ev.push(format!("{label}: da - Omega"), r);
            }
        }
        "converse" => {
            let data = AbstractData::harvest(cx.provider);
            let r = compat::theorem_converse_check(&data, cx.u).map_err(|e| e.to_string())?;
            for (n, v) in r {
                match n {
                    "rank-2" => ev.push_tol(n, v, 0.5),
                    "f=recipe(V,h,chi)" | "f-symmetric" | "f^2X+(V,X)V=X" | "fV=-hV" | "h^2+|V|^2=1" | "tr(f)=-h" => {
                        ev.push_tol(n, v, 1e-9)
                    }
                    _ => ev.push(n, v),
                }
            }
        }
        other => return Err(format!("no evaluator for `{other}`")),
    }
    Ok(ev)
}

#[derive(Default)]
struct Accumulator {
    points: usize,
    skip_reasons: BTreeMap<String, usize>,
    components: Vec<(String, f64, f64)>,
    metrics: BTreeMap<String, f64>,
    notes: Vec<String>,
}

impl Accumulator {
    fn add(&mut self, ev: Eval, base_tol: f64, scale: f64, overridden: bool) {
        self.points += 1;
        for it in ev.items {
            let tol = if overridden { base_tol } else { it.tol.map_or(base_tol, |t| t * scale) };
            let v = if it.value.is_finite() { it.value } else { f64::MAX };
            match self.components.iter_mut().find(|c| c.0 == it.name) {
                Some(c) => c.1 = c.1.max(v),
                None => self.components.push((it.name, v, tol)),
            }
        }
        for (k, v) in ev.metrics {
            let e = self.metrics.entry(k).or_insert(0.0);
            *e = e.max(if v.is_finite() { v } else { f64::MAX });
        }
        for n in ev.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
    }

    fn skip(&mut self, reason: String) {
        *self.skip_reasons.entry(reason).or_insert(0) += 1;
    }

    fn finish(self, spec: &CheckSpec, tol: f64) -> CheckRecord {
        let components: Vec<Component> = self
            .components
            .into_iter()
            .map(|(name, max_residual, tolerance)| Component {
                verdict: if max_residual <= tolerance { Verdict::Pass } else { Verdict::Fail },
                name,
                max_residual,
                tolerance,
            })
            .collect();
        let max_residual = components.iter().fold(0.0_f64, |m, c| m.max(c.max_residual));
        let verdict = if self.points == 0 {
            Verdict::Skipped
        } else if components.iter().all(|c| c.verdict == Verdict::Pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        CheckRecord {
            name: spec.id.to_string(),
            anchor: spec.anchor.to_string(),
            max_residual,
            tolerance: tol,
            verdict,
            points: self.points,
            skipped: self.skip_reasons.values().sum(),
            skip_reasons: self.skip_reasons,
            components,
            metrics: self.metrics,
            notes: self.notes,
        }
    }
}

/// Runs `scenario`'s checks against an arbitrary field provider.
///
/// The scenario supplies sampling, tolerances and the check list; its
/// hypersurface is only echoed.
pub fn run_with_provider<P: FieldProvider>(provider: &P, scenario: &Scenario, opts: RunOptions) -> Result<ResidualReport> {
    scenario.validate()?;
    let start = Instant::now();
    let product = provider.product();
    let second = scenario.pairing.second();
    let specs = scenario.selected_checks();
    let mut warnings = Vec::new();
    if specs.is_empty() {
        warnings.push("no checks selected".to_string());
    }
    let samples = sample_points(provider.domain(), scenario.samples, scenario.seed);
    let wants_scan = specs.iter().any(|s| s.id == "umbilical") && scenario.umbilic_scan > 0;
    let scan = if wants_scan { grid_points(provider.domain(), scenario.umbilic_scan) } else { Vec::new() };

    let tol_of = |s: &CheckSpec| scenario.tolerances.get(s.id).copied().unwrap_or(s.tolerance) * opts.tol_scale;
    let mut accs: Vec<Accumulator> = specs.iter().map(|_| Accumulator::default()).collect();
    let mut points = Vec::new();
    let mut failed_points = 0usize;

    for (idx, u) in samples.iter().chain(scan.iter()).enumerate() {
        let is_sample = idx < samples.len();
        let jet = match field_jet(provider, *u) {
            Ok(j) => j,
            Err(e) => {
                failed_points += usize::from(is_sample);
                for (k, s) in specs.iter().enumerate() {
                    if is_sample || s.id == "umbilical" {
                        accs[k].skip(e.to_string());
                    }
                }
                continue;
            }
        };
        if is_sample {
            let d = &jet.at;
            points.push(PointSummary { u: *u, mean_curvature: d.mean_curvature(), h: d.h, v_norm: d.inner(&d.v, &d.v).max(0.0).sqrt() });
        }
        let cx = PointContext { provider, product, second, u: *u, jet, riemann: OnceCell::new(), s1: OnceCell::new(), s2: OnceCell::new() };
        for (k, s) in specs.iter().enumerate() {
            if !is_sample && s.id != "umbilical" {
                continue;
            }
            let tol = tol_of(s);
            match evaluate(s.id, &cx, tol) {
                Ok(ev) => accs[k].add(ev, tol, opts.tol_scale, scenario.tolerances.contains_key(s.id)),
                Err(reason) => accs[k].skip(reason),
            }
        }
    }
    if failed_points == samples.len() && !samples.is_empty() {
        warnings.push("no sample point could be evaluated".to_string());
    }

    let mut checks: Vec<CheckRecord> = specs.iter().zip(accs).map(|(s, a)| a.finish(s, tol_of(s))).collect();
    if let Some(rec) = checks.iter_mut().find(|c| c.name == "umbilical") {
        let scanned = samples.len() + scan.len();
        rec.notes.push(if rec.points > 0 {
            format!("verified at {} umbilic points of {scanned} scanned", rec.points)
        } else {
            format!("vacuous: no umbilic point among {scanned} scanned")
        });
    }
    let verdict = ResidualReport::overall(&checks);
    Ok(ResidualReport {
        scenario: scenario.clone(),
        tol_scale: opts.tol_scale,
        checks,
        points,
        warnings,
        verdict,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

pub fn run_scenario(scenario: &Scenario, opts: RunOptions) -> Result<ResidualReport> {
    scenario.validate()?;
    let provider = Immersion::new(scenario.hypersurface.clone(), ProductModel::new(scenario.c1, scenario.c2));
    run_with_provider(&provider, scenario, opts)
}

pub fn run_scenario_file(path: &std::path::Path, opts: RunOptions) -> Result<ResidualReport> {
    run_scenario(&Scenario::load(path)?, opts)
}

/// Every built-in scenario with default tolerances.
pub fn run_catalog(opts: RunOptions, pairing: crate::space_forms::StructurePairing) -> Result<Vec<ResidualReport>> {
    crate::scenario::builtin_catalog()
        .into_iter()
        .map(|mut s| {
            s.pairing = pairing;
            run_scenario(&s, opts)
        })
        .collect()
}

pub fn exit_code(reports: &[ResidualReport]) -> i32 {
    if reports.iter().all(ResidualReport::passed) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
