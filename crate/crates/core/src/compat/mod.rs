//! Theorem-level checks built on the hypersurface and spin^c layers:
//! the two compatibility systems, the Gauss⇔Codazzi equivalence they
//! encode, `∇ξ = ΧE`, both directions of the characterization theorem, and
//! the umbilical mean-curvature identity.

pub mod converse;
pub mod systems;

use serde::{Deserialize, Serialize};

pub use converse::{rebuild_f, theorem_converse_check, AbstractData, Corruption};
pub use systems::{system1, system2, FrameTensors, SystemResiduals};

use crate::hypersurface::checks::{codazzi_max, gauss_max};
use crate::hypersurface::{FieldJet, InducedPointData, Riemann};
use crate::linalg::{mat_mul, mat_vec, sub, Vec3};

/// `max_X |∇_X ξ − ΧEX|` over the adapted frame.
pub fn nabla_xi_check(jet: &FieldJet) -> f64 {
    let d = &jet.at;
    let chi_e = mat_mul(&d.chi, &d.e);
    d.frame
        .iter()
        .map(|x| {
            let r = sub(&jet.nabla_vector(x, |q| q.xi), &mat_vec(&chi_e, x));
            d.inner(&r, &r).max(0.0).sqrt()
        })
        .fold(0.0, f64::max)
}

pub fn system_residuals(tag: u8, jet: &FieldJet, riemann: &Riemann, c1: f64, c2: f64) -> SystemResiduals {
    let t = FrameTensors::new(jet, riemann, c1, c2);
    if tag == 1 {
        system1(&t)
    } else {
        system2(&t)
    }
}

/// The three residuals the equivalence relates, plus the `Ω` hypothesis defect, at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoVanishing {
    pub system: f64,
    pub gauss: f64,
    pub codazzi: f64,
    pub omega_hypothesis: f64,
}

impl CoVanishing {
    pub fn at(tag: u8, jet: &FieldJet, riemann: &Riemann, c1: f64, c2: f64, omega_hypothesis: f64) -> Self {
        CoVanishing {
            system: system_residuals(tag, jet, riemann, c1, c2).max,
            gauss: gauss_max(&jet.at, riemann, c1, c2),
            codazzi: codazzi_max(jet, c1, c2),
            omega_hypothesis,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    /// Points where at least one implication was tested and held.
    pub confirmed: usize,
    /// Points where neither precondition held (or the `Ω` hypothesis failed).
    pub skipped: usize,
    /// Indices of points where a precondition held but the conclusion did not.
    pub counterexamples: Vec<usize>,
    pub max_gauss: f64,
    pub max_codazzi: f64,
    pub max_system: f64,
}

impl EquivalenceVerdict {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks `(System ∧ Gauss) ⇒ Codazzi` and `(System ∧ Codazzi) ⇒ Gauss` pointwise.
pub fn gauss_iff_codazzi(ensemble: &[CoVanishing], tol: f64) -> EquivalenceVerdict {
    let mut out = EquivalenceVerdict::default();
    for (i, s) in ensemble.iter().enumerate() {
        out.max_gauss = out.max_gauss.max(s.gauss);
        out.max_codazzi = out.max_codazzi.max(s.codazzi);
        out.max_system = out.max_system.max(s.system);
        if s.omega_hypothesis > tol || s.system > tol {
            out.skipped += 1;
            continue;
        }
        let forward = s.gauss <= tol;
        let backward = s.codazzi <= tol;
        match (forward, backward) {
            (true, true) => out.confirmed += 1,
            (false, false) => out.skipped += 1,
            _ => out.counterexamples.push(i),
        }
    }
    out
}

/// Umbilicity threshold on `max |E − H·Id|` in operator norm.
pub const UMBILIC_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum UmbilicalOutcome {
    NotUmbilic { defect: f64 },
    Evaluated { dh_xi: f64, dh_frame: f64, norm_identity: f64 },
}

fn umbilic_defect(d: &InducedPointData) -> f64 {
    let ef = d.in_frame(&d.e);
    let h = d.mean_curvature();
    let m = nalgebra::Matrix3::from_fn(|i, j| ef[i][j] - if i == j { h } else { 0.0 });
    m.symmetric_eigenvalues().amax()
}

/// `dH(ξ) = 0`, `dH(e_i) = ((c₁−c₂)/4)g(V,e_i)` and `4‖dH‖ = ‖V‖|c₁−c₂|` at an umbilic point.
pub fn umbilical_mean_v(jet: &FieldJet, c1: f64, c2: f64) -> UmbilicalOutcome {
    let d = &jet.at;
    let defect = umbilic_defect(d);
    if defect > UMBILIC_THRESHOLD {
        return UmbilicalOutcome::NotUmbilic { defect };
    }
    let dh: Vec3<f64> = std::array::from_fn(|i| jet.derivative_scalar(&d.frame[i], |q| q.mean_curvature()));
    let vf = d.vec_in_frame(&d.v);
    let k = (c1 - c2) / 4.0;
    let dh_frame = (dh[0] - k * vf[0]).abs().max((dh[1] - k * vf[1]).abs());
    let dh_norm = dh.iter().map(|x| x * x).sum::<f64>().sqrt();
    let v_norm = d.inner(&d.v, &d.v).max(0.0).sqrt();
    UmbilicalOutcome::Evaluated { dh_xi: dh[2].abs(), dh_frame, norm_identity: (4.0 * dh_norm - v_norm * (c1 - c2).abs()).abs() }
}

/// Checks composing the forward direction of the characterization theorem.
pub const FORWARD_CHECKS: [&str; 4] = ["spinc.clifford-induced", "spinc.killing", "spinc.algebraic", "spinc.omega"];

fn forward_scenario(scenario: &crate::scenario::Scenario) -> crate::scenario::Scenario {
    let mut s = scenario.clone();
    s.checks = Some(FORWARD_CHECKS.iter().map(|c| c.to_string()).collect());
    s
}

/// Forward direction on the scenario's own chart: both restricted spinors are
/// generalized Killing spinors satisfying their algebraic condition, with the
/// predicted auxiliary curvature.
pub fn theorem_forward_check(
    scenario: &crate::scenario::Scenario,
    opts: crate::runner::RunOptions,
) -> crate::Result<crate::report::ResidualReport> {
    crate::runner::run_scenario(&forward_scenario(scenario), opts)
}

/// Forward direction against an arbitrary provider (e.g. a reoriented chart).
pub fn theorem_forward_check_with<P: crate::hypersurface::FieldProvider>(
    provider: &P,
    scenario: &crate::scenario::Scenario,
    opts: crate::runner::RunOptions,
) -> crate::Result<crate::report::ResidualReport> {
    crate::runner::run_with_provider(provider, &forward_scenario(scenario), opts)
}
