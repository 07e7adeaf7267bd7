//! Scenario files: which hypersurface in which product, sampled how, checked against what.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpinlabError};
use crate::hypersurface::{Hypersurface, SliceFactor, SpherePatch};
use crate::registry;
use crate::space_forms::StructurePairing;

fn default_samples() -> usize {
    20
}

fn default_scan() -> usize {
    4
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub c1: f64,
    pub c2: f64,
    pub hypersurface: Hypersurface,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    /// Per-check tolerance overrides.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    /// Requested checks; `None` means all.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
    #[serde(default)]
    pub pairing: StructurePairing,
    /// Grid points per axis for the umbilic-point scan.
    #[serde(default = "default_scan")]
    pub umbilic_scan: usize,
}

impl Scenario {
    pub fn new(name: &str, c1: f64, c2: f64, hypersurface: Hypersurface) -> Self {
        Scenario {
            name: name.to_string(),
            c1,
            c2,
            hypersurface,
            samples: default_samples(),
            seed: 0,
            tolerances: BTreeMap::new(),
            checks: None,
            pairing: StructurePairing::default(),
            umbilic_scan: default_scan(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(SpinlabError::InvalidScenario(m));
        if self.samples < 1 {
            return bad("samples must be at least 1".into());
        }
        if !self.c1.is_finite() || !self.c2.is_finite() {
            return bad("curvatures must be finite".into());
        }
        for (k, v) in &self.tolerances {
            if registry::lookup(k).is_none() {
                return bad(format!("tolerance override for unknown check `{k}`"));
            }
            if !v.is_finite() || *v <= 0.0 {
                return bad(format!("tolerance for `{k}` must be positive"));
            }
        }
        if let Some(list) = &self.checks {
            if let Some(k) = list.iter().find(|k| registry::lookup(k).is_none()) {
                return bad(format!("unknown check `{k}`"));
            }
        }
        self.hypersurface.validate()
    }

    /// Requested check ids in registry order.
    pub fn selected_checks(&self) -> Vec<&'static registry::CheckSpec> {
        registry::CHECKS.iter().filter(|c| self.checks.as_ref().is_none_or(|l| l.iter().any(|k| k == c.id))).collect()
    }
}

/// The built-in scenarios run by `spinlab catalog`.
pub fn builtin_catalog() -> Vec<Scenario> {
    let graph = |e: &str| Hypersurface::graph(e).expect("built-in expression parses");
    vec![
        Scenario::new("flat-hyperplane", 0.0, 0.0, Hypersurface::FlatHyperplane),
        Scenario::new("round-sphere(r=1)", 0.0, 0.0, Hypersurface::RoundSphere { r: 1.0, patch: SpherePatch::Hopf }),
        Scenario::new("round-sphere(r=0.8) in S2(1)xS2(4)", 1.0, 4.0, Hypersurface::RoundSphere { r: 0.8, patch: SpherePatch::Hopf }),
        Scenario::new(
            "round-sphere cap(r=0.6) in H2(-1)xS2(0.5)",
            -1.0,
            0.5,
            Hypersurface::RoundSphere { r: 0.6, patch: SpherePatch::Cap },
        ),
        Scenario::new("slice S2(1) x geodesic", 1.0, 4.0, Hypersurface::SliceGeodesic { factor: SliceFactor::First }),
        Scenario::new("slice geodesic x S2(-2)", 1.0, -2.0, Hypersurface::SliceGeodesic { factor: SliceFactor::Second }),
        Scenario::new("sphere-circle tube(a=0.5) in S2(1)xH2(-1)", 1.0, -1.0, Hypersurface::SphereCircleTube { a: 0.5 }),
        Scenario::new("graph in S2(1)xS2(4)", 1.0, 4.0, graph("0.3*u1*u2 + 0.2*sin(u3) + 0.1*u1^2")),
        Scenario::new("graph in H2(-1)xS2(0.5)", -1.0, 0.5, graph("0.25*exp(u1)*cos(u2) - 0.15*u3^2")),
        Scenario::new("graph in S2(1)xR2", 1.0, 0.0, graph("0.2*u1*u3 - 0.1*u2^2 + 0.05*u1^3")),
    ]
}
