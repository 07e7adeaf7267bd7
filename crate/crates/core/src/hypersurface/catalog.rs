//! Built-in hypersurfaces, addressed by catalog key plus parameters.

use serde::{Deserialize, Serialize};

use super::expr::Expr;
use super::HypersurfaceChart;
use crate::autodiff::Real;
use crate::error::{Result, SpinlabError};
use crate::linalg::{cross4, dot, Vec4};

/// Which factor the geodesic slice spans completely.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SliceFactor {
    /// `M₁ × γ`, normal along `M₂`, `h = -1`.
    #[default]
    First,
    /// `γ × M₂`, normal along `M₁`, `h = +1`.
    Second,
}

/// Parametrization used for the round sphere.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpherePatch {
    /// `r(cos θ cos φ₁, cos θ sin φ₁, sin θ cos φ₂, sin θ sin φ₂)`.
    #[default]
    Hopf,
    /// Graph over the last three coordinates, centred at `(r, 0, 0, 0)`.
    Cap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Hypersurface {
    FlatHyperplane,
    RoundSphere {
        r: f64,
        #[serde(default)]
        patch: SpherePatch,
    },
    SliceGeodesic {
        #[serde(default)]
        factor: SliceFactor,
    },
    SphereCircleTube {
        a: f64,
    },
    Graph {
        expr: Expr,
        #[serde(default = "default_graph_half_width")]
        half_width: f64,
    },
}

fn default_graph_half_width() -> f64 {
    0.4
}

pub const CATALOG_KEYS: [&str; 5] = ["flat-hyperplane", "round-sphere", "slice-geodesic", "sphere-circle-tube", "graph"];

impl Hypersurface {
    pub fn key(&self) -> &'static str {
        match self {
            Hypersurface::FlatHyperplane => CATALOG_KEYS[0],
            Hypersurface::RoundSphere { .. } => CATALOG_KEYS[1],
            Hypersurface::SliceGeodesic { .. } => CATALOG_KEYS[2],
            Hypersurface::SphereCircleTube { .. } => CATALOG_KEYS[3],
            Hypersurface::Graph { .. } => CATALOG_KEYS[4],
        }
    }

    pub fn graph(expr: &str) -> Result<Self> {
        Ok(Hypersurface::Graph { expr: Expr::parse(expr)?, half_width: default_graph_half_width() })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(SpinlabError::InvalidScenario(m.to_string()));
        match self {
            Hypersurface::RoundSphere { r, .. } if !(*r > 0.0 && r.is_finite()) => bad("round-sphere needs r > 0"),
            Hypersurface::SphereCircleTube { a } if !(*a > 0.0 && a.is_finite()) => bad("sphere-circle-tube needs a > 0"),
            Hypersurface::Graph { half_width, .. } if !half_width.is_finite() || *half_width <= 0.0 => bad("graph needs half_width > 0"),
            _ => Ok(()),
        }
    }

    /// Sign making `cross4(∂₁p, ∂₂p, ∂₃p)` the chosen normal; for the sphere
    /// this selects the inner normal, so `H > 0`.
    fn orientation_sign(&self) -> f64 {
        match self {
            Hypersurface::RoundSphere { patch, .. } => {
                let u = match patch {
                    SpherePatch::Hopf => [0.7, 0.3, -0.4],
                    SpherePatch::Cap => [0.1, 0.2, -0.1],
                };
                let p = self.eval_raw(u);
                let t: [Vec4<f64>; 3] = std::array::from_fn(|k| {
                    let mut d = u.map(crate::autodiff::Dual::cst);
                    d[k] = crate::autodiff::Dual::variable(u[k]);
                    self.eval_raw(d).map(|x| x.eps)
                });
                let n = cross4(&t[0], &t[1], &t[2]);
                if dot(&n, &p) < 0.0 {
                    1.0
                } else {
                    -1.0
                }
            }
            _ => 1.0,
        }
    }

    fn eval_raw<T: Real>(&self, u: [T; 3]) -> Vec4<T> {
        let z = T::zero();
        match self {
            Hypersurface::FlatHyperplane => [u[0], u[1], u[2], z],
            Hypersurface::RoundSphere { r, patch: SpherePatch::Hopf } => {
                let (ct, st) = (u[0].cos() * *r, u[0].sin() * *r);
                [ct * u[1].cos(), ct * u[1].sin(), st * u[2].cos(), st * u[2].sin()]
            }
            Hypersurface::RoundSphere { r, patch: SpherePatch::Cap } => {
                let s = -(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]) + r * r;
                [s.sqrt(), u[0], u[1], u[2]]
            }
            Hypersurface::SliceGeodesic { factor: SliceFactor::First } => [u[0], u[1], u[2], z],
            Hypersurface::SliceGeodesic { factor: SliceFactor::Second } => [u[0], z, u[1], u[2]],
            Hypersurface::SphereCircleTube { a } => [u[0], u[1], u[2].cos() * *a, u[2].sin() * *a],
            Hypersurface::Graph { expr, .. } => [u[0], u[1], u[2], expr.eval(&u)],
        }
    }
}

impl HypersurfaceChart for Hypersurface {
    fn embed<T: Real>(&self, u: [T; 3]) -> Vec4<T> {
        self.eval_raw(u)
    }

    fn orientation(&self) -> f64 {
        self.orientation_sign()
    }

    fn domain(&self) -> [(f64, f64); 3] {
        match self {
            Hypersurface::FlatHyperplane | Hypersurface::SliceGeodesic { .. } => [(-0.5, 0.5); 3],
            Hypersurface::RoundSphere { patch: SpherePatch::Hopf, .. } => [(0.2, 1.37), (-3.0, 3.0), (-3.0, 3.0)],
            Hypersurface::RoundSphere { r, patch: SpherePatch::Cap } => [(-0.4 * r, 0.4 * r); 3],
            Hypersurface::SphereCircleTube { .. } => [(-0.5, 0.5), (-0.5, 0.5), (-3.0, 3.0)],
            Hypersurface::Graph { half_width, .. } => [(-half_width, *half_width); 3],
        }
    }

    fn label(&self) -> String {
        match self {
            Hypersurface::FlatHyperplane => "flat-hyperplane".into(),
            Hypersurface::RoundSphere { r, patch } => format!("round-sphere(r={r}, {patch:?})"),
            Hypersurface::SliceGeodesic { factor } => format!("slice-geodesic({factor:?})"),
            Hypersurface::SphereCircleTube { a } => format!("sphere-circle-tube(a={a})"),
            Hypersurface::Graph { expr, .. } => format!("graph({expr})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_patches_lie_on_sphere() {
        for patch in [SpherePatch::Hopf, SpherePatch::Cap] {
            let s = Hypersurface::RoundSphere { r: 1.3, patch };
            let p = s.embed([0.3, 0.2, -0.1]);
            assert!((dot(&p, &p) - 1.69).abs() < 1e-14);
        }
        let cap = Hypersurface::RoundSphere { r: 2.0, patch: SpherePatch::Cap };
        assert_eq!(cap.embed([0.0; 3]), [2.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn serde_shape() {
        let h: Hypersurface = serde_json::from_str(r#"{"kind":"round-sphere","r":1.0}"#).unwrap();
        assert_eq!(h, Hypersurface::RoundSphere { r: 1.0, patch: SpherePatch::Hopf });
        let g: Hypersurface = serde_json::from_str(r#"{"kind":"graph","expr":"u1*u2"}"#).unwrap();
        assert_eq!(g.key(), "graph");
        assert!(serde_json::from_str::<Hypersurface>(r#"{"kind":"graph","expr":"u1*"}"#).is_err());
        assert!(serde_json::from_str::<Hypersurface>(r#"{"kind":"torus"}"#).is_err());
    }

    #[test]
    fn validation() {
        assert!(Hypersurface::RoundSphere { r: -1.0, patch: SpherePatch::Hopf }.validate().is_err());
        assert!(Hypersurface::SphereCircleTube { a: 0.0 }.validate().is_err());
        assert!(Hypersurface::FlatHyperplane.validate().is_ok());
    }
}
