//! The twelve scalar equations of each compatibility system, in the frame
//! `{e₁, e₂, e₃ = ξ}`.
//!
//! Notation: `R[i][j][k][l] = g(R(e_i,e_j)e_k, e_l)` (so `R₁₂₂₁` is a
//! sectional curvature), `a[i][j] = g(Ee_j, e_i)`, and
//! `D(i,j,k) = g(d^∇E(e_i,e_j), e_k)`. Each residual is `LHS − RHS` of one
//! displayed equation.

use serde::{Deserialize, Serialize};

use crate::hypersurface::checks::{exterior_covariant_e, riemann_frame};
use crate::hypersurface::{FieldJet, Riemann};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemResiduals {
    pub tag: u8,
    pub residuals: Vec<(String, f64)>,
    pub max: f64,
}

/// Everything the systems read, already in frame components.
#[derive(Clone, Copy, Debug)]
pub struct FrameTensors {
    pub r: [[[[f64; 3]; 3]; 3]; 3],
    pub a: [[f64; 3]; 3],
    pub d: [[[f64; 3]; 3]; 3],
    pub v: [f64; 3],
    pub h: f64,
    pub c1: f64,
    pub c2: f64,
}

impl FrameTensors {
    pub fn new(jet: &FieldJet, riemann: &Riemann, c1: f64, c2: f64) -> Self {
        let p = &jet.at;
        let fr = p.frame;
        let d = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let w = exterior_covariant_e(jet, &fr[i], &fr[j]);
                std::array::from_fn(|k| p.inner(&w, &fr[k]))
            })
        });
        FrameTensors { r: riemann_frame(p, riemann), a: p.in_frame(&p.e), d, v: p.vec_in_frame(&p.v), h: p.h, c1, c2 }
    }
}

fn pack(tag: u8, items: Vec<(&str, f64)>) -> SystemResiduals {
    let max = items.iter().fold(0.0_f64, |m, (_, v)| m.max(v.abs()));
    SystemResiduals { tag, residuals: items.into_iter().map(|(n, v)| (n.to_string(), v)).collect(), max }
}

/// First system: positive restricted spinor with `γ(ξ)φ = −iφ`.
pub fn system1(t: &FrameTensors) -> SystemResiduals {
    let r = |i: usize, j: usize, k: usize, l: usize| t.r[i - 1][j - 1][k - 1][l - 1];
    let a = |i: usize, j: usize| t.a[i - 1][j - 1];
    let d = |i: usize, j: usize, k: usize| t.d[i - 1][j - 1][k - 1];
    let (c1, c2, h) = (t.c1, t.c2, t.h);
    let (v1, v2) = (t.v[0], t.v[1]);
    let w12 = c1 / 2.0 * (h - 1.0) - c2 / 2.0 * (h + 1.0);
    let k = (c1 - c2) / 2.0;
    pack(
        1,
        vec![
            (
                "1.1 R1221+R1331",
                r(1, 2, 2, 1) + r(1, 3, 3, 1) - (a(1, 1) * a(3, 3) + a(1, 1) * a(2, 2) - a(1, 3).powi(2) - a(1, 2).powi(2)) + w12
                    - (d(1, 2, 3) - d(1, 3, 2)),
            ),
            ("1.2 R1332", r(1, 3, 3, 2) - (a(1, 2) * a(3, 3) - a(3, 2) * a(1, 3)) - d(1, 3, 1)),
            ("1.3 R1223", r(1, 2, 2, 3) - (a(2, 2) * a(1, 3) - a(3, 2) * a(1, 2)) + d(1, 2, 1)),
            ("1.4 (c1-c2)(V,e1)", -k * v1 - (d(2, 1, 2) + d(3, 1, 3))),
            ("1.5 R2331", r(2, 3, 3, 1) - (a(1, 2) * a(3, 3) - a(1, 3) * a(2, 3)) + d(2, 3, 2)),
            (
                "1.6 R2332+R2112",
                r(2, 3, 3, 2) + r(2, 1, 1, 2) - (a(2, 2) * a(3, 3) + a(2, 2) * a(1, 1) - a(2, 3).powi(2) - a(1, 2).powi(2)) + w12
                    - (d(2, 3, 1) + d(1, 2, 3)),
            ),
            ("1.7 R2113", r(2, 1, 1, 3) - (a(2, 3) * a(1, 1) - a(1, 2) * a(1, 3)) + d(1, 2, 2)),
            ("1.8 (c1-c2)(V,e2)", -k * v2 - (d(1, 2, 1) + d(3, 2, 3))),
            ("1.9 R3221", r(3, 2, 2, 1) - (a(1, 3) * a(2, 2) - a(2, 3) * a(2, 1)) - k * v2 + d(2, 3, 3)),
            ("1.10 R3112", r(3, 1, 1, 2) - (a(3, 2) * a(1, 1) - a(3, 1) * a(1, 2)) + k * v1 - d(1, 3, 3)),
            (
                "1.11 R3113+R3223",
                r(3, 1, 1, 3) + r(3, 2, 2, 3)
                    - (a(2, 2) * a(3, 3) + a(1, 1) * a(3, 3) - a(1, 3).powi(2) - a(2, 3).powi(2))
                    - (d(2, 3, 1) - d(1, 3, 2)),
            ),
            ("1.12 trace", d(2, 3, 2) + d(1, 3, 1)),
        ],
    )
}

/// Second system: negative restricted spinor with `γ(V)φ = −iγ(ξ)φ + hφ`.
pub fn system2(t: &FrameTensors) -> SystemResiduals {
    let r = |i: usize, j: usize, k: usize, l: usize| t.r[i - 1][j - 1][k - 1][l - 1];
    let a = |i: usize, j: usize| t.a[i - 1][j - 1];
    let d = |i: usize, j: usize, k: usize| t.d[i - 1][j - 1][k - 1];
    let (c1, c2, h) = (t.c1, t.c2, t.h);
    let (v1, v2) = (t.v[0], t.v[1]);
    let s = c1 + c2;
    let p = c1 * (h - 1.0) + c2 * (h + 1.0);
    pack(
        2,
        vec![
            (
                "2.1 R1221+R1331",
                r(1, 2, 2, 1) + r(1, 3, 3, 1)
                    - (a(1, 1) * a(3, 3) + a(1, 1) * a(2, 2) - a(1, 3).powi(2) - a(1, 2).powi(2))
                    - 0.5 * s * v1 * v1
                    - 0.5 * h * p
                    - (d(2, 1, 3) - d(3, 1, 2)),
            ),
            ("2.2 R1332", r(1, 3, 3, 2) - (a(1, 2) * a(3, 3) - a(3, 2) * a(1, 3)) - 0.5 * s * v1 * v2 + d(1, 3, 1)),
            ("2.3 R1223", r(1, 2, 2, 3) - (a(2, 2) * a(1, 3) - a(3, 2) * a(1, 2)) + 0.5 * p * v2 + d(2, 1, 1)),
            ("2.4 (c1+c2)h(V,e1)", 0.5 * s * h * v1 - 0.5 * p * v1 + d(2, 1, 2) + d(3, 1, 3)),
            ("2.5 R2331", r(2, 3, 3, 1) - (a(1, 2) * a(3, 3) - a(1, 3) * a(2, 3)) - 0.5 * s * v2 * v1 - d(2, 3, 2)),
            (
                "2.6 R2332+R2112",
                r(2, 3, 3, 2) + r(2, 1, 1, 2)
                    - (a(2, 2) * a(3, 3) + a(2, 2) * a(1, 1) - a(2, 3).powi(2) - a(1, 2).powi(2))
                    - 0.5 * s * v2 * v2
                    - 0.5 * h * p
                    + d(2, 3, 1)
                    + d(1, 2, 3),
            ),
            ("2.7 R2113", r(2, 1, 1, 3) - (a(2, 3) * a(1, 1) - a(1, 2) * a(1, 3)) - 0.5 * p * v1 - d(1, 2, 2)),
            ("2.8 (c1+c2)h(V,e2)", -0.5 * p * v2 + 0.5 * s * h * v2 + d(1, 2, 1) + d(3, 2, 3)),
            ("2.9 R3221", r(3, 2, 2, 1) - (a(1, 3) * a(2, 2) - a(2, 3) * a(2, 1)) + 0.5 * s * h * v2 - d(2, 3, 3)),
            ("2.10 R3112", r(3, 1, 1, 2) - (a(3, 2) * a(1, 1) - a(3, 1) * a(1, 2)) - 0.5 * s * h * v1 + d(1, 3, 3)),
            (
                "2.11 R3113+R3223",
                r(3, 1, 1, 3) + r(3, 2, 2, 3)
                    - (a(2, 2) * a(3, 3) + a(1, 1) * a(3, 3) - a(1, 3).powi(2) - a(2, 3).powi(2))
                    - 0.5 * s * v1 * v1
                    - 0.5 * s * v2 * v2
                    + d(2, 3, 1)
                    - d(1, 3, 2),
            ),
            ("2.12 trace", d(2, 3, 2) + d(1, 3, 1)),
        ],
    )
}
