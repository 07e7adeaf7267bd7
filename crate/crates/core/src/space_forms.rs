//! Surface space forms `M(c)` in the conformal chart `λ²(du² + dv²)`,
//! `λ = 1/(1 + c|u|²/4)`, and their Riemannian product.
//!
//! Ambient tangent vectors are carried in the orthonormal frame
//! `ε₁ = λ₁⁻¹∂x₁, ε₂ = λ₁⁻¹∂y₁ = Jε₁, ε₃ = λ₂⁻¹∂x₂, ε₄ = λ₂⁻¹∂y₂ = Jε₃`,
//! in which `F = diag(1, 1, -1, -1)` and `J` is block rotation. For `c > 0`
//! the chart misses one point of the sphere.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::autodiff::Real;
use crate::clifford::{CMat, CliffordModel, ProductSpinorSpace, Spinor, I};
use crate::error::{Result, SpinlabError};
use crate::linalg::Vec4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub c: f64,
}

impl SurfaceModel {
    pub fn new(c: f64) -> Self {
        SurfaceModel { c }
    }

    /// Radius of the chart disk; infinite for `c ≥ 0`.
    pub fn chart_radius(&self) -> f64 {
        if self.c < 0.0 {
            2.0 / (-self.c).sqrt()
        } else {
            f64::INFINITY
        }
    }

    pub fn contains(&self, x: [f64; 2]) -> bool {
        self.c >= 0.0 || x[0] * x[0] + x[1] * x[1] < 4.0 / (-self.c)
    }

    pub fn check(&self, x: [f64; 2]) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(SpinlabError::OutsideChart { point: x, curvature: self.c })
        }
    }

    pub fn lambda<T: Real>(&self, x: [T; 2]) -> T {
        ((x[0] * x[0] + x[1] * x[1]) * (self.c / 4.0) + 1.0).recip()
    }

    /// `∇ ln λ = -(c/2) λ x`
    pub fn log_lambda_grad<T: Real>(&self, x: [T; 2]) -> [T; 2] {
        let l = self.lambda(x) * (-self.c / 2.0);
        [l * x[0], l * x[1]]
    }

    /// `Γ^k_ij` of the conformal metric, indexed `[k][i][j]`.
    pub fn christoffels<T: Real>(&self, x: [T; 2]) -> [[[T; 2]; 2]; 2] {
        let l = self.log_lambda_grad(x);
        let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        std::array::from_fn(|k| std::array::from_fn(|i| std::array::from_fn(|j| l[j] * d(i, k) + l[i] * d(j, k) - l[k] * d(i, j))))
    }

    /// Checked variant of [`Self::christoffels`] at an `f64` point.
    pub fn christoffels_at(&self, x: [f64; 2]) -> Result<[[[f64; 2]; 2]; 2]> {
        self.check(x)?;
        Ok(self.christoffels(x))
    }

    /// Connection form `ḡ(∇_X ε₁, ε₂)` of the frame `ε₁ = λ⁻¹∂u`, for a coordinate vector `X`.
    pub fn frame_connection<T: Real>(&self, x: [T; 2], v: [T; 2]) -> T {
        let s = self.lambda(x) * (self.c / 2.0);
        s * (x[1] * v[0] - x[0] * v[1])
    }

    /// Ricci form `ρ(X, Y) = c·g(JX, Y)` on orthonormal components.
    pub fn ricci_form(&self, x: [f64; 2], y: [f64; 2]) -> f64 {
        self.c * (x[0] * y[1] - x[1] * y[0])
    }
}

/// Which of the two Kähler spin^c structures a factor carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorStructure {
    Canonical,
    AntiCanonical,
}

impl FactorStructure {
    /// Eigenvalue sign of `ε₁·ε₂` (i.e. `±i`) on the distinguished spinor line.
    fn eigen_sign(self) -> f64 {
        match self {
            FactorStructure::Canonical => -1.0,
            FactorStructure::AntiCanonical => 1.0,
        }
    }

    /// Sign in front of `ρ` in the auxiliary curvature contribution.
    fn rho_sign(self) -> f64 {
        match self {
            FactorStructure::Canonical => -1.0,
            FactorStructure::AntiCanonical => 1.0,
        }
    }
}

/// Spin^c structure on the product, tagged 1 or 2 for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpincStructure {
    pub tag: u8,
    pub factors: [FactorStructure; 2],
}

impl SpincStructure {
    /// Canonical ⊗ canonical; parallel spinor in `Σ⁺`.
    pub const S1: SpincStructure = SpincStructure { tag: 1, factors: [FactorStructure::Canonical, FactorStructure::Canonical] };
    /// Anti-canonical on the first factor ⊗ canonical; parallel spinor in `Σ⁻`.
    pub const S2: SpincStructure = SpincStructure { tag: 2, factors: [FactorStructure::AntiCanonical, FactorStructure::Canonical] };
    /// The alternative pairing: canonical ⊗ anti-canonical on the second factor.
    pub const S2_FLIPPED: SpincStructure = SpincStructure { tag: 2, factors: [FactorStructure::Canonical, FactorStructure::AntiCanonical] };

    /// `+1` if the parallel spinor is positive, `-1` otherwise.
    pub fn chirality(&self) -> f64 {
        let s: f64 = self.factors.iter().map(|f| -f.eigen_sign()).product();
        s
    }
}

/// Pairing choice for the second structure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructurePairing {
    /// Anti-canonical factor is `M₁`.
    #[default]
    AntiFirst,
    /// Anti-canonical factor is `M₂`.
    AntiSecond,
}

impl StructurePairing {
    pub fn second(self) -> SpincStructure {
        match self {
            StructurePairing::AntiFirst => SpincStructure::S2,
            StructurePairing::AntiSecond => SpincStructure::S2_FLIPPED,
        }
    }
}

/// Tangent vector of the product, orthonormal-frame components at `base`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentVector {
    pub base: Vec4<f64>,
    pub frame: Vec4<f64>,
}

#[derive(Clone, Debug)]
pub struct ProductModel {
    pub factors: [SurfaceModel; 2],
    pub spinors: ProductSpinorSpace,
}

pub fn split<T: Copy>(p: &Vec4<T>) -> ([T; 2], [T; 2]) {
    ([p[0], p[1]], [p[2], p[3]])
}

impl ProductModel {
    pub fn new(c1: f64, c2: f64) -> Self {
        ProductModel { factors: [SurfaceModel::new(c1), SurfaceModel::new(c2)], spinors: ProductSpinorSpace::new() }
    }

    pub fn c1(&self) -> f64 {
        self.factors[0].c
    }

    pub fn c2(&self) -> f64 {
        self.factors[1].c
    }

    pub fn check(&self, p: &Vec4<f64>) -> Result<()> {
        let (a, b) = split(p);
        self.factors[0].check(a)?;
        self.factors[1].check(b)
    }

    pub fn clifford(&self) -> &CliffordModel {
        &self.spinors.product
    }

    pub fn lambdas<T: Real>(&self, p: &Vec4<T>) -> [T; 2] {
        let (a, b) = split(p);
        [self.factors[0].lambda(a), self.factors[1].lambda(b)]
    }

    /// Coordinate components of `dp` converted to the orthonormal frame.
    pub fn coord_to_frame<T: Real>(&self, p: &Vec4<T>, v: &Vec4<T>) -> Vec4<T> {
        let l = self.lambdas(p);
        [v[0] * l[0], v[1] * l[0], v[2] * l[1], v[3] * l[1]]
    }

    pub fn frame_to_coord<T: Real>(&self, p: &Vec4<T>, v: &Vec4<T>) -> Vec4<T> {
        let l = self.lambdas(p);
        [v[0] / l[0], v[1] / l[0], v[2] / l[1], v[3] / l[1]]
    }

    /// `∇^P_X Y` in coordinates, given `X`, `Y` and the plain derivative `X(Y)`.
    pub fn covariant_derivative<T: Real>(&self, p: &Vec4<T>, x: &Vec4<T>, y: &Vec4<T>, dy: &Vec4<T>) -> Vec4<T> {
        let (a, b) = split(p);
        let g = [self.factors[0].christoffels(a), self.factors[1].christoffels(b)];
        let mut out = *dy;
        for f in 0..2 {
            for k in 0..2 {
                for i in 0..2 {
                    for j in 0..2 {
                        out[2 * f + k] = out[2 * f + k] + g[f][k][i][j] * x[2 * f + i] * y[2 * f + j];
                    }
                }
            }
        }
        out
    }

    /// Matrix `ω_AB(X) = ḡ(∇_X ε_A, ε_B)` of the ambient orthonormal frame,
    /// computed from the Christoffel symbols; `X` in coordinates.
    pub fn frame_connection_matrix(&self, p: &Vec4<f64>, x: &Vec4<f64>) -> [[f64; 4]; 4] {
        let l = self.lambdas(p);
        let (a, b) = split(p);
        let grads = [self.factors[0].log_lambda_grad(a), self.factors[1].log_lambda_grad(b)];
        let mut omega = [[0.0; 4]; 4];
        for ai in 0..4 {
            let f = ai / 2;
            // ε_A = λ⁻¹ ∂_A, so X(λ⁻¹) = -λ⁻¹ X(ln λ)
            let mut eps = [0.0; 4];
            eps[ai] = 1.0 / l[f];
            let xf = [x[2 * f], x[2 * f + 1]];
            let dlog = grads[f][0] * xf[0] + grads[f][1] * xf[1];
            let mut deps = [0.0; 4];
            deps[ai] = -dlog / l[f];
            let nabla = self.covariant_derivative(p, x, &eps, &deps);
            let nf = self.coord_to_frame(p, &nabla);
            omega[ai] = nf;
        }
        omega
    }

    /// Auxiliary connection 1-form `a` of the gauge in which the parallel
    /// spinor of `structure` is the constant section; `X` in coordinates.
    pub fn auxiliary_connection<T: Real>(&self, structure: &SpincStructure, p: &Vec4<T>, x: &Vec4<T>) -> T {
        let (a, b) = split(p);
        let w1 = self.factors[0].frame_connection(a, [x[0], x[1]]);
        let w2 = self.factors[1].frame_connection(b, [x[2], x[3]]);
        w1 * (-structure.factors[0].eigen_sign()) + w2 * (-structure.factors[1].eigen_sign())
    }

    /// `Ω^N(X, Y) = ∓ρ₁(π₁X, π₁Y) ∓ ρ₂(π₂X, π₂Y)` on orthonormal components.
    pub fn curvature_form_frame(&self, structure: &SpincStructure, x: &Vec4<f64>, y: &Vec4<f64>) -> f64 {
        structure.factors[0].rho_sign() * self.factors[0].ricci_form([x[0], x[1]], [y[0], y[1]])
            + structure.factors[1].rho_sign() * self.factors[1].ricci_form([x[2], x[3]], [y[2], y[3]])
    }

    pub fn curvature_form_omega(&self, structure: &SpincStructure, x: &TangentVector, y: &TangentVector) -> Result<f64> {
        if x.base.iter().zip(&y.base).any(|(a, b)| (a - b).abs() > 1e-12) {
            return Err(SpinlabError::MismatchedBasePoints);
        }
        self.check(&x.base)?;
        Ok(self.curvature_form_frame(structure, &x.frame, &y.frame))
    }

    /// Constant section of the distinguished line of `structure`.
    pub fn parallel_spinor(&self, structure: &SpincStructure) -> Spinor {
        let line = |f: FactorStructure| match f {
            FactorStructure::Canonical => self.spinors.positive_line(),
            FactorStructure::AntiCanonical => self.spinors.negative_line(),
        };
        self.spinors.tensor(&line(structure.factors[0]), &line(structure.factors[1]))
    }

    /// Spin^c connection operator `¼ Σ ω_AB ε_A ε_B + (i/2) a(X)` in the frame trivialization.
    pub fn spin_connection_operator(&self, structure: &SpincStructure, p: &Vec4<f64>, x: &Vec4<f64>) -> CMat {
        let omega = self.frame_connection_matrix(p, x);
        let gens = &self.clifford().generators;
        let mut op = CMat::zeros(4, 4);
        for a in 0..4 {
            for b in 0..4 {
                if omega[a][b] != 0.0 {
                    op += &gens[a] * &gens[b] * Complex64::new(0.25 * omega[a][b], 0.0);
                }
            }
        }
        let aux = self.auxiliary_connection(structure, p, x);
        op + CMat::identity(4, 4) * (I * (0.5 * aux))
    }

    /// `|∇^N_X ψ|` for the constant section along coordinate vector `X`.
    pub fn parallel_residual(&self, structure: &SpincStructure, p: &Vec4<f64>, x: &Vec4<f64>) -> f64 {
        (self.spin_connection_operator(structure, p, x) * self.parallel_spinor(structure)).norm()
    }

    /// Product structure `F` on frame components.
    pub fn apply_f<T: Real>(v: &Vec4<T>) -> Vec4<T> {
        [v[0], v[1], -v[2], -v[3]]
    }

    /// Complex structure `J` on frame components (`Jε₁ = ε₂`, `Jε₃ = ε₄`).
    pub fn apply_j<T: Real>(v: &Vec4<T>) -> Vec4<T> {
        [-v[1], v[0], -v[3], v[2]]
    }

    /// Projection onto the first factor.
    pub fn pi1<T: Real>(v: &Vec4<T>) -> Vec4<T> {
        [v[0], v[1], T::zero(), T::zero()]
    }

    pub fn pi2<T: Real>(v: &Vec4<T>) -> Vec4<T> {
        [T::zero(), T::zero(), v[2], v[3]]
    }

    /// Curvature `da` of the auxiliary connection in the coordinate plane `(i, j)`
    /// at `p`, measured by holonomy around shrinking squares (Richardson-extrapolated).
    pub fn auxiliary_holonomy_curvature(&self, structure: &SpincStructure, p: &Vec4<f64>, i: usize, j: usize, side: f64) -> f64 {
        let loop_integral = |s: f64| -> f64 {
            // Gauss–Legendre 5-point nodes on [-1, 1]
            const NODES: [f64; 5] = [0.0, -0.538_469_310_105_683_1, 0.538_469_310_105_683_1, -0.906_179_845_938_664, 0.906_179_845_938_664];
            const WEIGHTS: [f64; 5] = [
                0.568_888_888_888_888_9,
                0.478_628_670_499_366_5,
                0.478_628_670_499_366_5,
                0.236_926_885_056_189_1,
                0.236_926_885_056_189_1,
            ];
            let h = s / 2.0;
            let corner = |a: f64, b: f64| {
                let mut q = *p;
                q[i] += a;
                q[j] += b;
                q
            };
            // counter-clockwise in the (i, j) plane: edges (start, direction)
            let edges = [((-h, -h), (1.0, 0.0)), ((h, -h), (0.0, 1.0)), ((h, h), (-1.0, 0.0)), ((-h, h), (0.0, -1.0))];
            let mut total = 0.0;
            for ((a0, b0), (da, db)) in edges {
                for (t, w) in NODES.iter().zip(WEIGHTS) {
                    let frac = (t + 1.0) / 2.0;
                    let q = corner(a0 + da * s * frac, b0 + db * s * frac);
                    let mut v = [0.0; 4];
                    v[i] = da;
                    v[j] = db;
                    total += w * self.auxiliary_connection(structure, &q, &v) * h;
                }
            }
            total / (s * s)
        };
        (4.0 * loop_integral(side / 2.0) - loop_integral(side)) / 3.0
    }

    /// Max over coordinate planes of `|da(∂_i, ∂_j) − Ω^N(∂_i, ∂_j)|`.
    pub fn auxiliary_curvature_consistency(&self, structure: &SpincStructure, p: &Vec4<f64>) -> Result<f64> {
        self.check(p)?;
        let l = self.lambdas(p);
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let mut ei = [0.0; 4];
                let mut ej = [0.0; 4];
                ei[i] = l[i / 2];
                ej[j] = l[j / 2];
                let expected = self.curvature_form_frame(structure, &ei, &ej);
                let measured = self.auxiliary_holonomy_curvature(structure, p, i, j, 1e-2);
                worst = worst.max((measured - expected).abs());
            }
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autodiff::{Dual, HyperDual};

    /// Gauss curvature of `λ²(du²+dv²)` via `K = -Δ(ln λ)/λ²`, Laplacian by AD.
    fn gauss_curvature_ad(s: &SurfaceModel, x: [f64; 2]) -> f64 {
        let lap: f64 = (0..2)
            .map(|k| {
                let mut y = x.map(|v| HyperDual::new(v, 0.0, 0.0, 0.0));
                y[k].e1 = 1.0;
                y[k].e2 = 1.0;
                s.lambda(y).ln().e12
            })
            .sum();
        -lap / s.lambda(x).powi(2)
    }

    /// Same with a 5-point finite-difference Laplacian.
    fn gauss_curvature_fd(s: &SurfaceModel, x: [f64; 2]) -> f64 {
        let h = 1e-3;
        let f = |a: f64, b: f64| s.lambda([a, b]).ln();
        let lap = (f(x[0] + h, x[1]) + f(x[0] - h, x[1]) + f(x[0], x[1] + h) + f(x[0], x[1] - h) - 4.0 * f(x[0], x[1])) / (h * h);
        -lap / s.lambda(x).powi(2)
    }

    #[test]
    fn conformal_chart_has_constant_curvature() {
        for c in [-2.0, -0.5, 0.0, 1.0, 4.0] {
            let s = SurfaceModel::new(c);
            for x in [[0.1, 0.2], [0.5, -0.3], [-0.7, 0.4]] {
                assert!((gauss_curvature_ad(&s, x) - c).abs() < 1e-9, "c={c}");
                assert!((gauss_curvature_fd(&s, x) - c).abs() < 1e-5, "c={c}");
            }
        }
    }

    #[test]
    fn christoffels_flat_and_origin() {
        let flat = SurfaceModel::new(0.0);
        let g = flat.christoffels([0.3, -1.2]);
        assert!(g.iter().flatten().flatten().all(|&v| v == 0.0));
        let round = SurfaceModel::new(3.0);
        let g = round.christoffels([0.0, 0.0]);
        assert!(g.iter().flatten().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn christoffels_are_metric_compatible() {
        // ∂_i g_jk = Γ^m_ij g_mk + Γ^m_ik g_jm, with ∂ by central differences
        let s = SurfaceModel::new(-1.3);
        let x = [0.4, -0.25];
        let g = |y: [f64; 2]| s.lambda(y).powi(2);
        let gam = s.christoffels(x);
        let h = 1e-5;
        for i in 0..2 {
            let mut xp = x;
            let mut xm = x;
            xp[i] += h;
            xm[i] -= h;
            let dg = (g(xp) - g(xm)) / (2.0 * h);
            for j in 0..2 {
                for k in 0..2 {
                    let lhs = if j == k { dg } else { 0.0 };
                    let rhs = gam[k][i][j] * g(x) + gam[j][i][k] * g(x);
                    assert!((lhs - rhs).abs() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn outside_chart_is_rejected() {
        let s = SurfaceModel::new(-4.0);
        assert!(s.christoffels_at([0.9, 0.9]).is_err());
        assert!(s.christoffels_at([0.5, 0.5]).is_ok());
    }

    #[test]
    fn closed_form_frame_connection_matches_christoffels() {
        let p = ProductModel::new(1.7, -0.6);
        let q = [0.3, -0.4, 0.8, 0.2];
        let x = [0.2, 1.1, -0.5, 0.7];
        let omega = p.frame_connection_matrix(&q, &x);
        let (a, b) = split(&q);
        assert!((omega[0][1] - p.factors[0].frame_connection(a, [x[0], x[1]])).abs() < 1e-14);
        assert!((omega[2][3] - p.factors[1].frame_connection(b, [x[2], x[3]])).abs() < 1e-14);
        assert!((omega[0][1] + omega[1][0]).abs() < 1e-14);
        assert_eq!(omega[0][2], 0.0);
    }

    #[test]
    fn ricci_form_sign_on_j_pairs() {
        let p = ProductModel::new(2.5, 0.0);
        let x = [1.0, 0.0, 0.0, 0.0];
        let jx = ProductModel::apply_j(&x);
        assert!((p.curvature_form_frame(&SpincStructure::S1, &x, &jx) + 2.5).abs() < 1e-15);
        assert!((p.curvature_form_frame(&SpincStructure::S2, &x, &jx) - 2.5).abs() < 1e-15);
        let flat = ProductModel::new(0.0, 0.0);
        assert_eq!(flat.curvature_form_frame(&SpincStructure::S1, &x, &jx), 0.0);
    }

    #[test]
    fn mismatched_base_points() {
        let p = ProductModel::new(1.0, 1.0);
        let x = TangentVector { base: [0.0; 4], frame: [1.0, 0.0, 0.0, 0.0] };
        let y = TangentVector { base: [0.1, 0.0, 0.0, 0.0], frame: [0.0, 1.0, 0.0, 0.0] };
        assert!(matches!(p.curvature_form_omega(&SpincStructure::S1, &x, &y), Err(SpinlabError::MismatchedBasePoints)));
    }

    #[test]
    fn parallel_spinors_have_expected_chirality() {
        let p = ProductModel::new(1.0, 1.0);
        let (plus, minus) = p.clifford().projectors().unwrap().clone();
        let s1 = p.parallel_spinor(&SpincStructure::S1);
        let s2 = p.parallel_spinor(&SpincStructure::S2);
        assert!((&plus * &s1 - &s1).norm() < 1e-15);
        assert!((&minus * &s2 - &s2).norm() < 1e-15);
        assert_eq!(SpincStructure::S1.chirality(), 1.0);
        assert_eq!(SpincStructure::S2.chirality(), -1.0);
    }

    #[test]
    fn parallel_spinor_flat_case_trivial_connection() {
        let p = ProductModel::new(0.0, 0.0);
        let op = p.spin_connection_operator(&SpincStructure::S1, &[0.3, 0.1, -0.2, 0.5], &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(op.norm(), 0.0);
    }

    #[test]
    fn parallel_spinor_residual_vanishes() {
        for st in [SpincStructure::S1, SpincStructure::S2, SpincStructure::S2_FLIPPED] {
            let p = ProductModel::new(1.0, -2.0);
            let q = [0.4, -0.3, 0.2, 0.5];
            for x in [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.3, -0.2, 0.9, 1.1]] {
                assert!(p.parallel_residual(&st, &q, &x) < 1e-14);
            }
        }
    }

    #[test]
    fn holonomy_matches_curvature_form() {
        let p = ProductModel::new(1.0, 4.0);
        for st in [SpincStructure::S1, SpincStructure::S2] {
            let r = p.auxiliary_curvature_consistency(&st, &[0.3, -0.2, 0.1, 0.25]).unwrap();
            assert!(r < 1e-6, "{r}");
        }
    }

    #[test]
    fn dual_lambda_derivative() {
        let s = SurfaceModel::new(2.0);
        let d = s.lambda([Dual::variable(0.3), Dual::cst(0.4)]);
        let expected = s.log_lambda_grad([0.3, 0.4])[0] * s.lambda([0.3, 0.4]);
        assert!((d.eps - expected).abs() < 1e-14);
    }
}
