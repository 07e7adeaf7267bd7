//! Hypersurfaces `M³ ⊂ M₁(c₁) × M₂(c₂)` given by explicit charts.
//!
//! Every pointwise quantity is produced by one generic pipeline,
//! [`point_fields`], over any [`Real`] scalar. Running it on `f64` gives the
//! induced data; running it on [`Dual`] gives exact first derivatives of all
//! fields along the chart, which is what the Codazzi and structure equations
//! consume.

pub mod catalog;
pub mod checks;
pub mod expr;

use crate::autodiff::{seed_dual, seed_hyper, Dual, HyperDual, Real};
use crate::error::{Result, SpinlabError};
use crate::linalg::{cross4, dot, inv3, mat_vec, norm, scale, Mat3, Vec3, Vec4};
use crate::space_forms::ProductModel;

pub use catalog::{Hypersurface, SliceFactor, SpherePatch};
pub use expr::Expr;

/// A parametrized immersion `u ↦ (p₁(u), p₂(u))` in the conformal charts of both factors.
pub trait HypersurfaceChart {
    fn embed<T: Real>(&self, u: [T; 3]) -> Vec4<T>;
    /// `±1`, multiplies `cross4(∂₁p, ∂₂p, ∂₃p)` to give the normal.
    fn orientation(&self) -> f64 {
        1.0
    }
    /// Parameter box used for sampling.
    fn domain(&self) -> [(f64, f64); 3];
    fn label(&self) -> String;
}

/// The same chart with the opposite normal.
#[derive(Clone, Debug)]
pub struct Reoriented<C>(pub C);

impl<C: HypersurfaceChart> HypersurfaceChart for Reoriented<C> {
    fn embed<T: Real>(&self, u: [T; 3]) -> Vec4<T> {
        self.0.embed(u)
    }
    fn orientation(&self) -> f64 {
        -self.0.orientation()
    }
    fn domain(&self) -> [(f64, f64); 3] {
        self.0.domain()
    }
    fn label(&self) -> String {
        format!("{} (reversed normal)", self.0.label())
    }
}

/// Value, first and second derivatives of the embedding.
#[derive(Clone, Copy, Debug)]
pub struct Jet<T> {
    pub p: Vec4<T>,
    pub dp: [Vec4<T>; 3],
    pub ddp: [[Vec4<T>; 3]; 3],
}

pub fn jet2<T: Real, C: HypersurfaceChart + ?Sized>(chart: &C, u: [T; 3]) -> Jet<T> {
    let z = [T::zero(); 4];
    let mut jet = Jet { p: z, dp: [z; 3], ddp: [[z; 3]; 3] };
    for i in 0..3 {
        for j in i..3 {
            let out: Vec4<HyperDual<T>> = chart.embed(seed_hyper(u, i, j));
            for c in 0..4 {
                jet.p[c] = out[c].re;
                jet.dp[i][c] = out[c].e1;
                jet.dp[j][c] = out[c].e2;
                jet.ddp[i][j][c] = out[c].e12;
                jet.ddp[j][i][c] = out[c].e12;
            }
        }
    }
    jet
}

/// All pointwise induced quantities, generic over the scalar type.
///
/// Tangent vectors of `M` are coordinate components along `∂₁, ∂₂, ∂₃`;
/// ambient vectors are orthonormal-frame components. Endomorphisms are stored
/// as `m[a][c] = A^a_c`.
#[derive(Clone, Copy, Debug)]
pub struct PointFields<T> {
    pub u: Vec3<T>,
    pub p: Vec4<T>,
    pub tangents: [Vec4<T>; 3],
    pub nu: Vec4<T>,
    pub g: Mat3<T>,
    pub g_inv: Mat3<T>,
    pub e: Mat3<T>,
    pub chi: Mat3<T>,
    pub xi: Vec3<T>,
    pub f: Mat3<T>,
    pub v: Vec3<T>,
    pub h: T,
    /// `e₁, e₂ = Χe₁, ξ` in coordinates.
    pub frame: [Vec3<T>; 3],
}

pub type InducedPointData = PointFields<f64>;

impl<T: Real> PointFields<T> {
    pub fn map<S: Real>(&self, m: impl Fn(T) -> S + Copy) -> PointFields<S> {
        let v3 = |v: &Vec3<T>| v.map(m);
        let v4 = |v: &Vec4<T>| v.map(m);
        let m3 = |a: &Mat3<T>| a.map(|r| r.map(m));
        PointFields {
            u: v3(&self.u),
            p: v4(&self.p),
            tangents: self.tangents.map(|t| t.map(m)),
            nu: v4(&self.nu),
            g: m3(&self.g),
            g_inv: m3(&self.g_inv),
            e: m3(&self.e),
            chi: m3(&self.chi),
            xi: v3(&self.xi),
            f: m3(&self.f),
            v: v3(&self.v),
            h: m(self.h),
            frame: self.frame.map(|r| r.map(m)),
        }
    }

    pub fn inner(&self, x: &Vec3<T>, y: &Vec3<T>) -> T {
        dot(x, &mat_vec(&self.g, y))
    }

    /// Push a tangent vector into the ambient frame.
    pub fn to_ambient(&self, x: &Vec3<T>) -> Vec4<T> {
        let mut out = [T::zero(); 4];
        for a in 0..3 {
            for c in 0..4 {
                out[c] = out[c] + self.tangents[a][c] * x[a];
            }
        }
        out
    }

    /// Tangential part of an ambient vector, in coordinates.
    pub fn to_tangent(&self, y: &Vec4<T>) -> Vec3<T> {
        let pairing = self.tangents.map(|t| dot(&t, y));
        mat_vec(&self.g_inv, &pairing)
    }

    pub fn apply(&self, a: &Mat3<T>, x: &Vec3<T>) -> Vec3<T> {
        mat_vec(a, x)
    }

    pub fn eta(&self, x: &Vec3<T>) -> T {
        self.inner(&self.xi, x)
    }

    pub fn mean_curvature(&self) -> T {
        (self.e[0][0] + self.e[1][1] + self.e[2][2]) / 3.0
    }

    /// Rows `e₁, e₂, ξ, ν` in ambient frame components.
    pub fn adapted_frame(&self) -> [Vec4<T>; 4] {
        [self.to_ambient(&self.frame[0]), self.to_ambient(&self.frame[1]), self.to_ambient(&self.frame[2]), self.nu]
    }

    /// `A_ij = g(e_i, A e_j)` in the adapted frame.
    pub fn in_frame(&self, a: &Mat3<T>) -> Mat3<T> {
        std::array::from_fn(|i| std::array::from_fn(|j| self.inner(&self.frame[i], &mat_vec(a, &self.frame[j]))))
    }

    /// `X_i = g(e_i, X)`.
    pub fn vec_in_frame(&self, x: &Vec3<T>) -> Vec3<T> {
        std::array::from_fn(|i| self.inner(&self.frame[i], x))
    }

    /// Coordinates of `Σ c_i e_i`.
    pub fn from_frame(&self, c: &Vec3<T>) -> Vec3<T> {
        let mut out = [T::zero(); 3];
        for i in 0..3 {
            for a in 0..3 {
                out[a] = out[a] + self.frame[i][a] * c[i];
            }
        }
        out
    }
}

fn mat3_from<T: Real>(f: impl Fn(usize, usize) -> T) -> Mat3<T> {
    std::array::from_fn(|a| std::array::from_fn(|c| f(a, c)))
}

/// Threshold below which the first frame candidate `∂₁ − η(∂₁)ξ` is rejected.
pub const FRAME_FALLBACK_NORM: f64 = 1e-6;

/// Compute every induced quantity at `u`.
pub fn point_fields<T: Real, C: HypersurfaceChart + ?Sized>(chart: &C, product: &ProductModel, u: [T; 3]) -> Result<PointFields<T>> {
    let jet = jet2(chart, u);
    product.check(&jet.p.map(|x| x.re()))?;
    let tangents = jet.dp.map(|d| product.coord_to_frame(&jet.p, &d));
    let g = mat3_from(|a, b| dot(&tangents[a], &tangents[b]));
    let n = scale(T::cst(chart.orientation()), &cross4(&tangents[0], &tangents[1], &tangents[2]));
    let n_len = norm(&n);
    if n_len.re() < 1e-12 {
        return Err(SpinlabError::RankDeficient(u.map(|x| x.re())));
    }
    let nu = scale(n_len.recip(), &n);
    let g_inv = inv3(&g);
    let raise = |low: Vec3<T>| mat_vec(&g_inv, &low);

    // b_ab = ḡ(ν, ∇^P_{∂a} ∂_b p)
    let b = mat3_from(|a, c| {
        let acc = product.covariant_derivative(&jet.p, &jet.dp[a], &jet.dp[c], &jet.ddp[a][c]);
        dot(&nu, &product.coord_to_frame(&jet.p, &acc))
    });
    let e = mat3_from(|a, c| (0..3).fold(T::zero(), |s, k| s + g_inv[a][k] * b[k][c]));

    let ft: [Vec4<T>; 3] = tangents.map(|t| ProductModel::apply_f(&t));
    let jt: [Vec4<T>; 3] = tangents.map(|t| ProductModel::apply_j(&t));
    let lower = |cols: &[Vec4<T>; 3]| mat3_from(|a, c| dot(&tangents[a], &cols[c]));
    let f = mul_inv(&g_inv, &lower(&ft));
    let chi = mul_inv(&g_inv, &lower(&jt));
    let f_nu = ProductModel::apply_f(&nu);
    let v = raise(tangents.map(|t| dot(&t, &f_nu)));
    let h = dot(&nu, &f_nu);
    let xi_amb = scale(T::cst(-1.0), &ProductModel::apply_j(&nu));
    let xi = raise(tangents.map(|t| dot(&t, &xi_amb)));

    let mut fields = PointFields { u, p: jet.p, tangents, nu, g, g_inv, e, chi, xi, f, v, h, frame: [[T::zero(); 3]; 3] };
    let candidate = |k: usize| {
        let mut d = [T::zero(); 3];
        d[k] = T::one();
        let w = fields.eta(&d);
        [d[0] - xi[0] * w, d[1] - xi[1] * w, d[2] - xi[2] * w]
    };
    let mut e1 = candidate(0);
    let mut len = fields.inner(&e1, &e1).sqrt();
    if len.re() < FRAME_FALLBACK_NORM {
        e1 = candidate(1);
        len = fields.inner(&e1, &e1).sqrt();
    }
    let e1 = scale(len.recip(), &e1);
    let e2 = mat_vec(&chi, &e1);
    fields.frame = [e1, e2, xi];
    Ok(fields)
}

fn mul_inv<T: Real>(g_inv: &Mat3<T>, low: &Mat3<T>) -> Mat3<T> {
    mat3_from(|a, c| (0..3).fold(T::zero(), |s, k| s + g_inv[a][k] * low[k][c]))
}

/// Induced metric from first derivatives only.
pub fn induced_metric<T: Real, C: HypersurfaceChart + ?Sized>(chart: &C, product: &ProductModel, u: [T; 3]) -> Mat3<T> {
    let mut p = [T::zero(); 4];
    let dp: [Vec4<T>; 3] = std::array::from_fn(|k| {
        let out: Vec4<Dual<T>> = chart.embed(seed_dual(u, k));
        p = out.map(|x| x.re);
        out.map(|x| x.eps)
    });
    let t = dp.map(|d| product.coord_to_frame(&p, &d));
    mat3_from(|a, b| dot(&t[a], &t[b]))
}

/// Source of induced fields along a chart: either a genuine immersion or
/// abstract data (e.g. deliberately corrupted) presented on the same chart.
pub trait FieldProvider {
    fn product(&self) -> &ProductModel;
    fn fields<T: Real>(&self, u: [T; 3]) -> Result<PointFields<T>>;
    fn metric<T: Real>(&self, u: [T; 3]) -> Result<Mat3<T>>;
    fn domain(&self) -> [(f64, f64); 3];
    fn label(&self) -> String;
}

impl<P: FieldProvider + ?Sized> FieldProvider for &P {
    fn product(&self) -> &ProductModel {
        (**self).product()
    }
    fn fields<T: Real>(&self, u: [T; 3]) -> Result<PointFields<T>> {
        (**self).fields(u)
    }
    fn metric<T: Real>(&self, u: [T; 3]) -> Result<Mat3<T>> {
        (**self).metric(u)
    }
    fn domain(&self) -> [(f64, f64); 3] {
        (**self).domain()
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

/// A chart immersed in a product model.
#[derive(Clone, Debug)]
pub struct Immersion<C> {
    pub chart: C,
    pub product: ProductModel,
}

impl<C: HypersurfaceChart> Immersion<C> {
    pub fn new(chart: C, product: ProductModel) -> Self {
        Immersion { chart, product }
    }
}

impl<C: HypersurfaceChart> FieldProvider for Immersion<C> {
    fn product(&self) -> &ProductModel {
        &self.product
    }
    fn fields<T: Real>(&self, u: [T; 3]) -> Result<PointFields<T>> {
        point_fields(&self.chart, &self.product, u)
    }
    fn metric<T: Real>(&self, u: [T; 3]) -> Result<Mat3<T>> {
        self.product.check(&self.chart.embed(u.map(|x| x.re())))?;
        Ok(induced_metric(&self.chart, &self.product, u))
    }
    fn domain(&self) -> [(f64, f64); 3] {
        self.chart.domain()
    }
    fn label(&self) -> String {
        self.chart.label()
    }
}

/// `induced_data` at an `f64` parameter.
pub fn induced_data<C: HypersurfaceChart + ?Sized>(chart: &C, product: &ProductModel, u: [f64; 3]) -> Result<InducedPointData> {
    point_fields(chart, product, u)
}

/// Fields at `u` together with their partial derivatives `∂_k` and the
/// intrinsic Christoffel symbols `Γ^a_bc` (indexed `[a][b][c]`).
#[derive(Clone, Debug)]
pub struct FieldJet {
    pub at: InducedPointData,
    pub d: [InducedPointData; 3],
    pub gamma: [Mat3<f64>; 3],
    /// Rows `e₁, e₂, ξ, ν` in the ambient frame and their partials `∂_k`.
    pub adapted: [Vec4<f64>; 4],
    pub d_adapted: [[Vec4<f64>; 4]; 3],
}

pub fn field_jet<P: FieldProvider + ?Sized>(provider: &P, u: [f64; 3]) -> Result<FieldJet> {
    let at = provider.fields(u)?;
    let mut d = [at; 3];
    let mut d_adapted = [[[0.0; 4]; 4]; 3];
    for k in 0..3 {
        let fd = provider.fields(seed_dual(u, k))?;
        d[k] = fd.map(|x| x.eps);
        d_adapted[k] = fd.adapted_frame().map(|r| r.map(|x| x.eps));
    }
    let gamma = christoffel_from(&at.g_inv, &d.map(|x| x.g));
    Ok(FieldJet { adapted: at.adapted_frame(), at, d, gamma, d_adapted })
}

/// `Γ^a_bc = ½ g^{ad}(∂_b g_dc + ∂_c g_db − ∂_d g_bc)`.
pub fn christoffel_from<T: Real>(g_inv: &Mat3<T>, dg: &[Mat3<T>; 3]) -> [Mat3<T>; 3] {
    std::array::from_fn(|a| {
        mat3_from(|b, c| (0..3).fold(T::zero(), |s, d| s + g_inv[a][d] * (dg[b][d][c] + dg[c][d][b] - dg[d][b][c]) * 0.5))
    })
}

/// Intrinsic Christoffel symbols of the provider's metric, generic so they
/// can themselves be differentiated.
pub fn intrinsic_christoffels<T: Real, P: FieldProvider + ?Sized>(provider: &P, u: [T; 3]) -> Result<[Mat3<T>; 3]> {
    let g = provider.metric(u)?;
    let mut dg = [[[T::zero(); 3]; 3]; 3];
    for (k, slot) in dg.iter_mut().enumerate() {
        let gd = provider.metric(seed_dual(u, k))?;
        *slot = gd.map(|r| r.map(|x| x.eps));
    }
    Ok(christoffel_from(&inv3(&g), &dg))
}

/// Riemann tensor `R^l_{kij}` of the induced metric, indexed `[l][k][i][j]`,
/// so that `R(∂_i, ∂_j)∂_k = R^l_{kij} ∂_l` with `R(X,Y) = [∇_X, ∇_Y] − ∇_{[X,Y]}`.
pub type Riemann = [[[[f64; 3]; 3]; 3]; 3];

pub fn riemann_tensor<P: FieldProvider + ?Sized>(provider: &P, u: [f64; 3]) -> Result<Riemann> {
    let gam = intrinsic_christoffels(provider, u)?;
    let mut dgam = [[[[0.0; 3]; 3]; 3]; 3];
    for (i, slot) in dgam.iter_mut().enumerate() {
        let gd = intrinsic_christoffels(provider, seed_dual(u, i))?;
        *slot = gd.map(|m| m.map(|r| r.map(|x| x.eps)));
    }
    // dgam[i][l][j][k] = ∂_i Γ^l_jk
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    for l in 0..3 {
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    let mut v = dgam[i][l][j][k] - dgam[j][l][i][k];
                    for m in 0..3 {
                        v += gam[l][i][m] * gam[m][j][k] - gam[l][j][m] * gam[m][i][k];
                    }
                    r[l][k][i][j] = v;
                }
            }
        }
    }
    Ok(r)
}

/// `R(X, Y)Z` for coordinate vectors.
pub fn riemann_apply(r: &Riemann, x: &Vec3<f64>, y: &Vec3<f64>, z: &Vec3<f64>) -> Vec3<f64> {
    std::array::from_fn(|l| {
        let mut s = 0.0;
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    s += r[l][k][i][j] * x[i] * y[j] * z[k];
                }
            }
        }
        s
    })
}

/// Covariant derivative helpers on a [`FieldJet`].
impl FieldJet {
    /// `∇_X W` for a vector field whose value and partials are picked by `pick`.
    pub fn nabla_vector(&self, x: &Vec3<f64>, pick: impl Fn(&InducedPointData) -> Vec3<f64>) -> Vec3<f64> {
        let w = pick(&self.at);
        let dw = self.d.each_ref().map(&pick);
        std::array::from_fn(|a| {
            let mut s = 0.0;
            for k in 0..3 {
                s += x[k] * dw[k][a];
                for b in 0..3 {
                    s += self.gamma[a][k][b] * x[k] * w[b];
                }
            }
            s
        })
    }

    /// `(∇_X A)` for an endomorphism field picked by `pick`.
    pub fn nabla_endo(&self, x: &Vec3<f64>, pick: impl Fn(&InducedPointData) -> Mat3<f64>) -> Mat3<f64> {
        let a = pick(&self.at);
        let da = self.d.each_ref().map(&pick);
        mat3_from(|i, j| {
            let mut s = 0.0;
            for k in 0..3 {
                s += x[k] * da[k][i][j];
                for m in 0..3 {
                    s += x[k] * (self.gamma[i][k][m] * a[m][j] - self.gamma[m][k][j] * a[i][m]);
                }
            }
            s
        })
    }

    /// `X(φ)` for a scalar field.
    pub fn derivative_scalar(&self, x: &Vec3<f64>, pick: impl Fn(&InducedPointData) -> f64) -> f64 {
        (0..3).map(|k| x[k] * pick(&self.d[k])).sum()
    }
}
