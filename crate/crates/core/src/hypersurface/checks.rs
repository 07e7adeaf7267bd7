//! Pointwise identities of the induced structure and the Gauss, Codazzi and
//! structure equations.
//!
//! Each function returns named residuals. Vectors are compared with the
//! induced norm, so every residual is frame-independent.

use nalgebra::Matrix4;

use super::{riemann_apply, FieldJet, InducedPointData, Riemann};
use crate::linalg::{add, dot, mat_mul, mat_vec, norm, scale, sub, Mat3, Vec3, Vec4};
use crate::space_forms::ProductModel;

pub type Residuals = Vec<(&'static str, f64)>;

pub fn max_residual(r: &Residuals) -> f64 {
    r.iter().fold(0.0, |m, (_, v)| m.max(*v))
}

fn tnorm(d: &InducedPointData, x: &Vec3<f64>) -> f64 {
    d.inner(x, x).max(0.0).sqrt()
}

fn amb(d: &InducedPointData, x: &Vec3<f64>) -> Vec4<f64> {
    d.to_ambient(x)
}

fn coord(k: usize) -> Vec3<f64> {
    let mut e = [0.0; 3];
    e[k] = 1.0;
    e
}

fn max_over<const N: usize>(f: impl Fn(usize) -> f64) -> f64 {
    (0..N).map(f).fold(0.0, f64::max)
}

/// Normal, shape operator, almost contact structure and frame invariants.
pub fn immersion_invariants(d: &InducedPointData) -> Residuals {
    let fr = d.frame;
    let ef = d.in_frame(&d.e);
    let chi2 = mat_mul(&d.chi, &d.chi);
    vec![
        ("unit-normal", (norm(&d.nu) - 1.0).abs()),
        ("normal-orthogonal", max_over::<3>(|a| dot(&d.nu, &d.tangents[a]).abs())),
        ("E-symmetric", max_over::<3>(|i| max_over::<3>(|j| (ef[i][j] - ef[j][i]).abs()))),
        ("xi-unit", (d.inner(&d.xi, &d.xi) - 1.0).abs()),
        ("xi=-J(nu)", norm(&add(&amb(d, &d.xi), &ProductModel::apply_j(&d.nu)))),
        ("chi(xi)=0", tnorm(d, &mat_vec(&d.chi, &d.xi))),
        (
            "chi^2=-Id+eta(x)xi",
            max_over::<3>(|i| {
                let x = fr[i];
                let lhs = mat_vec(&chi2, &x);
                tnorm(d, &add(&sub(&lhs, &scale(d.eta(&x), &d.xi)), &x))
            }),
        ),
        ("frame-orthonormal", max_over::<3>(|i| max_over::<3>(|j| (d.inner(&fr[i], &fr[j]) - if i == j { 1.0 } else { 0.0 }).abs()))),
        (
            "JX=chiX+eta(X)nu",
            max_over::<3>(|a| {
                let x = coord(a);
                let lhs = ProductModel::apply_j(&d.tangents[a]);
                let rhs = add(&amb(d, &mat_vec(&d.chi, &x)), &scale(d.eta(&x), &d.nu));
                norm(&sub(&lhs, &rhs))
            }),
        ),
        (
            "FX=fX+(V,X)nu",
            max_over::<3>(|a| {
                let x = coord(a);
                let lhs = ProductModel::apply_f(&d.tangents[a]);
                let rhs = add(&amb(d, &mat_vec(&d.f, &x)), &scale(d.inner(&d.v, &x), &d.nu));
                norm(&sub(&lhs, &rhs))
            }),
        ),
        ("F(nu)=V+h.nu", norm(&sub(&ProductModel::apply_f(&d.nu), &add(&amb(d, &d.v), &scale(d.h, &d.nu))))),
    ]
}

/// `f` symmetric, `f² + V⊗V♭ = Id`, `fV = −hV`, `h² + ‖V‖² = 1`, `tr f = −h`.
pub fn lemma_f(d: &InducedPointData) -> Residuals {
    let ff = d.in_frame(&d.f);
    let f2 = mat_mul(&d.f, &d.f);
    vec![
        ("f-symmetric", max_over::<3>(|i| max_over::<3>(|j| (ff[i][j] - ff[j][i]).abs()))),
        (
            "f^2X+(V,X)V=X",
            max_over::<3>(|i| {
                let x = d.frame[i];
                tnorm(d, &sub(&add(&mat_vec(&f2, &x), &scale(d.inner(&d.v, &x), &d.v)), &x))
            }),
        ),
        ("fV=-hV", tnorm(d, &add(&mat_vec(&d.f, &d.v), &scale(d.h, &d.v)))),
        ("h^2+|V|^2=1", (d.h * d.h + d.inner(&d.v, &d.v) - 1.0).abs()),
        ("tr(f)=-h", (d.f[0][0] + d.f[1][1] + d.f[2][2] + d.h).abs()),
    ]
}

/// The ten identities relating `f, V, h` to `Χ, ξ, η`.
pub fn lemma_f_chi(d: &InducedPointData) -> Residuals {
    let [e1, e2, xi] = d.frame;
    let chi = |x: &Vec3<f64>| mat_vec(&d.chi, x);
    let f = |x: &Vec3<f64>| mat_vec(&d.f, x);
    let adapted = d.adapted_frame();
    vec![
        ("(i) chi antisymmetric", (d.inner(&chi(&e1), &e2) + d.inner(&e1, &chi(&e2))).abs().max(tnorm(d, &chi(&xi)))),
        (
            "(ii) JF=FJ",
            max_over::<4>(|i| {
                let y = adapted[i];
                norm(&sub(&ProductModel::apply_j(&ProductModel::apply_f(&y)), &ProductModel::apply_f(&ProductModel::apply_j(&y))))
            }),
        ),
        (
            "(iii) (V,chiX)+eta(X)h=eta(fX)",
            max_over::<3>(|i| {
                let x = d.frame[i];
                (d.inner(&d.v, &chi(&x)) + d.eta(&x) * d.h - d.eta(&f(&x))).abs()
            }),
        ),
        (
            "(iv) f.chiX+eta(X)V=chi.fX-(V,X)xi",
            max_over::<3>(|i| {
                let x = d.frame[i];
                let lhs = add(&f(&chi(&x)), &scale(d.eta(&x), &d.v));
                let rhs = sub(&chi(&f(&x)), &scale(d.inner(&d.v, &x), &xi));
                tnorm(d, &sub(&lhs, &rhs))
            }),
        ),
        ("(v) eta(V)=0", d.eta(&d.v).abs()),
        ("(vi) f(xi)=h.xi-chiV", tnorm(d, &sub(&f(&xi), &sub(&scale(d.h, &xi), &chi(&d.v))))),
        ("(vii) eta(fV)=0", d.eta(&f(&d.v)).abs()),
        ("(viii) (fe1,e2)=0, (fe1,e1)=(fe2,e2)=-h", {
            let a = d.inner(&f(&e1), &e2).abs();
            let b = (d.inner(&f(&e1), &e1) + d.h).abs();
            let c = (d.inner(&f(&e2), &e2) + d.h).abs();
            a.max(b).max(c)
        }),
        ("(ix) JV=chiV", norm(&sub(&ProductModel::apply_j(&amb(d, &d.v)), &amb(d, &chi(&d.v))))),
        ("(x) F(xi)=f(xi)", norm(&sub(&ProductModel::apply_f(&amb(d, &xi)), &amb(d, &f(&xi))))),
    ]
}

/// `(A ∧ B)Z = g(B, Z)A − g(A, Z)B`.
pub fn wedge(d: &InducedPointData, a: &Vec3<f64>, b: &Vec3<f64>, z: &Vec3<f64>) -> Vec3<f64> {
    sub(&scale(d.inner(b, z), a), &scale(d.inner(a, z), b))
}

/// Right-hand side of the Gauss equation, with `E` the shape operator of `d`
/// (or any symmetric field substituted into `d.e`).
pub fn gauss_rhs(d: &InducedPointData, c1: f64, c2: f64, x: &Vec3<f64>, y: &Vec3<f64>, z: &Vec3<f64>) -> Vec3<f64> {
    let fx = mat_vec(&d.f, x);
    let fy = mat_vec(&d.f, y);
    let ex = mat_vec(&d.e, x);
    let ey = mat_vec(&d.e, y);
    let t1 = scale(c1 / 4.0, &wedge(d, &add(x, &fx), &add(y, &fy), z));
    let t2 = scale(c2 / 4.0, &wedge(d, &sub(x, &fx), &sub(y, &fy), z));
    let t3 = sub(&scale(d.inner(&ey, z), &ex), &scale(d.inner(&ex, z), &ey));
    add(&add(&t1, &t2), &t3)
}

pub fn gauss_residual(d: &InducedPointData, r: &Riemann, c1: f64, c2: f64, x: usize, y: usize, z: usize) -> f64 {
    let (x, y, z) = (d.frame[x], d.frame[y], d.frame[z]);
    let lhs = riemann_apply(r, &x, &y, &z);
    tnorm(d, &sub(&lhs, &gauss_rhs(d, c1, c2, &x, &y, &z)))
}

pub fn gauss_max(d: &InducedPointData, r: &Riemann, c1: f64, c2: f64) -> f64 {
    max_over::<27>(|n| gauss_residual(d, r, c1, c2, n / 9, (n / 3) % 3, n % 3))
}

/// Frame components `R_ijkl = g(R(e_i, e_j)e_k, e_l)`.
pub fn riemann_frame(d: &InducedPointData, r: &Riemann) -> [[[[f64; 3]; 3]; 3]; 3] {
    let fr = d.frame;
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            std::array::from_fn(|k| {
                let w = riemann_apply(r, &fr[i], &fr[j], &fr[k]);
                std::array::from_fn(|l| d.inner(&w, &fr[l]))
            })
        })
    })
}

/// Scalar right-hand side of the Codazzi equation in the third slot `Z`.
pub fn codazzi_rhs(d: &InducedPointData, c1: f64, c2: f64, x: &Vec3<f64>, y: &Vec3<f64>, z: &Vec3<f64>) -> f64 {
    let g = |a: &Vec3<f64>, b: &Vec3<f64>| d.inner(a, b);
    let f = |a: &Vec3<f64>| mat_vec(&d.f, a);
    let v = &d.v;
    c1 / 4.0 * (g(&f(y), z) * g(v, x) - g(&f(x), z) * g(v, y) + g(y, z) * g(v, x) - g(x, z) * g(v, y))
        - c2 / 4.0 * (g(y, z) * g(v, x) - g(y, &f(z)) * g(v, x) - g(x, z) * g(y, v) + g(x, &f(z)) * g(v, y))
}

/// `d^∇E(X, Y) = (∇_X E)Y − (∇_Y E)X`.
pub fn exterior_covariant_e(jet: &FieldJet, x: &Vec3<f64>, y: &Vec3<f64>) -> Vec3<f64> {
    let nx = jet.nabla_endo(x, |d| d.e);
    let ny = jet.nabla_endo(y, |d| d.e);
    sub(&mat_vec(&nx, y), &mat_vec(&ny, x))
}

pub fn codazzi_residual(jet: &FieldJet, c1: f64, c2: f64, x: usize, y: usize, z: usize) -> f64 {
    let d = &jet.at;
    let (x, y, z) = (d.frame[x], d.frame[y], d.frame[z]);
    (d.inner(&exterior_covariant_e(jet, &x, &y), &z) - codazzi_rhs(d, c1, c2, &x, &y, &z)).abs()
}

pub fn codazzi_max(jet: &FieldJet, c1: f64, c2: f64) -> f64 {
    max_over::<27>(|n| codazzi_residual(jet, c1, c2, n / 9, (n / 3) % 3, n % 3))
}

/// Residuals of `(∇_X f)Y = g(Y,V)EX + g(EX,Y)V`, `∇_X V = −fEX + hEX`, and `X(h) = −2g(EV, X)`.
pub fn structure_equation_residuals(jet: &FieldJet) -> Residuals {
    let d = &jet.at;
    let ex = |x: &Vec3<f64>| mat_vec(&d.e, x);
    let s4 = max_over::<3>(|i| {
        let x = d.frame[i];
        let nf = jet.nabla_endo(&x, |q| q.f);
        max_over::<3>(|j| {
            let y = d.frame[j];
            let rhs = add(&scale(d.inner(&y, &d.v), &ex(&x)), &scale(d.inner(&ex(&x), &y), &d.v));
            tnorm(d, &sub(&mat_vec(&nf, &y), &rhs))
        })
    });
    let s5 = max_over::<3>(|i| {
        let x = d.frame[i];
        let nv = jet.nabla_vector(&x, |q| q.v);
        let rhs = sub(&scale(d.h, &ex(&x)), &mat_vec(&d.f, &ex(&x)));
        tnorm(d, &sub(&nv, &rhs))
    });
    let s6 = max_over::<3>(|i| {
        let x = d.frame[i];
        (jet.derivative_scalar(&x, |q| q.h) + 2.0 * d.inner(&ex(&d.v), &x)).abs()
    });
    vec![("(nabla_X f)Y", s4), ("nabla_X V", s5), ("grad h=-2EV", s6)]
}

/// Factor projections `π₁X = (X + FX)/2`, `π₂X = (X − FX)/2` of an ambient vector.
pub fn projections(x: &Vec4<f64>) -> (Vec4<f64>, Vec4<f64>) {
    let fx = ProductModel::apply_f(x);
    (scale(0.5, &add(x, &fx)), scale(0.5, &sub(x, &fx)))
}

/// The six projection formulas for `V`, `ξ`, `ν`.
pub fn projection_formula_residuals(d: &InducedPointData) -> Residuals {
    let v = amb(d, &d.v);
    let xi = amb(d, &d.xi);
    let nu = d.nu;
    let vv = d.inner(&d.v, &d.v);
    let h = d.h;
    let (p1v, p2v) = projections(&v);
    let (p1x, p2x) = projections(&xi);
    let (p1n, p2n) = projections(&nu);
    let half = |a: Vec4<f64>| scale(0.5, &a);
    let j = ProductModel::apply_j::<f64>;
    vec![
        ("pi1(V)", norm(&sub(&p1v, &half(add(&scale(1.0 - h, &v), &scale(vv, &nu)))))),
        ("pi2(V)", norm(&sub(&p2v, &half(sub(&scale(h + 1.0, &v), &scale(vv, &nu)))))),
        ("pi1(xi)=-J(pi1(nu))", norm(&add(&p1x, &j(&p1n)))),
        ("pi2(xi)=-J(pi2(nu))", norm(&add(&p2x, &j(&p2n)))),
        ("pi1(nu)", norm(&sub(&p1n, &half(add(&scale(h + 1.0, &nu), &v))))),
        ("pi2(nu)", norm(&sub(&p2n, &half(sub(&scale(1.0 - h, &nu), &v))))),
    ]
}

/// The block matrix `[[f, V], [Vᵀ, h]]` in the basis `{e₁, e₂, ξ, ν}`.
pub fn product_structure_matrix(d: &InducedPointData) -> Matrix4<f64> {
    let ff = d.in_frame(&d.f);
    let vf = d.vec_in_frame(&d.v);
    let mut m = Matrix4::zeros();
    for i in 0..3 {
        for j in 0..3 {
            m[(i, j)] = ff[i][j];
        }
        m[(i, 3)] = vf[i];
        m[(3, i)] = vf[i];
    }
    m[(3, 3)] = d.h;
    m
}

pub const RANK_THRESHOLD: f64 = 1e-8;

/// Numerical ranks of `(F + Id)/2` and `(F − Id)/2`.
pub fn rank_of_halves(m: &Matrix4<f64>) -> (usize, usize) {
    let id = Matrix4::identity();
    let rank = |a: Matrix4<f64>| a.svd(false, false).singular_values.iter().filter(|s| **s > RANK_THRESHOLD).count();
    (rank((m + id) * 0.5), rank((m - id) * 0.5))
}

pub fn rank_check(d: &InducedPointData) -> (usize, usize) {
    rank_of_halves(&product_structure_matrix(d))
}

/// Convenience: is `A` symmetric with respect to `g`.
pub fn g_symmetry_defect(d: &InducedPointData, a: &Mat3<f64>) -> f64 {
    let af = d.in_frame(a);
    max_over::<3>(|i| max_over::<3>(|j| (af[i][j] - af[j][i]).abs()))
}
