//! Restriction of the two ambient spin^c structures to a hypersurface.
//!
//! The restricted spinor bundle is realized as the chirality eigenspace of
//! the ambient `Σ` containing the parallel spinor, and the induced Clifford
//! multiplication is `γ(X) = ±X·ν·` computed literally from the ambient
//! generators. Spinors live in the trivialization given by the ambient
//! frame `ε`, in which the parallel spinor is constant.

use num_complex::Complex64;

use crate::clifford::{inner, CMat, Spinor, I};
use crate::error::{Result, SpinlabError};
use crate::hypersurface::checks::Residuals;
use crate::hypersurface::{FieldJet, InducedPointData};
use crate::linalg::{Mat3, Vec3, Vec4};
use crate::space_forms::{ProductModel, SpincStructure};

/// Induced Clifford multiplication, curvature and connection at one point.
#[derive(Clone, Debug)]
pub struct InducedSpincData {
    pub structure: SpincStructure,
    /// `+1` for a positive ambient spinor (`γ = X·ν·`), `-1` otherwise.
    pub sign: f64,
    pub point: InducedPointData,
    /// Adapted frame rows `e₁, e₂, ξ, ν` in ambient components.
    pub adapted: [Vec4<f64>; 4],
    /// `γ(e₁), γ(e₂), γ(ξ)`.
    pub gamma_frame: [CMat; 3],
    /// Connection operator along each coordinate direction, acting on constant sections.
    pub connection: [CMat; 3],
    /// `Ω(e_i, e_j)` from the pullback of `Ω^N`.
    pub omega: Mat3<f64>,
    ambient: Vec<CMat>,
    nu_action: CMat,
}

#[derive(Clone, Debug)]
pub struct InducedSpinorField {
    pub tag: u8,
    pub phi: Spinor,
    pub norm: f64,
}

fn scalar(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl InducedSpincData {
    fn clifford_ambient(&self, v: &Vec4<f64>) -> CMat {
        let mut m = CMat::zeros(4, 4);
        for (g, c) in self.ambient.iter().zip(v) {
            m += g * scalar(*c);
        }
        m
    }

    /// `γ(X)` for a tangent vector in coordinates.
    pub fn gamma(&self, x: &Vec3<f64>) -> CMat {
        let a = self.point.to_ambient(x);
        self.clifford_ambient(&a) * &self.nu_action * scalar(self.sign)
    }

    /// `γ(Σ c_i e_i)` from frame components.
    pub fn gamma_frame_combo(&self, c: &Vec3<f64>) -> CMat {
        let mut m = CMat::zeros(4, 4);
        for (g, ci) in self.gamma_frame.iter().zip(c) {
            m += g * scalar(*ci);
        }
        m
    }

    /// `∇_X φ` for the constant section `φ`, `X` in coordinates.
    pub fn nabla(&self, x: &Vec3<f64>, phi: &Spinor) -> Spinor {
        let mut out = Spinor::zeros(4);
        for k in 0..3 {
            out += &self.connection[k] * phi * scalar(x[k]);
        }
        out
    }

    /// `Ω(X, Y)` for tangent vectors in coordinates.
    pub fn omega_of(&self, x: &Vec3<f64>, y: &Vec3<f64>) -> f64 {
        let xf = self.point.vec_in_frame(x);
        let yf = self.point.vec_in_frame(y);
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += self.omega[i][j] * xf[i] * yf[j];
            }
        }
        s
    }

    /// Killing sign: `∇φ = κ·½γ(EX)φ` with `κ = -1` for positive and `+1` for negative spinors.
    pub fn killing_sign(&self) -> f64 {
        -self.sign
    }
}

/// Build the induced structure and restricted spinor at the point of `jet`.
pub fn restrict_structure(product: &ProductModel, jet: &FieldJet, structure: SpincStructure) -> (InducedSpincData, InducedSpinorField) {
    let d = jet.at;
    let model = product.clifford();
    let ambient = model.generators.clone();
    let sign = structure.chirality();
    let cl = |v: &Vec4<f64>| model.vector_action(v);
    let nu_action = cl(&jet.adapted[3]);
    let gamma_frame: [CMat; 3] = std::array::from_fn(|i| cl(&jet.adapted[i]) * &nu_action * scalar(sign));

    // change of trivialization from the adapted frame to ε, and the intrinsic connection
    let connection: [CMat; 3] = std::array::from_fn(|k| {
        let mut x = [0.0; 3];
        x[k] = 1.0;
        let mut op = CMat::zeros(4, 4);
        let r = &jet.adapted;
        let dr = &jet.d_adapted[k];
        for a in 0..4 {
            for c in 0..4 {
                for e in 0..4 {
                    let w = dr[a][c] * r[a][e];
                    if w != 0.0 {
                        op -= &ambient[e] * &ambient[c] * scalar(0.25 * w);
                    }
                }
            }
        }
        let nabla_e: [Vec3<f64>; 3] = std::array::from_fn(|i| jet.nabla_vector(&x, |q| q.frame[i]));
        for i in 0..3 {
            for j in 0..3 {
                let w = d.inner(&nabla_e[i], &d.frame[j]);
                op += cl(&r[i]) * cl(&r[j]) * scalar(0.25 * w);
            }
        }
        let xa = product.frame_to_coord(&d.p, &d.tangents[k]);
        let a = product.auxiliary_connection(&structure, &d.p, &xa);
        op + CMat::identity(4, 4) * (I * (0.5 * a))
    });

    let omega: Mat3<f64> =
        std::array::from_fn(|i| std::array::from_fn(|j| product.curvature_form_frame(&structure, &jet.adapted[i], &jet.adapted[j])));
    let phi = product.parallel_spinor(&structure);
    let norm = phi.norm();
    (
        InducedSpincData { structure, sign, point: d, adapted: jet.adapted, gamma_frame, connection, omega, ambient, nu_action },
        InducedSpinorField { tag: structure.tag, phi, norm },
    )
}

fn rel(v: &Spinor, field: &InducedSpinorField) -> f64 {
    v.norm() / field.norm
}

/// `|∇_X φ − κ·½γ(EX)φ| / |φ|`.
pub fn killing_residual(data: &InducedSpincData, field: &InducedSpinorField, x: &Vec3<f64>) -> f64 {
    let ex = data.point.apply(&data.point.e, x);
    let lhs = data.nabla(x, &field.phi);
    let rhs = data.gamma(&ex) * &field.phi * scalar(0.5 * data.killing_sign());
    rel(&(lhs - rhs), field)
}

pub fn killing_max(data: &InducedSpincData, field: &InducedSpinorField) -> f64 {
    data.point.frame.iter().map(|x| killing_residual(data, field, x)).fold(0.0, f64::max)
}

/// Anticommutation and skew-adjointness of `γ` on the adapted frame, restricted to the spinor line.
pub fn clifford_defect(data: &InducedSpincData, field: &InducedSpinorField) -> f64 {
    let mut worst = 0.0_f64;
    let id = CMat::identity(4, 4);
    for i in 0..3 {
        let gi = &data.gamma_frame[i];
        worst = worst.max((gi + gi.adjoint()).norm());
        for j in 0..3 {
            let gj = &data.gamma_frame[j];
            let delta = if i == j { 2.0 } else { 0.0 };
            let ac = gi * gj + gj * gi + &id * scalar(delta);
            worst = worst.max(rel(&(ac * &field.phi), field));
        }
    }
    worst
}

/// `γ(ξ)φ₁ = −iφ₁` (structure 1) or `γ(V)φ₂ = −iγ(ξ)φ₂ + hφ₂` (structure 2).
pub fn algebraic_conditions(data: &InducedSpincData, field: &InducedSpinorField) -> Residuals {
    let d = &data.point;
    let phi = &field.phi;
    let gxi = &data.gamma_frame[2];
    if data.structure.tag == 1 {
        let r = gxi * phi + phi * I;
        vec![("gamma(xi)phi=-i.phi", rel(&r, field))]
    } else {
        let r = data.gamma(&d.v) * phi + gxi * phi * I - phi * scalar(d.h);
        vec![("gamma(V)phi=-i.gamma(xi)phi+h.phi", rel(&r, field))]
    }
}

fn pairing(field: &InducedSpinorField, g: &CMat) -> Complex64 {
    inner(&(g * &field.phi), &field.phi) / (field.norm * field.norm)
}

/// The four identities expressing `V` and `h` through `φ₂`.
pub fn identities_ide(data: &InducedSpincData, field: &InducedSpinorField) -> Residuals {
    let d = &data.point;
    let vf = d.vec_in_frame(&d.v);
    let [g1, g2, g3] = &data.gamma_frame;
    vec![
        ("(gamma(V)phi,phi)=0", pairing(field, &data.gamma(&d.v)).norm()),
        ("g(V,e1)=-i(gamma(e2)phi,phi)", (scalar(vf[0]) + I * pairing(field, g2)).norm()),
        ("g(V,e2)=i(gamma(e1)phi,phi)", (scalar(vf[1]) - I * pairing(field, g1)).norm()),
        ("h=i(gamma(xi)phi,phi)", (scalar(d.h) - I * pairing(field, g3)).norm()),
    ]
}

/// Closed-form `Ω^j` in the frame `{e₁, e₂, ξ}` for the default pairing.
pub fn omega_closed_form(tag: u8, c1: f64, c2: f64, d: &InducedPointData) -> [f64; 3] {
    let vf = d.vec_in_frame(&d.v);
    let h = d.h;
    if tag == 1 {
        [c1 / 2.0 * (h - 1.0) - c2 / 2.0 * (h + 1.0), (c1 - c2) / 2.0 * vf[0], (c1 - c2) / 2.0 * vf[1]]
    } else {
        [-c1 / 2.0 * (h - 1.0) - c2 / 2.0 * (h + 1.0), -(c1 + c2) / 2.0 * vf[0], -(c1 + c2) / 2.0 * vf[1]]
    }
}

/// Pullback of `Ω^N` against the closed form, on the pairs `(e₁,e₂), (e₁,ξ), (e₂,ξ)`.
pub fn omega_formula_check(product: &ProductModel, data: &InducedSpincData) -> Residuals {
    let cf = omega_closed_form(data.structure.tag, product.c1(), product.c2(), &data.point);
    let o = &data.omega;
    vec![("Omega(e1,e2)", (o[0][1] - cf[0]).abs()), ("Omega(e1,xi)", (o[0][2] - cf[1]).abs()), ("Omega(e2,xi)", (o[1][2] - cf[2]).abs())]
}

fn factor_action(product: &ProductModel, x: &[f64]) -> CMat {
    product.spinors.factor.vector_action(x)
}

/// The two vanishing tensor combinations built from factor projections of `ν`, `ξ`, `V`.
pub fn projection_lemma_check(product: &ProductModel, d: &InducedPointData) -> (f64, f64) {
    let sp = &product.spinors;
    let plus = sp.positive_line();
    let minus = sp.negative_line();
    let xi = d.to_ambient(&d.xi);
    let v = d.to_ambient(&d.v);
    let nu = d.nu;
    let first = |w: &Vec4<f64>| factor_action(product, &w[0..2]);
    let second = |w: &Vec4<f64>| factor_action(product, &w[2..4]);
    let t = |a: Spinor, b: Spinor| sp.tensor(&a, &b);

    let l1 = t(&first(&nu) * &plus, &second(&xi) * &plus) * scalar(-1.0) + t(&first(&xi) * &plus, &second(&nu) * &plus);

    let v_i_xi = |sel: &dyn Fn(&Vec4<f64>) -> CMat| sel(&v) + sel(&xi) * I;
    let l2 = t(&first(&nu) * &minus, v_i_xi(&second) * &plus) - t(v_i_xi(&first) * &minus, &second(&nu) * &plus);
    (l1.norm(), l2.norm())
}

/// `|(Ω^N·ψ)|_M − γ(Ω)φ ± γ(ν⌟Ω^N)φ| / |φ|`, sign `−` for positive spinors.
pub fn restriction_2form_check(product: &ProductModel, data: &InducedSpincData, field: &InducedSpinorField) -> f64 {
    let st = &data.structure;
    let mut lhs = CMat::zeros(4, 4);
    for a in 0..4 {
        for b in (a + 1)..4 {
            let mut ea = [0.0; 4];
            let mut eb = [0.0; 4];
            ea[a] = 1.0;
            eb[b] = 1.0;
            let w = product.curvature_form_frame(st, &ea, &eb);
            if w != 0.0 {
                lhs += &data.ambient[a] * &data.ambient[b] * scalar(w);
            }
        }
    }
    let mut rhs = CMat::zeros(4, 4);
    for i in 0..3 {
        for j in (i + 1)..3 {
            rhs += &data.gamma_frame[i] * &data.gamma_frame[j] * scalar(data.omega[i][j]);
        }
    }
    let contraction: Vec3<f64> = std::array::from_fn(|i| product.curvature_form_frame(st, &data.adapted[3], &data.adapted[i]));
    rhs -= data.gamma_frame_combo(&contraction) * scalar(data.sign);
    rel(&((lhs - rhs) * &field.phi), field)
}

/// Dirac residual and energy-momentum tensor of the restricted spinor.
#[derive(Clone, Debug)]
pub struct DiracReport {
    /// `|Dφ − κ'·(3/2)Hφ| / |φ|` with `κ' = +1` for structure 1 and `−1` for structure 2.
    pub dirac_residual: f64,
    /// `Q(e_i, e_j)`.
    pub q: Mat3<f64>,
    /// `max |Q − κ''·E/2|` with `κ'' = +1` for structure 1 and `−1` for structure 2.
    pub q_half_residual: f64,
    /// `max |Q − E|`, the literal claim, recorded for comparison.
    pub q_minus_e: f64,
    /// `max |Q + E|`.
    pub q_plus_e: f64,
}

pub fn dirac_and_energy_momentum(data: &InducedSpincData, field: &InducedSpinorField) -> Result<DiracReport> {
    if field.norm < 1e-12 {
        return Err(SpinlabError::DegenerateSpinor(field.norm));
    }
    let d = &data.point;
    let phi = &field.phi;
    let nab: [Spinor; 3] = std::array::from_fn(|k| data.nabla(&d.frame[k], phi));
    let mut dirac = Spinor::zeros(4);
    for k in 0..3 {
        dirac += &data.gamma_frame[k] * &nab[k];
    }
    let expected_sign = -data.killing_sign();
    let dirac_residual = rel(&(dirac - phi * scalar(expected_sign * 1.5 * d.mean_curvature())), field);

    let n2 = field.norm * field.norm;
    let q: Mat3<f64> = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let s = &data.gamma_frame[i] * &nab[j] + &data.gamma_frame[j] * &nab[i];
            0.5 * inner(&s, phi).re / n2
        })
    });
    let ef = d.in_frame(&d.e);
    let mut half = 0.0_f64;
    let mut minus = 0.0_f64;
    let mut plus = 0.0_f64;
    for i in 0..3 {
        for j in 0..3 {
            half = half.max((q[i][j] - expected_sign * 0.5 * ef[i][j]).abs());
            minus = minus.max((q[i][j] - ef[i][j]).abs());
            plus = plus.max((q[i][j] + ef[i][j]).abs());
        }
    }
    Ok(DiracReport { dirac_residual, q, q_half_residual: half, q_minus_e: minus, q_plus_e: plus })
}

/// The constant `c` with `γ(e₁)γ(e₂)γ(ξ)φ = cφ`, and the defect of that eigen-relation.
pub fn volume_convention(data: &InducedSpincData, field: &InducedSpinorField) -> (Complex64, f64) {
    let [g1, g2, g3] = &data.gamma_frame;
    let w = g1 * g2 * g3 * &field.phi;
    let c = inner(&w, &field.phi) / (field.norm * field.norm);
    (c, rel(&(w - &field.phi * c), field))
}
