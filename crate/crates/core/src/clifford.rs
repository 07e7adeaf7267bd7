//! Complex Clifford algebra representations in dimensions 2, 3 and 4.
//!
//! Convention: `e·e = -|e|²`. The complex volume element is
//! `ω = i^⌊(m+1)/2⌋ e₁⋯e_m`; it is the identity in dimension 3 and an
//! involution in even dimension, with `Σ±` its `±1` eigenspaces.
//!
//! | dim | generators                                  | ω        |
//! |-----|---------------------------------------------|----------|
//! | 2   | `e₁ = iσ₁`, `e₂ = iσ₂`                       | `σ₃`     |
//! | 3   | `e_k = -iσ_k`                               | `Id`     |
//! | 4   | `e_a ⊗ Id` (a = 1,2), `σ₃ ⊗ e_b` (b = 1,2)  | `σ₃⊗σ₃` |
//!
//! The dimension-4 table is the tensor product of two dimension-2 models
//! glued by `(X₁+X₂)·(ψ₁⊗ψ₂) = X₁·ψ₁⊗ψ₂ + ψ̄₁⊗X₂·ψ₂`, so product spinors
//! are literally Kronecker products of factor spinors.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Result, SpinlabError};

pub type CMat = DMatrix<Complex64>;
pub type Spinor = DVector<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli(k: usize) -> CMat {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    match k {
        1 => CMat::from_row_slice(2, 2, &[z, o, o, z]),
        2 => CMat::from_row_slice(2, 2, &[z, -I, I, z]),
        3 => CMat::from_row_slice(2, 2, &[o, z, z, -o]),
        _ => unreachable!("pauli index {k}"),
    }
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Complex Clifford module of `Cl(m)` with the negative-definite convention.
#[derive(Clone, Debug)]
pub struct CliffordModel {
    pub dim: usize,
    pub generators: Vec<CMat>,
    pub volume: CMat,
    /// `(P₊, P₋)` for even dimension.
    pub chirality: Option<(CMat, CMat)>,
}

pub fn build_clifford(m: usize) -> Result<CliffordModel> {
    let generators: Vec<CMat> = match m {
        2 => vec![pauli(1) * I, pauli(2) * I],
        3 => (1..=3).map(|k| pauli(k) * (-I)).collect(),
        4 => {
            let base = build_clifford(2)?;
            let id2 = identity(2);
            let w = base.volume.clone();
            vec![
                base.generators[0].kronecker(&id2),
                base.generators[1].kronecker(&id2),
                w.kronecker(&base.generators[0]),
                w.kronecker(&base.generators[1]),
            ]
        }
        other => return Err(SpinlabError::UnsupportedDimension(other)),
    };
    let n = generators[0].nrows();
    let mut product = identity(n);
    for g in &generators {
        product *= g;
    }
    let volume = product * I.powu(m.div_ceil(2) as u32);
    let chirality = m.is_multiple_of(2).then(|| {
        let id = identity(n);
        ((&id + &volume) * c(0.5, 0.0), (&id - &volume) * c(0.5, 0.0))
    });
    Ok(CliffordModel { dim: m, generators, volume, chirality })
}

impl CliffordModel {
    pub fn spinor_dim(&self) -> usize {
        self.generators[0].nrows()
    }

    /// Clifford action of the vector with orthonormal components `x`.
    pub fn vector_action(&self, x: &[f64]) -> CMat {
        assert_eq!(x.len(), self.dim, "vector has wrong dimension");
        let n = self.spinor_dim();
        let mut out = CMat::zeros(n, n);
        for (g, &xi) in self.generators.iter().zip(x) {
            out += g * c(xi, 0.0);
        }
        out
    }

    /// `max_{i,j} ‖e_i e_j + e_j e_i + 2δ_ij Id‖`
    pub fn anticommutation_residual(&self) -> f64 {
        let n = self.spinor_dim();
        let mut worst = 0.0_f64;
        for (i, a) in self.generators.iter().enumerate() {
            for (j, b) in self.generators.iter().enumerate() {
                let mut r = a * b + b * a;
                if i == j {
                    r += identity(n) * c(2.0, 0.0);
                }
                worst = worst.max(r.norm());
            }
        }
        worst
    }

    pub fn projectors(&self) -> Result<&(CMat, CMat)> {
        self.chirality.as_ref().ok_or(SpinlabError::OddDimension(self.dim))
    }
}

/// Matrix of the Kähler form `½ Σ_j e_j·(J e_j)` acting on spinors.
pub fn kahler_action(model: &CliffordModel, j: &DMatrix<f64>) -> Result<CMat> {
    let m = model.dim;
    if m % 2 == 1 {
        return Err(SpinlabError::OddDimension(m));
    }
    if j.nrows() != m || j.ncols() != m {
        return Err(SpinlabError::DimensionMismatch { expected: m, found: j.nrows() });
    }
    let square = j * j + DMatrix::<f64>::identity(m, m);
    let orth = j.transpose() * j - DMatrix::<f64>::identity(m, m);
    let residual = square.norm().max(orth.norm());
    if residual > 1e-12 {
        return Err(SpinlabError::NotComplexStructure(residual));
    }
    let n = model.spinor_dim();
    let mut out = CMat::zeros(n, n);
    for k in 0..m {
        let je: Vec<f64> = j.column(k).iter().copied().collect();
        out += &model.generators[k] * model.vector_action(&je);
    }
    Ok(out * c(0.5, 0.0))
}

/// Eigenvalues of a skew-Hermitian matrix, sorted by imaginary part (descending).
pub fn skew_hermitian_spectrum(a: &CMat) -> Vec<Complex64> {
    let herm = a * (-I);
    let eig = herm.symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|x, y| y.partial_cmp(x).unwrap());
    vals.into_iter().map(|v| c(0.0, v)).collect()
}

/// `ψ̄ = ψ⁺ − ψ⁻`
pub fn conjugate(psi: &Spinor, model: &CliffordModel) -> Result<Spinor> {
    let (p, m) = model.projectors()?;
    if psi.len() != model.spinor_dim() {
        return Err(SpinlabError::DimensionMismatch { expected: model.spinor_dim(), found: psi.len() });
    }
    Ok(p * psi - m * psi)
}

/// Hermitian product, linear in the first slot.
pub fn inner(a: &Spinor, b: &Spinor) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

/// The dimension-4 spinor space seen as `ΣN₁ ⊗ ΣN₂`.
#[derive(Clone, Debug)]
pub struct ProductSpinorSpace {
    pub factor: CliffordModel,
    pub product: CliffordModel,
}

impl ProductSpinorSpace {
    pub fn new() -> Self {
        ProductSpinorSpace {
            factor: build_clifford(2).expect("dimension 2 is supported"),
            product: build_clifford(4).expect("dimension 4 is supported"),
        }
    }

    /// Identification `ψ₁ ⊗ ψ₂ ↦` Kronecker product.
    pub fn tensor(&self, psi1: &Spinor, psi2: &Spinor) -> Spinor {
        psi1.kronecker(psi2)
    }

    /// `(X₁+X₂)·(ψ₁⊗ψ₂) = X₁·ψ₁ ⊗ ψ₂ + ψ̄₁ ⊗ X₂·ψ₂`
    pub fn product_clifford(&self, x1: &[f64], x2: &[f64], psi1: &Spinor, psi2: &Spinor) -> Result<Spinor> {
        for (v, s) in [(x1, psi1), (x2, psi2)] {
            if v.len() != 2 {
                return Err(SpinlabError::DimensionMismatch { expected: 2, found: v.len() });
            }
            if s.len() != 2 {
                return Err(SpinlabError::DimensionMismatch { expected: 2, found: s.len() });
            }
        }
        let first = self.factor.vector_action(x1) * psi1;
        let bar = conjugate(psi1, &self.factor)?;
        let second = self.factor.vector_action(x2) * psi2;
        Ok(self.tensor(&first, psi2) + self.tensor(&bar, &second))
    }

    /// `Σ₀`-type line of one factor: the `Σ⁺` basis spinor `(1, 0)`.
    pub fn positive_line(&self) -> Spinor {
        Spinor::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)])
    }

    /// The `Σ⁻` basis spinor `(0, 1)`.
    pub fn negative_line(&self) -> Spinor {
        Spinor::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)])
    }
}

impl Default for ProductSpinorSpace {
    fn default() -> Self {
        Self::new()
    }
}

/// Residual of the commutator identity for a symmetric `E` in dimension 3:
/// `[γ(Ee_i), γ(Ee_j)] = 2 γ(Ee_i × Ee_j)`, written out in the entries `a_ij` of `E`.
pub fn verify_lemma_aij(e: &nalgebra::Matrix3<f64>, model: &CliffordModel) -> Result<f64> {
    if model.dim != 3 {
        return Err(SpinlabError::DimensionMismatch { expected: 3, found: model.dim });
    }
    let asym = (e - e.transpose()).amax();
    if asym > 1e-12 {
        return Err(SpinlabError::NotSymmetric(asym));
    }
    let a = |r: usize, s: usize| e[(r, s)];
    let gamma = |v: [f64; 3]| model.vector_action(&v);
    let mut worst = 0.0_f64;
    for i in 0..3 {
        for j in 0..3 {
            let ei: Vec<f64> = (0..3).map(|k| a(k, i)).collect();
            let ej: Vec<f64> = (0..3).map(|k| a(k, j)).collect();
            let (gi, gj) = (model.vector_action(&ei), model.vector_action(&ej));
            let lhs = &gi * &gj - &gj * &gi;
            let rhs = gamma([
                2.0 * (a(j, 2) * a(i, 1) - a(j, 1) * a(i, 2)),
                2.0 * (a(i, 2) * a(j, 0) - a(i, 0) * a(j, 2)),
                2.0 * (a(i, 0) * a(j, 1) - a(i, 1) * a(j, 0)),
            ]);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}
