//! The converse direction: abstract data `(g, E, Χ, ξ, V, h, f)` on a chart,
//! checked against the compatibility equations and the rank condition.

use serde::{Deserialize, Serialize};

use crate::autodiff::Real;
use crate::error::Result;
use crate::hypersurface::checks::{
    codazzi_max, gauss_max, lemma_f, product_structure_matrix, rank_of_halves, structure_equation_residuals,
};
use crate::hypersurface::{field_jet, riemann_tensor, FieldProvider, PointFields};
use crate::linalg::{mat_vec, Mat3, Vec3};
use crate::space_forms::ProductModel;

/// A single-field corruption of harvested data. All corruptions are smooth,
/// so derivative-based checks see a consistent (wrong) field.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "field", rename_all = "kebab-case")]
pub enum Corruption {
    ScaleE {
        factor: f64,
    },
    /// `E + ε·w⊗w♭`, a symmetric rank-one perturbation.
    PerturbE {
        eps: f64,
        w: [f64; 3],
    },
    ShiftH {
        delta: f64,
    },
    ScaleV {
        factor: f64,
    },
    /// `f + ε·w⊗w♭`.
    PerturbF {
        eps: f64,
        w: [f64; 3],
    },
}

impl Corruption {
    /// The named converse check that this corruption is designed to break.
    pub fn expected_failure(&self) -> &'static str {
        match self {
            Corruption::ScaleE { .. } | Corruption::PerturbE { .. } => "gauss",
            Corruption::ShiftH { .. } => "h^2+|V|^2=1",
            Corruption::ScaleV { .. } => "f^2X+(V,X)V=X",
            Corruption::PerturbF { .. } => "f=recipe(V,h,chi)",
        }
    }
}

/// Harvested fields of an immersion, treated as abstract data and optionally corrupted.
#[derive(Clone, Debug)]
pub struct AbstractData<P> {
    pub source: P,
    pub corruption: Option<Corruption>,
}

impl<P: FieldProvider> AbstractData<P> {
    pub fn harvest(source: P) -> Self {
        AbstractData { source, corruption: None }
    }

    pub fn corrupted(source: P, c: Corruption) -> Self {
        AbstractData { source, corruption: Some(c) }
    }
}

fn rank_one<T: Real>(g: &Mat3<T>, w: &[f64; 3], eps: f64) -> Mat3<T> {
    let wt = w.map(T::cst);
    let low = mat_vec(g, &wt);
    std::array::from_fn(|a| std::array::from_fn(|c| wt[a] * low[c] * eps))
}

fn add_mat<T: Real>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] + b[i][j]))
}

impl<P: FieldProvider> FieldProvider for AbstractData<P> {
    fn product(&self) -> &ProductModel {
        self.source.product()
    }
    fn fields<T: Real>(&self, u: [T; 3]) -> Result<PointFields<T>> {
        let mut d = self.source.fields(u)?;
        match self.corruption {
            None => {}
            Some(Corruption::ScaleE { factor }) => d.e = d.e.map(|r| r.map(|x| x * factor)),
            Some(Corruption::PerturbE { eps, w }) => d.e = add_mat(&d.e, &rank_one(&d.g, &w, eps)),
            Some(Corruption::ShiftH { delta }) => d.h = d.h + delta,
            Some(Corruption::ScaleV { factor }) => d.v = d.v.map(|x| x * factor),
            Some(Corruption::PerturbF { eps, w }) => d.f = add_mat(&d.f, &rank_one(&d.g, &w, eps)),
        }
        Ok(d)
    }
    fn metric<T: Real>(&self, u: [T; 3]) -> Result<Mat3<T>> {
        self.source.metric(u)
    }
    fn domain(&self) -> [(f64, f64); 3] {
        self.source.domain()
    }
    fn label(&self) -> String {
        match &self.corruption {
            None => format!("harvested {}", self.source.label()),
            Some(c) => format!("harvested {} with {:?}", self.source.label(), c),
        }
    }
}

/// `f` rebuilt from `(V, h, Χ)`: in the frame `{e₁, e₂ = Χe₁, ξ}`,
/// `(fe₁,e₁) = (fe₂,e₂) = −h`, `(fe₁,e₂) = 0`, `(fξ,e₁) = (V,e₂)`,
/// `(fξ,e₂) = −(V,e₁)`, `(fξ,ξ) = h`.
pub fn rebuild_f<T: Real>(d: &PointFields<T>) -> Mat3<T> {
    let vf = d.vec_in_frame(&d.v);
    let z = T::zero();
    let fr: Mat3<T> = [[-d.h, z, vf[1]], [z, -d.h, -vf[0]], [vf[1], -vf[0], d.h]];
    let low: [Vec3<T>; 3] = d.frame.map(|e| mat_vec(&d.g, &e));
    std::array::from_fn(|a| {
        std::array::from_fn(|c| {
            let mut s = z;
            for i in 0..3 {
                for j in 0..3 {
                    s = s + fr[i][j] * d.frame[i][a] * low[j][c];
                }
            }
            s
        })
    })
}

/// Named residuals of the compatibility equations for abstract data at `u`.
///
/// Rank is reported as `|rank⁺ − 2| + |rank⁻ − 2|` of `(F ± Id)/2`.
pub fn theorem_converse_check<P: FieldProvider>(data: &P, u: [f64; 3]) -> Result<Vec<(&'static str, f64)>> {
    let jet = field_jet(data, u)?;
    let d = &jet.at;
    let riemann = riemann_tensor(data, u)?;
    let (c1, c2) = (data.product().c1(), data.product().c2());
    let rebuilt = rebuild_f(d);
    let recipe = d.in_frame(&rebuilt);
    let given = d.in_frame(&d.f);
    let mut f_defect = 0.0_f64;
    for i in 0..3 {
        for j in 0..3 {
            f_defect = f_defect.max((recipe[i][j] - given[i][j]).abs());
        }
    }
    let mut out = vec![("f=recipe(V,h,chi)", f_defect)];
    out.extend(lemma_f(d));
    out.extend(structure_equation_residuals(&jet));
    out.push(("gauss", gauss_max(d, &riemann, c1, c2)));
    out.push(("codazzi", codazzi_max(&jet, c1, c2)));
    let (rp, rm) = rank_of_halves(&product_structure_matrix(d));
    out.push(("rank-2", (rp as f64 - 2.0).abs() + (rm as f64 - 2.0).abs()));
    Ok(out)
}
