//! Umbilic detection and the mean-curvature / V relations on umbilic points.

use spinlab::compat::{umbilical_mean_v, UmbilicalOutcome};
use spinlab::hypersurface::{field_jet, FieldProvider, Hypersurface, Immersion, SliceFactor, SpherePatch};
use spinlab::runner::grid_points;
use spinlab::space_forms::ProductModel;

fn main() -> spinlab::Result<()> {
    let cases = [
        ("round sphere in R⁴", Hypersurface::RoundSphere { r: 0.7, patch: SpherePatch::Hopf }, 0.0, 0.0),
        ("slice S²×γ in S²×H²", Hypersurface::SliceGeodesic { factor: SliceFactor::First }, 1.0, -1.0),
        ("graph in S²×R²", Hypersurface::graph("0.2*u1*u2 + 0.1*u3^2")?, 1.0, 0.0),
    ];
    for (label, h, c1, c2) in cases {
        let imm = Immersion::new(h, ProductModel::new(c1, c2));
        let (mut found, mut worst, mut scanned) = (0, 0.0_f64, 0);
        for u in grid_points(imm.domain(), 4) {
            scanned += 1;
            if let UmbilicalOutcome::Evaluated { dh_xi, dh_frame, norm_identity } = umbilical_mean_v(&field_jet(&imm, u)?, c1, c2) {
                found += 1;
                worst = worst.max(dh_xi).max(dh_frame).max(norm_identity);
            }
        }
        println!("{label}: {found}/{scanned} umbilic, max residual {worst:.1e}");
    }
    Ok(())
}
