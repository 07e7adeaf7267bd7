//! Induced structure (E, X, f, V, h) on a graph hypersurface and the immersion equations it satisfies.

use spinlab::hypersurface::checks::{codazzi_max, gauss_max, lemma_f, max_residual, structure_equation_residuals};
use spinlab::hypersurface::{field_jet, riemann_tensor, Hypersurface, Immersion};
use spinlab::space_forms::ProductModel;

fn main() -> spinlab::Result<()> {
    let (c1, c2) = (1.0, -1.0);
    let chart = Hypersurface::graph("0.3*u1*u2 - 0.2*u3^2 + 0.1*sin(u1)")?;
    let imm = Immersion::new(chart, ProductModel::new(c1, c2));
    let u = [0.1, -0.2, 0.15];

    let jet = field_jet(&imm, u)?;
    let d = &jet.at;
    println!("h = {:+.6}, V = {:?}", d.h, d.v);
    println!("mean curvature H = {:+.6}", d.mean_curvature());
    println!("h² + |V|² = {:.15}", d.h * d.h + d.inner(&d.v, &d.v));
    println!("algebraic identities on f: {:.1e}", max_residual(&lemma_f(d)));
    println!("structure equations:       {:.1e}", max_residual(&structure_equation_residuals(&jet)));

    let r = riemann_tensor(&imm, u)?;
    println!("Gauss:   {:.1e}", gauss_max(d, &r, c1, c2));
    println!("Codazzi: {:.1e}", codazzi_max(&jet, c1, c2));
    Ok(())
}
