//! The product M₁(c₁) × M₂(c₂): parallel spinors of both spin^c structures and their curvature forms.

use spinlab::space_forms::{ProductModel, SpincStructure, TangentVector};

fn main() -> spinlab::Result<()> {
    let product = ProductModel::new(1.0, -2.0);
    let p = [0.2, -0.1, 0.3, 0.05];
    product.check(&p)?;

    for st in [SpincStructure::S1, SpincStructure::S2] {
        let mut worst = 0.0_f64;
        for k in 0..4 {
            let mut x = [0.0; 4];
            x[k] = 1.0;
            worst = worst.max(product.parallel_residual(&st, &p, &x));
        }
        println!("structure {} (chirality {:+}): |∇ψ| <= {worst:.1e}", st.tag, st.chirality());

        let v = |k: usize| {
            let mut f = [0.0; 4];
            f[k] = 1.0;
            TangentVector { base: p, frame: f }
        };
        let o12 = product.curvature_form_omega(&st, &v(0), &v(1))?;
        let o34 = product.curvature_form_omega(&st, &v(2), &v(3))?;
        println!("  Ω(E1,E2) = {o12:+.3}, Ω(E3,E4) = {o34:+.3}");
        println!("  holonomy consistency {:.1e}", product.auxiliary_curvature_consistency(&st, &p)?);
    }
    Ok(())
}
