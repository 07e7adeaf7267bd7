//! Restrict the parallel spinors to a hypersurface and check the Killing-type equation, Dirac eigenvalue and Q.

use spinlab::hypersurface::checks::max_residual;
use spinlab::hypersurface::{field_jet, Hypersurface, Immersion, SpherePatch};
use spinlab::space_forms::{ProductModel, SpincStructure};
use spinlab::spinc::{algebraic_conditions, dirac_and_energy_momentum, killing_max, omega_formula_check, restrict_structure};

fn main() -> spinlab::Result<()> {
    let product = ProductModel::new(0.0, 0.0);
    let imm = Immersion::new(Hypersurface::RoundSphere { r: 0.8, patch: SpherePatch::Hopf }, product.clone());
    let jet = field_jet(&imm, [0.4, 0.3, 1.1])?;
    println!("H = {:.6}", jet.at.mean_curvature());

    for st in [SpincStructure::S1, SpincStructure::S2] {
        let (data, field) = restrict_structure(&product, &jet, st);
        let dirac = dirac_and_energy_momentum(&data, &field)?;
        println!("structure {}", st.tag);
        println!(
            "  killing {:.1e}, algebraic {:.1e}, Ω {:.1e}",
            killing_max(&data, &field),
            max_residual(&algebraic_conditions(&data, &field)),
            max_residual(&omega_formula_check(&product, &data))
        );
        println!("  Dirac eigen-equation {:.1e}", dirac.dirac_residual);
        println!("  |Q ∓ E/2| = {:.1e}, |Q - E| = {:.3}, |Q + E| = {:.3}", dirac.q_half_residual, dirac.q_minus_e, dirac.q_plus_e);
    }
    Ok(())
}
