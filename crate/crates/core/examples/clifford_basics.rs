//! Gamma matrices in dimensions 2 to 4, the volume element and the Kähler form action.

use nalgebra::{DMatrix, Matrix3};
use spinlab::clifford::{build_clifford, identity, kahler_action, skew_hermitian_spectrum, verify_lemma_aij};

fn main() -> spinlab::Result<()> {
    for m in 2..=4 {
        let model = build_clifford(m)?;
        println!("Cl({m}): spinor dim {}, anticommutation residual {:.1e}", model.spinor_dim(), model.anticommutation_residual());
    }

    let cl3 = build_clifford(3)?;
    println!("volume element in dim 3 acts as identity: {:.1e}", (&cl3.volume - identity(2)).norm());

    let mut j = DMatrix::zeros(4, 4);
    j[(1, 0)] = 1.0;
    j[(0, 1)] = -1.0;
    j[(3, 2)] = 1.0;
    j[(2, 3)] = -1.0;
    let spec: Vec<_> = skew_hermitian_spectrum(&kahler_action(&build_clifford(4)?, &j)?).iter().map(|z| z.im).collect();
    println!("Kähler form on Σ(R⁴) has eigenvalues {spec:?} (times i)");

    let e = Matrix3::new(1.0, 0.3, -0.2, 0.3, -0.5, 0.7, -0.2, 0.7, 2.0);
    println!("Σ a_ij e_i·e_j = -tr(E) holds to {:.1e}", verify_lemma_aij(&e, &cl3)?);
    Ok(())
}
