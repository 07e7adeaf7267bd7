//! The two frame systems of 12 equations, on a genuine hypersurface and on data with a perturbed E.

use spinlab::compat::{gauss_iff_codazzi, system_residuals, AbstractData, CoVanishing, Corruption};
use spinlab::hypersurface::{field_jet, riemann_tensor, FieldProvider, Hypersurface, Immersion};
use spinlab::runner::sample_points;
use spinlab::space_forms::ProductModel;

fn report<P: FieldProvider>(label: &str, p: &P) -> spinlab::Result<()> {
    let (c1, c2) = (p.product().c1(), p.product().c2());
    let pts = sample_points(p.domain(), 12, 5);
    let u = pts[0];
    let jet = field_jet(p, u)?;
    let r = riemann_tensor(p, u)?;
    println!("{label}");
    for tag in [1, 2] {
        let s = system_residuals(tag, &jet, &r, c1, c2);
        let worst = s.residuals.iter().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
        println!("  system {tag}: max {:.1e} ({})", s.max, worst.0);
        let ens = pts
            .iter()
            .map(|&u| Ok(CoVanishing::at(tag, &field_jet(p, u)?, &riemann_tensor(p, u)?, c1, c2, 0.0)))
            .collect::<spinlab::Result<Vec<_>>>()?;
        let v = gauss_iff_codazzi(&ens, 1e-5);
        let g = ens.iter().fold(0.0_f64, |m, s| m.max(s.gauss));
        let c = ens.iter().fold(0.0_f64, |m, s| m.max(s.codazzi));
        println!("  gauss max {g:.1e}, codazzi max {c:.1e}");
        println!("  gauss <=> codazzi: {} confirmed, {} skipped, {} counterexamples", v.confirmed, v.skipped, v.counterexamples.len());
    }
    Ok(())
}

fn main() -> spinlab::Result<()> {
    let imm = Immersion::new(Hypersurface::graph("0.2*u1*u3 - 0.1*u2^2")?, ProductModel::new(1.0, 1.0));
    report("graph in S²×S²", &imm)?;
    report("same data, E perturbed", &AbstractData::corrupted(&imm, Corruption::PerturbE { eps: 0.1, w: [1.0, -0.5, 0.3] }))
}
