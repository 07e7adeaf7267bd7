//! Harvest (g, E, V, h) from an immersion, run the converse check, then corrupt one field at a time.

use spinlab::compat::{theorem_converse_check, AbstractData, Corruption};
use spinlab::hypersurface::{Hypersurface, Immersion};
use spinlab::space_forms::ProductModel;

fn main() -> spinlab::Result<()> {
    let imm = Immersion::new(Hypersurface::graph("0.25*u1*u2 + 0.1*u3^2 - 0.05*u2^3")?, ProductModel::new(1.0, -1.0));
    let u = [0.1, 0.2, -0.1];

    let clean = theorem_converse_check(&AbstractData::harvest(&imm), u)?;
    let worst = clean.iter().fold(0.0_f64, |m, (_, v)| m.max(*v));
    println!("harvested data: every check <= {worst:.1e}");

    for c in [
        Corruption::ScaleE { factor: 1.5 },
        Corruption::ShiftH { delta: 0.05 },
        Corruption::ScaleV { factor: 1.2 },
        Corruption::PerturbF { eps: 0.05, w: [0.3, -1.0, 0.2] },
    ] {
        let r = theorem_converse_check(&AbstractData::corrupted(&imm, c), u)?;
        let hit = r.iter().find(|(n, _)| *n == c.expected_failure()).map(|(_, v)| *v).unwrap_or(0.0);
        println!("{c:?}: {} = {hit:.2e}", c.expected_failure());
    }
    Ok(())
}
