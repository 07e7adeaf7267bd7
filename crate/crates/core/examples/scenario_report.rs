//! Run a scenario through the full check registry and print the text report; then sweep the built-in catalog.

use spinlab::hypersurface::Hypersurface;
use spinlab::report::{render, Format};
use spinlab::runner::{exit_code, run_catalog, run_scenario, RunOptions};
use spinlab::scenario::Scenario;
use spinlab::space_forms::StructurePairing;

fn main() -> spinlab::Result<()> {
    let mut sc = Scenario::new("tube in S2xR2", 1.0, 0.0, Hypersurface::SphereCircleTube { a: 0.5 });
    sc.samples = 8;
    let opts = RunOptions::from_env()?;
    let report = run_scenario(&sc, opts)?;
    print!("{}", render(&report, Format::Text)?);

    let all = run_catalog(opts, StructurePairing::AntiFirst)?;
    for r in &all {
        println!("{:<32} {:?} ({:.0} ms)", r.scenario.name, r.verdict, r.runtime_ms);
    }
    println!("exit code would be {}", exit_code(&all));
    Ok(())
}
