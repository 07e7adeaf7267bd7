#![allow(clippy::needless_range_loop)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinlab::compat::*;
use spinlab::hypersurface::*;
use spinlab::linalg::{mat_vec, sub};
use spinlab::runner::RunOptions;
use spinlab::scenario::{builtin_catalog, Scenario};
use spinlab::space_forms::ProductModel;

fn members() -> Vec<(Hypersurface, f64, f64)> {
    builtin_catalog().into_iter().map(|s| (s.hypersurface, s.c1, s.c2)).collect()
}

fn points(dom: [(f64, f64); 3], n: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| dom.map(|(a, b)| rng.gen_range(a..b))).collect()
}

fn sphere(r: f64) -> Hypersurface {
    Hypersurface::RoundSphere { r, patch: SpherePatch::Hopf }
}

#[test]
fn nabla_xi_equals_chi_e_on_catalog() {
    for (h, c1, c2) in members() {
        let imm = Immersion::new(h, ProductModel::new(c1, c2));
        for u in points(imm.domain(), 30, 3) {
            let jet = field_jet(&imm, u).unwrap();
            assert!(nabla_xi_check(&jet) < 1e-6, "{}", imm.label());
        }
    }
}

#[test]
fn nabla_xi_on_round_sphere_is_chi_over_r() {
    let r = 0.7;
    let imm = Immersion::new(sphere(r), ProductModel::new(0.0, 0.0));
    let jet = field_jet(&imm, [0.6, 0.2, -1.0]).unwrap();
    let d = &jet.at;
    for x in d.frame {
        let lhs = jet.nabla_vector(&x, |q| q.xi);
        let rhs = mat_vec(&d.chi, &x).map(|c| c / r);
        let diff = sub(&lhs, &rhs);
        assert!(d.inner(&diff, &diff).sqrt() < 1e-9);
    }
}

#[test]
fn flat_hyperplane_systems_vanish_identically() {
    let imm = Immersion::new(Hypersurface::FlatHyperplane, ProductModel::new(0.0, 0.0));
    let u = [0.1, -0.2, 0.3];
    let jet = field_jet(&imm, u).unwrap();
    let r = riemann_tensor(&imm, u).unwrap();
    for tag in [1, 2] {
        let s = system_residuals(tag, &jet, &r, 0.0, 0.0);
        assert_eq!(s.residuals.len(), 12);
        assert_eq!(s.max, 0.0);
    }
}

#[test]
fn systems_hold_on_catalog() {
    for (h, c1, c2) in members() {
        let imm = Immersion::new(h, ProductModel::new(c1, c2));
        for u in points(imm.domain(), 100, 11) {
            let jet = field_jet(&imm, u).unwrap();
            let r = riemann_tensor(&imm, u).unwrap();
            for tag in [1, 2] {
                let s = system_residuals(tag, &jet, &r, c1, c2);
                assert!(s.max < 1e-5, "{} system {tag}: {:?}", imm.label(), s.residuals);
            }
        }
    }
}

/// The quadratic terms as printed for equations 6 and 11 (before correction)
/// are inconsistent with the Gauss equation on genuine data.
#[test]
fn uncorrected_quadratic_terms_fail() {
    let imm = Immersion::new(sphere(1.0), ProductModel::new(0.0, 0.0));
    let u = [0.5, 0.3, 0.2];
    let jet = field_jet(&imm, u).unwrap();
    let t = FrameTensors::new(&jet, &riemann_tensor(&imm, u).unwrap(), 0.0, 0.0);
    let a = |i: usize, j: usize| t.a[i - 1][j - 1];
    let r = |i: usize, j: usize, k: usize, l: usize| t.r[i - 1][j - 1][k - 1][l - 1];
    let printed = r(3, 1, 1, 3) + r(3, 2, 2, 3) - (a(2, 2) * a(3, 3) - a(1, 1) * a(3, 3) + a(1, 3).powi(2) + a(2, 3).powi(2));
    assert!((printed - 2.0).abs() < 1e-6);
    assert!(system1(&t).max < 1e-9);

    let g = Hypersurface::graph("0.3*u1*u2 + 0.2*sin(u3) + 0.1*u1^2").unwrap();
    let imm = Immersion::new(g, ProductModel::new(1.0, 4.0));
    let u = [0.2, -0.1, 0.3];
    let jet = field_jet(&imm, u).unwrap();
    let t = FrameTensors::new(&jet, &riemann_tensor(&imm, u).unwrap(), 1.0, 4.0);
    let a = |i: usize, j: usize| t.a[i - 1][j - 1];
    let corrected = system1(&t).residuals[5].1;
    let printed = corrected - a(1, 3).powi(2) + a(2, 3).powi(2);
    assert!(corrected.abs() < 1e-9);
    assert!(printed.abs() > 1e-3);
}

#[test]
fn perturbed_shape_operator_breaks_a_system_equation() {
    let imm = Immersion::new(sphere(0.9), ProductModel::new(0.0, 0.0));
    let bad = AbstractData::corrupted(imm, Corruption::PerturbE { eps: 0.1, w: [1.0, 0.4, -0.7] });
    for u in points(bad.domain(), 10, 5) {
        let jet = field_jet(&bad, u).unwrap();
        let r = riemann_tensor(&bad, u).unwrap();
        for tag in [1, 2] {
            assert!(system_residuals(tag, &jet, &r, 0.0, 0.0).max > 1e-2);
        }
    }
}

fn ensemble<P: FieldProvider>(p: &P, tag: u8, n: usize) -> Vec<CoVanishing> {
    let (c1, c2) = (p.product().c1(), p.product().c2());
    points(p.domain(), n, 9)
        .into_iter()
        .map(|u| {
            let jet = field_jet(p, u).unwrap();
            let r = riemann_tensor(p, u).unwrap();
            let st = if tag == 1 { spinlab::space_forms::SpincStructure::S1 } else { spinlab::space_forms::SpincStructure::S2 };
            let (data, _) = spinlab::spinc::restrict_structure(p.product(), &jet, st);
            let om = spinlab::hypersurface::checks::max_residual(&spinlab::spinc::omega_formula_check(p.product(), &data));
            CoVanishing::at(tag, &jet, &r, c1, c2, om)
        })
        .collect()
}

#[test]
fn gauss_iff_codazzi_on_genuine_data() {
    for (h, c1, c2) in members() {
        let imm = Immersion::new(h, ProductModel::new(c1, c2));
        for tag in [1, 2] {
            let v = gauss_iff_codazzi(&ensemble(&imm, tag, 15), 1e-5);
            assert!(v.holds());
            assert_eq!(v.confirmed, 15, "{}", imm.label());
        }
    }
}

#[test]
fn perturbed_ensemble_breaks_gauss_and_codazzi_together() {
    let g = Hypersurface::graph("0.3*u1*u2 + 0.2*sin(u3) + 0.1*u1^2").unwrap();
    let imm = Immersion::new(g, ProductModel::new(1.0, 4.0));
    let bad = AbstractData::corrupted(imm, Corruption::PerturbE { eps: 0.1, w: [1.0, 0.4, -0.7] });
    for tag in [1, 2] {
        let ens = ensemble(&bad, tag, 15);
        for s in &ens {
            assert!(s.system > 1e-3 && s.gauss > 1e-3 && s.codazzi > 1e-3, "{s:?}");
        }
        let v = gauss_iff_codazzi(&ens, 1e-5);
        assert_eq!(v.skipped, 15);
        assert!(v.holds());
    }
}

#[test]
fn omega_hypothesis_failure_is_skipped() {
    let s = CoVanishing { system: 0.0, gauss: 0.0, codazzi: 1.0, omega_hypothesis: 0.5 };
    let v = gauss_iff_codazzi(&[s], 1e-5);
    assert_eq!((v.confirmed, v.skipped), (0, 1));
    assert!(v.holds());
    let s = CoVanishing { omega_hypothesis: 0.0, ..s };
    assert_eq!(gauss_iff_codazzi(&[s], 1e-5).counterexamples, vec![0]);
}

#[test]
fn forward_direction_holds_on_catalog() {
    for sc in builtin_catalog() {
        let rep = theorem_forward_check(&sc, RunOptions::default()).unwrap();
        assert!(rep.passed(), "{}", sc.name);
        assert_eq!(rep.checks.len(), FORWARD_CHECKS.len());
        let omega = rep.check("spinc.omega").unwrap();
        let spin = omega.notes.iter().any(|n| n.starts_with("spin case"));
        assert_eq!(spin, sc.c1 == 0.0 && sc.c2 == 0.0, "{}", sc.name);
    }
}

#[test]
fn reversing_orientation_consistently_is_a_symmetry() {
    let sc = Scenario::new("reoriented graph", 1.0, 4.0, Hypersurface::graph("0.3*u1*u2 + 0.2*sin(u3)").unwrap());
    let flipped = Immersion::new(Reoriented(sc.hypersurface.clone()), ProductModel::new(1.0, 4.0));
    let rep = theorem_forward_check_with(&flipped, &sc, RunOptions::default()).unwrap();
    assert!(rep.passed());
}

#[test]
fn mixing_orientations_breaks_the_algebraic_condition() {
    let g = Hypersurface::graph("0.3*u1*u2 + 0.2*sin(u3)").unwrap();
    let product = ProductModel::new(1.0, 4.0);
    let straight = Immersion::new(g.clone(), product.clone());
    let flipped = Immersion::new(Reoriented(g), product.clone());
    for u in points(straight.domain(), 10, 4) {
        let xi = field_jet(&straight, u).unwrap().at.xi;
        let jet = field_jet(&flipped, u).unwrap();
        let (data, field) = spinlab::spinc::restrict_structure(&product, &jet, spinlab::space_forms::SpincStructure::S1);
        let r = &data.gamma(&xi) * &field.phi + &field.phi * spinlab::clifford::I;
        assert!((r.norm() / field.norm - 2.0).abs() < 1e-9);
    }
}

#[test]
fn converse_round_trip_and_named_corruptions() {
    let cases = [
        (sphere(1.0), 0.0, 0.0),
        (sphere(0.8), 1.0, 4.0),
        (Hypersurface::graph("0.3*u1*u2 + 0.2*sin(u3) + 0.1*u1^2").unwrap(), 1.0, 4.0),
        (Hypersurface::graph("0.25*exp(u1)*cos(u2) - 0.15*u3^2").unwrap(), -1.0, 0.5),
    ];
    let corruptions = [
        Corruption::ScaleE { factor: 2.0 },
        Corruption::ShiftH { delta: 0.1 },
        Corruption::ScaleV { factor: 1.3 },
        Corruption::PerturbF { eps: 0.1, w: [1.0, 0.5, -0.3] },
    ];
    for (h, c1, c2) in cases {
        let imm = Immersion::new(h, ProductModel::new(c1, c2));
        for u in points(imm.domain(), 5, 21) {
            let clean = theorem_converse_check(&AbstractData::harvest(&imm), u).unwrap();
            for (name, v) in &clean {
                let tol = if *name == "f=recipe(V,h,chi)" { 1e-9 } else { 1e-5 };
                assert!(*v < tol, "{} {name} = {v}", imm.label());
            }
            for c in corruptions {
                let r = theorem_converse_check(&AbstractData::corrupted(&imm, c), u).unwrap();
                let hit = r.iter().find(|x| x.0 == c.expected_failure()).unwrap().1;
                assert!(hit > 1e-3, "{} {c:?}: {hit}", imm.label());
            }
        }
    }
}

#[test]
fn rebuilt_f_matches_on_sphere() {
    let imm = Immersion::new(sphere(1.3), ProductModel::new(0.0, 0.0));
    let d = induced_data(&imm.chart, &imm.product, [0.4, 0.1, 2.0]).unwrap();
    let rf = rebuild_f(&d);
    for i in 0..3 {
        for j in 0..3 {
            assert!((rf[i][j] - d.f[i][j]).abs() < 1e-9);
        }
    }
}

#[test]
fn umbilical_identity_trivial_cases() {
    for (h, c1, c2) in [(sphere(0.7), 0.0, 0.0), (Hypersurface::SliceGeodesic { factor: SliceFactor::First }, 1.0, 4.0)] {
        let imm = Immersion::new(h, ProductModel::new(c1, c2));
        for u in points(imm.domain(), 10, 2) {
            match umbilical_mean_v(&field_jet(&imm, u).unwrap(), c1, c2) {
                UmbilicalOutcome::Evaluated { dh_xi, dh_frame, norm_identity } => {
                    assert!(dh_xi < 1e-12 && dh_frame < 1e-12 && norm_identity < 1e-12);
                }
                other => panic!("{other:?}"),
            }
        }
    }
}

#[test]
fn umbilic_scan_of_graph_family_is_consistent() {
    let mut found = 0;
    for k in [0.0, 0.1, 0.3] {
        let g = Hypersurface::graph(&format!("{k}*u1*u2 + 0.1*u3^2")).unwrap();
        let imm = Immersion::new(g, ProductModel::new(1.0, 0.0));
        for u in spinlab::runner::grid_points(imm.domain(), 5) {
            if let UmbilicalOutcome::Evaluated { dh_xi, dh_frame, norm_identity } = umbilical_mean_v(&field_jet(&imm, u).unwrap(), 1.0, 0.0)
            {
                found += 1;
                assert!(dh_xi < 1e-6 && dh_frame < 1e-5 && norm_identity < 1e-5);
            }
        }
    }
    // Non-constant mean curvature rules out umbilic points on these graphs.
    assert_eq!(found, 0);
}
