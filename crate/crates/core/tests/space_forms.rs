#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;

use spinlab::linalg::Vec4;
use spinlab::space_forms::*;

fn f_matrix() -> [[f64; 4]; 4] {
    let mut f = [[0.0; 4]; 4];
    for (i, row) in f.iter_mut().enumerate() {
        row[i] = if i < 2 { 1.0 } else { -1.0 };
    }
    f
}

fn j_matrix() -> [[f64; 4]; 4] {
    let mut j = [[0.0; 4]; 4];
    for e in 0..4 {
        let mut v = [0.0; 4];
        v[e] = 1.0;
        let jv = ProductModel::apply_j(&v);
        for (a, row) in j.iter_mut().enumerate() {
            row[e] = jv[a];
        }
    }
    j
}

fn commutator(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..4 {
        for k in 0..4 {
            let s: f64 = (0..4).map(|j| a[i][j] * b[j][k] - b[i][j] * a[j][k]).sum();
            worst = worst.max(s.abs());
        }
    }
    worst
}

#[test]
fn product_structure_invariants() {
    let f = f_matrix();
    let mut trace = 0.0;
    for i in 0..4 {
        trace += f[i][i];
        let mut v = [0.0; 4];
        v[i] = 1.0;
        assert_eq!(ProductModel::apply_f(&ProductModel::apply_f(&v)), v);
        let jj = ProductModel::apply_j(&ProductModel::apply_j(&v));
        assert_eq!(jj, v.map(|x| -x));
        assert_eq!(ProductModel::apply_j(&ProductModel::apply_f(&v)), ProductModel::apply_f(&ProductModel::apply_j(&v)));
        let (p1, p2) = (ProductModel::pi1(&v), ProductModel::pi2(&v));
        for k in 0..4 {
            assert_eq!(p1[k] + p2[k], v[k]);
        }
    }
    assert_eq!(trace, 0.0);
}

fn base_point() -> impl Strategy<Value = Vec4<f64>> {
    proptest::array::uniform4(-0.8..0.8f64)
}

proptest! {
    #[test]
    fn f_and_j_are_parallel(p in base_point(), x in proptest::array::uniform4(-2.0..2.0f64), c1 in -2.0..2.0f64, c2 in -2.0..2.0f64) {
        let product = ProductModel::new(c1, c2);
        prop_assume!(product.check(&p).is_ok());
        let w = product.frame_connection_matrix(&p, &x);
        prop_assert!(commutator(&w, &f_matrix()) < 1e-12);
        prop_assert!(commutator(&w, &j_matrix()) < 1e-12);
        // Levi-Civita connection forms are skew.
        for a in 0..4 {
            for b in 0..4 {
                prop_assert!((w[a][b] + w[b][a]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn canonical_spinors_are_parallel(p in base_point(), x in proptest::array::uniform4(-2.0..2.0f64), c1 in -2.0..2.0f64, c2 in -2.0..2.0f64) {
        let product = ProductModel::new(c1, c2);
        prop_assume!(product.check(&p).is_ok());
        for st in [SpincStructure::S1, SpincStructure::S2, SpincStructure::S2_FLIPPED] {
            prop_assert!(product.parallel_residual(&st, &p, &x) < 1e-12);
        }
    }

    #[test]
    fn curvature_form_is_antisymmetric(x in proptest::array::uniform4(-2.0..2.0f64), y in proptest::array::uniform4(-2.0..2.0f64)) {
        let product = ProductModel::new(1.0, -0.5);
        for st in [SpincStructure::S1, SpincStructure::S2] {
            let a = product.curvature_form_frame(&st, &x, &y);
            let b = product.curvature_form_frame(&st, &y, &x);
            prop_assert!((a + b).abs() < 1e-12);
        }
    }
}

#[test]
fn curvature_forms_on_frame_planes() {
    let product = ProductModel::new(2.0, -3.0);
    let e = |k: usize| {
        let mut v = [0.0; 4];
        v[k] = 1.0;
        v
    };
    // Canonical factors contribute −ρ, anti-canonical +ρ, with ρ(ε₁, ε₂) = c.
    assert_eq!(product.curvature_form_frame(&SpincStructure::S1, &e(0), &e(1)), -2.0);
    assert_eq!(product.curvature_form_frame(&SpincStructure::S1, &e(2), &e(3)), 3.0);
    assert_eq!(product.curvature_form_frame(&SpincStructure::S2, &e(0), &e(1)), 2.0);
    assert_eq!(product.curvature_form_frame(&SpincStructure::S2, &e(2), &e(3)), 3.0);
    assert_eq!(product.curvature_form_frame(&SpincStructure::S1, &e(0), &e(2)), 0.0);
}

#[test]
fn auxiliary_holonomy_matches_curvature_form() {
    for (c1, c2) in [(1.0, 4.0), (-1.0, 0.5), (0.0, -2.0)] {
        let product = ProductModel::new(c1, c2);
        for p in [[0.1, -0.2, 0.05, 0.15], [0.3, 0.0, -0.1, -0.2]] {
            for st in [SpincStructure::S1, SpincStructure::S2] {
                assert!(product.auxiliary_curvature_consistency(&st, &p).unwrap() < 1e-6);
            }
        }
    }
}
