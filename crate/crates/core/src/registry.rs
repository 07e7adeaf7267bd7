//! The named checks a scenario can request, with their anchors and default tolerances.

use serde::{Deserialize, Serialize};

/// Tolerance classes: exact identities, first-derivative quantities, curvature.
pub const TOL_ALGEBRAIC: f64 = 1e-12;
pub const TOL_FIRST_DERIVATIVE: f64 = 1e-8;
pub const TOL_CURVATURE: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TolClass {
    Algebraic,
    FirstDerivative,
    Curvature,
    Custom,
}

#[derive(Clone, Copy, Debug)]
pub struct CheckSpec {
    pub id: &'static str,
    pub anchor: &'static str,
    pub class: TolClass,
    pub tolerance: f64,
}

const fn spec(id: &'static str, anchor: &'static str, class: TolClass, tolerance: f64) -> CheckSpec {
    CheckSpec { id, anchor, class, tolerance }
}

use TolClass::*;

pub const CHECKS: &[CheckSpec] = &[
    spec("immersion.invariants", "unit normal, symmetric shape operator, xi = -J(nu), adapted frame", FirstDerivative, 1e-9),
    spec("product.lemma-f", "f symmetric, f^2 + V(x)V = Id, fV = -hV, h^2 + |V|^2 = 1", FirstDerivative, 1e-9),
    spec("product.jf-identities", "ten identities relating (f, V, h) to (chi, xi, eta)", FirstDerivative, 1e-9),
    spec("projections", "factor projections of tangent and normal vectors", FirstDerivative, 1e-9),
    spec("rank", "(F + Id)/2 and (F - Id)/2 have rank 2", Custom, 0.5),
    spec("gauss", "Gauss equation in M1(c1) x M2(c2)", Curvature, TOL_CURVATURE),
    spec("codazzi", "Codazzi equation in M1(c1) x M2(c2)", Curvature, TOL_CURVATURE),
    spec("structure-derivatives", "covariant derivatives of f, V and h", Curvature, TOL_CURVATURE),
    spec("nabla-xi", "nabla_X xi = chi E X", Custom, 1e-6),
    spec(
        "spinc.parallel-ambient",
        "canonical and anti-canonical spinors are parallel in the product",
        FirstDerivative,
        TOL_FIRST_DERIVATIVE,
    ),
    spec("spinc.clifford-induced", "induced Clifford multiplication gamma(X) = X.nu", Algebraic, 1e-10),
    spec("spinc.killing", "restricted spinor is a generalized Killing spinor for E", Custom, 1e-6),
    spec(
        "spinc.algebraic",
        "gamma1(xi)phi1 = -i phi1 and gamma2(V)phi2 = -i gamma2(xi)phi2 + h phi2",
        FirstDerivative,
        TOL_FIRST_DERIVATIVE,
    ),
    spec("spinc.ide", "V and h expressed through phi2", FirstDerivative, TOL_FIRST_DERIVATIVE),
    spec("spinc.omega", "auxiliary curvature forms Omega1, Omega2 in the frame (e1, e2, xi)", Custom, 1e-6),
    spec("spinc.projection-lemmas", "factor-projection identities of the parallel spinors", Custom, 1e-10),
    spec("spinc.restriction-2form", "restriction of Omega^N acting on spinors", FirstDerivative, TOL_FIRST_DERIVATIVE),
    spec("dirac", "D1 phi1 = (3/2) H phi1 and D2 phi2 = -(3/2) H phi2", Curvature, TOL_CURVATURE),
    spec("energy-momentum", "energy-momentum tensor of the restricted spinor against E", Curvature, TOL_CURVATURE),
    spec("system1", "twelve scalar equations of the first compatibility system", Curvature, TOL_CURVATURE),
    spec("system2", "twelve scalar equations of the second compatibility system", Curvature, TOL_CURVATURE),
    spec("gauss-iff-codazzi", "under either system, Gauss holds iff Codazzi holds", Curvature, TOL_CURVATURE),
    spec("umbilical", "umbilic points: 4|dH| = |V||c1 - c2|, dH(xi) = 0", Curvature, TOL_CURVATURE),
    spec("auxiliary-curvature", "holonomy of the auxiliary connection matches Omega^N", Custom, 1e-6),
    spec("converse", "harvested data satisfy the compatibility equations and rank condition", Curvature, TOL_CURVATURE),
];

pub fn lookup(id: &str) -> Option<&'static CheckSpec> {
    CHECKS.iter().find(|c| c.id == id)
}
