//! Forward-mode automatic differentiation.
//!
//! [`Dual`] carries one infinitesimal direction, [`HyperDual`] carries two
//! plus their mixed product, so `f(x + e1 + e2)` exposes `f`, both first
//! derivatives and the mixed second derivative exactly. Both types are
//! generic over any [`Real`], which lets them nest: `HyperDual<Dual<f64>>`
//! gives third derivatives of the embedding without a single finite
//! difference.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar field the geometry pipeline is generic over.
pub trait Real:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(x: f64) -> Self;
    /// Real (primal) part, stripping every infinitesimal.
    fn re(self) -> f64;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn tanh(self) -> Self;
    fn powi(self, n: i32) -> Self;

    fn recip(self) -> Self {
        Self::cst(1.0) / self
    }
    fn zero() -> Self {
        Self::cst(0.0)
    }
    fn one() -> Self {
        Self::cst(1.0)
    }
}

impl Real for f64 {
    fn cst(x: f64) -> Self {
        x
    }
    fn re(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn tanh(self) -> Self {
        f64::tanh(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
}

/// Value, first and second derivative of a scalar function at `x`.
fn taylor2<T: Real>(x: T, op: Elementary) -> (T, T, T) {
    match op {
        Elementary::Sqrt => {
            let s = x.sqrt();
            (s, s.recip() * 0.5, -(s * x).recip() * 0.25)
        }
        Elementary::Sin => {
            let (s, c) = (x.sin(), x.cos());
            (s, c, -s)
        }
        Elementary::Cos => {
            let (s, c) = (x.sin(), x.cos());
            (c, -s, -c)
        }
        Elementary::Exp => {
            let e = x.exp();
            (e, e, e)
        }
        Elementary::Ln => {
            let r = x.recip();
            (x.ln(), r, -(r * r))
        }
        Elementary::Tanh => {
            let t = x.tanh();
            let d = -(t * t) + 1.0;
            (t, d, d * t * -2.0)
        }
        Elementary::Powi(n) => match n {
            0 => (T::one(), T::zero(), T::zero()),
            1 => (x, T::one(), T::zero()),
            2 => (x * x, x * 2.0, T::cst(2.0)),
            _ => (x.powi(n), x.powi(n - 1) * n as f64, x.powi(n - 2) * (n * (n - 1)) as f64),
        },
    }
}

#[derive(Clone, Copy)]
enum Elementary {
    Sqrt,
    Sin,
    Cos,
    Exp,
    Ln,
    Tanh,
    Powi(i32),
}

/// `re + eps·ε` with `ε² = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Real> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Dual { re, eps }
    }
    pub fn variable(re: T) -> Self {
        Dual { re, eps: T::one() }
    }
    fn apply(self, op: Elementary) -> Self {
        let (f0, f1, _) = taylor2(self.re, op);
        Dual { re: f0, eps: f1 * self.eps }
    }
}

/// `re + e1·ε₁ + e2·ε₂ + e12·ε₁ε₂` with `ε₁² = ε₂² = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperDual<T> {
    pub re: T,
    pub e1: T,
    pub e2: T,
    pub e12: T,
}

impl<T: Real> HyperDual<T> {
    pub fn new(re: T, e1: T, e2: T, e12: T) -> Self {
        HyperDual { re, e1, e2, e12 }
    }
    fn apply(self, op: Elementary) -> Self {
        let (f0, f1, f2) = taylor2(self.re, op);
        HyperDual { re: f0, e1: f1 * self.e1, e2: f1 * self.e2, e12: f1 * self.e12 + f2 * self.e1 * self.e2 }
    }
}

macro_rules! real_functions {
    () => {
        fn sqrt(self) -> Self {
            self.apply(Elementary::Sqrt)
        }
        fn sin(self) -> Self {
            self.apply(Elementary::Sin)
        }
        fn cos(self) -> Self {
            self.apply(Elementary::Cos)
        }
        fn exp(self) -> Self {
            self.apply(Elementary::Exp)
        }
        fn ln(self) -> Self {
            self.apply(Elementary::Ln)
        }
        fn tanh(self) -> Self {
            self.apply(Elementary::Tanh)
        }
        fn powi(self, n: i32) -> Self {
            self.apply(Elementary::Powi(n))
        }
    };
}

impl<T: Real> Real for Dual<T> {
    fn cst(x: f64) -> Self {
        Dual { re: T::cst(x), eps: T::zero() }
    }
    fn re(self) -> f64 {
        self.re.re()
    }
    real_functions!();
}

impl<T: Real> Real for HyperDual<T> {
    fn cst(x: f64) -> Self {
        HyperDual { re: T::cst(x), e1: T::zero(), e2: T::zero(), e12: T::zero() }
    }
    fn re(self) -> f64 {
        self.re.re()
    }
    real_functions!();
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { re: self.re + o.re, eps: self.eps + o.eps }
    }
}
impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { re: self.re - o.re, eps: self.eps - o.eps }
    }
}
impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual { re: self.re * o.re, eps: self.re * o.eps + self.eps * o.re }
    }
}
impl<T: Real> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = o.re.recip();
        let q = self.re * inv;
        Dual { re: q, eps: (self.eps - q * o.eps) * inv }
    }
}
impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { re: -self.re, eps: -self.eps }
    }
}
impl<T: Real> Add<f64> for Dual<T> {
    type Output = Self;
    fn add(self, o: f64) -> Self {
        Dual { re: self.re + o, eps: self.eps }
    }
}
impl<T: Real> Sub<f64> for Dual<T> {
    type Output = Self;
    fn sub(self, o: f64) -> Self {
        Dual { re: self.re - o, eps: self.eps }
    }
}
impl<T: Real> Mul<f64> for Dual<T> {
    type Output = Self;
    fn mul(self, o: f64) -> Self {
        Dual { re: self.re * o, eps: self.eps * o }
    }
}
impl<T: Real> Div<f64> for Dual<T> {
    type Output = Self;
    fn div(self, o: f64) -> Self {
        Dual { re: self.re / o, eps: self.eps / o }
    }
}

impl<T: Real> Add for HyperDual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        HyperDual { re: self.re + o.re, e1: self.e1 + o.e1, e2: self.e2 + o.e2, e12: self.e12 + o.e12 }
    }
}
impl<T: Real> Sub for HyperDual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        HyperDual { re: self.re - o.re, e1: self.e1 - o.e1, e2: self.e2 - o.e2, e12: self.e12 - o.e12 }
    }
}
impl<T: Real> Mul for HyperDual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        HyperDual {
            re: self.re * o.re,
            e1: self.re * o.e1 + self.e1 * o.re,
            e2: self.re * o.e2 + self.e2 * o.re,
            e12: self.re * o.e12 + self.e1 * o.e2 + self.e2 * o.e1 + self.e12 * o.re,
        }
    }
}
impl<T: Real> Div for HyperDual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = o.re.recip();
        // 1/o as a hyper-dual: f = 1/x, f' = -1/x², f'' = 2/x³
        let recip = HyperDual {
            re: inv,
            e1: -(inv * inv) * o.e1,
            e2: -(inv * inv) * o.e2,
            e12: -(inv * inv) * o.e12 + inv * inv * inv * o.e1 * o.e2 * 2.0,
        };
        self * recip
    }
}
impl<T: Real> Neg for HyperDual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        HyperDual { re: -self.re, e1: -self.e1, e2: -self.e2, e12: -self.e12 }
    }
}
impl<T: Real> Add<f64> for HyperDual<T> {
    type Output = Self;
    fn add(self, o: f64) -> Self {
        HyperDual { re: self.re + o, ..self }
    }
}
impl<T: Real> Sub<f64> for HyperDual<T> {
    type Output = Self;
    fn sub(self, o: f64) -> Self {
        HyperDual { re: self.re - o, ..self }
    }
}
impl<T: Real> Mul<f64> for HyperDual<T> {
    type Output = Self;
    fn mul(self, o: f64) -> Self {
        HyperDual { re: self.re * o, e1: self.e1 * o, e2: self.e2 * o, e12: self.e12 * o }
    }
}
impl<T: Real> Div<f64> for HyperDual<T> {
    type Output = Self;
    fn div(self, o: f64) -> Self {
        self * (1.0 / o)
    }
}

/// Gradient of a scalar function of three variables, one dual pass per direction.
pub fn gradient3<F>(f: F, x: [f64; 3]) -> (f64, [f64; 3])
where
    F: Fn([Dual<f64>; 3]) -> Dual<f64>,
{
    let mut grad = [0.0; 3];
    let mut value = 0.0;
    for (k, g) in grad.iter_mut().enumerate() {
        let args = seed_dual(x, k);
        let out = f(args);
        value = out.re;
        *g = out.eps;
    }
    (value, grad)
}

/// Lift a point into `Dual` with the infinitesimal along coordinate `k`.
pub fn seed_dual<T: Real>(x: [T; 3], k: usize) -> [Dual<T>; 3] {
    let mut out = x.map(|v| Dual::new(v, T::zero()));
    out[k].eps = T::one();
    out
}

/// Lift a point into `HyperDual` with ε₁ along `i` and ε₂ along `j`.
pub fn seed_hyper<T: Real>(x: [T; 3], i: usize, j: usize) -> [HyperDual<T>; 3] {
    let mut out = x.map(|v| HyperDual::new(v, T::zero(), T::zero(), T::zero()));
    out[i].e1 = T::one();
    out[j].e2 = T::one();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central(f: impl Fn(f64) -> f64, x: f64) -> f64 {
        let h = 1e-5;
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    fn sample<T: Real>(x: T) -> T {
        (x.sin() * x.exp() + x.powi(3)).sqrt() / (x.cos() + 2.0) + x.ln() * x.tanh()
    }

    #[test]
    fn dual_matches_central_difference() {
        for &x in &[0.3, 0.9, 1.7] {
            let d = sample(Dual::variable(x));
            assert!((d.re - sample(x)).abs() < 1e-15);
            assert!((d.eps - central(sample, x)).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn hyperdual_second_derivative() {
        for &x in &[0.4, 1.1, 2.3] {
            let h = sample(HyperDual::new(x, 1.0, 1.0, 0.0));
            let d1 = |y: f64| sample(Dual::variable(y)).eps;
            assert!((h.e1 - d1(x)).abs() < 1e-13);
            assert!((h.e12 - central(d1, x)).abs() < 1e-7, "x={x}");
        }
    }

    #[test]
    fn nested_gives_third_derivative() {
        // d³/dx³ of x^5 = 60 x²
        let x = 1.3;
        let v = HyperDual::new(Dual::variable(x), Dual::cst(1.0), Dual::cst(1.0), Dual::cst(0.0));
        let out = v.powi(5);
        assert!((out.e12.eps - 60.0 * x * x).abs() < 1e-10);
    }

    #[test]
    fn mixed_partials_by_seeding() {
        let x = [0.3, -0.7, 1.2];
        let f = |u: [HyperDual<f64>; 3]| u[0] * u[1] * u[1] + u[2].sin() * u[0];
        let h = f(seed_hyper(x, 0, 1));
        assert!((h.e12 - 2.0 * x[1]).abs() < 1e-14);
        let h = f(seed_hyper(x, 2, 0));
        assert!((h.e12 - x[2].cos()).abs() < 1e-14);
    }
}
