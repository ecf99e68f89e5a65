//! Floating types usable by the analytic evaluators: `f64` and IEEE binary128.

use std::fmt::{Debug, Display};

use num_rational::BigRational;
use f128::f128;
use num_traits::{Float, FloatConst, ToPrimitive};

use crate::error::{Error, Result};

pub trait Real: Float + Debug + Display + Send + Sync + 'static {
    /// Unit roundoff.
    const EPS: f64;
    /// Argument above which the Stirling series alone reaches `EPS`.
    const STIRLING_FROM: f64;

    fn of(x: f64) -> Self;
    fn pi() -> Self;
    fn to_f64(self) -> f64;

    fn of_int(n: i64) -> Self;

    /// Nearest value to an exact rational with machine-sized parts.
    fn of_rational(r: &BigRational) -> Result<Self> {
        let (Some(p), Some(q)) = (r.numer().to_i64(), r.denom().to_i64()) else {
            return Err(Error::domain(format!("{r} is too large for floating evaluation")));
        };
        Ok(Self::of_int(p) / Self::of_int(q))
    }
}

impl Real for f64 {
    const EPS: f64 = f64::EPSILON / 2.0;
    const STIRLING_FROM: f64 = 10.0;

    fn of(x: f64) -> Self {
        x
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn of_int(n: i64) -> Self {
        n as f64
    }
}

impl Real for f128 {
    /// `2^-113`.
    const EPS: f64 = 9.63e-35;
    const STIRLING_FROM: f64 = 40.0;

    fn of(x: f64) -> Self {
        f128::from(x)
    }
    fn pi() -> Self {
        <f128 as FloatConst>::PI()
    }
    fn to_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
    fn of_int(n: i64) -> Self {
        f128::from(n)
    }
}

/// `B_{2k} / (2k(2k-1))` for `k = 1 … 12`, as exact fractions.
const STIRLING: [(i64, i64); 12] = [
    (1, 12),
    (-1, 360),
    (1, 1260),
    (-1, 1680),
    (1, 1188),
    (-691, 360360),
    (1, 156),
    (-3617, 122400),
    (43867, 244188),
    (-174611, 125400),
    (77683, 5796),
    (-236364091, 1506960),
];

/// `ln Γ(x)` for `x > 0`: upward shift to `x ≥ STIRLING_FROM`, then the Stirling series.
pub fn ln_gamma<T: Real>(x: T) -> T {
    let shift = T::of(T::STIRLING_FROM);
    let mut y = x;
    let mut prod = T::one();
    while y < shift {
        prod = prod * y;
        y = y + T::one();
    }
    let half = T::of(0.5);
    let two_pi = T::pi() + T::pi();
    let mut s = (y - half) * y.ln() - y + half * two_pi.ln();
    let y2 = y * y;
    let mut pow = y;
    for (p, q) in STIRLING {
        s = s + T::of_int(p) / (T::of_int(q) * pow);
        pow = pow * y2;
    }
    s - prod.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        assert!((ln_gamma(5.0f64) - 24f64.ln()).abs() < 1e-14);
        assert!((ln_gamma(0.5f64) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-14);
        let half = ln_gamma(f128::of(0.5));
        let want = f128::pi().sqrt().ln();
        assert!((half - want).abs() < f128::of(1e-31));
        let seven = ln_gamma(f128::of(7.0)) - f128::of(720.0).ln();
        assert!(seven.abs() < f128::of(1e-31));
    }

    #[test]
    fn rational_conversion() {
        let r = BigRational::new(9.into(), 10.into());
        assert_eq!(f64::of_rational(&r).unwrap(), 0.9);
        let t = f128::of_rational(&r).unwrap();
        assert!((t * f128::of(10.0) - f128::of(9.0)).abs() < f128::of(1e-33));
    }
}
