//! Cauchy transform of μ_c: entire-series and continued-fraction evaluators,
//! the Riccati residual, density, and the `c ↦ c+1` decomposition identity.
//!
//! With `φ'' + zφ' + cφ = 0` and `φ = Σ c_n z^n`, the physical solution has
//! `c₀ = 1` and `c₁/c = iΓ((1+c)/2) / (√2 Γ(c/2+1))`, and `G = -φ'/(cφ)`.
//! Factoring `c` out of every coefficient but `c₀` makes the formula valid at `c = 0`.

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use f128::f128;

use crate::error::{Error, Result};
use crate::transforms::real::{ln_gamma, Real};

/// `|z|` beyond which the series is not attempted in double precision.
pub const SERIES_RADIUS_DOUBLE: f64 = 4.5;
/// `|z|` beyond which the series is not attempted in extended precision.
pub const SERIES_RADIUS_EXTENDED: f64 = 9.0;
/// Relative accuracy demanded from a series evaluation before escalating.
pub const SERIES_TOLERANCE: f64 = 1e-13;
pub const MAX_CF_DEPTH: usize = 1 << 22;
const MAX_SERIES_TERMS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Double,
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Series,
    ContinuedFraction,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub value: Complex64,
    pub method: Method,
    /// Relative error estimate (series) or last approximant increment (fraction).
    pub error_estimate: f64,
    /// Fraction depth used, zero for the series.
    pub depth: usize,
}

fn parameter<T: Real>(c: &BigRational) -> Result<T> {
    if *c < -BigRational::one() {
        return Err(Error::domain(format!("μ_c needs c ≥ -1, got {c}")));
    }
    T::of_rational(c)
}

fn lift<T: Real>(z: Complex64) -> Complex<T> {
    Complex::new(T::of(z.re), T::of(z.im))
}

fn lower<T: Real>(z: Complex<T>) -> Complex64 {
    Complex64::new(z.re.to_f64(), z.im.to_f64())
}

fn is_delta(c: &BigRational) -> bool {
    *c == -BigRational::one()
}

fn delta_transform(z: Complex64) -> Result<Complex64> {
    if z == Complex64::zero() {
        return Err(Error::Pole { re: 0.0, im: 0.0 });
    }
    Ok(z.inv())
}

/// `c₁/c` of the physical solution, as a purely imaginary number `i·ρ`.
pub fn odd_ratio<T: Real>(c: T) -> T {
    let half = T::of(0.5);
    let lg = ln_gamma((T::one() + c) * half) - ln_gamma(c * half + T::one());
    lg.exp() / T::of(2.0).sqrt()
}

struct Parts<T> {
    /// `A = Σ_{k≥1} (c_{2k}/c) z^{2k}` and its derivative.
    a: Complex<T>,
    da: Complex<T>,
    /// `B = Σ_{k≥0} (c_{2k+1}/c₁) z^{2k+1}` and its derivative.
    b: Complex<T>,
    db: Complex<T>,
    /// Sums of term magnitudes, for error estimates.
    abs_ab: T,
    abs_dab: T,
}

fn series_parts<T: Real>(c: T, z: Complex<T>) -> Result<Parts<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let z2 = z * z;
    let r = z.norm();
    let one = T::one();
    let two = T::of(2.0);
    // k = 0 of B
    let mut bk = one;
    let mut zpow_odd = z; // z^{2k+1}
    let mut b = z;
    let mut db = Complex::new(one, T::zero());
    let mut abs_ab = r;
    let mut abs_dab = one;
    // k = 1 of A
    let mut ak = -one / two;
    let mut zpow_even = z2; // z^{2k}
    let mut a = zero;
    let mut da = zero;
    let eps = T::of(T::EPS);
    for k in 1..MAX_SERIES_TERMS {
        let kk = T::of_int(k as i64);
        // A term k
        let ta = zpow_even * ak;
        let tda = zpow_even / z * (ak * two * kk);
        a = a + ta;
        da = da + tda;
        // B term k: b_k = b_{k-1} · (-(c+2k-1)) / ((2k)(2k+1))
        bk = -bk * (c + two * kk - one) / (two * kk * (two * kk + one));
        zpow_odd = zpow_odd * z2;
        let tb = zpow_odd * bk;
        let tdb = zpow_odd / z * (bk * (two * kk + one));
        b = b + tb;
        db = db + tdb;
        let mag = ta.norm() + tb.norm();
        let dmag = tda.norm() + tdb.norm();
        abs_ab = abs_ab + mag;
        abs_dab = abs_dab + dmag;
        if T::of_int(k as i64) > r * r && mag + dmag <= eps * (abs_ab + abs_dab) {
            return Ok(Parts {
                a,
                da,
                b,
                db,
                abs_ab,
                abs_dab,
            });
        }
        // next A coefficient: a_{k+1} = a_k · (-(c+2k)) / ((2k+1)(2k+2))
        ak = -ak * (c + two * kk) / ((two * kk + one) * (two * kk + two));
        zpow_even = zpow_even * z2;
    }
    Err(Error::Precision {
        message: "power series did not converge".into(),
        residual: f64::INFINITY,
    })
}

fn series_generic<T: Real>(c: &BigRational, z: Complex64) -> Result<(Complex64, f64)> {
    let ct: T = parameter(c)?;
    let zt = lift::<T>(z);
    let rho = odd_ratio(ct);
    let i_rho = Complex::new(T::zero(), rho);
    let one = Complex::new(T::one(), T::zero());
    if z == Complex64::zero() {
        // φ(0) = 1, φ'(0) = c·c₁/c
        return Ok((lower(-i_rho), T::EPS));
    }
    let p = series_parts(ct, zt)?;
    let phi = one + (p.a + i_rho * p.b) * ct;
    let dphi_over_c = p.da + i_rho * p.db;
    let scale = T::one() + (ct.abs() * (T::one() + rho)) * p.abs_ab;
    let dscale = (T::one() + rho) * p.abs_dab;
    let eps = T::of(T::EPS);
    if phi.norm() <= eps * scale * T::of(1e3) {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    // ρ comes from ln Γ and carries a few hundred ulps of its own
    let rho_err = eps * T::of(256.0) * rho;
    let err = eps * (scale / phi.norm() + dscale / dphi_over_c.norm().max(eps))
        + rho_err * (ct.abs() * p.b.norm() / phi.norm() + p.db.norm() / dphi_over_c.norm().max(eps));
    Ok((lower(-dphi_over_c / phi), err.to_f64() * 8.0))
}

/// `G_{μ_c}(z)` from the entire series for `φ`, at the requested precision.
pub fn series_eval(c: &BigRational, z: Complex64, precision: Precision) -> Result<Evaluation> {
    if is_delta(c) {
        return Ok(Evaluation {
            value: delta_transform(z)?,
            method: Method::Series,
            error_estimate: 0.0,
            depth: 0,
        });
    }
    let (value, err) = match precision {
        Precision::Double => series_generic::<f64>(c, z)?,
        Precision::Extended => series_generic::<f128>(c, z)?,
    };
    Ok(Evaluation {
        value,
        method: Method::Series,
        error_estimate: err,
        depth: 0,
    })
}

fn cf_fixed<T: Real>(c: T, z: Complex<T>, depth: usize) -> Complex<T> {
    let mut t = Complex::new(T::zero(), T::zero());
    for n in (1..=depth).rev() {
        t = (z - t).inv() * (c + T::of_int(n as i64));
    }
    (z - t).inv()
}

fn cf_generic<T: Real>(
    c: &BigRational,
    z: Complex64,
    depth: Option<usize>,
    tol: f64,
) -> Result<Evaluation> {
    let ct: T = parameter(c)?;
    let zt = lift::<T>(z);
    if let Some(d) = depth {
        let v = cf_fixed(ct, zt, d);
        let w = cf_fixed(ct, zt, d.saturating_sub(1));
        return Ok(Evaluation {
            value: lower(v),
            method: Method::ContinuedFraction,
            error_estimate: (v - w).norm().to_f64(),
            depth: d,
        });
    }
    let mut d = 32;
    let mut prev = cf_fixed(ct, zt, d);
    loop {
        let next_d = 2 * d;
        let next = cf_fixed(ct, zt, next_d);
        let inc = (next - prev).norm().to_f64();
        if inc <= tol * next.norm().to_f64() {
            return Ok(Evaluation {
                value: lower(next),
                method: Method::ContinuedFraction,
                error_estimate: inc,
                depth: next_d,
            });
        }
        if next_d >= MAX_CF_DEPTH {
            return Err(Error::Precision {
                message: format!("continued fraction not converged at depth {next_d}"),
                residual: inc,
            });
        }
        prev = next;
        d = next_d;
    }
}

/// `G_{μ_c}(z)` from the Jacobi continued fraction with numerators `c+1, c+2, …`.
///
/// With `depth = None` the depth doubles until successive approximants agree
/// to a relative `1e-14` (double) or `1e-28` (extended).
pub fn cf_eval(
    c: &BigRational,
    z: Complex64,
    depth: Option<usize>,
    precision: Precision,
) -> Result<Evaluation> {
    if depth == Some(0) {
        return Err(Error::domain("depth must be at least 1"));
    }
    if !is_delta(c) {
        require_upper(z)?;
    }
    match precision {
        Precision::Double => cf_generic::<f64>(c, z, depth, 1e-14),
        Precision::Extended => cf_generic::<f128>(c, z, depth, 1e-28),
    }
}

/// `G_{μ_c}(z)` by the most accurate available route.
///
/// `G` here is the entire continuation from `ℂ⁺`. The series is used inside its
/// radius, escalating to extended precision when cancellation is detected; the
/// continued fraction covers the rest of `ℂ⁺`. Outside `ℂ⁺` only the series is valid.
pub fn g_eval(c: &BigRational, z: Complex64, precision: Precision) -> Result<Evaluation> {
    if is_delta(c) {
        return series_eval(c, z, precision);
    }
    let _: f64 = parameter(c)?;
    let r = z.norm();
    if precision == Precision::Double && r <= SERIES_RADIUS_DOUBLE {
        let e = series_eval(c, z, Precision::Double)?;
        if e.error_estimate <= SERIES_TOLERANCE {
            return Ok(e);
        }
    }
    if r <= SERIES_RADIUS_EXTENDED {
        let e = series_eval(c, z, Precision::Extended)?;
        if e.error_estimate <= SERIES_TOLERANCE {
            return Ok(e);
        }
        if z.im <= 0.0 {
            return Err(Error::Precision {
                message: format!("series cancellation at z = {z}"),
                residual: e.error_estimate,
            });
        }
    }
    if z.im > 0.0 {
        return cf_eval(c, z, None, precision);
    }
    Err(Error::Precision {
        message: format!("no accurate route for G at z = {z} outside the upper half-plane"),
        residual: f64::INFINITY,
    })
}

/// Evaluates `G` by a fixed method (used where independence of routes matters).
pub fn g_eval_with(
    method: Method,
    c: &BigRational,
    z: Complex64,
    precision: Precision,
) -> Result<Evaluation> {
    match method {
        Method::Series => series_eval(c, z, precision),
        Method::ContinuedFraction => cf_eval(c, z, None, precision),
    }
}

/// `F_{μ_c}(z) = 1/G_{μ_c}(z)`.
pub fn f_eval(c: &BigRational, z: Complex64, precision: Precision) -> Result<Complex64> {
    let g = g_eval(c, z, precision)?.value;
    if g == Complex64::zero() {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    Ok(g.inv())
}

/// `c₁/c` solved from a continued-fraction value of `G` at `z`, for comparison
/// with the closed form [`odd_ratio`].
pub fn calibrate_odd_ratio(c: &BigRational, z: Complex64) -> Result<Complex64> {
    let ct: f64 = parameter(c)?;
    let g = cf_eval(c, z, None, Precision::Double)?.value;
    let p = series_parts(ct, z)?;
    // G(1 + cA + c r B) = -(A' + r B')  ⇒  r = -(G(1 + cA) + A') / (cGB + B')
    let num = g * (Complex64::one() + p.a * ct) + p.da;
    let den = g * p.b * ct + p.db;
    Ok(-num / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiccatiResidual {
    /// `|G' - (cG² - zG + 1)|`.
    pub g_form: f64,
    /// `|F' - (-c + zF - F²)|` with `F = 1/G`.
    pub f_form: f64,
    pub method: Method,
}

/// Riccati residuals with `G'` by a central difference of step `step`.
pub fn riccati_residual(
    c: &BigRational,
    z: Complex64,
    step: f64,
    precision: Precision,
) -> Result<RiccatiResidual> {
    if step <= 0.0 {
        return Err(Error::domain("step must be positive"));
    }
    let cf: f64 = parameter(c)?;
    let method = g_eval(c, z, precision)?.method;
    let h = Complex64::new(step, 0.0);
    let at = |w: Complex64| g_eval_with(method, c, w, precision).map(|e| e.value);
    let g = at(z)?;
    let gp = at(z + h)?;
    let gm = at(z - h)?;
    let dg = (gp - gm) / (2.0 * step);
    let g_form = (dg - (g * g * cf - z * g + 1.0)).norm();
    let f = g.inv();
    let df = (gp.inv() - gm.inv()) / (2.0 * step);
    let f_form = (df - (-cf + z * f - f * f)).norm();
    Ok(RiccatiResidual {
        g_form,
        f_form,
        method,
    })
}

/// `-Im G(u + iε)/π`, optionally Richardson-extrapolated from `ε` and `ε/2`.
pub fn density_eval(
    c: &BigRational,
    u: f64,
    eps: f64,
    richardson: bool,
    precision: Precision,
) -> Result<f64> {
    if eps < 0.0 {
        return Err(Error::domain("eps must be nonnegative"));
    }
    let d = |e: f64| -> Result<f64> {
        Ok(-g_eval(c, Complex64::new(u, e), precision)?.value.im / std::f64::consts::PI)
    };
    if richardson && eps > 0.0 {
        Ok(2.0 * d(eps / 2.0)? - d(eps)?)
    } else {
        d(eps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecompositionResidual {
    /// `|G_{μ_{c+1}}(z) - (z - F_{μ_c}(z))/(c+1)|`.
    pub identity: f64,
    /// `|F_c(z√(c+1))/√(c+1) - (z - √(c+1) G_{c+1}(z√(c+1)))|`.
    pub dilation: f64,
}

/// Both sides of the `c ↦ c+1` identity, `G_{c+1}` by series and `F_c` by the fraction.
///
/// The identity is a property of the fraction itself, so any `c > -1` is accepted.
pub fn decomposition_residual(
    c: &BigRational,
    z: Complex64,
    precision: Precision,
) -> Result<DecompositionResidual> {
    if *c <= -BigRational::one() {
        return Err(Error::domain(format!("the identity needs c > -1, got {c}")));
    }
    if z.im <= 0.0 {
        return Err(Error::domain("the identity is checked for Im z > 0"));
    }
    let c1 = c + BigRational::one();
    let scale: f64 = f64::of_rational(&c1)?;
    let s = scale.sqrt();
    let lhs_g = |w: Complex64| -> Result<Complex64> {
        let method = if w.norm() <= SERIES_RADIUS_EXTENDED {
            Method::Series
        } else {
            Method::ContinuedFraction
        };
        let e = g_eval_with(method, &c1, w, Precision::Extended)?;
        Ok(e.value)
    };
    let rhs_f = |w: Complex64| -> Result<Complex64> {
        Ok(cf_eval(c, w, None, precision)?.value.inv())
    };
    let identity = (lhs_g(z)? - (z - rhs_f(z)?) / scale).norm();
    let w = z * s;
    let dilation = (rhs_f(w)? / s - (z - lhs_g(w)? * s)).norm();
    Ok(DecompositionResidual { identity, dilation })
}

/// The grid `x ∈ {-2,…,2}`, `y ∈ {0.5, 1, 1.5, 2, 3}` used by the residual checks.
pub fn residual_grid() -> Vec<Complex64> {
    let mut out = Vec::new();
    for x in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        for y in [0.5, 1.0, 1.5, 2.0, 3.0] {
            out.push(Complex64::new(x, y));
        }
    }
    out
}

/// Rejects nonpositive imaginary parts with a domain error.
pub(crate) fn require_upper(z: Complex64) -> Result<()> {
    if z.im.is_positive() {
        Ok(())
    } else {
        Err(Error::domain(format!("z = {z} is not in the upper half-plane")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use std::f64::consts::PI;

    fn params() -> Vec<BigRational> {
        vec![rat(-9, 10), rat(-1, 2), int(0), rat(1, 2), rat(9, 10), int(3)]
    }

    #[test]
    fn closed_form_odd_ratio() {
        assert!((odd_ratio(0.0f64) - (PI / 2.0).sqrt()).abs() < 1e-14);
        assert!((odd_ratio(1.0f64) - (2.0 / PI).sqrt()).abs() < 1e-14);
        for c in params() {
            let cf = f64::of_rational(&c).unwrap();
            let cal = calibrate_odd_ratio(&c, Complex64::new(0.0, 2.0)).unwrap();
            assert!(cal.re.abs() < 1e-10, "c = {c}: {cal}");
            assert!((cal.im - odd_ratio(cf)).abs() < 1e-10, "c = {c}: {cal}");
        }
    }

    #[test]
    fn series_agrees_with_fraction() {
        let pts = [
            Complex64::new(0.0, 2.0),
            Complex64::new(1.0, 2.0),
            Complex64::new(-1.5, 1.0),
            Complex64::new(2.5, 0.7),
            Complex64::new(-0.3, 3.5),
        ];
        for c in params() {
            for z in pts {
                let s = series_eval(&c, z, Precision::Double).unwrap();
                let f = cf_eval(&c, z, None, Precision::Double).unwrap().value;
                // the error estimate must cover the actual deviation
                let dev = (s.value - f).norm() / f.norm();
                assert!(dev <= s.error_estimate + 1e-15, "c = {c}, z = {z}: {dev:e} vs {:e}", s.error_estimate);
                let g = g_eval(&c, z, Precision::Double).unwrap().value;
                assert!((g - f).norm() < 1e-13, "c = {c}, z = {z}: {g} vs {f}");
            }
        }
    }

    #[test]
    fn extended_precision_tightens_agreement() {
        let c = rat(1, 2);
        let z = Complex64::new(1.0, 1.0);
        let s = series_eval(&c, z, Precision::Extended).unwrap();
        let f = cf_eval(&c, z, None, Precision::Extended).unwrap();
        assert!((s.value - f.value).norm() < 1e-15);
        assert!(s.error_estimate < 1e-25);
    }

    #[test]
    fn sign_and_mass() {
        for c in params() {
            for z in residual_grid() {
                assert!(g_eval(&c, z, Precision::Double).unwrap().value.im < 0.0);
            }
            // z G(z) - 1 ~ m₂/z² with m₂ = c + 1
            let z = Complex64::new(0.0, 1e3);
            let g = g_eval(&c, z, Precision::Double).unwrap().value;
            let m2 = f64::of_rational(&c).unwrap() + 1.0;
            assert!(((z * g - 1.0) * z * z - m2).norm() < 1e-3 * (1.0 + m2));
        }
    }

    #[test]
    fn delta_zero() {
        let z = Complex64::new(0.3, 2.0);
        assert_eq!(cf_eval(&int(-1), z, None, Precision::Double).unwrap().value, z.inv());
        assert_eq!(g_eval(&int(-1), z, Precision::Double).unwrap().value, z.inv());
        assert!(matches!(
            g_eval(&int(-1), Complex64::zero(), Precision::Double),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn asymptotic_expansion_at_three_i() {
        let z = Complex64::new(0.0, 3.0);
        let g = cf_eval(&int(0), z, None, Precision::Double).unwrap().value;
        // Σ (2n-1)!! z^{-2n-1} is asymptotic and alternates on iℝ: stopping at the
        // smallest term leaves an error below the first omitted one
        let mut sum = Complex64::zero();
        let mut m = 1.0;
        let mut best = f64::INFINITY;
        let mut omitted = 0.0;
        for n in 0..30 {
            let term = z.powi(-(2 * n + 1)) * m;
            if term.norm() > best {
                omitted = term.norm();
                break;
            }
            best = term.norm();
            sum += term;
            m *= (2 * n + 1) as f64;
        }
        assert!(omitted > 0.0 && (g - sum).norm() <= omitted, "{g} vs {sum}");
        let g8 = cf_eval(&int(0), Complex64::new(0.0, 8.0), None, Precision::Double).unwrap().value;
        let a8 = {
            let z = Complex64::new(0.0, 8.0);
            let mut s = Complex64::zero();
            let mut m = 1.0;
            for n in 0..20 {
                s += z.powi(-(2 * n + 1)) * m;
                m *= (2 * n + 1) as f64;
            }
            s
        };
        assert!((g8 - a8).norm() < 1e-8);
    }

    #[test]
    fn approximants_bracket_on_imaginary_axis() {
        let z = Complex64::new(0.0, 1.5);
        let exact = cf_eval(&int(0), z, None, Precision::Extended).unwrap().value.im;
        for d in 1..12 {
            let a = cf_eval(&int(0), z, Some(d), Precision::Double).unwrap().value.im;
            let b = cf_eval(&int(0), z, Some(d + 1), Precision::Double).unwrap().value.im;
            assert!((a - exact) * (b - exact) < 0.0, "depth {d}");
        }
    }

    #[test]
    fn riccati_holds_and_scales() {
        let r = riccati_residual(&rat(1, 2), Complex64::new(1.0, 2.0), 1e-5, Precision::Double)
            .unwrap();
        assert!(r.g_form < 1e-6 && r.f_form < 1e-6);
        let r0 = riccati_residual(&int(0), Complex64::new(0.0, 2.0), 1e-5, Precision::Double)
            .unwrap();
        assert!(r0.g_form < 1e-6);
        let z = Complex64::new(0.5, 1.0);
        let big = riccati_residual(&rat(1, 2), z, 1e-2, Precision::Extended).unwrap().g_form;
        let small = riccati_residual(&rat(1, 2), z, 5e-3, Precision::Extended).unwrap().g_form;
        let ratio = big / small;
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn gaussian_density() {
        for u in [0.0f64, 1.0, -1.0, 2.0, -2.0] {
            let want = (-u * u / 2.0).exp() / (2.0 * PI).sqrt();
            let got = density_eval(&int(0), u, 1e-7, true, Precision::Double).unwrap();
            assert!((got - want).abs() < 1e-8, "u = {u}");
        }
        for c in params() {
            for u in [0.3, 1.7, 3.2] {
                let a = density_eval(&c, u, 1e-6, false, Precision::Double).unwrap();
                let b = density_eval(&c, -u, 1e-6, false, Precision::Double).unwrap();
                assert!(a > 0.0 && (a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn decomposition_identities() {
        let r = decomposition_residual(&int(0), Complex64::new(0.0, 2.0), Precision::Double).unwrap();
        assert!(r.identity < 1e-8 && r.dilation < 1e-8);
        let r = decomposition_residual(&rat(-1, 2), Complex64::new(1.0, 1.0), Precision::Double)
            .unwrap();
        assert!(r.identity < 1e-8 && r.dilation < 1e-8);
        assert!(decomposition_residual(&int(-1), Complex64::new(0.0, 1.0), Precision::Double).is_err());
    }
}
