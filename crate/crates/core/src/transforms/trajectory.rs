//! The imaginary-axis trajectory `f(r) = Im F_{μ_c}(ir)`, which solves
//! `f' = f² - rf - c`, integrated downward from large `r`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use ode_solvers::{Dopri5, System, Vector1};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::serde_rational;
use crate::transforms::analytic::{cf_eval, Precision};
use crate::transforms::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub r: f64,
    pub f: f64,
    pub df: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    #[serde(with = "serde_rational")]
    pub c: BigRational,
    pub r_lo: f64,
    pub r_hi: f64,
    /// Unique zero of `f`, if found.
    pub q0: Option<f64>,
    /// Unique zero of `f'`, if found.
    pub s_crit: Option<f64>,
    pub f_at_s: Option<f64>,
    /// `-2√(-c)`, the bound the critical point must lie below.
    pub critical_bound: f64,
    /// `f(r_hi) - (r_hi + (c+1)/r_hi)`.
    pub asymptote_gap: f64,
    pub assertions: Vec<Assertion>,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn holds(&self) -> bool {
        self.assertions.iter().all(|a| a.holds)
    }

    /// Turns failed assertions into a verification finding.
    pub fn verify(&self) -> Result<()> {
        let failed: Vec<String> = self
            .assertions
            .iter()
            .filter(|a| !a.holds)
            .map(|a| format!("{} ({})", a.name, a.detail))
            .collect();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Verification(format!(
                "trajectory for c = {}: {}",
                self.c,
                failed.join("; ")
            )))
        }
    }
}

/// In `t = r_hi - r` the integration runs forward: `df/dt = -(f² - rf - c)`.
struct Reversed {
    c: f64,
    r_hi: f64,
}

impl System<f64, Vector1<f64>> for Reversed {
    fn system(&self, t: f64, y: &Vector1<f64>, dy: &mut Vector1<f64>) {
        let r = self.r_hi - t;
        dy[0] = -(y[0] * y[0] - r * y[0] - self.c);
    }
}

fn rhs(c: f64, r: f64, f: f64) -> f64 {
    f * f - r * f - c
}

/// Zero of the cubic Hermite interpolant on `[a, b]` with values `ya, yb` and slopes `da, db`.
fn hermite_root(a: f64, b: f64, ya: f64, yb: f64, da: f64, db: f64) -> f64 {
    let h = b - a;
    let p = |x: f64| {
        let t = (x - a) / h;
        let (t2, t3) = (t * t, t * t * t);
        (2.0 * t3 - 3.0 * t2 + 1.0) * ya
            + (t3 - 2.0 * t2 + t) * h * da
            + (-2.0 * t3 + 3.0 * t2) * yb
            + (t3 - t2) * h * db
    };
    let (mut lo, mut hi) = (a, b);
    let s_lo = p(lo).signum();
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if p(mid).signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Integrates `f` on `[r_lo, r_hi]` and checks the imaginary-axis properties of `F_{μ_c}`.
///
/// The start value `f(r_hi) = Im F(i r_hi)` comes from the continued fraction.
/// `sample_step` is the spacing of the dense output; `tol` the relative tolerance.
pub fn f_trajectory(
    c: &BigRational,
    r_lo: f64,
    r_hi: f64,
    tol: f64,
    sample_step: f64,
) -> Result<Trajectory> {
    if !(*c > -BigRational::one() && *c < BigRational::zero()) {
        return Err(Error::domain(format!("the trajectory needs -1 < c < 0, got {c}")));
    }
    if !(r_lo < r_hi && r_hi > 0.0) || !(tol > 0.0) || !(sample_step > 0.0) {
        return Err(Error::domain("need r_lo < r_hi, r_hi > 0, tol > 0, step > 0"));
    }
    let cf = f64::of_rational(c)?;
    let g = cf_eval(c, Complex64::new(0.0, r_hi), None, Precision::Extended)?.value;
    let f0 = g.inv().im;
    let mut solver = Dopri5::new(
        Reversed { c: cf, r_hi },
        0.0,
        r_hi - r_lo,
        sample_step,
        Vector1::new(f0),
        tol,
        tol * 1e-2,
    );
    solver.integrate().map_err(|e| Error::Precision {
        message: format!("trajectory integration failed: {e}"),
        residual: f64::NAN,
    })?;
    let samples: Vec<Sample> = solver
        .x_out()
        .iter()
        .zip(solver.y_out())
        .map(|(t, y)| {
            let r = r_hi - t;
            Sample {
                r,
                f: y[0],
                df: rhs(cf, r, y[0]),
            }
        })
        .collect();
    if samples.iter().any(|s| !s.f.is_finite()) {
        return Err(Error::Precision {
            message: "trajectory left the finite range".into(),
            residual: f64::INFINITY,
        });
    }

    let mut f_roots = Vec::new();
    let mut d_roots = Vec::new();
    for w in samples.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a.f.signum() != b.f.signum() {
            f_roots.push(hermite_root(a.r, b.r, a.f, b.f, a.df, b.df));
        }
        if a.df.signum() != b.df.signum() {
            // (f')' = 2ff' - f - rf'
            let dd = |s: Sample| 2.0 * s.f * s.df - s.f - s.r * s.df;
            d_roots.push(hermite_root(a.r, b.r, a.df, b.df, dd(a), dd(b)));
        }
    }
    let q0 = (f_roots.len() == 1).then(|| f_roots[0]);
    let s_crit = (d_roots.len() == 1).then(|| d_roots[0]);
    let f_at_s = s_crit.map(|s| {
        let i = samples.iter().position(|x| x.r <= s).unwrap_or(samples.len() - 1);
        let (a, b) = (samples[i.saturating_sub(1)], samples[i]);
        let t = if a.r == b.r { 0.0 } else { (s - a.r) / (b.r - a.r) };
        a.f + t * (b.f - a.f)
    });
    let bound = -2.0 * (-cf).sqrt();
    let min_gap = samples.iter().map(|s| s.f - s.r).fold(f64::INFINITY, f64::min);
    let max_df = samples.iter().map(|s| s.df).fold(f64::NEG_INFINITY, f64::max);
    let assertions = vec![
        Assertion {
            name: "f(r) > r",
            holds: min_gap > 0.0,
            detail: format!("min f - r = {min_gap:.6e}"),
        },
        Assertion {
            name: "f'(r) < 1",
            holds: max_df < 1.0,
            detail: format!("max f' = {max_df:.12}"),
        },
        Assertion {
            name: "unique critical point",
            holds: d_roots.len() == 1,
            detail: format!("{} sign changes of f'", d_roots.len()),
        },
        Assertion {
            name: "critical point below -2 sqrt(-c)",
            holds: s_crit.is_some_and(|s| s < bound),
            detail: format!("s_crit = {s_crit:?}, bound = {bound:.6}"),
        },
        Assertion {
            name: "unique zero of f",
            holds: f_roots.len() == 1,
            detail: format!("{} sign changes of f", f_roots.len()),
        },
        Assertion {
            name: "zero of f is negative",
            holds: q0.is_some_and(|q| q < 0.0),
            detail: format!("q0 = {q0:?}"),
        },
    ];
    Ok(Trajectory {
        c: c.clone(),
        r_lo,
        r_hi,
        q0,
        s_crit,
        f_at_s,
        critical_bound: bound,
        asymptote_gap: f0 - (r_hi + (cf + 1.0) / r_hi),
        assertions,
        samples,
    })
}
