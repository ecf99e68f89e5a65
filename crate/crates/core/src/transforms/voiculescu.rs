//! The Voiculescu transform `φ(z) = F^{-1}(z) - z` by Newton continuation from high in `ℂ⁺`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::transforms::analytic::{g_eval, require_upper, series_eval, Precision, SERIES_TOLERANCE};
use crate::transforms::real::Real;

const NEWTON_TOL: f64 = 1e-11;
const MAX_NEWTON: usize = 60;
const MIN_LEVEL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VoiculescuValue {
    pub z: Complex64,
    pub phi: Complex64,
    /// The preimage `w` with `F(w) = z`.
    pub w: Complex64,
    pub levels: usize,
    pub newton_steps: usize,
    pub residual: f64,
}

/// `F = 1/G` continued analytically; below the real axis only the series applies.
fn f_cont(c: &BigRational, w: Complex64, precision: Precision) -> Result<Complex64> {
    let g = if w.im > 0.0 {
        g_eval(c, w, precision)?.value
    } else {
        let e = series_eval(c, w, Precision::Extended)?;
        if e.error_estimate > SERIES_TOLERANCE {
            return Err(Error::Precision {
                message: format!("no accurate continuation of F at w = {w}"),
                residual: e.error_estimate,
            });
        }
        e.value
    };
    Ok(g.inv())
}

/// Solves `F_{μ_c}(w) = z` and returns `φ = w - z`.
///
/// Targets `z + it` with `t = T, T/2, …` (`T = 10(1+|z|)`), then `t = 0`; each
/// level runs damped Newton with `F' = -c + wF - F²` and residual backtracking.
pub fn voiculescu_phi(c: &BigRational, z: Complex64, precision: Precision) -> Result<VoiculescuValue> {
    require_upper(z)?;
    if *c < -BigRational::one() {
        return Err(Error::domain(format!("μ_c needs c ≥ -1, got {c}")));
    }
    if *c == -BigRational::one() {
        return Ok(VoiculescuValue {
            z,
            phi: Complex64::zero(),
            w: z,
            levels: 0,
            newton_steps: 0,
            residual: 0.0,
        });
    }
    let cf = f64::of_rational(c)?;
    let top = 10.0 * (1.0 + z.norm());
    let mut t = top;
    let mut w = z + Complex64::new(0.0, top);
    let mut levels = 0;
    let mut steps = 0;
    let mut residual;
    loop {
        let target = z + Complex64::new(0.0, t);
        let fail = |w: Complex64, why: String| Error::Precision {
            message: format!(
                "continuation failed at level t = {t:e} (last good w = {w}): {why}"
            ),
            residual: f64::NAN,
        };
        let mut fw = f_cont(c, w, precision).map_err(|e| fail(w, e.to_string()))?;
        residual = (fw - target).norm();
        let mut it = 0;
        while residual > NEWTON_TOL * (1.0 + target.norm()) {
            if it == MAX_NEWTON {
                return Err(fail(w, format!("Newton did not converge, residual {residual:e}")));
            }
            let dfw = -cf + w * fw - fw * fw;
            let delta = -(fw - target) / dfw;
            let mut lambda = 1.0;
            loop {
                let trial = w + delta * lambda;
                if let Ok(ft) = f_cont(c, trial, precision) {
                    let r = (ft - target).norm();
                    if r < residual {
                        w = trial;
                        fw = ft;
                        residual = r;
                        break;
                    }
                }
                lambda *= 0.5;
                if lambda < 1e-8 {
                    return Err(fail(w, "backtracking stalled".into()));
                }
            }
            it += 1;
        }
        steps += it;
        levels += 1;
        if t == 0.0 {
            break;
        }
        t = if t < MIN_LEVEL { 0.0 } else { t / 2.0 };
    }
    Ok(VoiculescuValue {
        z,
        phi: w - z,
        w,
        levels,
        newton_steps: steps,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridReport {
    pub max_im_phi: f64,
    pub argmax: Complex64,
    pub points: usize,
    pub values: Vec<VoiculescuValue>,
}

impl GridReport {
    /// For `c ∈ [-1, 0]` every `Im φ` must be at most `slack`.
    pub fn verify(&self, slack: f64) -> Result<()> {
        if self.max_im_phi <= slack {
            Ok(())
        } else {
            Err(Error::Verification(format!(
                "Im φ = {:e} > {slack:e} at z = {}",
                self.max_im_phi, self.argmax
            )))
        }
    }
}

pub fn voiculescu_grid(
    c: &BigRational,
    points: &[Complex64],
    precision: Precision,
) -> Result<GridReport> {
    let values = points
        .iter()
        .map(|&z| voiculescu_phi(c, z, precision))
        .collect::<Result<Vec<_>>>()?;
    let (max_im_phi, argmax) = values
        .iter()
        .map(|v| (v.phi.im, v.z))
        .fold((f64::NEG_INFINITY, Complex64::zero()), |a, b| if b.0 > a.0 { b } else { a });
    Ok(GridReport {
        max_im_phi,
        argmax,
        points: values.len(),
        values,
    })
}

/// The grid `{x + iy : x ∈ [-5,5], y ∈ [0.2,5]}` sampled with `nx × ny` points.
pub fn voiculescu_default_grid(nx: usize, ny: usize) -> Vec<Complex64> {
    let mut out = Vec::new();
    for i in 0..nx {
        let x = -5.0 + 10.0 * i as f64 / (nx.max(2) - 1) as f64;
        for j in 0..ny {
            let y = 0.2 + 4.8 * j as f64 / (ny.max(2) - 1) as f64;
            out.push(Complex64::new(x, y));
        }
    }
    out
}
