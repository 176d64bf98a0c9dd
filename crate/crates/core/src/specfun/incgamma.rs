//! Upper incomplete Gamma function Γ(s, z) for real s (not a non-positive
//! integer) and z > 0. Needed for the tails of tempered kernels.

use super::gamma::gamma;
use crate::error::{FracError, Result};

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 2000;

fn lower_series(s: f64, z: f64) -> f64 {
    // γ(s,z) = z^s e^-z Σ z^n / (s (s+1) … (s+n))
    let mut term = 1.0 / s;
    let mut sum = term;
    for n in 1..MAX_ITER {
        term *= z / (s + n as f64);
        sum += term;
        if term.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum * (s * z.ln() - z).exp()
}

fn upper_continued_fraction(s: f64, z: f64) -> f64 {
    // modified Lentz on Γ(s,z) = e^-z z^s / (z + 1 - s - 1(1-s)/(z + 3 - s - …))
    let tiny = 1e-300;
    let mut b = z + 1.0 - s;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    (s * z.ln() - z).exp() * h
}

/// Γ(s, z) = ∫_z^∞ t^(s-1) e^(-t) dt.
///
/// For s > 0 this uses the series / continued fraction pair; negative
/// non-integer s is reached by the downward recurrence
/// Γ(s, z) = (Γ(s+1, z) - z^s e^-z) / s.
pub fn upper_incomplete_gamma(s: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(FracError::Domain(format!(
            "upper incomplete gamma needs z > 0, got {z}"
        )));
    }
    if s <= 0.0 && s == s.floor() {
        return Err(FracError::Domain(format!(
            "upper incomplete gamma at non-positive integer s={s}"
        )));
    }
    if s > 0.0 {
        return Ok(if z < s + 1.0 {
            gamma(s) - lower_series(s, z)
        } else {
            upper_continued_fraction(s, z)
        });
    }
    let shift = (-s).floor() as usize + 1;
    let mut sv = s + shift as f64;
    let mut val = upper_incomplete_gamma(sv, z)?;
    for _ in 0..shift {
        sv -= 1.0;
        val = (val - (sv * z.ln() - z).exp()) / sv;
    }
    Ok(val)
}
