//! Bracketed root refinement and scalar maximization helpers.

use crate::error::{Error, Result};

/// Newton iteration confined to a sign-change bracket; any step leaving the
/// bracket (or failing to shrink) falls back to bisection. `eval` returns
/// (f, f').
///
/// Terminates when successive iterates satisfy |dx| <= rel_tol * |x|.
pub fn refine_bracketed<F>(
    mut eval: F,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
    what: &'static str,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    let (f_lo, _) = eval(lo)?;
    let (f_hi, _) = eval(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Convergence {
            what,
            iterations: 0,
            lo,
            hi,
            f_lo,
            f_hi,
        });
    }
    let sign_lo = f_lo.signum();
    let mut x = 0.5 * (lo + hi);
    for iter in 0..200 {
        let (fx, fpx) = eval(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == sign_lo {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / fpx;
        let next = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= rel_tol * next.abs() {
            return Ok(next);
        }
        x = next;
        let _ = iter;
    }
    Err(Error::Convergence {
        what,
        iterations: 200,
        lo,
        hi,
        f_lo,
        f_hi,
    })
}

/// Golden-section search for the maximum of `f` on `[a, b]`.
///
/// Returns `(x_max, f_max)` once the interval is below `x_tol`.
pub fn golden_section_max<F>(mut f: F, mut a: f64, mut b: f64, x_tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..400 {
        if (b - a).abs() <= x_tol {
            break;
        }
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    if f1 > f2 {
        Ok((x1, f1))
    } else {
        Ok((x2, f2))
    }
}
