//! Zeros of J_nu and J'_nu.
//!
//! Zeros are located sequentially per order: the first zero from a seeded
//! sign scan above the McCann lower wall, each later zero from a scan past
//! its predecessor. Consecutive zeros are separated by more than ~3 for
//! every nu >= 0, so a pi/4 scan step cannot skip a sign change. Brackets
//! are then closed by bisection until Newton steps stay inside, matching
//! the |dx| <= 1e-12 x stopping rule.
//!
//! Computed zeros are memoized per order. The cache is transparent:
//! `bessel_zero_uncached` recomputes from scratch and must agree bit for
//! bit (covered by tests).

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use super::{eval, mccann_bound, Order, ZeroIndex};
use crate::error::{Error, Result};
use crate::search::refine_bracketed;

const SCAN_STEP: f64 = PI / 4.0;
const REL_TOL: f64 = 1.0e-12;

type SeqCache = RwLock<HashMap<i64, Arc<Mutex<Vec<f64>>>>>;

static J_ZEROS: OnceLock<SeqCache> = OnceLock::new();
static JP_ZEROS: OnceLock<SeqCache> = OnceLock::new();

fn cache_key(nu: f64) -> i64 {
    (nu * 1.0e12).round() as i64
}

fn series_handle(cache: &SeqCache, nu: f64) -> Arc<Mutex<Vec<f64>>> {
    let key = cache_key(nu);
    if let Some(v) = cache.read().unwrap().get(&key) {
        return Arc::clone(v);
    }
    let mut map = cache.write().unwrap();
    Arc::clone(map.entry(key).or_default())
}

/// Drops all memoized zeros (bench and cache-transparency support).
pub fn clear_zero_caches() {
    if let Some(c) = J_ZEROS.get() {
        c.write().unwrap().clear();
    }
    if let Some(c) = JP_ZEROS.get() {
        c.write().unwrap().clear();
    }
}

/// k-th positive zero of J_nu.
pub fn bessel_zero(order: Order, k: ZeroIndex) -> Result<f64> {
    let cache = J_ZEROS.get_or_init(Default::default);
    let handle = series_handle(cache, order.get());
    let mut zeros = handle.lock().unwrap();
    extend_j_zeros(order.get(), &mut zeros, k.get() as usize)?;
    Ok(zeros[k.get() as usize - 1])
}

/// As [`bessel_zero`] but bypassing the memo table entirely.
#[doc(hidden)]
pub fn bessel_zero_uncached(order: Order, k: ZeroIndex) -> Result<f64> {
    let mut zeros = Vec::new();
    extend_j_zeros(order.get(), &mut zeros, k.get() as usize)?;
    Ok(zeros[k.get() as usize - 1])
}

/// k-th positive zero of J'_nu (for nu = 0 the trivial zero at x = 0 is
/// excluded). Satisfies j_{0,k} < j'_{0,k} < j_{0,k+1} and, for nu > 0 and
/// k >= 2, j_{nu,k-1} < j'_{nu,k} < j_{nu,k}.
pub fn bessel_zero_prime(order: Order, k: ZeroIndex) -> Result<f64> {
    let cache = JP_ZEROS.get_or_init(Default::default);
    let handle = series_handle(cache, order.get());
    let mut zeros = handle.lock().unwrap();
    let want = k.get() as usize;
    while zeros.len() < want {
        let next = jp_zero_fresh(order, zeros.len() + 1)?;
        zeros.push(next);
    }
    Ok(zeros[want - 1])
}

fn j_value(nu: f64, x: f64) -> Result<(f64, f64)> {
    let raw = eval::bessel_jy(nu, x)?;
    Ok((raw.j, raw.jp))
}

/// J'_nu and its derivative J''_nu = -J'/x - (1 - nu^2/x^2) J.
fn jp_value(nu: f64, x: f64) -> Result<(f64, f64)> {
    let raw = eval::bessel_jy(nu, x)?;
    let jpp = -raw.jp / x - (1.0 - nu * nu / (x * x)) * raw.j;
    Ok((raw.jp, jpp))
}

/// McMahon's large-k expansion of j_{nu,k}; a seed, not a bound.
fn mcmahon_j(nu: f64, k: usize) -> f64 {
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
}

/// Uniform large-order estimate of the first zero; good to ~1e-2 at nu = 2
/// and improving rapidly with nu.
fn first_zero_guess(nu: f64) -> f64 {
    if nu < 2.0 {
        mcmahon_j(nu, 1)
    } else {
        let c = nu.cbrt();
        nu + 1.855_757_081_489_46 * c + 1.033_150 / c - 0.003_97 / nu
    }
}

fn extend_j_zeros(nu: f64, zeros: &mut Vec<f64>, upto: usize) -> Result<()> {
    while zeros.len() < upto {
        let k = zeros.len() + 1;
        let z = if k == 1 {
            let wall = mccann_bound(Order::new(nu)?, ZeroIndex::new(1)?);
            let lo = wall.max(first_zero_guess(nu) - 2.0);
            let cap = lo + 6.0 * nu.cbrt() + 8.0 * PI;
            let (a, b) = scan_for_sign_change(|x| Ok(j_value(nu, x)?.0), lo, SCAN_STEP, cap)?;
            refine_bracketed(|x| j_value(nu, x), a, b, REL_TOL, "bessel_zero")?
        } else {
            let prev = zeros[k - 2];
            let lo = prev + 0.5;
            let cap = prev + 6.0 * nu.cbrt() + 8.0 * PI;
            let (a, b) = scan_for_sign_change(|x| Ok(j_value(nu, x)?.0), lo, SCAN_STEP, cap)?;
            refine_bracketed(|x| j_value(nu, x), a, b, REL_TOL, "bessel_zero")?
        };
        zeros.push(z);
    }
    Ok(())
}

fn jp_zero_fresh(order: Order, k: usize) -> Result<f64> {
    let nu = order.get();
    let kk = ZeroIndex::new(k as u32)?;
    if nu == 0.0 {
        // exactly one critical point between consecutive zeros of J_0
        let lo = bessel_zero(order, kk)?;
        let hi = bessel_zero(order, ZeroIndex::new(k as u32 + 1)?)?;
        return refine_bracketed(|x| jp_value(nu, x), lo, hi, REL_TOL, "bessel_zero_prime");
    }
    if k == 1 {
        // J'_nu > 0 on (0, j'_{nu,1}) and j'_{nu,1}^2 > nu (nu + 2)
        let j1 = bessel_zero(order, ZeroIndex::new(1)?)?;
        let lo = (nu * (nu + 2.0)).sqrt() * 0.9;
        let lo = lo.max(1.0e-8).min(0.5 * j1);
        let (a, b) = scan_for_sign_change(|x| Ok(jp_value(nu, x)?.0), lo, SCAN_STEP, j1)?;
        return refine_bracketed(|x| jp_value(nu, x), a, b, REL_TOL, "bessel_zero_prime");
    }
    let lo = bessel_zero(order, ZeroIndex::new(k as u32 - 1)?)?;
    let hi = bessel_zero(order, kk)?;
    refine_bracketed(|x| jp_value(nu, x), lo, hi, REL_TOL, "bessel_zero_prime")
}

/// Walks upward from `lo` in steps of `step` until the sign of `f` flips,
/// returning the bracketing pair. `cap` bounds the walk.
fn scan_for_sign_change<F>(mut f: F, lo: f64, step: f64, cap: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut a = lo;
    let mut fa = f(a)?;
    if fa == 0.0 {
        a += 1e-9 * a.abs().max(1.0);
        fa = f(a)?;
    }
    let mut steps = 0usize;
    let mut b = a;
    while b < cap {
        b = a + step;
        let fb = f(b)?;
        if fa.signum() != fb.signum() {
            return Ok((a, b));
        }
        a = b;
        fa = fb;
        steps += 1;
        if steps > 100_000 {
            break;
        }
    }
    Err(Error::Convergence {
        what: "zero bracket scan",
        iterations: steps,
        lo,
        hi: cap,
        f_lo: fa,
        f_hi: fa,
    })
}
