//! The Bessel cross-product J_nu(rz) Y_nu(z) - J_nu(z) Y_nu(rz), its zeros
//! a_{nu,k}(r), degeneracy scans in the inner radius, and the finite-k
//! surrogate for the annulus Pleijel constant.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::search::refine_bracketed;
use crate::special::{eval_bessel, Order, ZeroIndex};

/// Inner radius of an annulus with the outer radius fixed to 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct AnnulusRadius(f64);

/// Inner radii are kept away from the degenerate r = 1 limit.
pub const R_MAX: f64 = 0.999;

impl AnnulusRadius {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || r <= 0.0 || r >= 1.0 {
            return Err(Error::Domain(format!(
                "inner radius must lie strictly in (0, 1), got {r}"
            )));
        }
        if r > R_MAX {
            return Err(Error::CapExceeded(format!(
                "inner radius {r} exceeds the supported margin {R_MAX}"
            )));
        }
        Ok(AnnulusRadius(r))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// One zero a_{nu,k}(r) of the cross-product.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CrossZero {
    pub nu: f64,
    pub k: u32,
    pub r: f64,
    pub a: f64,
}

/// Antisymmetric two-point form J_nu(u) Y_nu(v) - J_nu(v) Y_nu(u).
fn cross_form(order: Order, u: f64, v: f64) -> Result<f64> {
    let pu = eval_bessel(order, u)?;
    let pv = eval_bessel(order, v)?;
    Ok(pu.j * pv.y - pv.j * pu.y)
}

/// Cross-product value J_nu(r z) Y_nu(z) - J_nu(z) Y_nu(r z).
pub fn cross_product(order: Order, r: AnnulusRadius, z: f64) -> Result<f64> {
    if !z.is_finite() || z <= 0.0 {
        return Err(Error::Domain(format!("argument must be positive, got {z}")));
    }
    cross_form(order, r.get() * z, z)
}

/// Value and z-derivative of the cross-product, for Newton refinement.
fn cross_with_derivative(order: Order, r: f64, z: f64) -> Result<(f64, f64)> {
    let inner = eval_bessel(order, r * z)?;
    let outer = eval_bessel(order, z)?;
    let f = inner.j * outer.y - outer.j * inner.y;
    let fp = r * inner.jp * outer.y + inner.j * outer.yp
        - outer.jp * inner.y
        - r * outer.j * inner.yp;
    Ok((f, fp))
}

/// McMahon seed for the zeros at order 0: pi k / (1 - r).
pub fn mcmahon_cross_guess(k: ZeroIndex, r: AnnulusRadius) -> f64 {
    PI * k.get() as f64 / (1.0 - r.get())
}

type SeqCache = RwLock<HashMap<(i64, i64), Arc<Mutex<Vec<f64>>>>>;

static CROSS_ZEROS: OnceLock<SeqCache> = OnceLock::new();

fn key(nu: f64, r: f64) -> (i64, i64) {
    ((nu * 1.0e12).round() as i64, (r * 1.0e12).round() as i64)
}

fn series_handle(cache: &SeqCache, map_key: (i64, i64)) -> Arc<Mutex<Vec<f64>>> {
    // the read guard must drop before the write lock is taken
    if let Some(v) = cache.read().unwrap().get(&map_key) {
        return Arc::clone(v);
    }
    let mut map = cache.write().unwrap();
    Arc::clone(map.entry(map_key).or_default())
}

/// Drops the memoized cross-product zeros.
pub fn clear_cross_zero_cache() {
    if let Some(c) = CROSS_ZEROS.get() {
        c.write().unwrap().clear();
    }
}

/// k-th positive zero of the cross-product at order nu and inner radius r.
///
/// Zeros are tracked sequentially from the onset of oscillation so the
/// index is exact: the asymptotic spacing is pi/(1-r), the provable
/// minimum is ~pi/sqrt(1-r^2), and the scan step stays below half of
/// both.
pub fn cross_zero(order: Order, k: ZeroIndex, r: AnnulusRadius) -> Result<CrossZero> {
    let cache = CROSS_ZEROS.get_or_init(Default::default);
    let handle = series_handle(cache, key(order.get(), r.get()));
    let mut zeros = handle.lock().unwrap();
    extend_cross_zeros(order, r, &mut zeros, k.get() as usize)?;
    Ok(CrossZero {
        nu: order.get(),
        k: k.get(),
        r: r.get(),
        a: zeros[k.get() as usize - 1],
    })
}

fn scan_step(r: f64) -> f64 {
    let nominal = PI / (1.0 - r) / 8.0;
    let safe = PI / (2.0 * (1.0 - r * r).sqrt());
    nominal.min(safe)
}

fn extend_cross_zeros(order: Order, r: AnnulusRadius, zeros: &mut Vec<f64>, upto: usize) -> Result<()> {
    let nu = order.get();
    let rr = r.get();
    let step = scan_step(rr);
    let spacing = PI / (1.0 - rr);
    while zeros.len() < upto {
        let start = match zeros.last() {
            // a_{nu,k} >= sqrt(a_{0,1}^2 + nu^2) > nu, and no zero below it
            None => nu.max(1e-3),
            Some(&prev) => prev + 0.25 * step,
        };
        let cap = start + 40.0 * spacing + 6.0 * nu.cbrt();
        let mut a = start;
        let mut fa = cross_with_derivative(order, rr, a)?.0;
        if fa == 0.0 {
            a += 1e-9 * a;
            fa = cross_with_derivative(order, rr, a)?.0;
        }
        let mut bracket = None;
        while a < cap {
            let b = a + step;
            let fb = cross_with_derivative(order, rr, b)?.0;
            if fa.signum() != fb.signum() {
                bracket = Some((a, b));
                break;
            }
            a = b;
            fa = fb;
        }
        let (lo, hi) = bracket.ok_or(Error::Convergence {
            what: "cross-product zero scan",
            iterations: (40.0 * spacing / step) as usize,
            lo: start,
            hi: cap,
            f_lo: fa,
            f_hi: fa,
        })?;
        let z = refine_bracketed(
            |x| cross_with_derivative(order, rr, x),
            lo,
            hi,
            1e-12,
            "cross_zero",
        )?;
        zeros.push(z);
    }
    Ok(())
}

/// Locates r0 in [r_lo, r_hi] where two cross-product zero branches cross,
/// i.e. a_{pair_a}(r0) = a_{pair_b}(r0); returns the crossing radius and
/// the shared eigenvalue lambda = a^2.
///
/// No sign change of the branch difference over the bracket yields
/// `Ok(None)`; identical pairs are rejected outright.
pub fn degeneracy_scan(
    pair_a: (Order, ZeroIndex),
    pair_b: (Order, ZeroIndex),
    r_lo: AnnulusRadius,
    r_hi: AnnulusRadius,
) -> Result<Option<(f64, f64)>> {
    if pair_a.0 == pair_b.0 && pair_a.1 == pair_b.1 {
        return Err(Error::InvalidInput(
            "identical (order, index) pairs never cross transversally".into(),
        ));
    }
    if r_lo.get() >= r_hi.get() {
        return Err(Error::InvalidInput(format!(
            "need r_lo < r_hi, got [{}, {}]",
            r_lo.get(),
            r_hi.get()
        )));
    }
    let branch_gap = |r: f64| -> Result<(f64, f64)> {
        let rr = AnnulusRadius::new(r)?;
        let a = cross_zero(pair_a.0, pair_a.1, rr)?.a;
        let b = cross_zero(pair_b.0, pair_b.1, rr)?.a;
        Ok((a - b, a.max(b)))
    };
    let (mut lo, mut hi) = (r_lo.get(), r_hi.get());
    let (d_lo, _) = branch_gap(lo)?;
    let (d_hi, _) = branch_gap(hi)?;
    if d_lo == 0.0 {
        let (_, scale) = branch_gap(lo)?;
        return Ok(Some((lo, scale * scale)));
    }
    if d_hi == 0.0 {
        let (_, scale) = branch_gap(hi)?;
        return Ok(Some((hi, scale * scale)));
    }
    if d_lo.signum() == d_hi.signum() {
        return Ok(None);
    }
    let sign_lo = d_lo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let (d_mid, scale) = branch_gap(mid)?;
        // coincidence tolerance: well above the zero solver, far below gaps
        if d_mid.abs() <= 1e-8 * scale || (hi - lo) < 1e-14 * mid {
            let ra = AnnulusRadius::new(mid)?;
            let a = cross_zero(pair_a.0, pair_a.1, ra)?.a;
            let b = cross_zero(pair_b.0, pair_b.1, ra)?.a;
            let shared = 0.5 * (a + b);
            return Ok(Some((mid, shared * shared)));
        }
        if d_mid.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence {
        what: "degeneracy_scan",
        iterations: 200,
        lo,
        hi,
        f_lo: d_lo,
        f_hi: d_hi,
    })
}

/// One row of the annulus surrogate table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SurrogateRow {
    pub x: f64,
    pub k: u32,
    pub order: f64,
    pub a: f64,
    pub k2_over_a2: f64,
}

/// Finite-k surrogate of the annulus Pleijel characterization.
#[derive(Debug, Clone, Serialize)]
pub struct AnnulusSurrogate {
    pub r: f64,
    pub k_max: u32,
    /// (8/(1-r^2)) max over the grid of x * k^2/a_{kx,k}^2 at k = k_max.
    /// A finite-k stand-in for the limsup; no extrapolation is applied.
    pub estimate: f64,
    pub argmax_x: f64,
    pub rows: Vec<SurrogateRow>,
    /// Per grid point: k^2/a^2 at k_max minus at k_max/2, the last-octave
    /// trend callers use to judge convergence.
    pub trend: Vec<(f64, f64)>,
}

/// Evaluates the finite-k surrogate
/// (8/(1-r^2)) max_x { x k^2 / a_{k x, k}^2 } at k = k_max over `x_grid`,
/// with the order taken as the exact real number k*x.
pub fn annulus_pleijel_surrogate(
    r: AnnulusRadius,
    x_grid: &[f64],
    k_max: u32,
) -> Result<AnnulusSurrogate> {
    if x_grid.is_empty() {
        return Err(Error::InvalidInput("x grid must be nonempty".into()));
    }
    if x_grid.iter().any(|&x| !x.is_finite() || x <= 0.0) {
        return Err(Error::InvalidInput("grid points must be positive".into()));
    }
    if k_max < 8 {
        return Err(Error::InvalidInput(format!("k_max must be >= 8, got {k_max}")));
    }
    let k_half = k_max / 2;
    let mut rows = Vec::with_capacity(2 * x_grid.len());
    let mut trend = Vec::with_capacity(x_grid.len());
    let mut best: Option<(f64, f64)> = None;
    for &x in x_grid {
        let mut vals = [0.0f64; 2];
        for (slot, k) in [(0usize, k_half), (1usize, k_max)] {
            let order = Order::new(k as f64 * x)?;
            let a = cross_zero(order, ZeroIndex::new(k)?, r)?.a;
            let v = (k as f64 / a) * (k as f64 / a);
            rows.push(SurrogateRow {
                x,
                k,
                order: order.get(),
                a,
                k2_over_a2: v,
            });
            vals[slot] = v;
        }
        trend.push((x, vals[1] - vals[0]));
        let weighted = x * vals[1];
        let improved = match best {
            None => true,
            Some((_, w)) => weighted > w,
        };
        if improved {
            best = Some((x, weighted));
        }
    }
    let (argmax_x, weighted) = best.unwrap();
    let rr = r.get();
    Ok(AnnulusSurrogate {
        r: rr,
        k_max,
        estimate: 8.0 / (1.0 - rr * rr) * weighted,
        argmax_x,
        rows,
        trend,
    })
}

/// One row of the corollary lower-bound audit.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AuditRow {
    pub k: u32,
    pub order: f64,
    pub a: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Checks a_{k x, k} > 3.4 k / sqrt(1 - r^2) for each k.
///
/// The bound holds up to o(k), so small-k failures are reported as rows,
/// never asserted away.
pub fn corollary_bound_audit(
    r: AnnulusRadius,
    x: f64,
    k_list: &[u32],
) -> Result<Vec<AuditRow>> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::InvalidInput(format!("x must be positive, got {x}")));
    }
    let denom = (1.0 - r.get() * r.get()).sqrt();
    let mut out = Vec::with_capacity(k_list.len());
    for &k in k_list {
        let order = Order::new(k as f64 * x)?;
        let a = cross_zero(order, ZeroIndex::new(k)?, r)?.a;
        let bound = 3.4 * k as f64 / denom;
        out.push(AuditRow {
            k,
            order: order.get(),
            a,
            bound,
            pass: a > bound,
        });
    }
    Ok(out)
}
