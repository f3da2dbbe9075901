//! Real-order Bessel functions J_nu, Y_nu, their derivatives, and the
//! positive zeros j_{nu,k} and j'_{nu,k}.

mod eval;
mod zeros;

pub use eval::Regime;
pub use zeros::{bessel_zero, bessel_zero_prime, bessel_zero_uncached, clear_zero_caches};

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Cap on the supported order.
pub const NU_MAX: f64 = 2000.0;
/// Cap on the supported argument.
pub const X_MAX: f64 = 1.0e6;

/// Validated real order, `0 <= nu <= NU_MAX`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, serde::Serialize)]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < 0.0 {
            return Err(Error::Domain(format!(
                "order must be finite and nonnegative, got {nu}"
            )));
        }
        if nu > NU_MAX {
            return Err(Error::CapExceeded(format!(
                "order {nu} exceeds NU_MAX = {NU_MAX}"
            )));
        }
        Ok(Order(nu))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// 1-based index of a positive zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct ZeroIndex(u32);

impl ZeroIndex {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("zero index k must be >= 1".into()));
        }
        Ok(ZeroIndex(k))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// J_nu, Y_nu and their x-derivatives at one point.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct BesselPair {
    pub nu: f64,
    pub x: f64,
    pub j: f64,
    pub y: f64,
    pub jp: f64,
    pub yp: f64,
}

impl BesselPair {
    /// Oscillation envelope sqrt(J^2 + Y^2).
    pub fn envelope(&self) -> f64 {
        self.j.hypot(self.y)
    }

    /// Residual of (pi x / 2)(J Y' - J' Y) - 1, which is 0 exactly.
    pub fn wronskian_residual(&self) -> f64 {
        (PI * self.x / 2.0) * (self.j * self.yp - self.jp * self.y) - 1.0
    }
}

/// Evaluates J_nu, Y_nu, J'_nu, Y'_nu at `x`.
///
/// Y_nu in the deep evanescent corner (tiny x, large nu) can exceed the
/// f64 range; this reports `Error::Overflow` rather than an infinity.
pub fn eval_bessel(order: Order, x: f64) -> Result<BesselPair> {
    check_argument(x)?;
    let raw = eval::bessel_jy(order.get(), x)?;
    Ok(BesselPair {
        nu: order.get(),
        x,
        j: raw.j,
        y: raw.y,
        jp: raw.jp,
        yp: raw.yp,
    })
}

/// Like [`eval_bessel`] but also reports the evaluation regime and a crude
/// error estimate; backs the hidden diagnostics dump of the CLI.
pub fn eval_bessel_diag(order: Order, x: f64) -> Result<(BesselPair, Regime, f64)> {
    check_argument(x)?;
    let raw = eval::bessel_jy(order.get(), x)?;
    let est_error = 1.0e-15 * ((raw.iterations as f64).sqrt() + 1.0);
    Ok((
        BesselPair {
            nu: order.get(),
            x,
            j: raw.j,
            y: raw.y,
            jp: raw.jp,
            yp: raw.yp,
        },
        raw.regime,
        est_error,
    ))
}

fn check_argument(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("argument must be positive, got {x}")));
    }
    if x > X_MAX {
        return Err(Error::CapExceeded(format!(
            "argument {x} exceeds X_MAX = {X_MAX}"
        )));
    }
    Ok(())
}

/// Proven lower bound for j_{nu,k}: sqrt(nu^2 + pi^2 (k - 1/4)^2).
pub fn mccann_bound(order: Order, k: ZeroIndex) -> f64 {
    let nu = order.get();
    let kf = k.get() as f64;
    (nu * nu + PI * PI * (kf - 0.25) * (kf - 0.25)).sqrt()
}
