//! Evaluation kernel for J_nu, Y_nu and first derivatives, real order.
//!
//! Small arguments (x < 2) use a series for Y_mu with |mu| <= 1/2 plus
//! forward recurrence; elsewhere a pair of continued fractions (the
//! J'/J ratio and the complex (J'+iY')/(J+iY) fraction) pins all four
//! values through the Wronskian. Orders are reduced by stable downward
//! recurrence for J and raised by forward recurrence for Y, with
//! rescaling so intermediate growth cannot overflow silently.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gamma::gamma_quotients;

const XMIN: f64 = 2.0;
const EPS: f64 = 1.0e-15;
const FPMIN: f64 = 1.0e-292;
const START: f64 = 1.0e-30;
const RESCALE_AT: f64 = 1.0e250;
const RESCALE: f64 = 1.0e-250;
const Y_OVERFLOW: f64 = 1.0e305;

/// Which branch produced a value, reported by the diagnostics dump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Regime {
    /// Temme series for x < 2.
    SmallArgSeries,
    /// Steed continued fractions for x >= 2.
    ContinuedFraction,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct RawBessel {
    pub j: f64,
    pub y: f64,
    pub jp: f64,
    pub yp: f64,
    pub regime: Regime,
    pub iterations: usize,
}

/// Core evaluator; callers validate `nu >= 0` and `x > 0`.
pub(crate) fn bessel_jy(nu: f64, x: f64) -> Result<RawBessel> {
    debug_assert!(nu >= 0.0 && x > 0.0);

    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let wron = xi2 / PI;

    let nl: i64 = if x < XMIN {
        (nu + 0.5) as i64
    } else {
        ((nu - x + 1.5) as i64).max(0)
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;

    // CF1: h = J'_nu / J_nu, isign = sign of J_nu.
    let maxit_cf1 = 20_000 + (2.0 * x) as usize;
    let mut isign: i32 = 1;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut cf1_iters = 0;
    let mut converged = false;
    for i in 1..=maxit_cf1 {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            cf1_iters = i;
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            what: "bessel CF1",
            iterations: maxit_cf1,
            lo: x,
            hi: x,
            f_lo: nu,
            f_hi: h,
        });
    }

    // Downward recurrence of (J, J') from order nu to xmu, rescaled.
    let mut rjl = isign as f64 * START;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > RESCALE_AT {
            rjl *= RESCALE;
            rjpl *= RESCALE;
            rjl1 *= RESCALE;
            rjp1 *= RESCALE;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl; // J'_mu / J_mu

    let regime;
    let mut iterations = cf1_iters;
    let (rjmu, mut rymu, mut ry1);
    if x < XMIN {
        regime = Regime::SmallArgSeries;
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fct = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let dln = -x2.ln();
        let e = xmu * dln;
        let fct2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (g1, g2, rg_plus, rg_minus) = gamma_quotients(xmu);
        let mut ff = 2.0 / PI * fct * (g1 * e.cosh() + g2 * fct2 * dln);
        let e = e.exp();
        let mut p = e / (rg_plus * PI);
        let mut q = 1.0 / (e * PI * rg_minus);
        let pimu2 = 0.5 * pimu;
        let fct3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fct3 * fct3;
        let mut cc = 1.0;
        let dd = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..=10_000usize {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            cc *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = cc * (ff + r * q);
            sum += del;
            let del1 = cc * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                iterations += i;
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Convergence {
                what: "bessel Y series",
                iterations: 10_000,
                lo: x,
                hi: x,
                f_lo: nu,
                f_hi: sum,
            });
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = wron / (rymup - f * rymu);
    } else {
        regime = Regime::ContinuedFraction;
        // CF2 by complex Lentz: p + i q.
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fct = a * xi / (p * p + q * q);
        let mut cr = br + q * fct;
        let mut ci = bi + p * fct;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let dlr = cr * dr - ci * di;
        let dli = cr * di + ci * dr;
        let temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut ok = false;
        for i in 2..=200_000usize {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fct = a / (cr * cr + ci * ci);
            cr = br + cr * fct;
            ci = bi - ci * fct;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            let dlr = cr * dr - ci * di;
            let dli = cr * di + ci * dr;
            let temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                iterations += i;
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Convergence {
                what: "bessel CF2",
                iterations: 200_000,
                lo: x,
                hi: x,
                f_lo: nu,
                f_hi: p,
            });
        }
        let gam = (p - f) / q;
        let mut jmu = (wron / ((p - f) * gam + q)).sqrt();
        jmu = jmu.copysign(rjl);
        rjmu = jmu;
        rymu = jmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    // Scale J back to order nu.
    let fct = rjmu / rjl;
    let j = rjl1 * fct;
    let jp = rjp1 * fct;

    // Forward recurrence of Y from xmu to nu.
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        if rytemp.abs() > Y_OVERFLOW || !rytemp.is_finite() {
            return Err(Error::Overflow(format!(
                "Y_nu leaves the representable range at nu={nu}, x={x}"
            )));
        }
        rymu = ry1;
        ry1 = rytemp;
    }
    let y = rymu;
    let yp = nu * xi * rymu - ry1;

    if !(j.is_finite() && y.is_finite() && jp.is_finite() && yp.is_finite()) {
        return Err(Error::Overflow(format!(
            "Bessel evaluation left the representable range at nu={nu}, x={x}"
        )));
    }
    if j == 0.0 && jp == 0.0 {
        return Err(Error::Overflow(format!(
            "J_nu underflows at nu={nu}, x={x}"
        )));
    }
    Ok(RawBessel {
        j,
        y,
        jp,
        yp,
        regime,
        iterations,
    })
}
