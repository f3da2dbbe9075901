//! Gamma-function helpers: `ln Γ` (Lanczos) and the auxiliary quotients
//! used by the small-argument Bessel series.

// constant tables keep their full reference digits
#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

/// Lanczos coefficients, g = 7, n = 9.
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LANCZOS_G: f64 = 7.0;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_7;

/// Natural log of the gamma function for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    if x < 0.5 {
        // reflection: Γ(x)Γ(1−x) = π / sin(πx)
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut sum = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + sum.ln()
}

/// ζ(k) for k = 2..=26, used in the series form of [`gamma_quotients`].
const ZETA: [f64; 25] = [
    1.644_934_066_848_226_4,
    1.202_056_903_159_594_3,
    1.082_323_233_711_138_2,
    1.036_927_755_143_370,
    1.017_343_061_984_449_1,
    1.008_349_277_381_922_8,
    1.004_077_356_197_944_3,
    1.002_008_392_826_082_2,
    1.000_994_575_127_818,
    1.000_494_188_604_119_5,
    1.000_246_086_553_308,
    1.000_122_713_347_578_5,
    1.000_061_248_135_058_7,
    1.000_030_588_236_307,
    1.000_015_282_259_408_7,
    1.000_007_637_197_637_9,
    1.000_003_817_293_265,
    1.000_001_908_212_716_6,
    1.000_000_953_962_033_9,
    1.000_000_476_932_986_8,
    1.000_000_238_450_502_7,
    1.000_000_119_219_925_9,
    1.000_000_059_608_189_1,
    1.000_000_029_803_503_5,
    1.000_000_014_901_554_8,
];

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Returns `(g1, g2, rg_plus, rg_minus)` for |mu| <= 1/2, where
///
/// ```text
/// g1 = [1/Γ(1−μ) − 1/Γ(1+μ)] / (2μ)     (limit −γ_E at μ = 0)
/// g2 = [1/Γ(1−μ) + 1/Γ(1+μ)] / 2
/// rg_plus  = 1/Γ(1+μ),   rg_minus = 1/Γ(1−μ)
/// ```
///
/// The difference quotient g1 is evaluated through
/// `1/Γ(1±μ) = exp(B ± A)` with `A = γ_E μ + Σ_{odd k≥3} ζ(k) μ^k / k`,
/// `B = −Σ_{even k≥2} ζ(k) μ^k / k`, which avoids the cancellation that
/// makes the naive quotient lose digits near μ = 0.
pub fn gamma_quotients(mu: f64) -> (f64, f64, f64, f64) {
    debug_assert!(mu.abs() <= 0.5 + 1e-12);
    if mu.abs() < 0.25 {
        let mut a = EULER_GAMMA * mu;
        let mut b = 0.0;
        let mut mu_pow = mu * mu; // μ^k, starting at k = 2
        for (i, z) in ZETA.iter().enumerate() {
            let k = i + 2;
            let term = z * mu_pow / k as f64;
            if k % 2 == 0 {
                b -= term;
            } else {
                a += term;
            }
            mu_pow *= mu;
            if term.abs() < 1e-20 {
                break;
            }
        }
        let eb = b.exp();
        let rg_plus = eb * a.exp(); // 1/Γ(1+μ)
        let rg_minus = eb * (-a).exp(); // 1/Γ(1−μ)
        // sinh(A)/μ without cancellation: A/μ is a clean series in μ²
        let a_over_mu = if mu == 0.0 {
            EULER_GAMMA
        } else {
            a / mu
        };
        let sinh_ratio = if a.abs() < 1e-8 {
            1.0 + a * a / 6.0
        } else {
            a.sinh() / a
        };
        let g1 = -eb * a_over_mu * sinh_ratio;
        let g2 = eb * a.cosh();
        (g1, g2, rg_plus, rg_minus)
    } else {
        let rg_plus = (-ln_gamma(1.0 + mu)).exp();
        let rg_minus = (-ln_gamma(1.0 - mu)).exp();
        ((rg_minus - rg_plus) / (2.0 * mu), (rg_minus + rg_plus) / 2.0, rg_plus, rg_minus)
    }
}
