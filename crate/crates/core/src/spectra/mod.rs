//! Dirichlet (and disk Neumann) spectra of the five separable planar
//! domain families, with mode bookkeeping, nodal-domain counts, Weyl-law
//! comparison, and empirical Pleijel ratio traces.

mod enumerate;
mod trace;

pub use enumerate::{enumerate, enumerate_with, records_to_csv, EigenRecord, ModeEntry, MERGE_TOL};
pub use trace::{ratio_trace, RatioTrace, TraceRow};

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::crossprod::AnnulusRadius;
use crate::error::{Error, Result};
use crate::gamma::ln_gamma;

/// One of the separable domain families (outer radius normalized to 1 for
/// the radial ones).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainSpec {
    /// Box (0, a_1) x ... x (0, a_N), N >= 2.
    Orthotope { lengths: Vec<f64> },
    /// Unit disk.
    Disk,
    /// Circular sector of opening alpha in (0, 2 pi].
    Sector { alpha: f64 },
    /// Annulus with inner radius r.
    Annulus { r: AnnulusRadius },
    /// Annular sector: radii (r, 1), opening alpha.
    AnnularSector { r: AnnulusRadius, alpha: f64 },
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha > 2.0 * PI {
        return Err(Error::Domain(format!(
            "sector opening must lie in (0, 2 pi], got {alpha}"
        )));
    }
    Ok(())
}

impl DomainSpec {
    pub fn orthotope(lengths: Vec<f64>) -> Result<Self> {
        if lengths.len() < 2 {
            return Err(Error::Domain(format!(
                "an orthotope needs >= 2 sides, got {}",
                lengths.len()
            )));
        }
        if lengths.iter().any(|&a| !a.is_finite() || a <= 0.0) {
            return Err(Error::Domain("side lengths must be positive".into()));
        }
        Ok(DomainSpec::Orthotope { lengths })
    }

    pub fn disk() -> Self {
        DomainSpec::Disk
    }

    pub fn sector(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(DomainSpec::Sector { alpha })
    }

    pub fn annulus(r: f64) -> Result<Self> {
        Ok(DomainSpec::Annulus {
            r: AnnulusRadius::new(r)?,
        })
    }

    pub fn annular_sector(r: f64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(DomainSpec::AnnularSector {
            r: AnnulusRadius::new(r)?,
            alpha,
        })
    }

    /// Euclidean dimension N.
    pub fn dimension(&self) -> u32 {
        match self {
            DomainSpec::Orthotope { lengths } => lengths.len() as u32,
            _ => 2,
        }
    }

    /// Volume (area for the planar families).
    pub fn area(&self) -> f64 {
        match self {
            DomainSpec::Orthotope { lengths } => lengths.iter().product(),
            DomainSpec::Disk => PI,
            DomainSpec::Sector { alpha } => alpha / 2.0,
            DomainSpec::Annulus { r } => PI * (1.0 - r.get() * r.get()),
            DomainSpec::AnnularSector { r, alpha } => alpha / 2.0 * (1.0 - r.get() * r.get()),
        }
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainSpec::Orthotope { lengths } => {
                let dims: Vec<String> = lengths.iter().map(|a| a.to_string()).collect();
                write!(f, "orthotope[{}]", dims.join(","))
            }
            DomainSpec::Disk => write!(f, "disk"),
            DomainSpec::Sector { alpha } => write!(f, "sector[alpha={alpha}]"),
            DomainSpec::Annulus { r } => write!(f, "annulus[r={}]", r.get()),
            DomainSpec::AnnularSector { r, alpha } => {
                write!(f, "annular_sector[r={}, alpha={alpha}]", r.get())
            }
        }
    }
}

/// Boundary condition; Neumann is supported for the disk only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

/// Mode labels: lattice tuples for orthotopes, (angular index, radial
/// index) for the radial families. The Neumann constant mode is (0, 0).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Lattice(Vec<u32>),
    Radial { nu: u32, k: u32 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Lattice(m) => {
                let parts: Vec<String> = m.iter().map(|v| v.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
            Mode::Radial { nu, k } => write!(f, "{nu}:{k}"),
        }
    }
}

/// Nodal-domain count of the basis eigenfunction labeled by `mode`.
pub fn nodal_count(domain: &DomainSpec, bc: BoundaryCondition, mode: &Mode) -> Result<u64> {
    if bc == BoundaryCondition::Neumann && !matches!(domain, DomainSpec::Disk) {
        return Err(Error::Domain(
            "Neumann spectra are supported for the disk only".into(),
        ));
    }
    match (domain, mode) {
        (DomainSpec::Orthotope { lengths }, Mode::Lattice(m)) => {
            if m.len() != lengths.len() || m.contains(&0) {
                return Err(Error::Domain(format!(
                    "invalid lattice mode {mode} for {domain}"
                )));
            }
            Ok(m.iter().map(|&mi| mi as u64).product())
        }
        (DomainSpec::Disk, Mode::Radial { nu, k }) => match bc {
            BoundaryCondition::Dirichlet => {
                if *k == 0 {
                    return Err(Error::Domain("radial index must be >= 1".into()));
                }
                Ok(angular_weight(*nu) * *k as u64)
            }
            BoundaryCondition::Neumann => {
                if *nu == 0 && *k == 0 {
                    return Ok(1); // constant eigenfunction
                }
                if *k == 0 {
                    return Err(Error::Domain("radial index must be >= 1".into()));
                }
                if *nu == 0 {
                    Ok(*k as u64 + 1)
                } else {
                    Ok(2 * *nu as u64 * *k as u64)
                }
            }
        },
        (DomainSpec::Annulus { .. }, Mode::Radial { nu, k }) => {
            if *k == 0 {
                return Err(Error::Domain("radial index must be >= 1".into()));
            }
            Ok(angular_weight(*nu) * *k as u64)
        }
        (DomainSpec::Sector { .. }, Mode::Radial { nu, k })
        | (DomainSpec::AnnularSector { .. }, Mode::Radial { nu, k }) => {
            if *nu == 0 || *k == 0 {
                return Err(Error::Domain(format!(
                    "sector modes need nu, k >= 1, got {mode}"
                )));
            }
            Ok(*nu as u64 * *k as u64)
        }
        _ => Err(Error::Domain(format!(
            "mode {mode} does not belong to {domain}"
        ))),
    }
}

/// 2 nu + sigma(nu): the nodal weight of the angular factor, where the
/// radial mode (nu = 0) counts once.
fn angular_weight(nu: u32) -> u64 {
    if nu == 0 {
        1
    } else {
        2 * nu as u64
    }
}

/// Leading Weyl term (2 pi)^(-N) omega_N |Omega| lambda^(N/2).
pub fn weyl_count(domain: &DomainSpec, lambda: f64) -> Result<f64> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
    }
    let n = domain.dimension() as f64;
    let unit_ball = (0.5 * n * PI.ln() - ln_gamma(0.5 * n + 1.0)).exp();
    Ok((2.0 * PI).powf(-n) * unit_ball * domain.area() * lambda.powf(n / 2.0))
}

/// A pair of distinct modes whose eigenvalues nearly coincide.
#[derive(Debug, Clone, Serialize)]
pub struct NearDegeneratePair {
    pub mode_a: Mode,
    pub mode_b: Mode,
    pub lambda_a: f64,
    pub lambda_b: f64,
    /// Relative gap |lambda_a - lambda_b| / max(lambda_a, lambda_b).
    pub gap: f64,
}

/// All near-coincidences below a caller-chosen relative gap; the audit
/// trail for the simplicity/multiplicity hypotheses of the sector and
/// annulus characterizations.
#[derive(Debug, Clone, Serialize)]
pub struct NearDegeneracyReport {
    pub domain: DomainSpec,
    pub lambda_max: f64,
    pub gap_tol: f64,
    pub pairs: Vec<NearDegeneratePair>,
}

/// Scans the spectrum up to `lambda_max` for cross-mode pairs with
/// relative eigenvalue gap at most `gap_tol`.
pub fn near_degeneracies(
    domain: &DomainSpec,
    lambda_max: f64,
    gap_tol: f64,
) -> Result<NearDegeneracyReport> {
    if gap_tol.is_nan() || gap_tol < 0.0 {
        return Err(Error::Domain(format!("gap_tol must be >= 0, got {gap_tol}")));
    }
    let raw = enumerate::raw_modes(domain, lambda_max, BoundaryCondition::Dirichlet)?;
    let mut pairs = Vec::new();
    for i in 0..raw.len() {
        for j in i + 1..raw.len() {
            let (la, lb) = (raw[i].lambda, raw[j].lambda);
            let gap = (lb - la).abs() / la.max(lb);
            if gap > gap_tol {
                break; // sorted: later j only grow the gap
            }
            if raw[i].mode != raw[j].mode {
                pairs.push(NearDegeneratePair {
                    mode_a: raw[i].mode.clone(),
                    mode_b: raw[j].mode.clone(),
                    lambda_a: la,
                    lambda_b: lb,
                    gap,
                });
            }
        }
    }
    Ok(NearDegeneracyReport {
        domain: domain.clone(),
        lambda_max,
        gap_tol,
        pairs,
    })
}
