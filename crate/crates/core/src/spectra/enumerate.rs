//! Complete eigenvalue enumeration up to a cutoff.
//!
//! Radial families parallelize over the angular index; proven lower bounds
//! (McCann for J zeros, a^2 >= nu^2 for cross-product zeros, nu(nu+2) for
//! derivative zeros) certify that the angular loop can stop.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::{BoundaryCondition, DomainSpec, Mode};
use crate::crossprod::{cross_zero, AnnulusRadius};
use crate::error::{Error, Result};
use crate::special::{bessel_zero, bessel_zero_prime, Order, ZeroIndex};

/// Relative tolerance under which two eigenvalues are treated as one
/// record. Below it: solver noise; above it: genuine spectral gaps.
pub const MERGE_TOL: f64 = 1.0e-8;

/// One basis mode with its multiplicity and nodal count.
#[derive(Debug, Clone, Serialize)]
pub struct ModeEntry {
    pub mode: Mode,
    pub multiplicity: u32,
    pub mu: u64,
}

/// One eigenvalue with every mode that attains it (merged within
/// [`MERGE_TOL`] relative), total multiplicity, and the nodal count of the
/// first listed mode.
#[derive(Debug, Clone, Serialize)]
pub struct EigenRecord {
    pub lambda: f64,
    pub modes: Vec<ModeEntry>,
    pub multiplicity: u32,
    pub mu: u64,
}

pub(super) struct RawMode {
    pub lambda: f64,
    pub mode: Mode,
    pub multiplicity: u32,
    pub mu: u64,
}

/// Dirichlet enumeration of all eigenvalues <= lambda_max, merged and
/// sorted ascending (ties broken by lexicographic mode order).
pub fn enumerate(domain: &DomainSpec, lambda_max: f64) -> Result<Vec<EigenRecord>> {
    enumerate_with(domain, lambda_max, BoundaryCondition::Dirichlet)
}

/// Enumeration under an explicit boundary condition (Neumann: disk only).
pub fn enumerate_with(
    domain: &DomainSpec,
    lambda_max: f64,
    bc: BoundaryCondition,
) -> Result<Vec<EigenRecord>> {
    let raw = raw_modes(domain, lambda_max, bc)?;
    Ok(merge(raw))
}

pub(super) fn raw_modes(
    domain: &DomainSpec,
    lambda_max: f64,
    bc: BoundaryCondition,
) -> Result<Vec<RawMode>> {
    if !lambda_max.is_finite() || lambda_max <= 0.0 {
        return Err(Error::Domain(format!(
            "lambda_max must be positive, got {lambda_max}"
        )));
    }
    if bc == BoundaryCondition::Neumann && !matches!(domain, DomainSpec::Disk) {
        return Err(Error::Domain(
            "Neumann spectra are supported for the disk only".into(),
        ));
    }
    let mut raw = match domain {
        DomainSpec::Orthotope { lengths } => orthotope_modes(lengths, lambda_max),
        DomainSpec::Disk => match bc {
            BoundaryCondition::Dirichlet => disk_modes(lambda_max)?,
            BoundaryCondition::Neumann => neumann_disk_modes(lambda_max)?,
        },
        DomainSpec::Sector { alpha } => sector_modes(*alpha, None, lambda_max)?,
        DomainSpec::Annulus { r } => annulus_modes(*r, lambda_max)?,
        DomainSpec::AnnularSector { r, alpha } => sector_modes(*alpha, Some(*r), lambda_max)?,
    };
    raw.sort_by(|a, b| {
        a.lambda
            .partial_cmp(&b.lambda)
            .unwrap()
            .then_with(|| a.mode.cmp(&b.mode))
    });
    Ok(raw)
}

fn merge(raw: Vec<RawMode>) -> Vec<EigenRecord> {
    let mut records: Vec<EigenRecord> = Vec::new();
    let mut last_lambda = f64::NEG_INFINITY;
    for m in raw {
        let absorb =
            !records.is_empty() && (m.lambda - last_lambda).abs() <= MERGE_TOL * m.lambda.abs();
        last_lambda = m.lambda;
        if absorb {
            let rec = records.last_mut().unwrap();
            rec.multiplicity += m.multiplicity;
            rec.modes.push(ModeEntry {
                mode: m.mode,
                multiplicity: m.multiplicity,
                mu: m.mu,
            });
        } else {
            records.push(EigenRecord {
                lambda: m.lambda,
                multiplicity: m.multiplicity,
                mu: m.mu,
                modes: vec![ModeEntry {
                    mode: m.mode,
                    multiplicity: m.multiplicity,
                    mu: m.mu,
                }],
            });
        }
    }
    for rec in &mut records {
        rec.modes.sort_by(|a, b| a.mode.cmp(&b.mode));
        rec.mu = rec.modes[0].mu;
    }
    records
}

fn orthotope_modes(lengths: &[f64], lambda_max: f64) -> Vec<RawMode> {
    let mut out = Vec::new();
    let mut tuple = vec![0u32; lengths.len()];
    lattice_walk(lengths, lambda_max, 0, 0.0, &mut tuple, &mut out);
    out
}

fn lattice_walk(
    lengths: &[f64],
    lambda_max: f64,
    depth: usize,
    partial: f64,
    tuple: &mut Vec<u32>,
    out: &mut Vec<RawMode>,
) {
    for m in 1u32.. {
        let a = lengths[depth];
        let contrib = PI * PI * (m as f64) * (m as f64) / (a * a);
        let lambda = partial + contrib;
        if lambda > lambda_max {
            break;
        }
        tuple[depth] = m;
        if depth + 1 == lengths.len() {
            let mu = tuple.iter().map(|&v| v as u64).product();
            out.push(RawMode {
                lambda,
                mode: Mode::Lattice(tuple.clone()),
                multiplicity: 1,
                mu,
            });
        } else {
            lattice_walk(lengths, lambda_max, depth + 1, lambda, tuple, out);
        }
    }
}

/// Radial families share this shape: for each admissible angular index,
/// march the radial index until the eigenvalue passes the cutoff.
fn radial_scan<Z>(max_angular: u32, lambda_max: f64, zero_of: Z) -> Result<Vec<RawMode>>
where
    Z: Fn(u32, u32) -> Result<Option<(f64, u32, u64)>> + Sync,
{
    let per_nu: Vec<Result<Vec<RawMode>>> = (0..=max_angular)
        .into_par_iter()
        .map(|nu| {
            let mut col = Vec::new();
            for k in 1u32.. {
                match zero_of(nu, k)? {
                    None => break,
                    Some((z, multiplicity, mu)) => {
                        let lambda = z * z;
                        if lambda > lambda_max {
                            break;
                        }
                        col.push(RawMode {
                            lambda,
                            mode: Mode::Radial { nu, k },
                            multiplicity,
                            mu,
                        });
                    }
                }
            }
            Ok(col)
        })
        .collect();
    let mut out = Vec::new();
    for col in per_nu {
        out.extend(col?);
    }
    Ok(out)
}

fn disk_modes(lambda_max: f64) -> Result<Vec<RawMode>> {
    // McCann: j_{nu,1}^2 > nu^2 + (3 pi / 4)^2, so stop once that passes
    let mut max_nu = 0u32;
    while mccann_sq(max_nu + 1) <= lambda_max {
        max_nu += 1;
    }
    radial_scan(max_nu, lambda_max, |nu, k| {
        if mccann_sq(nu) > lambda_max {
            return Ok(None);
        }
        let z = bessel_zero(Order::new(nu as f64)?, ZeroIndex::new(k)?)?;
        Ok(Some((z, disk_mult(nu), disk_mu(nu, k))))
    })
}

fn mccann_sq(nu: u32) -> f64 {
    let n = nu as f64;
    n * n + (0.75 * PI) * (0.75 * PI)
}

fn disk_mult(nu: u32) -> u32 {
    if nu == 0 {
        1
    } else {
        2
    }
}

fn disk_mu(nu: u32, k: u32) -> u64 {
    if nu == 0 {
        k as u64
    } else {
        2 * nu as u64 * k as u64
    }
}

fn neumann_disk_modes(lambda_max: f64) -> Result<Vec<RawMode>> {
    // j'_{nu,1}^2 > nu (nu + 2) bounds the angular loop
    let mut max_nu = 0u32;
    while {
        let n = (max_nu + 1) as f64;
        n * (n + 2.0) <= lambda_max
    } {
        max_nu += 1;
    }
    let mut raw = radial_scan(max_nu, lambda_max, |nu, k| {
        let nf = nu as f64;
        if nf * (nf + 2.0) > lambda_max {
            return Ok(None);
        }
        let z = bessel_zero_prime(Order::new(nf)?, ZeroIndex::new(k)?)?;
        let mu = if nu == 0 {
            k as u64 + 1
        } else {
            2 * nu as u64 * k as u64
        };
        Ok(Some((z, disk_mult(nu), mu)))
    })?;
    // constant eigenfunction at lambda = 0
    raw.push(RawMode {
        lambda: 0.0,
        mode: Mode::Radial { nu: 0, k: 0 },
        multiplicity: 1,
        mu: 1,
    });
    Ok(raw)
}

fn sector_modes(
    alpha: f64,
    annular: Option<AnnulusRadius>,
    lambda_max: f64,
) -> Result<Vec<RawMode>> {
    let order_of = move |nu: u32| nu as f64 * PI / alpha;
    // tau^2 is a lower bound for the eigenvalue both for j and for cross
    // zeros, so stop once tau^2 > lambda_max (for the full sector McCann
    // is even stronger, but this one covers both)
    let mut max_nu = 1u32;
    while order_of(max_nu + 1).powi(2) <= lambda_max {
        max_nu += 1;
    }
    let raw = radial_scan(max_nu, lambda_max, move |nu, k| {
        if nu == 0 {
            return Ok(None); // sine family starts at nu = 1
        }
        let tau = order_of(nu);
        if tau * tau > lambda_max {
            return Ok(None);
        }
        let order = Order::new(tau)?;
        let z = match annular {
            None => bessel_zero(order, ZeroIndex::new(k)?)?,
            Some(r) => cross_zero(order, ZeroIndex::new(k)?, r)?.a,
        };
        Ok(Some((z, 1, nu as u64 * k as u64)))
    })?;
    Ok(raw)
}

fn annulus_modes(r: AnnulusRadius, lambda_max: f64) -> Result<Vec<RawMode>> {
    // a_{nu,k} >= nu certifies the angular cutoff
    let max_nu = lambda_max.sqrt().floor() as u32;
    radial_scan(max_nu, lambda_max, move |nu, k| {
        let nf = nu as f64;
        if nf * nf > lambda_max {
            return Ok(None);
        }
        let z = cross_zero(Order::new(nf)?, ZeroIndex::new(k)?, r)?.a;
        Ok(Some((z, disk_mult(nu), disk_mu(nu, k))))
    })
}

/// CSV rendering of an enumeration: lambda, multiplicity, mu, modes.
pub fn records_to_csv(records: &[EigenRecord], precision: usize) -> String {
    let mut out = String::from("lambda,multiplicity,mu,modes\n");
    for rec in records {
        let modes: Vec<String> = rec.modes.iter().map(|m| m.mode.to_string()).collect();
        out.push_str(&format!(
            "{:.*e},{},{},{}\n",
            precision,
            rec.lambda,
            rec.multiplicity,
            rec.mu,
            modes.join("+")
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_spectrum_below_fifty() {
        // j_{0,1}^2 ... j_{1,2}^2 in order, with multiplicities 1,2,2,1,2,2
        let recs = enumerate(&DomainSpec::disk(), 50.0).unwrap();
        let mults: Vec<u32> = recs.iter().map(|r| r.multiplicity).collect();
        assert_eq!(mults, vec![1, 2, 2, 1, 2, 2]);
        let approx = [5.783, 14.682, 26.375, 30.471, 40.706, 49.219];
        for (rec, want) in recs.iter().zip(approx) {
            assert!(
                (rec.lambda - want).abs() < 5e-3,
                "lambda {} vs {want}",
                rec.lambda
            );
        }
        let modes: Vec<String> = recs.iter().map(|r| r.modes[0].mode.to_string()).collect();
        assert_eq!(modes, vec!["0:1", "1:1", "2:1", "0:2", "3:1", "1:2"]);
        // nodal counts carried along
        let mus: Vec<u64> = recs.iter().map(|r| r.mu).collect();
        assert_eq!(mus, vec![1, 2, 4, 2, 6, 4]);

        // at 40 the cutoff excludes j_{3,1}^2 = 40.7 and j_{1,2}^2 = 49.2
        let recs40 = enumerate(&DomainSpec::disk(), 40.0).unwrap();
        assert_eq!(recs40.len(), 4);
    }

    #[test]
    fn disk_spectrum_agrees_with_brute_force() {
        // oracle: collect every (nu <= 20, k <= 10) zero, filter, sort
        let lambda_max = 40.0;
        let mut oracle = Vec::new();
        for nu in 0..=20u32 {
            for k in 1..=10u32 {
                let z = bessel_zero(
                    Order::new(nu as f64).unwrap(),
                    ZeroIndex::new(k).unwrap(),
                )
                .unwrap();
                if z * z <= lambda_max {
                    oracle.push((z * z, nu, k));
                }
            }
        }
        oracle.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let recs = enumerate(&DomainSpec::disk(), lambda_max).unwrap();
        assert_eq!(recs.len(), oracle.len());
        for (rec, (l, nu, k)) in recs.iter().zip(&oracle) {
            assert!((rec.lambda - l).abs() < 1e-9);
            assert_eq!(rec.modes[0].mode, Mode::Radial { nu: *nu, k: *k });
        }
    }

    #[test]
    fn square_merges_symmetric_pair() {
        let recs = enumerate(&DomainSpec::orthotope(vec![1.0, 1.0]).unwrap(), 50.0).unwrap();
        // 2 pi^2 (1,1) then 5 pi^2 {(1,2),(2,1)}
        assert_eq!(recs.len(), 2);
        assert!((recs[0].lambda - 2.0 * PI * PI).abs() < 1e-10);
        assert_eq!(recs[0].multiplicity, 1);
        assert!((recs[1].lambda - 5.0 * PI * PI).abs() < 1e-10);
        assert_eq!(recs[1].multiplicity, 2);
        assert_eq!(recs[1].modes.len(), 2);
        assert_eq!(recs[1].modes[0].mode, Mode::Lattice(vec![1, 2]));
        assert_eq!(recs[1].modes[1].mode, Mode::Lattice(vec![2, 1]));
    }

    #[test]
    fn half_disk_sector_hits_integer_orders() {
        // alpha = pi: orders nu pi / alpha = nu, so lambda = j_{nu,k}^2 for
        // nu >= 1 with multiplicity 1
        let recs = enumerate(&DomainSpec::sector(PI).unwrap(), 40.0).unwrap();
        let mut expect = Vec::new();
        for nu in 1..=6u32 {
            for k in 1..=5u32 {
                let z = bessel_zero(
                    Order::new(nu as f64).unwrap(),
                    ZeroIndex::new(k).unwrap(),
                )
                .unwrap();
                if z * z <= 40.0 {
                    expect.push(z * z);
                }
            }
        }
        expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(recs.len(), expect.len());
        for (rec, l) in recs.iter().zip(&expect) {
            assert!((rec.lambda - l).abs() < 1e-8);
            assert_eq!(rec.multiplicity, 1);
        }
    }

    #[test]
    fn neumann_disk_starts_at_zero_with_constant_mode() {
        let recs = enumerate_with(
            &DomainSpec::disk(),
            30.0,
            BoundaryCondition::Neumann,
        )
        .unwrap();
        assert_eq!(recs[0].lambda, 0.0);
        assert_eq!(recs[0].mu, 1);
        assert_eq!(recs[0].modes[0].mode, Mode::Radial { nu: 0, k: 0 });
        // first nonzero Neumann eigenvalue is j'_{1,1}^2 = 1.84118^2
        assert!((recs[1].lambda - 1.841_18_f64.powi(2)).abs() < 1e-3);
        assert_eq!(recs[1].multiplicity, 2);
    }

    #[test]
    fn neumann_rejected_off_disk() {
        let err = enumerate_with(
            &DomainSpec::annulus(0.5).unwrap(),
            10.0,
            BoundaryCondition::Neumann,
        );
        assert!(err.is_err());
    }

    #[test]
    fn flattening_merged_records_reproduces_raw_modes() {
        let domain = DomainSpec::orthotope(vec![1.0, 1.0]).unwrap();
        let recs = enumerate(&domain, 200.0).unwrap();
        let flattened: usize = recs.iter().map(|r| r.modes.len()).sum();
        let raw = raw_modes(&domain, 200.0, BoundaryCondition::Dirichlet).unwrap();
        assert_eq!(flattened, raw.len());
        // and multiplicity bookkeeping matches
        let total: u32 = recs.iter().map(|r| r.multiplicity).sum();
        let raw_total: u32 = raw.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, raw_total);
    }

    #[test]
    fn empty_cutoff_is_an_error_free_empty_list() {
        let recs = enumerate(&DomainSpec::disk(), 1.0).unwrap();
        assert!(recs.is_empty());
    }

    #[test]
    fn csv_rendering_is_stable() {
        let recs = enumerate(&DomainSpec::orthotope(vec![1.0, 1.0]).unwrap(), 50.0).unwrap();
        let csv = records_to_csv(&recs, 6);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "lambda,multiplicity,mu,modes");
        assert_eq!(lines.next().unwrap(), "1.973921e1,1,1,1x1");
        assert_eq!(lines.next().unwrap(), "4.934802e1,2,2,1x2+2x1");
    }
}
