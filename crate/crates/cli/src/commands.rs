//! One function per subcommand, each returning a [`Table`].

use pleijel_core::crossprod::{
    annulus_pleijel_surrogate, corollary_bound_audit, cross_zero, degeneracy_scan, AnnulusRadius,
};
use pleijel_core::pleijel::{gamma_bound, gamma_bound_ratio, pleijel_disk, rho, rho_ratio};
use pleijel_core::special::{
    bessel_zero, bessel_zero_prime, eval_bessel_diag, Order, Regime, ZeroIndex,
};
use pleijel_core::spectra::{near_degeneracies, ratio_trace, weyl_count, BoundaryCondition, DomainSpec};
use pleijel_core::{Error, Result};

use crate::output::{Cell, Table};

pub fn constants(n_max: u32) -> Result<Table> {
    if n_max < 2 {
        return Err(Error::InvalidInput(format!(
            "--n-max must be >= 2, got {n_max}"
        )));
    }
    let mut t = Table::new(vec!["N", "gamma", "rho", "gamma_ratio", "rho_ratio"]);
    for n in 2..=n_max {
        t.push(vec![
            Cell::UInt(n as u64),
            Cell::Float(gamma_bound(n)?),
            Cell::Float(rho(n)?),
            Cell::Float(gamma_bound_ratio(n)?),
            Cell::Float(rho_ratio(n)?),
        ]);
    }
    Ok(t)
}

pub fn disk(tolerance: f64) -> Result<Table> {
    let est = pleijel_disk(tolerance)?;
    let mut t = Table::new(vec![
        "value",
        "argmax_x",
        "theta_at_argmax",
        "method",
        "tolerance",
        "warnings",
    ]);
    t.push(vec![
        Cell::Float(est.value),
        Cell::Float(est.argmax_x.unwrap()),
        Cell::Float(est.theta_at_argmax.unwrap()),
        Cell::Text("transcendental_max".into()),
        Cell::Float(est.tolerance),
        Cell::Text(est.warnings.join("; ")),
    ]);
    Ok(t)
}

pub enum ZeroKind {
    J,
    JPrime,
}

pub fn zeros(nu: f64, k_range: (u32, u32), kind: ZeroKind) -> Result<Table> {
    let order = Order::new(nu)?;
    let mut t = Table::new(vec!["k", "zero"]);
    for k in k_range.0..=k_range.1 {
        let idx = ZeroIndex::new(k)?;
        let z = match kind {
            ZeroKind::J => bessel_zero(order, idx)?,
            ZeroKind::JPrime => bessel_zero_prime(order, idx)?,
        };
        t.push(vec![Cell::UInt(k as u64), Cell::Float(z)]);
    }
    Ok(t)
}

pub fn cross(nu: f64, r: f64, k_range: (u32, u32)) -> Result<Table> {
    let order = Order::new(nu)?;
    let radius = AnnulusRadius::new(r)?;
    let mut t = Table::new(vec!["k", "a"]);
    for k in k_range.0..=k_range.1 {
        let z = cross_zero(order, ZeroIndex::new(k)?, radius)?;
        t.push(vec![Cell::UInt(k as u64), Cell::Float(z.a)]);
    }
    Ok(t)
}

pub fn trace(domain: DomainSpec, lambda_max: f64, bc: BoundaryCondition) -> Result<Table> {
    let trace = ratio_trace(&domain, lambda_max, bc)?;
    let mut t = Table::new(vec!["n", "lambda", "mu", "ratio", "running_sup"]);
    for row in &trace.rows {
        t.push(vec![
            Cell::UInt(row.n),
            Cell::Float(row.lambda),
            Cell::UInt(row.mu),
            Cell::Float(row.ratio),
            Cell::Float(row.running_sup),
        ]);
    }
    Ok(t
        .with_meta("domain", Cell::Text(domain.to_string()))
        .with_meta("lambda_max", Cell::Float(lambda_max))
        .with_meta(
            "boundary_condition",
            Cell::Text(
                match bc {
                    BoundaryCondition::Dirichlet => "dirichlet",
                    BoundaryCondition::Neumann => "neumann",
                }
                .into(),
            ),
        )
        .with_meta("merge_tol", Cell::Float(trace.merge_tol))
        .with_meta("zero_rel_tol", Cell::Float(trace.zero_rel_tol))
        .with_meta("pleijel_estimate", Cell::Float(trace.pleijel_estimate))
        .with_meta("pleijel_estimate_n", Cell::UInt(trace.pleijel_estimate_n))
        .with_meta(
            "pleijel_estimate_mode",
            Cell::Text(
                trace
                    .pleijel_estimate_mode
                    .map(|m| m.to_string())
                    .unwrap_or_default(),
            ),
        )
        .with_meta("tail_start_n", Cell::UInt(trace.tail_start_n))
        .with_meta("had_merges", Cell::Bool(trace.had_merges)))
}

pub fn scan(pair_a: (f64, u32), pair_b: (f64, u32), r_lo: f64, r_hi: f64) -> Result<Table> {
    let result = degeneracy_scan(
        (Order::new(pair_a.0)?, ZeroIndex::new(pair_a.1)?),
        (Order::new(pair_b.0)?, ZeroIndex::new(pair_b.1)?),
        AnnulusRadius::new(r_lo)?,
        AnnulusRadius::new(r_hi)?,
    )?;
    let mut t = Table::new(vec!["r0", "lambda"]);
    let found = result.is_some();
    if let Some((r0, lambda)) = result {
        t.push(vec![Cell::Float(r0), Cell::Float(lambda)]);
    }
    Ok(t
        .with_meta("pair_a", Cell::Text(format!("{},{}", pair_a.0, pair_a.1)))
        .with_meta("pair_b", Cell::Text(format!("{},{}", pair_b.0, pair_b.1)))
        .with_meta("r_lo", Cell::Float(r_lo))
        .with_meta("r_hi", Cell::Float(r_hi))
        .with_meta("found", Cell::Bool(found)))
}

pub fn annulus_surrogate(r: f64, x_grid: Vec<f64>, k_max: u32) -> Result<Table> {
    let s = annulus_pleijel_surrogate(AnnulusRadius::new(r)?, &x_grid, k_max)?;
    let mut t = Table::new(vec!["x", "k", "order", "a", "k2_over_a2"]);
    for row in &s.rows {
        t.push(vec![
            Cell::Float(row.x),
            Cell::UInt(row.k as u64),
            Cell::Float(row.order),
            Cell::Float(row.a),
            Cell::Float(row.k2_over_a2),
        ]);
    }
    Ok(t
        .with_meta("r", Cell::Float(s.r))
        .with_meta("k_max", Cell::UInt(s.k_max as u64))
        .with_meta("estimate", Cell::Float(s.estimate))
        .with_meta("argmax_x", Cell::Float(s.argmax_x)))
}

pub fn audit(r: f64, x: f64, k_list: Vec<u32>) -> Result<Table> {
    let rows = corollary_bound_audit(AnnulusRadius::new(r)?, x, &k_list)?;
    let mut t = Table::new(vec!["k", "order", "a", "bound", "pass"]);
    for row in rows {
        t.push(vec![
            Cell::UInt(row.k as u64),
            Cell::Float(row.order),
            Cell::Float(row.a),
            Cell::Float(row.bound),
            Cell::Bool(row.pass),
        ]);
    }
    Ok(t)
}

pub fn near_deg(domain: DomainSpec, lambda_max: f64, gap_tol: f64) -> Result<Table> {
    let report = near_degeneracies(&domain, lambda_max, gap_tol)?;
    let mut t = Table::new(vec!["mode_a", "mode_b", "lambda_a", "lambda_b", "gap"]);
    for p in &report.pairs {
        t.push(vec![
            Cell::Text(p.mode_a.to_string()),
            Cell::Text(p.mode_b.to_string()),
            Cell::Float(p.lambda_a),
            Cell::Float(p.lambda_b),
            Cell::Float(p.gap),
        ]);
    }
    Ok(t
        .with_meta("domain", Cell::Text(domain.to_string()))
        .with_meta("lambda_max", Cell::Float(lambda_max))
        .with_meta("gap_tol", Cell::Float(gap_tol)))
}

pub fn weyl(domain: DomainSpec, lambda: f64, with_count: bool) -> Result<Table> {
    let w = weyl_count(&domain, lambda)?;
    if with_count {
        let recs = pleijel_core::spectra::enumerate(&domain, lambda)?;
        let count: u64 = recs.iter().map(|r| r.multiplicity as u64).sum();
        let mut t = Table::new(vec!["lambda", "weyl", "count", "rel_dev"]);
        t.push(vec![
            Cell::Float(lambda),
            Cell::Float(w),
            Cell::UInt(count),
            Cell::Float(count as f64 / w - 1.0),
        ]);
        Ok(t)
    } else {
        let mut t = Table::new(vec!["lambda", "weyl"]);
        t.push(vec![Cell::Float(lambda), Cell::Float(w)]);
        Ok(t)
    }
}

pub fn eval_diag(nus: Vec<f64>, x_grid: Vec<f64>) -> Result<Table> {
    let mut t = Table::new(vec!["x", "nu", "regime", "j", "y", "jp", "yp", "est_error"]);
    for &nu in &nus {
        let order = Order::new(nu)?;
        for &x in &x_grid {
            match eval_bessel_diag(order, x) {
                Ok((pair, regime, est)) => {
                    let regime = match regime {
                        Regime::SmallArgSeries => "series",
                        Regime::ContinuedFraction => "cf",
                    };
                    t.push(vec![
                        Cell::Float(x),
                        Cell::Float(nu),
                        Cell::Text(regime.into()),
                        Cell::Float(pair.j),
                        Cell::Float(pair.y),
                        Cell::Float(pair.jp),
                        Cell::Float(pair.yp),
                        Cell::Float(est),
                    ]);
                }
                Err(Error::Overflow(_)) => {
                    t.push(vec![
                        Cell::Float(x),
                        Cell::Float(nu),
                        Cell::Text("overflow".into()),
                        Cell::Text(String::new()),
                        Cell::Text(String::new()),
                        Cell::Text(String::new()),
                        Cell::Text(String::new()),
                        Cell::Text(String::new()),
                    ]);
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(t)
}
