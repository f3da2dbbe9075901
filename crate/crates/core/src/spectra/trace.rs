//! Empirical Pleijel ratio traces mu(phi_n)/n over the ordered spectrum.

use serde::Serialize;

use super::enumerate::{enumerate_with, MERGE_TOL};
use super::{weyl_count, BoundaryCondition, DomainSpec, Mode};
use crate::error::Result;

/// One eigenfunction index in the ordered spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct TraceRow {
    pub n: u64,
    pub lambda: f64,
    pub mu: u64,
    pub ratio: f64,
    pub running_sup: f64,
}

/// The full ratio trace, with the mode that achieved the running sup and
/// the solver tolerances that produced it (for reproducibility).
///
/// Two summaries coexist. `running_sup` is the literal prefix supremum of
/// mu/n; Courant-sharp low modes pin it at 1 from n = 1 on, so it says
/// nothing about the limsup. The empirical constant is
/// [`RatioTrace::pleijel_estimate`]: the supremum of mu divided by the
/// Weyl index estimate, taken over the upper half of the spectrum. The
/// Weyl-normalized ratio obeys the planar Faber-Krahn bound 4/j_{0,1}^2
/// for every row (not just asymptotically), and n/weyl -> 1, so the
/// estimate converges to the same limsup without the small-n transient.
#[derive(Debug, Clone, Serialize)]
pub struct RatioTrace {
    pub domain: DomainSpec,
    pub boundary_condition: BoundaryCondition,
    pub lambda_max: f64,
    pub merge_tol: f64,
    pub zero_rel_tol: f64,
    pub rows: Vec<TraceRow>,
    pub sup_n: u64,
    pub sup_mode: Option<Mode>,
    /// sup of mu/weyl(lambda) over rows with n > tail_start_n.
    pub pleijel_estimate: f64,
    pub pleijel_estimate_n: u64,
    pub pleijel_estimate_mode: Option<Mode>,
    /// Start of the tail window (half of the final index).
    pub tail_start_n: u64,
    /// True when any eigenvalues merged; an orthotope trace then sits
    /// outside the simple-spectrum regime of the closed-form constant.
    pub had_merges: bool,
}

impl RatioTrace {
    pub fn final_running_sup(&self) -> f64 {
        self.rows.last().map_or(0.0, |r| r.running_sup)
    }

    /// CSV with the stable header n,lambda,mu,ratio,running_sup.
    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::from("n,lambda,mu,ratio,running_sup\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{:.p$e},{},{:.p$e},{:.p$e}\n",
                row.n,
                row.lambda,
                row.mu,
                row.ratio,
                row.running_sup,
                p = precision
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("trace serialization cannot fail")
    }
}

/// Orders the spectrum, expands multiplicities (each copy carries the
/// nodal count of its own basis mode), and tracks mu/n with its running
/// supremum.
pub fn ratio_trace(
    domain: &DomainSpec,
    lambda_max: f64,
    bc: BoundaryCondition,
) -> Result<RatioTrace> {
    let records = enumerate_with(domain, lambda_max, bc)?;
    let mut rows = Vec::new();
    let mut modes_by_n = Vec::new();
    let mut n = 0u64;
    let mut running = 0.0f64;
    let mut sup_n = 0u64;
    let mut sup_mode = None;
    let mut had_merges = false;
    for rec in &records {
        if rec.modes.len() > 1 {
            had_merges = true;
        }
        for entry in &rec.modes {
            for _ in 0..entry.multiplicity {
                n += 1;
                let ratio = entry.mu as f64 / n as f64;
                if ratio > running {
                    running = ratio;
                    sup_n = n;
                    sup_mode = Some(entry.mode.clone());
                }
                rows.push(TraceRow {
                    n,
                    lambda: rec.lambda,
                    mu: entry.mu,
                    ratio,
                    running_sup: running,
                });
                modes_by_n.push(&entry.mode);
            }
        }
    }

    let tail_start_n = n / 2;
    let mut pleijel_estimate = 0.0f64;
    let mut pleijel_estimate_n = 0u64;
    let mut pleijel_estimate_mode = None;
    for row in rows.iter().filter(|r| r.n > tail_start_n && r.lambda > 0.0) {
        let normalized = row.mu as f64 / weyl_count(domain, row.lambda)?;
        if normalized > pleijel_estimate {
            pleijel_estimate = normalized;
            pleijel_estimate_n = row.n;
            pleijel_estimate_mode = Some(modes_by_n[row.n as usize - 1].clone());
        }
    }

    Ok(RatioTrace {
        domain: domain.clone(),
        boundary_condition: bc,
        lambda_max,
        merge_tol: MERGE_TOL,
        zero_rel_tol: 1.0e-12,
        rows,
        sup_n,
        sup_mode,
        pleijel_estimate,
        pleijel_estimate_n,
        pleijel_estimate_mode,
        tail_start_n,
        had_merges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_trace_structure_below_hundred() {
        let trace = ratio_trace(&DomainSpec::disk(), 100.0, BoundaryCondition::Dirichlet)
            .unwrap();
        let rows = &trace.rows;
        // lambda_1 is simple with one nodal domain: ratio 1 at n = 1
        assert_eq!(rows[0].n, 1);
        assert_eq!(rows[0].mu, 1);
        assert!((rows[0].ratio - 1.0).abs() < 1e-15);
        assert!((rows[0].running_sup - 1.0).abs() < 1e-15);
        // first angular mode occupies n = 2, 3 with mu = 2 on both copies
        assert_eq!(rows[1].n, 2);
        assert_eq!(rows[1].mu, 2);
        assert_eq!(rows[2].n, 3);
        assert_eq!(rows[2].mu, 2);
        // n consecutive, lambda nondecreasing, sup monotone and >= ratio
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.n, i as u64 + 1);
            assert!(row.ratio <= row.running_sup + 1e-15);
            if i > 0 {
                assert!(row.lambda >= rows[i - 1].lambda);
                assert!(row.running_sup >= rows[i - 1].running_sup);
            }
        }
        assert_eq!(trace.sup_n, 1);
        assert!(!trace.had_merges);
    }

    #[test]
    fn square_trace_flags_merges() {
        let trace = ratio_trace(
            &DomainSpec::orthotope(vec![1.0, 1.0]).unwrap(),
            100.0,
            BoundaryCondition::Dirichlet,
        )
        .unwrap();
        assert!(trace.had_merges);
    }

    #[test]
    fn csv_header_and_first_row() {
        let trace = ratio_trace(&DomainSpec::disk(), 40.0, BoundaryCondition::Dirichlet)
            .unwrap();
        let csv = trace.to_csv(12);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "n,lambda,mu,ratio,running_sup");
        let first = lines.next().unwrap();
        // lambda = j_{0,1}^2 to the zero solver's 1e-12 relative tolerance
        assert!(first.starts_with("1,5.7831859629"), "{first}");
        assert!(first.ends_with(",1,1.000000000000e0,1.000000000000e0"), "{first}");
    }

    #[test]
    fn json_round_trip_preserves_rows() {
        let trace = ratio_trace(&DomainSpec::disk(), 40.0, BoundaryCondition::Dirichlet)
            .unwrap();
        let json = trace.to_json();
        assert_eq!(json["rows"].as_array().unwrap().len(), trace.rows.len());
        assert_eq!(json["merge_tol"].as_f64().unwrap(), MERGE_TOL);
        // f64 fields survive the JSON round trip exactly
        let back: f64 = json["rows"][0]["lambda"].as_f64().unwrap();
        assert_eq!(back.to_bits(), trace.rows[0].lambda.to_bits());
    }
}
