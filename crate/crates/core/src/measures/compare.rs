use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::table::{format_order, ratio_to_f64, EmpiricalMoments, ExactTable, MomentKind};
use crate::error::{invalid, Result};

/// Comparator settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareOptions {
    /// Acceptance band in standard errors.
    pub z: f64,
    /// When set, every observed value must be 0 or a power of this base.
    pub support_base: Option<u64>,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            z: 4.0,
            support_base: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentRow {
    pub order: (usize, usize),
    pub empirical: f64,
    pub empirical_im: f64,
    pub target: f64,
    pub target_exact: String,
    pub deviation: f64,
    pub stderr: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportCheck {
    pub base: u64,
    pub offending: Vec<i64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub kind: MomentKind,
    pub z: f64,
    pub trials: u64,
    pub rows: Vec<MomentRow>,
    pub support: Option<SupportCheck>,
    pub pass: bool,
}

/// Absolute slack for entries whose standard error is exactly zero.
const FLOAT_SLACK: f64 = 1e-9;

fn is_zero_or_power(v: i64, base: u64) -> bool {
    if v == 0 {
        return true;
    }
    if v < 0 {
        return false;
    }
    let mut v = v as u64;
    while v.is_multiple_of(base) {
        v /= base;
    }
    v == 1
}

/// Compares an empirical table with an exact target at the requested orders
/// (all target orders when `orders` is `None`).
pub fn compare_moments(
    empirical: &EmpiricalMoments,
    target: &ExactTable,
    orders: Option<&[(usize, usize)]>,
    opts: &CompareOptions,
) -> Result<MomentReport> {
    if empirical.table.kind() != target.kind() {
        return invalid(format!(
            "cannot compare a {:?} table with a {:?} target",
            empirical.table.kind(),
            target.kind()
        ));
    }
    if opts.z.is_nan() || opts.z <= 0.0 {
        return invalid(format!("z must be positive, got {}", opts.z));
    }
    let all = target.orders();
    let orders = orders.unwrap_or(&all);
    let mut rows = Vec::with_capacity(orders.len());
    for &(a, b) in orders {
        let t = target.entry(a, b)?;
        let e = empirical.table.entry(a, b)?;
        let tf = ratio_to_f64(t);
        let deviation = (e.value - Complex64::new(tf, 0.0)).norm();
        let pass = deviation <= opts.z * e.stderr || deviation <= FLOAT_SLACK * tf.abs().max(1.0);
        rows.push(MomentRow {
            order: (a, b),
            empirical: e.value.re,
            empirical_im: e.value.im,
            target: tf,
            target_exact: t.to_string(),
            deviation,
            stderr: e.stderr,
            pass,
        });
    }
    let support = match opts.support_base {
        None => None,
        Some(base) => {
            if base < 2 {
                return invalid(format!("support base must be at least 2, got {base}"));
            }
            let Some(values) = &empirical.support else {
                return invalid("support check needs the observed values");
            };
            let offending: Vec<i64> = values
                .iter()
                .copied()
                .filter(|&v| !is_zero_or_power(v, base))
                .collect();
            Some(SupportCheck {
                base,
                pass: offending.is_empty(),
                offending,
            })
        }
    };
    let pass = rows.iter().all(|r| r.pass) && support.as_ref().is_none_or(|s| s.pass);
    Ok(MomentReport {
        kind: target.kind(),
        z: opts.z,
        trials: empirical.trials,
        rows,
        support,
        pass,
    })
}

impl MomentReport {
    /// First failing order, if any.
    pub fn first_failure(&self) -> Option<(usize, usize)> {
        self.rows.iter().find(|r| !r.pass).map(|r| r.order)
    }

    /// CSV with header `order,empirical,empirical_im,target,deviation,stderr,pass`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("order,empirical,empirical_im,target,deviation,stderr,pass\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                format_order(self.kind, r.order.0, r.order.1),
                r.empirical,
                r.empirical_im,
                r.target,
                r.deviation,
                r.stderr,
                r.pass
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::laws::*;
    use crate::measures::table::ExactTable;
    use num_rational::BigRational;
    use std::collections::BTreeMap;

    #[test]
    fn exact_match_passes() {
        let target = poisson_moments(&BigRational::from_integer(1.into()), 6).unwrap();
        let vals: Vec<f64> = target.to_f64().entries().to_vec();
        let emp = EmpiricalMoments::exact_real(&vals);
        let r = compare_moments(&emp, &target, None, &CompareOptions::default()).unwrap();
        assert!(r.pass);
        assert!(r.rows.iter().all(|row| row.deviation == 0.0));
        assert_eq!(r.rows.len(), 7);
    }

    #[test]
    fn corrupted_order_two_fails() {
        let target = poisson_moments(&BigRational::from_integer(1.into()), 4).unwrap();
        let mut vals: Vec<f64> = target.to_f64().entries().to_vec();
        vals[2] += 1.0;
        let emp = EmpiricalMoments::exact_real(&vals);
        let r = compare_moments(&emp, &target, None, &CompareOptions::default()).unwrap();
        assert!(!r.pass);
        assert_eq!(r.first_failure(), Some((2, 0)));
        assert_eq!(r.rows.iter().filter(|row| !row.pass).count(), 1);
    }

    #[test]
    fn missing_orders_are_errors() {
        let target = poisson_moments(&BigRational::from_integer(1.into()), 6).unwrap();
        let emp = EmpiricalMoments::exact_real(&[1.0, 1.0, 2.0]);
        assert!(compare_moments(&emp, &target, None, &CompareOptions::default()).is_err());
        let r = compare_moments(&emp, &target, Some(&[(1, 0), (2, 0)]), &CompareOptions::default());
        assert!(r.unwrap().pass);
        let g = complex_gaussian_moments(2);
        assert!(compare_moments(&emp, &g, None, &CompareOptions::default()).is_err());
    }

    #[test]
    fn support_check() {
        let target: ExactTable = q_fix_moments(2, 2).unwrap();
        let good = BTreeMap::from([(1i64, 10u64), (2, 5), (4, 1)]);
        let emp = EmpiricalMoments::from_histogram(&good, 2).unwrap();
        let opts = CompareOptions {
            z: 4.0,
            support_base: Some(2),
        };
        let r = compare_moments(&emp, &target, Some(&[(0, 0)]), &opts).unwrap();
        assert!(r.support.as_ref().unwrap().pass);
        let bad = BTreeMap::from([(1i64, 10u64), (3, 5)]);
        let emp = EmpiricalMoments::from_histogram(&bad, 2).unwrap();
        let r = compare_moments(&emp, &target, Some(&[(0, 0)]), &opts).unwrap();
        assert_eq!(r.support.unwrap().offending, vec![3]);
        assert!(!r.pass);
    }

    #[test]
    fn csv_layout() {
        let target = poisson_moments(&BigRational::from_integer(1.into()), 2).unwrap();
        let emp = EmpiricalMoments::exact_real(&[1.0, 1.0, 2.0]);
        let r = compare_moments(&emp, &target, None, &CompareOptions::default()).unwrap();
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "order,empirical,empirical_im,target,deviation,stderr,pass");
        assert_eq!(lines[3], "2,2,0,2,0,0,true");
    }
}
