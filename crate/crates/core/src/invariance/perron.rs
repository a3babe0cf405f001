//! Positive eigenvectors of nonnegative irreducible matrices: an exact check
//! at a known rational eigenvalue and a floating-point diagnostic.

use serde::Serialize;

use super::reports::eigendata;
use super::{invariant_polydiagonals_capped, InvarianceError, DEFAULT_N_CAP};
use crate::linalg::{format_rational, is_positive, span_contains, Rational, RationalMatrix, RationalVector};

#[derive(Clone, Debug, Serialize)]
pub struct PerronReport {
    pub lambda: String,
    pub right_eigenvector: String,
    pub left_eigenvector: String,
    /// Both eigenvectors could be scaled to have positive entries.
    pub positive: bool,
    /// Invariant synchrony subspaces missing the right eigenvector.
    pub synchrony_violations: Vec<String>,
    /// Invariant anti-synchrony subspaces not orthogonal to the left one.
    pub anti_synchrony_violations: Vec<String>,
}

impl PerronReport {
    pub fn passed(&self) -> bool {
        self.positive && self.synchrony_violations.is_empty() && self.anti_synchrony_violations.is_empty()
    }
}

fn positive_multiple(v: &RationalVector) -> Option<RationalVector> {
    if v.iter().all(is_positive) {
        Some(v.clone())
    } else if v.iter().all(|x| is_positive(&-x)) {
        Some(v.scaled(&Rational::from_integer((-1).into())))
    } else {
        None
    }
}

/// At a simple eigenvalue `λ` whose eigenvectors are positive, every
/// invariant synchrony subspace must contain `v_R` and every invariant
/// anti-synchrony subspace must be orthogonal to `v_L`.
pub fn check_perron(m: &RationalMatrix, lambda: &Rational) -> Result<PerronReport, InvarianceError> {
    let data = eigendata(m, lambda)?;
    if data.right_basis.len() != 1 || data.left_basis.len() != 1 {
        return Err(InvarianceError::Multiplicity {
            lambda: format_rational(lambda),
            multiplicity: data.right_basis.len(),
        });
    }
    let vr = positive_multiple(&data.right_basis[0]);
    let vl = positive_multiple(&data.left_basis[0]);
    let mut report = PerronReport {
        lambda: format_rational(lambda),
        right_eigenvector: data.right_basis[0].to_string(),
        left_eigenvector: data.left_basis[0].to_string(),
        positive: vr.is_some() && vl.is_some(),
        synchrony_violations: Vec::new(),
        anti_synchrony_violations: Vec::new(),
    };
    let (Some(vr), Some(vl)) = (vr, vl) else {
        return Ok(report);
    };
    let set = invariant_polydiagonals_capped(m, DEFAULT_N_CAP)?;
    for e in &set.entries {
        let p = &e.partition;
        if e.class.synchrony {
            if !span_contains(&p.basis(), &vr).expect("lengths agree") {
                report.synchrony_violations.push(p.typical_element());
            }
        } else if !p.basis().iter().all(|b| vl.dot(b).expect("lengths agree") == Rational::from_integer(0.into())) {
            report.anti_synchrony_violations.push(p.typical_element());
        }
    }
    Ok(report)
}

/// Floating-point Perron data; diagnostic only.
#[derive(Clone, Debug, Serialize)]
pub struct PerronEstimate {
    pub lambda: f64,
    /// Positive eigenvector normalized to unit sum.
    pub vector: Vec<f64>,
    pub iterations: usize,
}

/// Power iteration on `M + I`, which shares eigenvectors with `M` and is
/// primitive whenever `M` is nonnegative and irreducible. Stops once
/// successive iterates differ by at most `tol` in every entry.
pub fn perron_power_iteration(m: &RationalMatrix, tol: f64, max_iterations: usize) -> Result<PerronEstimate, InvarianceError> {
    if !m.is_square() {
        return Err(InvarianceError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let a = m.to_f64();
    let step = |x: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| x[i] + (0..n).map(|j| a[i * n + j] * x[j]).sum::<f64>())
            .collect()
    };
    let mut x = vec![1.0 / n.max(1) as f64; n];
    for iteration in 1..=max_iterations {
        let y = step(&x);
        let total: f64 = y.iter().sum();
        if !total.is_finite() || total == 0.0 {
            return Err(InvarianceError::NoConvergence(iteration));
        }
        let next: Vec<f64> = y.iter().map(|v| v / total).collect();
        let change = next.iter().zip(&x).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        x = next;
        if change <= tol {
            // x sums to 1, so the sum of (M + I)x is the eigenvalue of M + I
            let lambda = step(&x).iter().sum::<f64>() - 1.0;
            return Ok(PerronEstimate {
                lambda,
                vector: x,
                iterations: iteration,
            });
        }
    }
    Err(InvarianceError::NoConvergence(max_iterations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::directed_cycle;
    use crate::linalg::int;

    #[test]
    fn cycle_has_uniform_perron_vector() {
        let a = directed_cycle(4).adjacency_matrix();
        let report = check_perron(&a, &int(1)).unwrap();
        assert!(report.passed(), "{report:?}");
        let est = perron_power_iteration(&a, 1e-9, 100_000).unwrap();
        assert!((est.lambda - 1.0).abs() < 1e-6);
        assert!(est.vector.iter().all(|v| (v - 0.25).abs() < 1e-6));
    }

    #[test]
    fn non_positive_eigenvector_is_flagged() {
        let m = RationalMatrix::from_ints(&[[1, 0], [0, -1]]);
        let report = check_perron(&m, &int(1)).unwrap();
        assert!(!report.positive);
        assert!(!report.passed());
    }

    #[test]
    fn weighted_example() {
        // in-degrees 2, 2, 2 and right Perron vector 1
        let a = RationalMatrix::from_ints(&[[0, 2, 0], [1, 0, 1], [1, 1, 0]]);
        let report = check_perron(&a, &int(2)).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}
