//! Almost-regular LDPC ensembles: rate feasibility, row-weight split and
//! edge-perspective degree distributions.
//!
//! The ensembles have constant column weight `dv`. When `R < 1/(dv+1)` the
//! rows can take only the weights `dv` and `dv+1`: `r - k*dv` rows of weight
//! `dv` and `k*dv` rows of weight `dv+1`, which pins the whole distribution.

use crate::error::{Error, Result};

/// An ensemble described by its design rate and column weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    rate: f64,
    dv: usize,
}

impl EnsembleSpec {
    pub fn new(rate: f64, dv: usize) -> Result<Self> {
        if !(rate > 0.0 && rate < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "rate must lie in (0,1), got {rate}"
            )));
        }
        if dv < 2 {
            return Err(Error::InvalidParameter(format!(
                "column weight must be >= 2, got {dv}"
            )));
        }
        Ok(EnsembleSpec { rate, dv })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn dv(&self) -> usize {
        self.dv
    }

    /// Mean row weight `dv / (1 - R)`.
    pub fn mean_row_weight(&self) -> f64 {
        self.dv as f64 / (1.0 - self.rate)
    }
}

/// Edge-perspective degree distributions: `coeff` is the fraction of edges
/// attached to nodes of the paired degree.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    lambda: Vec<(usize, f64)>,
    rho: Vec<(usize, f64)>,
}

impl DegreeDistribution {
    pub fn new(lambda: Vec<(usize, f64)>, rho: Vec<(usize, f64)>) -> Result<Self> {
        for (name, side) in [("lambda", &lambda), ("rho", &rho)] {
            let mut sum = 0.0;
            for &(deg, c) in side {
                if deg < 1 {
                    return Err(Error::InvalidParameter(format!(
                        "{name} has a degree-0 term"
                    )));
                }
                if !(0.0..=1.0).contains(&c) {
                    return Err(Error::InvalidParameter(format!(
                        "{name} coefficient {c} outside [0,1]"
                    )));
                }
                sum += c;
            }
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "{name} coefficients sum to {sum}, expected 1"
                )));
            }
        }
        Ok(DegreeDistribution { lambda, rho })
    }

    pub fn lambda(&self) -> &[(usize, f64)] {
        &self.lambda
    }

    pub fn rho(&self) -> &[(usize, f64)] {
        &self.rho
    }

    /// Evaluates `rho(y) = sum rho_i y^(i-1)`.
    pub fn rho_eval(&self, y: f64) -> f64 {
        self.rho
            .iter()
            .map(|&(i, c)| c * y.powi(i as i32 - 1))
            .sum()
    }
}

/// True iff `R < 1/(dv+1)`, the condition under which rows take only the
/// weights `dv` and `dv+1`.
pub fn feasibility(spec: &EnsembleSpec) -> bool {
    spec.rate < 1.0 / (spec.dv as f64 + 1.0)
}

/// Row-weight split for a concrete `(n, k, dv)` matrix.
///
/// Returns `(rows of weight dv, rows of weight dv+1) = (r - k*dv, k*dv)`.
/// Uses the exact rational feasibility test `k*(dv+1) <= n`; the boundary
/// case (zero rows of weight `dv`) and `k = 0` (all rows weight `dv`) are
/// accepted as degenerate ensembles.
pub fn row_weight_profile(n: usize, k: usize, dv: usize) -> Result<(usize, usize)> {
    if k >= n {
        return Err(Error::InvalidParameter(format!("need k < n, got k={k}, n={n}")));
    }
    if k * (dv + 1) > n {
        return Err(Error::InfeasibleEnsemble {
            rate: k as f64 / n as f64,
            dv,
        });
    }
    let r = n - k;
    Ok((r - k * dv, k * dv))
}

/// Degree distributions of the feasible ensemble:
/// `lambda(x) = x^(dv-1)`, `rho(x) = [1 - R(1+dv)] x^(dv-1) + R(1+dv) x^dv`.
pub fn edge_distributions(spec: &EnsembleSpec) -> Result<DegreeDistribution> {
    if !feasibility(spec) {
        return Err(Error::InfeasibleEnsemble {
            rate: spec.rate,
            dv: spec.dv,
        });
    }
    let heavy = spec.rate * (1.0 + spec.dv as f64);
    DegreeDistribution::new(
        vec![(spec.dv, 1.0)],
        vec![(spec.dv, 1.0 - heavy), (spec.dv + 1, heavy)],
    )
}
