//! Bounded-denominator resonance: the frequency ratios are accepted as
//! rational when a fraction with denominator at most `qmax` lies within `tol`.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_integer::Integer;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::k4::{grad_g, k4_coordinates, ratio_map_g};
use super::{skew_spectrum, DEFAULT_CLUSTER_TOL};
use crate::algebra::{CenterVector, GraphLieAlgebra};
use crate::approx::best_rational_f64;
use crate::error::{Error, Result};
use crate::exact::{to_f64, Rational};
use crate::sampling;

pub const DEFAULT_QMAX: u64 = 64;
pub const DEFAULT_RESONANCE_TOL: f64 = 1e-9;

/// Bound on `|e^{omega J} - Id|` (Frobenius) accepted as a period.
pub const PERIOD_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceReport {
    pub resonant: bool,
    /// `theta_k / theta_1` as a reduced fraction, absent when no admissible
    /// fraction is within tolerance.
    pub ratios: Vec<Option<Rational>>,
    pub omega: Option<f64>,
}

/// Ratios are taken against the first entry, the largest frequency when the
/// input comes from a [`super::SpectralDecomposition`].
pub fn is_resonant(freqs: &[f64], qmax: u64, tol: f64) -> ResonanceReport {
    assert!(!freqs.is_empty(), "resonance needs at least one frequency");
    let theta1 = freqs[0];
    let ratios: Vec<Option<Rational>> = freqs
        .iter()
        .map(|&th| {
            let x = th / theta1;
            let p = best_rational_f64(x, qmax);
            ((x - to_f64(&p)).abs() <= tol).then_some(p)
        })
        .collect();
    ResonanceReport {
        resonant: ratios.iter().all(Option::is_some),
        ratios,
        omega: None,
    }
}

/// Resonance of `j(Z)` together with the period `omega = 2 pi L / theta_1`,
/// `L` the lcm of the ratio denominators, checked against the exponential.
pub fn resonance(alg: &GraphLieAlgebra, z: &CenterVector, qmax: u64, tol: f64) -> Result<ResonanceReport> {
    if z.is_zero() {
        return Err(Error::ContractViolation("resonance needs Z != 0".into()));
    }
    let j = alg.j_matrix(z);
    let dec = skew_spectrum(&j, DEFAULT_CLUSTER_TOL)?;
    let freqs = dec.frequencies();
    let mut report = is_resonant(&freqs, qmax, tol);
    if !report.resonant {
        return Err(Error::NotResonant { qmax, tol });
    }
    let l = report
        .ratios
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let omega = TAU * l.to_f64().expect("lcm of small denominators") / freqs[0];
    let residual = (dec.exp(omega) - DMatrix::<f64>::identity(j.nrows(), j.nrows())).norm();
    if residual > PERIOD_TOL {
        return Err(Error::PeriodVerification { residual });
    }
    report.omega = Some(omega);
    Ok(report)
}

pub fn resonance_period(alg: &GraphLieAlgebra, z: &CenterVector, qmax: u64, tol: f64) -> Result<f64> {
    Ok(resonance(alg, z, qmax, tol)?
        .omega
        .expect("resonant report carries omega"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanStats {
    pub samples: usize,
    pub resonant: usize,
    /// Samples whose spectrum could not be clustered unambiguously.
    pub unclassified: usize,
    /// Only for 4-vertex graphs: samples with a nonzero gradient of `g`.
    pub nonzero_gradient: Option<usize>,
}

impl ScanStats {
    pub fn fraction_resonant(&self) -> f64 {
        self.resonant as f64 / self.samples as f64
    }

    pub fn fraction_nonzero_gradient(&self) -> Option<f64> {
        self.nonzero_gradient
            .map(|n| n as f64 / self.samples as f64)
    }
}

/// Relative size below which a gradient of `g` counts as zero.
const GRADIENT_FLOOR: f64 = 1e-9;

/// Samples unit `Z` and counts resonant directions; for graphs on four
/// vertices also counts directions where the ratio map has nonzero gradient.
/// Points outside the domain of `g` count as zero gradient.
pub fn resonance_scan(alg: &GraphLieAlgebra, samples: usize, seed: u64, qmax: u64, tol: f64) -> ScanStats {
    let four = alg.dim_v() == 4;
    let mut stats = ScanStats {
        samples,
        resonant: 0,
        unclassified: 0,
        nonzero_gradient: four.then_some(0),
    };
    for i in 0..samples {
        let mut rng = sampling::rng(seed, i as u64);
        let z = CenterVector(sampling::unit_vector(&mut rng, alg.dim_z()));
        match skew_spectrum(&alg.j_matrix(&z), DEFAULT_CLUSTER_TOL) {
            Ok(dec) => {
                if is_resonant(&dec.frequencies(), qmax, tol).resonant {
                    stats.resonant += 1;
                }
            }
            Err(_) => stats.unclassified += 1,
        }
        if let Some(count) = stats.nonzero_gradient.as_mut() {
            let a = k4_coordinates(alg, &z).expect("four vertices");
            if let (Ok(g), Ok(grad)) = (ratio_map_g(&a), grad_g(&a)) {
                let norm = grad.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > GRADIENT_FLOOR * g / z.norm() {
                    *count += 1;
                }
            }
        }
    }
    stats
}
