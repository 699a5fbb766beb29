//! Spectra of skew-symmetric maps and everything built on them.
//!
//! A real skew-symmetric `J` splits `V` orthogonally into its kernel `W_0`
//! and planes `W_k` on which `J^2 = -theta_k^2`. The frequencies are read off
//! the singular values of `J`, which come in equal pairs; the SVD keeps small
//! frequencies accurate where an eigen-solve of `-J^2` would square them away.

mod classify;
mod heisenberg;
mod k4;
mod resonance;

pub use classify::{classify_singularity, SingularityKind, SingularityReason, SingularityVerdict};
pub use heisenberg::{
    heisenberg_like_for, heisenberg_like_sampled, heisenberg_like_structural, HeisenbergEvidence,
    NormalizedSpectrum,
};
pub use k4::{grad_g, k4_coordinates, k4_family_spectrum, ratio_map_g, K4Spectrum};
pub use resonance::{
    is_resonant, resonance, resonance_period, resonance_scan, ResonanceReport, ScanStats, PERIOD_TOL,
    DEFAULT_QMAX, DEFAULT_RESONANCE_TOL,
};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative tolerance used to separate frequencies and to detect the kernel.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// One invariant plane family `W_k`, stored as pairs `(e, f)` with
/// `J e = theta f` and `J f = -theta e`.
#[derive(Debug, Clone)]
pub struct FrequencyBlock {
    pub frequency: f64,
    pub pairs: Vec<(DVector<f64>, DVector<f64>)>,
}

impl FrequencyBlock {
    pub fn multiplicity(&self) -> usize {
        self.pairs.len()
    }

    /// Coordinates `(alpha_p, beta_p)` of the projection of `x` onto this block.
    pub fn coordinates(&self, x: &DVector<f64>) -> Vec<(f64, f64)> {
        self.pairs.iter().map(|(e, f)| (e.dot(x), f.dot(x))).collect()
    }

    pub fn assemble(&self, coords: &[(f64, f64)]) -> DVector<f64> {
        let n = self.pairs[0].0.len();
        let mut out = DVector::zeros(n);
        for ((e, f), &(a, b)) in self.pairs.iter().zip(coords) {
            out.axpy(a, e, 1.0);
            out.axpy(b, f, 1.0);
        }
        out
    }

    pub fn project(&self, x: &DVector<f64>) -> DVector<f64> {
        self.assemble(&self.coordinates(x))
    }

    /// `e^{tJ}` restricted to the block: rotation by `t theta` in each pair.
    pub fn rotate(&self, t: f64, x: &DVector<f64>) -> DVector<f64> {
        let (s, c) = (t * self.frequency).sin_cos();
        let coords: Vec<(f64, f64)> = self
            .coordinates(x)
            .into_iter()
            .map(|(a, b)| (a * c - b * s, a * s + b * c))
            .collect();
        self.assemble(&coords)
    }

    pub fn apply_j(&self, x: &DVector<f64>) -> DVector<f64> {
        let th = self.frequency;
        let coords: Vec<(f64, f64)> = self
            .coordinates(x)
            .into_iter()
            .map(|(a, b)| (-b * th, a * th))
            .collect();
        self.assemble(&coords)
    }

    /// Inverse of `J` on the block, `-J / theta^2`.
    pub fn apply_j_inverse(&self, x: &DVector<f64>) -> DVector<f64> {
        let th = self.frequency;
        let coords: Vec<(f64, f64)> = self
            .coordinates(x)
            .into_iter()
            .map(|(a, b)| (b / th, -a / th))
            .collect();
        self.assemble(&coords)
    }
}

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    dim: usize,
    /// Distinct frequencies, decreasing.
    pub blocks: Vec<FrequencyBlock>,
    pub kernel_basis: Vec<DVector<f64>>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.blocks.iter().map(|b| b.frequency).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.blocks.iter().map(FrequencyBlock::multiplicity).collect()
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }

    /// Frequencies repeated by multiplicity, decreasing.
    pub fn frequency_multiset(&self) -> Vec<f64> {
        self.blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.frequency, b.multiplicity()))
            .collect()
    }

    pub fn project_kernel(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        for k in &self.kernel_basis {
            out.axpy(k.dot(x), k, 1.0);
        }
        out
    }

    pub fn kernel_coordinates(&self, x: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(self.kernel_dim(), self.kernel_basis.iter().map(|k| k.dot(x)))
    }

    pub fn kernel_projector(&self) -> DMatrix<f64> {
        let mut p = DMatrix::zeros(self.dim, self.dim);
        for k in &self.kernel_basis {
            p += k * k.transpose();
        }
        p
    }

    pub fn block_projector(&self, k: usize) -> DMatrix<f64> {
        let mut p = DMatrix::zeros(self.dim, self.dim);
        for (e, f) in &self.blocks[k].pairs {
            p += e * e.transpose() + f * f.transpose();
        }
        p
    }

    /// `sum_k theta_k (f e^T - e f^T)`, which reproduces `J`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut j = DMatrix::zeros(self.dim, self.dim);
        for b in &self.blocks {
            for (e, f) in &b.pairs {
                j += (f * e.transpose() - e * f.transpose()) * b.frequency;
            }
        }
        j
    }

    /// `e^{tJ}`: identity on the kernel, rotation by `t theta_k` on `W_k`.
    pub fn exp(&self, t: f64) -> DMatrix<f64> {
        let mut m = self.kernel_projector();
        for b in &self.blocks {
            let (s, c) = (t * b.frequency).sin_cos();
            for (e, f) in &b.pairs {
                m += (e * e.transpose() + f * f.transpose()) * c
                    + (f * e.transpose() - e * f.transpose()) * s;
            }
        }
        m
    }
}

fn check_skew(j: &DMatrix<f64>, tol: f64) -> Result<()> {
    if !j.is_square() {
        return Err(Error::ContractViolation(format!(
            "expected a square matrix, got {}x{}",
            j.nrows(),
            j.ncols()
        )));
    }
    let asym = (j + j.transpose()).norm();
    if asym > tol * j.norm() {
        return Err(Error::ContractViolation(format!(
            "matrix is not skew-symmetric (|J + J^T| = {asym:e})"
        )));
    }
    Ok(())
}

/// Singular values of `J` in decreasing order with the matching right
/// singular vectors.
fn sorted_svd(j: &DMatrix<f64>) -> Vec<(f64, DVector<f64>)> {
    let svd = j.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let mut pairs: Vec<(f64, DVector<f64>)> = svd
        .singular_values
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, v_t.row(i).transpose()))
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    pairs
}

/// Singular values of a square matrix, decreasing. For skew `J` these are
/// the frequencies, each listed twice, followed by zeros.
pub fn singular_values(j: &DMatrix<f64>) -> Vec<f64> {
    let mut s: Vec<f64> = j.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn skew_spectrum(j: &DMatrix<f64>, tol: f64) -> Result<SpectralDecomposition> {
    check_skew(j, tol)?;
    let dim = j.nrows();
    if dim == 0 {
        return Ok(SpectralDecomposition {
            dim,
            blocks: Vec::new(),
            kernel_basis: Vec::new(),
        });
    }
    let svd = sorted_svd(j);
    let smax = svd[0].0;
    if smax == 0.0 {
        return Ok(SpectralDecomposition {
            dim,
            blocks: Vec::new(),
            kernel_basis: (0..dim).map(|i| DVector::from_fn(dim, |r, _| f64::from(r == i))).collect(),
        });
    }
    let cut = tol * smax;

    let mut kernel = Vec::new();
    let mut clusters: Vec<Vec<(f64, DVector<f64>)>> = Vec::new();
    let mut prev: Option<f64> = None;
    for (s, v) in svd {
        if s <= cut {
            kernel.push(v);
            continue;
        }
        if s <= 10.0 * cut {
            return Err(Error::IllConditionedClustering { gap: s / smax });
        }
        let gap = prev.map_or(f64::INFINITY, |p| p - s);
        if gap <= cut {
            clusters.last_mut().expect("gap implies a cluster").push((s, v));
        } else if gap <= 10.0 * cut {
            return Err(Error::IllConditionedClustering { gap: gap / smax });
        } else {
            clusters.push(vec![(s, v)]);
        }
        prev = Some(s);
    }

    let mut blocks = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        if cluster.len() % 2 == 1 {
            return Err(Error::DegenerateSpectrum(format!(
                "unpaired singular value {:e}",
                cluster[0].0
            )));
        }
        let theta = cluster.iter().map(|(s, _)| s).sum::<f64>() / cluster.len() as f64;
        let span: Vec<DVector<f64>> = cluster.into_iter().map(|(_, v)| v).collect();
        blocks.push(pair_up(j, theta, span)?);
    }
    // the kernel is orthogonal to the planes already; tidy it up anyway
    let kernel_basis = gram_schmidt(kernel);
    let dec = SpectralDecomposition {
        dim,
        blocks,
        kernel_basis,
    };
    verify(j, &dec, tol)?;
    Ok(dec)
}

/// Builds `(e, f = J e / theta)` pairs spanning the cluster subspace.
fn pair_up(j: &DMatrix<f64>, theta: f64, span: Vec<DVector<f64>>) -> Result<FrequencyBlock> {
    let target = span.len() / 2;
    let mut chosen: Vec<DVector<f64>> = Vec::with_capacity(span.len());
    let mut pairs = Vec::with_capacity(target);
    while pairs.len() < target {
        let mut best: Option<DVector<f64>> = None;
        for v in &span {
            let r = orthogonalize(v.clone(), &chosen);
            if best.as_ref().is_none_or(|b| r.norm() > b.norm()) {
                best = Some(r);
            }
        }
        let e = best.expect("nonempty cluster").normalize();
        let f = orthogonalize(j * &e / theta, std::slice::from_ref(&e));
        let fnorm = f.norm();
        if fnorm < 0.5 {
            return Err(Error::DegenerateSpectrum(
                "cluster subspace is not invariant".into(),
            ));
        }
        let f = f / fnorm;
        let f = orthogonalize(f, &chosen).normalize();
        chosen.push(e.clone());
        chosen.push(f.clone());
        pairs.push((e, f));
    }
    Ok(FrequencyBlock {
        frequency: theta,
        pairs,
    })
}

fn orthogonalize(mut v: DVector<f64>, against: &[DVector<f64>]) -> DVector<f64> {
    // two passes keep the result orthogonal to working precision
    for _ in 0..2 {
        for u in against {
            let c = u.dot(&v);
            v.axpy(-c, u, 1.0);
        }
    }
    v
}

fn gram_schmidt(vs: Vec<DVector<f64>>) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(vs.len());
    for v in vs {
        let r = orthogonalize(v, &out);
        out.push(r.normalize());
    }
    out
}

fn verify(j: &DMatrix<f64>, dec: &SpectralDecomposition, tol: f64) -> Result<()> {
    let scale = j.norm().max(f64::MIN_POSITIVE);
    let bound = 100.0 * tol * scale + 1e-12 * scale;
    for b in &dec.blocks {
        for (e, f) in &b.pairs {
            let r1 = (j * e - f * b.frequency).norm();
            let r2 = (j * f + e * b.frequency).norm();
            if r1.max(r2) > bound {
                return Err(Error::Verification(format!(
                    "invariant plane residual {:e} at frequency {:e}",
                    r1.max(r2),
                    b.frequency
                )));
            }
        }
    }
    for k in &dec.kernel_basis {
        let r = (j * k).norm();
        if r > bound {
            return Err(Error::Verification(format!("kernel residual {r:e}")));
        }
    }
    Ok(())
}

/// `e^{tJ}` from the spectral decomposition of `J`.
pub fn matrix_exp_skew(j: &DMatrix<f64>, t: f64) -> Result<DMatrix<f64>> {
    Ok(skew_spectrum(j, DEFAULT_CLUSTER_TOL)?.exp(t))
}

/// Matrix exponential by scaling and squaring a truncated Taylor series.
/// Independent of the spectral route; works for any square matrix.
pub fn expm_series(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = a.norm();
    let mut squarings = 0u32;
    while norm / 2f64.powi(squarings as i32) > 0.5 {
        squarings += 1;
    }
    let b = a / 2f64.powi(squarings as i32);
    let mut term = DMatrix::identity(n, n);
    let mut sum = DMatrix::identity(n, n);
    for k in 1..=20 {
        term = &term * &b / k as f64;
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CenterVector, GraphLieAlgebra};
    use crate::graph::named::*;
    use crate::sampling;
    use rand::Rng;

    fn random_skew(n: usize, seed: u64) -> DMatrix<f64> {
        let mut rng = sampling::rng(seed, 0);
        let mut j = DMatrix::zeros(n, n);
        for r in 0..n {
            for c in r + 1..n {
                let v: f64 = rng.random_range(-1.0..1.0);
                j[(r, c)] = v;
                j[(c, r)] = -v;
            }
        }
        j
    }

    fn spectrum_of(g: crate::graph::DirectedGraph, z: &[f64]) -> SpectralDecomposition {
        let alg = GraphLieAlgebra::new(g).unwrap();
        let j = alg.j_matrix(&CenterVector(z.to_vec()));
        skew_spectrum(&j, DEFAULT_CLUSTER_TOL).unwrap()
    }

    #[test]
    fn star_has_one_frequency() {
        let dec = spectrum_of(star(3), &[1.0, 2.0, 2.0]);
        assert_eq!(dec.multiplicities(), [1]);
        assert!((dec.frequencies()[0] - 3.0).abs() < 1e-12);
        assert_eq!(dec.kernel_dim(), 2);
    }

    #[test]
    fn path4_golden_frequencies() {
        let dec = spectrum_of(path4(), &[1.0, 1.0, 1.0]);
        let s5 = 5f64.sqrt();
        let f = dec.frequencies();
        assert_eq!(f.len(), 2);
        assert!((f[0] - (s5 + 1.0) / 2.0).abs() < 1e-12);
        assert!((f[1] - (s5 - 1.0) / 2.0).abs() < 1e-12);
        assert_eq!(dec.kernel_dim(), 0);

        let dec = spectrum_of(path4(), &[1.0, 0.0, 1.0]);
        assert_eq!(dec.multiplicities(), [2]);
        assert!((dec.frequencies()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn even_cycle_on_odd_edges() {
        let dec = spectrum_of(cycle(6), &[3.0, 0.0, -1.5, 0.0, 2.0, 0.0]);
        let f = dec.frequencies();
        assert_eq!(dec.kernel_dim(), 0);
        for (got, want) in f.iter().zip([3.0, 2.0, 1.5]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_and_empty_matrices() {
        let dec = skew_spectrum(&DMatrix::zeros(3, 3), 1e-8).unwrap();
        assert_eq!(dec.kernel_dim(), 3);
        assert!(dec.blocks.is_empty());
        let dec = skew_spectrum(&DMatrix::zeros(0, 0), 1e-8).unwrap();
        assert_eq!(dec.kernel_dim(), 0);
    }

    #[test]
    fn rejects_non_skew() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert!(matches!(skew_spectrum(&m, 1e-8), Err(Error::ContractViolation(_))));
    }

    #[test]
    fn ambiguous_clustering_is_reported() {
        // frequencies 1 and 1 + 5e-8: gap between tol and 10 tol
        let mut j = DMatrix::zeros(4, 4);
        j[(1, 0)] = 1.0;
        j[(0, 1)] = -1.0;
        j[(3, 2)] = 1.0 + 5e-8;
        j[(2, 3)] = -(1.0 + 5e-8);
        assert!(matches!(
            skew_spectrum(&j, 1e-8),
            Err(Error::IllConditionedClustering { .. })
        ));
        j[(3, 2)] = 1.0 + 1e-10;
        j[(2, 3)] = -(1.0 + 1e-10);
        assert_eq!(skew_spectrum(&j, 1e-8).unwrap().multiplicities(), [2]);
    }

    #[test]
    fn decomposition_invariants_on_random_matrices() {
        for n in 1..=12 {
            let j = random_skew(n, n as u64);
            let dec = skew_spectrum(&j, DEFAULT_CLUSTER_TOL).unwrap();
            assert_eq!(dec.kernel_dim() + 2 * dec.multiplicities().iter().sum::<usize>(), n);
            assert_eq!(dec.kernel_dim() % 2, n % 2);
            assert!((dec.reconstruct() - &j).norm() <= 1e-9 * j.norm());
            let j2 = &j * &j;
            for (k, b) in dec.blocks.iter().enumerate() {
                let p = dec.block_projector(k);
                let lhs = &j2 * &p;
                assert!((lhs + &p * b.frequency.powi(2)).norm() < 1e-9);
                assert!((dec.kernel_projector() * &p).norm() < 1e-9);
            }
            let total = dec.kernel_projector()
                + (0..dec.blocks.len()).map(|k| dec.block_projector(k)).fold(DMatrix::zeros(n, n), |a, b| a + b);
            assert!((total - DMatrix::<f64>::identity(n, n)).norm() < 1e-9);
        }
    }

    #[test]
    fn exponential_routes_agree() {
        let j = random_skew(6, 99);
        let spectral = matrix_exp_skew(&j, 1.0).unwrap();
        let series = expm_series(&j);
        assert!((&spectral - series).norm() < 1e-10);
        let orth = spectral.transpose() * &spectral - DMatrix::<f64>::identity(6, 6);
        assert!(orth.norm() < 1e-12 * 6.0);
        assert!((matrix_exp_skew(&j, 0.0).unwrap() - DMatrix::<f64>::identity(6, 6)).norm() < 1e-13);
    }

    #[test]
    fn k3_full_turn_is_identity() {
        let alg = GraphLieAlgebra::new(k3()).unwrap();
        let z = CenterVector(vec![0.3, -1.1, 0.4]);
        let j = alg.j_matrix(&z);
        let e = matrix_exp_skew(&j, 2.0 * std::f64::consts::PI / z.norm()).unwrap();
        assert!((e - DMatrix::<f64>::identity(3, 3)).norm() < 1e-12);
    }

    #[test]
    fn block_operators() {
        let dec = spectrum_of(k2(), &[2.0]);
        let b = &dec.blocks[0];
        let x = DVector::from_vec(vec![0.3, -0.7]);
        let jx = b.apply_j(&x);
        let back = b.apply_j_inverse(&jx);
        assert!((back - &x).norm() < 1e-14);
        let quarter = b.rotate(std::f64::consts::FRAC_PI_4, &x);
        assert!((quarter - &jx / 2.0).norm() < 1e-14);
    }
}
