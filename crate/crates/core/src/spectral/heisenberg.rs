//! Heisenberg-like detection: every frequency of `j(Z)` is `c_i |Z|` with
//! constants independent of `Z`.

use super::{singular_values, DEFAULT_CLUSTER_TOL};
use crate::algebra::{CenterVector, GraphLieAlgebra};
use crate::graph::DirectedGraph;
use crate::sampling;

/// Stars (including `K2`) and `K3`, after dropping isolated vertices.
pub fn heisenberg_like_structural(g: &DirectedGraph) -> bool {
    let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) > 0).collect();
    if keep.is_empty() {
        return false;
    }
    let core = g.induced(&keep);
    if !core.is_connected() {
        return false;
    }
    core.is_star().is_some() || (core.vertex_count() == 3 && core.is_complete())
}

/// Frequencies of `j(Z / |Z|)` listed with multiplicity, decreasing, and the
/// kernel dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedSpectrum {
    pub constants: Vec<f64>,
    pub kernel_dim: usize,
}

impl NormalizedSpectrum {
    pub fn of(alg: &GraphLieAlgebra, z: &CenterVector) -> Self {
        let unit = z.scale(&(1.0 / z.norm()));
        let s = singular_values(&alg.j_matrix(&unit));
        let cut = DEFAULT_CLUSTER_TOL * s.first().copied().unwrap_or(0.0);
        let nonzero: Vec<f64> = s.iter().copied().filter(|&x| x > cut).collect();
        NormalizedSpectrum {
            // singular values of a skew map come in equal pairs
            constants: nonzero.chunks(2).map(|c| c.iter().sum::<f64>() / c.len() as f64).collect(),
            kernel_dim: s.len() - nonzero.len(),
        }
    }

    fn agrees(&self, other: &Self, tol: f64) -> bool {
        self.kernel_dim == other.kernel_dim
            && self.constants.len() == other.constants.len()
            && self
                .constants
                .iter()
                .zip(&other.constants)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergEvidence {
    pub heisenberg_like: bool,
    /// The common normalized spectrum, or that of the first sample on failure.
    pub spectrum: NormalizedSpectrum,
    /// First two directions whose normalized spectra disagree.
    pub disagreement: Option<(CenterVector, CenterVector)>,
}

/// Compares the normalized spectra over the given nonzero directions.
pub fn heisenberg_like_for(alg: &GraphLieAlgebra, directions: &[CenterVector], tol: f64) -> HeisenbergEvidence {
    assert!(!directions.is_empty(), "need at least one direction");
    let first = NormalizedSpectrum::of(alg, &directions[0]);
    for z in &directions[1..] {
        if !NormalizedSpectrum::of(alg, z).agrees(&first, tol) {
            return HeisenbergEvidence {
                heisenberg_like: false,
                spectrum: first,
                disagreement: Some((directions[0].clone(), z.clone())),
            };
        }
    }
    HeisenbergEvidence {
        heisenberg_like: true,
        spectrum: first,
        disagreement: None,
    }
}

pub fn heisenberg_like_sampled(alg: &GraphLieAlgebra, samples: usize, seed: u64, tol: f64) -> HeisenbergEvidence {
    assert!(samples >= 2, "need at least two samples");
    let dirs: Vec<CenterVector> = (0..samples)
        .map(|i| CenterVector(sampling::unit_vector(&mut sampling::rng(seed, i as u64), alg.dim_z())))
        .collect();
    heisenberg_like_for(alg, &dirs, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn structural_cases() {
        assert!(heisenberg_like_structural(&star(4)));
        assert!(heisenberg_like_structural(&k2()));
        assert!(heisenberg_like_structural(&DirectedGraph::new(4, &[(0, 1), (1, 2), (0, 2)]).unwrap()));
        assert!(!heisenberg_like_structural(&k4()));
        assert!(!heisenberg_like_structural(&path4()));
        assert!(!heisenberg_like_structural(&DirectedGraph::new(4, &[(0, 1), (2, 3)]).unwrap()));
    }

    #[test]
    fn sampled_star() {
        let alg = GraphLieAlgebra::new(star(3)).unwrap();
        let ev = heisenberg_like_sampled(&alg, 100, 1, 1e-8);
        assert!(ev.heisenberg_like);
        assert_eq!(ev.spectrum.kernel_dim, 2);
        assert_eq!(ev.spectrum.constants.len(), 1);
        assert!((ev.spectrum.constants[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn path_witnesses() {
        let alg = GraphLieAlgebra::new(path4()).unwrap();
        let dirs = [CenterVector(vec![1.0, 0.0, 1.0]), CenterVector(vec![1.0, 1.0, 1.0])];
        let ev = heisenberg_like_for(&alg, &dirs, 1e-8);
        assert!(!ev.heisenberg_like);
        let h = 0.5f64.sqrt();
        assert!(ev.spectrum.constants.iter().all(|c| (c - h).abs() < 1e-12));
        let other = NormalizedSpectrum::of(&alg, &dirs[1]);
        let s5 = 5f64.sqrt();
        let s3 = 3f64.sqrt();
        assert!((other.constants[0] - (s5 + 1.0) / (2.0 * s3)).abs() < 1e-12);
        assert!((other.constants[1] - (s5 - 1.0) / (2.0 * s3)).abs() < 1e-12);
        assert!(!heisenberg_like_sampled(&alg, 2, 0, 1e-8).heisenberg_like);
    }

    #[test]
    fn disjoint_k2s_change_kernel() {
        let alg = GraphLieAlgebra::new(DirectedGraph::new(4, &[(0, 1), (2, 3)]).unwrap()).unwrap();
        let a = NormalizedSpectrum::of(&alg, &CenterVector(vec![1.0, 0.0]));
        let b = NormalizedSpectrum::of(&alg, &CenterVector(vec![1.0, 1.0]));
        assert!(a.kernel_dim > b.kernel_dim);
        assert!(!heisenberg_like_sampled(&alg, 10, 0, 1e-8).heisenberg_like);
    }
}
