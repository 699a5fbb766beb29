use std::fmt;

use crate::algebra::GraphLieAlgebra;
use crate::graph::Matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityKind {
    Nonsingular,
    AlmostNonsingular,
    Singular,
}

impl SingularityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SingularityKind::Nonsingular => "nonsingular",
            SingularityKind::AlmostNonsingular => "almost_nonsingular",
            SingularityKind::Singular => "singular",
        }
    }
}

impl fmt::Display for SingularityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityReason {
    /// The graph is `K2`, whose algebra is Heisenberg.
    K2,
    OddVertexCount,
    IsolatedVertex,
    NoPerfectMatching,
}

impl SingularityReason {
    pub fn as_str(self) -> &'static str {
        match self {
            SingularityReason::K2 => "k2",
            SingularityReason::OddVertexCount => "odd_vertex_count",
            SingularityReason::IsolatedVertex => "isolated_vertex",
            SingularityReason::NoPerfectMatching => "no_perfect_matching",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityVerdict {
    pub kind: SingularityKind,
    pub witness: Option<Matching>,
    pub reason: Option<SingularityReason>,
}

/// Nonsingular exactly for `K2`; otherwise almost nonsingular exactly when
/// the graph has a perfect matching, whose presence makes the Pfaffian of
/// `j(Z)` a nonzero polynomial in `Z`.
pub fn classify_singularity(alg: &GraphLieAlgebra) -> SingularityVerdict {
    let g = alg.graph();
    if g.vertex_count() == 2 && g.edge_count() == 1 {
        return SingularityVerdict {
            kind: SingularityKind::Nonsingular,
            witness: None,
            reason: Some(SingularityReason::K2),
        };
    }
    let singular = |reason| SingularityVerdict {
        kind: SingularityKind::Singular,
        witness: None,
        reason: Some(reason),
    };
    if g.vertex_count() % 2 == 1 {
        return singular(SingularityReason::OddVertexCount);
    }
    if !g.isolated_vertices().is_empty() {
        return singular(SingularityReason::IsolatedVertex);
    }
    match g.perfect_matching() {
        Some(m) => SingularityVerdict {
            kind: SingularityKind::AlmostNonsingular,
            witness: Some(m),
            reason: None,
        },
        None => singular(SingularityReason::NoPerfectMatching),
    }
}
