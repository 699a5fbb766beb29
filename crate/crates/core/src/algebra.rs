//! The metric 2-step nilpotent Lie algebra `n_G = V (+) z` of a directed graph.
//!
//! `V` is spanned by the vertices `X_i`, `z` by the edges `Z_k`, and an edge
//! `X_i -> X_l` labelled `Z_k` gives `[X_i, X_l] = Z_k`. The basis is
//! orthonormal. Everything here is generic over [`Scalar`] so the same code
//! runs in floating point and in exact rationals.

use std::fmt::Debug;
use std::ops::Neg;

use nalgebra::DMatrix;
use num_traits::Num;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::graph::DirectedGraph;

/// Field of coefficients: `f64` or [`Rational`].
pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> + 'static {
    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }

    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rational {
    fn to_f64(&self) -> f64 {
        crate::exact::to_f64(self)
    }
}

/// An element of the center in the edge basis `Z_1..Z_q`.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterVector<T = f64>(pub Vec<T>);

impl<T: Scalar> CenterVector<T> {
    pub fn zeros(q: usize) -> Self {
        CenterVector(vec![T::zero(); q])
    }

    pub fn basis(q: usize, k: usize) -> Self {
        let mut v = Self::zeros(q);
        v.0[k] = T::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm_squared(&self) -> T {
        self.0
            .iter()
            .fold(T::zero(), |acc, a| acc + a.clone() * a.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| a.is_zero())
    }

    pub fn scale(&self, s: &T) -> Self {
        CenterVector(self.0.iter().map(|a| a.clone() * s.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        CenterVector(zip_with(&self.0, &other.0, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        CenterVector(zip_with(&self.0, &other.0, |a, b| a - b))
    }

    pub fn to_f64(&self) -> CenterVector<f64> {
        CenterVector(self.0.iter().map(Scalar::to_f64).collect())
    }
}

impl CenterVector<f64> {
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }
}

/// A point of `N` in exponential coordinates, `log g = v + z`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogPoint<T = f64> {
    pub v: Vec<T>,
    pub z: Vec<T>,
}

impl<T: Scalar> LogPoint<T> {
    pub fn new(v: Vec<T>, z: Vec<T>) -> Self {
        LogPoint { v, z }
    }

    pub fn zeros(dim_v: usize, dim_z: usize) -> Self {
        LogPoint {
            v: vec![T::zero(); dim_v],
            z: vec![T::zero(); dim_z],
        }
    }

    /// Basis vector `X_i`.
    pub fn vertex(dim_v: usize, dim_z: usize, i: usize) -> Self {
        let mut p = Self::zeros(dim_v, dim_z);
        p.v[i] = T::one();
        p
    }

    /// Basis vector `Z_k`.
    pub fn edge(dim_v: usize, dim_z: usize, k: usize) -> Self {
        let mut p = Self::zeros(dim_v, dim_z);
        p.z[k] = T::one();
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        LogPoint {
            v: zip_with(&self.v, &other.v, |a, b| a + b),
            z: zip_with(&self.z, &other.z, |a, b| a + b),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        LogPoint {
            v: zip_with(&self.v, &other.v, |a, b| a - b),
            z: zip_with(&self.z, &other.z, |a, b| a - b),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        LogPoint {
            v: self.v.iter().map(|a| a.clone() * s.clone()).collect(),
            z: self.z.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        LogPoint {
            v: self.v.iter().cloned().map(Neg::neg).collect(),
            z: self.z.iter().cloned().map(Neg::neg).collect(),
        }
    }

    pub fn center(&self) -> CenterVector<T> {
        CenterVector(self.z.clone())
    }

    /// Coordinates in the basis `S u E`: vertices first, then edges.
    pub fn coordinates(&self) -> Vec<T> {
        self.v.iter().chain(self.z.iter()).cloned().collect()
    }

    pub fn to_f64(&self) -> LogPoint<f64> {
        LogPoint {
            v: self.v.iter().map(Scalar::to_f64).collect(),
            z: self.z.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl LogPoint<f64> {
    pub fn norm(&self) -> f64 {
        self.v
            .iter()
            .chain(self.z.iter())
            .map(|a| a * a)
            .sum::<f64>()
            .sqrt()
    }

    /// Euclidean distance in exponential coordinates.
    pub fn distance(&self, other: &Self) -> f64 {
        self.sub(other).norm()
    }
}

fn zip_with<T: Clone>(a: &[T], b: &[T], f: impl Fn(T, T) -> T) -> Vec<T> {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    a.iter()
        .zip(b)
        .map(|(x, y)| f(x.clone(), y.clone()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureConstant {
    pub edge: usize,
    pub sign: i8,
}

#[derive(Debug, Clone)]
pub struct GraphLieAlgebra {
    graph: DirectedGraph,
    // row-major dim_v x dim_v table: [X_i, X_l] = sign * Z_edge
    structure: Vec<Option<StructureConstant>>,
}

impl GraphLieAlgebra {
    pub fn new(graph: DirectedGraph) -> Result<Self> {
        if graph.edge_count() == 0 {
            return Err(Error::EdgelessGraph);
        }
        let m = graph.vertex_count();
        let mut structure = vec![None; m * m];
        for (k, e) in graph.edges().iter().enumerate() {
            structure[e.tail * m + e.head] = Some(StructureConstant { edge: k, sign: 1 });
            structure[e.head * m + e.tail] = Some(StructureConstant { edge: k, sign: -1 });
        }
        Ok(GraphLieAlgebra { graph, structure })
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn dim_v(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn dim_z(&self) -> usize {
        self.graph.edge_count()
    }

    /// `[X_i, X_l]` as a signed edge, or `None` when the vertices are not adjacent.
    pub fn structure(&self, i: usize, l: usize) -> Option<StructureConstant> {
        self.structure[i * self.dim_v() + l]
    }

    /// `[u, v]`; only the `V` parts contribute.
    pub fn bracket<T: Scalar>(&self, u: &LogPoint<T>, v: &LogPoint<T>) -> CenterVector<T> {
        self.bracket_v(&u.v, &v.v)
    }

    /// Bracket of two elements of `V`.
    pub fn bracket_v<T: Scalar>(&self, u: &[T], v: &[T]) -> CenterVector<T> {
        debug_assert_eq!(u.len(), self.dim_v());
        debug_assert_eq!(v.len(), self.dim_v());
        CenterVector(
            self.graph
                .edges()
                .iter()
                .map(|e| {
                    u[e.tail].clone() * v[e.head].clone() - u[e.head].clone() * v[e.tail].clone()
                })
                .collect(),
        )
    }

    /// Matrix of `j(Z)` on `V`: entry `(l, i)` is `<[X_i, X_l], Z>`.
    pub fn j_matrix<T: Scalar>(&self, z: &CenterVector<T>) -> DMatrix<T> {
        assert_eq!(z.len(), self.dim_z(), "center vector has wrong length");
        let m = self.dim_v();
        let mut j = DMatrix::from_element(m, m, T::zero());
        for (k, e) in self.graph.edges().iter().enumerate() {
            j[(e.head, e.tail)] = z.0[k].clone();
            j[(e.tail, e.head)] = -z.0[k].clone();
        }
        j
    }

    /// `log(exp(a) exp(b)) = a + b + [a, b] / 2`, exact in a 2-step group.
    pub fn bch_product<T: Scalar>(&self, a: &LogPoint<T>, b: &LogPoint<T>) -> LogPoint<T> {
        let br = self.bracket(a, b).scale(&T::half());
        let sum = a.add(b);
        LogPoint {
            v: sum.v,
            z: zip_with(&sum.z, &br.0, |x, y| x + y),
        }
    }

    pub fn check_point<T>(&self, p: &LogPoint<T>) -> Result<()> {
        if p.v.len() != self.dim_v() {
            return Err(Error::DimensionMismatch {
                expected: self.dim_v(),
                got: p.v.len(),
            });
        }
        if p.z.len() != self.dim_z() {
            return Err(Error::DimensionMismatch {
                expected: self.dim_z(),
                got: p.z.len(),
            });
        }
        Ok(())
    }
}

/// Matrix-vector product for plain slices.
pub fn mat_vec<T: Scalar>(m: &DMatrix<T>, x: &[T]) -> Vec<T> {
    (0..m.nrows())
        .map(|r| {
            (0..m.ncols()).fold(T::zero(), |acc, c| acc + m[(r, c)].clone() * x[c].clone())
        })
        .collect()
}
