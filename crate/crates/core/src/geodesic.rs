//! Geodesics through the identity in closed form, their first returns to
//! `w_Z = z (+) ker j(Z)`, and the rank of the first-hit map.
//!
//! For `xi = X + Z` with `X = V_1 + sum_k zeta_k` split along
//! `ker j(Z) (+) W_1 (+) ... (+) W_m`, and `E = e^{t j(Z)}`,
//!
//! ```text
//! X(t) = t V_1 + (E - I) j^{-1} V_2
//! Z(t) = t Z~_1 + Z~_2
//! ```
//!
//! where `j^{-1}` is the inverse on the image of `j(Z)` and `Z~_1`, `Z~_2`
//! are bracket expressions in `V_1`, `zeta_k` and `E`. [`Geodesic::at`]
//! evaluates the same closed form in a regrouping that stays accurate for
//! small frequencies.

use nalgebra::{Complex, DMatrix, DVector};

use crate::algebra::{CenterVector, GraphLieAlgebra, LogPoint};
use crate::error::{Error, Result};
use crate::spectral::{
    expm_series, resonance_period, skew_spectrum, SpectralDecomposition, DEFAULT_CLUSTER_TOL,
    DEFAULT_QMAX, DEFAULT_RESONANCE_TOL, PERIOD_TOL,
};

/// Smallest kernel component for which `xi` counts as a point of `u_Z`.
pub const UZ_TOL: f64 = 1e-12;

/// Central-difference step of the velocity oracle.
pub const VELOCITY_STEP: f64 = 1e-6;

pub const JACOBIAN_STEP: f64 = 1e-5;

/// Relative singular value below which a Jacobian direction is dropped.
pub const RANK_TOL: f64 = 1e-6;

/// `xi = X + Z` with `X` in `V` and `Z` in the center.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialVelocity {
    pub x: Vec<f64>,
    pub z: CenterVector,
}

impl InitialVelocity {
    pub fn new(x: Vec<f64>, z: Vec<f64>) -> Self {
        InitialVelocity {
            x,
            z: CenterVector(z),
        }
    }

    /// From coordinates in the basis `S u E`.
    pub fn from_coordinates(alg: &GraphLieAlgebra, coords: &[f64]) -> Result<Self> {
        let expected = alg.dim_v() + alg.dim_z();
        if coords.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: coords.len(),
            });
        }
        let (x, z) = coords.split_at(alg.dim_v());
        Ok(Self::new(x.to_vec(), z.to_vec()))
    }

    pub fn as_log_point(&self) -> LogPoint {
        LogPoint::new(self.x.clone(), self.z.0.clone())
    }

    pub fn norm(&self) -> f64 {
        self.as_log_point().norm()
    }

    fn check(&self, alg: &GraphLieAlgebra) -> Result<()> {
        alg.check_point(&self.as_log_point())
    }

    /// `V_1` and the components `zeta_k`, one per frequency of `dec`.
    pub fn split(&self, dec: &SpectralDecomposition) -> VelocitySplit {
        let x = DVector::from_column_slice(&self.x);
        VelocitySplit {
            v1: dec.project_kernel(&x),
            zetas: dec.blocks.iter().map(|b| b.project(&x)).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VelocitySplit {
    pub v1: DVector<f64>,
    pub zetas: Vec<DVector<f64>>,
}

impl VelocitySplit {
    pub fn v2(&self) -> DVector<f64> {
        let n = self.v1.len();
        self.zetas.iter().fold(DVector::zeros(n), |acc, z| acc + z)
    }
}

/// A geodesic with its spectral data computed once.
#[derive(Debug, Clone)]
pub struct Geodesic<'a> {
    alg: &'a GraphLieAlgebra,
    xi: InitialVelocity,
    dec: SpectralDecomposition,
    split: VelocitySplit,
}

impl<'a> Geodesic<'a> {
    pub fn new(alg: &'a GraphLieAlgebra, xi: &InitialVelocity) -> Result<Self> {
        xi.check(alg)?;
        let dec = skew_spectrum(&alg.j_matrix(&xi.z), DEFAULT_CLUSTER_TOL)?;
        let split = xi.split(&dec);
        Ok(Geodesic {
            alg,
            xi: xi.clone(),
            dec,
            split,
        })
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.dec
    }

    pub fn split(&self) -> &VelocitySplit {
        &self.split
    }

    fn br(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_vec(self.alg.bracket_v(u.as_slice(), v.as_slice()).0)
    }

    /// `log gamma(t)`.
    ///
    /// Same closed form as the `Z~_1`, `Z~_2` display, regrouped as
    /// `x' = E X`, `z' = Z + [x, x'] / 2` integrated block by block. Every
    /// scalar coefficient is a divided difference of `exp` at imaginary
    /// points, so nothing of size `1 / theta^2` is formed and cancelled when
    /// some frequency is small.
    pub fn at(&self, t: f64) -> LogPoint {
        let blocks = &self.dec.blocks;
        let v1 = &self.split.v1;
        let zetas = &self.split.zetas;
        let n = v1.len();
        let hats: Vec<DVector<f64>> = blocks
            .iter()
            .zip(zetas)
            .map(|(b, z)| b.apply_j(z) / b.frequency)
            .collect();
        let y: Vec<Complex<f64>> = blocks.iter().map(|b| Complex::new(0.0, b.frequency * t)).collect();
        let zero = Complex::new(0.0, 0.0);
        let t2 = t * t;

        // x = t V_1 + sum_k (int_0^t E_k) zeta_k
        let mut x = v1 * t;
        // w = sum_k int_0^t (s E_k - int_0^s E_k) zeta_k ds
        let mut w = DVector::zeros(n);
        for k in 0..blocks.len() {
            let p = phi1(y[k]) * t;
            x += &zetas[k] * p.re + &hats[k] * p.im;
            let q = (divided_difference(zero, y[k], y[k]) - divided_difference(zero, zero, y[k])) * t2;
            w += &zetas[k] * q.re + &hats[k] * q.im;
        }

        let mut z = DVector::from_column_slice(&self.xi.z.0) * t + self.br(v1, &w) * 0.5;
        // int_0^t [ (int_0^s E_i) zeta_i, E_k(s) zeta_k ] ds
        for i in 0..blocks.len() {
            for k in 0..blocks.len() {
                let plus = divided_difference(zero, y[k], y[i] + y[k]) * t2;
                let minus = divided_difference(zero, -y[k], y[i] - y[k]) * t2;
                let cc = 0.5 * (plus.re + minus.re);
                let cs = 0.5 * (plus.im - minus.im);
                let sc = 0.5 * (plus.im + minus.im);
                let ss = 0.5 * (minus.re - plus.re);
                let term = self.br(&zetas[i], &zetas[k]) * cc
                    + self.br(&zetas[i], &hats[k]) * cs
                    + self.br(&hats[i], &zetas[k]) * sc
                    + self.br(&hats[i], &hats[k]) * ss;
                z += term * 0.5;
            }
        }
        LogPoint::new(x.as_slice().to_vec(), z.as_slice().to_vec())
    }

    /// `log gamma(k omega + s)` for a full period `omega` of `e^{t j(Z)}`,
    /// with the rotation taken at `s` so that `k` can be large.
    pub fn at_after_periods(&self, k: f64, omega: f64, s: f64) -> LogPoint {
        self.display(k * omega + s, s)
    }

    /// The `Z~_1`, `Z~_2` display term by term, with the linear terms at `t`
    /// and the rotation `E` at `phase`. Loses about `eps / theta_min^2`.
    fn display(&self, t: f64, phase: f64) -> LogPoint {
        let blocks = &self.dec.blocks;
        let v1 = &self.split.v1;
        let zetas = &self.split.zetas;
        let n = v1.len();
        let c = DVector::from_column_slice(&self.xi.z.0);

        // j^{-1} zeta_k and E j^{-1} zeta_k
        let ji: Vec<DVector<f64>> = blocks.iter().zip(zetas).map(|(b, z)| b.apply_j_inverse(z)).collect();
        let eji: Vec<DVector<f64>> = blocks.iter().zip(&ji).map(|(b, v)| b.rotate(phase, v)).collect();
        let sum = |vs: &[DVector<f64>]| vs.iter().fold(DVector::zeros(n), |acc, v| acc + v);
        let ji_sum = sum(&ji);
        let eji_sum = sum(&eji);

        let x_t = v1 * t + &eji_sum - &ji_sum;

        let mut z1 = c.clone() + self.br(v1, &(&eji_sum + &ji_sum)) * 0.5;
        for (a, z) in ji.iter().zip(zetas) {
            z1 += self.br(a, z) * 0.5;
        }

        // [V_1, (I - E) j^{-2} V_2]
        let mut inner = DVector::zeros(n);
        for (b, a) in blocks.iter().zip(&ji) {
            let a2 = b.apply_j_inverse(a);
            inner += &a2 - b.rotate(phase, &a2);
        }
        let mut z2 = self.br(v1, &inner) + self.br(&eji_sum, &ji_sum) * 0.5;
        for i in 0..blocks.len() {
            let jz = blocks[i].apply_j(&zetas[i]);
            let ejz = blocks[i].rotate(phase, &jz);
            let ez_i = blocks[i].rotate(phase, &zetas[i]);
            for k in 0..blocks.len() {
                if i == k {
                    continue;
                }
                let coef = 1.0 / (blocks[k].frequency.powi(2) - blocks[i].frequency.powi(2));
                let ez_k = blocks[k].rotate(phase, &zetas[k]);
                let moving = self.br(&ejz, &eji[k]) - self.br(&ez_i, &ez_k);
                let fixed = self.br(&jz, &ji[k]) - self.br(&zetas[i], &zetas[k]);
                z2 += (fixed - moving) * (0.5 * coef);
            }
        }

        let z_t = z1 * t + z2;
        LogPoint::new(x_t.as_slice().to_vec(), z_t.as_slice().to_vec())
    }
}

/// `(e^z - 1) / z`.
fn phi1(z: Complex<f64>) -> Complex<f64> {
    if z.norm() < 0.5 {
        let mut term = Complex::new(1.0, 0.0);
        let mut sum = term;
        for n in 2..20 {
            term = term * z / n as f64;
            sum += term;
        }
        sum
    } else {
        (z.exp() - 1.0) / z
    }
}

/// `exp[a, b]`.
fn divided_difference_1(a: Complex<f64>, b: Complex<f64>) -> Complex<f64> {
    a.exp() * phi1(b - a)
}

/// `exp[z0, z1, z2]`, by the farthest pair when the points spread and by a
/// shifted Taylor series otherwise.
fn divided_difference(z0: Complex<f64>, z1: Complex<f64>, z2: Complex<f64>) -> Complex<f64> {
    let mut p = [z0, z1, z2];
    let d = |a: Complex<f64>, b: Complex<f64>| (a - b).norm();
    if d(p[0], p[1]) > d(p[0], p[2]).max(d(p[1], p[2])) {
        p.swap(1, 2);
    } else if d(p[1], p[2]) > d(p[0], p[2]) {
        p.swap(0, 1);
    }
    let [a, b, c] = p;
    if d(a, c) > 1.0 {
        return (divided_difference_1(b, c) - divided_difference_1(a, b)) / (c - a);
    }
    let mid = (a + b + c) / 3.0;
    let (a, b, c) = (a - mid, b - mid, c - mid);
    // sum_n h_n(a, b, c) / (n + 2)!
    let (mut pa, mut hab, mut habc) = (Complex::new(1.0, 0.0), Complex::new(1.0, 0.0), Complex::new(1.0, 0.0));
    let mut fact = 2.0;
    let mut sum = habc / fact;
    for n in 1..30 {
        pa *= a;
        hab = hab * b + pa;
        habc = habc * c + hab;
        fact *= (n + 2) as f64;
        sum += habc / fact;
    }
    mid.exp() * sum
}

pub fn geodesic_log(alg: &GraphLieAlgebra, xi: &InitialVelocity, t: f64) -> Result<LogPoint> {
    Ok(Geodesic::new(alg, xi)?.at(t))
}

/// Deviation of the closed form from the geodesic equations on `t_grid`.
///
/// The left-invariant velocity `A' - [A, A'] / 2` of `A(t) = log gamma(t)` is
/// formed by central differences and compared with `e^{t j(Z)} X` on `V`
/// (exponential by series), with `Z` on the center, and in norm with `xi`.
pub fn velocity_residual(alg: &GraphLieAlgebra, xi: &InitialVelocity, t_grid: &[f64]) -> Result<f64> {
    let geo = Geodesic::new(alg, xi)?;
    let j = alg.j_matrix(&xi.z);
    let x0 = DVector::from_column_slice(&xi.x);
    let speed = xi.norm();
    let h = VELOCITY_STEP;
    let mut worst = 0.0f64;
    for &t in t_grid {
        let a = geo.at(t);
        let da = geo.at(t + h).sub(&geo.at(t - h)).scale(&(0.5 / h));
        let twist = alg.bracket(&a, &da).scale(&0.5);
        let vel = LogPoint::new(da.v.clone(), CenterVector(da.z.clone()).sub(&twist).0);
        let target = expm_series(&(&j * t)) * &x0;
        let rv = (DVector::from_column_slice(&vel.v) - target).norm();
        let rz = CenterVector(vel.z.clone()).sub(&xi.z).norm();
        let rn = (vel.norm() - speed).abs();
        worst = worst.max(rv + rz + rn);
    }
    Ok(worst)
}

/// `max_t |log(gamma(omega) gamma(t)) - log gamma(t + omega)|`.
pub fn translation_check(alg: &GraphLieAlgebra, xi: &InitialVelocity, omega: f64, t_samples: &[f64]) -> Result<f64> {
    let geo = Geodesic::new(alg, xi)?;
    let n = alg.dim_v();
    let residual = (geo.decomposition().exp(omega) - DMatrix::<f64>::identity(n, n)).norm();
    if residual > PERIOD_TOL {
        return Err(Error::PeriodVerification { residual });
    }
    let phi = geo.at(omega);
    Ok(t_samples.iter().fold(0.0f64, |m, &t| {
        let lhs = alg.bch_product(&phi, &geo.at(t));
        m.max(lhs.distance(&geo.at(t + omega)))
    }))
}

/// `max_s |log(gamma(k omega) gamma(s)) - log gamma(k omega + s)|` for a
/// period `omega`, checked as in [`translation_check`] but evaluating at
/// `k omega + s` through [`Geodesic::at_after_periods`].
pub fn periodic_translation_check(
    alg: &GraphLieAlgebra,
    xi: &InitialVelocity,
    omega: f64,
    k: f64,
    t_samples: &[f64],
) -> Result<f64> {
    let geo = Geodesic::new(alg, xi)?;
    let n = alg.dim_v();
    let residual = (geo.decomposition().exp(omega) - DMatrix::<f64>::identity(n, n)).norm();
    if residual > PERIOD_TOL {
        return Err(Error::PeriodVerification { residual });
    }
    let phi = geo.at_after_periods(k, omega, 0.0);
    Ok(t_samples.iter().fold(0.0f64, |m, &s| {
        let lhs = alg.bch_product(&phi, &geo.at(s));
        m.max(lhs.distance(&geo.at_after_periods(k, omega, s)))
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FirstHit {
    pub omega: f64,
    /// `log gamma(omega)`.
    pub hit: LogPoint,
    /// Norm of the `V` part of the hit outside `ker j(Z)`.
    pub in_wz_residual: f64,
}

impl FirstHit {
    /// `log gamma(m omega) = m log gamma(omega)`.
    pub fn nth_hit(&self, m: u32) -> LogPoint {
        self.hit.scale(&f64::from(m))
    }
}

fn require_uz(xi: &InitialVelocity, geo: &Geodesic) -> Result<()> {
    if xi.z.is_zero() {
        return Err(Error::NotInUz("center component is zero".into()));
    }
    let v1 = geo.split().v1.norm();
    if v1 <= UZ_TOL {
        return Err(Error::NotInUz(format!("kernel component has norm {v1:e}")));
    }
    Ok(())
}

pub fn first_hit(alg: &GraphLieAlgebra, xi: &InitialVelocity, qmax: u64, tol: f64) -> Result<FirstHit> {
    let geo = Geodesic::new(alg, xi)?;
    require_uz(xi, &geo)?;
    let omega = resonance_period(alg, &xi.z, qmax, tol)?;
    let hit = geo.at(omega);
    let v = DVector::from_column_slice(&hit.v);
    let in_wz_residual = (&v - geo.decomposition().project_kernel(&v)).norm();
    if in_wz_residual > 1e-8 * hit.norm() {
        return Err(Error::NotInWz {
            residual: in_wz_residual,
        });
    }
    Ok(FirstHit {
        omega,
        hit,
        in_wz_residual,
    })
}

/// How the period enters the differentiated first-hit map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodMode {
    /// Each perturbed velocity uses its own period: the true first hit.
    Tracking,
    /// The period of the base point is held fixed: each perturbed hit is
    /// rescaled by `omega_0 / omega`, i.e. only the bracketed factor of
    /// `F = omega {...}` is differentiated.
    Frozen,
}

#[derive(Debug, Clone, Copy)]
pub struct JacobianOptions {
    pub step: f64,
    pub mode: PeriodMode,
    pub qmax: u64,
    pub tol: f64,
}

impl Default for JacobianOptions {
    fn default() -> Self {
        JacobianOptions {
            step: JACOBIAN_STEP,
            mode: PeriodMode::Tracking,
            qmax: DEFAULT_QMAX,
            tol: DEFAULT_RESONANCE_TOL,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FirstHitJacobian {
    /// Rows: `w_Z` coordinates (kernel basis of the base point, then the
    /// center). Columns: the `V` basis directions, then the unit center
    /// direction `Z / |Z|`.
    pub matrix: DMatrix<f64>,
    pub rank: usize,
    pub singular_values: Vec<f64>,
    /// Orthonormal basis of the null space, in the column coordinates.
    pub kernel: Vec<DVector<f64>>,
}

impl FirstHitJacobian {
    pub fn dim_wz(&self) -> usize {
        self.matrix.nrows()
    }
}

pub fn first_hit_jacobian(alg: &GraphLieAlgebra, xi: &InitialVelocity, opts: JacobianOptions) -> Result<FirstHitJacobian> {
    let base_geo = Geodesic::new(alg, xi)?;
    require_uz(xi, &base_geo)?;
    let h = opts.step;
    let v1 = base_geo.split().v1.norm();
    if v1 <= 10.0 * h {
        return Err(Error::NearDegenerate(format!(
            "kernel component {v1:e} is within 10 steps of the u_Z boundary"
        )));
    }
    let dec = base_geo.decomposition();
    let omega0 = resonance_period(alg, &xi.z, opts.qmax, opts.tol)?;
    let (m, q) = (alg.dim_v(), alg.dim_z());
    let rows = dec.kernel_dim() + q;
    let cols = m + 1;
    let unit_c: Vec<f64> = xi.z.scale(&(1.0 / xi.z.norm())).0;

    let eval = |p: &InitialVelocity| -> Result<DVector<f64>> {
        let fh = first_hit(alg, p, opts.qmax, opts.tol)?;
        let hit = match opts.mode {
            PeriodMode::Tracking => fh.hit,
            PeriodMode::Frozen => fh.hit.scale(&(omega0 / fh.omega)),
        };
        let kc = dec.kernel_coordinates(&DVector::from_column_slice(&hit.v));
        Ok(DVector::from_iterator(rows, kc.iter().copied().chain(hit.z)))
    };

    let mut jac = DMatrix::zeros(rows, cols);
    for col in 0..cols {
        let shifted = |s: f64| {
            let mut p = xi.clone();
            if col < m {
                p.x[col] += s;
            } else {
                for (zk, uk) in p.z.0.iter_mut().zip(&unit_c) {
                    *zk += s * uk;
                }
            }
            p
        };
        let d = (eval(&shifted(h))? - eval(&shifted(-h))?) / (2.0 * h);
        jac.set_column(col, &d);
    }

    let n = rows.max(cols);
    let mut square = DMatrix::zeros(n, n);
    square.view_mut((0, 0), (rows, cols)).copy_from(&jac);
    let svd = square.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let mut sv: Vec<(f64, usize)> = svd.singular_values.iter().copied().zip(0..).collect();
    sv.sort_by(|a, b| b.0.total_cmp(&a.0));
    let smax = sv[0].0;
    let cut = RANK_TOL * smax;
    let rank = sv.iter().filter(|(s, _)| *s > cut).count();
    let kernel = sv
        .iter()
        .filter(|(s, _)| *s <= cut)
        .map(|&(_, i)| v_t.row(i).transpose().rows(0, cols).into_owned())
        .filter(|v: &DVector<f64>| v.norm() > 0.5)
        .collect();
    Ok(FirstHitJacobian {
        matrix: jac,
        rank,
        singular_values: sv.iter().take(rows.min(cols)).map(|p| p.0).collect(),
        kernel,
    })
}

/// A velocity on the three-vertex path `X2 <- X1 -> X3` written as
/// `xi = b1 eta1 + b2 eta2 + b3 eta3 + r Z`, `Z = a1 Z1 + a2 Z2`, with
/// `eta1 = a2 X2 - a1 X3` spanning `ker j(Z)`, `eta2 = X1`, `eta3 = a1 X2 + a2 X3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct P3Velocity {
    pub a: [f64; 2],
    pub r: f64,
    pub b: [f64; 3],
}

impl P3Velocity {
    pub fn eta(&self) -> [[f64; 3]; 3] {
        let [a1, a2] = self.a;
        [[0.0, a2, -a1], [1.0, 0.0, 0.0], [0.0, a1, a2]]
    }

    pub fn z_norm(&self) -> f64 {
        self.a[0].hypot(self.a[1])
    }

    pub fn to_velocity(&self) -> InitialVelocity {
        let eta = self.eta();
        let x = (0..3)
            .map(|i| (0..3).map(|n| self.b[n] * eta[n][i]).sum())
            .collect();
        InitialVelocity::new(x, vec![self.r * self.a[0], self.r * self.a[1]])
    }

    /// The null direction of the fixed-period first-hit map,
    /// `delta eta2 + (b3 / r) eta3 + Z`, in the coordinates of
    /// [`FirstHitJacobian::kernel`]. `Z` is `sign(r) |Z|` times the unit
    /// center direction.
    pub fn kernel_direction(&self) -> DVector<f64> {
        let [_, b2, b3] = self.b;
        let r = self.r;
        let zz = self.z_norm().powi(2);
        let delta = (zz * r / b2) * (-1.0 - b3 * b3 / (2.0 * r * r) + b2 * b2 / (2.0 * zz * r * r));
        let eta = self.eta();
        let mut v = DVector::zeros(4);
        for i in 0..3 {
            v[i] = delta * eta[1][i] + (b3 / r) * eta[2][i];
        }
        v[3] = r.signum() * self.z_norm();
        v
    }
}

pub fn is_p3(alg: &GraphLieAlgebra) -> bool {
    let e = alg.graph().edges();
    alg.dim_v() == 3
        && e.len() == 2
        && (e[0].tail, e[0].head) == (0, 1)
        && (e[1].tail, e[1].head) == (0, 2)
}

/// `F = omega { b1 eta1 + (r + b3^2/(2r) + b2^2/(2r|Z|^2)) Z + (b1 b3 / r)(-a2 Z1 + a1 Z2) }`
/// with `omega = 2 pi / (|r| |Z|)`.
pub fn p3_first_hit_closed_form(alg: &GraphLieAlgebra, v: &P3Velocity) -> Result<LogPoint> {
    if !is_p3(alg) {
        return Err(Error::WrongAlgebra(
            "closed form needs the path X2 <- X1 -> X3".into(),
        ));
    }
    let [a1, a2] = v.a;
    let [b1, b2, b3] = v.b;
    let r = v.r;
    let zn = v.z_norm();
    if zn == 0.0 || r == 0.0 || b1 == 0.0 {
        return Err(Error::NotInUz("need Z != 0, r != 0 and b1 != 0".into()));
    }
    let omega = std::f64::consts::TAU / (r.abs() * zn);
    let eta1 = v.eta()[0];
    let coef = r + b3 * b3 / (2.0 * r) + b2 * b2 / (2.0 * r * zn * zn);
    let cross = b1 * b3 / r;
    let x = eta1.iter().map(|e| omega * b1 * e).collect();
    let z = vec![
        omega * (coef * a1 - cross * a2),
        omega * (coef * a2 + cross * a1),
    ];
    Ok(LogPoint::new(x, z))
}
