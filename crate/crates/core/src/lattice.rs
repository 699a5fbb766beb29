//! The standard lattice `Lambda = span_{2 pi Z}(S u E)`, rational velocities
//! and exact closed geodesics for algebras whose `j(Z)` has one frequency.
//!
//! When `j(Z)` has the single frequency `|Z|`, the exponential `e^{omega j(Z)}`
//! is the identity at `omega = 2 pi / |Z|`, every transcendental term of the
//! geodesic drops out, and the first hit is `omega Y` with `Y` rational in the
//! data of `xi`. Some multiple `m Y / |Z|` is then integral.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{mat_vec, CenterVector, GraphLieAlgebra, LogPoint};
use crate::approx::best_rational;
use crate::error::{Error, Result};
use crate::exact::{from_f64, int, lcm_of_denominators, sqrt_exact, to_f64, Rational};
use crate::geodesic::{periodic_translation_check, InitialVelocity};

/// Numeric bound on the translation residual of a closed geodesic.
pub const TRANSLATION_TOL: f64 = 1e-8;

/// Times at which the translation by the hit is checked.
const CHECK_TIMES: [f64; 6] = [0.0, 0.3, 1.0, 1.7, 2.9, 4.4];

/// A point offered for lattice membership.
#[derive(Debug, Clone, PartialEq)]
pub enum LatticeCandidate {
    /// `A = 2 pi c`, given by the rational coefficients `c`.
    TwoPiMultiple(LogPoint<Rational>),
    /// Floating-point coordinates; membership cannot be decided.
    Float(LogPoint<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardLattice {
    dim_v: usize,
    dim_z: usize,
}

impl StandardLattice {
    pub fn new(alg: &GraphLieAlgebra) -> Self {
        StandardLattice {
            dim_v: alg.dim_v(),
            dim_z: alg.dim_z(),
        }
    }

    pub fn contains(&self, a: &LatticeCandidate) -> Result<bool> {
        let c = match a {
            LatticeCandidate::Float(_) => return Err(Error::ExactPathRequired),
            LatticeCandidate::TwoPiMultiple(c) => c,
        };
        if c.v.len() != self.dim_v || c.z.len() != self.dim_z {
            return Err(Error::DimensionMismatch {
                expected: self.dim_v + self.dim_z,
                got: c.v.len() + c.z.len(),
            });
        }
        Ok(c.v.iter().chain(&c.z).all(|x| x.is_integer()))
    }
}

/// `xi = X + r Z` with rational data and `|Z|` rational.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalVelocity {
    pub x: Vec<Rational>,
    pub r: Rational,
    pub z: Vec<Rational>,
}

impl RationalVelocity {
    /// Velocity with `r = 1`, the center component taken as given.
    pub fn from_parts(x: Vec<Rational>, z: Vec<Rational>) -> Self {
        RationalVelocity {
            x,
            r: Rational::one(),
            z,
        }
    }

    pub fn from_coordinates(alg: &GraphLieAlgebra, coords: &[Rational]) -> Result<Self> {
        let expected = alg.dim_v() + alg.dim_z();
        if coords.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: coords.len(),
            });
        }
        let (x, z) = coords.split_at(alg.dim_v());
        Ok(Self::from_parts(x.to_vec(), z.to_vec()))
    }

    /// The center component `r Z`.
    pub fn center(&self) -> Vec<Rational> {
        self.z.iter().map(|a| a * &self.r).collect()
    }

    /// `|r Z|`, when rational.
    pub fn center_norm(&self) -> Result<Rational> {
        let zz = self.z.iter().fold(Rational::zero(), |acc, a| acc + a * a);
        let n = sqrt_exact(&zz).ok_or(Error::NonRationalNorm)?;
        Ok(n * self.r.abs())
    }

    pub fn to_float(&self) -> InitialVelocity {
        InitialVelocity::new(
            self.x.iter().map(to_f64).collect(),
            self.center().iter().map(to_f64).collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedGeodesic {
    /// Smallest `m` with `log gamma(m omega) in Lambda`.
    pub m: BigInt,
    /// `omega = 2 pi / |r Z|`.
    pub omega: f64,
    /// First hit divided by `2 pi`.
    pub first_hit: LogPoint<Rational>,
    /// `log gamma(m omega) / (2 pi)`, integral.
    pub hit: LogPoint<Rational>,
    pub translation_residual: f64,
}

impl ClosedGeodesic {
    pub fn candidate(&self) -> LatticeCandidate {
        LatticeCandidate::TwoPiMultiple(self.hit.clone())
    }
}

/// Exact first hit divided by `2 pi` and the least `m` making its multiple
/// integral, with `omega = 2 pi / |r Z|`.
///
/// Accepts any algebra for which `j(rZ)` has the single frequency `|rZ|`,
/// checked exactly as `j^3 = -|rZ|^2 j`; stars and `K3` have this for every
/// `Z`.
pub fn exact_first_hit(alg: &GraphLieAlgebra, xi: &RationalVelocity) -> Result<(LogPoint<Rational>, BigInt, Rational)> {
    alg.check_point(&LogPoint::new(xi.x.clone(), xi.z.clone()))?;
    let cv = CenterVector(xi.center());
    let nn = cv.norm_squared();
    if nn.is_zero() {
        return Err(Error::NotInUz("center component is zero".into()));
    }
    let j = alg.j_matrix(&cv);
    let j2 = &j * &j;
    let j3 = &j2 * &j;
    if j3 + j.map(|a| a * &nn) != j.map(|_| Rational::zero()) {
        return Err(Error::WrongAlgebra(
            "j(Z) has more than one frequency; no exact first hit".into(),
        ));
    }
    let norm = xi.center_norm()?;
    // kernel projection P0 = I + j^2 / |Z|^2
    let j2x = mat_vec(&j2, &xi.x);
    let v1: Vec<Rational> = xi.x.iter().zip(&j2x).map(|(a, b)| a + b / &nn).collect();
    if v1.iter().all(Zero::is_zero) {
        return Err(Error::NotInUz("X has no component in ker j(Z)".into()));
    }
    let v2: Vec<Rational> = xi.x.iter().zip(&v1).map(|(a, b)| a - b).collect();
    // j^{-1} V2 = -j V2 / |Z|^2
    let w: Vec<Rational> = mat_vec(&j, &v2).into_iter().map(|a| -a / &nn).collect();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let yz = cv
        .add(&alg.bracket_v(&v1, &w))
        .add(&alg.bracket_v(&w, &v2).scale(&half));

    let first_hit = LogPoint::new(v1, yz.0).scale(&norm.recip());
    let m = lcm_of_denominators(first_hit.v.iter().chain(&first_hit.z));
    Ok((first_hit, m, norm))
}

/// [`exact_first_hit`] followed by the numeric translation check at
/// `m omega`. The check is limited by double precision: it degrades once
/// `m` is in the billions.
pub fn closed_geodesic_search(alg: &GraphLieAlgebra, xi: &RationalVelocity) -> Result<ClosedGeodesic> {
    let (first_hit, m, norm) = exact_first_hit(alg, xi)?;
    let hit = first_hit.scale(&Rational::from_integer(m.clone()));
    let omega = TAU / to_f64(&norm);
    let mf = m.to_f64().unwrap_or(f64::INFINITY);
    let translation_residual = periodic_translation_check(alg, &xi.to_float(), omega, mf, &CHECK_TIMES)?;
    if translation_residual.is_nan() || translation_residual > TRANSLATION_TOL {
        return Err(Error::Verification(format!(
            "translation residual {translation_residual:e} at m = {m}"
        )));
    }
    Ok(ClosedGeodesic {
        m,
        omega,
        first_hit,
        hit,
        translation_residual,
    })
}

fn dist_sq(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| {
        let d = x - y;
        acc + &d * &d
    })
}

/// Largest denominator bound tried before giving up on an approximation.
const MAX_DENOMINATOR_BITS: u32 = 62;

/// A rational vector with rational norm within `eps` of `u`.
///
/// The direction of `u` is stereographically projected from the pole
/// opposite its last coordinate, the projection is rounded to rationals with
/// growing denominators, and the inverse projection gives a rational point of
/// the unit sphere; the length is rounded the same way. Fails only when `eps`
/// is below the floating-point resolution of `u`.
pub fn rational_sphere_point(u: &[f64], eps: f64) -> Result<Vec<Rational>> {
    assert!(!u.is_empty(), "empty vector");
    assert!(eps > 0.0, "eps must be positive");
    let exact: Vec<Rational> = u.iter().map(|&x| from_f64(x)).collect();
    let len_sq = exact.iter().fold(Rational::zero(), |acc, x| acc + x * x);
    assert!(!len_sq.is_zero(), "u must be nonzero");
    if sqrt_exact(&len_sq).is_some() {
        return Ok(exact);
    }
    let eps_sq = from_f64(eps) * from_f64(eps);

    let n = u.len();
    let len = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    let last = u[n - 1] / len;
    let south = last >= 0.0;
    // the pole is -e_n when projecting an upper point, +e_n otherwise
    let t: Vec<f64> = u[..n - 1]
        .iter()
        .map(|x| (x / len) / (1.0 + last.abs()))
        .collect();

    for bits in 0..=MAX_DENOMINATOR_BITS {
        let bound = BigInt::one() << bits;
        let tr: Vec<Rational> = t.iter().map(|&x| best_rational(&from_f64(x), &bound)).collect();
        let tt = tr.iter().fold(Rational::zero(), |acc, x| acc + x * x);
        let denom = int(1) + &tt;
        let mut w: Vec<Rational> = tr.iter().map(|x| int(2) * x / &denom).collect();
        let tail = (int(1) - &tt) / &denom;
        w.push(if south { tail } else { -tail });
        let s = best_rational(&from_f64(len), &bound);
        let scaled: Vec<Rational> = w.iter().map(|x| x * &s).collect();
        if dist_sq(&scaled, &exact) < eps_sq && !s.is_zero() {
            return Ok(scaled);
        }
    }
    Err(Error::Verification(format!(
        "no rational sphere point within {eps:e} at denominators up to 2^{MAX_DENOMINATOR_BITS}"
    )))
}

/// A rational velocity with rational `|Z|` within `eps` of `xi0`, ready for
/// [`closed_geodesic_search`].
pub fn dense_family_generator(alg: &GraphLieAlgebra, xi0: &InitialVelocity, eps: f64) -> Result<RationalVelocity> {
    alg.check_point(&xi0.as_log_point())?;
    if xi0.z.is_zero() {
        return Err(Error::NotInUz("center component is zero".into()));
    }
    let half = eps / 2.0;
    let z = rational_sphere_point(&xi0.z.0, half)?;
    let target: Vec<Rational> = xi0.x.iter().map(|&v| from_f64(v)).collect();
    let half_sq = from_f64(half) * from_f64(half);
    let mut x = None;
    for bits in 0..=MAX_DENOMINATOR_BITS {
        let bound = BigInt::one() << bits;
        let cand: Vec<Rational> = target.iter().map(|v| best_rational(v, &bound)).collect();
        if dist_sq(&cand, &target) < half_sq {
            x = Some(cand);
            break;
        }
    }
    let x = x.ok_or_else(|| Error::Verification("could not approximate X".into()))?;
    let xi = RationalVelocity::from_parts(x, z);

    let v1 = crate::geodesic::Geodesic::new(alg, &xi.to_float())?
        .split()
        .v1
        .norm();
    if v1 <= crate::geodesic::UZ_TOL {
        return Err(Error::NotInUz(
            "approximation has no kernel component; move the target off the u_Z boundary".into(),
        ));
    }
    Ok(xi)
}

/// Formats `2 pi c` as `"0"`, `"2pi"`, `"-6pi"` or `"3/2pi"`.
pub fn format_two_pi_multiple(c: &Rational) -> String {
    let v = c * int(2);
    if v.is_zero() {
        "0".to_string()
    } else if v.is_integer() {
        format!("{}pi", v.numer())
    } else {
        format!("{}/{}pi", v.numer(), v.denom())
    }
}
