//! Closed-form spectrum of `j(Z)` for graphs on four vertices.
//!
//! Every such graph sits inside `K4`, so `Z` is written in the six `K4`
//! slots `a_1..a_6` (pairs 12, 13, 14, 23, 24, 34) with zeros at missing
//! edges. With `alpha = |Z|^2`, `a_0 = a1 a6 + a3 a4 - a2 a5` and
//! `beta = alpha^2 - 4 a_0^2`, the frequencies are `sqrt((alpha +- sqrt beta) / 2)`.

use crate::algebra::{CenterVector, GraphLieAlgebra};
use crate::error::{Error, Result};

/// Vertex pairs of the six slots, 0-based.
const SLOTS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// `K4` slot coordinates of `Z`. An edge running from the higher to the lower
/// vertex enters with a minus sign, so `j(Z)` is the `K4` matrix at `a`.
pub fn k4_coordinates(alg: &GraphLieAlgebra, z: &CenterVector) -> Result<[f64; 6]> {
    if alg.dim_v() != 4 {
        return Err(Error::WrongAlgebra(format!(
            "expected 4 vertices, got {}",
            alg.dim_v()
        )));
    }
    let mut a = [0.0; 6];
    for (k, e) in alg.graph().edges().iter().enumerate() {
        let pair = (e.tail.min(e.head), e.tail.max(e.head));
        let slot = SLOTS.iter().position(|&p| p == pair).expect("pair of 4 vertices");
        a[slot] = if e.tail < e.head { z.0[k] } else { -z.0[k] };
    }
    Ok(a)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct K4Spectrum {
    pub alpha: f64,
    pub beta: f64,
    pub a0: f64,
    /// `(theta_plus, theta_minus)`, each of multiplicity one unless equal.
    pub frequencies: [f64; 2],
}

fn a0_of(a: &[f64; 6]) -> f64 {
    a[0] * a[5] + a[2] * a[3] - a[1] * a[4]
}

/// `d a_0 / d a_i`.
fn da0(a: &[f64; 6]) -> [f64; 6] {
    [a[5], -a[4], a[3], a[2], -a[1], a[0]]
}

pub fn k4_family_spectrum(a: &[f64; 6]) -> Result<K4Spectrum> {
    let alpha: f64 = a.iter().map(|x| x * x).sum();
    if alpha == 0.0 {
        return Err(Error::ContractViolation("Z = 0 has no K4 spectrum".into()));
    }
    let a0 = a0_of(a);
    let raw = alpha * alpha - 4.0 * a0 * a0;
    // alpha >= 2|a0| always, so only rounding can push beta below zero
    debug_assert!(raw >= -1e-12 * alpha * alpha, "beta = {raw}");
    let beta = raw.max(0.0);
    let s = beta.sqrt();
    let plus = ((alpha + s) / 2.0).sqrt();
    // (alpha - s) / 2 = 2 a0^2 / (alpha + s), free of cancellation
    let minus = a0.abs() * (2.0 / (alpha + s)).sqrt();
    Ok(K4Spectrum {
        alpha,
        beta,
        a0,
        frequencies: [plus, minus],
    })
}

fn check_domain(sp: &K4Spectrum) -> Result<()> {
    if sp.beta <= 0.0 {
        return Err(Error::DegenerateSpectrum(
            "ratio map needs beta > 0 (two distinct frequencies)".into(),
        ));
    }
    if sp.a0 == 0.0 {
        return Err(Error::DegenerateSpectrum(
            "ratio map needs alpha > sqrt(beta) (a0 != 0)".into(),
        ));
    }
    Ok(())
}

/// `g = (alpha + sqrt beta) / (alpha - sqrt beta)`, the squared ratio of the
/// two frequencies.
pub fn ratio_map_g(a: &[f64; 6]) -> Result<f64> {
    let sp = k4_family_spectrum(a)?;
    check_domain(&sp)?;
    let s = sp.beta.sqrt();
    Ok((sp.alpha + s).powi(2) / (4.0 * sp.a0 * sp.a0))
}

/// `dg/da_i = (alpha beta_i - 2 beta alpha_i) / (sqrt(beta) (alpha - sqrt beta)^2)`
/// with `alpha_i = 2 a_i` and `beta_i = 4 a_i alpha - 8 a_0 (a_0)_i`.
pub fn grad_g(a: &[f64; 6]) -> Result<[f64; 6]> {
    let sp = k4_family_spectrum(a)?;
    check_domain(&sp)?;
    let s = sp.beta.sqrt();
    let gap = 4.0 * sp.a0 * sp.a0 / (sp.alpha + s);
    let denom = s * gap * gap;
    let d0 = da0(a);
    let mut out = [0.0; 6];
    for i in 0..6 {
        let dalpha = 2.0 * a[i];
        let dbeta = 4.0 * a[i] * sp.alpha - 8.0 * sp.a0 * d0[i];
        out[i] = (sp.alpha * dbeta - 2.0 * sp.beta * dalpha) / denom;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::sampling;
    use rand::Rng;

    #[test]
    fn worked_points() {
        let sp = k4_family_spectrum(&[1.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!((sp.alpha, sp.a0, sp.beta), (2.0, 1.0, 0.0));
        assert_eq!(sp.frequencies, [1.0, 1.0]);

        let sp = k4_family_spectrum(&[1.0, 0.0, 1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!((sp.alpha, sp.a0, sp.beta), (3.0, 1.0, 5.0));
        let s5 = 5f64.sqrt();
        assert!((sp.frequencies[0] - (s5 + 1.0) / 2.0).abs() < 1e-15);
        assert!((sp.frequencies[1] - (s5 - 1.0) / 2.0).abs() < 1e-15);

        let a = [1.0, 0.0, 0.0, 0.0, 0.0, 2.0];
        let sp = k4_family_spectrum(&a).unwrap();
        assert_eq!((sp.alpha, sp.a0, sp.beta), (5.0, 2.0, 9.0));
        assert_eq!(sp.frequencies, [2.0, 1.0]);
        assert_eq!(ratio_map_g(&a).unwrap(), 4.0);
        assert!((grad_g(&a).unwrap()[0] + 8.0).abs() < 1e-14);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            ratio_map_g(&[1.0, 0.0, 0.0, 0.0, 0.0, 1.0]),
            Err(Error::DegenerateSpectrum(_))
        ));
        assert!(grad_g(&[1.0, 1.0, 0.0, 0.0, 0.0, 0.0]).is_err());
        assert!(k4_family_spectrum(&[0.0; 6]).is_err());
    }

    #[test]
    fn gradient_matches_central_differences() {
        for i in 0..50 {
            let mut rng = sampling::rng(17, i);
            let a: [f64; 6] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let grad = grad_g(&a).unwrap();
            let h = 1e-6;
            for k in 0..6 {
                let mut up = a;
                let mut dn = a;
                up[k] += h;
                dn[k] -= h;
                let fd = (ratio_map_g(&up).unwrap() - ratio_map_g(&dn).unwrap()) / (2.0 * h);
                let scale = grad.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                assert!((fd - grad[k]).abs() <= 1e-6 * scale, "{k}: {fd} vs {}", grad[k]);
            }
        }
    }

    #[test]
    fn coordinates_follow_edge_direction() {
        let alg = GraphLieAlgebra::new(k4_c4()).unwrap();
        let z = CenterVector(vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(k4_coordinates(&alg, &z).unwrap(), [1.0, 0.0, 2.0, 3.0, 0.0, 4.0]);

        let reversed = GraphLieAlgebra::new(path4().with_reversed_edge(1)).unwrap();
        let z = CenterVector(vec![1.0, 2.0, 3.0]);
        assert_eq!(k4_coordinates(&reversed, &z).unwrap(), [1.0, 0.0, 0.0, -2.0, 0.0, 3.0]);
        let j = reversed.j_matrix(&z);
        let k4 = GraphLieAlgebra::new(k4()).unwrap();
        let jk = k4.j_matrix(&CenterVector(k4_coordinates(&reversed, &z).unwrap().to_vec()));
        assert_eq!(j, jk);

        let star = GraphLieAlgebra::new(star(2)).unwrap();
        assert!(k4_coordinates(&star, &CenterVector(vec![1.0, 1.0])).is_err());
    }
}
