//! Best rational approximation with a bounded denominator, via continued
//! fractions and semiconvergents.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{from_f64, Rational};

/// The fraction `p/q` with `1 <= q <= max_denominator` minimising
/// `|x - p/q|`. Ties go to the smaller denominator. The result is reduced.
pub fn best_rational(x: &Rational, max_denominator: &BigInt) -> Rational {
    assert!(max_denominator >= &BigInt::one(), "denominator bound must be >= 1");
    // convergents h/k, with (h_prev, k_prev) one step behind
    let (mut h_prev, mut k_prev) = (BigInt::zero(), BigInt::one());
    let (mut h, mut k) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    loop {
        let a = rest.floor().to_integer();
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if &k_next > max_denominator {
            // largest admissible semiconvergent against the last convergent
            let t = (max_denominator - &k_prev).div_floor(&k);
            let semi = Rational::new(&h_prev + &t * &h, &k_prev + &t * &k);
            let conv = Rational::new(h, k);
            let d_semi = (x - &semi).abs();
            let d_conv = (x - &conv).abs();
            return if d_semi < d_conv { semi } else { conv };
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let frac = &rest - Rational::from_integer(a);
        if frac.is_zero() {
            return Rational::new(h, k);
        }
        rest = frac.recip();
    }
}

/// Float front end for [`best_rational`]; the float is taken at its exact
/// binary value.
pub fn best_rational_f64(x: f64, max_denominator: u64) -> Rational {
    best_rational(&from_f64(x), &BigInt::from(max_denominator))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, to_f64};
    use proptest::prelude::*;

    /// Brute force over every admissible denominator.
    fn brute(x: f64, qmax: u64) -> Rational {
        let xr = from_f64(x);
        let mut best: Option<(Rational, Rational)> = None;
        for q in 1..=qmax {
            let qb = BigInt::from(q);
            let p0 = (&xr * Rational::from_integer(qb.clone())).floor().to_integer();
            for p in [p0.clone(), p0 + 1] {
                let cand = Rational::new(p, qb.clone());
                let d = (&xr - &cand).abs();
                if best.as_ref().is_none_or(|(_, bd)| &d < bd) {
                    best = Some((cand, d));
                }
            }
        }
        best.unwrap().0
    }

    #[test]
    fn sqrt2_convergents() {
        let s = std::f64::consts::SQRT_2;
        assert_eq!(best_rational_f64(s, 50), rat(41, 29));
        assert_eq!(best_rational_f64(s, 69), rat(41, 29));
        assert_eq!(best_rational_f64(s, 70), rat(99, 70));
        assert_eq!(best_rational_f64(s, 1), rat(1, 1));
        // every approximation with q <= 50 misses by more than 1e-9
        assert!((to_f64(&best_rational_f64(s, 50)) - s).abs() > 1e-9);
    }

    #[test]
    fn exact_values_are_recovered() {
        assert_eq!(best_rational_f64(0.5, 64), rat(1, 2));
        assert_eq!(best_rational_f64(2.0 / 3.0, 64), rat(2, 3));
        assert_eq!(best_rational_f64(3.0, 5), rat(3, 1));
        assert_eq!(best_rational_f64(-0.75, 10), rat(-3, 4));
        assert_eq!(best_rational_f64(0.0, 10), rat(0, 1));
    }

    #[test]
    fn semiconvergent_is_used() {
        // pi: convergents 3, 22/7, 333/106; with q <= 100 the best is 311/99
        assert_eq!(best_rational_f64(std::f64::consts::PI, 100), rat(311, 99));
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(x in -20.0f64..20.0, qmax in 1u64..120) {
            let fast = best_rational_f64(x, qmax);
            let slow = brute(x, qmax);
            let xr = from_f64(x);
            prop_assert_eq!((&xr - &fast).abs(), (&xr - &slow).abs());
            prop_assert!(fast.denom() <= &BigInt::from(qmax));
        }
    }
}
