//! Exact integration over S^3 and the L^2 inner product `<x, y> = ∫ x conj(y) dV`.
//!
//! The measure is normalized to total mass 1. The contact volume form differs
//! from it by a positive constant, so signs, vanishing and definiteness are
//! unaffected.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::{Monomial, SpherePoly};
use crate::scalar::GaussianRational;

/// Positive normalization of the volume measure (total mass of S^3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    normalization: GaussianRational,
}

impl Default for Measure {
    fn default() -> Self {
        Measure { normalization: GaussianRational::one() }
    }
}

impl Measure {
    pub fn unit() -> Self {
        Self::default()
    }

    /// `None` unless `mass` is real and positive.
    pub fn with_mass(mass: GaussianRational) -> Option<Self> {
        (mass.is_real() && mass.re > BigRational::zero()).then_some(Measure { normalization: mass })
    }

    pub fn mass(&self) -> &GaussianRational {
        &self.normalization
    }

    pub fn integrate_monomial(&self, m: &Monomial) -> GaussianRational {
        let v = monomial_moment(m);
        if v.is_zero() {
            return GaussianRational::zero();
        }
        &self.normalization * &GaussianRational::real(v)
    }

    pub fn integrate(&self, x: &SpherePoly) -> GaussianRational {
        x.terms().map(|(m, c)| c * &self.integrate_monomial(m)).sum()
    }

    /// `∫ x conj(y) dV`, linear in `x`, conjugate-linear in `y`.
    pub fn inner(&self, x: &SpherePoly, y: &SpherePoly) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        // Only pairs with matching exponents survive, so avoid forming the
        // full product: the term x_m * conj(y_n) integrates to nonzero only
        // when m * conj(n) is balanced.
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                let prod = mx.mul(&my.conj());
                if prod.a != prod.c || prod.b != prod.d {
                    continue;
                }
                acc += &(&(cx * &cy.conj()) * &self.integrate_monomial(&prod));
            }
        }
        acc
    }

    pub fn norm_sqr(&self, x: &SpherePoly) -> BigRational {
        self.inner(x, x).re
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `∫ |z1|^{2a} |z2|^{2b} dV = a! b! / (a + b + 1)!` on the unit-mass sphere;
/// zero for unbalanced exponents.
fn monomial_moment(m: &Monomial) -> BigRational {
    if m.a != m.c || m.b != m.d {
        return BigRational::zero();
    }
    BigRational::new(factorial(m.a) * factorial(m.b), factorial(m.a + m.b + 1))
}

pub fn integrate_monomial(m: &Monomial) -> GaussianRational {
    Measure::unit().integrate_monomial(m)
}

pub fn integrate(x: &SpherePoly) -> GaussianRational {
    Measure::unit().integrate(x)
}

pub fn inner(x: &SpherePoly, y: &SpherePoly) -> GaussianRational {
    Measure::unit().inner(x, y)
}

pub fn norm_sqr(x: &SpherePoly) -> BigRational {
    Measure::unit().norm_sqr(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: with s = |z1|^2 the moment reduces to
    /// ∫_0^1 s^a (1 - s)^b ds (the pushforward of the unit-mass measure is
    /// Lebesgue on [0, 1]); expand (1 - s)^b binomially and integrate term by
    /// term.
    fn beta_oracle(a: u32, b: u32) -> BigRational {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for k in 0..=b {
            let term = BigRational::new(binom.clone(), BigInt::from(a + k + 1));
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
            binom = binom * BigInt::from(b - k) / BigInt::from(k + 1);
        }
        acc
    }

    #[test]
    fn moments_match_beta_oracle() {
        for a in 0..7 {
            for b in 0..7 {
                let m = Monomial::new(a, b, a, b);
                assert_eq!(integrate_monomial(&m).re, beta_oracle(a, b), "a={a} b={b}");
            }
        }
        // frozen values from the oracle
        assert_eq!(integrate_monomial(&Monomial::new(1, 0, 1, 0)), GaussianRational::ratio(1, 2));
        assert_eq!(integrate_monomial(&Monomial::new(1, 1, 1, 1)), GaussianRational::ratio(1, 6));
    }

    #[test]
    fn unbalanced_monomials_vanish() {
        assert!(integrate_monomial(&Monomial::new(1, 0, 0, 1)).is_zero());
        assert!(integrate_monomial(&Monomial::new(2, 0, 1, 0)).is_zero());
    }

    #[test]
    fn basic_inner_products() {
        assert_eq!(inner(&SpherePoly::z1(), &SpherePoly::z1()), GaussianRational::ratio(1, 2));
        assert!(inner(&SpherePoly::z1(), &SpherePoly::z2()).is_zero());
        assert_eq!(inner(&SpherePoly::one(), &SpherePoly::one()), GaussianRational::one());
        assert_eq!(integrate(&SpherePoly::r2()), GaussianRational::one());
    }

    #[test]
    fn inner_matches_integral_of_product() {
        let i = GaussianRational::i();
        let x = SpherePoly::z1() * SpherePoly::z2c() + SpherePoly::z1c().scale(&i);
        let y = SpherePoly::z1() * SpherePoly::z2c().scale_int(3) - SpherePoly::z2c();
        assert_eq!(inner(&x, &y), integrate(&(&x * &y.conj())));
        assert_eq!(inner(&x, &y), inner(&y, &x).conj());
    }

    #[test]
    fn scaled_measure() {
        let mu = Measure::with_mass(GaussianRational::from_int(2)).unwrap();
        assert_eq!(mu.inner(&SpherePoly::z1(), &SpherePoly::z1()), GaussianRational::one());
        assert!(Measure::with_mass(GaussianRational::from_int(-1)).is_none());
        assert!(Measure::with_mass(GaussianRational::i()).is_none());
    }
}
