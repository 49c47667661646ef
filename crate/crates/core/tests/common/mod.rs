//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use cr_lab::{basis, GaussianRational, Monomial, SpherePoly};
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coeff(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let re = BigRational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into());
        let im = BigRational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into());
        let c = GaussianRational::new(re, im);
        if !num_traits::Zero::is_zero(&c) {
            return c;
        }
    }
}

/// Random monomial of bidegree `(p, q)`.
pub fn monomial(rng: &mut ChaCha8Rng, p: u32, q: u32) -> Monomial {
    let a = rng.gen_range(0..=p);
    let c = rng.gen_range(0..=q);
    Monomial::new(a, p - a, c, q - c)
}

/// Random polynomial with 1..=`terms` monomials of bidegree at most `(pmax, qmax)`.
pub fn poly(rng: &mut ChaCha8Rng, pmax: u32, qmax: u32, terms: usize) -> SpherePoly {
    let n = rng.gen_range(1..=terms);
    let mut out = SpherePoly::zero();
    while out.is_zero() {
        for _ in 0..n {
            let p = rng.gen_range(0..=pmax);
            let q = rng.gen_range(0..=qmax);
            let m = monomial(rng, p, q);
            out = out + SpherePoly::term(m, coeff(rng));
        }
    }
    out
}

/// Random element of `P_{p,q}` with every monomial present.
pub fn full_bidegree(rng: &mut ChaCha8Rng, p: u32, q: u32) -> SpherePoly {
    SpherePoly::from_terms(Monomial::of_bidegree(p, q).into_iter().map(|m| (m, coeff(rng))))
}

/// Random combination of basis elements of `H_{k,0}` and `H_{0,k}`, `k <= kmax`,
/// plus a constant when `with_constant`.
pub fn kernel_element(rng: &mut ChaCha8Rng, kmax: u32, with_constant: bool) -> SpherePoly {
    let mut out = if with_constant { SpherePoly::constant(coeff(rng)) } else { SpherePoly::zero() };
    while out.is_zero() || (!with_constant && out.as_constant().is_some()) {
        for k in 1..=kmax {
            for (p, q) in [(k, 0), (0, k)] {
                for f in &basis(p, q).elements {
                    if rng.gen_bool(0.4) {
                        out = out + f.scale(&coeff(rng));
                    }
                }
            }
        }
    }
    out
}
