//! First and second variation of the Paneitz operator at the standard
//! structure, along the deformation `tφ`, and the exact integral identities
//! that control the sign of the second variation on CR and anti-CR functions.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::deformation::{deformed_operators, e_function};
use crate::error::{Error, Result};
use crate::harmonics::{basis, canonicalize, flat_laplacian};
use crate::integrate::inner;
use crate::ops::{apply_z1, apply_z1bar, grad_op, kohn, LinOp};
use crate::poly::SpherePoly;
use crate::scalar::GaussianRational;

/// `D = φ Z1Z1 + φ̄ Z1barZ1bar + φ₁ Z1 + φ̄₁̄ Z1bar`.
pub fn d_operator(phi: &SpherePoly) -> LinOp {
    let phib = phi.conj();
    LinOp::sum([
        LinOp::mul_by(phi.clone()).after(&LinOp::Z1).after(&LinOp::Z1),
        LinOp::mul_by(phib.clone()).after(&LinOp::Z1bar).after(&LinOp::Z1bar),
        LinOp::mul_by(apply_z1(phi)).after(&LinOp::Z1),
        LinOp::mul_by(apply_z1bar(&phib)).after(&LinOp::Z1bar),
    ])
}

/// `Ṗ₀ = ¼(-2D□̄ - 2□D + 4(E Z1Z1 + E₁ Z1))`.
pub fn first_variation(phi: &SpherePoly) -> LinOp {
    let d = d_operator(phi);
    let e = e_function(phi);
    LinOp::sum([
        d.after(&LinOp::conj_kohn()).scaled_int(-2),
        LinOp::kohn().after(&d).scaled_int(-2),
        LinOp::mul_by(e.clone()).after(&LinOp::Z1).after(&LinOp::Z1).scaled_int(4),
        LinOp::mul_by(apply_z1(&e)).after(&LinOp::Z1).scaled_int(4),
    ])
    .scaled_ratio(1, 4)
}

/// `4P̈₀` without the `8D²` term.
fn remainder_terms(phi: &SpherePoly) -> LinOp {
    let m = phi.norm_sqr();
    let e_phib = &e_function(phi) * &phi.conj();
    let grad_m = grad_op(&m);
    let boxes = LinOp::kohn().after(&LinOp::kohn()).plus(&LinOp::conj_kohn().after(&LinOp::conj_kohn()));
    LinOp::sum([
        LinOp::mul_by(m.clone()).after(&LinOp::paneitz()).scaled_int(16),
        LinOp::mul_by(m.clone()).after(&boxes).scaled_int(2),
        LinOp::mul_by(e_phib.clone()).after(&LinOp::sublap()).scaled_int(-8),
        grad_op(&e_phib).scaled_int(8),
        LinOp::mul_by(kohn(&m)).after(&LinOp::sublap()).scaled_int(4),
        grad_m.after(&LinOp::sublap()).scaled_int(-8),
        grad_m.after(&LinOp::conj_kohn()).scaled_int(-4),
        LinOp::kohn().after(&grad_m).scaled_int(-4),
    ])
}

/// `R = 4P̈₀ - 8D²`.
pub fn remainder_operator(phi: &SpherePoly) -> LinOp {
    remainder_terms(phi)
}

/// `P̈₀ = ¼(8D² + R)`.
pub fn second_variation(phi: &SpherePoly) -> LinOp {
    let d = d_operator(phi);
    d.after(&d).scaled_int(8).plus(&remainder_terms(phi)).scaled_ratio(1, 4)
}

#[derive(Clone, Debug)]
pub struct VariationOperators {
    pub d: LinOp,
    pub e: SpherePoly,
    pub p0dot: LinOp,
    pub p0ddot: LinOp,
    pub remainder: LinOp,
}

impl VariationOperators {
    pub fn new(phi: &SpherePoly) -> Self {
        VariationOperators {
            d: d_operator(phi),
            e: e_function(phi),
            p0dot: first_variation(phi),
            p0ddot: second_variation(phi),
            remainder: remainder_operator(phi),
        }
    }
}

/// Which half of the space of CR plus anti-CR functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Holomorphic,
    Antiholomorphic,
}

/// `Some(k)` if `f` is a nonzero element of `H_{k,0}` (holomorphic side) or `H_{0,k}`.
pub fn harmonic_degree(f: &SpherePoly, side: Side) -> Option<u32> {
    let (p, q) = f.uniform_bidegree()?;
    if !flat_laplacian(f).is_zero() {
        return None;
    }
    match side {
        Side::Holomorphic if q == 0 => Some(p),
        Side::Antiholomorphic if p == 0 => Some(q),
        _ => None,
    }
}

fn classify_pure(f: &SpherePoly) -> Option<(Side, u32)> {
    harmonic_degree(f, Side::Holomorphic)
        .map(|k| (Side::Holomorphic, k))
        .or_else(|| harmonic_degree(f, Side::Antiholomorphic).map(|k| (Side::Antiholomorphic, k)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemainderCheck {
    /// `<R f, g>`
    pub value: GaussianRational,
    /// `8∫(p|φ|² - Eφ̄) f₁ conj(g₁)` for holomorphic `f`, zero for anti-holomorphic `f`.
    pub closed_form: GaussianRational,
}

impl RemainderCheck {
    pub fn holds(&self) -> bool {
        self.value == self.closed_form
    }
}

pub fn remainder_form(phi: &SpherePoly, f: &SpherePoly, g: &SpherePoly) -> Result<RemainderCheck> {
    let (side, p) =
        classify_pure(f).ok_or_else(|| Error::Precondition(format!("f = {f} is not in H_(p,0) or H_(0,p)")))?;
    if !apply_z1bar(g).sphere_is_zero() {
        return Err(Error::Precondition(format!("g = {g} is not a CR function")));
    }
    let value = inner(&remainder_operator(phi).apply(f), g);
    let closed_form = match side {
        Side::Antiholomorphic => GaussianRational::zero(),
        Side::Holomorphic => {
            let weight = phi.norm_sqr().scale_int(p as i64) - &e_function(phi) * &phi.conj();
            inner(&(&weight * &apply_z1(f)), &apply_z1(g)) * GaussianRational::from_int(8)
        }
    };
    Ok(RemainderCheck { value, closed_form })
}

/// Split an element of the kernel of `P₀` into its CR and anti-CR parts.
pub fn cr_split(f: &SpherePoly) -> Result<(SpherePoly, SpherePoly)> {
    let mut u = SpherePoly::zero();
    let mut v = SpherePoly::zero();
    for ((p, q), h) in canonicalize(f) {
        if p > 0 && q > 0 {
            return Err(Error::Precondition(format!(
                "f has a component in H_({p},{q}) and is not in the kernel of P0"
            )));
        }
        if q == 0 {
            u = u + h;
        } else {
            v = v + h;
        }
    }
    Ok((u, v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSquared {
    /// `<D² f, f>`
    pub value: GaussianRational,
    /// `<w, w>` with `w = φu₁₁ + φ₁u₁ + φ̄v₁̄₁̄ + φ̄₁̄v₁̄`
    pub sum_of_squares: GaussianRational,
}

impl DSquared {
    pub fn holds(&self) -> bool {
        self.value == self.sum_of_squares && self.value.is_real() && self.value.re >= BigRational::zero()
    }
}

pub fn dsquared_form(phi: &SpherePoly, f: &SpherePoly) -> Result<DSquared> {
    let (u, v) = cr_split(f)?;
    let d = d_operator(phi);
    let value = inner(&d.apply(&d.apply(f)), f);
    let phib = phi.conj();
    let u1 = apply_z1(&u);
    let v1b = apply_z1bar(&v);
    let w = &(phi * &apply_z1(&u1))
        + &(&apply_z1(phi) * &u1)
        + &(&phib * &apply_z1bar(&v1b))
        + &(&apply_z1bar(&phib) * &v1b);
    let sum_of_squares = inner(&w, &w);
    Ok(DSquared { value, sum_of_squares })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairIntegral {
    pub value: GaussianRational,
    /// Zero for `k != l`, `(k + p₁ - q₁ - 4)∫|φ|² f^k₁ conj(f^l₁)` for `k = l`.
    pub expected: GaussianRational,
}

impl PairIntegral {
    pub fn holds(&self) -> bool {
        self.value == self.expected
    }
}

fn side_derivative(f: &SpherePoly, side: Side) -> SpherePoly {
    match side {
        Side::Holomorphic => apply_z1(f),
        Side::Antiholomorphic => apply_z1bar(f),
    }
}

/// `∫(k|φ|² - Eφ̄) f^k_1 conj(f^l_1)` (or with `Z1bar` on the anti-holomorphic side).
pub fn pair_integral(
    phi: &SpherePoly,
    k: u32,
    l: u32,
    side: Side,
    fk: &SpherePoly,
    fl: &SpherePoly,
) -> Result<PairIntegral> {
    let (p1, q1) =
        phi.uniform_bidegree().ok_or_else(|| Error::Precondition(format!("phi = {phi} is not of uniform bidegree")))?;
    for (f, deg) in [(fk, k), (fl, l)] {
        if deg == 0 || harmonic_degree(f, side) != Some(deg) {
            return Err(Error::Precondition(format!("{f} is not a harmonic of degree {deg} on the {side:?} side")));
        }
    }
    let m = phi.norm_sqr();
    let weight = m.scale_int(k as i64) - &e_function(phi) * &phi.conj();
    let dk = side_derivative(fk, side);
    let dl = side_derivative(fl, side);
    let value = inner(&(&weight * &dk), &dl);
    let expected = if k != l {
        GaussianRational::zero()
    } else {
        let c = k as i64 + p1 as i64 - q1 as i64 - 4;
        inner(&(&m * &dk), &dl) * GaussianRational::from_int(c)
    };
    Ok(PairIntegral { value, expected })
}

/// Components `f^k ∈ H_{k,0}` and `g^k ∈ H_{0,k}` of an element of the space
/// spanned by non-constant CR and anti-CR harmonics.
pub fn h_components(f: &SpherePoly) -> Result<(BTreeMap<u32, SpherePoly>, BTreeMap<u32, SpherePoly>)> {
    let mut hol = BTreeMap::new();
    let mut anti = BTreeMap::new();
    for ((p, q), h) in canonicalize(f) {
        match (p, q) {
            (0, 0) => return Err(Error::Precondition("f has a constant component".into())),
            (k, 0) => {
                hol.insert(k, h);
            }
            (0, k) => {
                anti.insert(k, h);
            }
            _ => return Err(Error::Precondition(format!("f has a component in H_({p},{q})"))),
        }
    }
    Ok((hol, anti))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundSplit {
    /// `<P̈₀ f, f>`
    pub lhs: GaussianRational,
    /// `2Σ∫(k|φ|² - Eφ̄)f^k₁ conj(f^l₁) + 2Σ∫(k|φ|² - Eφ̄)g^k₁̄ conj(g^l₁̄)`
    pub rhs: GaussianRational,
    /// `2<D² f, f>`
    pub d2: GaussianRational,
}

impl LowerBoundSplit {
    pub fn holds(&self) -> bool {
        self.lhs == &self.rhs + &self.d2 && self.d2.is_real() && self.d2.re >= BigRational::zero()
    }
}

/// `<P̈₀ f, f>` split into the pair-integral sum and `2<D² f, f>` for `f` in the CR plus anti-CR harmonics.
pub fn lower_bound_split(phi: &SpherePoly, f: &SpherePoly) -> Result<LowerBoundSplit> {
    let (hol, anti) = h_components(f)?;
    let lhs = inner(&second_variation(phi).apply(f), f);
    let m = phi.norm_sqr();
    let e_phib = &e_function(phi) * &phi.conj();
    let mut rhs = GaussianRational::zero();
    for (parts, side) in [(&hol, Side::Holomorphic), (&anti, Side::Antiholomorphic)] {
        for (k, fk) in parts {
            let weight = m.scale_int(*k as i64) - &e_phib;
            let dk = &weight * &side_derivative(fk, side);
            for fl in parts.values() {
                rhs += &inner(&dk, &side_derivative(fl, side));
            }
        }
    }
    rhs = rhs * GaussianRational::from_int(2);
    let d2 = dsquared_form(phi, f)?.value * GaussianRational::from_int(2);
    Ok(LowerBoundSplit { lhs, rhs, d2 })
}

/// Result of comparing the closed-form variations with the `t`-expansion of
/// the deformed Paneitz operator.
#[derive(Clone, Debug, Default)]
pub struct JetOracleReport {
    pub checked: usize,
    /// `(label, order)` of each mismatch
    pub mismatches: Vec<(String, usize)>,
}

impl JetOracleReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Apply the `t¹` and `t²` coefficients of the jet of `4P₀^t` to every basis
/// element of `H_{p,q}`, `p + q <= max_degree`, and compare with `4Ṗ₀` and `2P̈₀`.
pub fn jet_oracle(phi: &SpherePoly, max_degree: u32) -> JetOracleReport {
    let jets = deformed_operators(phi, 2);
    let first = first_variation(phi).scaled_int(4);
    let second = second_variation(phi).scaled_int(2);
    let mut report = JetOracleReport::default();
    for n in 0..=max_degree {
        for p in 0..=n {
            let q = n - p;
            for (idx, f) in basis(p, q).elements.iter().enumerate() {
                for (order, closed) in [(1usize, &first), (2, &second)] {
                    report.checked += 1;
                    if !jets.paneitz4.coeff(order).apply(f).sphere_eq(&closed.apply(f)) {
                        report.mismatches.push((format!("H_({p},{q})[{idx}]"), order));
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::minus_two_q_expanded;
    use crate::ops::{conj_kohn, paneitz, sublap};

    fn gr(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    fn z1() -> SpherePoly {
        SpherePoly::z1()
    }

    #[test]
    fn d_and_e_basics() {
        let phi = SpherePoly::one();
        assert!(d_operator(&phi).apply(&z1()).is_zero());
        assert_eq!(e_function(&phi), SpherePoly::constant(GaussianRational::from_int(4)));
        assert_eq!(e_function(&z1()), z1().scale_int(3));
    }

    #[test]
    fn rossi_second_variation_by_hand() {
        // E = 4, D z1 = 0, □̄²z1 = 4z1, Δ_b z1 = z1, gradient terms vanish:
        // 4P̈₀ z1 = 2·4z1 - 32z1
        let phi = SpherePoly::one();
        let v = second_variation(&phi).apply(&z1());
        assert!(v.sphere_eq(&z1().scale_int(-6)));
        assert_eq!(inner(&v, &z1()), GaussianRational::from_int(-3));
        // hand expansion term by term
        let by_hand =
            conj_kohn(&conj_kohn(&z1())).scale_int(2) - sublap(&z1()).scale_int(32) + paneitz(&z1()).scale_int(16);
        assert!(v.scale_int(4).sphere_eq(&by_hand));
    }

    #[test]
    fn rossi_negative_directions() {
        let p = second_variation(&SpherePoly::one());
        for f in [z1(), SpherePoly::z2(), SpherePoly::z1c(), SpherePoly::z2c()] {
            let v = inner(&p.apply(&f), &f);
            assert!(v.is_real() && v.re < num_rational::BigRational::zero(), "{f}: {v}");
        }
    }

    #[test]
    fn zero_phi_gives_zero_operators() {
        let phi = SpherePoly::zero();
        for f in [z1(), SpherePoly::z1c() * SpherePoly::z2(), SpherePoly::one()] {
            assert!(first_variation(&phi).apply(&f).is_zero());
            assert!(second_variation(&phi).apply(&f).is_zero());
        }
    }

    #[test]
    fn first_variation_vanishes_on_examples() {
        let phi = z1() * SpherePoly::z2c();
        let p = first_variation(&phi);
        for f in &basis(3, 0).elements {
            assert!(inner(&p.apply(f), &z1().pow(2)).is_zero());
        }
        for phi in [SpherePoly::one(), z1(), SpherePoly::z1c()] {
            assert!(inner(&first_variation(&phi).apply(&z1()), &z1()).is_zero());
        }
    }

    #[test]
    fn remainder_examples() {
        let r = remainder_form(&z1(), &z1(), &z1()).unwrap();
        assert_eq!(r.value, gr(-8, 3));
        assert!(r.holds());
        let r = remainder_form(&(z1() * SpherePoly::z2c()), &SpherePoly::z1c(), &z1()).unwrap();
        assert!(r.value.is_zero() && r.holds());
        let r = remainder_form(&SpherePoly::zero(), &z1(), &SpherePoly::z2()).unwrap();
        assert!(r.value.is_zero());
        assert!(matches!(remainder_form(&z1(), &z1(), &SpherePoly::z1c()), Err(Error::Precondition(_))));
        assert!(matches!(remainder_form(&z1(), &(z1() * SpherePoly::z1c()), &z1()), Err(Error::Precondition(_))));
    }

    #[test]
    fn dsquared_examples() {
        assert!(dsquared_form(&SpherePoly::one(), &z1()).unwrap().value.is_zero());
        let d = dsquared_form(&SpherePoly::z1c(), &z1().pow(2)).unwrap();
        assert_eq!(d.value, gr(1, 3));
        assert!(d.holds());
        assert!(dsquared_form(&z1(), &SpherePoly::one()).unwrap().value.is_zero());
        assert!(matches!(dsquared_form(&z1(), &(z1() * SpherePoly::z2c())), Err(Error::Precondition(_))));
    }

    #[test]
    fn pair_integral_examples() {
        let k = pair_integral(&z1(), 1, 1, Side::Holomorphic, &z1(), &z1()).unwrap();
        assert_eq!(k.value, gr(-1, 3));
        assert!(k.holds());
        let k = pair_integral(&z1(), 1, 2, Side::Holomorphic, &z1(), &z1().pow(2)).unwrap();
        assert!(k.value.is_zero() && k.holds());
        let k = pair_integral(&z1().pow(4), 1, 1, Side::Holomorphic, &SpherePoly::z2(), &SpherePoly::z2()).unwrap();
        assert_eq!(k.value, gr(1, 6));
        assert!(k.holds());
        assert!(pair_integral(&(z1() + SpherePoly::z1c()), 1, 1, Side::Holomorphic, &z1(), &z1()).is_err());
    }

    #[test]
    fn lower_bound_split_examples() {
        let m = lower_bound_split(&SpherePoly::one(), &z1()).unwrap();
        assert_eq!(m.lhs, GaussianRational::from_int(-3));
        assert_eq!(m.rhs, GaussianRational::from_int(-3));
        assert!(m.d2.is_zero());
        let m = lower_bound_split(&z1().pow(4), &(z1() + SpherePoly::z2c())).unwrap();
        assert!(m.holds(), "{m:?}");
        let m = lower_bound_split(&SpherePoly::zero(), &z1()).unwrap();
        assert!(m.lhs.is_zero() && m.rhs.is_zero() && m.d2.is_zero());
    }

    #[test]
    fn expanded_q_matches_structural_q() {
        for phi in [SpherePoly::one(), z1(), z1() * SpherePoly::z2c(), z1().pow(4)] {
            let structural = deformed_operators(&phi, 2).minus_two_q;
            let expanded = minus_two_q_expanded(&phi);
            for (p, q) in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (3, 0)] {
                for f in &basis(p, q).elements {
                    for order in 0..=2 {
                        assert!(
                            structural.coeff(order).apply(f).sphere_eq(&expanded.coeff(order).apply(f)),
                            "phi = {phi}, f = {f}, order {order}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn jet_oracle_small() {
        for phi in [SpherePoly::one(), z1()] {
            let r = jet_oracle(&phi, 2);
            assert!(r.agrees(), "phi = {phi}: {:?}", r.mismatches);
        }
    }
}

#[cfg(test)]
mod oracle_corpus {
    use super::*;

    #[test]
    fn jet_oracle_full_corpus() {
        let z1 = SpherePoly::z1;
        let corpus = [
            SpherePoly::one(),
            z1(),
            SpherePoly::z1c(),
            z1() * SpherePoly::z2c(),
            z1().pow(4),
            z1().pow(2) * SpherePoly::z2c() - SpherePoly::z2().pow(2) * SpherePoly::z1c().scale(&GaussianRational::i()),
        ];
        for phi in &corpus {
            let r = jet_oracle(phi, 4);
            assert!(r.agrees(), "phi = {phi}: {:?}", r.mismatches);
        }
    }
}
