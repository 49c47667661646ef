//! Deformed CR structures `Z1bar + t·φ·Z1` on S^3.
//!
//! Exact torsion as a numerator/denominator pair, the `t`-jets of the
//! normalizing factor `F = (1 - t²|φ|²)^{-1/2}` and of the connection
//! coefficients, the deformed Kohn and Paneitz operators as operator jets,
//! and the closed forms for the Rossi family `φ = 1`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::harmonics::canonicalize;
use crate::jet::{OpJet, TJet};
use crate::ops::{apply_t, apply_z1, apply_z1bar, LinOp};
use crate::poly::{Monomial, SpherePoly};
use crate::scalar::GaussianRational;

/// Highest order for which the connection coefficient jets are provided.
pub const MAX_B_ORDER: usize = 2;

/// The torsion `A = -t·(φ₀ - 4iφ) / (1 - t²|φ|²)` of the structure `tφ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torsion {
    /// `φ₀ - 4iφ`
    pub factor: SpherePoly,
    /// `|φ|²`
    pub modulus_sq: SpherePoly,
}

impl Torsion {
    /// Coefficient of `t` in the numerator.
    pub fn numerator_coeff(&self) -> SpherePoly {
        -&self.factor
    }

    /// Numerator and denominator as polynomials in `t` (coefficients of `t^0, t^1, t^2`).
    pub fn as_jets(&self) -> (TJet, TJet) {
        let num = TJet::monomial(self.numerator_coeff(), 1, 2);
        let den = TJet::from_coeffs(vec![SpherePoly::one(), SpherePoly::zero(), -&self.modulus_sq]);
        (num, den)
    }

    pub fn at(&self, t: &GaussianRational) -> (SpherePoly, SpherePoly) {
        let (n, d) = self.as_jets();
        (n.eval(t), d.eval(t))
    }

    pub fn vanishes(&self) -> bool {
        self.factor.is_zero()
    }

    /// The torsion as a single scalar, when both numerator and denominator are
    /// constant on the sphere. `None` otherwise or if the denominator vanishes.
    pub fn scalar_at(&self, t: &GaussianRational) -> Option<GaussianRational> {
        let (n, d) = self.at(t);
        let n = sphere_constant(&n)?;
        let d = sphere_constant(&d)?;
        Some(&n * &d.inv()?)
    }
}

impl fmt::Display for Torsion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t*({}) / (1 - t^2*({}))", self.numerator_coeff(), self.modulus_sq)
    }
}

pub fn torsion(phi: &SpherePoly) -> Torsion {
    let factor = apply_t(phi) - phi.scale(&(&GaussianRational::i() * &GaussianRational::from_int(4)));
    Torsion { factor, modulus_sq: phi.norm_sqr() }
}

/// Value of a function that is constant on S^3.
pub fn sphere_constant(x: &SpherePoly) -> Option<GaussianRational> {
    let comps = canonicalize(x);
    match comps.len() {
        0 => Some(GaussianRational::zero()),
        1 => comps.get(&(0, 0)).and_then(SpherePoly::as_constant),
        _ => None,
    }
}

/// `F² = 1 / (1 - t²|φ|²)` at a specific `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FSquared {
    Exact(GaussianRational),
    Symbolic { numerator: SpherePoly, denominator: SpherePoly },
}

#[derive(Clone, Debug)]
pub struct DeformationData {
    pub phi: SpherePoly,
    pub torsion_factor: SpherePoly,
}

impl DeformationData {
    pub fn new(phi: SpherePoly) -> Self {
        let torsion_factor = torsion(&phi).factor;
        DeformationData { phi, torsion_factor }
    }

    /// Errors when `|φ|²` is constant and `1 - t²|φ|²` vanishes.
    pub fn f_squared_at(&self, t: &GaussianRational) -> Result<FSquared> {
        let denominator = SpherePoly::one() - self.phi.norm_sqr().scale(&(t * t));
        match sphere_constant(&denominator) {
            Some(d) => d.inv().map(FSquared::Exact).ok_or_else(|| Error::DegenerateStructure(t.to_string())),
            None => Ok(FSquared::Symbolic { numerator: SpherePoly::one(), denominator }),
        }
    }

    pub fn torsion(&self) -> Torsion {
        torsion(&self.phi)
    }
}

/// Pairs `(p, q)` with `p, q <= max` for which every `φ ∈ P_{p,q}` gives zero torsion.
pub fn zero_torsion_classify(max: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for p in 0..=max {
        for q in 0..=max {
            if Monomial::of_bidegree(p, q).iter().all(|m| torsion(&SpherePoly::monomial(*m)).vanishes()) {
                out.push((p, q));
            }
        }
    }
    out
}

/// `F = Σ binom(2k, k)/4^k · t^{2k} |φ|^{2k}`, truncated.
pub fn f_jet(phi: &SpherePoly, order: usize) -> TJet {
    let m = phi.norm_sqr();
    let mut power = SpherePoly::one();
    let mut c = BigRational::one();
    let mut coeffs = vec![SpherePoly::zero(); order + 1];
    let mut k = 0usize;
    while 2 * k <= order {
        coeffs[2 * k] = power.scale(&GaussianRational::real(c.clone()));
        power = &power * &m;
        // binom(2k+2, k+1)/4^{k+1} = binom(2k, k)/4^k · (2k+1)/(2k+2)
        c *= BigRational::new(BigInt::from(2 * k + 1), BigInt::from(2 * k + 2));
        k += 1;
    }
    TJet::from_coeffs(coeffs)
}

/// Jets of the connection coefficients `B11, B12, B13` of the structure `tφ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BJets {
    pub b11: TJet,
    pub b12: TJet,
    pub b13: TJet,
}

/// Closed-form expansions through `t²`:
/// `B11 = -t φ̄₁̄ - t²(φ̄φ₁ + Z1|φ|²)`, `B12 = t φ₁ + t² φ φ̄₁̄`,
/// `B13 = -t² φ̄ (φ₀ - 4iφ)`.
pub fn b_coefficient_jets(phi: &SpherePoly, order: usize) -> Result<BJets> {
    if order > MAX_B_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    let phib = phi.conj();
    let phi_1 = apply_z1(phi);
    let phib_1b = apply_z1bar(&phib);
    let z1_mod = apply_z1(&phi.norm_sqr());
    let b11 = TJet::from_coeffs(vec![SpherePoly::zero(), -&phib_1b, -(&(&phib * &phi_1) + &z1_mod)]);
    let b12 = TJet::from_coeffs(vec![SpherePoly::zero(), phi_1.clone(), phi * &phib_1b]);
    let b13 = TJet::from_coeffs(vec![SpherePoly::zero(), SpherePoly::zero(), -(&phib * &torsion(phi).factor)]);
    Ok(BJets { b11: b11.truncate(order), b12: b12.truncate(order), b13: b13.truncate(order) })
}

/// The connection coefficients obtained by substituting `tφ` and the jet of
/// `F` into the structure formulas, at any order:
/// `B11 = F²(-2F₁ - F·(tφ)‾₁̄ - (tφ)‾·F·(tφ)₁ - 2(tφ)‾·F₁̄)`,
/// `B12 = F²(2|tφ|²F₁̄ + F(tφ)₁ + tφ·F·(tφ)‾₁̄ + 2tφ·F₁)`,
/// `B13 = -(tφ)‾·F³·((tφ)₀ - 4i·tφ)`.
pub fn b_jets_substituted(phi: &SpherePoly, order: usize) -> BJets {
    let f = f_jet(phi, order);
    let f1 = f.map(apply_z1);
    let f1b = f.map(apply_z1bar);
    let f2 = f.mul(&f);
    let tphi = TJet::monomial(phi.clone(), 1, order);
    let tphib = tphi.conj();
    let tphi_1 = tphi.map(apply_z1);
    let tphib_1b = tphib.map(apply_z1bar);
    let tmod = tphi.mul(&tphib);

    let b11 = f2.mul(
        &f1.scale_int(-2).sub(&f.mul(&tphib_1b)).sub(&tphib.mul(&f).mul(&tphi_1)).sub(&tphib.mul(&f1b).scale_int(2)),
    );
    let b12 = f2.mul(
        &tmod
            .mul(&f1b)
            .scale_int(2)
            .add(&f.mul(&tphi_1))
            .add(&tphi.mul(&f).mul(&tphib_1b))
            .add(&tphi.mul(&f1).scale_int(2)),
    );
    let tfactor = tphi.map(|x| torsion(x).factor);
    let b13 = tphib.mul(&f2).mul(&f).mul(&tfactor).scale_int(-1);
    BJets { b11, b12, b13 }
}

/// Operator jets of the deformed structure, built from the frame
/// `Z1bar^t = F(Z1bar + tφZ1)`.
#[derive(Clone, Debug)]
pub struct DeformedOperators {
    pub order: usize,
    pub z1bar: OpJet,
    pub z1: OpJet,
    /// `F₁̄ + B12 + tφF₁ + tφB11`, minus the connection form evaluated on `Z1bar^t`.
    pub connection: TJet,
    pub conj_kohn: OpJet,
    pub kohn: OpJet,
    /// `-2Q^t`
    pub minus_two_q: OpJet,
    /// `4 P₀^t = □^t □̄^t - 2Q^t`
    pub paneitz4: OpJet,
}

pub fn deformed_operators(phi: &SpherePoly, order: usize) -> DeformedOperators {
    let f = f_jet(phi, order);
    let b = b_jets_substituted(phi, order);
    let mut frame = vec![LinOp::zero(); order + 1];
    frame[0] = LinOp::Z1bar;
    if order >= 1 {
        frame[1] = LinOp::mul_by(phi.clone()).after(&LinOp::Z1);
    }
    let z1bar = OpJet::from_coeffs(frame).premultiply(&f);
    let z1 = z1bar.conj();

    let tphi = TJet::monomial(phi.clone(), 1, order);
    let connection = f.map(apply_z1bar).add(&b.b12).add(&tphi.mul(&f.map(apply_z1))).add(&tphi.mul(&b.b11));

    let conj_kohn = z1bar.compose(&z1).add(&z1.premultiply(&connection)).scale_int(-2);
    let kohn = conj_kohn.conj();

    // A^{11} = i t F² E, so -4i A^{11} = 4t F² E.
    let e = e_function(phi);
    let a = TJet::monomial(e, 1, order).mul(&f).mul(&f).scale_int(4);
    let minus_two_q = z1
        .compose(&z1)
        .premultiply(&a)
        .add(&z1.premultiply(&z1.apply_jet(&a)))
        .add(&z1.premultiply(&a.mul(&connection.conj())));
    let paneitz4 = kohn.compose(&conj_kohn).add(&minus_two_q);
    DeformedOperators { order, z1bar, z1, connection, conj_kohn, kohn, minus_two_q, paneitz4 }
}

/// `E = 4φ + iφ₀`.
pub fn e_function(phi: &SpherePoly) -> SpherePoly {
    phi.scale_int(4) + apply_t(phi).scale(&GaussianRational::i())
}

/// Expanded form of `-2Q^t` through `t²`:
/// `4t(E Z1Z1 + E₁Z1) + 4t²E(-φ̄Δ_b + φ̄₁Z1bar) + 4t²(φ̄E₁̄Z1 + φ̄E₁Z1bar) + 4t²Eφ̄₁̄Z1`.
pub fn minus_two_q_expanded(phi: &SpherePoly) -> OpJet {
    let e = e_function(phi);
    let phib = phi.conj();
    let mul = |g: SpherePoly| LinOp::mul_by(g);
    let t1 = LinOp::sum([mul(e.clone()).after(&LinOp::Z1).after(&LinOp::Z1), mul(apply_z1(&e)).after(&LinOp::Z1)])
        .scaled_int(4);
    let t2 = LinOp::sum([
        mul(&e * &phib).after(&LinOp::sublap()).scaled_int(-1),
        mul(&e * &apply_z1(&phib)).after(&LinOp::Z1bar),
        mul(&phib * &apply_z1bar(&e)).after(&LinOp::Z1),
        mul(&phib * &apply_z1(&e)).after(&LinOp::Z1bar),
        mul(&e * &apply_z1bar(&phib)).after(&LinOp::Z1),
    ])
    .scaled_int(4);
    OpJet::from_coeffs(vec![LinOp::zero(), t1, t2])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RossiBranch {
    /// `|t| < 1`
    Inner,
    /// `|t| > 1`
    Outer,
}

impl RossiBranch {
    pub fn label(self) -> &'static str {
        match self {
            RossiBranch::Inner => "|t|<1",
            RossiBranch::Outer => "|t|>1",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RossiValues {
    pub t: GaussianRational,
    pub webster_r: GaussianRational,
    /// Coefficient `4ti/(1 - t²)`, purely imaginary.
    pub torsion_coeff: GaussianRational,
    pub branch: RossiBranch,
}

/// Webster curvature and torsion of the Rossi structure `Z1bar + tZ1`.
pub fn rossi(t: &GaussianRational) -> Result<RossiValues> {
    if !t.is_real() {
        return Err(Error::Precondition(format!("Rossi parameter must be real, got {t}")));
    }
    let one = GaussianRational::one();
    let t2 = t * t;
    let branch = match t2.re.cmp(&BigRational::one()) {
        Ordering::Less => RossiBranch::Inner,
        Ordering::Greater => RossiBranch::Outer,
        Ordering::Equal => return Err(Error::DegenerateStructure(t.to_string())),
    };
    let num = &(&one + &t2) * &GaussianRational::from_int(2);
    let webster_r = match branch {
        RossiBranch::Inner => &num / &(&one - &t2),
        RossiBranch::Outer => &num / &(&t2 - &one),
    };
    let torsion_coeff = &(&GaussianRational::imag(BigRational::from_integer(4.into())) * t) / &(&one - &t2);
    Ok(RossiValues { t: t.clone(), webster_r, torsion_coeff, branch })
}
