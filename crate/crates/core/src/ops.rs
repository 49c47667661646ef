//! CR vector fields and the canonical operators of the standard
//! pseudohermitian S^3, plus a small composable operator algebra.
//!
//! Frame conventions:
//!
//! ```text
//! Z1    = conj(z2) d/dz1 - conj(z1) d/dz2
//! Z1bar = z2 d/dconj(z1) - z1 d/dconj(z2)
//! T     = d/dpsi for the circle action (z1, z2) -> (e^{i psi} z1, e^{i psi} z2)
//! ```
//!
//! On the standard sphere the connection form is `-2i theta`, which vanishes
//! on `Z1` and `Z1bar`, so every covariant derivative taken along `Z1`/`Z1bar`
//! is a plain composition of the vector fields. `T` acts by `i m` on the
//! circle-grade-`m` piece of a polynomial.

use std::fmt;
use std::sync::Arc;

use crate::harmonics;
use crate::integrate::inner;
use crate::poly::{Monomial, SpherePoly};
use crate::scalar::GaussianRational;

pub fn apply_z1(x: &SpherePoly) -> SpherePoly {
    let mut out = SpherePoly::zero();
    for (m, c) in x.terms() {
        if m.a > 0 {
            let k = GaussianRational::from_int(m.a as i64);
            out.add_term(Monomial::new(m.a - 1, m.b, m.c, m.d + 1), &(c * &k));
        }
        if m.b > 0 {
            let k = GaussianRational::from_int(-(m.b as i64));
            out.add_term(Monomial::new(m.a, m.b - 1, m.c + 1, m.d), &(c * &k));
        }
    }
    out
}

pub fn apply_z1bar(x: &SpherePoly) -> SpherePoly {
    let mut out = SpherePoly::zero();
    for (m, c) in x.terms() {
        if m.c > 0 {
            let k = GaussianRational::from_int(m.c as i64);
            out.add_term(Monomial::new(m.a, m.b + 1, m.c - 1, m.d), &(c * &k));
        }
        if m.d > 0 {
            let k = GaussianRational::from_int(-(m.d as i64));
            out.add_term(Monomial::new(m.a + 1, m.b, m.c, m.d - 1), &(c * &k));
        }
    }
    out
}

pub fn apply_t(x: &SpherePoly) -> SpherePoly {
    let mut out = SpherePoly::zero();
    for (m, c) in x.terms() {
        let k = GaussianRational::imag(num_rational::BigRational::from_integer(m.circle_grade().into()));
        out.add_term(*m, &(c * &k));
    }
    out
}

/// `□_b = -2 Z1 Z1bar`; acts on `H_{p,q}` by `2(p+1)q`.
pub fn kohn(x: &SpherePoly) -> SpherePoly {
    apply_z1(&apply_z1bar(x)).scale_int(-2)
}

/// Conjugate Kohn Laplacian `-2 Z1bar Z1`; acts on `H_{p,q}` by `2(q+1)p`.
pub fn conj_kohn(x: &SpherePoly) -> SpherePoly {
    apply_z1bar(&apply_z1(x)).scale_int(-2)
}

/// Sublaplacian `(□_b + conj □_b) / 2`; acts on `H_{p,q}` by `2pq + p + q`.
pub fn sublap(x: &SpherePoly) -> SpherePoly {
    (kohn(x) + conj_kohn(x)).scale(&GaussianRational::ratio(1, 2))
}

/// CR Paneitz operator of the torsion-free standard structure,
/// `□_b conj(□_b) / 4`.
pub fn paneitz(x: &SpherePoly) -> SpherePoly {
    kohn(&conj_kohn(x)).scale(&GaussianRational::ratio(1, 4))
}

/// Linear operator on polynomials, built from multiplications and the frame
/// fields by sums, scalar multiples and composition.
#[derive(Clone)]
pub enum LinOp {
    Identity,
    MulBy(Arc<SpherePoly>),
    Z1,
    Z1bar,
    T,
    Scale(GaussianRational, Arc<LinOp>),
    Sum(Vec<LinOp>),
    /// `Compose(a, b)` applies `b` first, then `a`.
    Compose(Arc<LinOp>, Arc<LinOp>),
}

impl LinOp {
    pub fn zero() -> Self {
        LinOp::Sum(Vec::new())
    }

    pub fn mul_by(g: SpherePoly) -> Self {
        LinOp::MulBy(Arc::new(g))
    }

    pub fn scalar(c: GaussianRational) -> Self {
        LinOp::Scale(c, Arc::new(LinOp::Identity))
    }

    pub fn scaled(&self, c: GaussianRational) -> Self {
        LinOp::Scale(c, Arc::new(self.clone()))
    }

    pub fn scaled_int(&self, n: i64) -> Self {
        self.scaled(GaussianRational::from_int(n))
    }

    pub fn scaled_ratio(&self, n: i64, d: i64) -> Self {
        self.scaled(GaussianRational::ratio(n, d))
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn after(&self, inner: &LinOp) -> Self {
        LinOp::Compose(Arc::new(self.clone()), Arc::new(inner.clone()))
    }

    pub fn plus(&self, other: &LinOp) -> Self {
        match self {
            LinOp::Sum(v) => {
                let mut v = v.clone();
                v.push(other.clone());
                LinOp::Sum(v)
            }
            _ => LinOp::Sum(vec![self.clone(), other.clone()]),
        }
    }

    pub fn minus(&self, other: &LinOp) -> Self {
        self.plus(&other.scaled_int(-1))
    }

    pub fn sum<I: IntoIterator<Item = LinOp>>(ops: I) -> Self {
        LinOp::Sum(ops.into_iter().collect())
    }

    /// Composition of a chain, rightmost applied first.
    pub fn chain(ops: &[LinOp]) -> Self {
        match ops {
            [] => LinOp::Identity,
            [only] => only.clone(),
            [first, rest @ ..] => first.after(&LinOp::chain(rest)),
        }
    }

    pub fn apply(&self, x: &SpherePoly) -> SpherePoly {
        match self {
            LinOp::Identity => x.clone(),
            LinOp::MulBy(g) => g.as_ref() * x,
            LinOp::Z1 => apply_z1(x),
            LinOp::Z1bar => apply_z1bar(x),
            LinOp::T => apply_t(x),
            LinOp::Scale(c, a) => a.apply(x).scale(c),
            LinOp::Sum(v) => {
                let mut acc = SpherePoly::zero();
                for a in v {
                    let y = a.apply(x);
                    acc = acc + y;
                }
                acc
            }
            LinOp::Compose(a, b) => {
                let y = b.apply(x);
                if y.is_zero() {
                    return y;
                }
                a.apply(&y)
            }
        }
    }

    /// The operator `f -> conj(A conj(f))`.
    pub fn conj(&self) -> Self {
        match self {
            LinOp::Identity => LinOp::Identity,
            LinOp::MulBy(g) => LinOp::mul_by(g.conj()),
            LinOp::Z1 => LinOp::Z1bar,
            LinOp::Z1bar => LinOp::Z1,
            LinOp::T => LinOp::T,
            LinOp::Scale(c, a) => LinOp::Scale(c.conj(), Arc::new(a.conj())),
            LinOp::Sum(v) => LinOp::Sum(v.iter().map(LinOp::conj).collect()),
            LinOp::Compose(a, b) => LinOp::Compose(Arc::new(a.conj()), Arc::new(b.conj())),
        }
    }

    pub fn kohn() -> Self {
        LinOp::Z1.after(&LinOp::Z1bar).scaled_int(-2)
    }

    pub fn conj_kohn() -> Self {
        LinOp::Z1bar.after(&LinOp::Z1).scaled_int(-2)
    }

    pub fn sublap() -> Self {
        LinOp::kohn().plus(&LinOp::conj_kohn()).scaled_ratio(1, 2)
    }

    pub fn paneitz() -> Self {
        LinOp::kohn().after(&LinOp::conj_kohn()).scaled_ratio(1, 4)
    }
}

impl fmt::Debug for LinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinOp::Identity => f.write_str("I"),
            LinOp::MulBy(g) => write!(f, "[{g}]"),
            LinOp::Z1 => f.write_str("Z1"),
            LinOp::Z1bar => f.write_str("Z1bar"),
            LinOp::T => f.write_str("T"),
            LinOp::Scale(c, a) => write!(f, "{c}*{a:?}"),
            LinOp::Sum(v) => {
                f.write_str("(")?;
                for (k, a) in v.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{a:?}")?;
                }
                f.write_str(")")
            }
            LinOp::Compose(a, b) => write!(f, "{a:?}∘{b:?}"),
        }
    }
}

/// First-order operator `h -> (Z1bar g) Z1 h + (Z1 g) Z1bar h`.
pub fn grad_op(g: &SpherePoly) -> LinOp {
    let g_bar = apply_z1bar(g);
    let g_one = apply_z1(g);
    let mut terms = Vec::new();
    if !g_bar.is_zero() {
        terms.push(LinOp::mul_by(g_bar).after(&LinOp::Z1));
    }
    if !g_one.is_zero() {
        terms.push(LinOp::mul_by(g_one).after(&LinOp::Z1bar));
    }
    LinOp::Sum(terms)
}

/// Left side minus right side of the Kohn-Laplacian Bochner formula on the
/// standard sphere (Webster curvature 2, no torsion). Pairings of (0,1)-forms
/// are `coefficient * conj(coefficient)`. Vanishes on S^3 for every `phi`.
pub fn bochner_residual(phi: &SpherePoly) -> SpherePoly {
    let phib = phi.conj();
    let d1b = apply_z1bar(phi); // phi_{1bar}
    let phib_1 = apply_z1(&phib); // conj(phi)_1 = conj(phi_{1bar})
    let grad_sq = &d1b * &phib_1;

    let lhs = kohn(&grad_sq).scale(&GaussianRational::ratio(-1, 2));

    let phi_bb = apply_z1bar(&d1b); // phi_{1bar 1bar}
    let phib_11 = apply_z1(&phib_1); // conj(phi)_{11}
    let phi_b1 = apply_z1(&d1b); // phi_{1bar 1}
    let phib_1b1 = apply_z1bar(&phib_1); // conj(phi)_{1 1bar}
    let kohn_phi_b = apply_z1bar(&kohn(phi)); // (□_b phi)_{1bar}
    let pbar_b = apply_z1bar(&apply_z1bar(&apply_z1(phi))); // (conj(P) phi)_{1bar}

    let rhs = &phi_bb * &phib_11 + &phi_b1 * &phib_1b1
        - (&d1b * &kohn_phi_b.conj()).scale(&GaussianRational::ratio(1, 2))
        - &kohn_phi_b * &phib_1
        - &pbar_b * &phib_1
        + grad_sq.scale_int(2);
    lhs - rhs
}

/// Checks the integrated eigenvalue identity on every basis element of
/// `H_{p,q}` with `λ = 2(p+1)q`:
/// `λ‖Z1bar φ‖² = ‖Z1bar Z1bar φ‖² + <P0 φ, φ> + 2‖Z1bar φ‖²`.
pub fn integrated_eigen_identity(p: u32, q: u32) -> bool {
    let lambda = GaussianRational::from_int(2 * (p as i64 + 1) * q as i64);
    harmonics::basis(p, q).elements.iter().all(|phi| {
        let d = apply_z1bar(phi);
        let dd = apply_z1bar(&d);
        let nd = inner(&d, &d);
        let lhs = &lambda * &nd;
        let rhs = inner(&dd, &dd) + inner(&paneitz(phi), phi) + &GaussianRational::from_int(2) * &nd;
        lhs == rhs
    })
}

/// Closed-form eigenvalue of each standard operator on `H_{p,q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StandardOp {
    Kohn,
    ConjKohn,
    Sublap,
    Paneitz,
}

impl StandardOp {
    pub const ALL: [StandardOp; 4] = [StandardOp::Kohn, StandardOp::ConjKohn, StandardOp::Sublap, StandardOp::Paneitz];

    pub fn name(self) -> &'static str {
        match self {
            StandardOp::Kohn => "kohn",
            StandardOp::ConjKohn => "conj-kohn",
            StandardOp::Sublap => "sublap",
            StandardOp::Paneitz => "paneitz",
        }
    }

    pub fn apply(self, x: &SpherePoly) -> SpherePoly {
        match self {
            StandardOp::Kohn => kohn(x),
            StandardOp::ConjKohn => conj_kohn(x),
            StandardOp::Sublap => sublap(x),
            StandardOp::Paneitz => paneitz(x),
        }
    }

    pub fn eigenvalue(self, p: u32, q: u32) -> i64 {
        let (p, q) = (p as i64, q as i64);
        match self {
            StandardOp::Kohn => 2 * (p + 1) * q,
            StandardOp::ConjKohn => 2 * (q + 1) * p,
            StandardOp::Sublap => 2 * p * q + p + q,
            StandardOp::Paneitz => p * q * (p + 1) * (q + 1),
        }
    }
}

impl std::str::FromStr for StandardOp {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        StandardOp::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| format!("unknown operator `{s}` (expected kohn, conj-kohn, sublap or paneitz)"))
    }
}

/// Result of checking one `H_{p,q}` against its closed-form eigenvalue.
#[derive(Clone, Debug)]
pub struct EigenRow {
    pub p: u32,
    pub q: u32,
    pub expected: i64,
    /// The scalar each basis element is mapped to, when it is an eigenvector.
    pub observed: Vec<Option<GaussianRational>>,
}

impl EigenRow {
    pub fn passes(&self) -> bool {
        let e = GaussianRational::from_int(self.expected);
        self.observed.iter().all(|o| o.as_ref() == Some(&e))
    }
}

/// Applies `op` to every basis element of `H_{p,q}` and reads off the
/// eigenvalue as an exact polynomial identity.
pub fn eigen_row(op: StandardOp, p: u32, q: u32) -> EigenRow {
    let basis = harmonics::basis(p, q);
    let observed = basis.elements.iter().map(|f| eigen_ratio(&op.apply(f), f)).collect();
    EigenRow { p, q, expected: op.eigenvalue(p, q), observed }
}

/// `Some(c)` when `image == c * f` exactly as polynomials.
pub fn eigen_ratio(image: &SpherePoly, f: &SpherePoly) -> Option<GaussianRational> {
    let (m, c) = f.terms().next()?;
    let lambda = &image.coeff(m) / c;
    (f.scale(&lambda) == *image).then_some(lambda)
}

impl Default for LinOp {
    fn default() -> Self {
        LinOp::zero()
    }
}
