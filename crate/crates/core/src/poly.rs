//! Polynomials in `z1, z2, conj(z1), conj(z2)` with Gaussian-rational
//! coefficients, viewed as functions on the unit sphere S^3 in C^2.
//!
//! A monomial `z1^a z2^b z1c^c z2c^d` has bidegree `(a + b, c + d)` and circle
//! grade `m = (a + b) - (c + d)`, the Fourier mode along the Hopf fibre.
//! Structural equality of [`SpherePoly`] is equality as polynomials; equality
//! of the restrictions to the sphere is `SpherePoly::sphere_eq` (see
//! [`crate::harmonics`]).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::GaussianRational;

/// One of the four coordinate functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z1,
    Z2,
    Z1c,
    Z2c,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Z1, Var::Z2, Var::Z1c, Var::Z2c];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z1 => "z1",
            Var::Z2 => "z2",
            Var::Z1c => "z1c",
            Var::Z2c => "z2c",
        }
    }
}

/// Exponent vector of `z1^a z2^b conj(z1)^c conj(z2)^d`; ordered
/// lexicographically on `(a, b, c, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, c: 0, d: 0 };

    pub const fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        Monomial { a, b, c, d }
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.a + self.b, self.c + self.d)
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b + self.c + self.d
    }

    pub fn circle_grade(&self) -> i64 {
        (self.a + self.b) as i64 - (self.c + self.d) as i64
    }

    pub fn conj(&self) -> Self {
        Monomial { a: self.c, b: self.d, c: self.a, d: self.b }
    }

    pub fn exponent(&self, v: Var) -> u32 {
        [self.a, self.b, self.c, self.d][v.index()]
    }

    fn with_exponent(mut self, v: Var, e: u32) -> Self {
        match v {
            Var::Z1 => self.a = e,
            Var::Z2 => self.b = e,
            Var::Z1c => self.c = e,
            Var::Z2c => self.d = e,
        }
        self
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial { a: self.a + o.a, b: self.b + o.b, c: self.c + o.c, d: self.d + o.d }
    }

    /// All monomials of bidegree `(p, q)`, in lexicographic order.
    pub fn of_bidegree(p: u32, q: u32) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(((p + 1) * (q + 1)) as usize);
        for a in 0..=p {
            for c in 0..=q {
                out.push(Monomial::new(a, p - a, c, q - c));
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Finite linear combination of monomials; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SpherePoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl SpherePoly {
    pub fn zero() -> Self {
        SpherePoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SpherePoly { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, GaussianRational::one())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::ONE.with_exponent(v, 1))
    }

    pub fn z1() -> Self {
        Self::var(Var::Z1)
    }
    pub fn z2() -> Self {
        Self::var(Var::Z2)
    }
    pub fn z1c() -> Self {
        Self::var(Var::Z1c)
    }
    pub fn z2c() -> Self {
        Self::var(Var::Z2c)
    }

    /// `|z1|^2 + |z2|^2`, identically 1 on the sphere.
    pub fn r2() -> Self {
        Self::monomial(Monomial::new(1, 0, 1, 0)) + Self::monomial(Monomial::new(0, 1, 0, 1))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// The value as a constant, if it has no non-constant terms.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SpherePoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&GaussianRational::from_int(n))
    }

    pub fn conj(&self) -> Self {
        SpherePoly { terms: self.terms.iter().map(|(m, x)| (m.conj(), x.conj())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `|x|^2 = x * conj(x)`.
    pub fn norm_sqr(&self) -> Self {
        self * &self.conj()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Partial derivative with respect to one of the four coordinates,
    /// treating `z` and `conj(z)` as independent (Wirtinger calculus).
    pub fn partial(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let dm = m.with_exponent(v, e - 1);
            out.add_term(dm, &(c * &GaussianRational::from_int(e as i64)));
        }
        out
    }

    /// Pieces of uniform bidegree `(p, q)`.
    pub fn bigraded_components(&self) -> BTreeMap<(u32, u32), SpherePoly> {
        let mut out: BTreeMap<(u32, u32), SpherePoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree()).or_default().terms.insert(*m, c.clone());
        }
        out
    }

    /// Pieces of uniform circle grade `m = p - q`.
    pub fn circle_components(&self) -> BTreeMap<i64, SpherePoly> {
        let mut out: BTreeMap<i64, SpherePoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.circle_grade()).or_default().terms.insert(*m, c.clone());
        }
        out
    }

    /// The common bidegree of every term, if there is one (zero has none).
    pub fn uniform_bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(Monomial::bidegree);
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn uniform_circle_grade(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Monomial::circle_grade);
        let first = it.next()?;
        it.all(|m| m == first).then_some(first)
    }

    /// True when no term involves a conjugate variable.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.c == 0 && m.d == 0)
    }

    pub fn is_antiholomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.a == 0 && m.b == 0)
    }
}

impl<'a> Add<&'a SpherePoly> for &'a SpherePoly {
    type Output = SpherePoly;
    fn add(self, rhs: &SpherePoly) -> SpherePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a SpherePoly> for &'a SpherePoly {
    type Output = SpherePoly;
    fn sub(self, rhs: &SpherePoly) -> SpherePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a SpherePoly> for &'a SpherePoly {
    type Output = SpherePoly;
    fn mul(self, rhs: &SpherePoly) -> SpherePoly {
        let mut out = SpherePoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for SpherePoly {
            type Output = SpherePoly;
            fn $m(self, rhs: SpherePoly) -> SpherePoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a SpherePoly> for SpherePoly {
            type Output = SpherePoly;
            fn $m(self, rhs: &SpherePoly) -> SpherePoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<SpherePoly> for &'a SpherePoly {
            type Output = SpherePoly;
            fn $m(self, rhs: SpherePoly) -> SpherePoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for &SpherePoly {
    type Output = SpherePoly;
    fn neg(self) -> SpherePoly {
        SpherePoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for SpherePoly {
    type Output = SpherePoly;
    fn neg(self) -> SpherePoly {
        -&self
    }
}

impl std::iter::Sum for SpherePoly {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(SpherePoly::zero(), |acc, x| acc + x)
    }
}

impl From<GaussianRational> for SpherePoly {
    fn from(c: GaussianRational) -> Self {
        SpherePoly::constant(c)
    }
}

impl fmt::Display for SpherePoly {
    /// Renders in the input grammar, so `parse(p.to_string()) == p`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            // Pull a leading minus out of purely real or purely imaginary
            // coefficients so sums read `a - b` rather than `a + -b`.
            let negative = (c.im.is_zero() && c.re < num_rational::BigRational::zero())
                || (c.re.is_zero() && c.im < num_rational::BigRational::zero());
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let is_const = *m == Monomial::ONE;
            if mag.is_one() && !is_const {
                write!(f, "{m}")?;
            } else if is_const {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SpherePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpherePoly({self})")
    }
}
