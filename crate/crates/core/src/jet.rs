//! Truncated power series in the deformation parameter `t`.
//!
//! [`TJet`] has polynomial coefficients, [`OpJet`] has operator coefficients.
//! Products and compositions are truncated convolutions; nothing beyond
//! `t^order` is ever formed.

use crate::ops::LinOp;
use crate::poly::SpherePoly;
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TJet {
    coeffs: Vec<SpherePoly>,
}

impl TJet {
    pub fn zero(order: usize) -> Self {
        TJet { coeffs: vec![SpherePoly::zero(); order + 1] }
    }

    pub fn constant(p: SpherePoly, order: usize) -> Self {
        let mut j = Self::zero(order);
        j.coeffs[0] = p;
        j
    }

    /// `p * t^k`, or zero when `k > order`.
    pub fn monomial(p: SpherePoly, k: usize, order: usize) -> Self {
        let mut j = Self::zero(order);
        if k <= order {
            j.coeffs[k] = p;
        }
        j
    }

    /// Coefficients `c_0, c_1, ...`; the order is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<SpherePoly>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least the constant coefficient");
        TJet { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &SpherePoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[SpherePoly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, SpherePoly::zero());
        TJet { coeffs: c }
    }

    pub fn add(&self, o: &TJet) -> TJet {
        let n = self.order().min(o.order());
        TJet { coeffs: (0..=n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect() }
    }

    pub fn sub(&self, o: &TJet) -> TJet {
        let n = self.order().min(o.order());
        TJet { coeffs: (0..=n).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect() }
    }

    pub fn mul(&self, o: &TJet) -> TJet {
        let n = self.order().min(o.order());
        let mut out = TJet::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &o.coeffs[j]);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> TJet {
        TJet { coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect() }
    }

    pub fn scale_int(&self, n: i64) -> TJet {
        self.scale(&GaussianRational::from_int(n))
    }

    /// Multiply by `t` (shifting coefficients up, dropping the top one).
    pub fn shift(&self) -> TJet {
        let mut c = vec![SpherePoly::zero()];
        c.extend(self.coeffs[..self.order()].iter().cloned());
        TJet { coeffs: c }
    }

    /// Coefficientwise map; correct for any `t`-independent linear operation.
    pub fn map(&self, f: impl Fn(&SpherePoly) -> SpherePoly) -> TJet {
        TJet { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Conjugation for real `t`.
    pub fn conj(&self) -> TJet {
        self.map(SpherePoly::conj)
    }

    /// Value at a specific `t`, treating the jet as a polynomial in `t`.
    pub fn eval(&self, t: &GaussianRational) -> SpherePoly {
        let mut acc = SpherePoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(t) + c;
        }
        acc
    }
}

/// Operator-valued jet.
#[derive(Clone, Debug)]
pub struct OpJet {
    coeffs: Vec<LinOp>,
}

impl OpJet {
    pub fn zero(order: usize) -> Self {
        OpJet { coeffs: vec![LinOp::zero(); order + 1] }
    }

    pub fn constant(a: LinOp, order: usize) -> Self {
        let mut j = Self::zero(order);
        j.coeffs[0] = a;
        j
    }

    pub fn from_coeffs(coeffs: Vec<LinOp>) -> Self {
        assert!(!coeffs.is_empty());
        OpJet { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &LinOp {
        &self.coeffs[k]
    }

    pub fn add(&self, o: &OpJet) -> OpJet {
        let n = self.order().min(o.order());
        OpJet { coeffs: (0..=n).map(|k| self.coeffs[k].plus(&o.coeffs[k])).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> OpJet {
        OpJet { coeffs: self.coeffs.iter().map(|a| a.scaled(c.clone())).collect() }
    }

    pub fn scale_int(&self, n: i64) -> OpJet {
        self.scale(&GaussianRational::from_int(n))
    }

    /// `self ∘ inner`, truncated.
    pub fn compose(&self, inner: &OpJet) -> OpJet {
        let n = self.order().min(inner.order());
        let mut coeffs = vec![Vec::new(); n + 1];
        for i in 0..=n {
            for j in 0..=(n - i) {
                coeffs[i + j].push(self.coeffs[i].after(&inner.coeffs[j]));
            }
        }
        OpJet { coeffs: coeffs.into_iter().map(LinOp::Sum).collect() }
    }

    /// The operator jet `h -> g(t) * A(t) h`.
    pub fn premultiply(&self, g: &TJet) -> OpJet {
        let n = self.order().min(g.order());
        let mut coeffs = vec![Vec::new(); n + 1];
        for i in 0..=n {
            if g.coeff(i).is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                coeffs[i + j].push(LinOp::mul_by(g.coeff(i).clone()).after(&self.coeffs[j]));
            }
        }
        OpJet { coeffs: coeffs.into_iter().map(LinOp::Sum).collect() }
    }

    /// Multiplication operator by a function jet.
    pub fn mul_by(g: &TJet) -> OpJet {
        OpJet { coeffs: g.coeffs().iter().map(|c| LinOp::mul_by(c.clone())).collect() }
    }

    pub fn apply(&self, x: &SpherePoly) -> TJet {
        TJet::from_coeffs(self.coeffs.iter().map(|a| a.apply(x)).collect())
    }

    /// Apply to a function jet, truncating the convolution.
    pub fn apply_jet(&self, x: &TJet) -> TJet {
        let n = self.order().min(x.order());
        let mut out = TJet::zero(n);
        for i in 0..=n {
            for j in 0..=(n - i) {
                if x.coeff(j).is_zero() {
                    continue;
                }
                let y = self.coeffs[i].apply(x.coeff(j));
                out.coeffs[i + j] = &out.coeffs[i + j] + &y;
            }
        }
        out
    }

    /// Conjugate operator jet for real `t`.
    pub fn conj(&self) -> OpJet {
        OpJet { coeffs: self.coeffs.iter().map(LinOp::conj).collect() }
    }
}
