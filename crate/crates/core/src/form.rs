//! Hermitian forms `<A f_i, f_j>` over a harmonic basis, with exact inertia.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::harmonics::basis;
use crate::integrate::inner;
use crate::ops::LinOp;
use crate::poly::SpherePoly;
use crate::scalar::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
    NegativeDefinite,
    NegativeSemidefinite,
    Zero,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::PositiveDefinite => "positive-definite",
            Classification::PositiveSemidefinite => "positive-semidefinite",
            Classification::Indefinite => "indefinite",
            Classification::NegativeDefinite => "negative-definite",
            Classification::NegativeSemidefinite => "negative-semidefinite",
            Classification::Zero => "zero",
        }
    }

    fn from_inertia(i: &Inertia) -> Self {
        match (i.positive, i.negative, i.zero) {
            (0, 0, _) => Classification::Zero,
            (_, 0, 0) => Classification::PositiveDefinite,
            (_, 0, _) => Classification::PositiveSemidefinite,
            (0, _, 0) => Classification::NegativeDefinite,
            (0, _, _) => Classification::NegativeSemidefinite,
            _ => Classification::Indefinite,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Numbers of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    pub labels: Vec<String>,
    pub basis: Vec<SpherePoly>,
    /// `entries[i][j] = <A f_i, f_j>`
    pub entries: Vec<Vec<GaussianRational>>,
}

impl HermitianForm {
    /// A bare matrix with placeholder labels and no basis functions.
    pub fn from_matrix(entries: Vec<Vec<GaussianRational>>) -> Self {
        let labels = (0..entries.len()).map(|i| format!("e{i}")).collect();
        HermitianForm { labels, basis: Vec::new(), entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(GaussianRational::is_zero)
    }

    pub fn diagonal(&self) -> Vec<GaussianRational> {
        (0..self.dim()).map(|i| self.entries[i][i].clone()).collect()
    }

    /// First `(i, j)` violating `entries[j][i] = conj(entries[i][j])`.
    pub fn hermitian_defect(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            if self.entries[i].len() != n {
                return Some((i, self.entries[i].len()));
            }
            for j in i..n {
                if self.entries[j][i] != self.entries[i][j].conj() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_defect().is_none()
    }

    pub fn inertia(&self) -> Result<Inertia> {
        if let Some((i, j)) = self.hermitian_defect() {
            return Err(Error::NotHermitian(i, j));
        }
        Ok(inertia(self.entries.clone()))
    }

    pub fn classify(&self) -> Result<Classification> {
        Ok(Classification::from_inertia(&self.inertia()?))
    }
}

/// Symmetric Gaussian elimination. When every remaining diagonal entry is
/// zero but some off-diagonal `a_ij` is not, the congruence
/// `row_i += a_ij·row_j, col_i += conj(a_ij)·col_j` creates the diagonal
/// entry `2|a_ij|² > 0` and elimination continues.
fn inertia(mut m: Vec<Vec<GaussianRational>>) -> Inertia {
    let mut out = Inertia::default();
    let mut active: Vec<usize> = (0..m.len()).collect();
    while !active.is_empty() {
        let pivot = active.iter().position(|&k| !m[k][k].is_zero());
        let pos = match pivot {
            Some(pos) => pos,
            None => {
                let pair = active
                    .iter()
                    .enumerate()
                    .find_map(|(ai, &i)| active.iter().find(|&&j| j != i && !m[i][j].is_zero()).map(|&j| (ai, i, j)));
                let Some((ai, i, j)) = pair else {
                    out.zero += active.len();
                    break;
                };
                let c = m[i][j].clone();
                let cc = c.conj();
                for &k in &active {
                    let v = &c * &m[j][k];
                    m[i][k] += &v;
                }
                for &k in &active {
                    let v = &m[k][j] * &cc;
                    m[k][i] += &v;
                }
                ai
            }
        };
        let k = active.remove(pos);
        let d = m[k][k].re.clone();
        if d > BigRational::zero() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        let dinv = GaussianRational::real(d.recip());
        let col: Vec<GaussianRational> = active.iter().map(|&i| &m[i][k] * &dinv).collect();
        for (ci, &i) in active.iter().enumerate() {
            if col[ci].is_zero() {
                continue;
            }
            for &j in &active {
                let v = &col[ci] * &m[k][j];
                m[i][j] -= &v;
            }
        }
    }
    out
}

/// Basis of the CR and anti-CR harmonics of degree `1..=pmax`, labelled `H(k,0)[i]` / `H(0,k)[i]`.
pub fn h_basis(pmax: u32) -> Vec<(String, SpherePoly)> {
    let mut out = Vec::new();
    for k in 1..=pmax {
        for (p, q) in [(k, 0), (0, k)] {
            for (i, f) in basis(p, q).elements.iter().enumerate() {
                out.push((format!("H({p},{q})[{i}]"), f.clone()));
            }
        }
    }
    out
}

pub fn assemble_on(a: &LinOp, labelled: Vec<(String, SpherePoly)>) -> HermitianForm {
    let (labels, basis): (Vec<String>, Vec<SpherePoly>) = labelled.into_iter().unzip();
    let images: Vec<SpherePoly> = basis.par_iter().map(|f| a.apply(f)).collect();
    let entries = images.par_iter().map(|img| basis.iter().map(|f| inner(img, f)).collect()).collect();
    HermitianForm { labels, basis, entries }
}

pub fn assemble_form(a: &LinOp, pmax: u32) -> HermitianForm {
    assemble_on(a, h_basis(pmax))
}
