//! Bigraded spherical harmonics `H_{p,q}` and the harmonic normal form of a
//! polynomial restricted to S^3.
//!
//! `H_{p,q}` is the kernel of the flat Laplacian
//! `L = d²/dz1 dconj(z1) + d²/dz2 dconj(z2)` on `P_{p,q}`. Every bihomogeneous
//! `f` splits uniquely as `f = Σ_j r^{2j} h_j` with `h_j ∈ H_{p-j,q-j}`, and
//! since `r² = 1` on the sphere the restriction of `f` is `Σ_j h_j`. Collecting
//! these pieces over all bidegrees gives a canonical form, which is what
//! [`SpherePoly::sphere_eq`] compares.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::integrate::inner;
use crate::poly::{Monomial, SpherePoly, Var};
use crate::scalar::GaussianRational;

/// Basis of `H_{p,q}` (dimension `p + q + 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicBasis {
    pub p: u32,
    pub q: u32,
    pub elements: Vec<SpherePoly>,
}

impl HarmonicBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Exact Gram-Schmidt with respect to the L^2 inner product; elements stay
    /// in `H_{p,q}` but are no longer normalized.
    pub fn orthogonalized(&self) -> HarmonicBasis {
        let mut out: Vec<SpherePoly> = Vec::with_capacity(self.elements.len());
        let mut norms: Vec<GaussianRational> = Vec::new();
        for e in &self.elements {
            let mut v = e.clone();
            for (u, nu) in out.iter().zip(&norms) {
                let c = &inner(e, u) / nu;
                v = v - u.scale(&c);
            }
            norms.push(inner(&v, &v));
            out.push(v);
        }
        HarmonicBasis { p: self.p, q: self.q, elements: out }
    }
}

pub fn flat_laplacian(x: &SpherePoly) -> SpherePoly {
    x.partial(Var::Z1).partial(Var::Z1c) + x.partial(Var::Z2).partial(Var::Z2c)
}

type BasisCache = Mutex<HashMap<(u32, u32), Arc<HarmonicBasis>>>;

fn cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Reduced-row-echelon kernel basis of `L: P_{p,q} -> P_{p-1,q-1}`, columns
/// in lexicographic monomial order. Cached; safe to call from many threads.
pub fn basis(p: u32, q: u32) -> Arc<HarmonicBasis> {
    if let Some(b) = cache().lock().unwrap().get(&(p, q)) {
        return b.clone();
    }
    let b = Arc::new(compute_basis(p, q));
    cache().lock().unwrap().entry((p, q)).or_insert(b).clone()
}

pub fn orthogonal_basis(p: u32, q: u32) -> HarmonicBasis {
    basis(p, q).orthogonalized()
}

fn compute_basis(p: u32, q: u32) -> HarmonicBasis {
    let cols = Monomial::of_bidegree(p, q);
    if p == 0 || q == 0 {
        let elements = cols.into_iter().map(SpherePoly::monomial).collect();
        return HarmonicBasis { p, q, elements };
    }
    let rows = Monomial::of_bidegree(p - 1, q - 1);
    let row_index: HashMap<Monomial, usize> = rows.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let mut mat = vec![vec![BigRational::zero(); cols.len()]; rows.len()];
    for (j, m) in cols.iter().enumerate() {
        for (mm, c) in flat_laplacian(&SpherePoly::monomial(*m)).terms() {
            mat[row_index[mm]][j] = c.re.clone();
        }
    }
    let elements = kernel(mat, cols.len())
        .into_iter()
        .map(|v| SpherePoly::from_terms(cols.iter().zip(v).map(|(m, c)| (*m, GaussianRational::real(c)))))
        .collect();
    HarmonicBasis { p, q, elements }
}

/// Kernel basis of a rational matrix by Gauss-Jordan elimination, one vector
/// per free column.
pub(crate) fn kernel(mut mat: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let nrows = mat.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !mat[i][col].is_zero()) else { continue };
        mat.swap(r, pr);
        let inv = BigRational::one() / &mat[r][col];
        for x in mat[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nrows {
            if i != r && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                let (head, tail) = mat.split_at_mut(i.max(r));
                let (row_i, row_r) = if i < r { (&mut head[i], &tail[0]) } else { (&mut tail[0], &head[r]) };
                for (x, y) in row_i.iter_mut().zip(row_r.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![BigRational::zero(); ncols];
            v[fc] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -mat[row][fc].clone();
            }
            v
        })
        .collect()
}

/// Splits a polynomial of uniform bidegree `(p, q)` as `Σ_j r^{2j} h_j`,
/// returning `h_j ∈ H_{p-j,q-j}` for `j = 0..=min(p, q)`.
///
/// If `L f = Σ_j r^{2j} u_j` then, from `L(r^{2j} h) = j(j + 1 + deg h) r^{2j-2} h`,
/// `h_j = u_{j-1} / (j (p + q + 1 - j))` for `j ≥ 1`, and `h_0` is what remains.
pub fn harmonic_split(f: &SpherePoly, p: u32, q: u32) -> Vec<SpherePoly> {
    let depth = p.min(q) as usize;
    let mut out = vec![SpherePoly::zero(); depth + 1];
    if f.is_zero() {
        return out;
    }
    if depth == 0 {
        out[0] = f.clone();
        return out;
    }
    let lower = harmonic_split(&flat_laplacian(f), p - 1, q - 1);
    let r2 = SpherePoly::r2();
    let mut rest = f.clone();
    let mut r_pow = SpherePoly::one();
    for j in 1..=depth {
        r_pow = &r_pow * &r2;
        let u = &lower[j - 1];
        if u.is_zero() {
            continue;
        }
        let denom = (j as i64) * (p as i64 + q as i64 + 1 - j as i64);
        let h = u.scale(&GaussianRational::ratio(1, denom));
        rest = rest - &r_pow * &h;
        out[j] = h;
    }
    out[0] = rest;
    out
}

/// Harmonic components `(p, q) -> h_{p,q}` with `x` equal to `Σ h_{p,q}` on
/// the sphere; zero components are omitted.
pub fn canonicalize(x: &SpherePoly) -> BTreeMap<(u32, u32), SpherePoly> {
    let mut out: BTreeMap<(u32, u32), SpherePoly> = BTreeMap::new();
    for ((p, q), f) in x.bigraded_components() {
        for (j, h) in harmonic_split(&f, p, q).into_iter().enumerate() {
            if h.is_zero() {
                continue;
            }
            let key = (p - j as u32, q - j as u32);
            let e = out.entry(key).or_default();
            *e = &*e + &h;
        }
    }
    out.retain(|_, h| !h.is_zero());
    out
}

/// The harmonic representative `Σ h_{p,q}` of `x` on the sphere.
pub fn harmonic_form(x: &SpherePoly) -> SpherePoly {
    canonicalize(x).into_values().sum()
}

/// Component of `x` in `H_{p,q}` (zero if absent).
pub fn project(x: &SpherePoly, p: u32, q: u32) -> SpherePoly {
    canonicalize(x).remove(&(p, q)).unwrap_or_default()
}

impl SpherePoly {
    /// Equality of restrictions to S^3.
    pub fn sphere_eq(&self, other: &SpherePoly) -> bool {
        canonicalize(&(self - other)).is_empty()
    }

    pub fn sphere_is_zero(&self) -> bool {
        canonicalize(self).is_empty()
    }
}

/// Outcome of the embeddability condition check: components with `p < q + 4`
/// are violations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeVerdict {
    pub satisfies_be: bool,
    pub components: Vec<(u32, u32)>,
    pub violating_components: Vec<(u32, u32)>,
}

pub fn be_check(phi: &SpherePoly) -> BeVerdict {
    let components: Vec<(u32, u32)> = canonicalize(phi).into_keys().collect();
    let violating_components: Vec<(u32, u32)> = components.iter().copied().filter(|&(p, q)| p < q + 4).collect();
    BeVerdict { satisfies_be: violating_components.is_empty(), components, violating_components }
}
