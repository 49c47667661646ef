mod common;

use cr_lab::deformation::torsion;
use cr_lab::form::assemble_form;
use cr_lab::harmonics::canonicalize;
use cr_lab::ops::{apply_t, apply_z1, apply_z1bar, bochner_residual, conj_kohn, kohn, paneitz, sublap};
use cr_lab::variation::{dsquared_form, first_variation, second_variation};
use cr_lab::{basis, inner, GaussianRational, SpherePoly};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn poly(seed: u64, pmax: u32, qmax: u32, terms: usize) -> SpherePoly {
    common::poly(&mut common::rng(seed), pmax, qmax, terms)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn conjugation_is_multiplicative_and_involutive(a in any::<u64>(), b in any::<u64>()) {
        let x = poly(a, 3, 3, 4);
        let y = poly(b, 3, 3, 4);
        prop_assert_eq!((&x * &y).conj(), x.conj() * y.conj());
        prop_assert_eq!(x.conj().conj(), x.clone());
        let m = x.norm_sqr();
        prop_assert_eq!(m.conj(), m);
    }

    #[test]
    fn decompositions_partition(a in any::<u64>()) {
        let x = poly(a, 4, 4, 6);
        let bi = x.bigraded_components();
        prop_assert_eq!(bi.values().cloned().sum::<SpherePoly>(), x.clone());
        for ((p, q), piece) in &bi {
            prop_assert_eq!(piece.uniform_bidegree(), Some((*p, *q)));
            prop_assert_eq!(piece.bigraded_components().len(), 1);
        }
        let circ = x.circle_components();
        prop_assert_eq!(circ.values().cloned().sum::<SpherePoly>(), x.clone());
        for (m, piece) in &circ {
            prop_assert_eq!(piece.uniform_circle_grade(), Some(*m));
        }
    }

    #[test]
    fn sphere_equality_is_compatible_with_ring_operations(a in any::<u64>(), b in any::<u64>()) {
        let x = poly(a, 3, 3, 4);
        let y = poly(b, 2, 2, 3);
        let x2 = &x * &SpherePoly::r2();
        prop_assert!(x2.sphere_eq(&x));
        prop_assert!((&x2 * &y).sphere_eq(&(&x * &y)));
        prop_assert!((&x2 + &y).sphere_eq(&(&x + &y)));
        prop_assert!(canonicalize(&x).values().cloned().sum::<SpherePoly>().sphere_eq(&x));
    }

    #[test]
    fn canonicalize_is_a_projection(a in any::<u64>()) {
        let x = poly(a, 4, 3, 5);
        for ((p, q), h) in canonicalize(&x) {
            let again = canonicalize(&h);
            prop_assert_eq!(again.len(), 1);
            prop_assert_eq!(again.get(&(p, q)), Some(&h));
        }
    }

    #[test]
    fn parseval(a in any::<u64>()) {
        let x = poly(a, 3, 3, 5);
        let total: GaussianRational = canonicalize(&x).values().map(|h| inner(h, h)).sum();
        prop_assert_eq!(inner(&x, &x), total);
    }

    #[test]
    fn circle_grades_are_orthogonal(a in any::<u64>(), b in any::<u64>()) {
        let x = poly(a, 3, 3, 5);
        let y = poly(b, 3, 3, 5);
        for (mx, px) in x.circle_components() {
            for (my, py) in y.circle_components() {
                if mx != my {
                    prop_assert!(inner(&px, &py).is_zero());
                }
            }
        }
    }

    #[test]
    fn real_multipliers_are_symmetric(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let x = poly(a, 2, 2, 3);
        let y = poly(b, 2, 2, 3);
        let g = poly(c, 2, 2, 3);
        let real = &g + &g.conj();
        prop_assert_eq!(inner(&(&real * &x), &y), inner(&x, &(&real * &y)));
    }

    #[test]
    fn inner_product_is_positive(a in any::<u64>()) {
        let x = poly(a, 3, 3, 4);
        let n = inner(&x, &x);
        prop_assert!(n.is_real());
        prop_assert_eq!(n.re > BigRational::zero(), !x.sphere_is_zero());
    }

    #[test]
    fn vector_fields_are_tangent(a in any::<u64>()) {
        let x = poly(a, 3, 3, 4);
        let r2 = SpherePoly::r2();
        prop_assert!(apply_z1(&r2).is_zero() && apply_z1bar(&r2).is_zero() && apply_t(&r2).is_zero());
        prop_assert_eq!(apply_z1(&(&r2 * &x)), &r2 * &apply_z1(&x));
        prop_assert_eq!(apply_z1bar(&x.conj()), apply_z1(&x).conj());
    }

    #[test]
    fn bochner_residual_vanishes(a in any::<u64>()) {
        let phi = poly(a, 3, 3, 4);
        prop_assert!(bochner_residual(&phi).sphere_is_zero());
    }

    #[test]
    fn torsion_grading_law(a in any::<u64>(), p in 0u32..6, q in 0u32..6) {
        let phi = common::full_bidegree(&mut common::rng(a), p, q);
        let m = p as i64 - q as i64;
        let expected = phi.scale(&(&GaussianRational::i() * &GaussianRational::from_int(4 - m)));
        prop_assert_eq!(torsion(&phi).numerator_coeff(), expected);
        prop_assert_eq!(torsion(&phi).vanishes(), p == q + 4);
    }

    #[test]
    fn linop_application_is_linear(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let phi = poly(c, 2, 1, 2);
        let op = second_variation(&phi);
        let x = poly(a, 2, 2, 3);
        let y = poly(b, 2, 2, 3);
        prop_assert_eq!(op.apply(&(&x + &y)), op.apply(&x) + op.apply(&y));
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn first_variation_form_vanishes(a in any::<u64>()) {
        let phi = poly(a, 3, 2, 3);
        prop_assert!(assemble_form(&first_variation(&phi), 3).is_zero());
    }

    #[test]
    fn second_variation_form_is_hermitian(a in any::<u64>()) {
        let phi = poly(a, 3, 2, 3);
        prop_assert!(assemble_form(&second_variation(&phi), 3).is_hermitian());
    }

    #[test]
    fn d_squared_is_a_sum_of_squares(a in any::<u64>()) {
        let mut rng = common::rng(a);
        let phi = common::poly(&mut rng, 3, 3, 3);
        let f = common::kernel_element(&mut rng, 3, true);
        let d = dsquared_form(&phi, &f).unwrap();
        prop_assert!(d.holds(), "{:?}", d);
    }
}

#[test]
fn eigenvalue_table_and_commutator() {
    for p in 0..=6u32 {
        for q in 0..=6u32 {
            let (pi, qi) = (p as i64, q as i64);
            for f in &basis(p, q).elements {
                assert_eq!(kohn(f), f.scale_int(2 * (pi + 1) * qi));
                assert_eq!(conj_kohn(f), f.scale_int(2 * (qi + 1) * pi));
                assert_eq!(sublap(f), f.scale_int(2 * pi * qi + pi + qi));
                assert_eq!(paneitz(f), f.scale_int(pi * qi * (pi + 1) * (qi + 1)));
                // □ - □̄ = 2iT, scalar 2(q - p)
                assert_eq!(kohn(f) - conj_kohn(f), f.scale_int(2 * (qi - pi)));
                assert_eq!(
                    kohn(f) - conj_kohn(f),
                    apply_t(f).scale(&(&GaussianRational::i() * &GaussianRational::from_int(2)))
                );
            }
        }
    }
}

#[test]
fn kohn_and_paneitz_are_hermitian() {
    let fs: Vec<SpherePoly> = (0..=6u32)
        .flat_map(|n| (0..=n).map(move |p| (p, n - p)))
        .flat_map(|(p, q)| basis(p, q).elements.clone())
        .collect();
    let kf: Vec<SpherePoly> = fs.iter().map(kohn).collect();
    let pf: Vec<SpherePoly> = fs.iter().map(paneitz).collect();
    for i in 0..fs.len() {
        for j in 0..fs.len() {
            assert_eq!(inner(&kf[i], &fs[j]), inner(&fs[i], &kf[j]));
            assert_eq!(inner(&pf[i], &fs[j]), inner(&fs[i], &pf[j]));
        }
    }
}

#[test]
fn harmonic_dimensions_and_orthogonality() {
    for p in 0..=8u32 {
        for q in 0..=8u32 {
            assert_eq!(basis(p, q).dim(), (p + q + 1) as usize);
        }
    }
    let spaces: Vec<((u32, u32), SpherePoly)> = (0..=6u32)
        .flat_map(|n| (0..=n).map(move |p| (p, n - p)))
        .flat_map(|pq| basis(pq.0, pq.1).elements.clone().into_iter().map(move |f| (pq, f)))
        .collect();
    for (a, f) in &spaces {
        for (b, g) in &spaces {
            if a != b {
                assert!(inner(f, g).is_zero());
            }
            if a == b {
                assert_eq!(sublap(f), f.scale_int((2 * a.0 * a.1 + a.0 + a.1) as i64));
            }
        }
    }
}
