//! Each command turns its inputs into a list of checked records.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use cr_lab::deformation::{rossi, sphere_constant, torsion};
use cr_lab::form::{assemble_form, Classification, HermitianForm};
use cr_lab::harmonics::{be_check, canonicalize, flat_laplacian, harmonic_form};
use cr_lab::ops::{bochner_residual, eigen_row, StandardOp};
use cr_lab::scalar::parse_rational;
use cr_lab::variation::{first_variation, second_variation};
use cr_lab::{integrate, parse_poly, Error, GaussianRational, SpherePoly};
use num_traits::Zero;

use crate::report::Record;

pub const MAX_BOUND: u32 = 8;

pub type Result<T> = std::result::Result<T, Error>;

fn check_bound(name: &str, v: u32) -> Result<()> {
    if v > MAX_BOUND {
        return Err(Error::Precondition(format!("{name} = {v} exceeds the supported bound {MAX_BOUND}")));
    }
    Ok(())
}

fn parse_phi(src: &str) -> Result<SpherePoly> {
    parse_poly(src)
}

pub fn parse_t(src: &str) -> Result<GaussianRational> {
    parse_rational(src).map(GaussianRational::real)
}

fn bideg(p: u32, q: u32) -> String {
    format!("({p},{q})")
}

fn list(pairs: &[(u32, u32)]) -> String {
    if pairs.is_empty() {
        "none".into()
    } else {
        pairs.iter().map(|&(p, q)| bideg(p, q)).collect::<Vec<_>>().join(" ")
    }
}

fn scalar(rec: Record, name: &str, x: &GaussianRational) -> Record {
    if x.is_real() {
        rec.rational(name, x)
    } else {
        rec.complex(name, x)
    }
}

fn formula(op: StandardOp) -> &'static str {
    match op {
        StandardOp::Kohn => "2(p+1)q",
        StandardOp::ConjKohn => "2(q+1)p",
        StandardOp::Sublap => "2pq+p+q",
        StandardOp::Paneitz => "pq(p+1)(q+1)",
    }
}

pub fn spectrum(pmax: u32, qmax: u32, ops: &[StandardOp]) -> Result<Vec<Record>> {
    check_bound("pmax", pmax)?;
    check_bound("qmax", qmax)?;
    let mut out = Vec::new();
    for &op in ops {
        let mut min_nonzero: Option<GaussianRational> = None;
        for p in 0..=pmax {
            for q in 0..=qmax {
                let row = eigen_row(op, p, q);
                let anchor = format!("{} acts on H(p,q) as the scalar {}", op.name(), formula(op));
                let mut rec = Record::new(format!("spectrum.{}.H({p},{q})", op.name()), anchor, row.passes())
                    .integer("dim", row.observed.len())
                    .integer("expected", row.expected);
                let first = row.observed.first().cloned().flatten();
                match (&first, row.observed.iter().all(|o| *o == first)) {
                    (Some(v), true) => {
                        rec = scalar(rec, "eigenvalue", v);
                        if !v.is_zero() && min_nonzero.as_ref().is_none_or(|m| v.re < m.re) {
                            min_nonzero = Some(v.clone());
                        }
                    }
                    _ => rec = rec.text("eigenvalue", "basis is not mapped to a common multiple of itself"),
                }
                out.push(rec);
            }
        }
        if let (StandardOp::Kohn, Some(m)) = (op, min_nonzero) {
            let ok = m == GaussianRational::from_int(2);
            out.push(
                Record::new(
                    "spectrum.kohn.min-nonzero",
                    "smallest nonzero Kohn eigenvalue equals the Webster curvature R = 2 of the sphere",
                    ok,
                )
                .rational("min_nonzero", &m)
                .integer("webster_curvature", 2),
            );
        }
    }
    Ok(out)
}

pub fn decompose(phi_src: &str) -> Result<Vec<Record>> {
    let phi = parse_phi(phi_src)?;
    let comps = canonicalize(&phi);
    let mut out = Vec::new();
    for ((p, q), h) in &comps {
        let ok = h.uniform_bidegree() == Some((*p, *q)) && flat_laplacian(h).is_zero();
        out.push(
            Record::new(format!("decompose.H({p},{q})"), format!("component of bidegree ({p},{q}) is harmonic"), ok)
                .poly("component", h),
        );
    }
    let sum: SpherePoly = comps.values().cloned().sum();
    out.push(
        Record::new("decompose.reconstruction", "harmonic components sum to phi on the sphere", sum.sphere_eq(&phi))
            .poly("phi", &phi)
            .poly("harmonic_form", &sum),
    );
    let be = be_check(&phi);
    out.push(
        Record::new("decompose.be", "embeddability condition: every component H(p,q) of phi has p >= q+4", true)
            .text("verdict", if be.satisfies_be { "satisfies" } else { "violates" })
            .text("components", list(&be.components))
            .text("violating", list(&be.violating_components)),
    );
    Ok(out)
}

pub fn torsion_cmd(phi_src: &str, t_src: Option<&str>) -> Result<Vec<Record>> {
    let phi = parse_phi(phi_src)?;
    let tor = torsion(&phi);
    let graded: SpherePoly = phi
        .circle_components()
        .into_iter()
        .map(|(m, piece)| piece.scale(&(&GaussianRational::i() * &GaussianRational::from_int(4 - m))))
        .sum();
    let mut out = vec![Record::new(
        "torsion.numerator",
        "torsion numerator coefficient is i(4-m) times the circle-grade-m part of phi",
        tor.numerator_coeff() == graded,
    )
    .poly("numerator_coeff", &tor.numerator_coeff())
    .poly("modulus_sq", &tor.modulus_sq)
    .text("torsion", tor.to_string())];

    let grades: BTreeSet<i64> = phi.circle_components().into_keys().collect();
    let expect_zero = grades.iter().all(|&m| m == 4);
    out.push(
        Record::new(
            "torsion.vanishing",
            "torsion vanishes identically exactly when phi has circle grade p-q = 4 throughout",
            tor.vanishes() == expect_zero,
        )
        .text("vanishes", tor.vanishes().to_string())
        .text("circle_grades", grades.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")),
    );

    if let Some(src) = t_src {
        let t = parse_t(src)?;
        let (num, den) = tor.at(&t);
        if sphere_constant(&den).is_some_and(|d| d.is_zero()) {
            return Err(Error::DegenerateStructure(t.to_string()));
        }
        let mut rec = Record::new("torsion.at-t", "torsion of the deformed structure at the given t", true)
            .rational("t", &t)
            .poly("numerator", &num)
            .poly("denominator", &den);
        if let Some(v) = tor.scalar_at(&t) {
            rec = rec.complex("value", &v);
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn rossi_cmd(t_src: &str) -> Result<Vec<Record>> {
    let t = parse_t(t_src)?;
    let v = rossi(&t)?;
    let general = torsion(&SpherePoly::one()).scalar_at(&t);
    Ok(vec![
        Record::new("rossi.branch", "the parameter lies off the degenerate circle t^2 = 1", true)
            .rational("t", &t)
            .text("branch", v.branch.label()),
        Record::new(
            "rossi.torsion",
            "Rossi torsion 4ti/(1-t^2) agrees with the general torsion formula at phi = 1",
            general.as_ref() == Some(&v.torsion_coeff),
        )
        .complex("torsion", &v.torsion_coeff),
        Record::new(
            "rossi.webster-curvature",
            "Rossi Webster curvature 2(1+t^2)/|1-t^2| is positive",
            v.webster_r.real_sign() == Some(Ordering::Greater),
        )
        .rational("R", &v.webster_r),
    ])
}

pub fn bochner(phi_src: &str) -> Result<Vec<Record>> {
    let phi = parse_phi(phi_src)?;
    let residual = bochner_residual(&phi);
    let reduced = harmonic_form(&residual);
    Ok(vec![Record::new(
        "bochner.residual",
        "Bochner formula for the Kohn Laplacian on the standard sphere: both sides agree on S^3",
        reduced.is_zero(),
    )
    .poly("phi", &phi)
    .poly("residual", &reduced)])
}

fn inertia_witnesses(rec: Record, form: &HermitianForm) -> Result<(Record, Classification)> {
    let inertia = form.inertia()?;
    let class = form.classify()?;
    Ok((
        rec.integer("dim", form.dim())
            .text("classification", class.name())
            .integer("positive", inertia.positive)
            .integer("negative", inertia.negative)
            .integer("zero", inertia.zero),
        class,
    ))
}

pub fn variation(phi_src: &str, order: u8, pmax: u32) -> Result<Vec<Record>> {
    check_bound("pmax", pmax)?;
    if pmax == 0 {
        return Err(Error::Precondition("pmax must be at least 1".into()));
    }
    let phi = parse_phi(phi_src)?;
    let mut out = Vec::new();
    if order == 1 {
        let form = assemble_form(&first_variation(&phi), pmax);
        let rec = Record::new(
            "variation.order1.vanishes",
            "first variation of the Paneitz operator pairs to zero on CR and anti-CR harmonics",
            form.is_zero(),
        );
        out.push(inertia_witnesses(rec, &form)?.0.poly("phi", &phi).integer("pmax", pmax));
        return Ok(out);
    }

    let form = assemble_form(&second_variation(&phi), pmax);
    out.push(
        Record::new("variation.order2.hermitian", "second variation form is Hermitian", form.is_hermitian())
            .integer("dim", form.dim()),
    );
    if !form.is_hermitian() {
        return Ok(out);
    }

    let be = be_check(&phi);
    let comps = canonicalize(&phi);
    let uniform = (comps.len() == 1).then(|| *comps.keys().next().unwrap());
    let (rec, class) = inertia_witnesses(Record::new("variation.order2.classification", "", true), &form)?;
    let (anchor, ok) = if phi.sphere_is_zero() {
        ("the second variation vanishes for phi = 0", class == Classification::Zero)
    } else if be.satisfies_be {
        (
            "under the embeddability condition the second variation form is positive definite",
            class == Classification::PositiveDefinite,
        )
    } else if uniform == Some((0, 0)) && pmax >= 1 {
        (
            "for constant phi the second variation form has negative directions",
            matches!(
                class,
                Classification::Indefinite | Classification::NegativeDefinite | Classification::NegativeSemidefinite
            ),
        )
    } else {
        ("classification of the second variation form; phi violates the embeddability condition", true)
    };
    let mut rec = rec.text("be", if be.satisfies_be { "satisfies" } else { "violates" }).poly("phi", &phi);
    rec.anchor = anchor.to_string();
    rec.status = crate::report::Status::from_bool(ok);
    out.push(rec);

    let negative: Vec<(usize, GaussianRational)> =
        form.diagonal().into_iter().enumerate().filter(|(_, d)| d.real_sign() == Some(Ordering::Less)).collect();
    let degree_of = |label: &str| -> u32 {
        // labels look like H(p,q)[i]
        let inside = &label[2..label.find(')').unwrap()];
        inside.split(',').next().unwrap().parse().unwrap()
    };
    let mut ok = true;
    let mut anchor = String::from("basis directions f with <P0'' f, f> < 0");
    if let Some((p1, q1)) = uniform.filter(|_| !be.satisfies_be) {
        let bound = q1 as i64 + 4 - p1 as i64;
        ok &= negative.iter().all(|(i, _)| (degree_of(&form.labels[*i]) as i64) < bound);
        anchor = format!("negative basis directions f in H(p,q) have p < q1+4-p1 = {bound}");
    }
    if uniform == Some((0, 0)) && pmax >= 1 {
        let firsts: Vec<usize> = (0..form.dim())
            .filter(|&i| form.labels[i].starts_with("H(1,0)") || form.labels[i].starts_with("H(0,1)"))
            .collect();
        ok &= firsts.iter().all(|i| negative.iter().any(|(j, _)| j == i));
        anchor.push_str("; for constant phi all of z1, z2, conj(z1), conj(z2) are negative");
    }
    let mut rec = Record::new("variation.order2.negative-directions", anchor, ok).integer("count", negative.len());
    for (i, d) in &negative {
        rec = rec.rational(form.labels[*i].clone(), d).poly(format!("{}.f", form.labels[*i]), &form.basis[*i]);
    }
    out.push(rec);
    Ok(out)
}

pub fn integrate_cmd(src: &str) -> Result<Vec<Record>> {
    let x = parse_poly(src)?;
    let value = integrate(&x);
    let constant = canonicalize(&x).remove(&(0, 0)).and_then(|c| c.as_constant()).unwrap_or_default();
    Ok(vec![Record::new(
        "integrate.value",
        "integral over the unit-mass sphere equals the constant harmonic component",
        value == constant,
    )
    .poly("expr", &x)
    .complex("value", &value)])
}
