//! Exact computer algebra for CR geometry on the 3-sphere.
//!
//! Functions on S^3 are polynomials in `z1, z2` and their conjugates with
//! Gaussian-rational coefficients ([`SpherePoly`]). On top of that sit the
//! CR frame fields and the Kohn, sub- and Paneitz operators ([`ops`]), the
//! bigraded harmonic decomposition ([`harmonics`]), deformed structures and
//! their torsion ([`deformation`]), and the first and second variation of the
//! Paneitz operator with exact quadratic-form classification ([`variation`],
//! [`form`]). No floating point is used anywhere in the computations.

pub mod deformation;
pub mod error;
pub mod form;
pub mod harmonics;
pub mod integrate;
pub mod jet;
pub mod ops;
pub mod parser;
pub mod poly;
pub mod scalar;
pub mod variation;

pub use deformation::{rossi, torsion, zero_torsion_classify, RossiBranch, RossiValues, Torsion};
pub use error::{Error, Result};
pub use form::{assemble_form, Classification, HermitianForm};
pub use harmonics::{basis, be_check, canonicalize, BeVerdict, HarmonicBasis};
pub use integrate::{inner, integrate, integrate_monomial, Measure};
pub use jet::{OpJet, TJet};
pub use ops::{LinOp, StandardOp};
pub use parser::{parse, parse_poly, Expr};

pub use poly::{Monomial, SpherePoly, Var};
pub use scalar::GaussianRational;
pub use variation::{first_variation, second_variation, Side, VariationOperators};
