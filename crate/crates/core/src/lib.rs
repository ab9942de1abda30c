//! Exact algebra for bivariate germs with harmonic leading terms.
//!
//! The algebraic layers ([`poly`], [`linalg`], [`harmonic`], [`graded`],
//! [`jets`]) are generic over the coefficient field through [`Scalar`].
//! Certificates and witnesses ([`determinacy`], [`equivalence`]) are built
//! over exact rationals only. The aliases below name the concrete types
//! most callers want.

pub mod determinacy;
pub mod equivalence;
pub mod error;
pub mod gauss;
pub mod graded;
pub mod harmonic;
pub mod jets;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod sample;
pub mod scalar;

use num_complex::Complex;

pub use error::{Error, Result};
pub use parse::{parse_poly, ParseError};
pub use poly::{Degree, Monomial, Order, Polynomial, Var};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;
pub type GaussRational = Complex<Rational>;

pub type Poly = Polynomial<Rational>;
pub type GaussPoly = Polynomial<GaussRational>;
pub type FloatPoly = Polynomial<f64>;

pub type RationalMatrix = linalg::Matrix<Rational>;
pub type FloatMatrix = linalg::Matrix<f64>;

pub type GradedSubspace = graded::Subspace<Rational>;
pub type FloatSubspace = graded::Subspace<f64>;

pub type RationalJet = jets::Jet<Rational>;
pub type RationalJetMap = jets::JetMap<Rational>;
pub type GaussJet = jets::Jet<GaussRational>;

pub type HarmonicPair = harmonic::HarmonicPair<Rational>;
pub type AlmansiDecomposition = harmonic::AlmansiDecomposition<Rational>;
