//! Stone spectra of finite lattices.

pub mod bitset;
pub mod corpus;
pub mod doc;
pub mod dot;
pub mod error;
pub mod lattice;
pub mod ortho;
pub mod presheaf;
pub mod quotient;
pub mod random;
pub mod spectral;
pub mod spectrum;
pub mod suite;
pub mod topology;

pub use bitset::ElementSet;
pub use corpus::{corpus, CorpusLattice};
pub use error::{Error, Result};
pub use lattice::{ClassificationReport, Lattice};
pub use ortho::{OrthoLattice, Sector};
pub use presheaf::Presheaf;
pub use quotient::{IdealSpec, QuotientAlgebra};
pub use spectral::{Scalar, SpectralFamily};
pub use spectrum::StoneSpectrum;
pub use topology::FiniteSpace;

/// Exact scalar used for thresholds and function values.
pub type Rational = num_rational::Ratio<i64>;
pub type RationalFamily = SpectralFamily<Rational>;
pub type F64Family = SpectralFamily<f64>;
pub type F32Family = SpectralFamily<f32>;
pub type RationalObservable = spectral::ObservableFn<Rational>;
pub type RationalIncreasing = spectral::CompletelyIncreasingFn<Rational>;
