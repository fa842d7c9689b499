//! Tomographic probability representation of qubit and qutrit states.
//!
//! States are handled through their spin tomograms. These are outcome
//! distributions of spin measurements along chosen directions, and they are
//! points on a probability simplex. Joint tomograms of bipartite states are
//! binned to "qubit portraits", 4-outcome distributions. Four of them form a
//! stochastic matrix whose CHSH functional `|Tr(M I)|` is at most 2 for
//! separable states. The [`search`] module looks for directions that push it
//! above 2.
//!
//! The numerics are generic over the scalar type. [`probcore`] and
//! [`portrait`] also work with exact rationals. The aliases below pin the
//! common choices.
//!
//! ```
//! use qportrait::{bell, demo, quantum::states};
//!
//! let report = bell::bell_report(&states::bell_state::<f64>(), (2, 2), &demo::bell_angles()).unwrap();
//! assert!((report.value - 2.0 * 2f64.sqrt()).abs() < 1e-12);
//! ```

pub mod bell;
pub mod demo;
pub mod error;
pub mod io;
pub mod linalg;
pub mod portrait;
pub mod probcore;
pub mod quantum;
pub mod random;
pub mod scalar;
pub mod search;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

pub type Exact = num_rational::Rational64;

pub type ProbVector = probcore::ProbVector<f64>;
pub type ProbVectorF32 = probcore::ProbVector<f32>;
pub type ExactProbVector = probcore::ProbVector<Exact>;

pub type StochasticMatrix = probcore::StochasticMatrix<f64>;
pub type StochasticMatrixF32 = probcore::StochasticMatrix<f32>;
pub type ExactStochasticMatrix = probcore::StochasticMatrix<Exact>;

pub type BistochasticMatrix = probcore::BistochasticMatrix<f64>;
pub type ExactBistochasticMatrix = probcore::BistochasticMatrix<Exact>;

pub type DensityMatrix = quantum::DensityMatrix<f64>;
pub type DensityMatrixF32 = quantum::DensityMatrix<f32>;
pub type Direction = quantum::Direction<f64>;
pub type Tomogram = quantum::Tomogram<f64>;

pub type Quadruple = bell::Quadruple<f64>;
pub type ChshMatrix = bell::ChshMatrix<f64>;
pub type BellReport = bell::BellReport<f64>;

pub type PortraitTriple = portrait::PortraitTriple<f64>;
pub type ReducedTomogram = portrait::ReducedTomogram<f64>;

pub type SearchResult = search::SearchResult<f64>;
