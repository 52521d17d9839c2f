//! Radar ambiguity functions and their phase-retrieval partners.
//!
//! * [`seqcore`] and [`ambiguity`]: finite sequences, the discrete ambiguity
//!   function, exact partner decisions and trivial (Heisenberg) partners.
//! * [`lambda_sets`]: B₂/B₃ sets and support rigidity.
//! * [`matrix_kron`]: the ambiguity matrix `K_a`, Kronecker products and
//!   strange-partner constructions.
//! * [`hermite`]: the algebraic problem for Hermite signals.
//! * [`pulse`]: continuous ambiguity of pulse trains.
//!
//! Everything numeric is generic over [`scalar::Scalar`]: exact Gaussian
//! rationals (and `Q(i, √2)`) or `f32`/`f64` complex floats.

pub mod ambiguity;
pub mod error;
pub mod hermite;
pub mod lambda_sets;
pub mod matrix_kron;
pub mod pulse;
pub mod quadrature;
pub mod sample;
pub mod scalar;
pub mod seqcore;

pub use error::{Error, Result};
pub use scalar::{GaussianRational, QSqrt2, Scalar, Tolerance};
pub use seqcore::{Signal, SupportSet};

pub use num_complex::{Complex32, Complex64};

pub type ExactSignal = Signal<GaussianRational>;
pub type FloatSignal = Signal<Complex64>;
pub type Float32Signal = Signal<Complex32>;
pub type ExactPoly = hermite::Poly<GaussianRational>;
pub type SqrtTwoPoly = hermite::Poly<QSqrt2>;
pub type FloatPoly = hermite::Poly<Complex64>;
pub type ExactAmbiguityMatrix = matrix_kron::AmbiguityMatrix<GaussianRational>;
