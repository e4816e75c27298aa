//! Exact scalars and matrices: rationals, Grassmann numbers, q_as(n) and
//! supermatrix elements, and metric Lie (super)algebra data.

pub mod grassmann;
pub mod liedata;
pub mod matrix;
pub mod qelement;
pub mod rational;
pub mod supermatrix;

pub use grassmann::Grassmann;
pub use liedata::{build_qn, odd_double, EvenLieData, EvenMetricLieData, OddMetricLieData, Tensor3};
pub use qelement::QElement;
pub use rational::Rational;
pub use supermatrix::SuperMatrix;
