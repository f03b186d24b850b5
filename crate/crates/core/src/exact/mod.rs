pub mod matrix;
pub mod poly;
pub mod rational;
pub mod series;

pub use matrix::{canonical_basis, kernel_basis, matrix_rank, RatMatrix};
pub use poly::Poly;
pub use rational::Rational;
pub use series::TruncatedSeries;
