//! Matrix-valued measures on the real line, the Hilbert space `L²(M)`,
//! multiplication operators and spectral representations of finite
//! Hermitian operators.

pub mod accont;
pub mod borel;
pub mod cyclic;
pub mod error;
pub mod fuzz;
pub mod json;
pub mod l2;
pub mod linalg;
pub mod measure;
pub mod multop;
pub mod poly;
pub mod quad;
pub mod symbol;
pub mod verify;

pub use borel::{BorelSet, Interval};
pub use error::{Error, Result};
pub use l2::VectorFunction;
pub use linalg::{ComplexMatrix, C64};
pub use measure::MatrixMeasure;
