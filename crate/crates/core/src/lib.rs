//! Exact local cohomology of holomorphic families of finite complexes.

pub mod error;
pub mod germ_cohom;
pub mod holo_complex;
pub mod ibc_variety;
pub mod json;
pub mod linalg;
pub mod matrix_series;
pub mod mellin_bridge;
pub mod poly;
pub mod reduction;
pub mod residue_pairing;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use holo_complex::{ComplexFamily, GaugeProfile, IndicialInput};
pub use linalg::Mat;
pub use matrix_series::{MapFamily, SmithForm};
pub use scalar::Scalar;
pub use series::LaurentSeries;
