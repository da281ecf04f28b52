//! Weighted-Hamming metric toolbox: weights and the splitting radius `tau`,
//! dimension bounds for a given error-correction capability, generalized
//! concatenated codes with their multistage decoder, and brute-force oracles.

pub mod bounds;
pub mod code;
pub mod construct;
pub mod decode;
pub mod error;
pub mod field;
pub mod linalg;
pub mod metric;
pub mod oracle;
pub mod ratlp;

pub use error::{Error, Result};
pub use field::Field;
pub use metric::{WeightProfile, WeightedSpace};
