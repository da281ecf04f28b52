//! Linear codes, polyalphabetic codes and nested chains of inner codes.

mod chain;
pub mod io;
mod linear;
mod named;
mod poly;

pub use chain::NestedChain;
pub use linear::{LinearCode, DEFAULT_EXHAUSTION_LIMIT, SYNDROME_TABLE_LIMIT};
pub use named::{named_code, CodeFamily};
pub use poly::PolyalphabeticCode;

pub(crate) use linear::{checked_count, walk_errors, walk_span};
