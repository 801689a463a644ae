//! Exact evaluation of generalized factorial products, their convergent
//! expansions, and the congruences and primality tests built on them.

pub mod arith;
pub mod congruence;
pub mod convergents;
pub mod error;
pub mod harmonic;
pub mod modular;
pub mod poly;
pub mod primes;
pub mod report;
pub mod triangles;

pub use arith::{FactorialParams, Int, Rat};
pub use error::{Error, Result};
pub use report::CongruenceReport;
