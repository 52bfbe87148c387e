//! Trace Goppa codes over prime fields: construction, an equivalent code
//! with a higher-degree Goppa polynomial, executable checks of the
//! identities relating them, and certified minimum-distance bounds.

pub mod distance;
pub mod error;
pub mod field;
pub mod goppa;
pub mod linalg;
pub mod poly;
pub mod trace;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use goppa::{GoppaCode, Support};
pub use linalg::{MatrixFp, VectorQm};
pub use poly::Polynomial;

pub use trace::{CheckReport, CodeKind, TraceGoppaInstance};
