//! Exact arithmetic: finite fields, polynomial rings, rational function
//! fields and their finite extensions.

pub mod ext;
pub mod ffactor;
pub mod gf;
pub mod linalg;
pub mod poly;
pub mod ratfn;
pub mod ring;

pub use ext::ExtField;
pub use gf::{Fe, Gf};
pub use poly::PolyRing;
pub use ratfn::{RatFn, RatFnField};
pub use ring::{Field, FiniteField, FpSpace, Ring};
