//! Concrete operators built from the shift-operator layer.

pub mod boson;
pub mod braiding;
pub mod catalog;
pub mod comult;
pub mod fops;
pub mod generators;
pub mod suq2;
pub mod xops;
pub mod yd;

pub use catalog::{catalog, CatalogEntry, NamedOperator};
pub use fops::{Banding, Lambda};
