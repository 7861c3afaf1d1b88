//! Input and output: the algebra document format, the built-in catalog and
//! report emission.

pub mod catalog;
pub mod document;
pub mod report;

pub use catalog::{CatalogEntry, CatalogItem, Metadata};


pub use document::{parse_algebra, serialize_algebra, AlgebraDocument, LoadedAlgebra};
pub use report::{emit_report, OutputFormat, Render};
