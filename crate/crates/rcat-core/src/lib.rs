//! Finite restriction categories.
//!
//! Two kinds of category live side by side. [`FinRCat`] is a dense table
//! read from or written to the JSON file format. The formula models
//! ([`par::Par`], [`par::FinSet`], [`copy::Kleisli`], [`split::Kr`]) compute
//! composites on demand and only enumerate hom-sets inside a bounded
//! universe of objects, so constructions may pass through objects far
//! larger than anything that could be tabulated.
//!
//! Every checker is generic over [`Category`] / [`RestrictionCategory`] and
//! quantifies over `objects()`.

#[macro_use]
mod macros;

pub mod category;
pub mod coproduct;
pub mod copy;
pub mod error;
pub mod format;
pub mod instances;
pub mod par;
pub mod product;
pub mod report;
pub mod split;

pub use category::{Category, FinCategory, FinRCat, MorId, ObjId, RestrictionCategory};
pub use error::{CatError, Result};
pub use report::{CheckOptions, LawReport, Status, Violation};
