//! Exact screening of bipartite principal graphs ("vines") and their
//! translates for unitary realizability.

pub mod bigraph;
pub mod golden;
mod error;
pub mod analysis;
pub mod numeric;
pub mod numfield;
pub mod obstruction;
pub mod poly;
pub mod report;
pub mod survey;

pub use bigraph::{AdjacencyMatrix, Bigraph, ParseError, ParseRule};
pub use error::Error;
pub use poly::{IntPoly, LaurentPoly, RatPoly};
