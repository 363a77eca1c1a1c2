pub mod profile;
pub mod sequence;
pub mod sset;

pub use profile::{profile, VineProfile};
