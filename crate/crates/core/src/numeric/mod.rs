pub mod bigfloat;
pub mod circle;
pub mod perron;
pub mod roots;

pub use bigfloat::BigFloat;
