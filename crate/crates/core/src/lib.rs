//! Exact finite-field linear algebra for matrix degree reduction, with a
//! desk-scale Cayley-graph laboratory and calculators for the related
//! diameter bounds.

pub mod bounds;
pub mod cayley;
pub mod degred;
pub mod gen;
pub mod gf;
pub mod matrix;
pub mod par;
pub mod poly;
pub mod wire;
