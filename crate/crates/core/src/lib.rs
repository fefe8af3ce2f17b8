//! Arrow graphs of real functions and their focal curves.

pub mod algebra;
pub mod expr;
pub mod focal;
pub mod poly;
pub mod transforms;
pub mod render;
pub mod selftest;
