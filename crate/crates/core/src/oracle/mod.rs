//! Independent checks: brute-force cohomology, binary quadratic forms and
//! a generator of `GL_2` fixed-point data.

pub mod ce;
pub mod forms;
pub mod gl2;
pub mod linalg;
