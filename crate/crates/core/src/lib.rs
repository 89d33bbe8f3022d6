//! Euler–Floer characteristic of relative braid classes.
//!
//! A relative braid class is discretized into anchor sequences, the fiber of
//! the discretization is modelled as a cube complex, and the Conley index of
//! each component is computed as GF(2) relative homology. Its Euler
//! characteristic is the Euler–Floer characteristic of the class.

pub mod complex;
pub mod diagram;
pub mod fixtures;
pub mod homology;
pub mod pipeline;
pub mod word;
