//! Clique counting and extremal bounds for graphs whose `K_r` copies form an
//! `L`-intersecting family.

pub mod bitset;
pub mod bounds;
pub mod catalog;
pub mod cliques;
pub mod constructions;
pub mod delta;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod rational;
pub mod search;
pub mod setsystem;
pub mod stability;
pub mod suite;
pub mod sunflower;

pub use error::{Error, Result};
pub use graph::Graph;
