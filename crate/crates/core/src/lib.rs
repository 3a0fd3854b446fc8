pub mod apps;
pub mod chowring;
pub mod ci;
mod linalg;
pub mod polytope;
pub mod toric;
