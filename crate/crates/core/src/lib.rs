//! Root-distinct balanced simplices in weight systems of simple Lie groups,
//! the degree divisors they predict for generating invariants, and numeric
//! verification harnesses on explicit classical models.

pub mod cli;
pub mod exact;
pub mod models;
pub mod moment;
pub mod predict;
pub mod rootsys;
pub mod simplex;
pub mod weights;
