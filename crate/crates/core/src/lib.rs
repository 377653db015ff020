pub mod arith;
pub mod error;
pub mod linalg;
pub mod qspace;
pub mod dlstrata;
pub mod lattice;
pub mod clifford;
pub mod ggp;
pub mod polyparse;
pub mod report;
pub mod selftest;
pub mod cli;
