//! Exact noncommutative algebra for harmonic coproducts.

pub mod algebra_core;
pub mod betti_matrix;
pub mod bfs_framework;
pub mod braid_betti;
pub mod braid_derham;
pub mod cli_report;
pub mod derham_matrix;
pub mod magnus_gr;
