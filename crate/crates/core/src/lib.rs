mod lapack;
pub mod graph;
pub mod linalg;
