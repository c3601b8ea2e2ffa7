pub mod batch;
pub mod bcp;
pub mod claw;
pub mod connectivity;
pub mod dfs;
pub mod divide;
pub mod error;
pub mod frac;
pub mod gen;
pub mod gl;
pub mod graph;
pub mod oracle;
pub mod partition;
