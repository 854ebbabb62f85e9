pub mod algebra;
pub mod builtin;
pub mod exec;
pub mod formula;
pub mod group;
pub mod kernel;
pub mod models;
pub mod search;
