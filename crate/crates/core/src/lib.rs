pub mod classify;
pub mod corpus;
pub mod graph;
pub mod kernel;
pub mod monoid;
pub mod selfcheck;
