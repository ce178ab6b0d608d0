//! Pattern-avoiding involutions through labelled Motzkin paths: the path
//! bijection, simple-involution structure, exact generating functions, and a
//! census that checks one against the other.

pub mod census;
pub mod cli;
pub mod fine_structure;
pub mod motzkin;
pub mod perm;
pub mod series;
