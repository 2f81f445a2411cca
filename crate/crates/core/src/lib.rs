//! Young graphs for (g,k)-reverse multiples.
//!
//! A number N is a (g,k)-reverse multiple when reversing its base-g digits
//! yields exactly k*N; 1089 and 2178 are the two decimal instances that
//! started the subject. The carry chain of the multiplication obeys a small
//! system of paired congruences, and the solutions organize into a finite
//! directed graph on carry pairs. Walks from the starting node to a pivot
//! node correspond one-to-one with reverse multiples, which makes the graph
//! the right object for existence tests, enumeration in increasing order,
//! and exact counting by digit length via the transfer-matrix method.
//!
//! Modules:
//! - [`numeral`]: base-g digit vectors, carry-tracked multiplication, the
//!   reverse-multiple test, and an exhaustive search oracle.
//! - [`graphcore`]: building H(g,k), pivots, existence, pruning to the
//!   Young graph, and structural validation.
//! - [`enumerate`]: decoding pivot paths into digit strings and listing
//!   multiples in increasing order.
//! - [`genfunc`]: exact integer-polynomial linear algebra for the
//!   generating functions counting multiples by length.
//! - [`classify`]: graph families, pivot-colored isomorphism, palindromic
//!   factorizations, and the conjecture auditor.
//! - [`dot`]: deterministic Graphviz export.

pub mod classify;
pub mod dot;
pub mod enumerate;
mod error;
pub mod genfunc;
pub mod graphcore;
pub mod numeral;

pub use error::{Error, Result};
