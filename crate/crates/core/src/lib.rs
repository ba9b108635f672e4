//! Extremal constructions for Turán problems in weakly quasirandom
//! hypergraphs, together with the tools to check them.
//!
//! - [`hypergraph`]: 3- and 4-uniform hypergraphs with bitset link rows.
//! - [`constructions`]: seeded generators (tournament, colouring, rainbow,
//!   `S_k`-free, oriented 4-graphs).
//! - [`certifiers`]: deviation from uniform edge distribution, exact and
//!   heuristic, plus bipartite regularity and triangle counting.
//! - [`detectors`]: search for `K4-`, cliques, `S_k`, `F(4)`, small patterns
//!   and the ordered red/blue/green colouring condition.
//! - [`multipartite`]: mean-square degree conditions on multipartite graphs,
//!   the auxiliary triple systems and a tightness explorer.
//! - [`oracle`]: slow brute-force reference implementations used by tests.

pub mod bitset;
pub mod certifiers;
pub mod constructions;
pub mod detectors;
mod error;
pub mod graph;
pub mod hash;
pub mod hypergraph;
pub mod io;
pub mod multipartite;
pub mod oracle;
pub mod rational;

pub use error::{Error, Result};
pub use hypergraph::{DensityReport, Hypergraph3, Hypergraph4};
pub use io::{read_hypergraph, AnyHypergraph};
pub use rational::{parse_rational, Rational};
