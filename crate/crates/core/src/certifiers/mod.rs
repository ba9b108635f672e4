//! Measures of uniform edge distribution.
//!
//! Every certifier reports a maximum deviation `D` in edge-count units
//! together with a normalized `eta` (`D / n^3` for 3-uniform, `D / n^4` for
//! 4-uniform, `D / (|X| |Y|)` for bipartite graphs). In exact mode `D` is the
//! true maximum; otherwise it is the value of an explicit witness and hence a
//! lower bound on the maximum.

mod bipartite;
mod pair;
mod sets;
mod weak;

pub use bipartite::{
    bipartite_regularity_deviation, relative_density, tcl_check, triangle_count_tripartite,
    RelativeDensity, TclReport, Triad,
};
pub use pair::pair_deviation;
pub use sets::{quad_value, quad_vertex_deviation, xyz_deviation, xyz_value, SampleConfig};
pub use weak::weak_deviation;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{rat, serialize_rational, to_f64, Rational};

/// Default and hard exact-mode limits on the enumerated side.
pub const WEAK_EXACT_CAP: usize = 24;
pub const WEAK_EXACT_HARD_CAP: usize = 30;
pub const PAIR_EXACT_CAP: usize = 20;
pub const PAIR_EXACT_HARD_CAP: usize = 24;
pub const BIPARTITE_EXACT_CAP: usize = 24;
pub const BIPARTITE_EXACT_HARD_CAP: usize = 30;

pub const DEFAULT_RESTARTS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Exhaustive; `cap` overrides the default size limit.
    Exact { cap: Option<usize> },
    /// Steepest single-vertex toggle from `restarts` seeded random starts.
    Search { restarts: usize, seed: u64 },
}

impl Mode {
    pub fn exact() -> Self {
        Mode::Exact { cap: None }
    }

    pub fn search(seed: u64) -> Self {
        Mode::Search {
            restarts: DEFAULT_RESTARTS,
            seed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    LocalSearch,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeviationKind {
    Weak,
    Xyz,
    Pair,
    Quad,
    Bipartite,
}

impl DeviationKind {
    pub const ALL: [DeviationKind; 5] = [
        DeviationKind::Weak,
        DeviationKind::Xyz,
        DeviationKind::Pair,
        DeviationKind::Quad,
        DeviationKind::Bipartite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DeviationKind::Weak => "weak",
            DeviationKind::Xyz => "xyz",
            DeviationKind::Pair => "pair",
            DeviationKind::Quad => "quad",
            DeviationKind::Bipartite => "bipartite",
        }
    }
}

impl fmt::Display for DeviationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DeviationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DeviationKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown deviation kind {s:?}")))
    }
}

/// Sets realizing a deviation. `sets` holds `U`, or `X, Y, Z`, or
/// `U_1..U_4`, or `X', Y'`; `pairs` holds the pair set of the pair form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DeviationWitness {
    pub sets: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeviationReport {
    pub kind: DeviationKind,
    pub n: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub reference_density: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub max_deviation: Rational,
    pub max_deviation_value: f64,
    #[serde(serialize_with = "serialize_rational")]
    pub eta_exact: Rational,
    pub eta: f64,
    pub witness: DeviationWitness,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl DeviationReport {
    pub(crate) fn new(
        kind: DeviationKind,
        n: usize,
        d: Rational,
        deviation: Rational,
        normaliser: i128,
        witness: DeviationWitness,
        method: Method,
    ) -> Self {
        let eta_exact = if normaliser == 0 {
            rat(0, 1)
        } else {
            deviation / normaliser
        };
        DeviationReport {
            kind,
            n,
            reference_density: d,
            max_deviation_value: to_f64(&deviation),
            max_deviation: deviation,
            eta: to_f64(&eta_exact),
            eta_exact,
            witness,
            method,
            restarts: None,
            samples: None,
            seed: None,
        }
    }

    pub(crate) fn with_search(mut self, restarts: usize, seed: u64) -> Self {
        self.restarts = Some(restarts);
        self.seed = Some(seed);
        self
    }

    pub(crate) fn with_samples(mut self, samples: usize, seed: u64) -> Self {
        self.samples = Some(samples);
        self.seed = Some(seed);
        self
    }
}

/// Resolves the exact-mode size limit, refusing anything above it.
pub(crate) fn exact_limit(
    what: &str,
    size: usize,
    cap: Option<usize>,
    default: usize,
    hard: usize,
) -> Result<()> {
    let cap = cap.unwrap_or(default);
    if cap > hard {
        return Err(Error::Refused(format!(
            "{what}: configured exact cap {cap} exceeds the hard limit {hard}"
        )));
    }
    if size > cap {
        return Err(Error::Refused(format!(
            "{what}: exact mode allows size <= {cap}, got {size}; use search mode"
        )));
    }
    Ok(())
}

pub(crate) fn check_density(d: &Rational) -> Result<()> {
    if *d < rat(0, 1) || *d > rat(1, 1) {
        return Err(Error::invalid(format!("reference density {d} outside [0, 1]")));
    }
    Ok(())
}

/// Bits of `mask` as a sorted vertex list.
pub(crate) fn mask_to_vec(mask: u64) -> Vec<usize> {
    crate::bitset::ones(&[mask]).collect()
}

/// Number of high bits fixed per shard in exact enumerations.
pub(crate) fn shard_bits(n: usize) -> usize {
    n.min(8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps() {
        assert!(exact_limit("weak", 24, None, 24, 30).is_ok());
        assert!(exact_limit("weak", 25, None, 24, 30).unwrap_err().is_refusal());
        assert!(exact_limit("weak", 26, Some(28), 24, 30).is_ok());
        assert!(exact_limit("weak", 2, Some(31), 24, 30).unwrap_err().is_refusal());
    }

    #[test]
    fn kinds_round_trip() {
        for k in DeviationKind::ALL {
            assert_eq!(k.name().parse::<DeviationKind>().unwrap(), k);
        }
        assert!("strong".parse::<DeviationKind>().is_err());
    }
}
