//! Search for an enumeration `v_1, .., v_f` of `V(F)` and a red/blue/green
//! colouring of its pairs such that every edge `{v_i, v_j, v_k}`, `i < j < k`,
//! has `v_i v_j` red, `v_i v_k` blue and `v_j v_k` green.
//!
//! An edge fixes all three of its pair colours once the order is known, so
//! each ordering is decided by propagation alone: it works iff no pair is
//! forced to two colours. Pairs inside no edge are coloured red. All `f!`
//! orderings are tried, in lexicographic order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;

pub const VANISHING_MAX_VERTICES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairColour {
    Red,
    Blue,
    Green,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingWitness {
    /// `ordering[i]` is the vertex enumerated at position `i`.
    pub ordering: Vec<usize>,
    /// Colour of every pair `{u, v}`, `u < v`, listed in lexicographic order.
    pub colours: Vec<(usize, usize, PairColour)>,
}

pub fn check_vanishing_condition(f: &Hypergraph3) -> Result<Option<VanishingWitness>> {
    let n = f.n();
    if n > VANISHING_MAX_VERTICES {
        return Err(Error::Refused(format!(
            "vanishing check supports at most {VANISHING_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if let Some(colours) = propagate(f, &perm) {
            return Ok(Some(VanishingWitness {
                ordering: perm,
                colours,
            }));
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

fn propagate(f: &Hypergraph3, ordering: &[usize]) -> Option<Vec<(usize, usize, PairColour)>> {
    let n = ordering.len();
    let mut pos = vec![0; n];
    for (i, &v) in ordering.iter().enumerate() {
        pos[v] = i;
    }
    let mut colour: Vec<Option<PairColour>> = vec![None; n * n];
    let mut force = |u: usize, v: usize, c: PairColour| -> bool {
        let slot = &mut colour[u.min(v) * n + u.max(v)];
        match slot {
            Some(old) => *old == c,
            None => {
                *slot = Some(c);
                true
            }
        }
    };
    for e in f.edge_iter() {
        let mut t = e;
        t.sort_by_key(|&v| pos[v]);
        let [x, y, z] = t;
        if !(force(x, y, PairColour::Red) && force(x, z, PairColour::Blue) && force(y, z, PairColour::Green)) {
            return None;
        }
    }
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v, colour[u * n + v].unwrap_or(PairColour::Red)));
        }
    }
    Some(out)
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let f = Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap();
        let w = check_vanishing_condition(&f).unwrap().unwrap();
        assert_eq!(w.ordering, vec![0, 1, 2]);
        assert_eq!(
            w.colours,
            vec![(0, 1, PairColour::Red), (0, 2, PairColour::Blue), (1, 2, PairColour::Green)]
        );
    }

    #[test]
    fn two_edges_sharing_a_vertex() {
        let f = Hypergraph3::from_edges(5, [[0, 1, 2], [0, 3, 4]]).unwrap();
        assert!(check_vanishing_condition(&f).unwrap().is_some());
    }

    #[test]
    fn k4_minus_has_none() {
        let f = Hypergraph3::from_edges(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap();
        assert_eq!(check_vanishing_condition(&f).unwrap(), None);
    }

    #[test]
    fn permutations() {
        let mut p = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert!(check_vanishing_condition(&Hypergraph3::empty(7).unwrap())
            .unwrap_err()
            .is_refusal());
    }
}
