use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;

pub const EMBED_MAX_VERTICES: usize = 8;

/// An injection `phi: V(F) -> V(H)` mapping every edge of `F` onto an edge
/// of `H`, as `phi[i]` for `i` in `0..f`. In ordered mode `phi` must be
/// increasing. The least such map in lexicographic order is returned.
pub fn embed_small(f: &Hypergraph3, h: &Hypergraph3, ordered: bool) -> Result<Option<Vec<usize>>> {
    if f.n() > EMBED_MAX_VERTICES {
        return Err(Error::Refused(format!(
            "pattern has {} vertices, at most {EMBED_MAX_VERTICES} supported",
            f.n()
        )));
    }
    if f.n() > h.n() {
        return Ok(None);
    }
    // closing[i]: pairs (x, y), x < y < i, with {x, y, i} an edge of F.
    let mut closing = vec![Vec::new(); f.n()];
    for [a, b, c] in f.edge_iter() {
        closing[c].push((a, b));
    }
    let mut phi = Vec::with_capacity(f.n());
    let mut used = Bitset::new(h.n());
    Ok(extend(h, &closing, ordered, &mut phi, &mut used).then_some(phi))
}

fn extend(
    h: &Hypergraph3,
    closing: &[Vec<(usize, usize)>],
    ordered: bool,
    phi: &mut Vec<usize>,
    used: &mut Bitset,
) -> bool {
    let i = phi.len();
    if i == closing.len() {
        return true;
    }
    let mut cand = Bitset::full(h.n());
    cand.difference_with(used);
    if ordered {
        if let Some(&last) = phi.last() {
            cand.clear_up_to(last);
        }
    }
    for &(x, y) in &closing[i] {
        cand.intersect_words(h.link_row(phi[x], phi[y]));
    }
    for v in cand.iter() {
        phi.push(v);
        used.insert(v);
        if extend(h, closing, ordered, phi, used) {
            return true;
        }
        used.remove(v);
        phi.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_embeds() {
        let f = Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap();
        let h = Hypergraph3::from_edges(6, [[1, 3, 5]]).unwrap();
        assert_eq!(embed_small(&f, &h, false).unwrap(), Some(vec![1, 3, 5]));
        assert_eq!(embed_small(&f, &h, true).unwrap(), Some(vec![1, 3, 5]));
        let e = Hypergraph3::empty(6).unwrap();
        assert_eq!(embed_small(&f, &e, false).unwrap(), None);
    }

    #[test]
    fn ordered_respects_order() {
        // Edges 012 and 234 share vertex 2 in the middle position.
        let f = Hypergraph3::from_edges(5, [[0, 1, 2], [2, 3, 4]]).unwrap();
        // In H they share vertex 0, which is the least of both edges.
        let h = Hypergraph3::from_edges(5, [[0, 1, 2], [0, 3, 4]]).unwrap();
        assert!(embed_small(&f, &h, false).unwrap().is_some());
        assert_eq!(embed_small(&f, &h, true).unwrap(), None);
    }

    #[test]
    fn refuses_large_patterns() {
        let f = Hypergraph3::empty(9).unwrap();
        let h = Hypergraph3::empty(20).unwrap();
        assert!(embed_small(&f, &h, false).unwrap_err().is_refusal());
    }
}
