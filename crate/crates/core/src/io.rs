//! Plain-text hypergraph format.
//!
//! ```text
//! <arity> <n> <m>
//! v1 v2 v3        (m lines, increasing ids, sorted lexicographically)
//! ```
//!
//! `arity` is 3 or 4, ids are 0-based, lines end in LF. Reading accepts the
//! vertices of a line in any order; writing always emits the canonical form.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph3, Hypergraph4};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyHypergraph {
    Three(Hypergraph3),
    Four(Hypergraph4),
}

impl AnyHypergraph {
    pub fn arity(&self) -> usize {
        match self {
            AnyHypergraph::Three(_) => 3,
            AnyHypergraph::Four(_) => 4,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyHypergraph::Three(h) => h.n(),
            AnyHypergraph::Four(h) => h.n(),
        }
    }

    pub fn into_three(self) -> Result<Hypergraph3> {
        match self {
            AnyHypergraph::Three(h) => Ok(h),
            AnyHypergraph::Four(_) => Err(Error::invalid("expected a 3-uniform hypergraph")),
        }
    }

    pub fn into_four(self) -> Result<Hypergraph4> {
        match self {
            AnyHypergraph::Four(h) => Ok(h),
            AnyHypergraph::Three(_) => Err(Error::invalid("expected a 4-uniform hypergraph")),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            AnyHypergraph::Three(h) => write_hypergraph3(h),
            AnyHypergraph::Four(h) => write_hypergraph4(h),
        }
    }
}

pub fn write_hypergraph3(h: &Hypergraph3) -> String {
    let mut out = String::with_capacity(16 + h.edge_count() * 12);
    let _ = writeln!(out, "3 {} {}", h.n(), h.edge_count());
    for [a, b, c] in h.edges() {
        let _ = writeln!(out, "{a} {b} {c}");
    }
    out
}

pub fn write_hypergraph4(h: &Hypergraph4) -> String {
    let mut out = String::with_capacity(16 + h.edge_count() * 16);
    let _ = writeln!(out, "4 {} {}", h.n(), h.edge_count());
    for [a, b, c, d] in h.edges() {
        let _ = writeln!(out, "{a} {b} {c} {d}");
    }
    out
}

fn parse_fields(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_ascii_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(lineno, format!("not a non-negative integer: {tok:?}")))
        })
        .collect()
}

pub fn read_hypergraph(text: &str) -> Result<AnyHypergraph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header"))?;
    let head = parse_fields(header, hline)?;
    if head.len() != 3 {
        return Err(Error::parse(hline, "header must be \"<arity> <n> <m>\""));
    }
    let (arity, n, m) = (head[0], head[1], head[2]);
    if arity != 3 && arity != 4 {
        return Err(Error::parse(hline, format!("unsupported arity {arity}")));
    }
    let mut edges: Vec<(usize, Vec<usize>)> = Vec::with_capacity(m);
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut e = parse_fields(line, lineno)?;
        if e.len() != arity {
            return Err(Error::parse(
                lineno,
                format!("expected {arity} vertices, found {}", e.len()),
            ));
        }
        if let Some(&v) = e.iter().find(|&&v| v >= n) {
            return Err(Error::parse(lineno, format!("vertex {v} out of range for n = {n}")));
        }
        e.sort_unstable();
        if e.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::parse(lineno, "edge repeats a vertex"));
        }
        edges.push((lineno, e));
    }
    if edges.len() != m {
        return Err(Error::parse(
            hline,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by(|&a, &b| edges[a].1.cmp(&edges[b].1));
    for w in order.windows(2) {
        if edges[w[0]].1 == edges[w[1]].1 {
            let line = edges[w[0]].0.max(edges[w[1]].0);
            return Err(Error::parse(line, format!("duplicate edge {:?}", edges[w[1]].1)));
        }
    }
    let sorted: Vec<Vec<usize>> = order.into_iter().map(|i| edges[i].1.clone()).collect();
    let too_large = |e: Error| match e {
        Error::TooLarge { .. } => Error::parse(hline, e.to_string()),
        other => other,
    };
    Ok(if arity == 3 {
        let list = sorted
            .into_iter()
            .map(|e| [e[0] as u32, e[1] as u32, e[2] as u32])
            .collect();
        AnyHypergraph::Three(Hypergraph3::from_sorted_unique(n, list).map_err(too_large)?)
    } else {
        let list = sorted
            .into_iter()
            .map(|e| [e[0] as u32, e[1] as u32, e[2] as u32, e[3] as u32])
            .collect();
        AnyHypergraph::Four(Hypergraph4::from_sorted_unique(n, list).map_err(too_large)?)
    })
}
