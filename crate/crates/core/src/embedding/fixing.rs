//! Fixing sets read off embeddings.

use std::collections::BTreeSet;

use super::{enumerate_rotation_systems, euler_genus, is_polyhedral, trace_faces};
use super::{RotationSystem, DEFAULT_ROTATION_CAP};
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::iso::oracle_cap;
use crate::oracle::automorphisms;
use crate::rigidity::is_fixing_bf;

/// Whether every automorphism maps the embedding to an equivalent one.
pub fn is_faithful(r: &RotationSystem) -> Result<bool> {
    r.require_valid()?;
    let group = automorphisms(r.graph())?;
    for alpha in &group.elements {
        if !r.image(alpha)?.is_equivalent(r) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleKind {
    /// The graph is a path; the set has at most two vertices.
    Path,
    /// The graph is a cycle; the set is two adjacent vertices.
    Cycle,
    /// A facial segment `u, v, w` around a vertex of degree at least 3.
    Segment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixingTriple {
    pub set: Vec<usize>,
    pub kind: TripleKind,
    /// Faithfulness of the input, checked when the graph is within the
    /// oracle cap. `Some(false)` means the fixing guarantee does not apply.
    pub faithful: Option<bool>,
    /// Result of the exact fixing test, when within the oracle cap.
    pub verified: Option<bool>,
}

/// Fixing set of size at most 3 from a faithful embedding.
pub fn fixing_triple(r: &RotationSystem) -> Result<FixingTriple> {
    r.require_valid()?;
    let g = r.graph();
    let n = g.n();
    if n == 0 || !g.is_connected() {
        return Err(Error::Unsupported(
            "fixing triples need a connected, non-empty graph".into(),
        ));
    }
    let m = g.edge_count();
    let max_degree = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    let (set, kind) = if max_degree <= 2 && m + 1 == n {
        let end = (0..n).find(|&v| g.degree(v) <= 1).expect("a path has an end");
        let set = match g.neighbors(end).first() {
            Some(&next) => vec![end, next],
            None => vec![end],
        };
        (set, TripleKind::Path)
    } else if max_degree == 2 && m == n {
        (vec![0, g.neighbors(0)[0]], TripleKind::Cycle)
    } else {
        let v = (0..n).find(|&v| g.degree(v) >= 3).expect("not a path or cycle");
        let u = g.neighbors(v)[0];
        let w = r.succ(v, u).expect("valid rotation");
        debug_assert!(trace_faces(r)?
            .iter()
            .any(|f| f.arcs.windows(2).any(|p| p[0] == (u, v) && p[1] == (v, w))
                || (f.arcs.last() == Some(&(u, v)) && f.arcs.first() == Some(&(v, w)))));
        (vec![u, v, w], TripleKind::Segment)
    };
    let (faithful, verified) = if n <= oracle_cap() {
        (Some(is_faithful(r)?), Some(is_fixing_bf(g, &set)?))
    } else {
        (None, None)
    };
    Ok(FixingTriple {
        set,
        kind,
        faithful,
        verified,
    })
}

/// All rotation systems of `g` whose embedding is polyhedral and of the given
/// genus, in enumeration order. Conjugate pairs are both included.
pub fn polyhedral_embeddings(g: &ColoredGraph, genus: usize) -> Result<Vec<RotationSystem>> {
    if !g.is_connected() {
        return Err(Error::Unsupported(
            "a disconnected graph has no cellular embedding".into(),
        ));
    }
    let mut out = Vec::new();
    for rs in enumerate_rotation_systems(g, DEFAULT_ROTATION_CAP)? {
        if euler_genus(&rs)? == genus && is_polyhedral(&rs)? {
            out.push(rs);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralFixingSet {
    pub set: Vec<usize>,
    /// Number of inequivalent embeddings, half the number of systems.
    pub c: usize,
    /// Result of the exact fixing test, when within the oracle cap.
    pub verified: Option<bool>,
}

/// Fixing set of size at most `4c` from the full list of polyhedral rotation
/// systems `R_1, ..., R_2c` of one genus.
///
/// Picks the smallest edge `xy`. For each `i > 1`, `x_i` is a vertex nearest
/// to `x` where `R_i` and `R_1` disagree, `y_i` the smallest neighbor of
/// `x_i` whose successor differs, and `z_i` its successor under `R_1`. The
/// result is `{x, y} ∪ {y_i, z_i}`.
pub fn polyhedral_fixing_set(
    g: &ColoredGraph,
    embeddings: &[RotationSystem],
) -> Result<PolyhedralFixingSet> {
    let Some(first) = embeddings.first() else {
        return Err(Error::NoPolyhedralEmbedding);
    };
    let graph = g.uncolored();
    for (i, rs) in embeddings.iter().enumerate() {
        rs.require_valid()?;
        if *rs.graph() != graph {
            return Err(Error::ContractViolation(format!(
                "embedding {i} belongs to a different graph"
            )));
        }
        if embeddings[..i].contains(rs) {
            return Err(Error::ContractViolation(format!("embedding {i} is listed twice")));
        }
        if !embeddings.contains(&rs.conjugate()) {
            return Err(Error::ContractViolation(format!(
                "the conjugate of embedding {i} is missing"
            )));
        }
    }
    if !graph.is_connected() {
        return Err(Error::Unsupported("the graph must be connected".into()));
    }
    let (x, y) = graph
        .edges()
        .next()
        .ok_or_else(|| Error::Unsupported("the graph has no edge".into()))?;
    let dist = graph.distances_from(x);

    let mut set = BTreeSet::from([x, y]);
    for rs in &embeddings[1..] {
        let xi = (0..graph.n())
            .filter(|&a| !rs.coherent_at(first, a))
            .min_by_key(|&a| (dist[a], a))
            .expect("distinct systems disagree somewhere");
        let yi = *graph
            .neighbors(xi)
            .iter()
            .find(|&&b| first.succ(xi, b) != rs.succ(xi, b))
            .expect("incoherent at x_i");
        let zi = first.succ(xi, yi).expect("valid rotation");
        set.insert(yi);
        set.insert(zi);
    }
    let set: Vec<usize> = set.into_iter().collect();
    let verified = if graph.n() <= oracle_cap() {
        Some(is_fixing_bf(&graph, &set)?)
    } else {
        None
    };
    Ok(PolyhedralFixingSet {
        set,
        c: embeddings.len().div_ceil(2),
        verified,
    })
}
