use std::collections::BTreeSet;

use super::RotationSystem;
use crate::error::{Error, Result};

/// A closed walk bounding one face, as a cyclic arc sequence starting at its
/// lexicographically smallest arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacialWalk {
    pub arcs: Vec<(usize, usize)>,
}

impl FacialWalk {
    fn normalized(mut arcs: Vec<(usize, usize)>) -> Self {
        if let Some(start) = (0..arcs.len()).min_by_key(|&i| arcs[i]) {
            arcs.rotate_left(start);
        }
        FacialWalk { arcs }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Cyclic vertex sequence (tails of the arcs).
    pub fn vertices(&self) -> Vec<usize> {
        self.arcs.iter().map(|&(u, _)| u).collect()
    }

    /// Undirected edges along the walk, as `(min, max)` pairs.
    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.arcs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
    }

    /// The same walk traversed backwards, normalized.
    pub fn reversed(&self) -> FacialWalk {
        FacialWalk::normalized(self.arcs.iter().rev().map(|&(u, v)| (v, u)).collect())
    }

    /// True if no vertex occurs twice.
    pub fn is_cycle(&self) -> bool {
        let vs = self.vertices();
        vs.iter().collect::<BTreeSet<_>>().len() == vs.len()
    }
}

/// Partitions the `2|E|` arcs into facial walks. Walks are listed by their
/// first (smallest) arc.
pub fn trace_faces(r: &RotationSystem) -> Result<Vec<FacialWalk>> {
    r.require_valid()?;
    let g = r.graph();
    if !g.is_connected() {
        return Err(Error::Unsupported(
            "a disconnected graph has no cellular embedding".into(),
        ));
    }
    let n = g.n();
    let mut visited: Vec<Vec<bool>> = (0..n).map(|u| vec![false; g.degree(u)]).collect();
    let slot = |u: usize, v: usize| g.neighbors(u).binary_search(&v).expect("arc on an edge");
    let mut walks = Vec::new();
    for u in 0..n {
        for (i, &v) in g.neighbors(u).iter().enumerate() {
            if visited[u][i] {
                continue;
            }
            let mut arcs = Vec::new();
            let (mut a, mut b) = (u, v);
            loop {
                visited[a][slot(a, b)] = true;
                arcs.push((a, b));
                let c = r.succ(b, a).expect("valid rotation");
                (a, b) = (b, c);
                if (a, b) == (u, v) {
                    break;
                }
            }
            walks.push(FacialWalk::normalized(arcs));
        }
    }
    Ok(walks)
}

/// Genus `g` of the orientable surface, from `V - E + F = 2 - 2g`.
pub fn euler_genus(r: &RotationSystem) -> Result<usize> {
    let faces = trace_faces(r)?;
    let g = r.graph();
    let v = g.n() as i64;
    let e = g.edge_count() as i64;
    // a lone vertex bounds a single face
    let f = if e == 0 { 1 } else { faces.len() as i64 };
    let twice = 2 - v + e - f;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::ContractViolation(format!(
            "Euler characteristic gives 2g = {twice}"
        )));
    }
    Ok((twice / 2) as usize)
}

/// Every facial walk is a cycle, and any two facial walks meet in at most
/// one vertex or in exactly one edge and nothing else.
pub fn is_polyhedral(r: &RotationSystem) -> Result<bool> {
    let faces = trace_faces(r)?;
    if faces.is_empty() || !faces.iter().all(FacialWalk::is_cycle) {
        return Ok(false);
    }
    let vertex_sets: Vec<BTreeSet<usize>> = faces
        .iter()
        .map(|w| w.vertices().into_iter().collect())
        .collect();
    let edge_sets: Vec<_> = faces.iter().map(FacialWalk::edge_set).collect();
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            let common: Vec<usize> = vertex_sets[i].intersection(&vertex_sets[j]).copied().collect();
            if common.len() <= 1 {
                continue;
            }
            let shared: Vec<_> = edge_sets[i].intersection(&edge_sets[j]).collect();
            match shared.as_slice() {
                [&(a, b)] if common == [a, b] => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}
