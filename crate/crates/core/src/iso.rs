//! Exhaustive isomorphism search used as ground truth.

use std::ops::ControlFlow;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Labeling};

/// Default vertex cap for the factorial-time oracles.
pub const DEFAULT_ORACLE_CAP: usize = 10;

/// Environment variable overriding [`DEFAULT_ORACLE_CAP`].
pub const ORACLE_CAP_ENV: &str = "CANON_ORACLE_CAP";

/// Oracle cap in effect for this process.
pub fn oracle_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(ORACLE_CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_ORACLE_CAP)
    })
}

pub(crate) fn check_cap(n: usize) -> Result<()> {
    let cap = oracle_cap();
    if n > cap {
        Err(Error::OracleCapacity { n, cap })
    } else {
        Ok(())
    }
}

/// Visits every color- and adjacency-preserving bijection `g -> h` that
/// agrees with `pinned` (pairs `(v, image)`), in lexicographic order of the
/// mapping array. The visitor may stop the search early.
pub(crate) fn search_isomorphisms<F>(
    g: &ColoredGraph,
    h: &ColoredGraph,
    pinned: &[(usize, usize)],
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.n();
    if n != h.n() {
        return ControlFlow::Continue(());
    }
    let mut forced = vec![None; n];
    for &(v, x) in pinned {
        forced[v] = Some(x);
    }
    let mut state = Search {
        g,
        h,
        forced,
        mapping: vec![usize::MAX; n],
        used: vec![false; n],
    };
    state.extend(0, &mut visit)
}

struct Search<'a> {
    g: &'a ColoredGraph,
    h: &'a ColoredGraph,
    forced: Vec<Option<usize>>,
    mapping: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn compatible(&self, v: usize, x: usize) -> bool {
        if self.used[x]
            || self.g.degree(v) != self.h.degree(x)
            || self.g.colors(v) != self.h.colors(x)
        {
            return false;
        }
        (0..v).all(|u| self.g.has_edge(u, v) == self.h.has_edge(self.mapping[u], x))
    }

    fn extend<F>(&mut self, v: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let n = self.g.n();
        if v == n {
            return visit(&self.mapping);
        }
        let candidates = match self.forced[v] {
            Some(x) => x..x + 1,
            None => 0..n,
        };
        for x in candidates {
            if !self.compatible(v, x) {
                continue;
            }
            self.mapping[v] = x;
            self.used[x] = true;
            let flow = self.extend(v + 1, visit);
            self.used[x] = false;
            self.mapping[v] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// First isomorphism `g -> h` in lexicographic order of the mapping array,
/// or `None` when the graphs are not isomorphic.
pub fn are_isomorphic_bf(g: &ColoredGraph, h: &ColoredGraph) -> Result<Option<Labeling>> {
    if g.n() != h.n() {
        return Ok(None);
    }
    check_cap(g.n())?;
    let mut found = None;
    let _ = search_isomorphisms(g, h, &[], |m| {
        found = Some(Labeling::new(m.to_vec()).expect("search yields bijections"));
        ControlFlow::Break(())
    });
    Ok(found)
}

/// True iff `sigma` maps `g` exactly onto `h`, colors included.
pub fn is_isomorphism(g: &ColoredGraph, h: &ColoredGraph, sigma: &Labeling) -> bool {
    if g.n() != h.n() || sigma.len() != g.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    (0..g.n()).all(|v| g.colors(v) == h.colors(sigma.image(v)))
        && g.edges().all(|(u, v)| h.has_edge(sigma.image(u), sigma.image(v)))
}
