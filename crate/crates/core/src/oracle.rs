//! Brute-force ground truth: automorphism groups, orbits, rigidity index.

use std::ops::ControlFlow;

use crate::error::Result;
use crate::graph::{ColoredGraph, Labeling};
use crate::iso::{check_cap, search_isomorphisms};
use crate::rigidity::fixes_only_identity;

#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub elements: Vec<Labeling>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, alpha: &Labeling) -> bool {
        self.elements.binary_search(alpha).is_ok()
    }

    /// Checks identity membership and closure under inverse and composition.
    pub fn is_closed(&self) -> bool {
        let n = self.elements.first().map_or(0, Labeling::len);
        if !self.contains(&Labeling::identity(n)) {
            return false;
        }
        self.elements.iter().all(|a| {
            self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&a.compose(b)))
        })
    }
}

/// All color- and adjacency-preserving permutations, sorted by mapping.
pub fn automorphisms(g: &ColoredGraph) -> Result<AutomorphismGroup> {
    check_cap(g.n())?;
    let mut elements = Vec::new();
    let _ = search_isomorphisms(g, g, &[], |m| {
        elements.push(Labeling::new(m.to_vec()).expect("search yields bijections"));
        ControlFlow::Continue(())
    });
    Ok(AutomorphismGroup { elements })
}

/// Orbit partition of `V(G)`, each orbit sorted, ordered by smallest vertex.
pub fn orbits(g: &ColoredGraph) -> Result<Vec<Vec<usize>>> {
    let group = automorphisms(g)?;
    let n = g.n();
    let mut root: Vec<usize> = (0..n).collect();
    for alpha in &group.elements {
        for (v, r) in root.iter_mut().enumerate() {
            *r = (*r).min(alpha.image(v));
        }
    }
    // root[v] is min over the orbit because the group is closed
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for (v, &r) in root.iter().enumerate() {
        if index[r] == usize::MAX {
            index[r] = cells.len();
            cells.push(Vec::new());
        }
        cells[index[r]].push(v);
    }
    Ok(cells)
}

/// Minimum size of a fixing set, with the lexicographically first witness of
/// that size.
pub fn rigidity_index(g: &ColoredGraph) -> Result<(usize, Vec<usize>)> {
    check_cap(g.n())?;
    let n = g.n();
    for k in 0..=n {
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            if fixes_only_identity(g, &subset) {
                return Ok((k, subset));
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    unreachable!("the full vertex set is always fixing")
}

/// Advances `c` to the next k-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// Certificate of a free tree (or forest component) up to isomorphism,
/// computed from its center by the classical parenthesis encoding. Two trees
/// are isomorphic iff their certificates are equal.
pub fn tree_certificate(g: &ColoredGraph) -> Option<String> {
    let n = g.n();
    if n == 0 {
        return Some(String::new());
    }
    if g.edge_count() != n - 1 || !g.is_connected() {
        return None;
    }
    // peel leaves to find the center
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            degree[leaf] = 0;
            for &w in g.neighbors(leaf) {
                if degree[w] > 0 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|&c| rooted_certificate(g, c, usize::MAX))
        .min()
}

fn rooted_certificate(g: &ColoredGraph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_certificate(g, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> ColoredGraph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        ColoredGraph::from_edges(n, &edges).unwrap()
    }

    fn p3() -> ColoredGraph {
        ColoredGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn c4() -> ColoredGraph {
        ColoredGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn star(leaves: usize) -> ColoredGraph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        ColoredGraph::from_edges(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(automorphisms(&complete(4)).unwrap().order(), 24);
        assert_eq!(automorphisms(&p3()).unwrap().order(), 2);
        assert_eq!(automorphisms(&c4()).unwrap().order(), 8);
    }

    #[test]
    fn groups_are_closed() {
        for g in [complete(4), p3(), c4(), star(3)] {
            assert!(automorphisms(&g).unwrap().is_closed());
        }
    }

    #[test]
    fn orbit_partitions() {
        assert_eq!(orbits(&p3()).unwrap(), vec![vec![0, 2], vec![1]]);
        assert_eq!(orbits(&complete(4)).unwrap(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(orbits(&star(4)).unwrap(), vec![vec![0], vec![1, 2, 3, 4]]);
    }

    #[test]
    fn rigidity_indices() {
        assert_eq!(rigidity_index(&complete(4)).unwrap().0, 3);
        assert_eq!(rigidity_index(&p3()).unwrap(), (1, vec![0]));
        // smallest asymmetric tree: a spider with legs of length 1, 2 and 3
        let rigid = ColoredGraph::from_edges(
            7,
            &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)],
        )
        .unwrap();
        assert_eq!(automorphisms(&rigid).unwrap().order(), 1);
        assert_eq!(rigidity_index(&rigid).unwrap(), (0, vec![]));
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![2, 3]);
    }

    #[test]
    fn tree_certificates() {
        let path4 = ColoredGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let path4b = ColoredGraph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(tree_certificate(&path4), tree_certificate(&path4b));
        assert_ne!(tree_certificate(&path4), tree_certificate(&star(3)));
        assert_eq!(tree_certificate(&c4()), None);
    }
}
