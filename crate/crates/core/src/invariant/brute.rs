//! Exact complete invariant: the smallest encoding over all labelings.

use std::cmp::Ordering;

use crate::error::Result;
use crate::graph::{encode_chunk, encode_header, CanonicalCode, ColoredGraph};
use crate::iso::check_cap;

/// `min_σ encode(G^σ)`. A complete invariant and a canonical form on all
/// colored graphs up to the oracle cap.
pub fn bf_invariant(g: &ColoredGraph) -> Result<CanonicalCode> {
    bf_canonical_order(g).map(|(_, code)| code)
}

/// The minimizing labeling as a vertex order (`order[p]` goes to position
/// `p`), together with the minimal code. Among labelings with the minimal
/// code the first one found in vertex order is returned.
///
/// The search places vertices position by position. Every encoding chunk is
/// fixed once its vertex is placed, so a branch is dropped as soon as its
/// prefix exceeds the best one seen. Twins (vertices whose transposition is
/// an automorphism) lead to identical subtrees and only the first is
/// explored.
pub fn bf_canonical_order(g: &ColoredGraph) -> Result<(Vec<usize>, CanonicalCode)> {
    check_cap(g.n())?;
    let n = g.n();
    let mut twins = vec![false; n * n];
    for u in 0..n {
        for w in u + 1..n {
            if are_twins(g, u, w) {
                twins[u * n + w] = true;
                twins[w * n + u] = true;
            }
        }
    }
    let mut prefix = Vec::new();
    encode_header(n, &mut prefix);
    let mut search = Leader {
        g,
        twins,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        prefix,
        best: None,
    };
    search.descend();
    let (order, code) = search.best.expect("at least one labeling exists");
    Ok((order, CanonicalCode::new(code)))
}

fn are_twins(g: &ColoredGraph, u: usize, w: usize) -> bool {
    g.colors(u) == g.colors(w)
        && g.degree(u) == g.degree(w)
        && g
            .neighbors(u)
            .iter()
            .filter(|&&x| x != w)
            .eq(g.neighbors(w).iter().filter(|&&x| x != u))
}

struct Leader<'a> {
    g: &'a ColoredGraph,
    twins: Vec<bool>,
    order: Vec<usize>,
    used: Vec<bool>,
    prefix: Vec<u8>,
    best: Option<(Vec<usize>, Vec<u8>)>,
}

impl Leader<'_> {
    fn descend(&mut self) {
        let n = self.g.n();
        if self.order.len() == n {
            let better = match &self.best {
                None => true,
                Some((_, best)) => self.prefix < *best,
            };
            if better {
                self.best = Some((self.order.clone(), self.prefix.clone()));
            }
            return;
        }

        let mut min_chunk: Option<Vec<u8>> = None;
        let mut keep: Vec<usize> = Vec::new();
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..n {
            if self.used[v] || tried.iter().any(|&u| self.twins[u * n + v]) {
                continue;
            }
            tried.push(v);
            let mut chunk = Vec::new();
            encode_chunk(self.g, &self.order, v, &mut chunk);
            match min_chunk.as_ref().map(|m| chunk.cmp(m)) {
                None | Some(Ordering::Less) => {
                    min_chunk = Some(chunk);
                    keep.clear();
                    keep.push(v);
                }
                Some(Ordering::Equal) => keep.push(v),
                Some(Ordering::Greater) => {}
            }
        }
        let chunk = min_chunk.expect("an unused vertex remains");

        let len = self.prefix.len();
        self.prefix.extend_from_slice(&chunk);
        if let Some((_, best)) = &self.best {
            if self.prefix[..] > best[..self.prefix.len()] {
                self.prefix.truncate(len);
                return;
            }
        }
        for v in keep {
            self.used[v] = true;
            self.order.push(v);
            self.descend();
            self.order.pop();
            self.used[v] = false;
        }
        self.prefix.truncate(len);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{apply_permutation, encode, encode_order, Labeling};
    use crate::iso::are_isomorphic_bf;

    /// Minimum over literally every permutation, for cross-checking the
    /// pruned search.
    fn exhaustive_min(g: &ColoredGraph) -> Vec<u8> {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = encode_order(g, &perm);
        while next_permutation(&mut perm) {
            let c = encode_order(g, &perm);
            if c < best {
                best = c;
            }
        }
        best
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    fn graphs() -> Vec<ColoredGraph> {
        vec![
            ColoredGraph::new(1),
            ColoredGraph::new(4),
            ColoredGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap(),
            ColoredGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap(),
            ColoredGraph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)])
                .unwrap()
                .with_color(5, 2),
            ColoredGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
                .unwrap(),
            ColoredGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)])
                .unwrap()
                .with_color(1, 0)
                .with_color(1, 4),
        ]
    }

    #[test]
    fn pruned_search_matches_exhaustive_minimum() {
        for g in graphs() {
            let (order, code) = bf_canonical_order(&g).unwrap();
            assert_eq!(code.as_bytes(), exhaustive_min(&g), "{g:?}");
            let sigma = Labeling::from_order(&order).unwrap();
            assert_eq!(encode(&apply_permutation(&g, &sigma).unwrap()), code);
        }
    }

    #[test]
    fn single_vertex() {
        let g = ColoredGraph::new(1);
        assert_eq!(bf_invariant(&g).unwrap(), encode(&g));
    }

    #[test]
    fn path_and_triangle_differ() {
        let p3 = ColoredGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let k3 = ColoredGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_ne!(bf_invariant(&p3).unwrap(), bf_invariant(&k3).unwrap());
    }

    #[test]
    fn complete_on_all_small_colorings() {
        // every graph on 4 vertices with at most one colored vertex
        let pairs: Vec<(usize, usize)> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        let mut corpus = Vec::new();
        for mask in 0..(1u32 << pairs.len()) {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = ColoredGraph::from_edges(4, &edges).unwrap();
            corpus.push(g.clone());
            corpus.push(g.with_color(0, 1));
        }
        let codes: Vec<_> = corpus.iter().map(|g| bf_invariant(g).unwrap()).collect();
        for i in 0..corpus.len() {
            for j in i + 1..corpus.len() {
                let iso = are_isomorphic_bf(&corpus[i], &corpus[j]).unwrap().is_some();
                assert_eq!(codes[i] == codes[j], iso);
            }
        }
    }
}
