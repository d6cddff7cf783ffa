//! Color refinement (1-dimensional Weisfeiler-Lehman).

use rayon::prelude::*;

use super::{rank_signatures, CodeWriter};
use crate::graph::{CanonicalCode, ColoredGraph};

const PAR_THRESHOLD: usize = 512;

#[derive(Clone, Debug)]
pub struct Wl1Refinement {
    /// Stable class id of each vertex. Ids are canonical: they depend only on
    /// the isomorphism type of the colored graph and the vertex's role in it.
    pub classes: Vec<u32>,
    /// Vertex partitions after each round, starting with the initial one.
    pub history: Vec<Vec<u32>>,
    pub rounds: usize,
    pub code: CanonicalCode,
}

impl Wl1Refinement {
    pub fn class_count(&self) -> usize {
        self.classes.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
    }

    /// Stable classes as sorted vertex lists, ordered by class id.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut cells = vec![Vec::new(); self.class_count()];
        for (v, &c) in self.classes.iter().enumerate() {
            cells[c as usize].push(v);
        }
        cells
    }
}

pub fn wl1_refine(g: &ColoredGraph) -> Wl1Refinement {
    wl1_refine_with(g, None)
}

/// Refines until the partition stops splitting, or until `round_cap` rounds.
///
/// The code lists, for the initial coloring and every round, the sorted
/// table of distinct signatures with their multiplicities. A round's
/// signature is the vertex's previous id followed by the sorted ids of its
/// neighbors, so the final table also carries the class adjacency counts.
pub fn wl1_refine_with(g: &ColoredGraph, round_cap: Option<usize>) -> Wl1Refinement {
    let n = g.n();
    let mut code = CodeWriter::default();
    code.tag(b"WL1");
    code.u64(n as u64);

    let initial: Vec<&[u64]> = (0..n).map(|v| g.colors(v)).collect();
    let (mut classes, table) = rank_signatures(&initial);
    code.u32(table.len() as u32);
    for (colors, count) in &table {
        code.u32(colors.len() as u32);
        for &c in colors.iter() {
            code.u64(c);
        }
        code.u32(*count);
    }

    let mut history = vec![classes.clone()];
    let mut class_count = table.len();
    let mut rounds = 0;
    let cap = round_cap.unwrap_or(usize::MAX);
    while rounds < cap && n > 0 {
        let signature = |v: usize| {
            let mut sig = Vec::with_capacity(g.degree(v) + 1);
            sig.push(classes[v]);
            sig.extend(g.neighbors(v).iter().map(|&w| classes[w]));
            sig[1..].sort_unstable();
            sig
        };
        let sigs: Vec<Vec<u32>> = if n >= PAR_THRESHOLD {
            (0..n).into_par_iter().map(signature).collect()
        } else {
            (0..n).map(signature).collect()
        };
        let (next, table) = rank_signatures(&sigs);
        rounds += 1;
        code.u32(table.len() as u32);
        for (sig, count) in &table {
            code.len_prefixed(sig);
            code.u32(*count);
        }
        let stable = table.len() == class_count;
        class_count = table.len();
        classes = next;
        history.push(classes.clone());
        if stable {
            break;
        }
    }

    Wl1Refinement {
        classes,
        history,
        rounds,
        code: code.finish(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{apply_permutation, Labeling};

    fn cycle(n: usize) -> Vec<(usize, usize)> {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    #[test]
    fn path_splits_endpoints_from_middle() {
        let p3 = ColoredGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = wl1_refine(&p3);
        assert_eq!(r.cells(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn triangle_stays_one_class() {
        let k3 = ColoredGraph::from_edges(3, &cycle(3)).unwrap();
        assert_eq!(wl1_refine(&k3).class_count(), 1);
    }

    #[test]
    fn hexagon_and_two_triangles_collide() {
        let c6 = ColoredGraph::from_edges(6, &cycle(6)).unwrap();
        let two_k3 =
            ColoredGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
                .unwrap();
        let a = wl1_refine(&c6);
        let b = wl1_refine(&two_k3);
        assert_eq!(a.code, b.code);
        assert_eq!(a.rounds, 1);
    }

    #[test]
    fn relabeling_keeps_code_and_class_ids() {
        let g = ColoredGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])
            .unwrap()
            .with_color(4, 3);
        let sigma = Labeling::new(vec![2, 4, 0, 1, 3]).unwrap();
        let h = apply_permutation(&g, &sigma).unwrap();
        let (a, b) = (wl1_refine(&g), wl1_refine(&h));
        assert_eq!(a.code, b.code);
        for v in 0..5 {
            assert_eq!(a.classes[v], b.classes[sigma.image(v)]);
        }
    }

    #[test]
    fn round_cap_stops_early() {
        let path: Vec<_> = (0..7).map(|i| (i, i + 1)).collect();
        let g = ColoredGraph::from_edges(8, &path).unwrap();
        let full = wl1_refine(&g);
        let capped = wl1_refine_with(&g, Some(1));
        assert_eq!(capped.rounds, 1);
        assert!(full.rounds > 1);
    }

    #[test]
    fn empty_graph() {
        let r = wl1_refine(&ColoredGraph::new(0));
        assert_eq!(r.rounds, 0);
        assert!(r.classes.is_empty());
    }
}
