//! Canonical labeling for graphs of bounded rigidity index.
//!
//! A sequence `s = (v_1, ..., v_r)` is individualized by giving `v_i` color
//! `i`; `G_{s,v}` additionally gives `v` color `r + 1`. When the invariant
//! values of all `G_{s,v}` are pairwise distinct, `s` is fixing, and the
//! sorted values rank every vertex outside `s`. On precolored graphs the
//! introduced colors are shifted above the largest existing color.

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{CanonicalCode, ColoredGraph, Labeling};
use crate::invariant::{Invariant, Meter};
use crate::iso::{check_cap, search_isomorphisms};
use crate::report::Diagnostic;
use crate::seq::arrangements;

fn check_distinct(s: &[usize], n: usize) -> Result<()> {
    for (i, &v) in s.iter().enumerate() {
        if v >= n {
            return Err(Error::ContractViolation(format!("vertex {v} is out of range")));
        }
        if s[..i].contains(&v) {
            return Err(Error::ContractViolation(format!(
                "sequence {s:?} repeats vertex {v}"
            )));
        }
    }
    Ok(())
}

fn individualize_unchecked(g: &ColoredGraph, s: &[usize], base: u64) -> ColoredGraph {
    let mut out = g.clone();
    for (i, &v) in s.iter().enumerate() {
        out.add_color(v, base + i as u64 + 1);
    }
    out
}

/// `G_s`: vertex `s[i]` gains color `i + 1` (1-based position).
pub fn individualize(g: &ColoredGraph, s: &[usize]) -> Result<ColoredGraph> {
    check_distinct(s, g.n())?;
    Ok(individualize_unchecked(g, s, g.color_base()))
}

/// `G_{s,v}`: `G_s` with color `|s| + 1` added to `v`.
///
/// `v` may belong to `s`; it then carries both its position color and the
/// extra one.
pub fn individualize_plus(g: &ColoredGraph, s: &[usize], v: usize) -> Result<ColoredGraph> {
    check_distinct(s, g.n())?;
    if v >= g.n() {
        return Err(Error::ContractViolation(format!("vertex {v} is out of range")));
    }
    let base = g.color_base();
    Ok(individualize_unchecked(g, s, base).with_color(v, base + s.len() as u64 + 1))
}

/// Codes `f(G_{s,v})` for every vertex `v`.
fn per_vertex_codes(
    g: &ColoredGraph,
    s: &[usize],
    f: &Invariant,
    meter: &Meter,
) -> Result<Vec<CanonicalCode>> {
    let base = g.color_base();
    let gs = individualize_unchecked(g, s, base);
    let extra = base + s.len() as u64 + 1;
    (0..g.n())
        .map(|v| f.eval_metered(&gs.with_color(v, extra), meter))
        .collect()
}

fn pairwise_distinct(codes: &[CanonicalCode]) -> bool {
    let mut sorted: Vec<&CanonicalCode> = codes.iter().collect();
    sorted.sort();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// True iff the codes `f(G_{s,v})`, `v ∈ V(G)`, are pairwise distinct.
pub fn is_fixing_by_invariant(g: &ColoredGraph, s: &[usize], f: &Invariant) -> Result<bool> {
    check_distinct(s, g.n())?;
    let codes = per_vertex_codes(g, s, f, &Meter::default())?;
    Ok(pairwise_distinct(&codes))
}

/// Exact test: every non-trivial automorphism moves a vertex of `set`.
pub fn is_fixing_bf(g: &ColoredGraph, set: &[usize]) -> Result<bool> {
    check_cap(g.n())?;
    if let Some(&v) = set.iter().find(|&&v| v >= g.n()) {
        return Err(Error::ContractViolation(format!("vertex {v} is out of range")));
    }
    Ok(fixes_only_identity(g, set))
}

pub(crate) fn fixes_only_identity(g: &ColoredGraph, set: &[usize]) -> bool {
    let pinned: Vec<(usize, usize)> = set.iter().map(|&v| (v, v)).collect();
    let flow = search_isomorphisms(g, g, &pinned, |m| {
        if m.iter().enumerate().all(|(i, &x)| i == x) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    });
    flow.is_continue()
}

#[derive(Clone, Debug)]
pub struct RigidityOutcome {
    pub labeling: Labeling,
    /// The chosen fixing sequence, absent on the identity fallback.
    pub fixing_sequence: Option<Vec<usize>>,
    pub invariant_calls: u64,
    pub rounds: u64,
    pub diagnostics: Vec<Diagnostic>,
}

/// Canonical labeling via fixing sequences of length `r` (or `n` when the
/// graph has fewer than `r` vertices).
///
/// The fixing sequence minimizing `f(G_s)` wins, ties going to the
/// lexicographically first sequence. Its vertices take ranks `1..r` and the
/// rest follow in the order of their codes `f(G_{s,v})`. Without a fixing
/// sequence the identity is returned with a diagnostic.
pub fn canon_rigidity(g: &ColoredGraph, r: usize, f: &Invariant) -> Result<RigidityOutcome> {
    let n = g.n();
    let len = r.min(n);
    let meter = Meter::default();
    let base = g.color_base();

    let candidates = arrangements(n, len);
    let fixing: Vec<Option<Vec<CanonicalCode>>> = candidates
        .par_iter()
        .map(|s| {
            let codes = per_vertex_codes(g, s, f, &meter)?;
            Ok(pairwise_distinct(&codes).then_some(codes))
        })
        .collect::<Result<_>>()?;

    let chosen: Vec<(usize, CanonicalCode)> = fixing
        .par_iter()
        .enumerate()
        .filter(|(_, c)| c.is_some())
        .map(|(i, _)| {
            let gs = individualize_unchecked(g, &candidates[i], base);
            Ok((i, f.eval_metered(&gs, &meter)?))
        })
        .collect::<Result<_>>()?;

    let Some((best, _)) = chosen
        .into_iter()
        .min_by(|(i, a), (j, b)| a.cmp(b).then(i.cmp(j)))
    else {
        return Ok(RigidityOutcome {
            labeling: Labeling::identity(n),
            fixing_sequence: None,
            invariant_calls: meter.calls(),
            rounds: meter.rounds(),
            diagnostics: vec![Diagnostic::NoFixingSequence { r }],
        });
    };

    let s = &candidates[best];
    let codes = fixing[best].as_ref().expect("chosen sequence is fixing");
    let mut rest: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
    rest.sort_by(|&u, &v| codes[u].cmp(&codes[v]));
    debug_assert!(rest.windows(2).all(|w| codes[w[0]] != codes[w[1]]));
    let order: Vec<usize> = s.iter().copied().chain(rest).collect();

    Ok(RigidityOutcome {
        labeling: Labeling::from_order(&order)?,
        fixing_sequence: Some(s.clone()),
        invariant_calls: meter.calls(),
        rounds: meter.rounds(),
        diagnostics: Vec::new(),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checked: usize,
    /// Sequences where the invariant-based and exact fixing tests disagree.
    pub mismatches: Vec<Vec<usize>>,
}

/// Compares the invariant-based fixing test (with the brute-force
/// invariant) against the exact automorphism test on every `r`-sequence.
pub fn rigidity_consistency_check(g: &ColoredGraph, r: usize) -> Result<ConsistencyReport> {
    check_cap(g.n())?;
    let sequences = arrangements(g.n(), r.min(g.n()));
    let verdicts: Vec<bool> = sequences
        .par_iter()
        .map(|s| {
            let by_codes = is_fixing_by_invariant(g, s, &Invariant::BRUTE_FORCE)?;
            Ok(by_codes == fixes_only_identity(g, s))
        })
        .collect::<Result<_>>()?;
    let mismatches = sequences
        .iter()
        .zip(&verdicts)
        .filter(|(_, &ok)| !ok)
        .map(|(s, _)| s.clone())
        .collect();
    Ok(ConsistencyReport {
        checked: sequences.len(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{apply_permutation, encode};
    use crate::invariant::wl1_refine;
    use crate::iso::are_isomorphic_bf;
    use crate::seq::arrangements;

    fn complete(n: usize) -> ColoredGraph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        ColoredGraph::from_edges(n, &edges).unwrap()
    }

    fn c4() -> ColoredGraph {
        ColoredGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    const BF: Invariant = Invariant::BRUTE_FORCE;

    #[test]
    fn individualizing_a_triangle_vertex() {
        let g = individualize(&complete(3), &[0]).unwrap();
        assert_eq!(g.colors(0), &[1]);
        let cells = wl1_refine(&g).cells();
        assert_eq!(cells.iter().filter(|c| c.len() == 1).count(), 1);
    }

    #[test]
    fn plus_variants_are_isomorphic() {
        let a = individualize_plus(&complete(3), &[0], 1).unwrap();
        let b = individualize_plus(&complete(3), &[0], 2).unwrap();
        assert!(are_isomorphic_bf(&a, &b).unwrap().is_some());
    }

    #[test]
    fn adjacent_pair_on_square() {
        let g = individualize(&c4(), &[0, 1]).unwrap();
        assert_eq!(g.colors(0), &[1]);
        assert_eq!(g.colors(1), &[2]);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn duplicate_vertices_rejected() {
        assert!(matches!(
            individualize(&c4(), &[1, 1]),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn fixing_by_invariant_examples() {
        assert!(is_fixing_by_invariant(&c4(), &[0, 1], &BF).unwrap());
        assert!(!is_fixing_by_invariant(&c4(), &[0, 2], &BF).unwrap());
        assert!(!is_fixing_by_invariant(&complete(3), &[0], &BF).unwrap());
    }

    #[test]
    fn fixing_bf_examples() {
        let k4 = complete(4);
        for s in arrangements(4, 3) {
            assert!(is_fixing_bf(&k4, &s).unwrap());
        }
        for s in arrangements(4, 2) {
            assert!(!is_fixing_bf(&k4, &s).unwrap());
        }
        let p3 = ColoredGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(is_fixing_bf(&p3, &[0]).unwrap());
        let rigid =
            ColoredGraph::from_edges(7, &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)]).unwrap();
        assert!(is_fixing_bf(&rigid, &[]).unwrap());
    }

    #[test]
    fn single_vertex_canon() {
        let out = canon_rigidity(&ColoredGraph::new(1), 1, &BF).unwrap();
        assert_eq!(out.labeling, Labeling::identity(1));
        assert_eq!(out.fixing_sequence, Some(vec![0]));
    }

    #[test]
    fn square_canon_is_label_invariant() {
        let g = c4();
        let reference = {
            let out = canon_rigidity(&g, 2, &BF).unwrap();
            let s = out.fixing_sequence.clone().unwrap();
            assert!(g.has_edge(s[0], s[1]), "chosen pair must be adjacent");
            encode(&apply_permutation(&g, &out.labeling).unwrap())
        };
        for pi in arrangements(4, 4) {
            let pi = Labeling::new(pi).unwrap();
            let h = apply_permutation(&g, &pi).unwrap();
            let out = canon_rigidity(&h, 2, &BF).unwrap();
            assert_eq!(encode(&apply_permutation(&h, &out.labeling).unwrap()), reference);
        }
    }

    #[test]
    fn triangle_falls_back_to_identity() {
        let out = canon_rigidity(&complete(3), 1, &BF).unwrap();
        assert!(out.labeling.is_identity());
        assert_eq!(out.fixing_sequence, None);
        assert_eq!(out.diagnostics, vec![Diagnostic::NoFixingSequence { r: 1 }]);
    }

    #[test]
    fn consistency_examples() {
        let c = rigidity_consistency_check(&c4(), 2).unwrap();
        assert_eq!((c.checked, c.mismatches.len()), (12, 0));
        let c = rigidity_consistency_check(&complete(3), 1).unwrap();
        assert_eq!((c.checked, c.mismatches.len()), (3, 0));
        let c = rigidity_consistency_check(&complete(4), 3).unwrap();
        assert_eq!((c.checked, c.mismatches.len()), (24, 0));
    }
}
