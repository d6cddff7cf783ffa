//! Canonical labeling by recursion on small balanced separators.
//!
//! At recursion depth `d` (starting at 1) with separator size `r`, colors
//! are drawn from the block `((d-1)R, dR]` where `R = 2^r + r`:
//!
//! * `(d-1)R + i` marks the `i`-th vertex of a candidate separating
//!   sequence when ranking candidates;
//! * `(d-1)R + r + 1 + mask` marks a flap vertex whose neighbors in the
//!   separator are the positions set in `mask`.
//!
//! Blocks of different depths never overlap. When the input is precolored
//! all of these values are shifted above its largest color.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{apply_permutation, encode, CanonicalCode, ColoredGraph, Labeling};
use crate::invariant::{Invariant, Meter};
use crate::iso::{are_isomorphic_bf, is_isomorphism, oracle_cap};
use crate::oracle::next_combination;
use crate::report::Diagnostic;
use crate::seq::arrangements;

/// Largest supported separator size; `2^r` must fit the color arithmetic.
pub const MAX_SEPARATOR_SIZE: usize = 24;

/// Color bookkeeping for one canonization run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeparatorRun {
    pub r: usize,
    /// Width of the per-depth color block, `2^r + r`.
    pub block: u64,
    /// Offset added to every introduced color.
    pub color_base: u64,
}

impl SeparatorRun {
    pub fn new(r: usize, color_base: u64) -> Result<Self> {
        if r > MAX_SEPARATOR_SIZE {
            return Err(Error::ContractViolation(format!(
                "separator size {r} exceeds {MAX_SEPARATOR_SIZE}"
            )));
        }
        Ok(SeparatorRun {
            r,
            block: (1u64 << r) + r as u64,
            color_base,
        })
    }

    /// Color of the `i`-th (1-based) separator vertex at depth `d`.
    pub fn sequence_color(&self, d: usize, i: usize) -> u64 {
        self.color_base + (d as u64 - 1) * self.block + i as u64
    }

    /// Color of a flap vertex whose separator neighbors are given by `mask`
    /// (bit `i - 1` set when adjacent to the `i`-th separator vertex).
    pub fn pattern_color(&self, d: usize, mask: u64) -> u64 {
        self.color_base + (d as u64 - 1) * self.block + self.r as u64 + 1 + mask
    }

    fn color_sequence(&self, g: &ColoredGraph, s: &[usize], d: usize) -> ColoredGraph {
        let mut gs = g.clone();
        for (i, &v) in s.iter().enumerate() {
            gs.add_color(v, self.sequence_color(d, i + 1));
        }
        gs
    }
}

/// A component of `G - X` as a colored graph, with its vertices' positions
/// in the parent graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flap {
    pub graph: ColoredGraph,
    pub origin: Vec<usize>,
}

/// True iff every component of `G - X` has at most `n/2` vertices.
pub fn is_separator(g: &ColoredGraph, x: &[usize]) -> bool {
    g.components_without(x)
        .iter()
        .all(|c| 2 * c.len() <= g.n())
}

/// All sequences of `r` distinct vertices whose set is a separator, in
/// lexicographic order.
pub fn mark_separating_sequences(g: &ColoredGraph, r: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    if r > n {
        return Vec::new();
    }
    let mut separating_sets = Vec::new();
    let mut set: Vec<usize> = (0..r).collect();
    loop {
        if is_separator(g, &set) {
            separating_sets.push(set.clone());
        }
        if !next_combination(&mut set, n) {
            break;
        }
    }
    let mut out: Vec<Vec<usize>> = separating_sets
        .iter()
        .flat_map(|set| {
            arrangements(r, r)
                .into_iter()
                .map(|p| p.iter().map(|&i| set[i]).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_unstable();
    out
}

/// Splits `G - set(s)` into flaps. Each flap vertex gains the adjacency
/// pattern color for depth `d`; inherited colors are kept.
pub fn decompose_flaps(
    g: &ColoredGraph,
    s: &[usize],
    d: usize,
    run: &SeparatorRun,
) -> Result<Vec<Flap>> {
    if s.len() != run.r || !is_separator(g, s) {
        return Err(Error::ContractViolation(format!(
            "{s:?} is not a separating {}-sequence",
            run.r
        )));
    }
    Ok(flaps_unchecked(g, s, d, run))
}

fn flaps_unchecked(g: &ColoredGraph, s: &[usize], d: usize, run: &SeparatorRun) -> Vec<Flap> {
    g.components_without(s)
        .into_iter()
        .map(|comp| {
            let mut graph = g.induced(&comp);
            for (i, &v) in comp.iter().enumerate() {
                let mask = s
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| g.has_edge(v, x))
                    .fold(0u64, |m, (j, _)| m | 1 << j);
                graph.add_color(i, run.pattern_color(d, mask));
            }
            Flap {
                graph,
                origin: comp,
            }
        })
        .collect()
}

/// How flaps with equal codes are ordered among themselves.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// The flap containing the smaller vertex comes first.
    #[default]
    SmallestVertex,
    /// The flap containing the larger vertex comes first.
    LargestVertex,
}

#[derive(Clone, Debug)]
pub struct SeparatorCanon {
    pub r: usize,
    pub invariant: Invariant,
    /// Cross-check equal-code flaps with the brute-force isomorphism oracle.
    pub cross_check: bool,
    pub tie_break: TieBreak,
}

#[derive(Clone, Debug)]
pub struct CanonOutcome {
    pub labeling: Labeling,
    /// Deepest recursion level reached, base-case blocks included.
    pub depth: usize,
    pub invariant_calls: u64,
    pub rounds: u64,
    pub diagnostics: Vec<Diagnostic>,
}

impl CanonOutcome {
    /// True when every recursion level found a separator.
    pub fn separators_everywhere(&self) -> bool {
        !self
            .diagnostics
            .iter()
            .any(|d| matches!(d, Diagnostic::NoSeparator { .. }))
    }
}

struct Scope {
    order: Vec<usize>,
    depth: usize,
    diagnostics: Vec<Diagnostic>,
}

impl SeparatorCanon {
    pub fn new(r: usize, invariant: Invariant) -> Self {
        SeparatorCanon {
            r,
            invariant,
            cross_check: false,
            tie_break: TieBreak::default(),
        }
    }

    pub fn with_cross_check(mut self, on: bool) -> Self {
        self.cross_check = on;
        self
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn canonize(&self, g: &ColoredGraph) -> Result<CanonOutcome> {
        let run = SeparatorRun::new(self.r, g.color_base())?;
        let meter = Meter::default();
        let scope = self.scope(g, 1, &run, &meter)?;
        Ok(CanonOutcome {
            labeling: Labeling::from_order(&scope.order)?,
            depth: scope.depth,
            invariant_calls: meter.calls(),
            rounds: meter.rounds(),
            diagnostics: scope.diagnostics,
        })
    }

    fn scope(&self, h: &ColoredGraph, d: usize, run: &SeparatorRun, meter: &Meter) -> Result<Scope> {
        let n = h.n();
        if n <= self.r {
            return self.base_case(h, d, meter);
        }
        let candidates = mark_separating_sequences(h, self.r);
        if candidates.is_empty() {
            return Ok(Scope {
                order: (0..n).collect(),
                depth: d,
                diagnostics: vec![Diagnostic::NoSeparator { depth: d, size: n }],
            });
        }

        let codes: Vec<CanonicalCode> = candidates
            .par_iter()
            .map(|s| self.invariant.eval_metered(&run.color_sequence(h, s, d), meter))
            .collect::<Result<_>>()?;
        let best = argmin(&codes);
        let s = &candidates[best];

        let flaps = flaps_unchecked(h, s, d, run);
        let flap_codes: Vec<CanonicalCode> = flaps
            .par_iter()
            .map(|f| self.invariant.eval_metered(&f.graph, meter))
            .collect::<Result<_>>()?;
        let mut ranked: Vec<usize> = (0..flaps.len()).collect();
        ranked.sort_by(|&a, &b| {
            let by_vertex = flaps[a].origin[0].cmp(&flaps[b].origin[0]);
            flap_codes[a].cmp(&flap_codes[b]).then(match self.tie_break {
                TieBreak::SmallestVertex => by_vertex,
                TieBreak::LargestVertex => by_vertex.reverse(),
            })
        });

        let mut diagnostics = Vec::new();
        if self.cross_check && !self.invariant.is_complete_everywhere() {
            for pair in ranked.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                let size = flaps[a].graph.n();
                if flap_codes[a] == flap_codes[b] && size <= oracle_cap() {
                    let iso = are_isomorphic_bf(&flaps[a].graph, &flaps[b].graph)?;
                    if iso.is_none() {
                        diagnostics.push(Diagnostic::InvariantCollision { depth: d, size });
                    }
                }
            }
        }

        let subs: Vec<Scope> = ranked
            .par_iter()
            .map(|&i| self.scope(&flaps[i].graph, d + 1, run, meter))
            .collect::<Result<_>>()?;

        let mut order = s.clone();
        let mut depth = d;
        for (sub, &i) in subs.into_iter().zip(&ranked) {
            order.extend(sub.order.iter().map(|&v| flaps[i].origin[v]));
            depth = depth.max(sub.depth);
            diagnostics.extend(sub.diagnostics);
        }
        Ok(Scope {
            order,
            depth,
            diagnostics,
        })
    }

    /// Small blocks: try every bijection `τ: V(F) -> {1..t}`, coloring `v`
    /// with `a + τ(v)` where `a` is the largest color in `F`, and keep the
    /// one with the smallest code.
    fn base_case(&self, f: &ColoredGraph, d: usize, meter: &Meter) -> Result<Scope> {
        let t = f.n();
        let a = f.max_color().unwrap_or(0);
        let taus = arrangements(t, t);
        let codes: Vec<CanonicalCode> = taus
            .par_iter()
            .map(|tau| {
                let mut colored = f.clone();
                for (v, &rank) in tau.iter().enumerate() {
                    colored.add_color(v, a + rank as u64 + 1);
                }
                self.invariant.eval_metered(&colored, meter)
            })
            .collect::<Result<_>>()?;
        let tau = &taus[argmin(&codes)];
        let mut order: Vec<usize> = (0..t).collect();
        order.sort_by_key(|&v| tau[v]);
        Ok(Scope {
            order,
            depth: d,
            diagnostics: Vec::new(),
        })
    }
}

fn argmin(codes: &[CanonicalCode]) -> usize {
    codes
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.cmp(b).then(i.cmp(j)))
        .map(|(i, _)| i)
        .expect("non-empty candidate list")
}

pub fn canon_separator(g: &ColoredGraph, r: usize, f: &Invariant) -> Result<CanonOutcome> {
    SeparatorCanon::new(r, *f).canonize(g)
}

#[derive(Clone, Debug)]
pub struct IsoOutcome {
    /// A verified isomorphism `G -> H`.
    pub mapping: Option<Labeling>,
    pub diagnostics: Vec<Diagnostic>,
    pub left: CanonOutcome,
    pub right: CanonOutcome,
}

/// Canonizes both graphs and, when the canonical forms agree, returns
/// `σ_H⁻¹ ∘ σ_G` after checking it edge by edge.
pub fn find_isomorphism(
    g: &ColoredGraph,
    h: &ColoredGraph,
    canon: &SeparatorCanon,
) -> Result<IsoOutcome> {
    let left = canon.canonize(g)?;
    let right = canon.canonize(h)?;
    let mut diagnostics: Vec<Diagnostic> = left
        .diagnostics
        .iter()
        .chain(&right.diagnostics)
        .cloned()
        .collect();
    let mut mapping = None;
    if g.n() == h.n() {
        let form_g = encode(&apply_permutation(g, &left.labeling)?);
        let form_h = encode(&apply_permutation(h, &right.labeling)?);
        if form_g == form_h {
            let candidate = right.labeling.inverse().compose(&left.labeling);
            if is_isomorphism(g, h, &candidate) {
                mapping = Some(candidate);
            } else {
                diagnostics.push(Diagnostic::VerificationFailed);
            }
        }
    }
    Ok(IsoOutcome {
        mapping,
        diagnostics,
        left,
        right,
    })
}
