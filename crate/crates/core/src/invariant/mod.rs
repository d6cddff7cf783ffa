//! Pluggable graph invariants.
//!
//! Every backend maps a colored graph to a [`CanonicalCode`] that is equal on
//! isomorphic inputs. Only the brute-force backend is complete on all
//! graphs; the Weisfeiler-Lehman backends are complete on restricted classes
//! and the canonizers treat their completeness as an assumption to be
//! checked.

mod brute;
mod wl1;
mod wlk;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

pub use brute::{bf_canonical_order, bf_invariant};
pub use wl1::{wl1_refine, wl1_refine_with, Wl1Refinement};
pub use wlk::{wlk_refine, wlk_refine_with, WlkRefinement, DEFAULT_TUPLE_CAP};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, CanonicalCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvariantKind {
    Wl1,
    Wlk(usize),
    BruteForce,
}

/// A configured invariant backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Invariant {
    pub kind: InvariantKind,
    pub round_cap: Option<usize>,
}

impl Invariant {
    pub const WL1: Invariant = Invariant {
        kind: InvariantKind::Wl1,
        round_cap: None,
    };

    pub const BRUTE_FORCE: Invariant = Invariant {
        kind: InvariantKind::BruteForce,
        round_cap: None,
    };

    pub fn wlk(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::ContractViolation(format!(
                "wlk needs a dimension of at least 2, got {k}"
            )));
        }
        Ok(Invariant {
            kind: InvariantKind::Wlk(k),
            round_cap: None,
        })
    }

    pub fn with_round_cap(self, cap: Option<usize>) -> Self {
        Invariant {
            round_cap: cap,
            ..self
        }
    }

    pub fn is_complete_everywhere(&self) -> bool {
        self.kind == InvariantKind::BruteForce
    }

    pub fn eval(&self, g: &ColoredGraph) -> Result<CanonicalCode> {
        self.evaluate(g).map(|(code, _)| code)
    }

    /// Code plus the number of refinement rounds it took (zero for the
    /// brute-force backend).
    pub fn evaluate(&self, g: &ColoredGraph) -> Result<(CanonicalCode, usize)> {
        match self.kind {
            InvariantKind::Wl1 => {
                let r = wl1_refine_with(g, self.round_cap);
                Ok((r.code, r.rounds))
            }
            InvariantKind::Wlk(k) => {
                let r = wlk_refine_with(g, k, self.round_cap, DEFAULT_TUPLE_CAP)?;
                Ok((r.code, r.rounds))
            }
            InvariantKind::BruteForce => bf_invariant(g).map(|c| (c, 0)),
        }
    }

    /// Evaluates and records the call in `meter`.
    pub fn eval_metered(&self, g: &ColoredGraph, meter: &Meter) -> Result<CanonicalCode> {
        let (code, rounds) = self.evaluate(g)?;
        meter.calls.fetch_add(1, Ordering::Relaxed);
        meter.rounds.fetch_add(rounds as u64, Ordering::Relaxed);
        Ok(code)
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            InvariantKind::Wl1 => f.write_str("wl1"),
            InvariantKind::Wlk(k) => write!(f, "wlk:{k}"),
            InvariantKind::BruteForce => f.write_str("bf"),
        }
    }
}

/// Parses the selector grammar `wl1 | wlk:<k> | bf`.
impl FromStr for Invariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wl1" => Ok(Invariant::WL1),
            "bf" => Ok(Invariant::BRUTE_FORCE),
            _ => {
                let k = s
                    .strip_prefix("wlk:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| Error::parse(1, format!("unknown invariant selector `{s}`")))?;
                Invariant::wlk(k)
            }
        }
    }
}

/// Counts invariant evaluations and refinement rounds across threads.
#[derive(Debug, Default)]
pub struct Meter {
    calls: AtomicU64,
    rounds: AtomicU64,
}

impl Meter {
    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn rounds(&self) -> u64 {
        self.rounds.load(Ordering::Relaxed)
    }
}

/// Append-only token stream used to build label-independent codes.
#[derive(Default)]
pub(crate) struct CodeWriter(Vec<u8>);

impl CodeWriter {
    pub(crate) fn tag(&mut self, tag: &[u8]) {
        self.0.extend_from_slice(tag);
    }

    pub(crate) fn u32(&mut self, x: u32) {
        self.0.extend_from_slice(&x.to_be_bytes());
    }

    pub(crate) fn u64(&mut self, x: u64) {
        self.0.extend_from_slice(&x.to_be_bytes());
    }

    pub(crate) fn len_prefixed(&mut self, xs: &[u32]) {
        self.u32(xs.len() as u32);
        for &x in xs {
            self.u32(x);
        }
    }

    pub(crate) fn finish(self) -> CanonicalCode {
        CanonicalCode::new(self.0)
    }
}

/// Renumbers `signatures` by rank among the distinct values. Returns the
/// per-item ids and the sorted distinct signatures with their counts.
pub(crate) fn rank_signatures<S: Ord + Clone>(signatures: &[S]) -> (Vec<u32>, Vec<(S, u32)>) {
    let mut distinct: Vec<&S> = signatures.iter().collect();
    distinct.sort();
    distinct.dedup();
    let mut counts = vec![0u32; distinct.len()];
    let ids: Vec<u32> = signatures
        .iter()
        .map(|s| {
            let id = distinct.binary_search(&s).expect("signature is present");
            counts[id] += 1;
            id as u32
        })
        .collect();
    let table = distinct
        .into_iter()
        .cloned()
        .zip(counts)
        .collect();
    (ids, table)
}
