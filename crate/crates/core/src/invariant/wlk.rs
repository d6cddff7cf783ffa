//! k-dimensional Weisfeiler-Lehman refinement on vertex k-tuples.
//!
//! This is the variant where a tuple's new color collects, for every vertex
//! `w`, the k-vector of colors of the tuples obtained by substituting `w`
//! into each coordinate. With `k = 2` it already tells a hexagon from two
//! triangles, which plain color refinement cannot.

use rayon::prelude::*;

use super::{rank_signatures, CodeWriter};
use crate::error::{Error, Result};
use crate::graph::{CanonicalCode, ColoredGraph};

/// Default cap on the number of tuples, `n^k`.
pub const DEFAULT_TUPLE_CAP: usize = 1 << 21;

const PAR_THRESHOLD: usize = 256;

#[derive(Clone, Debug)]
pub struct WlkRefinement {
    pub k: usize,
    pub n: usize,
    /// Stable color of every tuple, indexed in base `n` with the first
    /// coordinate most significant.
    pub tuple_colors: Vec<u32>,
    pub rounds: usize,
    pub code: CanonicalCode,
}

impl WlkRefinement {
    /// Color of the diagonal tuple `(v, ..., v)` for each vertex.
    pub fn diagonal(&self) -> Vec<u32> {
        let step: usize = (0..self.k).map(|i| self.n.pow(i as u32)).sum();
        (0..self.n).map(|v| self.tuple_colors[v * step]).collect()
    }
}

pub fn wlk_refine(g: &ColoredGraph, k: usize) -> Result<CanonicalCode> {
    wlk_refine_with(g, k, None, DEFAULT_TUPLE_CAP).map(|r| r.code)
}

pub fn wlk_refine_with(
    g: &ColoredGraph,
    k: usize,
    round_cap: Option<usize>,
    tuple_cap: usize,
) -> Result<WlkRefinement> {
    if k < 2 {
        return Err(Error::ContractViolation(format!(
            "wlk needs a dimension of at least 2, got {k}"
        )));
    }
    let n = g.n();
    let tuples = (n as u128).pow(k as u32);
    if tuples > tuple_cap as u128 {
        return Err(Error::BackendCapacity(format!(
            "{n}^{k} tuples exceeds the cap of {tuple_cap}"
        )));
    }
    let tuples = tuples as usize;
    // place[i] is the index weight of coordinate i
    let place: Vec<usize> = (0..k).map(|i| n.pow((k - 1 - i) as u32)).collect();
    let digits = |t: usize| -> Vec<usize> { place.iter().map(|&p| (t / p) % n).collect() };

    let mut code = CodeWriter::default();
    code.tag(b"WLK");
    code.u32(k as u32);
    code.u64(n as u64);

    // Initial color: ordered isomorphism type of the tuple, vertex colors
    // included.
    let vertex_colors: Vec<&[u64]> = (0..n).map(|v| g.colors(v)).collect();
    let (color_ids, color_table) = rank_signatures(&vertex_colors);
    code.u32(color_table.len() as u32);
    for (colors, count) in &color_table {
        code.u32(colors.len() as u32);
        for &c in colors.iter() {
            code.u64(c);
        }
        code.u32(*count);
    }
    let atomic = |t: usize| -> Vec<u32> {
        let vs = digits(t);
        let mut sig: Vec<u32> = vs.iter().map(|&v| color_ids[v]).collect();
        for i in 0..k {
            for j in i + 1..k {
                let rel = if vs[i] == vs[j] {
                    2
                } else if g.has_edge(vs[i], vs[j]) {
                    1
                } else {
                    0
                };
                sig.push(rel);
            }
        }
        sig
    };
    let sigs: Vec<Vec<u32>> = map_tuples(tuples, atomic);
    let (mut colors, table) = rank_signatures(&sigs);
    write_table(&mut code, &table);

    let mut class_count = table.len();
    let mut rounds = 0;
    let cap = round_cap.unwrap_or(usize::MAX);
    while rounds < cap && tuples > 0 {
        let refine = |t: usize| -> Vec<u32> {
            let vs = digits(t);
            let mut rows = Vec::with_capacity(n * k);
            for w in 0..n {
                for i in 0..k {
                    let u = t + w * place[i] - vs[i] * place[i];
                    rows.push(colors[u]);
                }
            }
            let mut chunks: Vec<&[u32]> = rows.chunks(k).collect();
            chunks.sort_unstable();
            let mut sig = Vec::with_capacity(1 + n * k);
            sig.push(colors[t]);
            for c in chunks {
                sig.extend_from_slice(c);
            }
            sig
        };
        let sigs: Vec<Vec<u32>> = map_tuples(tuples, refine);
        let (next, table) = rank_signatures(&sigs);
        rounds += 1;
        write_table(&mut code, &table);
        let stable = table.len() == class_count;
        class_count = table.len();
        colors = next;
        if stable {
            break;
        }
    }

    Ok(WlkRefinement {
        k,
        n,
        tuple_colors: colors,
        rounds,
        code: code.finish(),
    })
}

fn map_tuples<F>(tuples: usize, f: F) -> Vec<Vec<u32>>
where
    F: Fn(usize) -> Vec<u32> + Sync + Send,
{
    if tuples >= PAR_THRESHOLD {
        (0..tuples).into_par_iter().map(f).collect()
    } else {
        (0..tuples).map(f).collect()
    }
}

fn write_table(code: &mut CodeWriter, table: &[(Vec<u32>, u32)]) {
    code.u32(table.len() as u32);
    for (sig, count) in table {
        code.len_prefixed(sig);
        code.u32(*count);
    }
}
