//! Reproducible graph families for test corpora.
//!
//! All randomness comes from [`Lcg64`], a 64-bit linear congruential
//! generator with Knuth's MMIX constants
//!
//! ```text
//! state <- state * 6364136223846793005 + 1442695040888963407  (mod 2^64)
//! ```
//!
//! seeded with `state = seed`. Each draw advances the state once and returns
//! its upper 32 bits. [`Lcg64::below`] reduces by multiply-shift:
//! `(draw * bound) >> 32`. Any implementation following these three lines
//! reproduces every corpus bit for bit.

use std::fmt;
use std::str::FromStr;

use crate::embedding::RotationSystem;
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Labeling};
use crate::oracle::tree_certificate;

pub const LCG_MULTIPLIER: u64 = 6364136223846793005;
pub const LCG_INCREMENT: u64 = 1442695040888963407;

#[derive(Clone, Debug)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(LCG_MULTIPLIER)
            .wrapping_add(LCG_INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish integer in `0..bound` (`bound` ≥ 1, at most `2^32`).
    pub fn below(&mut self, bound: usize) -> usize {
        ((self.next_u32() as u64 * bound as u64) >> 32) as usize
    }

    /// True with probability `num / den`.
    pub fn chance(&mut self, num: u32, den: u32) -> bool {
        (self.below(den as usize) as u32) < num
    }

    /// Fisher-Yates from the back: for `i = n-1 .. 1`, swap `i` with
    /// `below(i + 1)`.
    pub fn permutation(&mut self, n: usize) -> Labeling {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i + 1);
            p.swap(i, j);
        }
        Labeling::new(p).expect("shuffle of identity")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Platonic {
    Tetrahedron,
    Cube,
    Octahedron,
}

/// A family together with its parameters. Probabilities are given in
/// percent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Random recursive tree: vertex `i > 0` attaches to `below(i)`.
    Tree { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Star { leaves: usize },
    /// Start from the clique on `0..=k`; vertex `i > k` attaches to a random
    /// k-clique among those created so far (in creation order).
    KTree { k: usize, n: usize },
    /// A k-tree with each edge, in increasing `(u, v)` order, deleted with
    /// probability `drop_pct` percent.
    PartialKTree { k: usize, n: usize, drop_pct: u32 },
    /// Each pair `(u, v)`, `u < v` in increasing order, is an edge with
    /// probability `p_pct` percent.
    RandomGnp { n: usize, p_pct: u32 },
    Platonic(Platonic),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Tree { .. } => "tree",
            Family::Path { .. } => "path",
            Family::Cycle { .. } => "cycle",
            Family::Complete { .. } => "complete",
            Family::Star { .. } => "star",
            Family::KTree { .. } => "k_tree",
            Family::PartialKTree { .. } => "partial_k_tree",
            Family::RandomGnp { .. } => "random_gnp",
            Family::Platonic(_) => "platonic",
        }
    }

    /// Parameters as comma-separated `key=value` pairs.
    pub fn params(&self) -> String {
        match *self {
            Family::Tree { n } | Family::Path { n } | Family::Cycle { n } | Family::Complete { n } => {
                format!("n={n}")
            }
            Family::Star { leaves } => format!("leaves={leaves}"),
            Family::KTree { k, n } => format!("k={k},n={n}"),
            Family::PartialKTree { k, n, drop_pct } => format!("k={k},n={n},drop={drop_pct}"),
            Family::RandomGnp { n, p_pct } => format!("n={n},p={p_pct}"),
            Family::Platonic(p) => format!(
                "solid={}",
                match p {
                    Platonic::Tetrahedron => "tetrahedron",
                    Platonic::Cube => "cube",
                    Platonic::Octahedron => "octahedron",
                }
            ),
        }
    }

    /// Inverse of [`Family::name`] + [`Family::params`].
    pub fn parse(name: &str, params: &str) -> Result<Family> {
        let mut kv = std::collections::BTreeMap::new();
        for pair in params.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::parse(1, format!("bad parameter `{pair}`")))?;
            kv.insert(k, v);
        }
        let num = |key: &str| -> Result<usize> {
            kv.get(key)
                .ok_or_else(|| Error::parse(1, format!("{name} needs `{key}`")))?
                .parse()
                .map_err(|_| Error::parse(1, format!("`{key}` must be an integer")))
        };
        let pct = |key: &str, default: u32| -> Result<u32> {
            match kv.get(key) {
                None => Ok(default),
                Some(v) => v
                    .parse()
                    .ok()
                    .filter(|&p: &u32| p <= 100)
                    .ok_or_else(|| Error::parse(1, format!("`{key}` must be 0..=100"))),
            }
        };
        Ok(match name {
            "tree" => Family::Tree { n: num("n")? },
            "path" => Family::Path { n: num("n")? },
            "cycle" => Family::Cycle { n: num("n")? },
            "complete" => Family::Complete { n: num("n")? },
            "star" => Family::Star {
                leaves: num("leaves")?,
            },
            "k_tree" => Family::KTree {
                k: num("k")?,
                n: num("n")?,
            },
            "partial_k_tree" => Family::PartialKTree {
                k: num("k")?,
                n: num("n")?,
                drop_pct: pct("drop", 30)?,
            },
            "random_gnp" => Family::RandomGnp {
                n: num("n")?,
                p_pct: pct("p", 50)?,
            },
            "platonic" => Family::Platonic(match kv.get("solid").copied() {
                Some("tetrahedron") | Some("k4") => Platonic::Tetrahedron,
                Some("cube") => Platonic::Cube,
                Some("octahedron") => Platonic::Octahedron,
                other => {
                    return Err(Error::parse(1, format!("unknown solid {other:?}")));
                }
            }),
            other => return Err(Error::parse(1, format!("unknown family `{other}`"))),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name(), self.params())
    }
}

/// Builds one member of `family`; deterministic in `seed`.
pub fn gen_family(family: Family, seed: u64) -> Result<ColoredGraph> {
    let mut rng = Lcg64::new(seed);
    let edges: Vec<(usize, usize)> = match family {
        Family::Tree { n } => (1..n).map(|i| (rng.below(i), i)).collect(),
        Family::Path { n } => (1..n).map(|i| (i - 1, i)).collect(),
        Family::Cycle { n } => {
            if n < 3 {
                return Err(Error::ContractViolation("a cycle needs n >= 3".into()));
            }
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
        Family::Complete { n } => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
        Family::Star { leaves } => (1..=leaves).map(|v| (0, v)).collect(),
        Family::KTree { k, n } => k_tree_edges(k, n, &mut rng)?,
        Family::PartialKTree { k, n, drop_pct } => {
            let mut edges = k_tree_edges(k, n, &mut rng)?;
            edges.sort_unstable();
            edges.retain(|_| !rng.chance(drop_pct, 100));
            edges
        }
        Family::RandomGnp { n, p_pct } => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.chance(p_pct, 100) {
                        edges.push((u, v));
                    }
                }
            }
            edges
        }
        Family::Platonic(p) => return Ok(platonic(p).0),
    };
    let n = match family {
        Family::Tree { n }
        | Family::Path { n }
        | Family::Cycle { n }
        | Family::Complete { n }
        | Family::KTree { n, .. }
        | Family::PartialKTree { n, .. }
        | Family::RandomGnp { n, .. } => n,
        Family::Star { leaves } => leaves + 1,
        Family::Platonic(_) => unreachable!(),
    };
    ColoredGraph::from_edges(n, &edges)
}

fn k_tree_edges(k: usize, n: usize, rng: &mut Lcg64) -> Result<Vec<(usize, usize)>> {
    if k == 0 || n < k + 1 {
        return Err(Error::ContractViolation(format!(
            "a {k}-tree needs k >= 1 and at least {} vertices",
            k + 1
        )));
    }
    let mut edges: Vec<(usize, usize)> = (0..=k)
        .flat_map(|u| (u + 1..=k).map(move |v| (u, v)))
        .collect();
    // k-cliques of the base (k+1)-clique: drop one vertex each, highest first
    let mut cliques: Vec<Vec<usize>> = (0..=k)
        .rev()
        .map(|skip| (0..=k).filter(|&v| v != skip).collect())
        .collect();
    for v in k + 1..n {
        let base = cliques[rng.below(cliques.len())].clone();
        for &u in &base {
            edges.push((u, v));
        }
        for i in 0..k {
            let mut c = base.clone();
            c[i] = v;
            c.sort_unstable();
            cliques.push(c);
        }
    }
    Ok(edges)
}

/// A Platonic solid with its planar rotation system.
pub fn platonic(solid: Platonic) -> (ColoredGraph, RotationSystem) {
    // faces listed counterclockwise as seen from outside
    let (n, faces): (usize, Vec<Vec<usize>>) = match solid {
        Platonic::Tetrahedron => (4, vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]]),
        // vertex x + 2y + 4z of the unit cube
        Platonic::Cube => (
            8,
            vec![
                vec![0, 2, 3, 1],
                vec![4, 5, 7, 6],
                vec![0, 1, 5, 4],
                vec![2, 6, 7, 3],
                vec![0, 4, 6, 2],
                vec![1, 3, 7, 5],
            ],
        ),
        // 0: +x, 1: -x, 2: +y, 3: -y, 4: +z, 5: -z
        Platonic::Octahedron => {
            let mut faces = Vec::new();
            for x in [0, 1] {
                for y in [2, 3] {
                    for z in [4, 5] {
                        let negatives = (x == 1) as u8 + (y == 3) as u8 + (z == 5) as u8;
                        if negatives.is_multiple_of(2) {
                            faces.push(vec![x, y, z]);
                        } else {
                            faces.push(vec![x, z, y]);
                        }
                    }
                }
            }
            (6, faces)
        }
    };
    let mut edges: Vec<(usize, usize)> = faces
        .iter()
        .flat_map(|f| (0..f.len()).map(move |i| (f[i], f[(i + 1) % f.len()])))
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let g = ColoredGraph::from_edges(n, &edges).expect("solid edges are simple");
    let rs = RotationSystem::from_faces(&g, &faces).expect("solid faces are consistently oriented");
    (g, rs)
}

/// One representative of every free tree on `n` vertices, grown by leaf
/// addition and deduplicated by tree certificate. Sorted by certificate.
pub fn free_trees(n: usize) -> Vec<ColoredGraph> {
    if n == 0 {
        return Vec::new();
    }
    let mut layer = vec![(tree_certificate(&ColoredGraph::new(1)).unwrap(), ColoredGraph::new(1))];
    for size in 2..=n {
        let mut next = std::collections::BTreeMap::new();
        for (_, t) in &layer {
            for v in 0..size - 1 {
                let mut edges: Vec<_> = t.edges().collect();
                edges.push((v, size - 1));
                let grown = ColoredGraph::from_edges(size, &edges).expect("fresh leaf edge");
                let cert = tree_certificate(&grown).expect("still a tree");
                next.entry(cert).or_insert(grown);
            }
        }
        layer = next.into_iter().collect();
    }
    layer.into_iter().map(|(_, t)| t).collect()
}

/// A corpus manifest line: `<family> <params> <seed> <cg-file-path>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub family: Family,
    pub seed: u64,
    pub path: String,
}

impl fmt::Display for ManifestEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.family.name(),
            self.family.params(),
            self.seed,
            self.path
        )
    }
}

impl FromStr for ManifestEntry {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [name, params, seed, path] = fields[..] else {
            return Err(Error::parse(1, format!("expected 4 fields, got `{line}`")));
        };
        Ok(ManifestEntry {
            family: Family::parse(name, params)?,
            seed: seed
                .parse()
                .map_err(|_| Error::parse(1, format!("bad seed `{seed}`")))?,
            path: path.to_string(),
        })
    }
}

pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.parse().map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(i + 1, msg),
                other => other,
            })
        })
        .collect()
}
