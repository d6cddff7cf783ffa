//! Rotation systems of orientable embeddings.
//!
//! A rotation system gives every vertex `a` a cyclic successor map on its
//! neighborhood; `succ(a, b) = c` is the ternary relation `T(a, b, c)`.
//! Faces are traced with the rule "after arc `u -> v` take `v -> succ(v, u)`".
//! The mirror convention only matters up to conjugation, which every
//! predicate here is invariant under.

mod faces;
mod fixing;

use std::collections::BTreeMap;

pub use faces::{euler_genus, is_polyhedral, trace_faces, FacialWalk};
pub use fixing::{
    fixing_triple, is_faithful, polyhedral_embeddings, polyhedral_fixing_set, FixingTriple,
    PolyhedralFixingSet, TripleKind,
};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Labeling};
use crate::seq::arrangements;

/// Default cap on the number of rotation systems an enumeration may yield.
pub const DEFAULT_ROTATION_CAP: u128 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotationSystem {
    graph: ColoredGraph,
    succ: Vec<BTreeMap<usize, usize>>,
}

impl RotationSystem {
    /// Wraps raw successor maps without checking them; see
    /// [`RotationSystem::validate`].
    pub fn from_successors(graph: &ColoredGraph, succ: Vec<BTreeMap<usize, usize>>) -> Self {
        RotationSystem {
            graph: graph.uncolored(),
            succ,
        }
    }

    /// Builds the rotation system where `orders[a]` lists `Γ(a)` in cyclic
    /// successor order.
    pub fn from_cyclic_orders(graph: &ColoredGraph, orders: &[Vec<usize>]) -> Result<Self> {
        if orders.len() != graph.n() {
            return Err(Error::InvalidRotation(format!(
                "{} cyclic orders for {} vertices",
                orders.len(),
                graph.n()
            )));
        }
        let succ = orders
            .iter()
            .map(|cycle| {
                let mut map = BTreeMap::new();
                for (i, &b) in cycle.iter().enumerate() {
                    map.insert(b, cycle[(i + 1) % cycle.len()]);
                }
                map
            })
            .collect();
        let rs = RotationSystem::from_successors(graph, succ);
        rs.validate().map_err(Error::InvalidRotation)?;
        Ok(rs)
    }

    /// Builds a rotation system from consistently oriented faces: for every
    /// consecutive `u, v, w` on a face, `succ(v, u) = w`.
    pub fn from_faces(graph: &ColoredGraph, faces: &[Vec<usize>]) -> Result<Self> {
        let mut succ = vec![BTreeMap::new(); graph.n()];
        for face in faces {
            let k = face.len();
            for i in 0..k {
                let (u, v, w) = (face[i], face[(i + 1) % k], face[(i + 2) % k]);
                if succ[v].insert(u, w).is_some() {
                    return Err(Error::InvalidRotation(format!(
                        "arc {u} -> {v} lies on two faces"
                    )));
                }
            }
        }
        let rs = RotationSystem::from_successors(graph, succ);
        rs.validate().map_err(Error::InvalidRotation)?;
        Ok(rs)
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `c` with `T(a, b, c)`.
    pub fn succ(&self, a: usize, b: usize) -> Option<usize> {
        self.succ[a].get(&b).copied()
    }

    /// Whether `T(a, b, c)` holds.
    pub fn holds(&self, a: usize, b: usize, c: usize) -> bool {
        self.succ(a, b) == Some(c)
    }

    /// `Γ(a)` in successor order starting from the smallest neighbor.
    pub fn cyclic_order(&self, a: usize) -> Vec<usize> {
        let Some(&start) = self.graph.neighbors(a).first() else {
            return Vec::new();
        };
        let mut out = vec![start];
        let mut b = start;
        while let Some(c) = self.succ(a, b) {
            if c == start || out.len() > self.graph.degree(a) {
                break;
            }
            out.push(c);
            b = c;
        }
        out
    }

    /// Checks that each `T(a, ·, ·)` relates neighbors of `a` only and forms
    /// a single directed cycle on `Γ(a)`.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.succ.len() != self.graph.n() {
            return Err(format!(
                "{} successor maps for {} vertices",
                self.succ.len(),
                self.graph.n()
            ));
        }
        for a in 0..self.graph.n() {
            let map = &self.succ[a];
            for (&b, &c) in map {
                if b >= self.graph.n() || c >= self.graph.n() {
                    return Err(format!("T({a}, {b}, {c}) names a vertex out of range"));
                }
                if !self.graph.has_edge(a, b) || !self.graph.has_edge(a, c) {
                    return Err(format!("T({a}, {b}, {c}) relates a non-neighbor of {a}"));
                }
            }
            let nbrs = self.graph.neighbors(a);
            if map.len() != nbrs.len() {
                return Err(format!("successor map of {a} does not cover Γ({a})"));
            }
            if let Some(&start) = nbrs.first() {
                let mut seen = 1;
                let mut b = map[&start];
                while b != start {
                    seen += 1;
                    if seen > nbrs.len() {
                        return Err(format!("T({a}, ·, ·) is not a permutation of Γ({a})"));
                    }
                    b = map[&b];
                }
                if seen != nbrs.len() {
                    return Err(format!("T({a}, ·, ·) is not a single cycle on Γ({a})"));
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        self.validate().map_err(Error::InvalidRotation)
    }

    /// Mirror image: `T*(a, b, c) = T(a, c, b)`.
    pub fn conjugate(&self) -> RotationSystem {
        let succ = self
            .succ
            .iter()
            .map(|m| m.iter().map(|(&b, &c)| (c, b)).collect())
            .collect();
        RotationSystem {
            graph: self.graph.clone(),
            succ,
        }
    }

    /// `R^α` with `T^α(a, b, c) = T(α⁻¹a, α⁻¹b, α⁻¹c)`; `alpha` must be an
    /// automorphism of the underlying graph.
    pub fn image(&self, alpha: &Labeling) -> Result<RotationSystem> {
        let n = self.graph.n();
        if alpha.len() != n
            || !self
                .graph
                .edges()
                .all(|(u, v)| self.graph.has_edge(alpha.image(u), alpha.image(v)))
        {
            return Err(Error::ContractViolation(
                "rotation image needs an automorphism of the graph".into(),
            ));
        }
        let mut succ = vec![BTreeMap::new(); n];
        for (a, map) in self.succ.iter().enumerate() {
            let target = &mut succ[alpha.image(a)];
            for (&b, &c) in map {
                target.insert(alpha.image(b), alpha.image(c));
            }
        }
        Ok(RotationSystem {
            graph: self.graph.clone(),
            succ,
        })
    }

    /// Whether `self` and `other` are equal or conjugate.
    pub fn is_equivalent(&self, other: &RotationSystem) -> bool {
        self.graph == other.graph && (self == other || *self == other.conjugate())
    }

    /// Whether `T(a, ·, ·)` agrees in both systems.
    pub fn coherent_at(&self, other: &RotationSystem, a: usize) -> bool {
        self.succ[a] == other.succ[a]
    }
}

pub fn validate_rotation_system(r: &RotationSystem) -> std::result::Result<(), String> {
    r.validate()
}

pub fn conjugate(r: &RotationSystem) -> RotationSystem {
    r.conjugate()
}

pub fn rotation_image(r: &RotationSystem, alpha: &Labeling) -> Result<RotationSystem> {
    r.image(alpha)
}

pub fn equivalent_embeddings(a: &RotationSystem, b: &RotationSystem) -> bool {
    a.is_equivalent(b)
}

/// Number of rotation systems of `g`, `Π (deg(v) - 1)!`.
pub fn rotation_system_count(g: &ColoredGraph) -> u128 {
    (0..g.n())
        .map(|v| (1..g.degree(v).max(1) as u128).product::<u128>())
        .product()
}

/// Every rotation system of `g` in a fixed order: the last vertex's cyclic
/// order varies fastest, and each vertex's orders are listed by the
/// arrangement of its non-first neighbors.
pub fn enumerate_rotation_systems(g: &ColoredGraph, cap: u128) -> Result<RotationSystems> {
    let count = rotation_system_count(g);
    if count > cap {
        return Err(Error::Unsupported(format!(
            "{count} rotation systems exceeds the cap of {cap}"
        )));
    }
    let choices: Vec<Vec<Vec<usize>>> = (0..g.n())
        .map(|v| {
            let nbrs = g.neighbors(v);
            match nbrs.split_first() {
                None => vec![Vec::new()],
                Some((&first, rest)) => arrangements(rest.len(), rest.len())
                    .into_iter()
                    .map(|p| {
                        std::iter::once(first)
                            .chain(p.iter().map(|&i| rest[i]))
                            .collect()
                    })
                    .collect(),
            }
        })
        .collect();
    Ok(RotationSystems {
        graph: g.uncolored(),
        digits: vec![0; g.n()],
        choices,
        done: false,
    })
}

pub struct RotationSystems {
    graph: ColoredGraph,
    choices: Vec<Vec<Vec<usize>>>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for RotationSystems {
    type Item = RotationSystem;

    fn next(&mut self) -> Option<RotationSystem> {
        if self.done {
            return None;
        }
        let orders: Vec<Vec<usize>> = self
            .digits
            .iter()
            .zip(&self.choices)
            .map(|(&d, c)| c[d].clone())
            .collect();
        let rs = RotationSystem::from_cyclic_orders(&self.graph, &orders)
            .expect("enumerated orders are cycles on each neighborhood");
        self.done = true;
        for v in (0..self.digits.len()).rev() {
            self.digits[v] += 1;
            if self.digits[v] < self.choices[v].len() {
                self.done = false;
                break;
            }
            self.digits[v] = 0;
        }
        Some(rs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{platonic, Platonic};

    fn k3() -> ColoredGraph {
        ColoredGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn k4() -> ColoredGraph {
        ColoredGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn triangle_rotation_is_valid_and_self_conjugate() {
        let rs = RotationSystem::from_cyclic_orders(&k3(), &[vec![1, 2], vec![0, 2], vec![0, 1]])
            .unwrap();
        assert!(rs.is_valid());
        assert_eq!(rs.conjugate(), rs);
    }

    #[test]
    fn rejects_non_neighbor_successor() {
        let g = k4();
        let mut succ: Vec<BTreeMap<usize, usize>> = (0..4)
            .map(|a| {
                let ns = g.neighbors(a);
                (0..3).map(|i| (ns[i], ns[(i + 1) % 3])).collect()
            })
            .collect();
        succ[0].insert(1, 0);
        let rs = RotationSystem::from_successors(&g, succ);
        assert!(rs.validate().unwrap_err().contains("non-neighbor"));
    }

    #[test]
    fn rejects_fixed_point_plus_two_cycle() {
        let g = k4();
        let mut succ: Vec<BTreeMap<usize, usize>> = (0..4)
            .map(|a| {
                let ns = g.neighbors(a);
                (0..3).map(|i| (ns[i], ns[(i + 1) % 3])).collect()
            })
            .collect();
        succ[0] = BTreeMap::from([(1, 1), (2, 3), (3, 2)]);
        let rs = RotationSystem::from_successors(&g, succ);
        assert!(!rs.is_valid());
    }

    #[test]
    fn conjugation_is_an_involution() {
        for rs in enumerate_rotation_systems(&k4(), DEFAULT_ROTATION_CAP).unwrap() {
            assert_eq!(rs.conjugate().conjugate(), rs);
        }
    }

    #[test]
    fn enumeration_counts() {
        let count = |g: &ColoredGraph| {
            enumerate_rotation_systems(g, DEFAULT_ROTATION_CAP)
                .unwrap()
                .count()
        };
        assert_eq!(count(&k4()), 16);
        assert_eq!(count(&k3()), 1);
        let c4 = ColoredGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(count(&c4), 1);
        let all: Vec<_> = enumerate_rotation_systems(&k4(), DEFAULT_ROTATION_CAP)
            .unwrap()
            .collect();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                assert_ne!(all[i], all[j]);
            }
        }
        assert!(enumerate_rotation_systems(&k4(), 15).is_err());
    }

    #[test]
    fn image_under_identity_and_composition() {
        let (g, rs) = platonic(Platonic::Cube);
        assert_eq!(rs.image(&Labeling::identity(g.n())).unwrap(), rs);
        let group = crate::oracle::automorphisms(&g).unwrap();
        let a = &group.elements[5];
        let b = &group.elements[17];
        let two_step = rs.image(a).unwrap().image(b).unwrap();
        assert_eq!(two_step, rs.image(&b.compose(a)).unwrap());
    }

    #[test]
    fn image_requires_automorphism() {
        let p3 = ColoredGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let rs = RotationSystem::from_cyclic_orders(&p3, &[vec![1], vec![0, 2], vec![1]]).unwrap();
        let bad = Labeling::new(vec![1, 0, 2]).unwrap();
        assert!(rs.image(&bad).is_err());
    }

    #[test]
    fn triangle_image_is_unchanged() {
        let rs = RotationSystem::from_cyclic_orders(&k3(), &[vec![1, 2], vec![0, 2], vec![0, 1]])
            .unwrap();
        for alpha in crate::oracle::automorphisms(&k3()).unwrap().elements {
            assert_eq!(rs.image(&alpha).unwrap(), rs);
        }
    }

    #[test]
    fn equivalence_is_an_equivalence_relation() {
        let all: Vec<_> = enumerate_rotation_systems(&k4(), DEFAULT_ROTATION_CAP)
            .unwrap()
            .collect();
        for a in &all {
            assert!(equivalent_embeddings(a, a));
            assert!(equivalent_embeddings(a, &conjugate(a)));
            for b in &all {
                assert_eq!(equivalent_embeddings(a, b), equivalent_embeddings(b, a));
                for c in &all {
                    if equivalent_embeddings(a, b) && equivalent_embeddings(b, c) {
                        assert!(equivalent_embeddings(a, c));
                    }
                }
            }
        }
    }
}
