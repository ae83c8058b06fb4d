//! Built-in example families of dual graphs, all deterministic: chains
//! (trees), cycles, banana graphs (two vertices joined by parallel edges),
//! the theta graph, and seeded random connected multigraphs.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::rat::{rat_int, Rat};
use crate::graph::{Component, LogCurveModel, NamedEdge};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("a connected graph on {vertices} vertices needs at least {} edges, got {edges}", vertices.saturating_sub(1))]
    TooFewEdges { vertices: usize, edges: usize },
    #[error("family parameter out of range: {0}")]
    BadParameter(String),
}

fn vertex_ids(n: usize) -> Vec<Component> {
    (1..=n)
        .map(|i| Component::concrete(format!("v{i}")))
        .collect()
}

fn edge(id: usize, from: usize, to: usize, cf: Rat, ct: Rat) -> NamedEdge {
    NamedEdge {
        id: format!("e{id}"),
        from: format!("v{from}"),
        to: format!("v{to}"),
        coord_from: cf,
        coord_to: ct,
    }
}

/// Path on `n` vertices — a tree, so every degree-1 group vanishes.
pub fn chain(n: usize) -> Result<LogCurveModel, FamilyError> {
    if n == 0 {
        return Err(FamilyError::BadParameter("chain needs n >= 1".into()));
    }
    let edges = (1..n)
        .map(|i| edge(i, i, i + 1, rat_int(1), rat_int(0)))
        .collect();
    Ok(LogCurveModel::new(vertex_ids(n), edges).expect("chain is always valid"))
}

/// Cycle on `n >= 2` vertices: edge `e_i` joins `v_i` (at coordinate 0) to
/// `v_(i mod n + 1)` (at coordinate 1).
pub fn cycle(n: usize) -> Result<LogCurveModel, FamilyError> {
    if n < 2 {
        return Err(FamilyError::BadParameter("cycle needs n >= 2".into()));
    }
    let edges = (1..=n)
        .map(|i| edge(i, i, i % n + 1, rat_int(0), rat_int(1)))
        .collect();
    Ok(LogCurveModel::new(vertex_ids(n), edges).expect("cycle is always valid"))
}

/// Two vertices joined by `m >= 1` parallel edges; edge `e_k` sits at
/// coordinate `k - 1` on both sides.
pub fn banana(m: usize) -> Result<LogCurveModel, FamilyError> {
    if m == 0 {
        return Err(FamilyError::BadParameter("banana needs m >= 1".into()));
    }
    let components = vec![Component::concrete("v"), Component::concrete("w")];
    let edges = (1..=m)
        .map(|k| NamedEdge {
            id: format!("e{k}"),
            from: "v".into(),
            to: "w".into(),
            coord_from: rat_int(k as i64 - 1),
            coord_to: rat_int(k as i64 - 1),
        })
        .collect();
    Ok(LogCurveModel::new(components, edges).expect("banana is always valid"))
}

/// The theta graph: banana with three edges.
pub fn theta() -> LogCurveModel {
    banana(3).expect("3 >= 1")
}

/// Seeded random connected loop-free multigraph: a random spanning tree plus
/// extra random non-loop edges. Node coordinates on each component are
/// consecutive small integers in edge order, hence distinct. Identical
/// parameters always produce the identical model.
pub fn random(vertices: usize, edges: usize, seed: u64) -> Result<LogCurveModel, FamilyError> {
    if vertices == 0 {
        return Err(FamilyError::BadParameter("random needs V >= 1".into()));
    }
    if edges + 1 < vertices {
        return Err(FamilyError::TooFewEdges { vertices, edges });
    }
    if vertices == 1 && edges > 0 {
        return Err(FamilyError::BadParameter(
            "a single vertex admits no loop-free edges".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(edges);
    for v in 2..=vertices {
        pairs.push((rng.gen_range(1..v), v));
    }
    while pairs.len() < edges {
        let a = rng.gen_range(1..=vertices);
        let b = rng.gen_range(1..=vertices);
        if a != b {
            pairs.push((a, b));
        }
    }
    let mut next_coord = vec![0i64; vertices + 1];
    let mut coord = |v: usize| {
        let c = next_coord[v];
        next_coord[v] += 1;
        rat_int(c)
    };
    let edges = pairs
        .into_iter()
        .enumerate()
        .map(|(i, (a, b))| {
            let cf = coord(a);
            let ct = coord(b);
            edge(i + 1, a, b, cf, ct)
        })
        .collect();
    Ok(LogCurveModel::new(vertex_ids(vertices), edges).expect("constructed loop-free"))
}
