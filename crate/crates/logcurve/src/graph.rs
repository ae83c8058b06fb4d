//! The dual graph of a nodal curve: components as vertices, nodes as
//! oriented edges, with the rational coordinate of each node recorded on both
//! incident components. Includes the graph-side linear algebra (incidence
//! map, flow-conservation space) and the intersection lemma check.

use std::collections::HashMap;

use thiserror::Error;

use crate::arith::rat::{rat_to_string, Rat};
use crate::linalg::{MatQ, Subspace};

/// Rational vector indexed by the edges (in input order).
pub type EdgeVector = Vec<Rat>;
/// Rational vector indexed by the components (in input order).
pub type VertexVector = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    /// A rational component with an explicit coordinate chart; every node on
    /// it sits at a finite rational coordinate.
    Concrete,
    /// A positive-genus component tracked only through its cohomology
    /// dimensions; it carries no function-field data.
    Virtual { genus: u32 },
}

#[derive(Clone, Debug)]
pub struct Component {
    pub id: String,
    pub kind: ComponentKind,
}

impl Component {
    pub fn concrete(id: impl Into<String>) -> Self {
        Component {
            id: id.into(),
            kind: ComponentKind::Concrete,
        }
    }

    pub fn virtual_of_genus(id: impl Into<String>, genus: u32) -> Self {
        Component {
            id: id.into(),
            kind: ComponentKind::Virtual { genus },
        }
    }

    pub fn genus(&self) -> u32 {
        match self.kind {
            ComponentKind::Concrete => 0,
            ComponentKind::Virtual { genus } => genus,
        }
    }

    pub fn is_virtual(&self) -> bool {
        matches!(self.kind, ComponentKind::Virtual { .. })
    }
}

/// An edge of the dual graph — a node of the curve. The orientation
/// (`from` = A(e), `to` = B(e)) is arbitrary and, as verified elsewhere,
/// nothing downstream depends on it.
#[derive(Clone, Debug)]
pub struct Edge {
    pub id: String,
    pub from: usize,
    pub to: usize,
    /// Coordinate of the node on the `from` component (placeholder if that
    /// component is virtual).
    pub coord_from: Rat,
    /// Coordinate of the node on the `to` component.
    pub coord_to: Rat,
}

/// An edge as named in input files, before component ids are resolved.
#[derive(Clone, Debug)]
pub struct NamedEdge {
    pub id: String,
    pub from: String,
    pub to: String,
    pub coord_from: Rat,
    pub coord_to: Rat,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    From,
    To,
}

/// One node as seen from a particular component: the incident edge and which
/// end of it this component is.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct NodeRef {
    pub edge: usize,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("loop edge {edge}: both endpoints are component {component}")]
    LoopEdge { edge: String, component: String },
    #[error("duplicate node coordinate {coord} on component {component}")]
    DuplicateCoordinate { component: String, coord: String },
    #[error("edge {edge} references unknown component {component}")]
    DanglingEndpoint { edge: String, component: String },
    #[error("duplicate component id {0}")]
    DuplicateComponentId(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(String),
    #[error("unknown edge id {0}")]
    UnknownEdge(String),
}

#[derive(Clone, Debug)]
pub struct LogCurveModel {
    components: Vec<Component>,
    edges: Vec<Edge>,
    /// incident edge-sides per component, in input edge order
    nodes: Vec<Vec<NodeRef>>,
}

impl LogCurveModel {
    pub fn new(components: Vec<Component>, edges: Vec<NamedEdge>) -> Result<Self, ModelError> {
        let mut index = HashMap::new();
        for (i, c) in components.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(ModelError::DuplicateComponentId(c.id.clone()));
            }
        }
        let resolve = |edge: &str, name: &str| {
            index
                .get(name)
                .copied()
                .ok_or(ModelError::DanglingEndpoint {
                    edge: edge.to_owned(),
                    component: name.to_owned(),
                })
        };
        let edges = edges
            .into_iter()
            .map(|e| {
                Ok(Edge {
                    from: resolve(&e.id, &e.from)?,
                    to: resolve(&e.id, &e.to)?,
                    id: e.id,
                    coord_from: e.coord_from,
                    coord_to: e.coord_to,
                })
            })
            .collect::<Result<Vec<_>, ModelError>>()?;
        Self::from_resolved(components, edges)
    }

    fn from_resolved(components: Vec<Component>, edges: Vec<Edge>) -> Result<Self, ModelError> {
        let mut seen_edge_ids = HashMap::new();
        for e in &edges {
            if seen_edge_ids.insert(e.id.clone(), ()).is_some() {
                return Err(ModelError::DuplicateEdgeId(e.id.clone()));
            }
            if e.from == e.to {
                return Err(ModelError::LoopEdge {
                    edge: e.id.clone(),
                    component: components[e.from].id.clone(),
                });
            }
        }
        let mut nodes = vec![Vec::new(); components.len()];
        for (i, e) in edges.iter().enumerate() {
            nodes[e.from].push(NodeRef {
                edge: i,
                side: Side::From,
            });
            nodes[e.to].push(NodeRef {
                edge: i,
                side: Side::To,
            });
        }
        let model = LogCurveModel {
            components,
            edges,
            nodes,
        };
        for (v, c) in model.components.iter().enumerate() {
            if c.is_virtual() {
                continue;
            }
            let coords: Vec<&Rat> = model.nodes[v].iter().map(|n| model.node_coord(n)).collect();
            for (i, a) in coords.iter().enumerate() {
                if coords[..i].contains(a) {
                    return Err(ModelError::DuplicateCoordinate {
                        component: c.id.clone(),
                        coord: rat_to_string(a),
                    });
                }
            }
        }
        Ok(model)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Incident edge-sides of a component, in input edge order. These are the
    /// nodes on it; their order fixes the canonical cohomology bases.
    pub fn nodes_of(&self, v: usize) -> &[NodeRef] {
        &self.nodes[v]
    }

    /// Position of a given edge-side in `nodes_of(v)`, i.e. which of `v`'s
    /// nodes that side is.
    pub fn node_position(&self, v: usize, edge: usize, side: Side) -> Option<usize> {
        self.nodes[v]
            .iter()
            .position(|n| n.edge == edge && n.side == side)
    }

    pub fn node_coord(&self, n: &NodeRef) -> &Rat {
        let e = &self.edges[n.edge];
        match n.side {
            Side::From => &e.coord_from,
            Side::To => &e.coord_to,
        }
    }

    pub fn component_index(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Partition of the component indices into connected pieces of the graph,
    /// each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.components.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for nref in &self.nodes[v] {
                    let e = &self.edges[nref.edge];
                    let other = if e.from == v { e.to } else { e.from };
                    if comp[other] == usize::MAX {
                        comp[other] = count;
                        stack.push(other);
                    }
                }
            }
            count += 1;
        }
        let mut parts = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            parts[c].push(v);
        }
        parts
    }

    /// First Betti number of the graph: |E| - |V| + #components.
    pub fn betti1(&self) -> usize {
        self.edges.len() + self.connected_components().len() - self.components.len()
    }

    /// The incidence map on constants: edge row `e = [v, w]` has +1 in
    /// column `v` and -1 in column `w`.
    pub fn incidence_alpha(&self) -> MatQ {
        let mut m = MatQ::zeros(self.edges.len(), self.components.len());
        for (i, e) in self.edges.iter().enumerate() {
            m.set(i, e.from, Rat::from_integer(1.into()));
            m.set(i, e.to, Rat::from_integer((-1).into()));
        }
        m
    }

    /// Edge vectors whose signed sums vanish at every vertex (outgoing minus
    /// incoming): the kernel of the transpose of the incidence map.
    pub fn flow_space(&self) -> Subspace {
        self.incidence_alpha().transpose().nullspace()
    }

    /// Checks, on each connected piece, that the image of the incidence map
    /// meets the flow-conservation space only in zero, by exact ranks:
    /// dim(Im) + dim(flow) must equal dim(Im + flow).
    pub fn lemma_intersection_check(&self) -> bool {
        for part in self.connected_components() {
            let edge_ids: Vec<usize> = (0..self.edges.len())
                .filter(|&i| part.contains(&self.edges[i].from))
                .collect();
            let alpha = self.incidence_alpha();
            let rows: Vec<Vec<Rat>> = edge_ids
                .iter()
                .map(|&i| part.iter().map(|&v| alpha.at(i, v).clone()).collect())
                .collect();
            if rows.is_empty() {
                continue;
            }
            let sub = MatQ::from_rows(rows);
            let image = sub.column_space();
            let flow = sub.transpose().nullspace();
            let mut spanning = image.basis().to_vec();
            spanning.extend(flow.basis().to_vec());
            let sum = Subspace::from_spanning(edge_ids.len(), spanning);
            if sum.dim() != image.dim() + flow.dim() {
                return false;
            }
        }
        true
    }

    /// A copy of the model with one edge reversed (endpoints and side
    /// coordinates swapped).
    pub fn flip_orientation(&self, edge_id: &str) -> Result<LogCurveModel, ModelError> {
        let i = self
            .edge_index(edge_id)
            .ok_or_else(|| ModelError::UnknownEdge(edge_id.to_owned()))?;
        let mut edges = self.edges.clone();
        let e = &mut edges[i];
        std::mem::swap(&mut e.from, &mut e.to);
        std::mem::swap(&mut e.coord_from, &mut e.coord_to);
        Self::from_resolved(self.components.clone(), edges)
    }
}
