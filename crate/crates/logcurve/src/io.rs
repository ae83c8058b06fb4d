//! JSON interchange for curve models and hypercocycles.
//!
//! The on-disk format keeps every rational as a string (`"-3/2"`), rejects
//! unknown keys, and is byte-deterministic on output: maps are ordered,
//! pretty-printing is fixed, and nothing depends on the environment.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::parse::parse_form;
use crate::arith::rat::{parse_rat, rat_to_string, Rat};
use crate::arith::ArithError;
use crate::cohomology::{h1dr_dim, Hypercocycle, VertexForm};
use crate::graph::{Component, LogCurveModel, ModelError, NamedEdge};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational {value:?} in {field}: {message}")]
    BadRational {
        field: String,
        value: String,
        message: String,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("cocycle refers to unknown component {0:?}")]
    UnknownComponent(String),
    #[error("cocycle refers to unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("component {component}: {message}")]
    FormKind { component: String, message: String },
    #[error("class vector for {component} has length {got}, expected {expected}")]
    ClassLength {
        component: String,
        got: usize,
        expected: usize,
    },
}

/// On-disk description of a curve: components, edges, and optionally some
/// hypercocycles to analyze.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpecFile {
    pub components: Vec<ComponentSpec>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cocycles: Vec<CocycleSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub id: String,
    #[serde(default)]
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub from: String,
    pub to: String,
    pub coord_from: String,
    pub coord_to: String,
}

/// A hypercocycle, keyed by component and edge ids; omitted entries are
/// zero. A concrete component's form is an expression string (the
/// coefficient of dz); a virtual component's entry lists its abstract class
/// coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleSpec {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, FormSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub edge_scalars: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormSpec {
    Expr(String),
    Class(Vec<String>),
}

pub fn parse_spec(json: &str) -> Result<CurveSpecFile, IoError> {
    Ok(serde_json::from_str(json)?)
}

/// Pretty JSON with a trailing newline; identical bytes for identical data.
pub fn to_json_string(spec: &CurveSpecFile) -> String {
    let mut s = serde_json::to_string_pretty(spec).expect("spec types always serialize");
    s.push('\n');
    s
}

fn parse_rat_field(field: &str, value: &str) -> Result<Rat, IoError> {
    parse_rat(value).map_err(|message| IoError::BadRational {
        field: field.to_owned(),
        value: value.to_owned(),
        message,
    })
}

pub fn spec_to_model(spec: &CurveSpecFile) -> Result<LogCurveModel, IoError> {
    let components = spec
        .components
        .iter()
        .map(|c| {
            if c.genus > 0 {
                Component::virtual_of_genus(&c.id, c.genus)
            } else {
                Component::concrete(&c.id)
            }
        })
        .collect();
    let mut edges = Vec::with_capacity(spec.edges.len());
    for e in &spec.edges {
        edges.push(NamedEdge {
            id: e.id.clone(),
            from: e.from.clone(),
            to: e.to.clone(),
            coord_from: parse_rat_field(&format!("edge {} coord_from", e.id), &e.coord_from)?,
            coord_to: parse_rat_field(&format!("edge {} coord_to", e.id), &e.coord_to)?,
        });
    }
    Ok(LogCurveModel::new(components, edges)?)
}

pub fn model_to_spec(model: &LogCurveModel) -> CurveSpecFile {
    CurveSpecFile {
        components: model
            .components()
            .iter()
            .map(|c| ComponentSpec {
                id: c.id.clone(),
                genus: c.genus(),
            })
            .collect(),
        edges: model
            .edges()
            .iter()
            .map(|e| EdgeSpec {
                id: e.id.clone(),
                from: model.components()[e.from].id.clone(),
                to: model.components()[e.to].id.clone(),
                coord_from: rat_to_string(&e.coord_from),
                coord_to: rat_to_string(&e.coord_to),
            })
            .collect(),
        cocycles: Vec::new(),
    }
}

pub fn cocycle_from_spec(
    model: &LogCurveModel,
    spec: &CocycleSpec,
) -> Result<Hypercocycle, IoError> {
    let mut c = Hypercocycle::zero(model);
    for (id, form) in &spec.forms {
        let v = model
            .component_index(id)
            .ok_or_else(|| IoError::UnknownComponent(id.clone()))?;
        let comp = &model.components()[v];
        match (form, comp.is_virtual()) {
            (FormSpec::Expr(src), false) => {
                c.forms[v] = VertexForm::Concrete(parse_form(src)?);
            }
            (FormSpec::Class(coords), true) => {
                let expected = h1dr_dim(model, v);
                if coords.len() != expected {
                    return Err(IoError::ClassLength {
                        component: id.clone(),
                        got: coords.len(),
                        expected,
                    });
                }
                let parsed = coords
                    .iter()
                    .enumerate()
                    .map(|(k, s)| parse_rat_field(&format!("class {id}[{k}]"), s))
                    .collect::<Result<Vec<_>, _>>()?;
                c.forms[v] = VertexForm::Abstract(parsed);
            }
            (FormSpec::Expr(_), true) => {
                return Err(IoError::FormKind {
                    component: id.clone(),
                    message: "virtual components take class coordinates, not an expression".into(),
                });
            }
            (FormSpec::Class(_), false) => {
                return Err(IoError::FormKind {
                    component: id.clone(),
                    message: "concrete components take a form expression, not class coordinates"
                        .into(),
                });
            }
        }
    }
    for (id, value) in &spec.edge_scalars {
        let i = model
            .edge_index(id)
            .ok_or_else(|| IoError::UnknownEdge(id.clone()))?;
        c.edge_scalars[i] = parse_rat_field(&format!("edge scalar {id}"), value)?;
    }
    Ok(c)
}

pub fn cocycle_to_spec(model: &LogCurveModel, c: &Hypercocycle) -> CocycleSpec {
    let mut forms = BTreeMap::new();
    for (v, form) in c.forms.iter().enumerate() {
        let id = model.components()[v].id.clone();
        match form {
            VertexForm::Concrete(w) => {
                if !w.is_zero() {
                    forms.insert(id, FormSpec::Expr(format!("{}", w.coeff())));
                }
            }
            VertexForm::Abstract(coords) => {
                if coords.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                    forms.insert(
                        id,
                        FormSpec::Class(coords.iter().map(rat_to_string).collect()),
                    );
                }
            }
        }
    }
    let mut edge_scalars = BTreeMap::new();
    for (i, x) in c.edge_scalars.iter().enumerate() {
        if !num_traits::Zero::is_zero(x) {
            edge_scalars.insert(model.edges()[i].id.clone(), rat_to_string(x));
        }
    }
    CocycleSpec {
        forms,
        edge_scalars,
    }
}
