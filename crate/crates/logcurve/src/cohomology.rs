//! First log-de Rham cohomology of the curve from its dual graph.
//!
//! Degree-1 classes are hypercocycles: a 1-form per component (regular off
//! the nodes) and a scalar per edge, with residues cancelling across every
//! node. Modulo coboundaries, the space is an extension of the kernel of the
//! residue-sum map β (acting on per-component de Rham classes) by the
//! cokernel of the incidence map α, and both sides are computed exactly. A
//! brute-force truncation of the same complex serves as an independent
//! cross-check of the dimension.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::partial::partial_fractions;
use crate::arith::poly::Poly;
use crate::arith::rat::Rat;
use crate::arith::ratfunc::{RatForm, RatFunc};
use crate::arith::residue::residue_at;
use crate::arith::series::{eval_eps, PointOnLine, Uniformizer};
use crate::arith::ArithError;
use crate::graph::{EdgeVector, LogCurveModel, Side};
use crate::linalg::{MatQ, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomError {
    #[error("form not regular on U_{vertex}: {reason}")]
    FormNotRegular { vertex: String, reason: String },
    #[error(
        "cocycle condition violated on edge {edge}: side residues {res_from} and {res_to} do not sum to zero"
    )]
    CocycleViolation {
        edge: String,
        // boxed to keep the error variant (and with it every Result) small
        res_from: Box<Rat>,
        res_to: Box<Rat>,
    },
    #[error("operation needs a concrete component, but {vertex} is virtual")]
    VirtualComponent { vertex: String },
    #[error("component {vertex} is concrete and needs a 1-form, not abstract coordinates")]
    AbstractOnConcrete { vertex: String },
    #[error("class vector for {vertex} has length {got}, expected {expected}")]
    ClassLength {
        vertex: String,
        got: usize,
        expected: usize,
    },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Coordinates of a de Rham class on one component, in the canonical basis:
/// for a concrete component with nodes `p_1..p_n` (input edge order) the
/// basis is `eta_i = dlog(z - p_i) - dlog(z - p_n)`, `i < n`; a virtual
/// component of genus `g` contributes `2g` abstract axes (zero residues)
/// followed by the same sum-zero residue axes, abstractly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormClass {
    pub vertex: usize,
    pub coords: Vec<Rat>,
}

impl FormClass {
    pub fn zero(model: &LogCurveModel, vertex: usize) -> Self {
        FormClass {
            vertex,
            coords: vec![Rat::zero(); h1dr_dim(model, vertex)],
        }
    }

    /// Residues at the component's nodes implied by the coordinates; the
    /// entries always sum to zero.
    pub fn residues(&self, model: &LogCurveModel) -> Vec<Rat> {
        class_residues(model, self.vertex, &self.coords)
    }
}

/// The form datum of a hypercocycle on one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexForm {
    /// An actual rational 1-form (concrete components only).
    Concrete(RatForm),
    /// Canonical-basis coordinates of a class (virtual components only).
    Abstract(Vec<Rat>),
}

/// One degree-1 element of the total complex: a form per component plus a
/// scalar per edge. It represents a cohomology class when the residues
/// cancel across every edge (`cocycle_check`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypercocycle {
    pub forms: Vec<VertexForm>,
    pub edge_scalars: EdgeVector,
}

impl Hypercocycle {
    pub fn zero(model: &LogCurveModel) -> Self {
        let forms = model
            .components()
            .iter()
            .enumerate()
            .map(|(v, c)| {
                if c.is_virtual() {
                    VertexForm::Abstract(vec![Rat::zero(); h1dr_dim(model, v)])
                } else {
                    VertexForm::Concrete(RatForm::zero())
                }
            })
            .collect();
        Hypercocycle {
            forms,
            edge_scalars: vec![Rat::zero(); model.edges().len()],
        }
    }
}

/// A choice of uniformizer unit per node side: the local parameter at node
/// position `j` of component `v` is `unit * (z - p)`. Unset sides use the
/// canonical `z - p`. Cohomology results never depend on this choice — that
/// independence is verified, not assumed.
#[derive(Clone, Debug, Default)]
pub struct UnitAssignment {
    units: HashMap<(usize, usize), RatFunc>,
}

impl UnitAssignment {
    pub fn trivial() -> Self {
        UnitAssignment::default()
    }

    /// Installs a unit for node position `j` of component `v`, validating it
    /// against the node's coordinate.
    pub fn set(
        &mut self,
        model: &LogCurveModel,
        v: usize,
        j: usize,
        unit: RatFunc,
    ) -> Result<(), ArithError> {
        let p = model.node_coord(&model.nodes_of(v)[j]).clone();
        Uniformizer::with_unit(PointOnLine::Finite(p), unit.clone())?;
        self.units.insert((v, j), unit);
        Ok(())
    }

    pub fn uniformizer(&self, model: &LogCurveModel, v: usize, j: usize) -> Uniformizer {
        let p = model.node_coord(&model.nodes_of(v)[j]).clone();
        let point = PointOnLine::Finite(p);
        match self.units.get(&(v, j)) {
            None => Uniformizer::canonical(point),
            Some(u) => Uniformizer::with_unit(point, u.clone()).expect("validated when installed"),
        }
    }
}

/// Dimension of the canonical de Rham space of one component:
/// `2g + max(n - 1, 0)` for `n` incident nodes.
pub fn h1dr_dim(model: &LogCurveModel, v: usize) -> usize {
    let n = model.nodes_of(v).len();
    2 * model.components()[v].genus() as usize + n.saturating_sub(1)
}

/// Block offsets of each component inside the concatenated de Rham
/// coordinate space, plus the total dimension at the end.
pub fn h1dr_offsets(model: &LogCurveModel) -> Vec<usize> {
    let mut out = Vec::with_capacity(model.components().len() + 1);
    let mut acc = 0;
    for v in 0..model.components().len() {
        out.push(acc);
        acc += h1dr_dim(model, v);
    }
    out.push(acc);
    out
}

/// The `i`-th basis form on a concrete component:
/// `dz/(z - p_i) - dz/(z - p_last)`.
pub fn eta_form(model: &LogCurveModel, v: usize, i: usize) -> RatForm {
    assert!(
        !model.components()[v].is_virtual(),
        "eta forms exist only on concrete components"
    );
    let nodes = model.nodes_of(v);
    let n = nodes.len();
    assert!(i + 1 < n, "eta index out of range");
    let p_i = model.node_coord(&nodes[i]);
    let p_n = model.node_coord(&nodes[n - 1]);
    let dlog = |p: &Rat| RatFunc::new(Poly::one(), Poly::z_minus(p)).expect("nonzero");
    RatForm::new(&dlog(p_i) - &dlog(p_n))
}

/// The concrete 1-form with the given canonical-basis coordinates.
pub fn class_to_form(model: &LogCurveModel, v: usize, coords: &[Rat]) -> RatForm {
    let mut acc = RatForm::zero();
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = &acc + &eta_form(model, v, i).scale(c);
    }
    acc
}

/// Residues at the nodes of `v` of the class with the given coordinates
/// (genus axes contribute nothing; residue axis `i` contributes
/// `e_i - e_last`).
pub fn class_residues(model: &LogCurveModel, v: usize, coords: &[Rat]) -> Vec<Rat> {
    let n = model.nodes_of(v).len();
    let g2 = 2 * model.components()[v].genus() as usize;
    let mut out = vec![Rat::zero(); n];
    if n == 0 {
        return out;
    }
    let res_axes = &coords[g2..];
    let mut last = Rat::zero();
    for (i, c) in res_axes.iter().enumerate() {
        out[i] = c.clone();
        last -= c;
    }
    out[n - 1] = last;
    out
}

/// The residue-sum map `β : ⊕_v H¹_dR(U_v) → ⊕_e k`; the entry at edge
/// `e = [v, w]` is the `v`-side residue plus the `w`-side residue.
pub fn beta_matrix(model: &LogCurveModel) -> MatQ {
    let offsets = h1dr_offsets(model);
    let total = *offsets.last().unwrap();
    let mut m = MatQ::zeros(model.edges().len(), total);
    for (v, off) in offsets.iter().enumerate().take(model.components().len()) {
        let dim = h1dr_dim(model, v);
        let nodes = model.nodes_of(v);
        for k in 0..dim {
            let mut unit = vec![Rat::zero(); dim];
            unit[k] = Rat::one();
            let res = class_residues(model, v, &unit);
            for (j, nref) in nodes.iter().enumerate() {
                if res[j].is_zero() {
                    continue;
                }
                let col = off + k;
                let cur = m.at(nref.edge, col) + &res[j];
                m.set(nref.edge, col, cur);
            }
        }
    }
    m
}

/// Dimension of H⁰: locally constant functions matching across nodes — one
/// per connected piece of the graph.
pub fn h0_log(model: &LogCurveModel) -> usize {
    model.connected_components().len()
}

/// Basis of H¹ with the two canonical blocks: edge-vector classes spanning
/// Coker α, then form classes spanning Ker β.
#[derive(Clone, Debug)]
pub struct CohomBasis {
    im_alpha: Subspace,
    ker_beta: Subspace,
    offsets: Vec<usize>,
    /// Edge indices carrying the Coker α coordinates (the non-pivot columns
    /// of the image of α, ascending).
    pub coker_edges: Vec<usize>,
    /// Representatives of the Coker α block: unit edge vectors at
    /// `coker_edges` (each is its own canonical reduction modulo Im α).
    pub coker_alpha_reps: Vec<EdgeVector>,
    /// Representatives of the Ker β block: per-vertex class tuples, from the
    /// canonical (reduced row echelon) kernel basis.
    pub kerbeta_reps: Vec<Vec<FormClass>>,
}

pub fn h1_log_basis(model: &LogCurveModel) -> CohomBasis {
    let n_edges = model.edges().len();
    let im_alpha = model.incidence_alpha().column_space();
    let coker_edges: Vec<usize> = (0..n_edges)
        .filter(|j| !im_alpha.pivots().contains(j))
        .collect();
    let coker_alpha_reps = coker_edges
        .iter()
        .map(|&j| {
            let mut v = vec![Rat::zero(); n_edges];
            v[j] = Rat::one();
            v
        })
        .collect();

    let offsets = h1dr_offsets(model);
    let ker_beta = beta_matrix(model).nullspace();
    let kerbeta_reps = ker_beta
        .basis()
        .iter()
        .map(|vec| {
            (0..model.components().len())
                .map(|v| FormClass {
                    vertex: v,
                    coords: vec[offsets[v]..offsets[v + 1]].to_vec(),
                })
                .collect()
        })
        .collect();

    CohomBasis {
        im_alpha,
        ker_beta,
        offsets,
        coker_edges,
        coker_alpha_reps,
        kerbeta_reps,
    }
}

impl CohomBasis {
    pub fn coker_dim(&self) -> usize {
        self.coker_alpha_reps.len()
    }

    pub fn kerbeta_dim(&self) -> usize {
        self.kerbeta_reps.len()
    }

    pub fn dim(&self) -> usize {
        self.coker_dim() + self.kerbeta_dim()
    }

    /// Basis labels in coordinate order: `coker:<edge id>` then
    /// `kerbeta:<index>`.
    pub fn labels(&self, model: &LogCurveModel) -> Vec<String> {
        let mut out: Vec<String> = self
            .coker_edges
            .iter()
            .map(|&j| format!("coker:{}", model.edges()[j].id))
            .collect();
        out.extend((0..self.kerbeta_dim()).map(|k| format!("kerbeta:{k}")));
        out
    }

    /// A hypercocycle representing basis element `k`: `(0, g)` for the
    /// Coker α block, `(ω, 0)` for the Ker β block.
    pub fn lift(&self, model: &LogCurveModel, k: usize) -> Hypercocycle {
        let mut c = Hypercocycle::zero(model);
        if k < self.coker_dim() {
            c.edge_scalars = self.coker_alpha_reps[k].clone();
            return c;
        }
        let classes = &self.kerbeta_reps[k - self.coker_dim()];
        for (v, class) in classes.iter().enumerate() {
            c.forms[v] = if model.components()[v].is_virtual() {
                VertexForm::Abstract(class.coords.clone())
            } else {
                VertexForm::Concrete(class_to_form(model, v, &class.coords))
            };
        }
        c
    }

    /// Coordinates (full length, Ker β block zero) of the class of an
    /// edge-vector-only element `(0, a)`.
    pub fn edge_class_coords(&self, a: &[Rat]) -> Vec<Rat> {
        let mut out = self.coker_coords(a);
        out.extend(vec![Rat::zero(); self.kerbeta_dim()]);
        out
    }

    /// Coker α coordinates of an edge vector: reduce modulo Im α and read
    /// off the free positions.
    pub fn coker_coords(&self, a: &[Rat]) -> Vec<Rat> {
        let reduced = self.im_alpha.reduce(a);
        self.coker_edges
            .iter()
            .map(|&j| reduced[j].clone())
            .collect()
    }

    /// Coordinates of a concatenated class vector in the Ker β basis;
    /// `None` if it is not actually in the kernel.
    pub fn kerbeta_coords(&self, class_vec: &[Rat]) -> Option<Vec<Rat>> {
        self.ker_beta.coords(class_vec)
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }
}

/// Decomposes a form that is regular on `U_v` (poles only at nodes, regular
/// at infinity) as `d(primitive) + Σ class_i · eta_i`, exactly.
pub fn reduce_form(
    model: &LogCurveModel,
    v: usize,
    omega: &RatForm,
) -> Result<(FormClass, RatFunc), CohomError> {
    let comp = &model.components()[v];
    if comp.is_virtual() {
        return Err(CohomError::VirtualComponent {
            vertex: comp.id.clone(),
        });
    }
    let nodes = model.nodes_of(v);
    let n = nodes.len();
    if omega.is_zero() {
        return Ok((FormClass::zero(model, v), RatFunc::zero()));
    }
    let g = omega.coeff();
    let (dn, dd) = (
        g.num().degree().expect("nonzero") as i64,
        g.den().degree().expect("nonzero") as i64,
    );
    if dn > dd - 2 {
        return Err(CohomError::FormNotRegular {
            vertex: comp.id.clone(),
            reason: "pole at infinity".into(),
        });
    }
    let pf = partial_fractions(g)?;
    debug_assert!(
        pf.polynomial.is_zero(),
        "proper functions have no polynomial part"
    );
    let node_coords: Vec<&Rat> = nodes.iter().map(|nr| model.node_coord(nr)).collect();
    for pp in &pf.poles {
        if !node_coords.contains(&&pp.pole) {
            return Err(CohomError::FormNotRegular {
                vertex: comp.id.clone(),
                reason: format!(
                    "pole at {} which is not a node",
                    crate::arith::rat::rat_to_string(&pp.pole)
                ),
            });
        }
    }

    let mut class = Vec::with_capacity(n.saturating_sub(1));
    for coord in node_coords.iter().take(n.saturating_sub(1)) {
        class.push(pf.residue_coeff(coord));
    }
    debug_assert!(
        n == 0 || {
            let sum: Rat = class.iter().sum();
            pf.residue_coeff(node_coords[n - 1]) == -sum
        },
        "residues of an infinity-regular form sum to zero"
    );

    let mut primitive = RatFunc::zero();
    for pp in &pf.poles {
        for (idx, c) in pp.principal.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            // c/(z-p)^(j+1) integrates to -c/(j (z-p)^j) with j = idx
            let j = idx as i64;
            let den = Poly::z_minus(&pp.pole).pow(idx as u32);
            let coeff = -c / Rat::from_integer(j.into());
            let term = RatFunc::new(Poly::constant(coeff), den).expect("nonzero denominator");
            primitive = &primitive + &term;
        }
    }

    Ok((
        FormClass {
            vertex: v,
            coords: class,
        },
        primitive,
    ))
}

/// Side residue of a hypercocycle at node position `j` of component `v`.
pub(crate) fn side_residue(model: &LogCurveModel, c: &Hypercocycle, v: usize, j: usize) -> Rat {
    match &c.forms[v] {
        VertexForm::Concrete(w) => {
            let p = model.node_coord(&model.nodes_of(v)[j]).clone();
            residue_at(w, &PointOnLine::Finite(p))
        }
        VertexForm::Abstract(coords) => class_residues(model, v, coords)[j].clone(),
    }
}

fn check_shape(model: &LogCurveModel, c: &Hypercocycle) -> Result<(), CohomError> {
    assert_eq!(
        c.forms.len(),
        model.components().len(),
        "one form per component"
    );
    assert_eq!(
        c.edge_scalars.len(),
        model.edges().len(),
        "one scalar per edge"
    );
    for (v, comp) in model.components().iter().enumerate() {
        match (&c.forms[v], comp.is_virtual()) {
            (VertexForm::Concrete(_), true) => {
                return Err(CohomError::VirtualComponent {
                    vertex: comp.id.clone(),
                })
            }
            (VertexForm::Abstract(_), false) => {
                return Err(CohomError::AbstractOnConcrete {
                    vertex: comp.id.clone(),
                })
            }
            (VertexForm::Abstract(coords), true) => {
                let expected = h1dr_dim(model, v);
                if coords.len() != expected {
                    return Err(CohomError::ClassLength {
                        vertex: comp.id.clone(),
                        got: coords.len(),
                        expected,
                    });
                }
            }
            (VertexForm::Concrete(_), false) => {}
        }
    }
    Ok(())
}

/// Verifies the defining condition: for every edge, the two side residues
/// sum to zero.
pub fn cocycle_check(model: &LogCurveModel, c: &Hypercocycle) -> Result<(), CohomError> {
    check_shape(model, c)?;
    for (i, e) in model.edges().iter().enumerate() {
        let jf = model
            .node_position(e.from, i, Side::From)
            .expect("edge side is registered");
        let jt = model
            .node_position(e.to, i, Side::To)
            .expect("edge side is registered");
        let rf = side_residue(model, c, e.from, jf);
        let rt = side_residue(model, c, e.to, jt);
        if !(&rf + &rt).is_zero() {
            return Err(CohomError::CocycleViolation {
                edge: e.id.clone(),
                res_from: Box::new(rf),
                res_to: Box::new(rt),
            });
        }
    }
    Ok(())
}

/// The coboundary of a tuple of functions (one per component, zero on
/// virtual ones): `(df_v, ζ⁰(f))` with
/// `ζ⁰(f)_e = ε_from(f_(A(e))) - ε_to(f_(B(e)))`, where ε takes the constant
/// Laurent coefficient in the assigned uniformizer.
pub fn coboundary(
    model: &LogCurveModel,
    funcs: &[RatFunc],
    units: &UnitAssignment,
) -> Result<Hypercocycle, CohomError> {
    assert_eq!(
        funcs.len(),
        model.components().len(),
        "one function per component"
    );
    let mut c = Hypercocycle::zero(model);
    for (v, comp) in model.components().iter().enumerate() {
        if comp.is_virtual() {
            if !funcs[v].is_zero() {
                return Err(CohomError::VirtualComponent {
                    vertex: comp.id.clone(),
                });
            }
            continue;
        }
        c.forms[v] = VertexForm::Concrete(RatForm::d(&funcs[v]));
    }
    for (i, e) in model.edges().iter().enumerate() {
        let mut val = Rat::zero();
        for (v, side, sign) in [(e.from, Side::From, 1), (e.to, Side::To, -1)] {
            if model.components()[v].is_virtual() || funcs[v].is_zero() {
                continue;
            }
            let j = model
                .node_position(v, i, side)
                .expect("edge side is registered");
            let eps = eval_eps(&funcs[v], &units.uniformizer(model, v, j));
            if sign > 0 {
                val += eps;
            } else {
                val -= eps;
            }
        }
        c.edge_scalars[i] = val;
    }
    Ok(c)
}

/// Coordinates of the class of a hypercocycle in the given basis
/// (Coker α block first, then Ker β block). Subtracts the coboundary of the
/// per-component primitives using `units` for the ε evaluations, then reads
/// coordinates off the canonical subspaces.
pub fn normalize_cocycle(
    model: &LogCurveModel,
    basis: &CohomBasis,
    c: &Hypercocycle,
    units: &UnitAssignment,
) -> Result<Vec<Rat>, CohomError> {
    cocycle_check(model, c)?;

    let total = *basis.offsets().last().unwrap();
    let mut class_vec = vec![Rat::zero(); total];
    let mut primitives: Vec<RatFunc> = vec![RatFunc::zero(); model.components().len()];
    for v in 0..model.components().len() {
        match &c.forms[v] {
            VertexForm::Concrete(w) => {
                let (class, primitive) = reduce_form(model, v, w)?;
                for (k, x) in class.coords.into_iter().enumerate() {
                    class_vec[basis.offsets()[v] + k] = x;
                }
                primitives[v] = primitive;
            }
            VertexForm::Abstract(coords) => {
                for (k, x) in coords.iter().enumerate() {
                    class_vec[basis.offsets()[v] + k] = x.clone();
                }
            }
        }
    }

    let mut f = c.edge_scalars.clone();
    for (i, e) in model.edges().iter().enumerate() {
        for (v, side, sign) in [(e.from, Side::From, 1), (e.to, Side::To, -1)] {
            if primitives[v].is_zero() {
                continue;
            }
            let j = model
                .node_position(v, i, side)
                .expect("edge side is registered");
            let eps = eval_eps(&primitives[v], &units.uniformizer(model, v, j));
            // subtract the coboundary contribution
            if sign > 0 {
                f[i] -= eps;
            } else {
                f[i] += eps;
            }
        }
    }

    let kerbeta = basis
        .kerbeta_coords(&class_vec)
        .expect("a cocycle's class vector lies in ker beta");
    let mut out = basis.coker_coords(&f);
    out.extend(kerbeta);
    Ok(out)
}

/// Independent dimension count for H¹: truncates every function space to
/// pole order ≤ D at the nodes (and every form space to pole order ≤ D+1,
/// regular at infinity), assembles the two total-complex differentials
/// entrywise from ε and residue evaluations, and applies rank–nullity.
/// Virtual components admit no such truncation and are rejected.
pub fn h1_truncated_oracle(model: &LogCurveModel, d: usize) -> Result<usize, CohomError> {
    assert!(d >= 1, "truncation depth must be at least 1");
    for comp in model.components() {
        if comp.is_virtual() {
            return Err(CohomError::VirtualComponent {
                vertex: comp.id.clone(),
            });
        }
    }

    // Per-component bases of the truncated complex.
    let mut funcs: Vec<Vec<RatFunc>> = Vec::new(); // C⁰ blocks
    let mut forms: Vec<Vec<RatForm>> = Vec::new(); // form part of C¹ blocks
    for v in 0..model.components().len() {
        let nodes = model.nodes_of(v);
        let n = nodes.len();
        let mut fv = vec![RatFunc::one()];
        let mut wv = Vec::new();
        for nref in nodes {
            let p = model.node_coord(nref);
            for j in 1..=d {
                let den = Poly::z_minus(p).pow(j as u32);
                fv.push(RatFunc::new(Poly::one(), den.clone()).expect("nonzero"));
            }
            for j in 2..=d + 1 {
                let den = Poly::z_minus(p).pow(j as u32);
                wv.push(RatForm::new(
                    RatFunc::new(Poly::one(), den).expect("nonzero"),
                ));
            }
        }
        for i in 0..n.saturating_sub(1) {
            wv.push(eta_form(model, v, i));
        }
        funcs.push(fv);
        forms.push(wv);
    }

    let func_offsets: Vec<usize> = {
        let mut acc = 0;
        let mut out = Vec::new();
        for fv in &funcs {
            out.push(acc);
            acc += fv.len();
        }
        out.push(acc);
        out
    };
    let form_offsets: Vec<usize> = {
        let mut acc = 0;
        let mut out = Vec::new();
        for wv in &forms {
            out.push(acc);
            acc += wv.len();
        }
        out.push(acc);
        out
    };
    let n_edges = model.edges().len();
    let dim_c0 = *func_offsets.last().unwrap();
    let dim_forms = *form_offsets.last().unwrap();
    let dim_c1 = dim_forms + n_edges;

    // D⁰ : C⁰ → C¹, f ↦ (df, ζ⁰(f)), assembled column by column.
    let mut d0 = MatQ::zeros(dim_c1, dim_c0);
    for (v, fv) in funcs.iter().enumerate() {
        for (k, f) in fv.iter().enumerate() {
            let col = func_offsets[v] + k;
            let df = RatForm::d(f);
            if !df.is_zero() {
                // df of a basis function is a multiple of a basis form
                let pos = forms[v]
                    .iter()
                    .position(|w| {
                        !w.coeff().is_zero()
                            && (df.coeff().checked_div(w.coeff()))
                                .is_ok_and(|q| q.is_polynomial() && q.num().degree() == Some(0))
                    })
                    .expect("derivative stays in the truncated form space");
                let ratio = df
                    .coeff()
                    .checked_div(forms[v][pos].coeff())
                    .expect("nonzero");
                d0.set(form_offsets[v] + pos, col, ratio.num().coeff(0));
            }
            for (i, e) in model.edges().iter().enumerate() {
                let mut val = Rat::zero();
                for (w, side, sign) in [(e.from, Side::From, 1), (e.to, Side::To, -1)] {
                    if w != v {
                        continue;
                    }
                    let j = model.node_position(w, i, side).expect("registered");
                    let uni = Uniformizer::canonical(PointOnLine::Finite(
                        model.node_coord(&model.nodes_of(w)[j]).clone(),
                    ));
                    let eps = eval_eps(f, &uni);
                    if sign > 0 {
                        val += eps;
                    } else {
                        val -= eps;
                    }
                }
                if !val.is_zero() {
                    d0.set(dim_forms + i, col, val);
                }
            }
        }
    }

    // D¹ : C¹ → C², (ω, f) ↦ residue sums over the edges.
    let mut d1 = MatQ::zeros(n_edges, dim_c1);
    for (v, wv) in forms.iter().enumerate() {
        for (k, w) in wv.iter().enumerate() {
            let col = form_offsets[v] + k;
            for nref in model.nodes_of(v) {
                let p = model.node_coord(nref).clone();
                let r = residue_at(w, &PointOnLine::Finite(p));
                if !r.is_zero() {
                    let cur = d1.at(nref.edge, col) + &r;
                    d1.set(nref.edge, col, cur);
                }
            }
        }
    }

    debug_assert!(
        d1.mul(&d0).is_zero(),
        "the truncated complex must square to zero"
    );
    let h1 = (dim_c1 - d1.rank()) - d0.rank();
    Ok(h1)
}
