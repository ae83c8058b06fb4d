//! The monodromy operator on H¹, the Du Bois space, the comparison map
//! between them, and the structural checks tying the three together.
//!
//! The operator Ñ sends a hypercocycle `((ω_v), (f_e))` to the class of
//! `(0, a)` where `a_e` is the residue of the form on the start component of
//! `e` at that edge's node. In the canonical basis it is strictly block
//! triangular (form classes land in edge classes, edge classes die), so
//! Ñ² = 0, and its kernel is exactly the image of the Du Bois space — the
//! invariant-cycles sequence. All of this is verified by exact rank
//! computations, never assumed.

use num_traits::{One, Zero};

use crate::arith::rat::Rat;
use crate::arith::residue::residue_in;
use crate::cohomology::{
    class_residues, cocycle_check, normalize_cocycle, side_residue, CohomBasis, CohomError,
    Hypercocycle, UnitAssignment, VertexForm,
};
use crate::graph::{EdgeVector, LogCurveModel, ModelError, Side};
use crate::linalg::MatQ;

/// A square operator on H¹ coordinates, with the basis labels that give the
/// coordinates meaning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub matrix: MatQ,
    pub labels: Vec<String>,
}

/// The Du Bois degree-1 space: the edge-cycle block (cokernel of the
/// incidence map) plus two abstract axes per unit of genus.
#[derive(Clone, Debug)]
pub struct DuBoisSpace {
    pub dim: usize,
    /// Edge indices carrying the cokernel coordinates.
    pub coker_edges: Vec<usize>,
    /// Unit edge vectors representing the cokernel block.
    pub coker_part: Vec<EdgeVector>,
    /// One entry per genus axis: (component index, axis index in `0..2g`).
    pub genus_part: Vec<(usize, usize)>,
}

impl DuBoisSpace {
    /// Basis labels in coordinate order: `coker:<edge id>` then
    /// `genus:<component id>:<axis>`.
    pub fn labels(&self, model: &LogCurveModel) -> Vec<String> {
        let mut out: Vec<String> = self
            .coker_edges
            .iter()
            .map(|&j| format!("coker:{}", model.edges()[j].id))
            .collect();
        out.extend(
            self.genus_part
                .iter()
                .map(|&(v, j)| format!("genus:{}:{}", model.components()[v].id, j)),
        );
        out
    }
}

/// The edge vector underlying Ñ: entry `e` is the residue of the form on
/// the start component of `e` at that edge's node (canonical uniformizer).
pub fn monodromy_edge_vector(
    model: &LogCurveModel,
    c: &Hypercocycle,
) -> Result<EdgeVector, CohomError> {
    cocycle_check(model, c)?;
    let mut a = Vec::with_capacity(model.edges().len());
    for (i, e) in model.edges().iter().enumerate() {
        let j = model
            .node_position(e.from, i, Side::From)
            .expect("edge side is registered");
        a.push(side_residue(model, c, e.from, j));
    }
    Ok(a)
}

/// Same edge vector, but every concrete residue is computed in the assigned
/// local parameter instead of the canonical one. Residues do not depend on
/// that choice, so this must coincide with `monodromy_edge_vector`; the
/// verification suite checks exactly that.
pub fn monodromy_edge_vector_in_units(
    model: &LogCurveModel,
    c: &Hypercocycle,
    units: &UnitAssignment,
) -> Result<EdgeVector, CohomError> {
    cocycle_check(model, c)?;
    let mut a = Vec::with_capacity(model.edges().len());
    for (i, e) in model.edges().iter().enumerate() {
        let j = model
            .node_position(e.from, i, Side::From)
            .expect("edge side is registered");
        let r = match &c.forms[e.from] {
            VertexForm::Concrete(w) => residue_in(w, &units.uniformizer(model, e.from, j)),
            VertexForm::Abstract(coords) => class_residues(model, e.from, coords)[j].clone(),
        };
        a.push(r);
    }
    Ok(a)
}

/// Coordinates of Ñ applied to the class of `c`, in the given basis.
pub fn monodromy_apply(
    model: &LogCurveModel,
    basis: &CohomBasis,
    c: &Hypercocycle,
) -> Result<Vec<Rat>, CohomError> {
    let a = monodromy_edge_vector(model, c)?;
    Ok(basis.edge_class_coords(&a))
}

/// The matrix of Ñ in the canonical basis, assembled column by column from
/// the basis lifts.
pub fn monodromy_matrix(model: &LogCurveModel) -> Operator {
    let basis = crate::cohomology::h1_log_basis(model);
    let matrix = monodromy_matrix_in_basis(model, &basis);
    Operator {
        matrix,
        labels: basis.labels(model),
    }
}

pub fn monodromy_matrix_in_basis(model: &LogCurveModel, basis: &CohomBasis) -> MatQ {
    let cols: Vec<Vec<Rat>> = (0..basis.dim())
        .map(|k| {
            monodromy_apply(model, basis, &basis.lift(model, k))
                .expect("basis lifts satisfy the cocycle condition")
        })
        .collect();
    MatQ::from_cols(basis.dim(), cols)
}

/// Recomputes Ñ along the unit-dependent code path: residues in the
/// assigned local parameters, classes extracted by the full cocycle
/// normalization under those units. The result must be identical to
/// `monodromy_matrix` for every admissible assignment.
pub fn monodromy_matrix_with_units(
    model: &LogCurveModel,
    basis: &CohomBasis,
    units: &UnitAssignment,
) -> Result<MatQ, CohomError> {
    let mut cols = Vec::with_capacity(basis.dim());
    for k in 0..basis.dim() {
        let a = monodromy_edge_vector_in_units(model, &basis.lift(model, k), units)?;
        let mut image = Hypercocycle::zero(model);
        image.edge_scalars = a;
        cols.push(normalize_cocycle(model, basis, &image, units)?);
    }
    Ok(MatQ::from_cols(basis.dim(), cols))
}

/// The Du Bois degree-1 space of the model.
pub fn dubois_h1(model: &LogCurveModel) -> DuBoisSpace {
    let n_edges = model.edges().len();
    let im_alpha = model.incidence_alpha().column_space();
    let coker_edges: Vec<usize> = (0..n_edges)
        .filter(|j| !im_alpha.pivots().contains(j))
        .collect();
    let coker_part: Vec<EdgeVector> = coker_edges
        .iter()
        .map(|&j| {
            let mut v = vec![Rat::zero(); n_edges];
            v[j] = Rat::one();
            v
        })
        .collect();
    let mut genus_part = Vec::new();
    for (v, comp) in model.components().iter().enumerate() {
        for j in 0..2 * comp.genus() as usize {
            genus_part.push((v, j));
        }
    }
    DuBoisSpace {
        dim: coker_part.len() + genus_part.len(),
        coker_edges,
        coker_part,
        genus_part,
    }
}

/// The comparison map sp : H¹_DB → H¹ as a matrix (H¹ coordinates by Du
/// Bois coordinates). Cokernel representatives map to their edge-vector
/// classes; genus axes map to the zero-residue form classes they name.
pub fn sp_matrix(model: &LogCurveModel, basis: &CohomBasis) -> MatQ {
    let db = dubois_h1(model);
    let total = *basis.offsets().last().unwrap();
    let mut cols = Vec::with_capacity(db.dim);
    for rep in &db.coker_part {
        cols.push(basis.edge_class_coords(rep));
    }
    for &(v, j) in &db.genus_part {
        let mut class_vec = vec![Rat::zero(); total];
        class_vec[basis.offsets()[v] + j] = Rat::one();
        let kerbeta = basis
            .kerbeta_coords(&class_vec)
            .expect("genus axes have zero residues, hence lie in ker beta");
        let mut col = vec![Rat::zero(); basis.coker_dim()];
        col.extend(kerbeta);
        cols.push(col);
    }
    MatQ::from_cols(basis.dim(), cols)
}

/// Outcome of the invariant-cycles verification, with the exact dimensions
/// behind each verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCyclesReport {
    pub dim_h1_log: usize,
    pub dim_h1_db: usize,
    pub betti1: usize,
    pub rank_monodromy: usize,
    pub dim_ker_monodromy: usize,
    pub sp_injective: bool,
    pub composite_zero: bool,
    pub kernel_equals_image: bool,
    pub pass: bool,
}

/// Verifies, by exact rank computations, that sp is injective, that
/// Ñ ∘ sp = 0, and that ker Ñ equals the image of sp as subspaces.
pub fn verify_invariant_cycles(model: &LogCurveModel) -> InvariantCyclesReport {
    let basis = crate::cohomology::h1_log_basis(model);
    let nt = monodromy_matrix_in_basis(model, &basis);
    let db = dubois_h1(model);
    let sp = sp_matrix(model, &basis);

    let sp_injective = sp.rank() == db.dim;
    let composite_zero = nt.mul(&sp).is_zero();
    let kernel = nt.nullspace();
    let image = sp.column_space();
    let kernel_equals_image = kernel == image;

    InvariantCyclesReport {
        dim_h1_log: basis.dim(),
        dim_h1_db: db.dim,
        betti1: model.betti1(),
        rank_monodromy: nt.rank(),
        dim_ker_monodromy: kernel.dim(),
        sp_injective,
        composite_zero,
        kernel_equals_image,
        pass: sp_injective && composite_zero && kernel_equals_image,
    }
}

/// True iff Ñ squares to the zero matrix.
pub fn nilpotency_check(model: &LogCurveModel) -> bool {
    let nt = monodromy_matrix(model).matrix;
    nt.mul(&nt).is_zero()
}

/// Re-orients the given edges and checks that the operator only changes by
/// the induced sign change of basis: with T transporting old coordinates to
/// new ones, T must be invertible and Ñ_flipped · T = T · Ñ.
pub fn orientation_invariance_check(
    model: &LogCurveModel,
    flips: &[String],
) -> Result<bool, ModelError> {
    let mut unique: Vec<&String> = flips.iter().collect();
    unique.sort();
    unique.dedup();
    let mut flipped = model.clone();
    for id in &unique {
        flipped = flipped.flip_orientation(id)?;
    }
    let flip_idx: Vec<usize> = unique
        .iter()
        .map(|id| {
            model
                .edge_index(id)
                .expect("flip succeeded, so the id resolves")
        })
        .collect();

    let basis = crate::cohomology::h1_log_basis(model);
    let basis_f = crate::cohomology::h1_log_basis(&flipped);
    if basis.dim() != basis_f.dim() {
        return Ok(false);
    }
    let nt = monodromy_matrix_in_basis(model, &basis);
    let nt_f = monodromy_matrix_in_basis(&flipped, &basis_f);

    // Transport each old basis lift into the re-oriented model: the forms
    // are untouched, the scalar on a flipped edge changes sign (the edge
    // summand's generator flips with the orientation), and the class is
    // read off in the new basis.
    let units = UnitAssignment::trivial();
    let mut cols = Vec::with_capacity(basis.dim());
    for k in 0..basis.dim() {
        let mut c = basis.lift(model, k);
        for &i in &flip_idx {
            let negated = -c.edge_scalars[i].clone();
            c.edge_scalars[i] = negated;
        }
        let coords = normalize_cocycle(&flipped, &basis_f, &c, &units)
            .expect("transported lifts stay cocycles");
        cols.push(coords);
    }
    let t = MatQ::from_cols(basis.dim(), cols);
    Ok(t.rank() == basis.dim() && nt_f.mul(&t) == t.mul(&nt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_ratfunc;
    use crate::arith::rat::rat_int;
    use crate::cohomology::h1_log_basis;
    use crate::families;
    use crate::graph::{Component, NamedEdge};

    fn cycle4_with_virtual() -> LogCurveModel {
        let comps = vec![
            Component::virtual_of_genus("v1", 1),
            Component::concrete("v2"),
            Component::concrete("v3"),
            Component::concrete("v4"),
        ];
        let edge = |id: &str, from: &str, to: &str| NamedEdge {
            id: id.into(),
            from: from.into(),
            to: to.into(),
            coord_from: rat_int(0),
            coord_to: rat_int(1),
        };
        LogCurveModel::new(
            comps,
            vec![
                edge("e1", "v1", "v2"),
                edge("e2", "v2", "v3"),
                edge("e3", "v3", "v4"),
                edge("e4", "v4", "v1"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn banana_edge_vector_and_class() {
        let m = families::banana(2).unwrap();
        let basis = h1_log_basis(&m);
        // the ker-beta basis lift is (η_v, −η_w, 0)
        let c = basis.lift(&m, 1);
        let a = monodromy_edge_vector(&m, &c).unwrap();
        assert_eq!(a, vec![rat_int(1), rat_int(-1)]);
        let coords = monodromy_apply(&m, &basis, &c).unwrap();
        assert_eq!(coords, vec![rat_int(-2), rat_int(0)]);
    }

    #[test]
    fn zero_forms_map_to_zero() {
        let m = families::banana(2).unwrap();
        let basis = h1_log_basis(&m);
        let c = basis.lift(&m, 0); // edge-vector-only class
        let coords = monodromy_apply(&m, &basis, &c).unwrap();
        assert!(coords.iter().all(Zero::is_zero));
    }

    #[test]
    fn chains_have_zero_operator_on_zero_space() {
        for n in 2..=5 {
            let m = families::chain(n).unwrap();
            let op = monodromy_matrix(&m);
            assert_eq!(op.matrix.nrows(), 0);
            assert!(op.labels.is_empty());
            assert!(nilpotency_check(&m));
        }
    }

    #[test]
    fn banana_matrix_is_the_hand_computed_one() {
        let m = families::banana(2).unwrap();
        let op = monodromy_matrix(&m);
        assert_eq!(op.labels, vec!["coker:e2", "kerbeta:0"]);
        let expected = MatQ::from_rows(vec![
            vec![rat_int(0), rat_int(-2)],
            vec![rat_int(0), rat_int(0)],
        ]);
        assert_eq!(op.matrix, expected);
        assert_eq!(op.matrix.rank(), 1);
    }

    #[test]
    fn theta_operator_has_rank_two_on_four_dimensions() {
        let m = families::theta();
        let op = monodromy_matrix(&m);
        assert_eq!(op.matrix.nrows(), 4);
        assert_eq!(op.matrix.rank(), 2);
        assert!(nilpotency_check(&m));
    }

    #[test]
    fn rank_equals_betti_one_on_connected_genus_zero_models() {
        for m in [
            families::banana(2).unwrap(),
            families::banana(4).unwrap(),
            families::cycle(3).unwrap(),
            families::cycle(6).unwrap(),
            families::theta(),
            families::chain(3).unwrap(),
            families::random(5, 8, 3).unwrap(),
        ] {
            assert_eq!(monodromy_matrix(&m).matrix.rank(), m.betti1());
        }
    }

    #[test]
    fn dubois_dimensions() {
        assert_eq!(dubois_h1(&families::banana(2).unwrap()).dim, 1);
        assert_eq!(dubois_h1(&families::chain(4).unwrap()).dim, 0);
        let isolated =
            LogCurveModel::new(vec![Component::virtual_of_genus("g", 1)], vec![]).unwrap();
        let db = dubois_h1(&isolated);
        assert_eq!(db.dim, 2);
        assert_eq!(db.labels(&isolated), vec!["genus:g:0", "genus:g:1"]);
    }

    #[test]
    fn sp_on_the_banana_embeds_the_coker_generator() {
        let m = families::banana(2).unwrap();
        let basis = h1_log_basis(&m);
        let sp = sp_matrix(&m, &basis);
        assert_eq!((sp.nrows(), sp.ncols()), (2, 1));
        assert_eq!(sp.at(0, 0), &rat_int(1));
        assert_eq!(sp.at(1, 0), &rat_int(0));
        assert_eq!(sp.rank(), 1);
    }

    #[test]
    fn sp_on_an_isolated_genus_one_vertex_is_an_isomorphism() {
        let m = LogCurveModel::new(vec![Component::virtual_of_genus("g", 1)], vec![]).unwrap();
        let basis = h1_log_basis(&m);
        let sp = sp_matrix(&m, &basis);
        assert_eq!(sp, MatQ::identity(2));
        let op = monodromy_matrix(&m);
        assert!(op.matrix.is_zero());
    }

    #[test]
    fn sp_on_a_tree_is_empty() {
        let m = families::chain(3).unwrap();
        let basis = h1_log_basis(&m);
        let sp = sp_matrix(&m, &basis);
        assert_eq!((sp.nrows(), sp.ncols()), (0, 0));
    }

    #[test]
    fn invariant_cycles_pass_on_hand_checked_models() {
        let r = verify_invariant_cycles(&families::banana(2).unwrap());
        assert!(r.pass);
        assert_eq!((r.dim_h1_log, r.dim_h1_db, r.rank_monodromy), (2, 1, 1));
        assert_eq!(r.dim_ker_monodromy, 1);

        let r = verify_invariant_cycles(&families::theta());
        assert!(r.pass);
        assert_eq!((r.dim_h1_log, r.dim_h1_db, r.rank_monodromy), (4, 2, 2));

        let r = verify_invariant_cycles(&cycle4_with_virtual());
        assert!(r.pass);
        assert_eq!((r.dim_h1_log, r.dim_h1_db, r.rank_monodromy), (4, 3, 1));
        assert_eq!(r.betti1, 1);
    }

    #[test]
    fn invariant_cycles_pass_on_random_models() {
        for seed in 0..6 {
            let m = families::random(4 + (seed as usize % 3), 7, seed).unwrap();
            let r = verify_invariant_cycles(&m);
            assert!(r.pass, "seed {seed}: {r:?}");
            assert!(nilpotency_check(&m));
        }
    }

    #[test]
    fn orientation_flips_conjugate_the_operator() {
        let m = families::banana(2).unwrap();
        assert!(orientation_invariance_check(&m, &[]).unwrap());
        assert!(orientation_invariance_check(&m, &["e1".into()]).unwrap());
        let c3 = families::cycle(3).unwrap();
        let all: Vec<String> = c3.edges().iter().map(|e| e.id.clone()).collect();
        assert!(orientation_invariance_check(&c3, &all).unwrap());
        let v = cycle4_with_virtual();
        assert!(orientation_invariance_check(&v, &["e2".into(), "e4".into()]).unwrap());
    }

    #[test]
    fn orientation_check_rejects_unknown_edges() {
        let m = families::banana(2).unwrap();
        assert!(matches!(
            orientation_invariance_check(&m, &["nope".into()]),
            Err(ModelError::UnknownEdge(_))
        ));
    }

    #[test]
    fn unit_choices_never_change_the_matrix() {
        let m = families::banana(2).unwrap();
        let basis = h1_log_basis(&m);
        let canonical = monodromy_matrix_in_basis(&m, &basis);
        let trivial = monodromy_matrix_with_units(&m, &basis, &UnitAssignment::trivial()).unwrap();
        assert_eq!(canonical, trivial);

        let mut units = UnitAssignment::trivial();
        units
            .set(&m, 0, 0, parse_ratfunc("3 + 5*z").unwrap())
            .unwrap();
        units
            .set(&m, 0, 1, parse_ratfunc("2/(3 - z)").unwrap())
            .unwrap();
        units
            .set(&m, 1, 0, parse_ratfunc("1 - 4*z").unwrap())
            .unwrap();
        let twisted = monodromy_matrix_with_units(&m, &basis, &units).unwrap();
        assert_eq!(canonical, twisted);
    }
}
