//! Aggregated verification: dimensions, operator matrices, and a battery of
//! exact structural checks, rendered as JSON or human-readable text.
//!
//! Every verdict is computed in rational arithmetic and is decided, never
//! approximate. The randomized spot checks (orientation flips, uniformizer
//! units, residue-theorem forms, coboundary vanishing) draw from a seeded
//! generator, so a report is a pure function of the model and the options.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::poly::Poly;
use crate::arith::rat::{rat_to_string, Rat};
use crate::arith::ratfunc::{RatForm, RatFunc};
use crate::arith::residue::residue_at;
use crate::arith::series::PointOnLine;
use crate::cohomology::{
    class_residues, coboundary, h0_log, h1_log_basis, h1_truncated_oracle, normalize_cocycle,
    UnitAssignment,
};
use crate::graph::LogCurveModel;
use crate::linalg::MatQ;
use crate::monodromy::{
    dubois_h1, monodromy_matrix_in_basis, monodromy_matrix_with_units,
    orientation_invariance_check, sp_matrix, verify_invariant_cycles,
};

const UNIT_ROUNDS: usize = 5;
const COBOUNDARY_SAMPLES: usize = 10;
const RESIDUE_FORMS_PER_COMPONENT: usize = 5;
const MAX_POLE_ORDER: usize = 3;

/// Tunables for the randomized parts of the verification battery.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Truncation depth for the independent dimension oracle (compared at
    /// this depth and the next).
    pub oracle_depth: usize,
    /// Number of random orientation-flip rounds.
    pub flip_rounds: usize,
    /// Seed for units, flip subsets, and random forms.
    pub unit_seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            oracle_depth: 3,
            flip_rounds: 3,
            unit_seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Dims {
    pub betti1: usize,
    pub h0: usize,
    pub h1_log: usize,
    pub h1_db: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessDetail {
    pub sp_rank: usize,
    pub rank_monodromy: usize,
    pub dim_ker_monodromy: usize,
    pub sp_injective: bool,
    pub composite_zero: bool,
    pub kernel_equals_image: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleComparison {
    pub depth: usize,
    pub dim_at_depth: usize,
    pub dim_at_next_depth: usize,
    pub direct_dim: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdicts {
    pub exactness: bool,
    pub nilpotency: bool,
    pub orientation_invariance: bool,
    pub uniformizer_invariance: bool,
    pub combinatorial_lemma: bool,
    /// Residue theorem verdict per component id.
    pub residue_theorem: BTreeMap<String, bool>,
    /// `None` when the oracle does not apply (virtual components present).
    pub oracle_match: Option<bool>,
}

/// The full verification report for one model.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub dims: Dims,
    pub basis_labels: Vec<String>,
    pub monodromy_matrix: Vec<Vec<String>>,
    pub dubois_labels: Vec<String>,
    pub sp_matrix: Vec<Vec<String>>,
    pub exactness: ExactnessDetail,
    pub oracle: Option<OracleComparison>,
    pub verdicts: Verdicts,
    pub pass: bool,
}

fn matrix_strings(m: &MatQ) -> Vec<Vec<String>> {
    (0..m.nrows())
        .map(|i| m.row(i).iter().map(rat_to_string).collect())
        .collect()
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=3);
    Rat::new(num.into(), den.into())
}

fn nonzero_small_int(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let n: i64 = rng.gen_range(-5..=5);
        if n != 0 {
            return Rat::from_integer(n.into());
        }
    }
}

/// A random local unit at `p`: a degree-≤1 over degree-≤1 rational function
/// that is regular and nonzero there.
fn random_unit(rng: &mut ChaCha8Rng, p: &Rat) -> RatFunc {
    let lin =
        |c0: Rat, c1: Rat, p: &Rat| -> Poly { &Poly::constant(c0) + &Poly::z_minus(p).scale(&c1) };
    let num = lin(
        nonzero_small_int(rng),
        Rat::from_integer(rng.gen_range(-5..=5i64).into()),
        p,
    );
    let den = lin(
        nonzero_small_int(rng),
        Rat::from_integer(rng.gen_range(-5..=5i64).into()),
        p,
    );
    RatFunc::new(num, den).expect("denominator is nonzero at p, hence nonzero")
}

/// Random units on every node side of the model.
fn random_units(rng: &mut ChaCha8Rng, model: &LogCurveModel) -> UnitAssignment {
    let mut units = UnitAssignment::trivial();
    for v in 0..model.components().len() {
        for j in 0..model.nodes_of(v).len() {
            let p = model.node_coord(&model.nodes_of(v)[j]).clone();
            let u = random_unit(rng, &p);
            units
                .set(model, v, j, u)
                .expect("constructed units are admissible");
        }
    }
    units
}

/// A random function with poles only at the given points, order ≤ 3, no
/// polynomial part beyond a constant.
fn random_proper_function(rng: &mut ChaCha8Rng, poles: &[Rat]) -> RatFunc {
    let mut f = RatFunc::constant(small_rat(rng));
    for p in poles {
        for j in 1..=MAX_POLE_ORDER {
            let c = small_rat(rng);
            if c.is_zero() {
                continue;
            }
            let den = Poly::z_minus(p).pow(j as u32);
            f = &f + &RatFunc::new(Poly::constant(c), den).expect("nonzero denominator");
        }
    }
    f
}

/// A random form with poles only at the given points (orders ≤ 3) whose
/// residues sum to zero — hence regular at infinity.
fn random_regular_form(rng: &mut ChaCha8Rng, poles: &[Rat]) -> RatForm {
    let mut form = RatForm::zero();
    let mut residue_sum = Rat::zero();
    for (i, p) in poles.iter().enumerate() {
        let last = i + 1 == poles.len();
        let res = if last {
            -residue_sum.clone()
        } else {
            let c = small_rat(rng);
            residue_sum += &c;
            c
        };
        if !res.is_zero() {
            let term = RatFunc::new(Poly::constant(res), Poly::z_minus(p)).expect("nonzero");
            form = &form + &RatForm::new(term);
        }
        for j in 2..=MAX_POLE_ORDER {
            let c = small_rat(rng);
            if c.is_zero() {
                continue;
            }
            let den = Poly::z_minus(p).pow(j as u32);
            let term = RatFunc::new(Poly::constant(c), den).expect("nonzero");
            form = &form + &RatForm::new(term);
        }
    }
    form
}

/// Residue-theorem spot check per component: random admissible forms must
/// have node residues summing to zero (virtual components: the abstract
/// residue layout must sum to zero on random coordinates).
fn check_residue_theorem(model: &LogCurveModel, rng: &mut ChaCha8Rng) -> BTreeMap<String, bool> {
    let mut out = BTreeMap::new();
    for (v, comp) in model.components().iter().enumerate() {
        let nodes = model.nodes_of(v);
        let coords: Vec<Rat> = nodes.iter().map(|n| model.node_coord(n).clone()).collect();
        let mut ok = true;
        for _ in 0..RESIDUE_FORMS_PER_COMPONENT {
            if comp.is_virtual() {
                let dim = crate::cohomology::h1dr_dim(model, v);
                let random_coords: Vec<Rat> = (0..dim).map(|_| small_rat(rng)).collect();
                let sum: Rat = class_residues(model, v, &random_coords).iter().sum();
                ok &= sum.is_zero();
            } else {
                let form = random_regular_form(rng, &coords);
                let sum: Rat = coords
                    .iter()
                    .map(|p| residue_at(&form, &PointOnLine::Finite(p.clone())))
                    .sum();
                ok &= sum.is_zero();
            }
        }
        out.insert(comp.id.clone(), ok);
    }
    out
}

/// Standalone residue-theorem check with its own seeded generator: on each
/// component, residues of `RESIDUE_FORMS_PER_COMPONENT` random regular forms
/// are summed over the nodes and must cancel exactly.
pub fn residue_theorem_rounds(model: &LogCurveModel, seed: u64) -> BTreeMap<String, bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    check_residue_theorem(model, &mut rng)
}

/// Uniformizer-independence: the operator recomputed through the
/// unit-dependent path must be identical for every random unit assignment,
/// and random coboundaries must normalize to the zero vector under all of
/// them (and under the trivial assignment).
fn check_uniformizer_invariance(
    model: &LogCurveModel,
    canonical: &MatQ,
    rng: &mut ChaCha8Rng,
) -> bool {
    let basis = h1_log_basis(model);
    let mut cob_funcs: Vec<Vec<RatFunc>> = Vec::with_capacity(COBOUNDARY_SAMPLES);
    for _ in 0..COBOUNDARY_SAMPLES {
        let funcs: Vec<RatFunc> = (0..model.components().len())
            .map(|v| {
                if model.components()[v].is_virtual() {
                    RatFunc::zero()
                } else {
                    let coords: Vec<Rat> = model
                        .nodes_of(v)
                        .iter()
                        .map(|n| model.node_coord(n).clone())
                        .collect();
                    random_proper_function(rng, &coords)
                }
            })
            .collect();
        cob_funcs.push(funcs);
    }

    let mut assignments = vec![UnitAssignment::trivial()];
    for _ in 0..UNIT_ROUNDS {
        assignments.push(random_units(rng, model));
    }

    for units in &assignments {
        match monodromy_matrix_with_units(model, &basis, units) {
            Ok(m) if &m == canonical => {}
            _ => return false,
        }
        for funcs in &cob_funcs {
            let Ok(c) = coboundary(model, funcs, units) else {
                return false;
            };
            match normalize_cocycle(model, &basis, &c, units) {
                Ok(coords) if coords.iter().all(Zero::is_zero) => {}
                _ => return false,
            }
        }
    }
    true
}

/// Standalone uniformizer-invariance check with its own seeded generator:
/// recomputes the operator under `UNIT_ROUNDS` random unit assignments and
/// normalizes `COBOUNDARY_SAMPLES` random coboundaries under each.
pub fn unit_invariance_check(model: &LogCurveModel, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = h1_log_basis(model);
    let canonical = monodromy_matrix_in_basis(model, &basis);
    check_uniformizer_invariance(model, &canonical, &mut rng)
}

/// Standalone orientation-invariance check with its own seeded generator:
/// `rounds` random edge subsets are flipped and the operator compared
/// through the induced change of basis.
pub fn orientation_rounds_check(model: &LogCurveModel, rounds: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    check_orientation(model, rounds, &mut rng)
}

fn check_orientation(model: &LogCurveModel, rounds: usize, rng: &mut ChaCha8Rng) -> bool {
    for _ in 0..rounds {
        let flips: Vec<String> = model
            .edges()
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .map(|e| e.id.clone())
            .collect();
        match orientation_invariance_check(model, &flips) {
            Ok(true) => {}
            _ => return false,
        }
    }
    true
}

fn check_oracle(
    model: &LogCurveModel,
    direct_dim: usize,
    depth: usize,
) -> Option<OracleComparison> {
    if model.components().iter().any(|c| c.is_virtual()) {
        return None;
    }
    let at = h1_truncated_oracle(model, depth).expect("all components are concrete");
    let next = h1_truncated_oracle(model, depth + 1).expect("all components are concrete");
    Some(OracleComparison {
        depth,
        dim_at_depth: at,
        dim_at_next_depth: next,
        direct_dim,
        matches: at == direct_dim && next == direct_dim,
    })
}

/// Computes everything: dimensions, matrices, and the verification battery.
pub fn build_report(model: &LogCurveModel, opts: &VerifyOptions) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.unit_seed);

    let basis = h1_log_basis(model);
    let nt = monodromy_matrix_in_basis(model, &basis);
    let db = dubois_h1(model);
    let sp = sp_matrix(model, &basis);
    let inv = verify_invariant_cycles(model);

    let dims = Dims {
        betti1: model.betti1(),
        h0: h0_log(model),
        h1_log: basis.dim(),
        h1_db: db.dim,
    };
    let exactness = ExactnessDetail {
        sp_rank: sp.rank(),
        rank_monodromy: inv.rank_monodromy,
        dim_ker_monodromy: inv.dim_ker_monodromy,
        sp_injective: inv.sp_injective,
        composite_zero: inv.composite_zero,
        kernel_equals_image: inv.kernel_equals_image,
    };

    let nilpotency = nt.mul(&nt).is_zero();
    let residue_theorem = check_residue_theorem(model, &mut rng);
    let uniformizer_invariance = check_uniformizer_invariance(model, &nt, &mut rng);
    let orientation_invariance = check_orientation(model, opts.flip_rounds, &mut rng);
    let combinatorial_lemma = model.lemma_intersection_check();
    let oracle = check_oracle(model, basis.dim(), opts.oracle_depth);

    let verdicts = Verdicts {
        exactness: inv.pass,
        nilpotency,
        orientation_invariance,
        uniformizer_invariance,
        combinatorial_lemma,
        residue_theorem: residue_theorem.clone(),
        oracle_match: oracle.as_ref().map(|o| o.matches),
    };
    let pass = verdicts.exactness
        && verdicts.nilpotency
        && verdicts.orientation_invariance
        && verdicts.uniformizer_invariance
        && verdicts.combinatorial_lemma
        && verdicts.residue_theorem.values().all(|&b| b)
        && verdicts.oracle_match.unwrap_or(true);

    Report {
        dims,
        basis_labels: basis.labels(model),
        monodromy_matrix: matrix_strings(&nt),
        dubois_labels: db.labels(model),
        sp_matrix: matrix_strings(&sp),
        exactness,
        oracle,
        verdicts,
        pass,
    }
}

pub fn report_to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report types always serialize");
    s.push('\n');
    s
}

fn write_matrix(f: &mut fmt::Formatter<'_>, rows: &[Vec<String>]) -> fmt::Result {
    if rows.is_empty() || rows[0].is_empty() {
        return writeln!(f, "  (empty)");
    }
    let ncols = rows[0].len();
    let widths: Vec<usize> = (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(1))
        .collect();
    for row in rows {
        write!(f, "  [")?;
        for (j, entry) in row.iter().enumerate() {
            write!(f, " {:>width$}", entry, width = widths[j])?;
        }
        writeln!(f, " ]")?;
    }
    Ok(())
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "dims: betti1 = {}, h0 = {}, h1_log = {}, h1_db = {}",
            self.dims.betti1, self.dims.h0, self.dims.h1_log, self.dims.h1_db
        )?;
        writeln!(f)?;
        writeln!(f, "H1_log basis: {}", join_or_none(&self.basis_labels))?;
        writeln!(
            f,
            "monodromy matrix (rank {}):",
            self.exactness.rank_monodromy
        )?;
        write_matrix(f, &self.monodromy_matrix)?;
        writeln!(f, "H1_DB basis: {}", join_or_none(&self.dubois_labels))?;
        writeln!(f, "sp matrix (H1_DB -> H1_log):")?;
        write_matrix(f, &self.sp_matrix)?;
        writeln!(f)?;
        writeln!(f, "verdicts:")?;
        writeln!(
            f,
            "  exactness:               {}  (sp rank {}, rank N = {}, dim ker N = {})",
            verdict_word(self.verdicts.exactness),
            self.exactness.sp_rank,
            self.exactness.rank_monodromy,
            self.exactness.dim_ker_monodromy
        )?;
        writeln!(
            f,
            "  nilpotency:              {}",
            verdict_word(self.verdicts.nilpotency)
        )?;
        writeln!(
            f,
            "  orientation invariance:  {}",
            verdict_word(self.verdicts.orientation_invariance)
        )?;
        writeln!(
            f,
            "  uniformizer invariance:  {}",
            verdict_word(self.verdicts.uniformizer_invariance)
        )?;
        writeln!(
            f,
            "  combinatorial lemma:     {}",
            verdict_word(self.verdicts.combinatorial_lemma)
        )?;
        let failed: Vec<&str> = self
            .verdicts
            .residue_theorem
            .iter()
            .filter(|(_, &ok)| !ok)
            .map(|(id, _)| id.as_str())
            .collect();
        if failed.is_empty() {
            writeln!(f, "  residue theorem:         pass")?;
        } else {
            writeln!(f, "  residue theorem:         FAIL ({})", failed.join(", "))?;
        }
        match &self.oracle {
            None => writeln!(f, "  oracle comparison:       skipped (virtual components)")?,
            Some(o) => writeln!(
                f,
                "  oracle comparison:       {}  (depth {}: {}, depth {}: {}, direct: {})",
                verdict_word(o.matches),
                o.depth,
                o.dim_at_depth,
                o.depth + 1,
                o.dim_at_next_depth,
                o.direct_dim
            )?,
        }
        writeln!(f)?;
        write!(f, "result: {}", if self.pass { "PASS" } else { "FAIL" })
    }
}

fn join_or_none(labels: &[String]) -> String {
    if labels.is_empty() {
        "(none)".to_string()
    } else {
        labels.join(", ")
    }
}
