//! Residues of rational 1-forms on the projective line.
//!
//! The residue of `omega` at a point with respect to a uniformizer `t` is the
//! coefficient of `t^(-1) dt` when `omega` is written in terms of `t`. It
//! does not depend on the choice of `t` — `residue_in` computes through an
//! arbitrary uniformizer precisely so that independence can be checked
//! mechanically rather than assumed.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::rat::Rat;
use super::ratfunc::RatForm;
use super::roots::rational_poles;
use super::series::{laurent_expand, PointOnLine, Uniformizer};
use super::ArithError;

/// Residue with respect to an arbitrary uniformizer `t`: writes
/// `omega = g dz = (g / t'(z)) dt` and extracts the `t^(-1)` coefficient.
pub fn residue_in(form: &RatForm, uni: &Uniformizer) -> Rat {
    if form.is_zero() {
        return Rat::zero();
    }
    let dt = uni.as_function().derivative();
    let h = form
        .coeff()
        .checked_div(&dt)
        .expect("a uniformizer is nonconstant, so dt is nonzero");
    laurent_expand(&h, uni, -1).coeff(-1)
}

/// Residue with respect to the canonical uniformizer at the point.
pub fn residue_at(form: &RatForm, point: &PointOnLine) -> Rat {
    residue_in(form, &Uniformizer::canonical(point.clone()))
}

/// Residues at every finite pole of the coefficient, plus the point at
/// infinity whenever the form could have nonzero residue there (so the values
/// always sum to zero). Polynomial coefficients of positive degree get an
/// explicit zero entry at infinity; constants do not. Fails when the
/// denominator has a non-rational pole.
pub fn residues_all(form: &RatForm) -> Result<BTreeMap<PointOnLine, Rat>, ArithError> {
    let mut out = BTreeMap::new();
    let g = form.coeff();
    if g.is_zero() {
        return Ok(out);
    }
    let poles = rational_poles(g)?;
    for (p, _) in &poles {
        let point = PointOnLine::Finite(p.clone());
        let r = residue_at(form, &point);
        out.insert(point, r);
    }
    if !poles.is_empty() || g.num().degree() > g.den().degree() {
        out.insert(
            PointOnLine::Infinity,
            residue_at(form, &PointOnLine::Infinity),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_form;
    use crate::arith::rat::{rat, rat_int};

    fn fin(p: i64) -> PointOnLine {
        PointOnLine::Finite(rat_int(p))
    }

    #[test]
    fn simple_pole_at_the_origin() {
        let w = parse_form("1/z").unwrap();
        assert_eq!(residue_at(&w, &fin(0)), rat_int(1));
        assert_eq!(residue_at(&w, &PointOnLine::Infinity), rat_int(-1));
        assert_eq!(residue_at(&w, &fin(3)), rat_int(0));
    }

    #[test]
    fn two_finite_poles_and_regular_infinity() {
        let w = parse_form("1/(z*(z-1))").unwrap();
        let all = residues_all(&w).unwrap();
        let expected: Vec<(PointOnLine, Rat)> = vec![
            (fin(0), rat_int(-1)),
            (fin(1), rat_int(1)),
            (PointOnLine::Infinity, rat_int(0)),
        ];
        assert_eq!(all.into_iter().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn exact_forms_have_no_entries() {
        assert!(residues_all(&parse_form("1").unwrap()).unwrap().is_empty());
        assert!(residues_all(&parse_form("0").unwrap()).unwrap().is_empty());
    }

    #[test]
    fn polynomial_forms_report_zero_at_infinity() {
        let all = residues_all(&parse_form("z").unwrap()).unwrap();
        assert_eq!(
            all.into_iter().collect::<Vec<_>>(),
            vec![(PointOnLine::Infinity, rat_int(0))]
        );
    }

    #[test]
    fn double_pole_with_zero_residue() {
        let w = parse_form("1/(z - 1/2)^2").unwrap();
        let all = residues_all(&w).unwrap();
        assert_eq!(
            all.into_iter().collect::<Vec<_>>(),
            vec![
                (PointOnLine::Finite(rat(1, 2)), rat_int(0)),
                (PointOnLine::Infinity, rat_int(0)),
            ]
        );
    }

    #[test]
    fn genuine_residue_at_infinity() {
        // z/(z^2 - 1) = (1/2)/(z-1) + (1/2)/(z+1), so infinity carries -1
        let w = parse_form("z/(z^2 - 1)").unwrap();
        let all = residues_all(&w).unwrap();
        assert_eq!(all.len(), 3);
        assert_eq!(all[&fin(1)], rat(1, 2));
        assert_eq!(all[&fin(-1)], rat(1, 2));
        assert_eq!(all[&PointOnLine::Infinity], rat_int(-1));
        let sum: Rat = all.values().sum();
        assert!(sum.is_zero());
    }

    #[test]
    fn non_rational_pole_is_reported() {
        let w = parse_form("1/(z^2 + 1)").unwrap();
        assert!(matches!(
            residues_all(&w),
            Err(ArithError::NonRationalPole { .. })
        ));
    }

    #[test]
    fn residue_is_independent_of_the_uniformizer() {
        use crate::arith::parse::parse_ratfunc;
        let w = parse_form("(z^2 + 3)/(z^2*(z - 1))").unwrap();
        for (point, unit) in [
            (fin(0), "2 + z"),
            (fin(0), "(1 + z)/(3 - z)"),
            (fin(1), "7 - 2*(z - 1)"),
            (PointOnLine::Infinity, "(2*z + 1)/(z - 5)"),
        ] {
            let uni = Uniformizer::with_unit(point.clone(), parse_ratfunc(unit).unwrap()).unwrap();
            assert_eq!(residue_in(&w, &uni), residue_at(&w, &point));
        }
    }

    #[test]
    fn dlog_residues_are_vanishing_orders() {
        // dlog((z-2)^3 / (z+1)) has residue 3 at 2, -1 at -1, -2 at infinity
        let f = crate::arith::parse::parse_ratfunc("(z-2)^3/(z+1)").unwrap();
        let w = crate::arith::ratfunc::RatForm::dlog(&f).unwrap();
        let all = residues_all(&w).unwrap();
        assert_eq!(all[&fin(2)], rat_int(3));
        assert_eq!(all[&fin(-1)], rat_int(-1));
        assert_eq!(all[&PointOnLine::Infinity], rat_int(-2));
    }
}
