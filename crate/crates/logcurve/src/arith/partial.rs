//! Partial fraction decomposition over the rationals.
//!
//! `f = polynomial + sum over poles p of sum_j c_(p,j) / (z - p)^j`. The
//! principal-part coefficients are read off the Laurent expansion at each
//! pole, so the decomposition exists exactly when every pole is rational.

use num_traits::Zero;

use super::poly::Poly;
use super::rat::Rat;
use super::ratfunc::RatFunc;
use super::roots::rational_poles;
use super::series::{laurent_expand, PointOnLine, Uniformizer};
use super::ArithError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolePart {
    pub pole: Rat,
    /// `principal[j]` is the coefficient of `(z - pole)^-(j+1)`; the last
    /// entry (the top-order coefficient) is nonzero.
    pub principal: Vec<Rat>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialFractions {
    pub polynomial: Poly,
    /// Sorted by pole.
    pub poles: Vec<PolePart>,
}

impl PartialFractions {
    /// The coefficient of `(z - p)^-1` at a given pole (zero if absent).
    pub fn residue_coeff(&self, p: &Rat) -> Rat {
        self.poles
            .iter()
            .find(|pp| &pp.pole == p)
            .map(|pp| pp.principal[0].clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Reassembles the rational function the decomposition came from.
    pub fn reassemble(&self) -> RatFunc {
        let mut acc = RatFunc::from_poly(self.polynomial.clone());
        for pp in &self.poles {
            for (j, c) in pp.principal.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let den = Poly::z_minus(&pp.pole).pow(j as u32 + 1);
                let term = RatFunc::new(Poly::constant(c.clone()), den).expect("nonzero");
                acc = &acc + &term;
            }
        }
        acc
    }
}

pub fn partial_fractions(f: &RatFunc) -> Result<PartialFractions, ArithError> {
    if f.is_zero() {
        return Ok(PartialFractions {
            polynomial: Poly::zero(),
            poles: Vec::new(),
        });
    }
    let polynomial = f.num().div_rem(f.den()).0;
    let mut poles = Vec::new();
    for (p, order) in rational_poles(f)? {
        let uni = Uniformizer::canonical(PointOnLine::Finite(p.clone()));
        let prefix = laurent_expand(f, &uni, -1);
        debug_assert_eq!(prefix.start(), -(order as i64));
        let principal: Vec<Rat> = (1..=order as i64).map(|j| prefix.coeff(-j)).collect();
        poles.push(PolePart { pole: p, principal });
    }
    Ok(PartialFractions { polynomial, poles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_ratfunc;
    use crate::arith::rat::{rat, rat_int};

    #[test]
    fn distinct_simple_poles() {
        // 1/(z(z-1)) = -1/z + 1/(z-1)
        let f = parse_ratfunc("1/(z*(z-1))").unwrap();
        let pf = partial_fractions(&f).unwrap();
        assert!(pf.polynomial.is_zero());
        assert_eq!(
            pf.poles,
            vec![
                PolePart {
                    pole: rat_int(0),
                    principal: vec![rat_int(-1)]
                },
                PolePart {
                    pole: rat_int(1),
                    principal: vec![rat_int(1)]
                },
            ]
        );
    }

    #[test]
    fn higher_order_pole_and_polynomial_part() {
        // (z^4 + 1)/(z-1)^2 = z^2 + 2z + 3 + 4/(z-1) + 2/(z-1)^2
        let f = parse_ratfunc("(z^4 + 1)/(z-1)^2").unwrap();
        let pf = partial_fractions(&f).unwrap();
        assert_eq!(
            pf.polynomial,
            Poly::from_coeffs(vec![rat_int(3), rat_int(2), rat_int(1)])
        );
        assert_eq!(
            pf.poles,
            vec![PolePart {
                pole: rat_int(1),
                principal: vec![rat_int(4), rat_int(2)],
            }]
        );
        assert_eq!(pf.reassemble(), f);
    }

    #[test]
    fn rational_pole_locations() {
        let f = parse_ratfunc("1/((2*z - 1) * (z + 3))").unwrap();
        let pf = partial_fractions(&f).unwrap();
        assert_eq!(pf.poles.len(), 2);
        assert_eq!(pf.poles[0].pole, rat_int(-3));
        assert_eq!(pf.poles[1].pole, rat(1, 2));
        assert_eq!(pf.reassemble(), f);
    }

    #[test]
    fn reassembly_round_trip() {
        for s in [
            "(z^5 - 3)/((z-1)^3 * z^2)",
            "(z^2 + 1)/(z - 4)",
            "z^3 - 2",
            "0",
        ] {
            let f = parse_ratfunc(s).unwrap();
            assert_eq!(partial_fractions(&f).unwrap().reassemble(), f);
        }
    }

    #[test]
    fn irrational_poles_are_rejected() {
        let f = parse_ratfunc("1/(z^2 - 2)").unwrap();
        assert!(matches!(
            partial_fractions(&f),
            Err(ArithError::NonRationalPole { .. })
        ));
    }
}
