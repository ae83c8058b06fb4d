//! Rational functions in one variable over the rationals, and rational
//! 1-forms `g dz`.
//!
//! A `RatFunc` is kept in lowest terms with a monic denominator, so
//! structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rat::Rat;
use super::ArithError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds `num / den`, reducing to lowest terms. Fails if `den` is the
    /// zero polynomial.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = Poly::gcd(&num, &den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lc = den.leading().unwrap().clone();
        Ok(RatFunc {
            num: num.scale(&(Rat::one() / &lc)),
            den: den.scale(&(Rat::one() / lc)),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    /// The coordinate function `z`.
    pub fn var() -> Self {
        RatFunc::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == Poly::one()
    }

    pub fn inv(&self) -> Result<RatFunc, ArithError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, ArithError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Evaluation; `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn has_pole_at(&self, p: &Rat) -> bool {
        self.den.eval(p).is_zero()
    }

    /// Pole order at a finite point (0 when regular there).
    pub fn pole_order_at(&self, p: &Rat) -> usize {
        let mut den = self.den.clone();
        let mut ord = 0;
        loop {
            let (q, r) = den.divide_linear(p);
            if !r.is_zero() {
                return ord;
            }
            ord += 1;
            den = q;
        }
    }

    pub fn derivative(&self) -> RatFunc {
        // (n/d)' = (n'd - nd') / d^2
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(num, &self.den * &self.den).expect("denominator square is nonzero")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &-rhs
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

/// Prints in the expression grammar: a polynomial prints bare, otherwise
/// `(num)/(den)`. Parsing the output reproduces the function exactly.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// A rational 1-form `g dz`, stored by its coefficient `g`.
///
/// Forms print (and parse) as the bare coefficient: the `dz` is implied
/// throughout the crate's interchange format.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatForm {
    coeff: RatFunc,
}

impl RatForm {
    pub fn new(coeff: RatFunc) -> Self {
        RatForm { coeff }
    }

    pub fn zero() -> Self {
        RatForm::new(RatFunc::zero())
    }

    pub fn coeff(&self) -> &RatFunc {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// `df = f' dz`.
    pub fn d(f: &RatFunc) -> RatForm {
        RatForm::new(f.derivative())
    }

    /// `dlog f = f'/f dz`; fails on `f = 0`.
    pub fn dlog(f: &RatFunc) -> Result<RatForm, ArithError> {
        Ok(RatForm::new(f.derivative().checked_div(f)?))
    }

    pub fn scale(&self, c: &Rat) -> RatForm {
        RatForm::new(self.coeff.scale(c))
    }

    pub fn scale_fn(&self, f: &RatFunc) -> RatForm {
        RatForm::new(&self.coeff * f)
    }
}

impl Add for &RatForm {
    type Output = RatForm;
    fn add(self, rhs: &RatForm) -> RatForm {
        RatForm::new(&self.coeff + &rhs.coeff)
    }
}

impl Sub for &RatForm {
    type Output = RatForm;
    fn sub(self, rhs: &RatForm) -> RatForm {
        RatForm::new(&self.coeff - &rhs.coeff)
    }
}

impl Neg for &RatForm {
    type Output = RatForm;
    fn neg(self) -> RatForm {
        RatForm::new(-&self.coeff)
    }
}

impl fmt::Display for RatForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat_int;

    fn zm(p: i64) -> Poly {
        Poly::z_minus(&rat_int(p))
    }

    #[test]
    fn reduction_to_lowest_terms() {
        // (z^2 - 1)/(z - 1) = z + 1
        let f = RatFunc::new(&zm(1) * &zm(-1), zm(1)).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.num(), &Poly::from_coeffs(vec![rat_int(1), rat_int(1)]));
    }

    #[test]
    fn denominator_is_normalized_monic() {
        // 1/(2z - 2) = (1/2)/(z - 1)
        let f = RatFunc::new(
            Poly::one(),
            Poly::from_coeffs(vec![rat_int(-2), rat_int(2)]),
        )
        .unwrap();
        assert_eq!(f.den(), &zm(1));
        assert_eq!(f.num(), &Poly::constant(crate::arith::rat::rat(1, 2)));
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(
            RatFunc::new(Poly::one(), Poly::zero()),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn sum_with_common_pole() {
        // z/(z-1) + 1/(z-1) = (z+1)/(z-1)
        let a = RatFunc::new(Poly::var(), zm(1)).unwrap();
        let b = RatFunc::new(Poly::one(), zm(1)).unwrap();
        let s = &a + &b;
        assert_eq!(s.num(), &Poly::from_coeffs(vec![rat_int(1), rat_int(1)]));
        assert_eq!(s.den(), &zm(1));
    }

    #[test]
    fn derivative_quotient_rule() {
        // ((z^2+1)/(z-2))' = (z^2 - 4z - 1)/(z-2)^2
        let f = RatFunc::new(
            Poly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(1)]),
            zm(2),
        )
        .unwrap();
        let df = f.derivative();
        assert_eq!(
            df.num(),
            &Poly::from_coeffs(vec![rat_int(-1), rat_int(-4), rat_int(1)])
        );
        assert_eq!(df.den(), &zm(2).pow(2));
    }

    #[test]
    fn dlog_of_product_adds() {
        let f = RatFunc::from_poly(zm(1));
        let g = RatFunc::from_poly(zm(3));
        let lhs = RatForm::dlog(&(&f * &g)).unwrap();
        let rhs = &RatForm::dlog(&f).unwrap() + &RatForm::dlog(&g).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pole_order_counts_multiplicity() {
        let f = RatFunc::new(Poly::one(), zm(5).pow(3)).unwrap();
        assert_eq!(f.pole_order_at(&rat_int(5)), 3);
        assert_eq!(f.pole_order_at(&rat_int(0)), 0);
    }

    #[test]
    fn eval_detects_poles() {
        let f = RatFunc::new(Poly::one(), zm(1)).unwrap();
        assert_eq!(f.eval(&rat_int(1)), None);
        assert_eq!(f.eval(&rat_int(3)), Some(crate::arith::rat::rat(1, 2)));
    }
}
