//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored low degree first and kept canonical: no trailing
//! zero coefficients, the empty vector is the zero polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rat::{rat_to_string, Rat};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The variable `z`.
    pub fn var() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// `z - p`.
    pub fn z_minus(p: &Rat) -> Self {
        Poly::from_coeffs(vec![-p.clone(), Rat::one()])
    }

    pub fn monomial(deg: usize, coeff: Rat) -> Self {
        if coeff.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = coeff;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Divides through by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scale(&(Rat::one() / lc)),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    /// Panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / lc;
            if !q.is_zero() {
                for i in 0..=dd {
                    let t = &d.coeffs[i] * &q;
                    rem[k + i] -= t;
                }
                quot[k] = q;
            }
            rem.pop();
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`. Computed over the integers with a
    /// primitive pseudo-remainder sequence — fraction-field Euclid suffers
    /// severe coefficient growth on inputs of even moderate degree.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let mut x = int_primitive(a);
        let mut y = int_primitive(b);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = int_primitive_part(int_pseudo_rem(&x, &y));
            x = y;
            y = r;
        }
        Poly::from_coeffs(x.into_iter().map(Rat::from_integer).collect()).monic()
    }

    /// Quotient and remainder by a linear factor `z - p` (synthetic division).
    pub fn divide_linear(&self, p: &Rat) -> (Poly, Rat) {
        if self.is_zero() {
            return (Poly::zero(), Rat::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![Rat::zero(); n - 1];
        let mut carry = Rat::zero();
        for i in (0..n).rev() {
            let b = &self.coeffs[i] + &carry * p;
            if i == 0 {
                return (Poly::from_coeffs(quot), b);
            }
            quot[i - 1] = b.clone();
            carry = b;
        }
        unreachable!()
    }

    /// Coefficients of `f(z + p)` (Taylor shift).
    pub fn shift(&self, p: &Rat) -> Poly {
        let mut rem = self.clone();
        let mut out = Vec::with_capacity(self.coeffs.len());
        while !rem.is_zero() {
            let (q, r) = rem.divide_linear(p);
            out.push(r);
            rem = q;
        }
        Poly::from_coeffs(out)
    }

    /// `z^d * f(1/z)` where `d = deg f`: the coefficient sequence reversed.
    pub fn reversed(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Order of vanishing at 0: the index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Squarefree part `f / gcd(f, f')`, normalized monic.
    pub fn squarefree_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = Poly::gcd(self, &self.derivative());
        self.div_rem(&g).0.monic()
    }
}

/// Integer coefficients of `p` with denominators cleared and content
/// removed (primitive, low degree first).
fn int_primitive(p: &Poly) -> Vec<num_bigint::BigInt> {
    use num_integer::Integer;
    let mut lcm = num_bigint::BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<num_bigint::BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    int_primitive_part(ints)
}

/// Divides out the integer content; the zero polynomial stays empty.
fn int_primitive_part(mut v: Vec<num_bigint::BigInt>) -> Vec<num_bigint::BigInt> {
    use num_integer::Integer;
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut content = num_bigint::BigInt::zero();
    for c in &v {
        content = content.gcd(c);
        if content.is_one() {
            return v;
        }
    }
    for c in &mut v {
        *c = &*c / &content;
    }
    v
}

/// One full pseudo-remainder: the remainder of `lc(b)^k * a` by `b` over the
/// integers (the scale factor is irrelevant — callers take primitive parts).
fn int_pseudo_rem(a: &[num_bigint::BigInt], b: &[num_bigint::BigInt]) -> Vec<num_bigint::BigInt> {
    let db = b.len() - 1;
    let lc = b.last().expect("divisor is nonzero").clone();
    let mut rem = a.to_vec();
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let r_lead = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c *= &lc;
        }
        for i in 0..=db {
            rem[k + i] -= &r_lead * &b[i];
        }
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
    }
    rem
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Prints in the expression grammar accepted by the parser, e.g.
/// `z^3 - 3/2*z + 1`. Parsing the output reproduces the polynomial exactly.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rat::zero();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if deg == 0 {
                write!(f, "{}", rat_to_string(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", rat_to_string(&mag))?;
                }
                if deg == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{deg}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{rat, rat_int};

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        let q = Poly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(q.degree(), Some(0));
        assert!(Poly::from_coeffs(vec![rat_int(0)]).is_zero());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[1, 0, -3, 7, 2]);
        let b = p(&[2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_common_factor() {
        // (z-1)(z+2) and (z-1)(z-3) share z-1
        let a = &Poly::z_minus(&rat_int(1)) * &Poly::z_minus(&rat_int(-2));
        let b = &Poly::z_minus(&rat_int(1)) * &Poly::z_minus(&rat_int(3));
        assert_eq!(Poly::gcd(&a, &b), Poly::z_minus(&rat_int(1)));
    }

    #[test]
    fn shift_is_composition() {
        let f = p(&[1, -2, 0, 1]); // 1 - 2z + z^3
        let g = f.shift(&rat_int(3)); // f(z+3)
        for x in -3..=3 {
            assert_eq!(g.eval(&rat_int(x)), f.eval(&rat_int(x + 3)));
        }
    }

    #[test]
    fn display_round_trips_via_parser() {
        use crate::arith::parse::parse_ratfunc;
        let f = Poly::from_coeffs(vec![rat(-1, 2), rat_int(0), rat_int(1), rat(3, 4)]);
        let shown = f.to_string();
        let back = parse_ratfunc(&shown).unwrap();
        assert_eq!(back.num(), &f);
        assert_eq!(back.den(), &Poly::one());
    }

    #[test]
    fn squarefree_part_drops_multiplicity() {
        let f = &Poly::z_minus(&rat_int(2)).pow(3) * &Poly::z_minus(&rat_int(-1));
        let sf = f.squarefree_part();
        assert_eq!(
            sf,
            &Poly::z_minus(&rat_int(2)) * &Poly::z_minus(&rat_int(-1))
        );
    }
}
