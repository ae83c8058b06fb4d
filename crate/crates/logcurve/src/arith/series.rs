//! Laurent expansions of rational functions at points of the projective line.
//!
//! A point is either a finite rational `p` or the point at infinity. Every
//! point carries a canonical uniformizer (`z - p`, respectively `1/z`), and
//! any other local parameter differs from it by a unit: a rational function
//! that is regular and nonvanishing at the point. Expansions with respect to
//! an arbitrary uniformizer are computed by first expanding canonically and
//! then greedily re-expanding in powers of the new parameter.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rat::Rat;
use super::ratfunc::RatFunc;
use super::ArithError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PointOnLine {
    Finite(Rat),
    Infinity,
}

impl PointOnLine {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            PointOnLine::Finite(p) => Some(p),
            PointOnLine::Infinity => None,
        }
    }
}

impl PartialOrd for PointOnLine {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite points in numeric order, infinity last.
impl Ord for PointOnLine {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PointOnLine::Finite(a), PointOnLine::Finite(b)) => a.cmp(b),
            (PointOnLine::Finite(_), PointOnLine::Infinity) => Ordering::Less,
            (PointOnLine::Infinity, PointOnLine::Finite(_)) => Ordering::Greater,
            (PointOnLine::Infinity, PointOnLine::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for PointOnLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointOnLine::Finite(p) => write!(f, "{}", super::rat::rat_to_string(p)),
            PointOnLine::Infinity => write!(f, "inf"),
        }
    }
}

/// A local parameter at a point: `unit * (z - p)` at a finite point,
/// `unit * (1/z)` at infinity, where `unit` is regular and nonvanishing
/// at the point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Uniformizer {
    point: PointOnLine,
    unit: RatFunc,
}

impl Uniformizer {
    pub fn canonical(point: PointOnLine) -> Self {
        Uniformizer {
            point,
            unit: RatFunc::one(),
        }
    }

    pub fn with_unit(point: PointOnLine, unit: RatFunc) -> Result<Self, ArithError> {
        let ok = match &point {
            PointOnLine::Finite(p) => match unit.eval(p) {
                None => false,
                Some(v) => !v.is_zero(),
            },
            PointOnLine::Infinity => unit.num().degree() == unit.den().degree(),
        };
        if ok {
            Ok(Uniformizer { point, unit })
        } else {
            Err(ArithError::InvalidUnit(format!(
                "{unit} is not regular and nonvanishing at {point}"
            )))
        }
    }

    pub fn point(&self) -> &PointOnLine {
        &self.point
    }

    pub fn unit(&self) -> &RatFunc {
        &self.unit
    }

    pub fn is_canonical(&self) -> bool {
        self.unit == RatFunc::one()
    }

    /// The parameter as a global rational function of `z`.
    pub fn as_function(&self) -> RatFunc {
        match &self.point {
            PointOnLine::Finite(p) => &self.unit * &RatFunc::from_poly(Poly::z_minus(p)),
            PointOnLine::Infinity => self
                .unit
                .checked_div(&RatFunc::var())
                .expect("z is nonzero"),
        }
    }
}

/// An initial segment of a Laurent expansion: the coefficients of
/// `t^start, ..., t^(end-1)` of some function with respect to a uniformizer
/// `t`. Coefficients below `start` are exactly zero; coefficients at `end`
/// and beyond were not computed, and asking for them panics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPrefix {
    uniformizer: Uniformizer,
    start: i64,
    coeffs: Vec<Rat>,
}

impl LaurentPrefix {
    pub fn uniformizer(&self) -> &Uniformizer {
        &self.uniformizer
    }

    /// Exponent of the first stored coefficient.
    pub fn start(&self) -> i64 {
        self.start
    }

    /// One past the last computed exponent.
    pub fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> Rat {
        if k < self.start {
            return Rat::zero();
        }
        assert!(
            k < self.end(),
            "coefficient of t^{k} lies beyond the computed window (end {})",
            self.end()
        );
        self.coeffs[(k - self.start) as usize].clone()
    }

    /// Order of the first nonzero computed coefficient; `None` when every
    /// computed coefficient vanishes.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.start + i as i64)
    }

    /// The finite sum of the stored terms, as a rational function of `z`.
    pub fn resum(&self) -> RatFunc {
        let t = self.uniformizer.as_function();
        let mut acc = RatFunc::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.start + i as i64;
            let tk = if k >= 0 {
                t.pow(k as u32)
            } else {
                t.inv().expect("uniformizers are nonzero").pow((-k) as u32)
            };
            acc = &acc + &tk.scale(c);
        }
        acc
    }
}

/// Order of vanishing of `f` at a point (negative at a pole); `None` for the
/// zero function.
pub fn valuation_at(f: &RatFunc, point: &PointOnLine) -> Option<i64> {
    if f.is_zero() {
        return None;
    }
    Some(match point {
        PointOnLine::Finite(p) => {
            let a = f.num().shift(p).valuation().expect("nonzero") as i64;
            let b = f.den().shift(p).valuation().expect("nonzero") as i64;
            a - b
        }
        PointOnLine::Infinity => {
            f.den().degree().expect("nonzero") as i64 - f.num().degree().expect("nonzero") as i64
        }
    })
}

/// Laurent coefficients of `f` with respect to the given uniformizer, through
/// exponent `order_hi` inclusive.
pub fn laurent_expand(f: &RatFunc, uni: &Uniformizer, order_hi: i64) -> LaurentPrefix {
    let empty = |start| LaurentPrefix {
        uniformizer: uni.clone(),
        start,
        coeffs: Vec::new(),
    };
    if f.is_zero() {
        return empty(order_hi + 1);
    }

    // Move the point to 0 (a single Taylor shift each for numerator and
    // denominator; the same shifted polynomials also give the valuation),
    // then peel off `w^v` so both series have nonzero constant terms.
    let drop = |q: Poly| {
        let k = q.valuation().expect("nonzero");
        (k as i64, Poly::from_coeffs(q.coeffs()[k..].to_vec()))
    };
    let (num_unit, den_unit, v) = match uni.point() {
        PointOnLine::Finite(p) => {
            let (vn, n) = drop(f.num().shift(p));
            let (vd, d) = drop(f.den().shift(p));
            (n, d, vn - vd)
        }
        PointOnLine::Infinity => {
            let v = f.den().degree().expect("nonzero") as i64
                - f.num().degree().expect("nonzero") as i64;
            (f.num().reversed(), f.den().reversed(), v)
        }
    };
    if order_hi < v {
        return empty(order_hi + 1);
    }
    let window = (order_hi - v + 1) as usize;
    let canonical = ser_mul(
        &ser_trunc(&num_unit, window),
        &ser_inv(&ser_trunc(&den_unit, window), window),
        window,
    );

    let coeffs = if uni.is_canonical() {
        canonical
    } else {
        reexpand_in_unit(canonical, v, uni, window)
    };
    LaurentPrefix {
        uniformizer: uni.clone(),
        start: v,
        coeffs,
    }
}

/// Constant term of the expansion of `f` in the given uniformizer. This is
/// the evaluation map on functions regular at the point, extended to
/// arbitrary functions by discarding the principal part.
pub fn eval_eps(f: &RatFunc, uni: &Uniformizer) -> Rat {
    laurent_expand(f, uni, 0).coeff(0)
}

/// Rewrites a canonical expansion `sum a_n w^n` (starting at exponent `v`) as
/// an expansion in `t = c(w) * w`, where `c` is the expansion of the unit.
/// Greedy: the lowest remaining term fixes the next coefficient.
fn reexpand_in_unit(canonical: Vec<Rat>, v: i64, uni: &Uniformizer, window: usize) -> Vec<Rat> {
    let c = {
        let exp = laurent_expand(
            uni.unit(),
            &Uniformizer::canonical(uni.point().clone()),
            window as i64 - 1,
        );
        debug_assert_eq!(exp.start(), 0, "units have valuation zero");
        let mut c = exp.coeffs().to_vec();
        c.resize(window, Rat::zero());
        c
    };
    let c0 = c[0].clone();

    // c^v and c0^v for the (possibly negative) starting exponent
    let c_inv = ser_inv(&c, window);
    let mut c_pow = {
        let base = if v >= 0 { &c } else { &c_inv };
        let mut acc = ser_one(window);
        for _ in 0..v.unsigned_abs() {
            acc = ser_mul(&acc, base, window);
        }
        acc
    };
    let mut c0_pow = {
        let base = if v >= 0 { c0.clone() } else { Rat::one() / &c0 };
        let mut acc = Rat::one();
        for _ in 0..v.unsigned_abs() {
            acc *= &base;
        }
        acc
    };

    let mut rem = canonical;
    let mut out = Vec::with_capacity(window);
    for idx in 0..window {
        let b = &rem[idx] / &c0_pow;
        if !b.is_zero() {
            // subtract b * t^n = b * w^n * c(w)^n, aligned at offset idx
            for j in 0..(window - idx) {
                let t = &b * &c_pow[j];
                rem[idx + j] -= t;
            }
        }
        out.push(b);
        c_pow = ser_mul(&c_pow, &c, window);
        c0_pow *= &c0;
    }
    out
}

// ---- truncated power series on coefficient slices ----

fn ser_one(n: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[0] = Rat::one();
    v
}

fn ser_trunc(p: &Poly, n: usize) -> Vec<Rat> {
    (0..n).map(|i| p.coeff(i)).collect()
}

fn ser_mul(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            let t = x * y;
            out[i + j] += t;
        }
    }
    out
}

/// Multiplicative inverse of a series with nonzero constant term.
fn ser_inv(a: &[Rat], n: usize) -> Vec<Rat> {
    assert!(!a[0].is_zero(), "series inverse needs a unit constant term");
    let mut out = vec![Rat::zero(); n];
    out[0] = Rat::one() / &a[0];
    for k in 1..n {
        let mut s = Rat::zero();
        for i in 1..=k {
            if let Some(ai) = a.get(i) {
                s += ai * &out[k - i];
            }
        }
        out[k] = -s / &a[0];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_ratfunc;
    use crate::arith::rat::{rat, rat_int};

    fn fin(p: i64) -> PointOnLine {
        PointOnLine::Finite(rat_int(p))
    }

    #[test]
    fn geometric_series_at_zero() {
        // 1/(1-z) = 1 + z + z^2 + ...
        let f = parse_ratfunc("1/(1-z)").unwrap();
        let e = laurent_expand(&f, &Uniformizer::canonical(fin(0)), 3);
        assert_eq!(e.start(), 0);
        assert_eq!(
            e.coeffs(),
            &[rat_int(1), rat_int(1), rat_int(1), rat_int(1)]
        );
    }

    #[test]
    fn principal_part_at_a_double_pole() {
        // 1/z^2 + 3/z + 2 exactly
        let f = parse_ratfunc("(2*z^2 + 3*z + 1)/z^2").unwrap();
        let e = laurent_expand(&f, &Uniformizer::canonical(fin(0)), 1);
        assert_eq!(e.start(), -2);
        assert_eq!(e.coeff(-2), rat_int(1));
        assert_eq!(e.coeff(-1), rat_int(3));
        assert_eq!(e.coeff(0), rat_int(2));
        assert_eq!(e.coeff(1), rat_int(0));
        assert_eq!(e.coeff(-5), rat_int(0)); // below the valuation
    }

    #[test]
    fn expansion_at_infinity() {
        // z^2/(z-1) = z + 1 + 1/z + ... in s = 1/z: s^{-1} + 1 + s + s^2 + ...
        let f = parse_ratfunc("z^2/(z-1)").unwrap();
        let e = laurent_expand(&f, &Uniformizer::canonical(PointOnLine::Infinity), 2);
        assert_eq!(e.start(), -1);
        assert_eq!(
            e.coeffs(),
            &[rat_int(1), rat_int(1), rat_int(1), rat_int(1)]
        );
    }

    #[test]
    fn expansion_window_short_of_valuation_is_empty() {
        let f = parse_ratfunc("z^3").unwrap();
        let e = laurent_expand(&f, &Uniformizer::canonical(fin(0)), 1);
        assert_eq!(e.valuation(), None);
        assert_eq!(e.coeff(0), rat_int(0));
    }

    #[test]
    fn unit_reexpansion_of_simple_pole() {
        // t = (2 + z) * z at 0; 1/z = (2 + z)/t, and 2 + z = 2 + t/2 + O(t^2),
        // so 1/z = 2/t + 1/2 + O(t).
        let unit = parse_ratfunc("2 + z").unwrap();
        let uni = Uniformizer::with_unit(fin(0), unit).unwrap();
        let f = parse_ratfunc("1/z").unwrap();
        let e = laurent_expand(&f, &uni, 0);
        assert_eq!(e.coeff(-1), rat_int(2));
        assert_eq!(e.coeff(0), rat(1, 2));
    }

    #[test]
    fn eps_is_plain_evaluation_on_regular_functions() {
        let f = parse_ratfunc("(z^2+1)/(z-3)").unwrap();
        let uni = Uniformizer::canonical(fin(1));
        assert_eq!(eval_eps(&f, &uni), f.eval(&rat_int(1)).unwrap());
    }

    #[test]
    fn eps_depends_on_the_unit_for_singular_functions() {
        // with t = (u0 + u1 z) z, the constant term of 1/z is u1/u0
        let unit = parse_ratfunc("3 + 5*z").unwrap();
        let uni = Uniformizer::with_unit(fin(0), unit).unwrap();
        let f = parse_ratfunc("1/z").unwrap();
        assert_eq!(eval_eps(&f, &uni), rat(5, 3));
    }

    #[test]
    fn invalid_units_are_rejected() {
        // vanishes at the point
        assert!(Uniformizer::with_unit(fin(0), parse_ratfunc("z").unwrap()).is_err());
        // pole at the point
        assert!(Uniformizer::with_unit(fin(0), parse_ratfunc("1/z").unwrap()).is_err());
        // degree mismatch at infinity
        assert!(
            Uniformizer::with_unit(PointOnLine::Infinity, parse_ratfunc("z").unwrap()).is_err()
        );
        assert!(Uniformizer::with_unit(
            PointOnLine::Infinity,
            parse_ratfunc("(z+1)/(z-1)").unwrap()
        )
        .is_ok());
    }

    #[test]
    fn resummation_matches_to_computed_order() {
        let f = parse_ratfunc("(z^2 + 1)/(z^2*(z - 2))").unwrap();
        for uni in [
            Uniformizer::canonical(fin(0)),
            Uniformizer::with_unit(fin(0), parse_ratfunc("1 + z").unwrap()).unwrap(),
        ] {
            let e = laurent_expand(&f, &uni, 4);
            let diff = &f - &e.resum();
            let val = valuation_at(&diff, uni.point());
            assert!(val.is_none_or(|v| v > 4), "tail should start beyond t^4");
        }
    }
}
