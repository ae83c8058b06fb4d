//! Exact extraction of the rational roots of a polynomial.
//!
//! No integer factorization is used. The polynomial is reduced to a monic
//! integer polynomial (whose rational roots are integers), candidate roots
//! are isolated by Sturm-chain bisection on half-integer endpoints — a
//! half-integer is never a root of a monic integer polynomial, so endpoint
//! signs are reliable — and each unit-length interval leaves exactly one
//! integer to test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rat::Rat;
use super::ratfunc::RatFunc;
use super::ArithError;

/// All rational roots of a nonzero polynomial, with multiplicities, sorted by
/// value; plus the monic cofactor left after dividing them out.
pub fn rational_roots(p: &Poly) -> (Vec<(Rat, usize)>, Poly) {
    assert!(!p.is_zero(), "root extraction of the zero polynomial");
    if p.degree() == Some(0) {
        return (Vec::new(), Poly::one());
    }

    let sf = p.squarefree_part();
    let (ints, scale) = monic_integer_model(&sf);
    let mut roots: Vec<(Rat, usize)> = integer_roots(&ints)
        .into_iter()
        .map(|c| {
            let r = Rat::new(c, scale.clone());
            let mut m = 0;
            let mut rest = p.clone();
            loop {
                let (q, rem) = rest.divide_linear(&r);
                if !rem.is_zero() {
                    break;
                }
                m += 1;
                rest = q;
            }
            debug_assert!(m >= 1);
            (r, m)
        })
        .collect();
    roots.sort_by(|a, b| a.0.cmp(&b.0));

    let mut cof = p.clone();
    for (r, m) in &roots {
        for _ in 0..*m {
            let (q, rem) = cof.divide_linear(r);
            debug_assert!(rem.is_zero());
            cof = q;
        }
    }
    (roots, cof.monic())
}

/// The rational poles of a function in lowest terms, with orders, sorted by
/// value. Fails when the denominator has an irreducible factor without a
/// rational root.
pub fn rational_poles(f: &RatFunc) -> Result<Vec<(Rat, usize)>, ArithError> {
    let (roots, cof) = rational_roots(f.den());
    if cof.degree().is_some_and(|d| d > 0) {
        return Err(ArithError::NonRationalPole {
            factor: cof.to_string(),
        });
    }
    Ok(roots)
}

/// Monic integer polynomial `G` with `G(a_n z) = a_n^(n-1) * (integer model
/// of g)(z)`, plus the scale `a_n`: rational roots of `g` are exactly the
/// integer roots of `G` divided by the scale.
fn monic_integer_model(g: &Poly) -> (Vec<BigInt>, BigInt) {
    let denom_lcm = g
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = g
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let content = ints
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c))
        .max(BigInt::one());
    let ints: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();

    let n = ints.len() - 1;
    let an = ints[n].clone();
    // pows[i] = a_n^(n-1-i)
    let mut pows = vec![BigInt::one(); n + 1];
    for i in (0..n.saturating_sub(1)).rev() {
        pows[i] = &pows[i + 1] * &an;
    }
    let mut monic: Vec<BigInt> = ints.iter().zip(&pows).map(|(c, p)| c * p).collect();
    monic[n] = BigInt::one();
    (monic, an)
}

/// Integer roots of a squarefree monic integer polynomial.
fn integer_roots(coeffs: &[BigInt]) -> Vec<BigInt> {
    let g = Poly::from_coeffs(coeffs.iter().cloned().map(Rat::from_integer).collect());
    if g.degree() == Some(0) {
        return Vec::new();
    }
    let chain = sturm_chain(&g);

    // Cauchy bound: all real roots lie in (-1 - max|a_i|, 1 + max|a_i|)
    let bound = coeffs.iter().map(Signed::abs).max().expect("nonempty") + 1;
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let lo = Rat::from_integer(-&bound) - &half;
    let hi = Rat::from_integer(bound) + &half;

    let mut out = Vec::new();
    isolate(&g, &chain, &lo, &hi, &mut out);
    out.sort();
    out
}

fn sturm_chain(g: &Poly) -> Vec<Poly> {
    let positive_scale = |p: Poly| match p.leading() {
        None => p,
        Some(lc) => {
            let s = Rat::one() / lc.abs();
            p.scale(&s)
        }
    };
    let mut chain = vec![positive_scale(g.clone()), positive_scale(g.derivative())];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        chain.push(positive_scale(-r));
    }
}

fn sign_variations(chain: &[Poly], x: &Rat) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_zero() {
            continue;
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Collects the integer roots of `g` in `(lo, hi)`; both endpoints are
/// half-integers, so neither is a root.
fn isolate(g: &Poly, chain: &[Poly], lo: &Rat, hi: &Rat, out: &mut Vec<BigInt>) {
    if sign_variations(chain, lo) == sign_variations(chain, hi) {
        return;
    }
    let len = (hi - lo).to_integer();
    if len.is_one() {
        let mid = lo + Rat::new(BigInt::one(), BigInt::from(2));
        debug_assert!(mid.is_integer());
        if g.eval(&mid).is_zero() {
            out.push(mid.to_integer());
        }
        return;
    }
    let m = lo + Rat::from_integer(len / 2);
    isolate(g, chain, lo, &m, out);
    isolate(g, chain, &m, hi, out);
}
