//! Multivariate GCD over the rationals.
//!
//! Recursive content / primitive-part reduction: the inputs are viewed as
//! univariate in the lex-largest variable that occurs, contents are taken
//! recursively in the remaining variables, and the primitive parts are
//! handled with a subresultant remainder sequence.

use num_traits::One;

use super::Polynomial;
use crate::error::{Error, Result};

/// Monic greatest common divisor. `gcd(0, 0)` is `0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert_eq!(
        a.ambient_n(),
        b.ambient_n(),
        "gcd of polynomials in different rings"
    );
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let n = a.ambient_n();
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(n);
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let common = ma.meet(&mb);
    let a1 = a.unshift(&ma).expect("monomial content divides");
    let b1 = b.unshift(&mb).expect("monomial content divides");
    gcd_no_monomial(&a1, &b1).shift(&common).monic()
}

/// GCD of inputs that carry no monomial factor.
fn gcd_no_monomial(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let n = a.ambient_n();
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(n);
    }
    // cheap exits when one input divides the other
    let (small, large) = if a.num_terms() <= b.num_terms() {
        (a, b)
    } else {
        (b, a)
    };
    if large.divide_exact(small).is_some() {
        return small.monic();
    }
    let v = (0..=n)
        .find(|&v| a.involves(v) || b.involves(v))
        .expect("non-constant polynomial involves a variable");
    if !a.involves(v) {
        return gcd(a, &content_in(b, v));
    }
    if !b.involves(v) {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.divide_exact(&ca).expect("content divides");
    let pb = b.divide_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = subresultant_primitive_gcd(&pa, &pb, v);
    (&c * &g).monic()
}

/// GCD of the coefficients of `p` viewed as univariate in `X_v`.
pub fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    let coeffs = p.coeffs_in(v);
    let mut it = coeffs.iter();
    let mut g = match it.next() {
        None => return Polynomial::zero(p.ambient_n()),
        Some(c) => c.monic(),
    };
    for c in it {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, c);
    }
    if g.is_constant() {
        Polynomial::one(p.ambient_n())
    } else {
        g
    }
}

/// Primitive part of `p` with respect to `X_v`.
pub fn primitive_part_in(p: &Polynomial, v: usize) -> Polynomial {
    let c = content_in(p, v);
    p.divide_exact(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` as polynomials in `X_v`.
pub fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let n = a.ambient_n();
    let db = b.degree_in(v);
    let lcb = b.lc_in(v);
    let da = a.degree_in(v);
    if da < db {
        return a.clone();
    }
    let mut r = a.clone();
    let mut steps = 0u32;
    while !r.is_zero() && r.degree_in(v) >= db {
        let lr = r.lc_in(v);
        let k = r.degree_in(v) - db;
        let mut shift = super::Exponents::zero(n + 1);
        shift = shift.with(v, k);
        r = &(&r * &lcb) - &(&lr * &b.shift(&shift));
        steps += 1;
    }
    let e = da - db + 1;
    if steps < e {
        r = &r * &lcb.pow(e - steps);
    }
    r
}

/// Primitive GCD of two polynomials that both involve `X_v` and are
/// primitive with respect to it.
fn subresultant_primitive_gcd(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let n = a.ambient_n();
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = Polynomial::one(n);
    let mut h = Polynomial::one(n);
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part_in(&b, v).monic();
        }
        if r.degree_in(v) == 0 {
            return Polynomial::one(n);
        }
        a = b;
        let denom = &g * &h.pow(delta);
        b = r
            .divide_exact(&denom)
            .expect("subresultant division is exact");
        g = a.lc_in(v);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .divide_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    }
}

/// Divides every entry by the GCD of all entries. Returns the reduced tuple
/// and the removed factor.
pub fn primitive_tuple(tuple: &[Polynomial]) -> Result<(Vec<Polynomial>, Polynomial)> {
    let Some(first) = tuple.iter().find(|p| !p.is_zero()) else {
        return Err(Error::AllZeroTuple);
    };
    let n = first.ambient_n();
    if let Some(bad) = tuple.iter().find(|p| p.ambient_n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.ambient_n(),
        });
    }
    // smallest entries first: their gcd tends to collapse quickly
    let mut order: Vec<&Polynomial> = tuple.iter().filter(|p| !p.is_zero()).collect();
    order.sort_by_key(|p| (p.num_terms(), p.total_degree()));
    let mut g = order[0].monic();
    for p in &order[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, p);
    }
    if g.is_constant() {
        return Ok((tuple.to_vec(), Polynomial::one(n)));
    }
    let reduced = tuple
        .iter()
        .map(|p| p.divide_exact(&g).expect("gcd divides every entry"))
        .collect();
    debug_assert!(g.leading_coefficient().is_some_and(One::is_one));
    Ok((reduced, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn gcd_of_difference_of_squares_and_square() {
        let a = &x(1, 0).pow(2) - &x(1, 1).pow(2);
        let b = (&x(1, 0) + &x(1, 1)).pow(2);
        assert_eq!(gcd(&a, &b), &x(1, 0) + &x(1, 1));
    }

    #[test]
    fn coprime_inputs() {
        let a = &x(2, 0) + &x(2, 1);
        assert_eq!(gcd(&a, &x(2, 2)), Polynomial::one(2));
    }

    #[test]
    fn common_monomial_is_removed() {
        let t = [&x(2, 0) * &x(2, 2), &x(2, 1) * &x(2, 2), x(2, 2).pow(2)];
        let (p, g) = primitive_tuple(&t).unwrap();
        assert_eq!(p, vec![x(2, 0), x(2, 1), x(2, 2)]);
        assert_eq!(g, x(2, 2));
        let (again, g2) = primitive_tuple(&p).unwrap();
        assert_eq!(again, p);
        assert_eq!(g2, Polynomial::one(2));
    }

    #[test]
    fn all_zero_tuple_rejected() {
        assert_eq!(
            primitive_tuple(&[Polynomial::zero(1), Polynomial::zero(1)]).unwrap_err(),
            Error::AllZeroTuple
        );
    }

    #[test]
    fn multivariate_planted_factor() {
        let n = 3;
        let g = &(&x(n, 0).pow(2) + &(&x(n, 1) * &x(n, 2))) - &x(n, 3).pow(2);
        let a = &g * &(&x(n, 0) + &x(n, 3));
        let b = &g * &(&x(n, 1).pow(2) - &(&x(n, 0) * &x(n, 2)));
        assert_eq!(gcd(&a, &b), g.monic());
    }

    #[test]
    fn pseudo_remainder_matches_definition() {
        // prem(x^2 + y, y x + 1) in x: y^2 (x^2 + y) mod (y x + 1)
        let n = 1;
        let a = &x(n, 0).pow(2) + &x(n, 1);
        let b = &(&x(n, 1) * &x(n, 0)) + &Polynomial::one(n);
        let r = pseudo_remainder(&a, &b, 0);
        // y^2 x^2 + y^3 = (y x + 1)(y x - 1) + 1 + y^3
        assert_eq!(r, &Polynomial::one(n) + &x(n, 1).pow(3));
    }
}
