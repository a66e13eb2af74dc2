#![allow(dead_code)]

use cremona_core::families::ShearSpec;
use cremona_core::lattice::LatticeMatrix;
use cremona_core::maps::AffinePolyMap;
use cremona_core::poly::{integer, rational, Exponents, Polynomial, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

/// All exponent vectors of `X0..Xn` with total degree `deg`.
pub fn monomials(n: usize, deg: u32) -> Vec<Exponents> {
    fn rec(slots: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponents>) {
        if cur.len() + 1 == slots {
            cur.push(left);
            out.push(Exponents::from_vec(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(slots, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n + 1, deg, &mut Vec::new(), &mut out);
    out
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rational(p, q))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=4, 1i64..=3, any::<bool>())
        .prop_map(|(p, q, neg)| rational(if neg { -p } else { p }, q))
}

/// Arbitrary polynomial in `X0..Xn` with every exponent `<= max_exp`.
pub fn poly(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n + 1), small_rational()),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Polynomial::from_terms(
            n,
            terms.into_iter().map(|(e, c)| (Exponents::from_vec(e), c)),
        )
    })
}

pub fn nonzero_poly(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(n, max_exp, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Nonzero homogeneous polynomial of degree `deg`.
pub fn homogeneous(n: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let monos = monomials(n, deg);
    let count = monos.len();
    prop::collection::vec((0..count, nonzero_rational()), 1..=max_terms)
        .prop_map(move |picks| {
            Polynomial::from_terms(n, picks.into_iter().map(|(i, c)| (monos[i].clone(), c)))
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// `I + (e_i - e_j) e_k^T` with `i, j, k` distinct: column sums stay 1 and
/// the determinant is 1. The inverse swaps `i` and `j`.
pub fn elementary(n: usize, i: usize, j: usize, k: usize) -> LatticeMatrix {
    let mut col = LatticeMatrix::identity(n).column(k);
    col[i] += 1;
    col[j] -= 1;
    LatticeMatrix::identity(n).with_column(k, &col)
}

/// Products of up to `max_len` elementary generators of `SL'_n(Z)`.
pub fn sl_prime(n: usize, max_len: usize) -> impl Strategy<Value = LatticeMatrix> {
    prop::collection::vec((0..n, 0..n, 0..n), 0..=max_len).prop_map(move |word| {
        let mut m = LatticeMatrix::identity(n);
        for (i, j, k) in word {
            if i == j || j == k || i == k {
                continue;
            }
            m = m
                .checked_mul(&elementary(n, i, j, k))
                .expect("small entries");
        }
        m
    })
}

/// Triangular automorphism `x_i -> x_i + p_i(x_1, ..., x_(i-1))` of affine
/// `m`-space with `deg p_i <= d` and `p_i(0) = 0`.
pub fn triangular_psi(m: usize, d: u32) -> impl Strategy<Value = AffinePolyMap> {
    let parts: Vec<_> = (1..=m)
        .map(|i| {
            prop::collection::vec(
                (prop::collection::vec(0..=d, i - 1), nonzero_rational()),
                0..=3,
            )
        })
        .collect();
    parts.prop_map(move |parts| {
        let comps = parts
            .into_iter()
            .enumerate()
            .map(|(idx, terms)| {
                let i = idx + 1;
                let mut p = Polynomial::var(m, i);
                for (exps, c) in terms {
                    if exps.iter().sum::<u32>() == 0 || exps.iter().sum::<u32>() > d {
                        continue;
                    }
                    let mut e = vec![0u32; m + 1];
                    e[1..i].copy_from_slice(&exps);
                    p = &p + &Polynomial::monomial(m, Exponents::from_vec(e), c);
                }
                p
            })
            .collect();
        AffinePolyMap::new(comps).expect("no X0")
    })
}

/// Shear parameters in the invertible subfamily:
/// `lambda_d = X1^(d-1) X4 + c X2^d + (terms in X1, X2, X5..Xn)`.
pub fn shear_spec(n: usize, d: u32) -> impl Strategy<Value = ShearSpec> {
    let monos: Vec<Exponents> = monomials(n, d)
        .into_iter()
        .filter(|e| e.get(0) == 0 && e.get(3) == 0 && e.get(4) == 0)
        .collect();
    let count = monos.len();
    (
        nonzero_rational(),
        prop::collection::vec((0..count, nonzero_rational()), 0..=2),
    )
        .prop_map(move |(c, extra)| {
            let mut e = vec![0; n + 1];
            e[2] = d;
            let mut lam = Polynomial::monomial(n, Exponents::from_vec(e.clone()), c);
            for (i, a) in extra {
                lam = &lam + &Polynomial::monomial(n, monos[i].clone(), a);
            }
            let mut pure = Exponents::from_vec(e);
            if lam.coefficient(&pure).is_zero() {
                lam = &lam + &Polynomial::monomial(n, pure.clone(), integer(1));
            }
            pure = Exponents::from_vec({
                let mut v = vec![0; n + 1];
                v[1] = d - 1;
                v[4] = 1;
                v
            });
            lam = &lam + &Polynomial::monomial(n, pure, integer(1));
            ShearSpec::new(n, d, lam).expect("invariants hold by construction")
        })
}

/// Draws one value from `strategy` using `runner`'s deterministic RNG.
pub fn sample<S: Strategy>(strategy: &S, runner: &mut TestRunner) -> S::Value {
    strategy
        .new_tree(runner)
        .expect("strategy produces values")
        .current()
}
