use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Exponents, Rational};
use crate::error::{Error, Result};

/// Sparse polynomial over the rationals in the variables `X0..Xn`.
///
/// Terms are keyed by exponent vectors; zero coefficients are never stored,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(n, Exponents::zero(n + 1), c)
    }

    pub fn from_int(n: usize, c: i64) -> Self {
        Self::constant(n, Rational::from_integer(c.into()))
    }

    /// The variable `X_i`.
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i <= n, "variable X{i} outside X0..X{n}");
        Self::monomial(n, Exponents::unit(n + 1, i), Rational::one())
    }

    pub fn monomial(n: usize, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), n + 1, "exponent vector length must be n + 1");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Polynomial { n, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Polynomial::zero(n);
        for (e, c) in terms {
            assert_eq!(e.len(), n + 1, "exponent vector length must be n + 1");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.total() == 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, e: &Exponents) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lex-maximal term.
    pub fn leading_term(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::total).max()
    }

    /// Total degree, if every term shares it. The zero polynomial has none.
    pub fn is_homogeneous(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Exponents::total);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Degree in `X0`.
    pub fn x0_degree(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("x0_degree"));
        }
        Ok(self.degree_in(0))
    }

    /// Degree in `X_v`; zero for the zero polynomial.
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e.get(v)).max().unwrap_or(0)
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e.get(v) > 0)
    }

    fn check_same_n(&self, other: &Polynomial) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_n(other)?;
        let mut out = Polynomial::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `X^e`.
    pub fn shift(&self, e: &Exponents) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.add(e), c.clone()))
                .collect(),
        }
    }

    /// Divides by the monomial `X^e`, which must divide every term.
    pub fn unshift(&self, e: &Exponents) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (a, c) in &self.terms {
            terms.insert(a.checked_sub(e)?, c.clone());
        }
        Some(Polynomial { n: self.n, terms })
    }

    /// Entrywise minimum of the exponent vectors: the largest monomial
    /// dividing every term.
    pub fn monomial_content(&self) -> Exponents {
        let mut it = self.terms.keys();
        match it.next() {
            None => Exponents::zero(self.n + 1),
            Some(first) => it.fold(first.clone(), |acc, e| acc.meet(e)),
        }
    }

    /// Scales so that the lex-leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// `h(images[0], ..., images[n])`, fully expanded.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.n + 1 {
            return Err(Error::ArityMismatch {
                expected: self.n + 1,
                found: images.len(),
            });
        }
        let m = images[0].n;
        if let Some(bad) = images.iter().find(|p| p.n != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: bad.n,
            });
        }
        // cache powers of each image up to the exponent actually needed
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(images.len());
        for (v, img) in images.iter().enumerate() {
            let top = self.degree_in(v) as usize;
            let mut row = Vec::with_capacity(top + 1);
            row.push(Polynomial::one(m));
            for k in 1..=top {
                let next = &row[k - 1] * img;
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = Polynomial::zero(m);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(m, c.clone());
            for (v, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    term = &term * &powers[v][k as usize];
                }
            }
            for (te, tc) in term.terms {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// Value at a point `(x0, ..., xn)`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.n + 1 {
            return Err(Error::ArityMismatch {
                expected: self.n + 1,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.as_slice()) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Sets `X_v = 0`.
    pub fn vanish(&self, v: usize) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.get(v) == 0)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sets `X_v = 1`.
    pub fn set_one(&self, v: usize) -> Polynomial {
        Polynomial::from_terms(
            self.n,
            self.terms.iter().map(|(e, c)| (e.with(v, 0), c.clone())),
        )
    }

    /// Coefficient of `X_v^k`, viewing the polynomial as univariate in `X_v`.
    pub fn coeff_in(&self, v: usize, k: u32) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.get(v) == k)
                .map(|(e, c)| (e.with(v, 0), c.clone()))
                .collect(),
        }
    }

    /// Leading coefficient in `X_v`.
    pub fn lc_in(&self, v: usize) -> Polynomial {
        self.coeff_in(v, self.degree_in(v))
    }

    /// Nonzero coefficients in `X_v`, from highest power down.
    pub fn coeffs_in(&self, v: usize) -> Vec<Polynomial> {
        let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            by_power
                .entry(e.get(v))
                .or_insert_with(|| Polynomial::zero(self.n))
                .add_term(e.with(v, 0), c.clone());
        }
        by_power.into_values().rev().collect()
    }

    pub fn derivative(&self, v: usize) -> Polynomial {
        Polynomial::from_terms(
            self.n,
            self.terms
                .iter()
                .filter(|(e, _)| e.get(v) > 0)
                .map(|(e, c)| {
                    let k = e.get(v);
                    (e.with(v, k - 1), c * Rational::from_integer(k.into()))
                }),
        )
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves
    /// a remainder.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.n, divisor.n, "dimension mismatch in division");
        let (dlead_e, dlead_c) = divisor.leading_term()?;
        if self.is_zero() {
            return Some(self.clone());
        }
        for v in 0..=self.n {
            if divisor.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let dlead_e = dlead_e.clone();
        let dlead_c = dlead_c.clone();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.n);
        while let Some((re, rc)) = rem.leading_term() {
            let qe = re.checked_sub(&dlead_e)?;
            let qc = rc / &dlead_c;
            for (e, c) in &divisor.terms {
                rem.add_term(e.add(&qe), -(c * &qc));
            }
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Re-embeds the polynomial in `X0..X_new_n`, mapping old exponent
    /// vectors through `f`.
    pub fn reindex<F>(&self, new_n: usize, f: F) -> Polynomial
    where
        F: Fn(&Exponents) -> Exponents,
    {
        Polynomial::from_terms(new_n, self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial dimensions differ")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial dimensions differ")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial dimensions differ")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || e.total() == 0 {
                factors.push(abs.to_string());
            }
            for (v, &k) in e.as_slice().iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(format!("X{v}")),
                    _ => factors.push(format!("X{v}^{k}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[n={}]({})", self.n, self)
    }
}
