//! Conjugation action of words in `a1^2, a2^2` on maps, and the bounded
//! orbit classification of diagonal maps.
//!
//! A word `w = x1 x2 ... xk` denotes the composite `W = x1 ∘ x2 ∘ ... ∘ xk`
//! and acts by `w(f) = W ∘ f ∘ W^-1`; this is a left action. Since `rho`
//! reverses products, `rho(W)` is the product of the generator matrices in
//! reverse letter order.

use num_traits::One;

use crate::error::{Error, Result};
use crate::families::{diagonal_map, monomial_map, rho_a1, rho_a2, DiagonalSpec};
use crate::lattice::LatticeMatrix;
use crate::maps::ProjectiveMap;
use crate::poly::Rational;

use super::certificate::GeneratorImages;
use super::word::GroupWord;

/// Matrix images `rho(a1)^2, rho(a2)^2` of the free generators.
pub fn free_generator_matrices(n: usize) -> Result<(LatticeMatrix, LatticeMatrix)> {
    Ok((rho_a1(n)?.checked_pow(2)?, rho_a2(n)?.checked_pow(2)?))
}

/// `rho(W)` for the composite `W` of the word.
pub fn word_rho(n: usize, w: &GroupWord) -> Result<LatticeMatrix> {
    let (a, b) = free_generator_matrices(n)?;
    let gens = GeneratorImages::new(a, b)?;
    let reversed = GroupWord::new(&w.letters().iter().rev().copied().collect::<Vec<_>>());
    gens.eval(&reversed)
}

/// The monomial map `W` represented by the word.
pub fn word_element(n: usize, w: &GroupWord) -> Result<ProjectiveMap> {
    monomial_map(&word_rho(n, w)?)
}

/// `w(f) = W ∘ f ∘ W^-1`, normalized.
pub fn conjugate_by_word(w: &GroupWord, f: &ProjectiveMap) -> Result<ProjectiveMap> {
    if w.is_empty() {
        return Ok(f.clone());
    }
    let n = f.ambient_n();
    let outer = word_element(n, w)?;
    let inner = word_element(n, &w.inverse())?;
    outer.compose(&f.compose(&inner, true)?, true)
}

/// Diagonal map over formal symbols: `l_i = prod_j t_j^(E_ji)`, i.e.
/// column `i` of the exponent matrix carries the exponents of `l_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicDiagonal {
    pub exponents: LatticeMatrix,
}

impl SymbolicDiagonal {
    /// The generic diagonal `(t1, ..., tn)`.
    pub fn generic(n: usize) -> Self {
        SymbolicDiagonal {
            exponents: LatticeMatrix::identity(n),
        }
    }

    /// `(t, t, ..., t)` with one symbol.
    pub fn all_equal(n: usize) -> Self {
        let mut rows = vec![vec![0; n]; n];
        rows[0] = vec![1; n];
        SymbolicDiagonal {
            exponents: LatticeMatrix::from_rows(&rows).expect("square"),
        }
    }

    /// Exponent matrix after conjugating by a monomial map with matrix `m`.
    pub fn conjugated(&self, m: &LatticeMatrix) -> Result<SymbolicDiagonal> {
        Ok(SymbolicDiagonal {
            exponents: self.exponents.checked_mul(m)?,
        })
    }

    /// All scalars are the same monomial, so every `SL'_n(Z)` conjugate
    /// (columns summing to 1) leaves them unchanged.
    pub fn is_scalar(&self) -> bool {
        let n = self.exponents.dim();
        let first = self.exponents.column(0);
        (1..n).all(|j| self.exponents.column(j) == first)
    }
}

fn rational_pow(x: &Rational, k: i64) -> Rational {
    let base = if k < 0 { x.recip() } else { x.clone() };
    let mut acc = Rational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// `l'_j = prod_i l_i^(m_ij)`, the scalars of `W ∘ diag(l) ∘ W^-1` when
/// `rho(W) = m`.
pub fn conjugated_scalars(spec: &DiagonalSpec, m: &LatticeMatrix) -> Result<DiagonalSpec> {
    let n = spec.lambdas().len();
    if m.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.dim(),
        });
    }
    let lambdas = (0..n)
        .map(|j| {
            (0..n).fold(Rational::one(), |acc, i| {
                acc * rational_pow(&spec.lambdas()[i], m.get(i, j))
            })
        })
        .collect();
    DiagonalSpec::new(lambdas)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagonalInput {
    Symbolic(SymbolicDiagonal),
    Concrete(DiagonalSpec),
}

impl DiagonalInput {
    fn dim(&self) -> usize {
        match self {
            DiagonalInput::Symbolic(s) => s.exponents.dim(),
            DiagonalInput::Concrete(c) => c.lambdas().len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitClass {
    /// Fixed by every element of the free group (proved, not enumerated).
    FixedUnconditionally,
    /// Fixed by every reduced word of length at most the given bound.
    FixedUpTo(usize),
    /// Moved by the given word, the first in shortlex order.
    Moved(GroupWord),
}

/// Classifies a diagonal map under conjugation by reduced words of length
/// `<= max_len`, comparing scalars exactly (for diagonal maps, being
/// conjugate in the kernel of `rho` reduces to equality).
pub fn diag_orbit_classify(input: &DiagonalInput, max_len: usize) -> Result<OrbitClass> {
    if max_len == 0 {
        return Err(Error::InvalidParameter(
            "word length bound must be >= 1".into(),
        ));
    }
    let n = input.dim();
    if let DiagonalInput::Symbolic(s) = input {
        if s.is_scalar() {
            return Ok(OrbitClass::FixedUnconditionally);
        }
    }
    for len in 1..=max_len {
        for w in GroupWord::all_of_length(len) {
            let m = word_rho(n, &w)?;
            let moved = match input {
                DiagonalInput::Symbolic(s) => s.conjugated(&m)? != *s,
                DiagonalInput::Concrete(c) => conjugated_scalars(c, &m)? != *c,
            };
            if moved {
                return Ok(OrbitClass::Moved(w));
            }
        }
    }
    Ok(OrbitClass::FixedUpTo(max_len))
}

/// `diagonal_map(l^E(w))`, the prediction for `conjugate_by_word(w, diag(l))`.
pub fn predicted_conjugate_diagonal(w: &GroupWord, spec: &DiagonalSpec) -> Result<ProjectiveMap> {
    let m = word_rho(spec.lambdas().len(), w)?;
    Ok(diagonal_map(&conjugated_scalars(spec, &m)?))
}
