//! Leading pairs, the valuation `v`, G-form recognition and `rho`.
//!
//! For a polynomial `h` in `X0..Xn`, its leading pair is `(d_h, I_h)`: the
//! degree of `h` in `X0` together with the lex-largest residual exponent
//! vector among the support elements of `X0`-degree `d_h`. Under the lex
//! order with `X0` first this is exactly the exponent of the leading term.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::LatticeMatrix;
use crate::maps::ProjectiveMap;
use crate::poly::{Polynomial, Rational};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeadingPair {
    pub x0_degree: u32,
    pub residual: Vec<u32>,
}

impl fmt::Debug for LeadingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.x0_degree, self.residual)
    }
}

pub fn leading_pair(h: &Polynomial) -> Result<LeadingPair> {
    let (e, _) = h
        .leading_term()
        .ok_or(Error::ZeroPolynomial("leading_pair"))?;
    Ok(LeadingPair {
        x0_degree: e.get(0),
        residual: e.residual().to_vec(),
    })
}

/// `v(h) = I_h`.
pub fn valuation(h: &Polynomial) -> Result<Vec<u32>> {
    leading_pair(h).map(|p| p.residual)
}

/// `v(f / g) = I_f - I_g`.
pub fn valuation_of_fraction(f: &Polynomial, g: &Polynomial) -> Result<Vec<i64>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("valuation_of_fraction"));
    }
    let a = valuation(f)?;
    let b = valuation(g)?;
    Ok(a.iter()
        .zip(&b)
        .map(|(&x, &y)| x as i64 - y as i64)
        .collect())
}

/// Data read off a tuple of the shape
/// `f0 = a0 X0^d X^I0 + (lower in X0)`, `fj = aj X0^(d-1) X^Ij + (lower)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GFormData {
    pub degree: u32,
    pub base: Vec<u32>,
    pub columns: Vec<Vec<u32>>,
    /// `a0, a1, ..., an`.
    pub alphas: Vec<Rational>,
}

impl GFormData {
    /// Matrix whose `j`-th column is `I_fj - I_f0`.
    pub fn matrix(&self) -> LatticeMatrix {
        let cols: Vec<Vec<i64>> = self
            .columns
            .iter()
            .map(|c| {
                c.iter()
                    .zip(&self.base)
                    .map(|(&a, &b)| a as i64 - b as i64)
                    .collect()
            })
            .collect();
        LatticeMatrix::from_columns(&cols).expect("n columns of length n")
    }
}

/// Checks the shape on the representative exactly as given.
pub fn g_form_of_representative(f: &ProjectiveMap) -> std::result::Result<GFormData, String> {
    let comps = f.components();
    let f0 = &comps[0];
    if f0.is_zero() {
        return Err("f0 is zero".into());
    }
    let degree = f0.degree_in(0);
    if degree == 0 {
        return Err("f0 has X0-degree 0; the shape needs d_f >= 1".into());
    }
    let (base, a0) = single_monomial_coefficient(f0, degree)
        .ok_or_else(|| format!("coefficient of X0^{degree} in f0 is not a single monomial"))?;
    let mut columns = Vec::with_capacity(comps.len() - 1);
    let mut alphas = vec![a0];
    for (j, fj) in comps.iter().enumerate().skip(1) {
        if fj.is_zero() {
            return Err(format!("f{j} is zero"));
        }
        let dj = fj.degree_in(0);
        if dj + 1 != degree {
            return Err(format!("f{j} has X0-degree {dj}, expected {}", degree - 1));
        }
        let (col, aj) = single_monomial_coefficient(fj, dj)
            .ok_or_else(|| format!("coefficient of X0^{dj} in f{j} is not a single monomial"))?;
        columns.push(col);
        alphas.push(aj);
    }
    Ok(GFormData {
        degree,
        base,
        columns,
        alphas,
    })
}

fn single_monomial_coefficient(p: &Polynomial, level: u32) -> Option<(Vec<u32>, Rational)> {
    let top = p.coeff_in(0, level);
    if !top.is_monomial() {
        return None;
    }
    let (e, c) = top.leading_term()?;
    Some((e.residual().to_vec(), c.clone()))
}

/// G-form test on the coprime representative. `None` is the negative answer.
pub fn g_form(f: &ProjectiveMap) -> Option<GFormData> {
    g_form_of_representative(&f.normalized()).ok()
}

fn g_form_or_err(f: &ProjectiveMap) -> Result<GFormData> {
    g_form_of_representative(&f.normalized()).map_err(Error::NotGForm)
}

/// `rho(f) = M_f`, the matrix with columns `I_fj - I_f0`.
pub fn rho(f: &ProjectiveMap) -> Result<LatticeMatrix> {
    Ok(g_form_or_err(f)?.matrix())
}

/// Membership in the group `G`: `f` and the supplied inverse are both in
/// G-form and really are mutually inverse.
pub fn is_in_group(f: &ProjectiveMap, inverse: &ProjectiveMap) -> Result<bool> {
    g_form_or_err(f)?;
    g_form_or_err(inverse).map_err(|e| Error::NotGForm(format!("inverse witness: {e}")))?;
    Ok(f.verify_inverse_pair(inverse))
}

/// Predicted leading pair of `h(f)`:
/// `(deg(h)(d_f - 1) + d_h, M_f I_h + deg(h) I_f0)`.
///
/// Uses the shape data of the representative `f` exactly as given, so the
/// prediction is comparable with `leading_pair(h.substitute(f.components()))`.
/// Requires `h` to have a single support element at `X0`-degree `d_h`.
pub fn predict_leading(h: &Polynomial, f: &ProjectiveMap) -> Result<LeadingPair> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial("predict_leading"));
    }
    if h.ambient_n() != f.ambient_n() {
        return Err(Error::DimensionMismatch {
            expected: f.ambient_n(),
            found: h.ambient_n(),
        });
    }
    let deg = h
        .is_homogeneous()
        .ok_or_else(|| Error::NotHomogeneous(format!("h = {h}")))?;
    let shape = g_form_of_representative(f).map_err(Error::NotGForm)?;
    let lead = leading_pair(h)?;
    let top = h.coeff_in(0, lead.x0_degree);
    if top.num_terms() != 1 {
        return Err(Error::LeadingHypothesis(format!(
            "h has {} support elements at X0-degree {}",
            top.num_terms(),
            lead.x0_degree
        )));
    }
    let m = shape.matrix();
    let ih: Vec<i64> = lead.residual.iter().map(|&x| x as i64).collect();
    let mi = m.apply(&ih)?;
    let residual = mi
        .iter()
        .zip(&shape.base)
        .map(|(&a, &b)| {
            let v = a + deg as i64 * b as i64;
            u32::try_from(v).map_err(|_| Error::LeadingHypothesis(format!("negative exponent {v}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LeadingPair {
        x0_degree: deg * (shape.degree - 1) + lead.x0_degree,
        residual,
    })
}
