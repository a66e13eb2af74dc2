use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

use super::ProjectiveMap;

/// A polynomial map of affine `m`-space, `x -> (psi_1(x), ..., psi_m(x))`.
///
/// Components live in the ring of [`Polynomial`]s with ambient `n = m` and
/// use only the variables `X1..Xm`; `X0` never occurs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffinePolyMap {
    dim: usize,
    components: Vec<Polynomial>,
}

impl AffinePolyMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let dim = components.len();
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "affine map needs at least one component".into(),
            ));
        }
        for (i, p) in components.iter().enumerate() {
            if p.ambient_n() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.ambient_n(),
                });
            }
            if p.involves(0) {
                return Err(Error::InvalidParameter(format!(
                    "affine component {} involves X0; use X1..X{dim}",
                    i + 1
                )));
            }
        }
        Ok(AffinePolyMap { dim, components })
    }

    pub fn identity(dim: usize) -> Self {
        AffinePolyMap {
            dim,
            components: (1..=dim).map(|i| Polynomial::var(dim, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// Largest total degree among the components (0 for constant maps).
    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .filter_map(Polynomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    fn images(&self) -> Vec<Polynomial> {
        // X0 never occurs, so its image is irrelevant
        let mut images = Vec::with_capacity(self.dim + 1);
        images.push(Polynomial::one(self.dim));
        images.extend(self.components.iter().cloned());
        images
    }

    /// `self ∘ inner`, i.e. `x -> self(inner(x))`.
    pub fn compose(&self, inner: &AffinePolyMap) -> Result<AffinePolyMap> {
        if self.dim != inner.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: inner.dim,
            });
        }
        let images = inner.images();
        let components = self
            .components
            .iter()
            .map(|p| p.substitute(&images))
            .collect::<Result<Vec<_>>>()?;
        AffinePolyMap::new(components)
    }

    /// Substitutes the components of `inner` into a polynomial in `X1..Xm`.
    pub fn pull_back(&self, p: &Polynomial) -> Result<Polynomial> {
        p.substitute(&self.images())
    }

    /// Determinant of the Jacobian matrix, computed exactly.
    pub fn jacobian_det(&self) -> Polynomial {
        let m = self.dim;
        let jac: Vec<Vec<Polynomial>> = self
            .components
            .iter()
            .map(|p| (1..=m).map(|v| p.derivative(v)).collect())
            .collect();
        let cols: Vec<usize> = (0..m).collect();
        laplace_det(&jac, 0, &cols, m)
    }

    /// Homogenizes with `X0`: `[X0^D : X0^D psi_1(X/X0) : ...]`, reduced to
    /// the coprime representative. `D` is the largest component degree.
    pub fn embed(&self) -> Result<ProjectiveMap> {
        let n = self.dim;
        if self.components.iter().all(Polynomial::is_zero) {
            return Err(Error::AllZeroTuple);
        }
        let d = self.degree().max(1);
        let mut comps = Vec::with_capacity(n + 1);
        comps.push(Polynomial::var(n, 0).pow(d));
        for p in &self.components {
            comps.push(homogenize(p, 0, d));
        }
        Ok(ProjectiveMap::new(comps)?.normalized())
    }
}

/// Pads every term of `p` with powers of `X_v` up to total degree `d`.
pub(crate) fn homogenize(p: &Polynomial, v: usize, d: u32) -> Polynomial {
    p.reindex(p.ambient_n(), |e| {
        let t = e.total();
        debug_assert!(t <= d);
        e.with(v, e.get(v) + (d - t))
    })
}

fn laplace_det(m: &[Vec<Polynomial>], row: usize, cols: &[usize], n: usize) -> Polynomial {
    if cols.is_empty() {
        return Polynomial::one(n);
    }
    let mut acc = Polynomial::zero(n);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = laplace_det(m, row + 1, &rest, n);
        let term = entry * &minor;
        acc = if k % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

impl fmt::Display for AffinePolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for AffinePolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffinePolyMap[m={}]{}", self.dim, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::integer;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn triangular3() -> AffinePolyMap {
        let m = 3;
        AffinePolyMap::new(vec![
            &x(m, 1) + &x(m, 2).pow(2),
            &x(m, 2) + &x(m, 3).pow(2),
            x(m, 3),
        ])
        .unwrap()
    }

    #[test]
    fn triangular_map_has_unit_jacobian() {
        assert_eq!(triangular3().jacobian_det(), Polynomial::one(3));
    }

    #[test]
    fn scaling_jacobian() {
        let m = 2;
        let psi = AffinePolyMap::new(vec![x(m, 1).scale(&integer(2)), x(m, 2)]).unwrap();
        assert_eq!(psi.jacobian_det(), Polynomial::from_int(m, 2));
    }

    #[test]
    fn embedding_identity_and_triangular() {
        assert_eq!(
            AffinePolyMap::identity(3).embed().unwrap(),
            ProjectiveMap::identity(3)
        );
        let n = 3;
        let f = triangular3().embed().unwrap();
        let expected = ProjectiveMap::new(vec![
            x(n, 0).pow(2),
            &(&x(n, 0) * &x(n, 1)) + &x(n, 2).pow(2),
            &(&x(n, 0) * &x(n, 2)) + &x(n, 3).pow(2),
            &x(n, 0) * &x(n, 3),
        ])
        .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn translation_embeds_with_x0_term() {
        let m = 3;
        let psi =
            AffinePolyMap::new(vec![&x(m, 1) + &Polynomial::one(m), x(m, 2), x(m, 3)]).unwrap();
        let f = psi.embed().unwrap();
        assert_eq!(f.component(1), &(&x(m, 1) + &x(m, 0)));
        assert_eq!(f.component(1).x0_degree().unwrap(), 1);
    }

    #[test]
    fn rejects_x0() {
        assert!(AffinePolyMap::new(vec![x(1, 0)]).is_err());
    }

    #[test]
    fn composition_order() {
        let m = 2;
        let psi = AffinePolyMap::new(vec![&x(m, 1) + &x(m, 2).pow(2), x(m, 2)]).unwrap();
        let phi = AffinePolyMap::new(vec![x(m, 1), &x(m, 2) + &Polynomial::one(m)]).unwrap();
        // psi(phi(x)) = (x1 + (x2 + 1)^2, x2 + 1)
        let c = psi.compose(&phi).unwrap();
        assert_eq!(
            c.components()[0],
            &x(m, 1) + &(&x(m, 2) + &Polynomial::one(m)).pow(2)
        );
    }
}
