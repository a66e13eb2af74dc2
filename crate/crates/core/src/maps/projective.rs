use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{primitive_tuple, Polynomial, Rational};

/// A rational self-map of `P^n` given by `n + 1` homogeneous polynomials of
/// one common degree, not all zero.
///
/// The representative is kept as given; [`ProjectiveMap::normalized`] removes
/// the common factor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectiveMap {
    n: usize,
    components: Vec<Polynomial>,
    degree: u32,
}

impl ProjectiveMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components
            .first()
            .map(Polynomial::ambient_n)
            .ok_or(Error::AllZeroTuple)?;
        if components.len() != n + 1 {
            return Err(Error::ArityMismatch {
                expected: n + 1,
                found: components.len(),
            });
        }
        if let Some(bad) = components.iter().find(|p| p.ambient_n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.ambient_n(),
            });
        }
        let mut degree = None;
        for (i, p) in components.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = p
                .is_homogeneous()
                .ok_or_else(|| Error::NotHomogeneous(format!("component {i} = {p}")))?;
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::NotHomogeneous(format!(
                        "component {i} has degree {d}, expected {d0}"
                    )))
                }
                _ => {}
            }
        }
        let degree = degree.ok_or(Error::AllZeroTuple)?;
        Ok(ProjectiveMap {
            n,
            components,
            degree,
        })
    }

    pub fn identity(n: usize) -> Self {
        ProjectiveMap {
            n,
            components: (0..=n).map(|i| Polynomial::var(n, i)).collect(),
            degree: 1,
        }
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    fn check_same_n(&self, other: &ProjectiveMap) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// The coprime representative, together with the removed common factor.
    pub fn normalized_with_factor(&self) -> (ProjectiveMap, Polynomial) {
        let (components, factor) =
            primitive_tuple(&self.components).expect("map has a nonzero component");
        let map = ProjectiveMap::new(components).expect("dividing by a common factor keeps shape");
        (map, factor)
    }

    pub fn normalized(&self) -> ProjectiveMap {
        self.normalized_with_factor().0
    }

    /// `self ∘ inner`: component `i` is `self_i(inner_0, ..., inner_n)`.
    pub fn compose(&self, inner: &ProjectiveMap, normalize: bool) -> Result<ProjectiveMap> {
        self.check_same_n(inner)?;
        let components = self
            .components
            .iter()
            .map(|g| g.substitute(&inner.components))
            .collect::<Result<Vec<_>>>()?;
        if components.iter().all(Polynomial::is_zero) {
            return Err(Error::ZeroComposition);
        }
        let map = ProjectiveMap::new(components)?;
        Ok(if normalize { map.normalized() } else { map })
    }

    /// Agreement as rational maps: `f_i g_j = f_j g_i` for all `i < j`.
    pub fn equals_projectively(&self, other: &ProjectiveMap) -> bool {
        if self.n != other.n {
            return false;
        }
        for i in 0..=self.n {
            for j in (i + 1)..=self.n {
                let lhs = &self.components[i] * &other.components[j];
                let rhs = &self.components[j] * &other.components[i];
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.equals_projectively(&ProjectiveMap::identity(self.n))
    }

    /// Both composites are the identity as rational maps.
    pub fn verify_inverse_pair(&self, other: &ProjectiveMap) -> bool {
        if self.n != other.n {
            return false;
        }
        let forward = match self.compose(other, false) {
            Ok(m) => m,
            Err(_) => return false,
        };
        if !forward.is_identity() {
            return false;
        }
        match other.compose(self, false) {
            Ok(m) => m.is_identity(),
            Err(_) => false,
        }
    }

    /// Components with `X_i = 0` substituted.
    pub fn restrict_to_hyperplane(&self, i: usize) -> Result<Restriction> {
        if i > self.n {
            return Err(Error::VariableOutOfRange {
                index: i,
                max: self.n,
            });
        }
        let components: Vec<Polynomial> = self.components.iter().map(|p| p.vanish(i)).collect();
        let all_zero = components.iter().all(Polynomial::is_zero);
        Ok(Restriction {
            hyperplane: i,
            components,
            all_zero,
        })
    }

    /// The point the hyperplane `X_i = 0` is sent to, if the restriction is
    /// constant as a map; `None` when the image is not a single point.
    pub fn contracts_to_point(&self, i: usize) -> Result<Option<ProjectivePoint>> {
        let r = self.restrict_to_hyperplane(i)?;
        if r.all_zero {
            return Err(Error::ZeroRestriction(i));
        }
        let image = r.sample_image()?;
        Ok(r.is_constant_at(&image).then_some(image))
    }

    /// Coordinatewise evaluation.
    pub fn evaluate(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        if p.coords.len() != self.n + 1 {
            return Err(Error::ArityMismatch {
                expected: self.n + 1,
                found: p.coords.len(),
            });
        }
        let coords = self
            .components
            .iter()
            .map(|c| c.evaluate(&p.coords))
            .collect::<Result<Vec<_>>>()?;
        ProjectivePoint::new(coords).map_err(|_| Error::BaseLocus(p.to_string()))
    }

    pub fn fixes_point(&self, p: &ProjectivePoint) -> Result<bool> {
        Ok(self.evaluate(p)? == *p)
    }
}

impl fmt::Display for ProjectiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

impl fmt::Debug for ProjectiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ProjectiveMap[n={}, deg={}]{}",
            self.n, self.degree, self
        )
    }
}

/// Components of a map after substituting `X_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub hyperplane: usize,
    pub components: Vec<Polynomial>,
    /// The hyperplane lies in the base locus of the representative.
    pub all_zero: bool,
}

/// Upper bound on grid points tried when looking for a sample point off the
/// base locus.
pub const MAX_SAMPLE_ATTEMPTS: usize = 1000;

const GRID_VALUES: [i64; 7] = [1, 2, 3, -1, -2, -3, 0];

impl Restriction {
    /// Deterministic grid of small-integer points on the hyperplane.
    pub fn grid_points(&self) -> impl Iterator<Item = Vec<Rational>> + '_ {
        let n = self.components.len() - 1;
        let free: Vec<usize> = (0..=n).filter(|&v| v != self.hyperplane).collect();
        let base = GRID_VALUES.len() as u64;
        let total = base.saturating_pow(free.len() as u32);
        (0..total)
            .map(move |mut idx| {
                let mut coords = vec![Rational::zero(); n + 1];
                for &v in &free {
                    coords[v] = Rational::from_integer(GRID_VALUES[(idx % base) as usize].into());
                    idx /= base;
                }
                coords
            })
            .filter(|c| c.iter().any(|x| !x.is_zero()))
    }

    fn value_at(&self, q: &[Rational]) -> Vec<Rational> {
        self.components
            .iter()
            .map(|c| c.evaluate(q).expect("point has n + 1 coordinates"))
            .collect()
    }

    /// Image of the first grid point not in the base locus.
    pub fn sample_image(&self) -> Result<ProjectivePoint> {
        self.grid_points()
            .take(MAX_SAMPLE_ATTEMPTS)
            .find_map(|q| ProjectivePoint::new(self.value_at(&q)).ok())
            .ok_or(Error::NoSamplePoint(self.hyperplane, MAX_SAMPLE_ATTEMPTS))
    }

    /// Image at an explicit point of the hyperplane.
    pub fn image_at(&self, q: &[Rational]) -> Result<ProjectivePoint> {
        ProjectivePoint::new(self.value_at(q)).map_err(|_| {
            Error::BaseLocus(format!(
                "[{}]",
                q.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(":")
            ))
        })
    }

    /// Symbolic check `r_a p_b - r_b p_a = 0` for all `a < b`.
    pub fn is_constant_at(&self, p: &ProjectivePoint) -> bool {
        let m = self.components.len();
        for a in 0..m {
            for b in (a + 1)..m {
                let lhs = self.components[a].scale(&p.coords[b]);
                let rhs = self.components[b].scale(&p.coords[a]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// A point of `P^n`, stored with its first nonzero coordinate scaled to 1 so
/// that derived equality is projective equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<Rational>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let pivot = coords
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(Error::AllZeroTuple)?;
        let coords = if pivot.is_one() {
            coords
        } else {
            let inv = pivot.recip();
            coords.into_iter().map(|c| c * &inv).collect()
        };
        Ok(ProjectivePoint { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(
            coords
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `[1 : 0 : ... : 0]` or, generally, the `i`-th coordinate point.
    pub fn coordinate_point(n: usize, i: usize) -> Self {
        let mut coords = vec![Rational::zero(); n + 1];
        coords[i] = Rational::one();
        ProjectivePoint { coords }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::integer;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn diag(lams: &[i64]) -> ProjectiveMap {
        let n = lams.len();
        let mut comps = vec![x(n, 0)];
        comps.extend(
            lams.iter()
                .enumerate()
                .map(|(i, &l)| x(n, i + 1).scale(&integer(l))),
        );
        ProjectiveMap::new(comps).unwrap()
    }

    #[test]
    fn rejects_mixed_degrees() {
        let err = ProjectiveMap::new(vec![x(1, 0), x(1, 1).pow(2)]).unwrap_err();
        assert!(matches!(err, Error::NotHomogeneous(_)));
        assert_eq!(
            ProjectiveMap::new(vec![Polynomial::zero(1), Polynomial::zero(1)]).unwrap_err(),
            Error::AllZeroTuple
        );
    }

    #[test]
    fn diagonal_group_law() {
        let f = diag(&[2, 3]);
        let g = diag(&[5, 7]);
        let gf = g.compose(&f, false).unwrap();
        assert_eq!(gf, diag(&[10, 21]));
    }

    #[test]
    fn common_factor_is_projectively_invisible() {
        let n = 2;
        let f = ProjectiveMap::identity(n);
        let g = ProjectiveMap::new(vec![
            &x(n, 0) * &x(n, 2),
            &x(n, 1) * &x(n, 2),
            x(n, 2).pow(2),
        ])
        .unwrap();
        assert!(f.equals_projectively(&g));
        assert_eq!(g.normalized(), f);
        assert!(!diag(&[1, 1]).equals_projectively(&diag(&[2, 1])));
    }

    #[test]
    fn identity_restriction() {
        let r = ProjectiveMap::identity(3)
            .restrict_to_hyperplane(0)
            .unwrap();
        assert_eq!(r.components[0], Polynomial::zero(3));
        assert_eq!(r.components[2], x(3, 2));
        assert!(!r.all_zero);
        assert!(ProjectiveMap::identity(3)
            .restrict_to_hyperplane(4)
            .is_err());
    }

    #[test]
    fn identity_does_not_contract() {
        let id = ProjectiveMap::identity(4);
        assert_eq!(id.contracts_to_point(3).unwrap(), None);
    }

    #[test]
    fn zero_restriction_is_an_error() {
        let n = 2;
        let f = ProjectiveMap::new(vec![
            &x(n, 0) * &x(n, 2),
            &x(n, 1) * &x(n, 2),
            x(n, 2).pow(2),
        ])
        .unwrap();
        assert_eq!(
            f.contracts_to_point(2).unwrap_err(),
            Error::ZeroRestriction(2)
        );
    }

    #[test]
    fn evaluation_and_base_locus() {
        let f = diag(&[2, 3, 5]);
        let p = ProjectivePoint::from_ints(&[1, 1, 1, 1]).unwrap();
        assert_eq!(
            f.evaluate(&p).unwrap(),
            ProjectivePoint::from_ints(&[1, 2, 3, 5]).unwrap()
        );
        let n = 2;
        let cremona = ProjectiveMap::new(vec![
            &x(n, 1) * &x(n, 2),
            &x(n, 0) * &x(n, 2),
            &x(n, 0) * &x(n, 1),
        ])
        .unwrap();
        let o = ProjectivePoint::coordinate_point(n, 0);
        assert!(matches!(cremona.evaluate(&o), Err(Error::BaseLocus(_))));
    }

    #[test]
    fn points_compare_projectively() {
        let a = ProjectivePoint::from_ints(&[2, 4, 0]).unwrap();
        let b = ProjectivePoint::from_ints(&[-1, -2, 0]).unwrap();
        assert_eq!(a, b);
        assert!(ProjectivePoint::from_ints(&[0, 0]).is_err());
    }

    #[test]
    fn diagonal_inverse_pair() {
        let n = 3;
        let f = diag(&[2, 3, 5]);
        let mut comps = vec![x(n, 0)];
        for (i, l) in [2, 3, 5].iter().enumerate() {
            comps.push(x(n, i + 1).scale(&crate::poly::rational(1, *l)));
        }
        let g = ProjectiveMap::new(comps).unwrap();
        assert!(f.verify_inverse_pair(&g));
        assert!(!f.verify_inverse_pair(&f));
    }
}
