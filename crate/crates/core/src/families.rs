//! Constructors for the explicit map families: diagonal maps, monomial maps
//! from `SL'_n(Z)`, sigma maps attached to affine automorphisms, the shear
//! maps and the pair `a1, a2`, plus the restriction homomorphism `xi`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::LatticeMatrix;
use crate::leading::g_form;
use crate::maps::{AffinePolyMap, ProjectiveMap};
use crate::poly::{Exponents, Polynomial, Rational};

/// Nonzero scalars `(l1, ..., ln)` of `[X0 : l1 X1 : ... : ln Xn]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalSpec {
    lambdas: Vec<Rational>,
}

impl DiagonalSpec {
    pub fn new(lambdas: Vec<Rational>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::InvalidParameter("need at least one scalar".into()));
        }
        if let Some(i) = lambdas.iter().position(Zero::is_zero) {
            return Err(Error::InvalidParameter(format!(
                "diagonal scalar l{} is zero",
                i + 1
            )));
        }
        Ok(DiagonalSpec { lambdas })
    }

    pub fn from_ints(lambdas: &[i64]) -> Result<Self> {
        Self::new(
            lambdas
                .iter()
                .map(|&l| Rational::from_integer(l.into()))
                .collect(),
        )
    }

    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }

    pub fn inverse(&self) -> DiagonalSpec {
        DiagonalSpec {
            lambdas: self.lambdas.iter().map(Rational::recip).collect(),
        }
    }
}

pub fn diagonal_map(spec: &DiagonalSpec) -> ProjectiveMap {
    let n = spec.lambdas.len();
    let mut comps = Vec::with_capacity(n + 1);
    comps.push(Polynomial::var(n, 0));
    for (i, l) in spec.lambdas.iter().enumerate() {
        comps.push(Polynomial::var(n, i + 1).scale(l));
    }
    ProjectiveMap::new(comps).expect("diagonal map is linear")
}

/// `[1 : X1 : ... : Xn] -> [1 : X^I1 : ... : X^In]` where `Ij` is column `j`
/// of `m`, written with the smallest power of `X0 X1..Xn` clearing negative
/// exponents and then reduced to the coprime representative.
pub fn monomial_map(m: &LatticeMatrix) -> Result<ProjectiveMap> {
    m.check_sl_prime()?;
    let n = m.dim();
    let clear: Vec<u32> = (0..n)
        .map(|i| (0..n).map(|j| -m.get(i, j)).max().unwrap_or(0).max(0) as u32)
        .collect();
    let mut comps = Vec::with_capacity(n + 1);
    let mut e0 = vec![1u32];
    e0.extend(&clear);
    comps.push(Polynomial::monomial(
        n,
        Exponents::from_vec(e0),
        Rational::from_integer(1.into()),
    ));
    for j in 0..n {
        let mut e = vec![0u32];
        e.extend((0..n).map(|i| (m.get(i, j) + clear[i] as i64) as u32));
        comps.push(Polynomial::monomial(
            n,
            Exponents::from_vec(e),
            Rational::from_integer(1.into()),
        ));
    }
    Ok(ProjectiveMap::new(comps)?.normalized())
}

/// `rho(a1)`: identity with column 3 replaced by `(1, -1, 1, 0, ..., 0)`.
pub fn rho_a1(n: usize) -> Result<LatticeMatrix> {
    check_n_at_least_4(n)?;
    let mut col = vec![0; n];
    col[0] = 1;
    col[1] = -1;
    col[2] = 1;
    Ok(LatticeMatrix::identity(n).with_column(2, &col))
}

/// `rho(a2)`: identity with column 2 replaced by `(-1, 1, 1, 0, ..., 0)`.
pub fn rho_a2(n: usize) -> Result<LatticeMatrix> {
    check_n_at_least_4(n)?;
    let mut col = vec![0; n];
    col[0] = -1;
    col[1] = 1;
    col[2] = 1;
    Ok(LatticeMatrix::identity(n).with_column(1, &col))
}

fn check_n_at_least_4(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "a1, a2 need n >= 4, got {n}"
        )));
    }
    Ok(())
}

/// The monomial maps `a1, a2` of `P^n`.
pub fn a1_a2(n: usize) -> Result<(ProjectiveMap, ProjectiveMap)> {
    Ok((monomial_map(&rho_a1(n)?)?, monomial_map(&rho_a2(n)?)?))
}

/// Sigma map attached to an affine map `psi` of dimension `n - 1`:
///
/// ```text
/// L0 = X0^d + X0 X1^(d-1)
/// L1 = X0^(d-1) X1 + X1^d
/// Lj = X0^(d-1) Xj + X1^d psi_(j-1)(X2/X1, ..., Xn/X1)     (j >= 2)
/// ```
///
/// Affine variable `k` of `psi` corresponds to projective coordinate `k + 1`.
pub fn sigma_map(psi: &AffinePolyMap, d: u32) -> Result<ProjectiveMap> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "sigma maps need d >= 2, got {d}"
        )));
    }
    let n = psi.dim() + 1;
    if let Some((k, p)) = psi
        .components()
        .iter()
        .enumerate()
        .find(|(_, p)| p.total_degree().unwrap_or(0) > d)
    {
        return Err(Error::InvalidParameter(format!(
            "psi component {} has degree {} > d = {d}",
            k + 1,
            p.total_degree().unwrap_or(0)
        )));
    }
    let x = |i| Polynomial::var(n, i);
    let s = &x(0).pow(d - 1) + &x(1).pow(d - 1);
    let mut comps = vec![&s * &x(0), &s * &x(1)];
    for (k, p) in psi.components().iter().enumerate() {
        let star = p.reindex(n, |e| {
            let mut v = Vec::with_capacity(n + 1);
            v.push(0);
            v.push(d - e.total());
            v.extend_from_slice(e.residual());
            Exponents::from_vec(v)
        });
        comps.push(&(&x(0).pow(d - 1) * &x(k + 2)) + &star);
    }
    ProjectiveMap::new(comps)
}

/// A sigma map together with the sigma map of a caller-supplied inverse of
/// `psi`, when the two really are mutually inverse.
pub fn sigma_map_with_inverse(
    psi: &AffinePolyMap,
    psi_inverse: &AffinePolyMap,
    d: u32,
) -> Result<(ProjectiveMap, Option<ProjectiveMap>)> {
    let map = sigma_map(psi, d)?;
    let inv = sigma_map(psi_inverse, d)?;
    let ok = map.verify_inverse_pair(&inv);
    Ok((map, ok.then_some(inv)))
}

/// Parameters of the shear
///
/// ```text
/// Xi -> (X0^(d-1) + X1^(d-1)) Xi        (i != 4)
/// X4 -> X0^(d-1) X4 + lambda_d(X1, X2, X4, ..., Xn)
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShearSpec {
    n: usize,
    d: u32,
    lambda_d: Polynomial,
}

impl ShearSpec {
    pub fn new(n: usize, d: u32, lambda_d: Polynomial) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidParameter(format!(
                "shear maps need n >= 4, got {n}"
            )));
        }
        if d < 2 {
            return Err(Error::InvalidParameter(format!(
                "shear maps need d >= 2, got {d}"
            )));
        }
        if lambda_d.ambient_n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: lambda_d.ambient_n(),
            });
        }
        if lambda_d.is_homogeneous() != Some(d) {
            return Err(Error::InvalidParameter(format!(
                "lambda_d = {lambda_d} is not homogeneous of degree {d}"
            )));
        }
        if lambda_d.involves(0) || lambda_d.involves(3) {
            return Err(Error::InvalidParameter(
                "lambda_d must not involve X0 or X3".into(),
            ));
        }
        let mut e = vec![0; n + 1];
        e[2] = d;
        if lambda_d.coefficient(&Exponents::from_vec(e)).is_zero() {
            return Err(Error::InvalidParameter(format!(
                "coefficient of X2^{d} in lambda_d must be nonzero"
            )));
        }
        Ok(ShearSpec { n, d, lambda_d })
    }

    /// `lambda_d = X1^(d-1) X4 + X2^d`.
    pub fn standard(n: usize, d: u32) -> Result<Self> {
        if n < 4 || d < 2 {
            return Self::new(n, d, Polynomial::zero(n));
        }
        let x = |i| Polynomial::var(n, i);
        Self::new(n, d, &(&x(1).pow(d - 1) * &x(4)) + &x(2).pow(d))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn lambda_d(&self) -> &Polynomial {
        &self.lambda_d
    }

    fn x1_x4_term(&self) -> Polynomial {
        let n = self.n;
        &Polynomial::var(n, 1).pow(self.d - 1) * &Polynomial::var(n, 4)
    }

    /// Writes `lambda_d = X1^(d-1) X4 + Q`. Returns `Q` when it is free of
    /// `X4`, which is the subfamily with the inverse `Q -> -Q`.
    pub fn shear_part(&self) -> Option<Polynomial> {
        let q = &self.lambda_d - &self.x1_x4_term();
        (!q.involves(4)).then_some(q)
    }
}

/// A shear map and, when `lambda_d` lies in the invertible subfamily, its
/// explicit inverse.
#[derive(Clone, Debug)]
pub struct Shear {
    pub map: ProjectiveMap,
    pub inverse: Option<ProjectiveMap>,
}

fn shear_components(n: usize, d: u32, lambda_d: &Polynomial) -> ProjectiveMap {
    let x = |i| Polynomial::var(n, i);
    let s = &x(0).pow(d - 1) + &x(1).pow(d - 1);
    let comps = (0..=n)
        .map(|i| {
            if i == 4 {
                &(&x(0).pow(d - 1) * &x(4)) + lambda_d
            } else {
                &s * &x(i)
            }
        })
        .collect();
    ProjectiveMap::new(comps).expect("shear components are homogeneous of degree d")
}

pub fn shear_lambda(spec: &ShearSpec) -> Shear {
    let map = shear_components(spec.n, spec.d, &spec.lambda_d);
    let inverse = spec.shear_part().map(|q| {
        let inv_lambda = &spec.x1_x4_term() - &q;
        shear_components(spec.n, spec.d, &inv_lambda)
    });
    Shear { map, inverse }
}

/// Restriction to the hyperplane `X0 = 0`, read in the chart `X1 != 0`:
/// `psi_(j-1) = L_j|_(X0=0) / (c X1^D)` in the coordinates `Xi / X1`.
pub fn xi_restrict(map: &ProjectiveMap) -> Result<AffinePolyMap> {
    let n = map.ambient_n();
    if n < 2 {
        return Err(Error::InvalidParameter("xi needs n >= 2".into()));
    }
    if g_form(map).is_none() {
        return Err(Error::NotGForm("xi_restrict needs a map in G-form".into()));
    }
    let r = map.restrict_to_hyperplane(0)?;
    if r.all_zero {
        return Err(Error::ZeroRestriction(0));
    }
    let first = &r.components[1];
    let degree = map.degree();
    let mut pure = vec![0; n + 1];
    pure[1] = degree;
    let c = first.coefficient(&Exponents::from_vec(pure));
    if c.is_zero() || !first.is_monomial() {
        return Err(Error::NotPolynomialRestriction(format!(
            "component 1 restricts to {first}, expected c*X1^{degree}"
        )));
    }
    let inv_c = c.recip();
    let comps = r.components[2..]
        .iter()
        .map(|p| {
            p.scale(&inv_c).reindex(n - 1, |e| {
                let mut v = vec![0];
                v.extend_from_slice(&e.as_slice()[2..]);
                Exponents::from_vec(v)
            })
        })
        .collect();
    AffinePolyMap::new(comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leading::rho;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn all_ones_diagonal_is_identity() {
        let f = diagonal_map(&DiagonalSpec::from_ints(&[1, 1, 1]).unwrap());
        assert_eq!(f, ProjectiveMap::identity(3));
        assert!(DiagonalSpec::from_ints(&[1, 0]).is_err());
    }

    #[test]
    fn diagonal_inverse() {
        let spec = DiagonalSpec::from_ints(&[2, 3, 5]).unwrap();
        let f = diagonal_map(&spec);
        let g = diagonal_map(&spec.inverse());
        assert!(f.verify_inverse_pair(&g));
        assert_eq!(g_form(&f).unwrap().degree, 1);
        assert_eq!(rho(&f).unwrap(), LatticeMatrix::identity(3));
    }

    #[test]
    fn a1_matches_displayed_tuple() {
        let n = 4;
        let (a1, _) = a1_a2(n).unwrap();
        let expected = ProjectiveMap::new(vec![
            &x(n, 0) * &x(n, 2),
            &x(n, 1) * &x(n, 2),
            x(n, 2).pow(2),
            &x(n, 1) * &x(n, 3),
            &x(n, 2) * &x(n, 4),
        ])
        .unwrap();
        assert_eq!(a1, expected);
        assert_eq!(rho(&a1).unwrap(), rho_a1(n).unwrap());
        assert!(a1_a2(3).is_err());
    }

    #[test]
    fn monomial_map_rejects_non_sl_prime() {
        let m = LatticeMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert!(matches!(monomial_map(&m), Err(Error::NotSlPrime(_))));
    }

    #[test]
    fn sigma_of_identity_is_projectively_identity() {
        let n = 4;
        let f = sigma_map(&AffinePolyMap::identity(n - 1), 2).unwrap();
        let s = &x(n, 0) + &x(n, 1);
        for i in 0..=n {
            assert_eq!(f.component(i), &(&s * &x(n, i)));
        }
        assert!(f.is_identity());
    }

    #[test]
    fn sigma_homogenization() {
        // psi = (x2, x3, x4 + x2^2) in projective labels
        let m = 3;
        let y = |i| Polynomial::var(m, i);
        let psi = AffinePolyMap::new(vec![y(1), y(2), &y(3) + &y(1).pow(2)]).unwrap();
        let f = sigma_map(&psi, 2).unwrap();
        let n = 4;
        assert_eq!(
            f.component(4).clone(),
            &(&(&x(n, 0) * &x(n, 4)) + &(&x(n, 1) * &x(n, 4))) + &x(n, 2).pow(2)
        );
        assert_eq!(g_form(&f).unwrap().degree, 2);
        assert_eq!(xi_restrict(&f).unwrap(), psi);
        assert!(sigma_map(&psi, 1).is_err());
    }

    #[test]
    fn sigma_degree_overflow() {
        let m = 3;
        let y = |i| Polynomial::var(m, i);
        let psi = AffinePolyMap::new(vec![&y(1) + &y(2).pow(3), y(2), y(3)]).unwrap();
        assert!(matches!(
            sigma_map(&psi, 2),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn standard_shear_and_inverse() {
        let n = 4;
        let shear = shear_lambda(&ShearSpec::standard(n, 2).unwrap());
        let s = &x(n, 0) + &x(n, 1);
        assert_eq!(
            shear.map.component(4),
            &(&(&s * &x(n, 4)) + &x(n, 2).pow(2))
        );
        let inv = shear.inverse.unwrap();
        assert_eq!(inv.component(4), &(&(&s * &x(n, 4)) - &x(n, 2).pow(2)));
        assert!(shear.map.verify_inverse_pair(&inv));
    }

    #[test]
    fn shear_without_recipe_has_no_inverse() {
        let n = 4;
        let lam = &x(n, 2).pow(2) + &x(n, 4).pow(2);
        let shear = shear_lambda(&ShearSpec::new(n, 2, lam).unwrap());
        assert!(shear.inverse.is_none());
    }

    #[test]
    fn shear_spec_invariants() {
        let n = 4;
        assert!(ShearSpec::new(n, 2, &x(n, 2).pow(2) + &(&x(n, 3) * &x(n, 1))).is_err());
        assert!(ShearSpec::new(n, 2, x(n, 1).pow(2)).is_err());
        assert!(ShearSpec::standard(3, 2).is_err());
    }

    #[test]
    fn xi_of_shear() {
        let n = 5;
        let shear = shear_lambda(&ShearSpec::standard(n, 2).unwrap());
        let psi = xi_restrict(&shear.map).unwrap();
        let m = 4;
        let y = |i| Polynomial::var(m, i);
        // (x2, x3, x4 + x2^2, x5) in projective labels
        let expected = AffinePolyMap::new(vec![y(1), y(2), &y(3) + &y(1).pow(2), y(4)]).unwrap();
        assert_eq!(psi, expected);
        assert_eq!(
            xi_restrict(&ProjectiveMap::identity(n)).unwrap(),
            AffinePolyMap::identity(m)
        );
    }
}
