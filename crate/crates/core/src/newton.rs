//! Newton polytopes, finite-level Newton bodies of linear systems, and
//! normalized lattice volume.
//!
//! Hulls are computed exactly by facet enumeration over point subsets, which
//! is adequate for the small dimensions and point counts used here.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::leading::valuation_of_fraction;
use crate::maps::ProjectiveMap;
use crate::poly::{Polynomial, Rational};

/// Largest ambient dimension accepted by [`normalized_volume`].
pub const MAX_VOLUME_DIM: usize = 4;

/// Convex hull of finitely many integer points, stored by its vertices in
/// lex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
}

impl LatticePolytope {
    pub fn from_points(dim: usize, points: &[Vec<i64>]) -> Result<LatticePolytope> {
        if points.is_empty() {
            return Err(Error::InvalidParameter(
                "polytope needs at least one point".into(),
            ));
        }
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        let distinct: Vec<Vec<i64>> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let vertices = extreme_points(&distinct)
            .into_iter()
            .map(|i| distinct[i].clone())
            .collect();
        Ok(LatticePolytope { dim, vertices })
    }

    /// `conv{0, e1, ..., en}`.
    pub fn standard_simplex(dim: usize) -> LatticePolytope {
        let mut pts = vec![vec![0; dim]];
        for i in 0..dim {
            let mut e = vec![0; dim];
            e[i] = 1;
            pts.push(e);
        }
        LatticePolytope::from_points(dim, &pts).expect("nonempty")
    }

    pub fn cube(dim: usize) -> LatticePolytope {
        let pts: Vec<Vec<i64>> = (0..1u32 << dim)
            .map(|mask| (0..dim).map(|i| ((mask >> i) & 1) as i64).collect())
            .collect();
        LatticePolytope::from_points(dim, &pts).expect("nonempty")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        affine_frame(&self.vertices).0.len()
    }

    pub fn contains(&self, point: &[i64]) -> bool {
        if point.len() != self.dim {
            return false;
        }
        if self.vertices.iter().any(|v| v == point) {
            return true;
        }
        let mut pts = self.vertices.clone();
        pts.push(point.to_vec());
        let ext = extreme_points(&pts);
        !ext.contains(&(pts.len() - 1))
    }

    pub fn is_subset_of(&self, other: &LatticePolytope) -> bool {
        self.dim == other.dim && self.vertices.iter().all(|v| other.contains(v))
    }

    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        LatticePolytope::from_points(self.dim, &pts)
    }

    pub fn scale(&self, k: i64) -> LatticePolytope {
        let pts: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * k).collect())
            .collect();
        LatticePolytope::from_points(self.dim, &pts).expect("nonempty")
    }

    pub fn translate(&self, t: &[i64]) -> Result<LatticePolytope> {
        let pts: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(x, y)| x + y).collect())
            .collect();
        LatticePolytope::from_points(self.dim, &pts)
    }

    /// Image under the linear map `x -> A x` with `A` given by rows.
    pub fn transform(&self, rows: &[Vec<i64>]) -> Result<LatticePolytope> {
        if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rows.len(),
            });
        }
        let pts: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| {
                rows.iter()
                    .map(|r| r.iter().zip(v).map(|(a, x)| a * x).sum())
                    .collect()
            })
            .collect();
        LatticePolytope::from_points(self.dim, &pts)
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn det(mut m: Vec<Vec<i128>>) -> i128 {
    // Bareiss elimination; every division is exact.
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Indices of a maximal independent subset of `rows` together with the
/// pivot columns of their echelon form.
fn independent_rows(rows: &[Vec<i128>]) -> (Vec<usize>, Vec<usize>) {
    let mut basis: Vec<(Vec<i128>, usize)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        for (b, p) in &basis {
            if v[*p] != 0 {
                let (a, c) = (b[*p], v[*p]);
                for j in 0..v.len() {
                    v[j] = v[j] * a - b[j] * c;
                }
                let g = v.iter().fold(0i128, |g, &x| gcd_i128(g, x));
                if g > 1 {
                    v.iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        if let Some(p) = v.iter().position(|&x| x != 0) {
            basis.push((v, p));
            chosen.push(idx);
        }
    }
    let pivots = basis.iter().map(|(_, p)| *p).collect();
    (chosen, pivots)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Pivot coordinates onto which projection is injective on the affine hull
/// of `points`, and the projected points.
fn affine_frame(points: &[Vec<i64>]) -> (Vec<usize>, Vec<Vec<i128>>) {
    let base = &points[0];
    let diffs: Vec<Vec<i128>> = points
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| (*a - *b) as i128).collect())
        .collect();
    let (_, mut pivots) = independent_rows(&diffs);
    pivots.sort_unstable();
    let projected = points
        .iter()
        .map(|p| pivots.iter().map(|&j| p[j] as i128).collect())
        .collect();
    (pivots, projected)
}

/// Facets of the full-dimensional hull of `pts` in `R^r`, each as the sorted
/// list of point indices lying on it, with its primitive outer normal.
fn facets(pts: &[Vec<i128>]) -> Vec<(Vec<usize>, Vec<i128>)> {
    let r = pts[0].len();
    let mut found: BTreeMap<Vec<usize>, Vec<i128>> = BTreeMap::new();
    let mut subset: Vec<usize> = Vec::with_capacity(r);
    fn walk(
        pts: &[Vec<i128>],
        r: usize,
        start: usize,
        subset: &mut Vec<usize>,
        found: &mut BTreeMap<Vec<usize>, Vec<i128>>,
    ) {
        if subset.len() == r {
            if let Some(facet) = supporting_facet(pts, subset) {
                found.entry(facet.0).or_insert(facet.1);
            }
            return;
        }
        for i in start..pts.len() {
            subset.push(i);
            walk(pts, r, i + 1, subset, found);
            subset.pop();
        }
    }
    walk(pts, r, 0, &mut subset, &mut found);
    found.into_iter().collect()
}

fn supporting_facet(pts: &[Vec<i128>], subset: &[usize]) -> Option<(Vec<usize>, Vec<i128>)> {
    let r = pts[0].len();
    let q0 = &pts[subset[0]];
    let diffs: Vec<Vec<i128>> = subset[1..]
        .iter()
        .map(|&i| pts[i].iter().zip(q0).map(|(a, b)| a - b).collect())
        .collect();
    // generalized cross product of the r - 1 difference vectors
    let mut normal: Vec<i128> = (0..r)
        .map(|j| {
            let minor: Vec<Vec<i128>> = diffs
                .iter()
                .map(|d| (0..r).filter(|&c| c != j).map(|c| d[c]).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * det(minor)
        })
        .collect();
    let g = normal.iter().fold(0i128, |g, &x| gcd_i128(g, x));
    if g == 0 {
        return None;
    }
    normal.iter_mut().for_each(|x| *x /= g);
    let c: i128 = normal.iter().zip(q0).map(|(a, b)| a * b).sum();
    let mut above = false;
    let mut below = false;
    let mut on = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let v: i128 = normal.iter().zip(p).map(|(a, b)| a * b).sum::<i128>() - c;
        match v.signum() {
            0 => on.push(i),
            1 => above = true,
            _ => below = true,
        }
        if above && below {
            return None;
        }
    }
    if above {
        normal.iter_mut().for_each(|x| *x = -*x);
    }
    Some((on, normal))
}

/// Indices of the extreme points among distinct `points`.
fn extreme_points(points: &[Vec<i64>]) -> Vec<usize> {
    let (pivots, proj) = affine_frame(points);
    let r = pivots.len();
    if r == 0 {
        return vec![0];
    }
    let fs = facets(&proj);
    let mut out = Vec::new();
    for i in 0..points.len() {
        let normals: Vec<Vec<i128>> = fs
            .iter()
            .filter(|(on, _)| on.binary_search(&i).is_ok())
            .map(|(_, n)| n.clone())
            .collect();
        if independent_rows(&normals).0.len() == r {
            out.push(i);
        }
    }
    out
}

/// Pulling triangulation of the hull of `vertices` (all extreme): simplices
/// as index lists, cones from the lex-smallest vertex over the facets that
/// avoid it.
fn triangulate(vertices: &[Vec<i64>], idx: &[usize]) -> Vec<Vec<usize>> {
    let pts: Vec<Vec<i64>> = idx.iter().map(|&i| vertices[i].clone()).collect();
    let (pivots, proj) = affine_frame(&pts);
    if pivots.is_empty() {
        return vec![vec![idx[0]]];
    }
    let apex = (0..pts.len())
        .min_by(|&a, &b| pts[a].cmp(&pts[b]))
        .expect("nonempty");
    let mut out = Vec::new();
    for (on, _) in facets(&proj) {
        if on.contains(&apex) {
            continue;
        }
        let sub: Vec<usize> = on.iter().map(|&i| idx[i]).collect();
        for mut s in triangulate(vertices, &sub) {
            s.push(idx[apex]);
            out.push(s);
        }
    }
    out
}

/// Lattice-normalized volume (Euclidean volume times `dim!`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Volume {
    pub value: Rational,
    /// `false` when the polytope lies in a proper affine subspace; the
    /// value is then zero.
    pub full_dimensional: bool,
    pub simplices: usize,
}

pub fn normalized_volume(p: &LatticePolytope) -> Result<Volume> {
    if p.dim > MAX_VOLUME_DIM {
        return Err(Error::InvalidParameter(format!(
            "volume is computed for dimension <= {MAX_VOLUME_DIM}, got {}",
            p.dim
        )));
    }
    if p.affine_dim() < p.dim {
        return Ok(Volume {
            value: Rational::zero(),
            full_dimensional: false,
            simplices: 0,
        });
    }
    let all: Vec<usize> = (0..p.vertices.len()).collect();
    let simplices = triangulate(&p.vertices, &all);
    let mut total = 0i128;
    for s in &simplices {
        let v0 = &p.vertices[s[0]];
        let m: Vec<Vec<i128>> = s[1..]
            .iter()
            .map(|&i| {
                p.vertices[i]
                    .iter()
                    .zip(v0)
                    .map(|(a, b)| (*a - *b) as i128)
                    .collect()
            })
            .collect();
        total += det(m).abs();
    }
    Ok(Volume {
        value: Rational::from_integer(total.into()),
        full_dimensional: true,
        simplices: simplices.len(),
    })
}

pub fn is_standard_simplex(p: &LatticePolytope) -> bool {
    *p == LatticePolytope::standard_simplex(p.dim)
}

/// Newton polytope of `h` in the chart `X0 = 1`: the hull of the residual
/// exponent vectors of its support.
pub fn newton_polytope(h: &Polynomial) -> Result<LatticePolytope> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial("newton_polytope"));
    }
    let pts: Vec<Vec<i64>> = h
        .terms()
        .map(|(e, _)| e.residual().iter().map(|&x| x as i64).collect())
        .collect();
    LatticePolytope::from_points(h.ambient_n(), &pts)
}

/// Rational functions `numerators[i] / denominator` spanning a linear system
/// together with the constant `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemGenerators {
    numerators: Vec<Polynomial>,
    denominator: Polynomial,
}

impl SystemGenerators {
    pub fn new(numerators: Vec<Polynomial>, denominator: Polynomial) -> Result<Self> {
        if numerators.is_empty() {
            return Err(Error::InvalidParameter("no generators".into()));
        }
        if denominator.is_zero() {
            return Err(Error::ZeroPolynomial("denominator"));
        }
        let n = denominator.ambient_n();
        for g in &numerators {
            if g.is_zero() {
                return Err(Error::ZeroPolynomial("generator"));
            }
            if g.ambient_n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.ambient_n(),
                });
            }
        }
        Ok(SystemGenerators {
            numerators,
            denominator,
        })
    }

    /// `f_j / f_0` for `j = 1..n`.
    pub fn of_map(f: &ProjectiveMap) -> Result<Self> {
        SystemGenerators::of_map_over(f, 0)
    }

    /// `f_j / f_i` for `j != i`.
    pub fn of_map_over(f: &ProjectiveMap, i: usize) -> Result<Self> {
        let comps = f.components();
        if i >= comps.len() {
            return Err(Error::VariableOutOfRange {
                index: i,
                max: comps.len() - 1,
            });
        }
        let nums = comps
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, c)| c.clone())
            .collect();
        SystemGenerators::new(nums, comps[i].clone())
    }

    pub fn numerators(&self) -> &[Polynomial] {
        &self.numerators
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn ambient_n(&self) -> usize {
        self.denominator.ambient_n()
    }

    /// `v(g_i)` for every generator.
    pub fn valuations(&self) -> Result<Vec<Vec<i64>>> {
        self.numerators
            .iter()
            .map(|g| valuation_of_fraction(g, &self.denominator))
            .collect()
    }
}

/// Compositions `m` of total size `1..=k` over `count` generators, in
/// deterministic order.
fn exponent_vectors(count: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(count: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == count {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(count, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(count, k, &mut Vec::with_capacity(count), &mut out);
    out.retain(|m| m.iter().sum::<usize>() >= 1);
    out
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// Hull of `{v(g^m) / |m| : 1 <= |m| <= k} ∪ {0}`.
///
/// `v(g^m) = sum m_i v(g_i)` by additivity. Points are computed exactly at
/// scale `k!` and the hull is returned at unit scale.
pub fn map_newton_body(system: &SystemGenerators, k: usize) -> Result<LatticePolytope> {
    if k < 1 {
        return Err(Error::InvalidParameter("level must be >= 1".into()));
    }
    let n = system.ambient_n();
    let vals = system.valuations()?;
    let scale = factorial(k);
    let mut pts = vec![vec![0i64; n]];
    for m in exponent_vectors(vals.len(), k) {
        let size = m.iter().sum::<usize>() as i64;
        let mut p = vec![0i64; n];
        for (mi, v) in m.iter().zip(&vals) {
            for (pj, vj) in p.iter_mut().zip(v) {
                *pj += *mi as i64 * vj;
            }
        }
        pts.push(p.iter().map(|x| x * (scale / size)).collect());
    }
    let scaled = LatticePolytope::from_points(n, &pts)?;
    let mut unit = Vec::with_capacity(scaled.vertices.len());
    for v in &scaled.vertices {
        if v.iter().any(|x| x % scale != 0) {
            return Err(Error::Verification(format!(
                "vertex {v:?} of the level-{k} body is not a lattice point at unit scale"
            )));
        }
        unit.push(v.iter().map(|x| x / scale).collect::<Vec<_>>());
    }
    LatticePolytope::from_points(n, &unit)
}

/// Bodies at levels `1..=max_level` with a stabilization summary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonBodyReport {
    pub levels: Vec<LatticePolytope>,
    /// Smallest level from which all computed levels coincide.
    pub stable_from: usize,
    /// Each level is contained in the next.
    pub monotone: bool,
}

impl NewtonBodyReport {
    pub fn body(&self) -> &LatticePolytope {
        self.levels.last().expect("at least one level")
    }
}

pub fn newton_body_levels(system: &SystemGenerators, max_level: usize) -> Result<NewtonBodyReport> {
    if max_level < 1 {
        return Err(Error::InvalidParameter("level must be >= 1".into()));
    }
    let levels = (1..=max_level)
        .map(|k| map_newton_body(system, k))
        .collect::<Result<Vec<_>>>()?;
    let last = levels.last().expect("nonempty");
    let stable_from = levels.iter().rposition(|p| p != last).map_or(1, |i| i + 2);
    let monotone = levels.windows(2).all(|w| w[0].is_subset_of(&w[1]));
    Ok(NewtonBodyReport {
        levels,
        stable_from,
        monotone,
    })
}
