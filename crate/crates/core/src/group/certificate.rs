//! Free-subgroup evidence: exhaustive "no short relation" enumeration and the
//! table-tennis inclusions for the classical pair of unipotent matrices.

use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::lattice::LatticeMatrix;

use super::word::{GroupWord, Letter};

/// Exact integer matrix group element usable as a generator image.
pub trait GroupElement: Clone + Eq + Ord + Hash + Send + Sync + fmt::Debug {
    fn identity_like(&self) -> Self;
    fn try_mul(&self, other: &Self) -> Result<Self>;
    fn try_inverse(&self) -> Result<Self>;
}

/// A 2 x 2 integer matrix of determinant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2Matrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Sl2Matrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::InvalidParameter(format!(
                "[[{a}, {b}], [{c}, {d}]] has determinant {det}, expected 1"
            )));
        }
        Ok(Sl2Matrix { a, b, c, d })
    }

    pub const IDENTITY: Sl2Matrix = Sl2Matrix {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };

    /// `[[1, m], [0, 1]]`.
    pub fn upper(m: i64) -> Self {
        Sl2Matrix {
            a: 1,
            b: m,
            c: 0,
            d: 1,
        }
    }

    /// `[[1, 0], [m, 1]]`.
    pub fn lower(m: i64) -> Self {
        Sl2Matrix {
            a: 1,
            b: 0,
            c: m,
            d: 1,
        }
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn apply(&self, v: (i64, i64)) -> Result<(i64, i64)> {
        let f = |p: i64, q: i64, x: i64, y: i64| {
            p.checked_mul(x)
                .and_then(|s| q.checked_mul(y).and_then(|t| s.checked_add(t)))
                .ok_or(Error::Overflow)
        };
        Ok((f(self.a, self.b, v.0, v.1)?, f(self.c, self.d, v.0, v.1)?))
    }
}

impl GroupElement for Sl2Matrix {
    fn identity_like(&self) -> Self {
        Sl2Matrix::IDENTITY
    }

    fn try_mul(&self, o: &Self) -> Result<Self> {
        let dot = |p: i64, q: i64, x: i64, y: i64| {
            p.checked_mul(x)
                .and_then(|s| q.checked_mul(y).and_then(|t| s.checked_add(t)))
                .ok_or(Error::Overflow)
        };
        Ok(Sl2Matrix {
            a: dot(self.a, self.b, o.a, o.c)?,
            b: dot(self.a, self.b, o.b, o.d)?,
            c: dot(self.c, self.d, o.a, o.c)?,
            d: dot(self.c, self.d, o.b, o.d)?,
        })
    }

    fn try_inverse(&self) -> Result<Self> {
        Ok(Sl2Matrix {
            a: self.d,
            b: self.b.checked_neg().ok_or(Error::Overflow)?,
            c: self.c.checked_neg().ok_or(Error::Overflow)?,
            d: self.a,
        })
    }
}

impl GroupElement for LatticeMatrix {
    fn identity_like(&self) -> Self {
        LatticeMatrix::identity(self.dim())
    }

    fn try_mul(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)
    }

    fn try_inverse(&self) -> Result<Self> {
        self.inverse()
    }
}

/// Images of the generators and their inverses, indexed by [`Letter::index`].
#[derive(Clone, Debug)]
pub struct GeneratorImages<M> {
    images: [M; 4],
}

impl<M: GroupElement> GeneratorImages<M> {
    pub fn new(a: M, b: M) -> Result<Self> {
        let ai = a.try_inverse()?;
        let bi = b.try_inverse()?;
        Ok(GeneratorImages {
            images: [a, ai, b, bi],
        })
    }

    pub fn image(&self, l: Letter) -> &M {
        &self.images[l.index()]
    }

    pub fn identity(&self) -> M {
        self.images[0].identity_like()
    }

    /// Product of the images along the word, left to right.
    pub fn eval(&self, w: &GroupWord) -> Result<M> {
        w.letters()
            .iter()
            .try_fold(self.identity(), |acc, &l| acc.try_mul(self.image(l)))
    }
}

/// `eval_word(w, a, b)`: product of generator images along `w`.
pub fn eval_word<M: GroupElement>(w: &GroupWord, a: &M, b: &M) -> Result<M> {
    GeneratorImages::new(a.clone(), b.clone())?.eval(w)
}

/// Outcome of the exhaustive short-relation search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoRelationCertificate {
    pub max_len: usize,
    pub words_checked: u64,
    /// Two distinct reduced words with equal images, if any exist.
    pub collision: Option<(GroupWord, GroupWord)>,
}

impl NoRelationCertificate {
    pub fn holds(&self) -> bool {
        self.collision.is_none()
    }
}

// words encoded as base-4 digits below a leading 1 bit pattern; fits L <= 30
fn encode(letters: &[Letter]) -> u64 {
    letters
        .iter()
        .fold(1u64, |acc, l| acc * 4 + l.index() as u64)
}

fn decode(mut code: u64) -> GroupWord {
    let mut letters = Vec::new();
    while code > 1 {
        letters.push(Letter::ALL[(code % 4) as usize]);
        code /= 4;
    }
    letters.reverse();
    GroupWord::new(&letters)
}

/// Shortlex key of a word code: (length, letters).
fn shortlex(code: u64) -> (u32, u64) {
    let len = (63 - code.leading_zeros()) / 2;
    (len, code)
}

fn collect_subtree<M: GroupElement>(
    gens: &GeneratorImages<M>,
    prefix: &[Letter],
    max_len: usize,
    out: &mut Vec<(M, u64)>,
) -> Result<()> {
    let start = gens.eval(&GroupWord::new(prefix))?;
    let mut stack: Vec<(M, Vec<Letter>)> = vec![(start, prefix.to_vec())];
    while let Some((m, word)) = stack.pop() {
        if word.len() < max_len {
            for l in Letter::ALL.iter().rev() {
                if word.last() == Some(&l.inverse()) {
                    continue;
                }
                let next = m.try_mul(gens.image(*l))?;
                let mut w = word.clone();
                w.push(*l);
                stack.push((next, w));
            }
        }
        out.push((m, encode(&word)));
    }
    Ok(())
}

/// Checks that all reduced words of length `<= max_len` have pairwise
/// distinct images. Work is split across `workers` threads by two-letter
/// prefix; the result does not depend on the worker count.
pub fn no_relation_certificate<M: GroupElement>(
    a: &M,
    b: &M,
    max_len: usize,
    workers: usize,
) -> Result<NoRelationCertificate> {
    if max_len == 0 {
        return Err(Error::InvalidParameter(
            "word length bound must be >= 1".into(),
        ));
    }
    if max_len > 30 {
        return Err(Error::InvalidParameter(
            "word length bound must be <= 30".into(),
        ));
    }
    let gens = GeneratorImages::new(a.clone(), b.clone())?;
    let mut entries: Vec<(M, u64)> = Vec::new();
    // the identity and the four single letters are handled here; the rest
    // hangs off the twelve reduced two-letter prefixes
    entries.push((gens.identity(), encode(&[])));
    for l in Letter::ALL {
        entries.push((gens.image(l).clone(), encode(&[l])));
    }
    let prefixes: Vec<Vec<Letter>> = if max_len >= 2 {
        GroupWord::all_of_length(2)
            .into_iter()
            .map(|w| w.letters().to_vec())
            .collect()
    } else {
        Vec::new()
    };
    let workers = workers.max(1).min(prefixes.len().max(1));
    let chunks: Vec<Vec<(M, u64)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let gens = &gens;
                let prefixes = &prefixes;
                scope.spawn(move || -> Result<Vec<(M, u64)>> {
                    let mut out = Vec::new();
                    for p in prefixes.iter().skip(w).step_by(workers) {
                        collect_subtree(gens, p, max_len, &mut out)?;
                    }
                    Ok(out)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    for c in chunks {
        entries.extend(c);
    }
    let words_checked = entries.len() as u64;
    debug_assert_eq!(words_checked, GroupWord::count_up_to(max_len));
    entries.sort_unstable_by(|x, y| x.0.cmp(&y.0).then(shortlex(x.1).cmp(&shortlex(y.1))));
    let mut collision: Option<(u64, u64)> = None;
    for pair in entries.windows(2) {
        if pair[0].0 == pair[1].0 {
            let cand = (pair[0].1, pair[1].1);
            // report the shortlex-smallest colliding pair
            let better = match collision {
                None => true,
                Some(c) => (shortlex(cand.1), shortlex(cand.0)) < (shortlex(c.1), shortlex(c.0)),
            };
            if better {
                collision = Some(cand);
            }
        }
    }
    Ok(NoRelationCertificate {
        max_len,
        words_checked,
        collision: collision.map(|(u, v)| (decode(u), decode(v))),
    })
}

/// A sample vector on which a table-tennis inclusion fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PingPongViolation {
    pub vector: (i64, i64),
    pub power: i64,
    /// `'S'` for the lower-triangular generator, `'T'` for the upper one.
    pub generator: char,
    pub image: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PingPongReport {
    pub m: i64,
    pub samples_checked: usize,
    pub violation: Option<PingPongViolation>,
}

impl PingPongReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks, on every sample `v = (x, y)`, the inclusions for
/// `T = [[1, m], [0, 1]]` and `S = [[1, 0], [m, 1]]`:
/// `|x| > |y|` implies `|y'| > |x'|` for `S^k v`, and `|y| > |x|` implies
/// `|x'| > |y'|` for `T^k v`, for `0 < |k| <= max_power`.
///
/// The classical inclusions need `|m| >= 2`; for smaller `|m|` the check runs
/// anyway and reports the first violation found.
pub fn pingpong_check(m: i64, samples: &[(i64, i64)], max_power: i64) -> Result<PingPongReport> {
    if max_power < 1 {
        return Err(Error::InvalidParameter("max_power must be >= 1".into()));
    }
    if samples.contains(&(0, 0)) {
        return Err(Error::InvalidParameter(
            "sample vectors must be nonzero".into(),
        ));
    }
    let powers: Vec<i64> = (-max_power..=max_power).filter(|&k| k != 0).collect();
    for &v in samples {
        let (x, y) = v;
        for &k in &powers {
            let km = k.checked_mul(m).ok_or(Error::Overflow)?;
            if x.abs() > y.abs() {
                let image = Sl2Matrix::lower(km).apply(v)?;
                if image.1.abs() <= image.0.abs() {
                    return Ok(PingPongReport {
                        m,
                        samples_checked: samples.len(),
                        violation: Some(PingPongViolation {
                            vector: v,
                            power: k,
                            generator: 'S',
                            image,
                        }),
                    });
                }
            }
            if y.abs() > x.abs() {
                let image = Sl2Matrix::upper(km).apply(v)?;
                if image.0.abs() <= image.1.abs() {
                    return Ok(PingPongReport {
                        m,
                        samples_checked: samples.len(),
                        violation: Some(PingPongViolation {
                            vector: v,
                            power: k,
                            generator: 'T',
                            image,
                        }),
                    });
                }
            }
        }
    }
    Ok(PingPongReport {
        m,
        samples_checked: samples.len(),
        violation: None,
    })
}

/// All nonzero integer vectors with `|x|, |y| <= radius`.
pub fn sample_grid(radius: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for x in -radius..=radius {
        for y in -radius..=radius {
            if (x, y) != (0, 0) {
                out.push((x, y));
            }
        }
    }
    out
}
