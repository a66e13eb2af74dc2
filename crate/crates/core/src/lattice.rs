//! Square integer matrices: the values of `rho` and the elements of `SL'_n(Z)`.

use std::fmt;

use crate::error::{Error, Result};

/// An `n x n` integer matrix, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl LatticeMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::ArityMismatch {
                expected: n,
                found: r.len(),
            });
        }
        Ok(LatticeMatrix {
            n,
            entries: rows.concat(),
        })
    }

    pub fn from_columns(cols: &[Vec<i64>]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        LatticeMatrix { n, entries }
    }

    /// Identity with column `j` (0-based) replaced.
    pub fn with_column(&self, j: usize, col: &[i64]) -> Self {
        let mut m = self.clone();
        for (i, &v) in col.iter().enumerate() {
            m.entries[i * self.n + j] = v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        LatticeMatrix { n, entries }
    }

    pub fn checked_mul(&self, other: &LatticeMatrix) -> Result<LatticeMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let prod = a
                        .checked_mul(other.entries[k * n + j])
                        .ok_or(Error::Overflow)?;
                    let cell = &mut entries[i * n + j];
                    *cell = cell.checked_add(prod).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(LatticeMatrix { n, entries })
    }

    /// `M v` for an integer vector `v`.
    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        (0..self.n)
            .map(|i| {
                (0..self.n).try_fold(0i64, |acc, j| {
                    self.get(i, j)
                        .checked_mul(v[j])
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i128 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.entries.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                    return 0;
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] =
                        (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        sign * a[n * n - 1]
    }

    pub fn column_sums(&self) -> Vec<i64> {
        (0..self.n).map(|j| self.column(j).iter().sum()).collect()
    }

    /// `det = 1` and every column sums to 1.
    pub fn is_sl_prime(&self) -> bool {
        self.det() == 1 && self.column_sums().iter().all(|&s| s == 1)
    }

    pub fn check_sl_prime(&self) -> Result<()> {
        let det = self.det();
        if det != 1 {
            return Err(Error::NotSlPrime(format!("det = {det}")));
        }
        if let Some((j, s)) = self.column_sums().iter().enumerate().find(|(_, &s)| s != 1) {
            return Err(Error::NotSlPrime(format!("column {} sums to {s}", j + 1)));
        }
        Ok(())
    }

    /// Inverse over the integers (requires `det = ±1`), via the adjugate.
    pub fn inverse(&self) -> Result<LatticeMatrix> {
        let det = self.det();
        if det != 1 && det != -1 {
            return Err(Error::NotUnimodular(det));
        }
        let n = self.n;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j).det();
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                // adjugate is the transposed cofactor matrix
                entries[j * n + i] = i64::try_from(cof * det).map_err(|_| Error::Overflow)?;
            }
        }
        Ok(LatticeMatrix { n, entries })
    }

    fn minor(&self, row: usize, col: usize) -> LatticeMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != row) {
            for j in (0..n).filter(|&j| j != col) {
                entries.push(self.get(i, j));
            }
        }
        LatticeMatrix { n: n - 1, entries }
    }

    pub fn checked_pow(&self, k: u32) -> Result<LatticeMatrix> {
        (0..k).try_fold(LatticeMatrix::identity(self.n), |acc, _| {
            acc.checked_mul(self)
        })
    }
}

impl fmt::Display for LatticeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
                )
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for LatticeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
