use std::fmt;

/// Exponent vector `(e0, e1, ..., en)` of a monomial `X0^e0 X1^e1 ... Xn^en`.
///
/// The derived ordering is plain lexicographic with `X0 > X1 > ... > Xn`,
/// which is the only monomial order used anywhere in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn zero(len: usize) -> Self {
        Exponents(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        Exponents(e)
    }

    pub fn from_vec(v: Vec<u32>) -> Self {
        Exponents(v)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Exponents of `X1..Xn`, i.e. everything but the `X0` entry.
    pub fn residual(&self) -> &[u32] {
        &self.0[1..]
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, if every entry stays non-negative.
    pub fn checked_sub(&self, other: &Exponents) -> Option<Exponents> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponents)
    }

    pub fn divides(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn meet(&self, other: &Exponents) -> Exponents {
        Exponents(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn with(&self, i: usize, value: u32) -> Exponents {
        let mut e = self.0.clone();
        e[i] = value;
        Exponents(e)
    }

    pub fn scale(&self, k: u32) -> Exponents {
        Exponents(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_puts_x0_first() {
        let a = Exponents::from_vec(vec![1, 0, 0]);
        let b = Exponents::from_vec(vec![0, 5, 5]);
        assert!(a > b);
        let c = Exponents::from_vec(vec![2, 1, 0]);
        let d = Exponents::from_vec(vec![2, 0, 2]);
        assert!(c > d);
    }

    #[test]
    fn checked_sub_rejects_negative() {
        let a = Exponents::from_vec(vec![1, 2]);
        let b = Exponents::from_vec(vec![2, 0]);
        assert_eq!(a.checked_sub(&b), None);
        assert_eq!(b.checked_sub(&b), Some(Exponents::zero(2)));
    }
}
