use std::fmt;

use crate::error::{Error, Result};

/// A vector in `Z_r^m`.
///
/// `digits[0]` is the most significant base-`r` digit of the integer form,
/// so over `r = 2, m = 2` the vector `(1, 0)` is the integer 2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RVector {
    r: u32,
    digits: Vec<u8>,
}

impl fmt::Debug for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.digits)
    }
}

impl RVector {
    pub fn new(r: u32, digits: Vec<u8>) -> Result<RVector> {
        if !(2..=256).contains(&r) {
            return Err(Error::InvalidParameter(format!("modulus r = {r} must be in [2, 256]")));
        }
        if let Some(&bad) = digits.iter().find(|&&d| d as u32 >= r) {
            return Err(Error::InvalidParameter(format!("digit {bad} is not below r = {r}")));
        }
        Ok(RVector { r, digits })
    }

    pub fn zero(r: u32, m: usize) -> RVector {
        RVector { r, digits: vec![0; m] }
    }

    /// The unit vector `e_i` for `i` in `[1, m]`; `e_1` is the most
    /// significant digit. `i = 0` gives the zero vector.
    pub fn unit(r: u32, m: usize, i: usize) -> RVector {
        let mut v = Self::zero(r, m);
        if i > 0 {
            v.digits[i - 1] = 1;
        }
        v
    }

    /// The vector whose integer form is `x`.
    pub fn from_int(r: u32, m: usize, mut x: usize) -> RVector {
        let mut digits = vec![0u8; m];
        for d in digits.iter_mut().rev() {
            *d = (x % r as usize) as u8;
            x /= r as usize;
        }
        RVector { r, digits }
    }

    pub fn to_int(&self) -> usize {
        self.digits.iter().fold(0, |acc, &d| acc * self.r as usize + d as usize)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn same_shape(&self, other: &RVector) -> Result<()> {
        if self.r != other.r || self.m() != other.m() {
            return Err(Error::DimensionMismatch(format!(
                "vectors over Z_{}^{} and Z_{}^{}",
                self.r,
                self.m(),
                other.r,
                other.m()
            )));
        }
        Ok(())
    }

    /// Dot product mod `r`. Panics on a shape mismatch.
    pub fn dot(&self, other: &RVector) -> u32 {
        assert_eq!((self.r, self.m()), (other.r, other.m()), "shape mismatch");
        let s: u64 = self.digits.iter().zip(&other.digits).map(|(&a, &b)| a as u64 * b as u64).sum();
        (s % self.r as u64) as u32
    }

    fn zip_with(&self, other: &RVector, f: impl Fn(u32, u32) -> u32) -> RVector {
        assert_eq!((self.r, self.m()), (other.r, other.m()), "shape mismatch");
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .map(|(&a, &b)| (f(a as u32, b as u32) % self.r) as u8)
            .collect();
        RVector { r: self.r, digits }
    }

    pub fn add(&self, other: &RVector) -> RVector {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RVector) -> RVector {
        let r = self.r;
        self.zip_with(other, move |a, b| a + r - b)
    }

    pub fn scale(&self, c: u32) -> RVector {
        let c = c % self.r;
        RVector {
            r: self.r,
            digits: self.digits.iter().map(|&d| ((d as u32 * c) % self.r) as u8).collect(),
        }
    }

    pub fn neg(&self) -> RVector {
        self.scale(self.r - 1)
    }

    /// gcd of all digits together with `r`; the zero vector gives `r`.
    pub fn content(&self) -> u32 {
        self.digits.iter().fold(self.r, |g, &d| num_integer::gcd(g, d as u32))
    }

    /// Index of the first nonzero digit.
    pub fn leading(&self) -> Option<usize> {
        self.digits.iter().position(|&d| d != 0)
    }
}

/// Digit-wise addition of `a` and `c * b` on integer forms.
pub fn add_scaled_int(r: u32, m: usize, a: usize, b: usize, c: u32) -> usize {
    let r = r as usize;
    let c = c as usize % r;
    let (mut a, mut b) = (a, b);
    let (mut out, mut place) = (0usize, 1usize);
    for _ in 0..m {
        out += ((a % r + c * (b % r)) % r) * place;
        a /= r;
        b /= r;
        place *= r;
    }
    out
}

/// Dot product mod `r` directly on integer forms.
pub fn dot_int(r: u32, m: usize, a: usize, b: usize) -> u32 {
    let r = r as usize;
    let (mut a, mut b, mut s) = (a, b, 0usize);
    for _ in 0..m {
        s += (a % r) * (b % r);
        a /= r;
        b /= r;
    }
    (s % r) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn high_digit_first() {
        let v = RVector::new(2, vec![1, 0]).unwrap();
        assert_eq!(v.to_int(), 2);
        assert_eq!(RVector::unit(2, 2, 1), v);
        assert_eq!(RVector::from_int(3, 2, 5).digits(), &[1, 2]);
    }

    #[test]
    fn int_roundtrip_exhaustive() {
        for r in [2u32, 3, 5] {
            for m in 1..=3 {
                for x in 0..(r as usize).pow(m as u32) {
                    assert_eq!(RVector::from_int(r, m, x).to_int(), x);
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range_digits() {
        assert!(RVector::new(3, vec![0, 3]).is_err());
        assert!(RVector::new(1, vec![0]).is_err());
    }

    #[test]
    fn arithmetic_on_ints_matches_vectors() {
        let (r, m) = (3u32, 3usize);
        for a in 0..27 {
            for b in 0..27 {
                let (va, vb) = (RVector::from_int(r, m, a), RVector::from_int(r, m, b));
                assert_eq!(dot_int(r, m, a, b), va.dot(&vb));
                for c in 0..3 {
                    assert_eq!(add_scaled_int(r, m, a, b, c), va.add(&vb.scale(c)).to_int());
                }
                assert_eq!(va.sub(&vb).add(&vb), va);
            }
        }
    }

    #[test]
    fn content_is_gcd_with_r() {
        assert_eq!(RVector::new(4, vec![0, 2]).unwrap().content(), 2);
        assert_eq!(RVector::new(3, vec![0, 2]).unwrap().content(), 1);
        assert_eq!(RVector::zero(3, 2).content(), 3);
    }
}
