//! Arithmetic in GF(p^d) for orders up to 65536.
//!
//! An element is an integer in `[0, q)` whose base-`p` digits are the
//! coefficients of its polynomial representative: digit `i` is the
//! coefficient of `x^i`. Multiplication goes through log/antilog tables
//! built from the chosen primitive element.

use crate::error::{Error, Result};

/// A field element, encoded as described in the module documentation.
pub type Elem = u16;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// An immutable description of GF(p^d) together with its lookup tables.
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    d: u32,
    q: u32,
    modulus: Vec<u32>,
    alpha: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("d", &self.d)
            .field("modulus", &self.modulus)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl Field {
    /// Builds GF(p^d) with the lowest-valued monic irreducible modulus.
    ///
    /// When `alpha_hint` is given it must be primitive and is used as the
    /// generator; otherwise the smallest primitive element is chosen.
    ///
    /// ```
    /// use zigzag::field::Field;
    ///
    /// let gf9 = Field::new(3, 2, None).unwrap();
    /// assert_eq!(gf9.q(), 9);
    /// assert_eq!(gf9.modulus(), &[1, 0, 1]); // x^2 + 1
    /// assert_eq!(gf9.mul(3, 3), 2); // x * x = -1
    /// ```
    #[doc(alias = "gf_new")]
    pub fn new(p: u32, d: u32, alpha_hint: Option<u32>) -> Result<Field> {
        let q = checked_order(p, d)?;
        let modulus = lowest_irreducible(p, d);
        Self::build(p, d, q, modulus, alpha_hint)
    }

    /// Builds GF(q) for a prime power `q`.
    pub fn of_order(q: u32, alpha_hint: Option<u32>) -> Result<Field> {
        let (p, d) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, d, alpha_hint)
    }

    /// Builds GF(p^d) from an explicit modulus, given low degree first with
    /// the leading 1 included.
    pub fn with_modulus(p: u32, d: u32, modulus: &[u32], alpha_hint: Option<u32>) -> Result<Field> {
        let q = checked_order(p, d)?;
        let valid = modulus.len() == d as usize + 1
            && modulus[d as usize] == 1
            && modulus.iter().all(|&c| c < p)
            && is_irreducible(modulus, p);
        if !valid {
            return Err(Error::InvalidModulus { p, d });
        }
        Self::build(p, d, q, modulus.to_vec(), alpha_hint)
    }

    fn build(p: u32, d: u32, q: u32, modulus: Vec<u32>, alpha_hint: Option<u32>) -> Result<Field> {
        let mut field = Field { p, d, q, modulus, alpha: 1, exp: Vec::new(), log: Vec::new() };
        let factors = prime_factors(q - 1);
        let alpha = match alpha_hint {
            Some(a) if a == 0 || a >= q => return Err(Error::ElementOutOfRange { value: a, q }),
            Some(a) => {
                if !field.slow_is_primitive(a, &factors) {
                    return Err(Error::NotPrimitive { alpha: a, q });
                }
                a
            }
            None => (1..q)
                .find(|&a| field.slow_is_primitive(a, &factors))
                .ok_or_else(|| Error::Internal(format!("GF({q}) has no primitive element")))?,
        };
        field.alpha = alpha as Elem;

        let n = (q - 1) as usize;
        let mut exp = Vec::with_capacity(2 * n);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp.push(x as Elem);
            log[x as usize] = i as u32;
            x = field.slow_mul(x, alpha);
        }
        exp.extend_from_within(..);
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// The field order `p^d`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, low degree first, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element used for the log tables.
    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    /// `exp_table()[i] = alpha^i` for `i < 2(q-1)`.
    pub fn exp_table(&self) -> &[Elem] {
        &self.exp
    }

    /// `log_table()[x]` is the discrete log of `x`; entry 0 is unused.
    pub fn log_table(&self) -> &[u32] {
        &self.log
    }

    pub fn contains(&self, x: u32) -> bool {
        x < self.q
    }

    pub fn check(&self, x: u32) -> Result<Elem> {
        if x < self.q {
            Ok(x as Elem)
        } else {
            Err(Error::ElementOutOfRange { value: x, q: self.q })
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.d == 1 {
            ((a as u32 + b as u32) % self.p) as Elem
        } else if self.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a as u32, b as u32);
            let (mut out, mut place) = (0u32, 1u32);
            while a > 0 || b > 0 {
                out += ((a % self.p + b % self.p) % self.p) * place;
                a /= self.p;
                b /= self.p;
                place *= self.p;
            }
            out as Elem
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.d == 1 {
            ((self.p - a as u32) % self.p) as Elem
        } else if self.p == 2 {
            a
        } else {
            let mut a = a as u32;
            let (mut out, mut place) = (0u32, 1u32);
            while a > 0 {
                out += ((self.p - a % self.p) % self.p) * place;
                a /= self.p;
                place *= self.p;
            }
            out as Elem
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n`, with `a^0 = 1` for every `a` including zero.
    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 * (n % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[e as usize]
    }

    /// `alpha^e` for any integer exponent.
    pub fn alpha_pow(&self, e: i64) -> Elem {
        let n = self.q as i64 - 1;
        self.exp[e.rem_euclid(n) as usize]
    }

    /// Discrete log base alpha; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn is_primitive(&self, a: Elem) -> bool {
        a != 0 && (a as u32) < self.q && num_integer::gcd(self.log[a as usize], self.q - 1) == 1
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let prod = poly_mulmod(&digits(a, self.p, self.d), &digits(b, self.p, self.d), &self.modulus, self.p);
        undigits(&prod, self.p)
    }

    fn slow_pow(&self, a: u32, mut n: u32) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            n >>= 1;
        }
        acc
    }

    fn slow_is_primitive(&self, a: u32, factors: &[u32]) -> bool {
        a != 0 && factors.iter().all(|&f| self.slow_pow(a, (self.q - 1) / f) != 1)
    }
}

fn checked_order(p: u32, d: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("extension degree must be positive".into()));
    }
    let mut q = 1u64;
    for _ in 0..d {
        q *= p as u64;
        if q > MAX_ORDER as u64 {
            return Err(Error::FieldTooLarge { p, d });
        }
    }
    Ok(q as u32)
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|i| i * i <= n).all(|i| n % i != 0)
}

/// Splits `q` as `p^d` when it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|i| q % i == 0)?;
    let (mut rest, mut d) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        d += 1;
    }
    (rest == 1).then_some((p, d))
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn digits(mut x: u32, p: u32, d: u32) -> Vec<u32> {
    (0..d)
        .map(|_| {
            let c = x % p;
            x /= p;
            c
        })
        .collect()
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `m`; coefficients low first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    for top in (dm..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for i in 0..=dm {
            let idx = top - dm + i;
            r[idx] = (r[idx] + (p - c) * m[i]) % p;
        }
    }
    r.truncate(dm.max(1));
    r.resize(dm, 0);
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let d = m.len() - 1;
    for deg in 1..=d / 2 {
        for low in 0..p.pow(deg as u32) {
            let mut divisor = digits(low, p, deg as u32);
            divisor.push(1);
            if poly_rem(m, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn lowest_irreducible(p: u32, d: u32) -> Vec<u32> {
    (0..p.pow(d))
        .map(|low| {
            let mut m = digits(low, p, d);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Schoolbook polynomial product reduced by the field modulus, written
    /// independently of the table code path.
    fn oracle_mul(f: &Field, a: u32, b: u32) -> u32 {
        let (p, d) = (f.p() as usize, f.d() as usize);
        let da: Vec<usize> = (0..d).map(|i| (a as usize / p.pow(i as u32)) % p).collect();
        let db: Vec<usize> = (0..d).map(|i| (b as usize / p.pow(i as u32)) % p).collect();
        let mut prod = vec![0usize; 2 * d];
        for i in 0..d {
            for j in 0..d {
                prod[i + j] += da[i] * db[j];
            }
        }
        let m: Vec<usize> = f.modulus().iter().map(|&c| c as usize).collect();
        for top in (d..2 * d).rev() {
            let c = prod[top] % p;
            for i in 0..=d {
                prod[top - d + i] += (p - c) * m[i];
            }
        }
        (0..d).rev().fold(0, |acc, i| acc * p + prod[i] % p) as u32
    }

    fn small_fields() -> Vec<Field> {
        [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]
            .iter()
            .map(|&(p, d)| Field::new(p, d, None).unwrap())
            .collect()
    }

    #[test]
    fn gf3_generator_is_two() {
        let f = Field::new(3, 1, None).unwrap();
        assert_eq!(f.q(), 3);
        assert_eq!(f.alpha(), 2);
        assert_eq!(f.mul(2, 2), 1);
        assert_eq!(f.mul(1, 2), 2);
    }

    #[test]
    fn gf7_hint_accepted_and_rejected() {
        let f = Field::new(7, 1, Some(3)).unwrap();
        assert_eq!(f.alpha(), 3);
        assert_eq!(f.pow(3, 3), 6);
        let mut brute = 1u32;
        for _ in 0..3 {
            brute = brute * 3 % 7;
        }
        assert_eq!(f.pow(3, 3) as u32, brute);
        assert_eq!(Field::new(7, 1, Some(2)), Err(Error::NotPrimitive { alpha: 2, q: 7 }));
        assert_eq!(Field::new(7, 1, Some(7)), Err(Error::ElementOutOfRange { value: 7, q: 7 }));
    }

    #[test]
    fn default_moduli_and_generators() {
        let f9 = Field::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(f9.mul(3, 3), 2);
        assert_eq!(oracle_mul(&f9, 3, 3), 2);
        // x has order 4 in GF(9) under x^2 + 1, so 1 + x is the first generator.
        assert_eq!(f9.alpha(), 4);

        let f16 = Field::new(2, 4, None).unwrap();
        assert_eq!(f16.modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(f16.alpha(), 2);

        let f5 = Field::new(5, 1, None).unwrap();
        assert_eq!(f5.modulus(), &[0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1, None), Err(Error::NotPrime(4)));
        assert_eq!(Field::new(2, 17, None), Err(Error::FieldTooLarge { p: 2, d: 17 }));
        assert_eq!(Field::of_order(6, None), Err(Error::NotPrimePower(6)));
        assert!(Field::with_modulus(3, 2, &[2, 0, 1], None).is_err()); // x^2 - 1 = (x-1)(x+1)
        assert!(Field::with_modulus(3, 2, &[2, 1, 1], None).is_ok());
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f = Field::new(5, 1, None).unwrap();
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
        assert_eq!(f.div(3, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn table_product_matches_polynomial_oracle() {
        for f in small_fields().into_iter().chain([Field::new(2, 8, None).unwrap(), Field::new(3, 5, None).unwrap()]) {
            for a in 0..f.q() {
                for b in 0..f.q() {
                    assert_eq!(f.mul(a as Elem, b as Elem) as u32, oracle_mul(&f, a, b), "{f:?} {a}*{b}");
                }
            }
        }
    }

    #[test]
    fn exp_log_roundtrip() {
        for f in small_fields() {
            for x in 1..f.q() as Elem {
                assert_eq!(f.exp_table()[f.log_table()[x as usize] as usize], x);
            }
            let distinct: std::collections::BTreeSet<_> = f.exp_table()[..f.q() as usize - 1].iter().collect();
            assert_eq!(distinct.len(), f.q() as usize - 1);
        }
    }

    #[test]
    fn axioms_exhaustive_on_small_fields() {
        for f in small_fields() {
            let q = f.q() as Elem;
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.pow(a, 0), 1);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn large_field_builds() {
        let f = Field::new(2, 16, None).unwrap();
        assert_eq!(f.q(), 65536);
        assert!(f.is_primitive(f.alpha()));
        let g = Field::new(257, 1, None).unwrap();
        assert_eq!(g.alpha(), 3);
    }
}
