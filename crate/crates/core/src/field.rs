//! Small finite fields F_q for prime powers q.
//!
//! Elements are encoded as integers 0..q-1. For a prime power q = p^k the
//! integer's base-p digits are the coefficients of a polynomial over F_p,
//! reduced modulo a fixed monic irreducible polynomial of degree k (the
//! lexicographically smallest one, so the encoding is deterministic).
//! Addition and multiplication are precomputed as dense q x q tables, which
//! is plenty for the matrix groups this crate builds (q <= 32 or so).

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    q: usize,
    p: usize,
    degree: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl GaloisField {
    /// Builds F_q, failing if q is not a prime power in 2..=4096.
    pub fn new(q: usize) -> Result<GaloisField> {
        if !(2..=4096).contains(&q) {
            return Err(Error::InvalidSpec(format!("field size {q} out of range 2..=4096")));
        }
        let p = smallest_prime_factor(q);
        let mut degree = 0;
        let mut m = q;
        while m.is_multiple_of(p) {
            m /= p;
            degree += 1;
        }
        if m != 1 {
            return Err(Error::InvalidSpec(format!("{q} is not a prime power")));
        }

        let modulus = smallest_irreducible(p, degree);
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = add_digits(a, b, p, degree) as u16;
                mul[a * q + b] = mul_mod(a, b, p, degree, &modulus) as u16;
            }
        }
        for (a, slot) in neg.iter_mut().enumerate() {
            let mut digits = to_digits(a, p, degree);
            for d in digits.iter_mut() {
                *d = (p - *d) % p;
            }
            *slot = from_digits(&digits, p) as u16;
        }
        // Inverses by scanning the multiplication table; the field is tiny.
        let mut inv = vec![0u16; q];
        for a in 1..q {
            let found = (1..q).find(|&b| mul[a * q + b] == 1);
            match found {
                Some(b) => inv[a] = b as u16,
                None => {
                    return Err(Error::InvalidSpec(format!(
                        "internal: {a} has no inverse in F_{q}; modulus not irreducible"
                    )))
                }
            }
        }
        Ok(GaloisField { q, p, degree, add, mul, neg, inv })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// Multiplicative inverse; a must be nonzero.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        debug_assert!(a != 0);
        self.inv[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }
}

fn smallest_prime_factor(n: usize) -> usize {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

fn to_digits(mut a: usize, p: usize, degree: usize) -> Vec<usize> {
    let mut digits = vec![0; degree];
    for d in digits.iter_mut() {
        *d = a % p;
        a /= p;
    }
    digits
}

fn from_digits(digits: &[usize], p: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn add_digits(a: usize, b: usize, p: usize, degree: usize) -> usize {
    let da = to_digits(a, p, degree);
    let db = to_digits(b, p, degree);
    let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    from_digits(&sum, p)
}

/// Polynomial product of the encodings of a and b, reduced mod the modulus.
/// The modulus is monic of degree `degree`, given by its low coefficients.
fn mul_mod(a: usize, b: usize, p: usize, degree: usize, modulus: &[usize]) -> usize {
    let da = to_digits(a, p, degree);
    let db = to_digits(b, p, degree);
    let mut prod = vec![0usize; 2 * degree];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // Reduce: x^degree = -modulus_low, repeatedly eliminate the top term.
    for i in (degree..2 * degree).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &m) in modulus.iter().enumerate() {
            let idx = i - degree + j;
            prod[idx] = (prod[idx] + c * (p - m)) % p;
        }
    }
    from_digits(&prod[..degree], p)
}

/// Lexicographically smallest monic irreducible polynomial of the given
/// degree over F_p, returned as its low `degree` coefficients.
fn smallest_irreducible(p: usize, degree: usize) -> Vec<usize> {
    if degree == 1 {
        return vec![0];
    }
    let total = p.pow(degree as u32);
    for enc in 0..total {
        let low = to_digits(enc, p, degree);
        if is_irreducible(&low, p, degree) {
            return low;
        }
    }
    unreachable!("irreducible polynomials exist in every degree");
}

/// Trial division by all monic polynomials of degree 1..=degree/2.
fn is_irreducible(low: &[usize], p: usize, degree: usize) -> bool {
    for d in 1..=degree / 2 {
        let count = p.pow(d as u32);
        for enc in 0..count {
            let div_low = to_digits(enc, p, d);
            if divides(&div_low, d, low, degree, p) {
                return false;
            }
        }
    }
    true
}

/// Does the monic polynomial (div_low, degree d) divide (low, degree n)?
fn divides(div_low: &[usize], d: usize, low: &[usize], n: usize, p: usize) -> bool {
    // Synthetic division of x^n + low by x^d + div_low.
    let mut rem: Vec<usize> = low.to_vec();
    rem.push(1); // monic leading coefficient
    for i in (d..=n).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        rem[i] = 0;
        for (j, &m) in div_low.iter().enumerate() {
            let idx = i - d + j;
            rem[idx] = (rem[idx] + c * (p - m)) % p;
        }
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_is_mod_p() {
        let f = GaloisField::new(7).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(f.add(a, b), (a + b) % 7);
                assert_eq!(f.mul(a, b), (a * b) % 7);
            }
        }
        assert_eq!(f.inv(3), 5);
    }

    #[test]
    fn f4_has_characteristic_two() {
        let f = GaloisField::new(4).unwrap();
        assert_eq!(f.characteristic(), 2);
        for a in 0..4 {
            assert_eq!(f.add(a, a), 0);
        }
        // The two non-0/1 elements are mutually inverse cube roots of unity.
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn field_axioms_hold_for_small_prime_powers() {
        for q in [2, 3, 4, 5, 8, 9, 16, 25, 27] {
            let f = GaloisField::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn non_prime_power_rejected() {
        assert!(GaloisField::new(6).is_err());
        assert!(GaloisField::new(12).is_err());
    }
}
