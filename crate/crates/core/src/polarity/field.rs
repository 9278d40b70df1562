//! Finite fields of order at most 27 as explicit operation tables.
//!
//! Elements are `0..q`. For `q = p^k` an element encodes the polynomial
//! whose base-`p` digits are its coefficients (lowest degree first), reduced
//! modulo a fixed irreducible polynomial.

use crate::error::{Error, Result};

/// Field orders this crate can build.
pub const SUPPORTED: [u32; 15] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27];

#[derive(Clone, Debug)]
pub struct Field {
    q: usize,
    p: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// `(p, k, modulus)` where `modulus` lists the low coefficients of a monic
/// irreducible polynomial of degree `k` over `F_p`.
fn presentation(q: u32) -> Option<(usize, usize, &'static [usize])> {
    Some(match q {
        2 | 3 | 5 | 7 | 11 | 13 | 17 | 19 | 23 => (q as usize, 1, &[]),
        4 => (2, 2, &[1, 1]),       // x^2 + x + 1
        8 => (2, 3, &[1, 1, 0]),    // x^3 + x + 1
        16 => (2, 4, &[1, 1, 0, 0]), // x^4 + x + 1
        9 => (3, 2, &[1, 0]),       // x^2 + 1
        27 => (3, 3, &[1, 2, 0]),   // x^3 + 2x + 1
        25 => (5, 2, &[2, 0]),      // x^2 + 2
        _ => return None,
    })
}

impl Field {
    /// Builds the tables and checks every field axiom on them.
    pub fn new(q: u32) -> Result<Self> {
        let (p, k, modulus) = presentation(q).ok_or(Error::UnsupportedField(q))?;
        let qs = q as usize;
        let digits = |mut x: usize| -> Vec<usize> {
            let mut d = vec![0; k];
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let encode = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            let da = digits(a);
            for b in 0..qs {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = encode(&sum) as u8;
                // schoolbook product, then reduce x^i for i >= k
                let mut prod = vec![0; 2 * k];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for i in (k..2 * k).rev() {
                    let c = prod[i];
                    if c == 0 {
                        continue;
                    }
                    prod[i] = 0;
                    // x^k = -(modulus)
                    for (j, m) in modulus.iter().enumerate() {
                        prod[i - k + j] = (prod[i - k + j] + (p - m % p) % p * c) % p;
                    }
                }
                mul[a * qs + b] = encode(&prod[..k]) as u8;
            }
        }
        let neg = (0..qs).map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap_or(0) as u8).collect();
        let inv = (0..qs).map(|a| (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap_or(0) as u8).collect();
        let f = Field { q: qs, p, add, mul, neg, inv };
        f.check_axioms()?;
        Ok(f)
    }

    fn check_axioms(&self) -> Result<()> {
        let q = self.q;
        let fail = |what: &str| Err(Error::Precondition(format!("F_{q} table violates {what}")));
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return fail("identities");
            }
            if self.add(a, self.neg(a)) != 0 {
                return fail("additive inverses");
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return fail("multiplicative inverses");
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity");
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                    {
                        return fail("associativity");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity");
                    }
                }
            }
        }
        Ok(())
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

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `inv(0)` is reported as 0.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn dot(&self, x: &[usize; 3], y: &[usize; 3]) -> usize {
        let s = self.add(self.mul(x[0], y[0]), self.mul(x[1], y[1]));
        self.add(s, self.mul(x[2], y[2]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_supported_order_builds() {
        for q in SUPPORTED {
            let f = Field::new(q).unwrap();
            assert_eq!(f.order(), q as usize);
            // the multiplicative group is cyclic of order q - 1
            let has_generator = (1..f.order()).any(|g| {
                let mut x = g;
                let mut ord = 1;
                while x != 1 {
                    x = f.mul(x, g);
                    ord += 1;
                }
                ord == f.order() - 1
            });
            assert!(has_generator, "q = {q}");
        }
    }

    #[test]
    fn unsupported_orders_are_rejected() {
        for q in [0, 1, 6, 10, 12, 29, 32] {
            assert!(matches!(Field::new(q), Err(Error::UnsupportedField(_))));
        }
    }
}
