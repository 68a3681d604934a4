//! Finite fields `F_q` for prime powers `q ≤ 16`.
//!
//! Prime fields use modular arithmetic directly. Extension fields are
//! represented by polynomials over `F_p` modulo a fixed Conway-style
//! irreducible polynomial, with log/antilog tables built from a primitive
//! element.

use crate::error::{Error, Result};

/// Element of a finite field, stored as its integer encoding in `0..q`.
pub type Elem = u8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u8,
    e: u8,
    q: u8,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    neg: Vec<Elem>,
    primitive: Elem,
}

// Irreducible polynomials for the extension fields, coefficients low to high
// excluding the leading 1.
fn modulus(p: u8, e: u8) -> Option<&'static [u8]> {
    match (p, e) {
        (2, 2) => Some(&[1, 1]),       // x^2 + x + 1
        (2, 3) => Some(&[1, 1, 0]),    // x^3 + x + 1
        (2, 4) => Some(&[1, 1, 0, 0]), // x^4 + x + 1
        (3, 2) => Some(&[2, 2]),       // x^2 + 2x + 2
        _ => None,
    }
}

fn factor_prime_power(q: u32) -> Option<(u8, u8)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut rest, mut e) = (q, 0u8);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u8, e))
}

impl FiniteField {
    /// Builds `F_q`; `q` must be a prime power no larger than 16.
    pub fn new(q: u32) -> Result<Self> {
        if q > 16 {
            return Err(Error::InvalidInput(format!("field order {q} exceeds 16")));
        }
        let (p, e) = factor_prime_power(q)
            .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        let qq = q as usize;
        let digits = |x: usize| -> Vec<u8> {
            (0..e).map(|i| ((x / (p as usize).pow(i as u32)) % p as usize) as u8).collect()
        };
        let encode = |d: &[u8]| -> u8 {
            d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize) as u8
        };
        let mut add = vec![0; qq * qq];
        let mut mul = vec![0; qq * qq];
        for a in 0..qq {
            for b in 0..qq {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<u8> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qq + b] = encode(&s);
                mul[a * qq + b] = if e == 1 {
                    ((a * b) % qq) as u8
                } else {
                    let m = modulus(p, e).expect("modulus table covers q <= 16");
                    let mut prod = vec![0u32; 2 * e as usize];
                    for (i, x) in da.iter().enumerate() {
                        for (j, y) in db.iter().enumerate() {
                            prod[i + j] += *x as u32 * *y as u32;
                        }
                    }
                    for deg in (e as usize..2 * e as usize).rev() {
                        let c = prod[deg] % p as u32;
                        prod[deg] = 0;
                        // x^e = -(m_0 + m_1 x + ...)
                        for (i, mi) in m.iter().enumerate() {
                            prod[deg - e as usize + i] += c * (p as u32 - *mi as u32);
                        }
                    }
                    let red: Vec<u8> =
                        prod[..e as usize].iter().map(|c| (c % p as u32) as u8).collect();
                    encode(&red)
                };
            }
        }
        let mut inv = vec![0; qq];
        let mut neg = vec![0; qq];
        for a in 0..qq {
            for b in 0..qq {
                if mul[a * qq + b] == 1 {
                    inv[a] = b as u8;
                }
                if add[a * qq + b] == 0 {
                    neg[a] = b as u8;
                }
            }
        }
        let primitive = (1..qq)
            .find(|&g| {
                let mut x = 1usize;
                let mut order = 0;
                loop {
                    x = mul[x * qq + g] as usize;
                    order += 1;
                    if x == 1 {
                        break;
                    }
                }
                order == qq - 1
            })
            .unwrap_or(1) as u8;
        Ok(Self { p, e, q: q as u8, add, mul, inv, neg, primitive })
    }

    pub fn order(&self) -> u32 {
        self.q as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    pub fn degree(&self) -> u32 {
        self.e as u32
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        debug_assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FiniteField) {
        let q = f.order() as u8;
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                }
            }
        }
    }

    #[test]
    fn all_small_fields_satisfy_field_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FiniteField::new(q).unwrap();
            check_axioms(&f);
            // primitive element generates the unit group
            let mut x = 1;
            let mut seen = std::collections::HashSet::new();
            for _ in 0..q - 1 {
                x = f.mul(x, f.primitive());
                seen.insert(x);
            }
            assert_eq!(seen.len() as u32, q - 1);
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(1).is_err());
        assert!(FiniteField::new(25).is_err());
    }
}
