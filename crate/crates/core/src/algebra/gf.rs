use std::fmt;
use std::sync::Arc;

use super::ring::{Field, FiniteField, FpSpace, Ring};
use crate::error::{Error, Result};

/// Largest field order backed by exp/log tables.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Element of a small finite field, encoded as the integer `Σ d_i p^i` where
/// `d_i` is the F_p-coordinate on `s^i` for the defining generator `s`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fe(pub u32);

/// The finite field F_p[s]/(modulus), table driven.
///
/// `q` records the order of the subfield over which the Carlitz module is
/// defined; it is what the Frobenius `τ` raises to. For a prime field or for
/// F_q itself this is the field order.
#[derive(Clone)]
pub struct Gf(Arc<GfInner>);

struct GfInner {
    p: u32,
    degree: u32,
    size: u32,
    q: u64,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.degree)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus && self.0.q == other.0.q)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = code % p;
        code /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Multiplication of digit vectors modulo a monic modulus over F_p.
fn slow_mul(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (n..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &m) in modulus.iter().take(n).enumerate() {
            prod[k - n + i] = (prod[k - n + i] + (p - c) * m) % p;
        }
    }
    prod.truncate(n);
    prod
}

impl Gf {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Gf> {
        Gf::new(p, &[0, 1], p as u64)
    }

    /// F_p[s]/(modulus) with `modulus` monic (low coefficient first).
    /// Fails unless the quotient is a field.
    pub fn new(p: u32, modulus: &[u32], q: u64) -> Result<Gf> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let degree = modulus
            .len()
            .checked_sub(1)
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidField("modulus must have degree at least one".into()))?
            as u32;
        if *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus must be monic over F_p".into()));
        }
        let size64 = (p as u64).checked_pow(degree).unwrap_or(u64::MAX);
        if size64 > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(size64));
        }
        let size = size64 as u32;
        let n = degree as usize;

        // Search for a primitive element; its powers fill the exp table.
        let mut exp = Vec::new();
        let mut found = false;
        for g in 1..size {
            let gd = digits(g, p, n);
            let mut cur = digits(1, p, n);
            let mut seq = Vec::with_capacity(size as usize - 1);
            let mut ok = true;
            for i in 0..size - 1 {
                let c = undigits(&cur, p);
                if i > 0 && c == 1 {
                    ok = false;
                    break;
                }
                seq.push(c);
                cur = slow_mul(&cur, &gd, modulus, p);
            }
            if ok && undigits(&cur, p) == 1 {
                exp = seq;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is not irreducible over F_{p}"
            )));
        }
        let mut log = vec![u32::MAX; size as usize];
        for (i, &c) in exp.iter().enumerate() {
            log[c as usize] = i as u32;
        }
        let neg = (0..size)
            .map(|c| {
                let d: Vec<u32> = digits(c, p, n).iter().map(|&x| (p - x) % p).collect();
                undigits(&d, p)
            })
            .collect();
        let add = if p != 2 && size <= 256 {
            let mut t = vec![0u32; (size * size) as usize];
            for a in 0..size {
                let da = digits(a, p, n);
                for b in 0..size {
                    let db = digits(b, p, n);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * size + b) as usize] = undigits(&s, p);
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(Gf(Arc::new(GfInner {
            p,
            degree,
            size,
            q,
            modulus: modulus.to_vec(),
            exp,
            log,
            neg,
            add,
        })))
    }

    /// The same field with a different Carlitz base order.
    pub fn with_q(&self, q: u64) -> Gf {
        let i = &self.0;
        Gf(Arc::new(GfInner {
            p: i.p,
            degree: i.degree,
            size: i.size,
            q,
            modulus: i.modulus.clone(),
            exp: i.exp.clone(),
            log: i.log.clone(),
            neg: i.neg.clone(),
            add: i.add.clone(),
        }))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Degree over F_p.
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    /// Order of the Carlitz constant field F_q.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elem(&self, code: u32) -> Fe {
        debug_assert!(code < self.0.size);
        Fe(code)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.size).map(Fe)
    }

    pub fn coords(&self, a: Fe) -> Vec<u32> {
        digits(a.0, self.0.p, self.0.degree as usize)
    }

    pub fn from_coords(&self, c: &[u32]) -> Fe {
        Fe(undigits(c, self.0.p))
    }

    /// `a^q`, the Frobenius of the Carlitz constant field.
    pub fn frob(&self, a: Fe) -> Fe {
        self.pow_u64(a, self.0.q)
    }

    pub fn pow_u64(&self, a: Fe, e: u64) -> Fe {
        if a.0 == 0 {
            return if e == 0 { Fe(1) } else { Fe(0) };
        }
        let m = (self.0.size - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        Fe(self.0.exp[((l * (e % m)) % m) as usize])
    }

    /// Multiplicative generator used for the tables.
    pub fn primitive(&self) -> Fe {
        Fe(self.0.exp.get(1).copied().unwrap_or(1))
    }

    /// Whether `a` lies in the subfield of order `q`.
    pub fn in_subfield(&self, a: Fe) -> bool {
        self.frob(a) == a
    }
}

impl Ring for Gf {
    type Elem = Fe;

    fn zero(&self) -> Fe {
        Fe(0)
    }
    fn one(&self) -> Fe {
        Fe(1)
    }
    fn is_zero(&self, a: &Fe) -> bool {
        a.0 == 0
    }
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let i = &self.0;
        if i.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if let Some(t) = &i.add {
            return Fe(t[(a.0 * i.size + b.0) as usize]);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % i.p + y % i.p) % i.p) * place;
            x /= i.p;
            y /= i.p;
            place *= i.p;
        }
        Fe(out)
    }
    fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Fe) -> Fe {
        Fe(self.0.neg[a.0 as usize])
    }
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let i = &self.0;
        let m = i.size - 1;
        let s = i.log[a.0 as usize] + i.log[b.0 as usize];
        Fe(i.exp[(if s >= m { s - m } else { s }) as usize])
    }
    fn characteristic(&self) -> u32 {
        self.0.p
    }
    fn mul_int(&self, a: &Fe, n: u64) -> Fe {
        let k = (n % self.0.p as u64) as u32;
        self.mul(a, &Fe(k))
    }
    fn pow(&self, a: &Fe, e: u64) -> Fe {
        self.pow_u64(*a, e)
    }
}

impl Field for Gf {
    fn inv(&self, a: &Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let i = &self.0;
        let m = i.size - 1;
        let l = i.log[a.0 as usize];
        Some(Fe(i.exp[((m - l) % m) as usize]))
    }
}

impl FpSpace for Gf {
    fn fp_dim(&self) -> usize {
        self.0.degree as usize
    }
    fn to_fp(&self, a: &Fe) -> Vec<u32> {
        self.coords(*a)
    }
    fn from_fp(&self, c: &[u32]) -> Fe {
        self.from_coords(c)
    }
}

impl FiniteField for Gf {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f = Gf::new(2, &[1, 1, 1], 4).unwrap();
        let s = f.elem(2);
        // s^2 = s + 1
        assert_eq!(f.mul(&s, &s), f.elem(3));
        assert_eq!(f.mul(&s, &f.elem(3)), f.one());
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
    }

    #[test]
    fn f9_add_and_neg() {
        let f = Gf::new(3, &[1, 0, 1], 9).unwrap();
        for a in f.elements() {
            assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
            for b in f.elements() {
                assert_eq!(f.add(&a, &b), f.add(&b, &a));
            }
        }
        let s = f.elem(3);
        assert_eq!(f.mul(&s, &s), f.neg(&f.one()));
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(Gf::new(2, &[1, 0, 1], 4).is_err());
        assert!(matches!(Gf::prime(4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn subfield_membership() {
        // F_16 over F_2 with q = 4: exactly four elements are fixed by x -> x^4.
        let f = Gf::new(2, &[1, 1, 0, 0, 1], 4).unwrap();
        assert_eq!(f.elements().filter(|&a| f.in_subfield(a)).count(), 4);
    }
}
