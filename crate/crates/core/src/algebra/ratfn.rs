use super::gf::{Fe, Gf};
use super::poly::PolyRing;
use super::ring::{Field, Ring};

/// Element of F(T): numerator over monic denominator, in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatFn {
    pub num: Vec<Fe>,
    pub den: Vec<Fe>,
}

/// The rational function field F(T) over a small finite field.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFnField {
    pub ring: PolyRing<Gf>,
}

/// `f^q` for a polynomial over F: Frobenius on coefficients, `T ↦ T^q`.
pub fn poly_frobenius(gf: &Gf, f: &[Fe], q: u64) -> Vec<Fe> {
    if f.is_empty() {
        return vec![];
    }
    let q = q as usize;
    let mut out = vec![Fe(0); (f.len() - 1) * q + 1];
    for (i, &c) in f.iter().enumerate() {
        out[i * q] = gf.pow_u64(c, q as u64);
    }
    out
}

/// Multiplicity of the monic irreducible `pi` in `f` (`u32::MAX` for zero).
pub fn poly_valuation(ring: &PolyRing<Gf>, f: &[Fe], pi: &[Fe]) -> u32 {
    if f.is_empty() {
        return u32::MAX;
    }
    let mut v = 0;
    let mut cur = f.to_vec();
    loop {
        let (q, r) = ring.divrem(&cur, pi);
        if !r.is_empty() {
            return v;
        }
        v += 1;
        cur = q;
    }
}

/// Splits `f = pi^v · rest` with `pi ∤ rest`.
pub fn split_off(ring: &PolyRing<Gf>, f: &[Fe], pi: &[Fe]) -> (u32, Vec<Fe>) {
    let mut v = 0;
    let mut cur = f.to_vec();
    loop {
        let (q, r) = ring.divrem(&cur, pi);
        if !r.is_empty() {
            return (v, cur);
        }
        v += 1;
        cur = q;
    }
}

impl RatFnField {
    pub fn new(gf: Gf) -> Self {
        Self {
            ring: PolyRing::new(gf),
        }
    }

    pub fn gf(&self) -> &Gf {
        &self.ring.base
    }

    /// `num/den` reduced to canonical form; `den` must be nonzero.
    pub fn frac(&self, num: &[Fe], den: &[Fe]) -> RatFn {
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return self.zero();
        }
        let g = self.ring.gcd(num, den);
        let (n, _) = self.ring.divrem(num, &g);
        let (d, _) = self.ring.divrem(den, &g);
        let l = self.ring.base.inv(&self.ring.lead(&d)).unwrap();
        RatFn {
            num: self.ring.scale(&n, &l),
            den: self.ring.scale(&d, &l),
        }
    }

    pub fn from_poly(&self, p: &[Fe]) -> RatFn {
        RatFn {
            num: self.ring.normalized(p.to_vec()),
            den: vec![Fe(1)],
        }
    }

    pub fn from_const(&self, c: Fe) -> RatFn {
        self.from_poly(&[c])
    }

    pub fn t(&self) -> RatFn {
        self.from_poly(&[Fe(0), Fe(1)])
    }

    pub fn is_poly(&self, a: &RatFn) -> bool {
        a.den.len() == 1
    }

    /// Valuation at the finite place `pi` (monic irreducible).
    pub fn valuation(&self, a: &RatFn, pi: &[Fe]) -> Option<i64> {
        if a.num.is_empty() {
            return None;
        }
        Some(
            poly_valuation(&self.ring, &a.num, pi) as i64
                - poly_valuation(&self.ring, &a.den, pi) as i64,
        )
    }

    /// Valuation at infinity, `deg den − deg num`.
    pub fn valuation_inf(&self, a: &RatFn) -> Option<i64> {
        if a.num.is_empty() {
            return None;
        }
        Some(a.den.len() as i64 - a.num.len() as i64)
    }

    /// Image under `T ↦ 1/T`.
    pub fn invert_variable(&self, a: &RatFn) -> RatFn {
        if a.num.is_empty() {
            return self.zero();
        }
        let rn = self.ring.normalized(a.num.iter().rev().cloned().collect());
        let rd = self.ring.normalized(a.den.iter().rev().cloned().collect());
        let shift = a.den.len() as i64 - a.num.len() as i64;
        let (n, d) = if shift >= 0 {
            (
                self.ring
                    .mul(&rn, &self.ring.monomial(Fe(1), shift as usize)),
                rd,
            )
        } else {
            (
                rn,
                self.ring
                    .mul(&rd, &self.ring.monomial(Fe(1), (-shift) as usize)),
            )
        };
        self.frac(&n, &d)
    }

    pub fn pi_power(&self, pi: &[Fe], k: i64) -> RatFn {
        let pk = self.ring.pow(&pi.to_vec(), k.unsigned_abs());
        if k >= 0 {
            self.from_poly(&pk)
        } else {
            self.frac(&[Fe(1)], &pk)
        }
    }

    pub fn frobenius(&self, a: &RatFn) -> RatFn {
        let q = self.gf().q();
        RatFn {
            num: poly_frobenius(self.gf(), &a.num, q),
            den: poly_frobenius(self.gf(), &a.den, q),
        }
    }

    /// Sum of the numerator and denominator degrees; a size measure.
    pub fn height(&self, a: &RatFn) -> usize {
        a.num.len() + a.den.len()
    }
}

impl Ring for RatFnField {
    type Elem = RatFn;

    fn zero(&self) -> RatFn {
        RatFn {
            num: vec![],
            den: vec![Fe(1)],
        }
    }
    fn one(&self) -> RatFn {
        RatFn {
            num: vec![Fe(1)],
            den: vec![Fe(1)],
        }
    }
    fn is_zero(&self, a: &RatFn) -> bool {
        a.num.is_empty()
    }
    fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        if a.num.is_empty() {
            return b.clone();
        }
        if b.num.is_empty() {
            return a.clone();
        }
        let r = &self.ring;
        if a.den == b.den {
            return self.frac(&r.add(&a.num, &b.num), &a.den);
        }
        let n = r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den));
        self.frac(&n, &r.mul(&a.den, &b.den))
    }
    fn sub(&self, a: &RatFn, b: &RatFn) -> RatFn {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &RatFn) -> RatFn {
        RatFn {
            num: self.ring.neg(&a.num),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        let r = &self.ring;
        if a.den.len() == 1 && b.den.len() == 1 {
            return RatFn {
                num: r.mul(&a.num, &b.num),
                den: vec![Fe(1)],
            };
        }
        // Cross-cancel before multiplying to keep sizes small.
        let g1 = r.gcd(&a.num, &b.den);
        let g2 = r.gcd(&b.num, &a.den);
        let an = r.divrem(&a.num, &g1).0;
        let bd = r.divrem(&b.den, &g1).0;
        let bn = r.divrem(&b.num, &g2).0;
        let ad = r.divrem(&a.den, &g2).0;
        let num = r.mul(&an, &bn);
        let den = r.mul(&ad, &bd);
        let l = r.base.inv(&r.lead(&den)).unwrap();
        RatFn {
            num: r.scale(&num, &l),
            den: r.scale(&den, &l),
        }
    }
    fn characteristic(&self) -> u32 {
        self.ring.base.p()
    }
    fn mul_int(&self, a: &RatFn, n: u64) -> RatFn {
        let c = self.ring.base.mul_int(&Fe(1), n);
        RatFn {
            num: self.ring.scale(&a.num, &c),
            den: if c.0 == 0 { vec![Fe(1)] } else { a.den.clone() },
        }
    }
}

impl Field for RatFnField {
    fn inv(&self, a: &RatFn) -> Option<RatFn> {
        if a.num.is_empty() {
            return None;
        }
        let l = self.ring.base.inv(&self.ring.lead(&a.num)).unwrap();
        Some(RatFn {
            num: self.ring.scale(&a.den, &l),
            den: self.ring.scale(&a.num, &l),
        })
    }
}
