use super::ring::{Field, FpSpace, Ring};

/// Dense univariate polynomials over `R`, lowest degree first, with no
/// trailing zeros (the zero polynomial is the empty vector).
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R: Ring> {
    pub base: R,
}

pub type Poly<R> = Vec<<R as Ring>::Elem>;

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        Self { base }
    }

    pub fn normalize(&self, f: &mut Vec<R::Elem>) {
        while f.last().is_some_and(|c| self.base.is_zero(c)) {
            f.pop();
        }
    }

    pub fn normalized(&self, mut f: Vec<R::Elem>) -> Vec<R::Elem> {
        self.normalize(&mut f);
        f
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn deg(&self, f: &[R::Elem]) -> Option<usize> {
        f.len().checked_sub(1)
    }

    pub fn lead(&self, f: &[R::Elem]) -> R::Elem {
        f.last().cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn constant(&self, c: R::Elem) -> Vec<R::Elem> {
        self.normalized(vec![c])
    }

    pub fn monomial(&self, c: R::Elem, k: usize) -> Vec<R::Elem> {
        if self.base.is_zero(&c) {
            return vec![];
        }
        let mut v = vec![self.base.zero(); k + 1];
        v[k] = c;
        v
    }

    pub fn x(&self) -> Vec<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn coeff(&self, f: &[R::Elem], i: usize) -> R::Elem {
        f.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn scale(&self, f: &[R::Elem], c: &R::Elem) -> Vec<R::Elem> {
        self.normalized(f.iter().map(|a| self.base.mul(a, c)).collect())
    }

    pub fn map_coeffs<S: Ring>(
        &self,
        f: &[R::Elem],
        target: &PolyRing<S>,
        m: impl Fn(&R::Elem) -> S::Elem,
    ) -> Vec<S::Elem> {
        target.normalized(f.iter().map(m).collect())
    }

    pub fn eval(&self, f: &[R::Elem], x: &R::Elem) -> R::Elem {
        f.iter().rev().fold(self.base.zero(), |acc, c| {
            self.base.add(&self.base.mul(&acc, x), c)
        })
    }

    /// Evaluates `f` at an element of an `R`-algebra.
    pub fn eval_in<S: Ring>(
        &self,
        f: &[R::Elem],
        s: &S,
        x: &S::Elem,
        embed: impl Fn(&R::Elem) -> S::Elem,
    ) -> S::Elem {
        f.iter()
            .rev()
            .fold(s.zero(), |acc, c| s.add(&s.mul(&acc, x), &embed(c)))
    }

    pub fn derivative(&self, f: &[R::Elem]) -> Vec<R::Elem> {
        self.normalized(
            f.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.base.mul_int(c, i as u64))
                .collect(),
        )
    }

    /// `f(g(x))`.
    pub fn compose(&self, f: &[R::Elem], g: &[R::Elem]) -> Vec<R::Elem> {
        f.iter().rev().fold(vec![], |acc, c| {
            let t = self.mul(&acc, &g.to_vec());
            self.add(&t, &self.constant(c.clone()))
        })
    }

    /// Division by a monic polynomial; works over any ring.
    pub fn divrem_monic(&self, f: &[R::Elem], g: &[R::Elem]) -> (Vec<R::Elem>, Vec<R::Elem>) {
        let dg = self.deg(g).expect("division by zero polynomial");
        debug_assert!(self.base.is_one(&g[dg]));
        if f.len() <= dg {
            return (vec![], f.to_vec());
        }
        let mut r = f.to_vec();
        let mut quo = vec![self.base.zero(); f.len() - dg];
        for k in (0..quo.len()).rev() {
            let c = r[k + dg].clone();
            if self.base.is_zero(&c) {
                continue;
            }
            for (i, gi) in g.iter().enumerate() {
                r[k + i] = self.base.sub(&r[k + i], &self.base.mul(&c, gi));
            }
            quo[k] = c;
        }
        r.truncate(dg);
        (self.normalized(quo), self.normalized(r))
    }

    pub fn rem_monic(&self, f: &[R::Elem], g: &[R::Elem]) -> Vec<R::Elem> {
        self.divrem_monic(f, g).1
    }
}

impl<R: Field> PolyRing<R> {
    pub fn monic(&self, f: &[R::Elem]) -> Vec<R::Elem> {
        match f.last() {
            None => vec![],
            Some(l) => {
                let li = self.base.inv(l).expect("leading coefficient is a unit");
                self.scale(f, &li)
            }
        }
    }

    pub fn is_monic(&self, f: &[R::Elem]) -> bool {
        f.last().is_some_and(|c| self.base.is_one(c))
    }

    pub fn divrem(&self, f: &[R::Elem], g: &[R::Elem]) -> (Vec<R::Elem>, Vec<R::Elem>) {
        let dg = self.deg(g).expect("division by zero polynomial");
        if f.len() <= dg {
            return (vec![], f.to_vec());
        }
        let li = self
            .base
            .inv(&g[dg])
            .expect("leading coefficient is a unit");
        let mut r = f.to_vec();
        let mut quo = vec![self.base.zero(); f.len() - dg];
        for k in (0..quo.len()).rev() {
            let c = self.base.mul(&r[k + dg], &li);
            if self.base.is_zero(&c) {
                continue;
            }
            for (i, gi) in g.iter().enumerate() {
                r[k + i] = self.base.sub(&r[k + i], &self.base.mul(&c, gi));
            }
            quo[k] = c;
        }
        r.truncate(dg);
        (self.normalized(quo), self.normalized(r))
    }

    pub fn rem(&self, f: &[R::Elem], g: &[R::Elem]) -> Vec<R::Elem> {
        self.divrem(f, g).1
    }

    /// Exact quotient, or `None` when `g` does not divide `f`.
    pub fn div_exact(&self, f: &[R::Elem], g: &[R::Elem]) -> Option<Vec<R::Elem>> {
        let (q, r) = self.divrem(f, g);
        r.is_empty().then_some(q)
    }

    pub fn divides(&self, g: &[R::Elem], f: &[R::Elem]) -> bool {
        self.rem(f, g).is_empty()
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, f: &[R::Elem], g: &[R::Elem]) -> Vec<R::Elem> {
        let (mut a, mut b) = (f.to_vec(), g.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(d, s, t)` with `s·f + t·g = d` and `d` the monic gcd.
    pub fn xgcd(&self, f: &[R::Elem], g: &[R::Elem]) -> (Vec<R::Elem>, Vec<R::Elem>, Vec<R::Elem>) {
        let one = self.constant(self.base.one());
        let (mut r0, mut r1) = (f.to_vec(), g.to_vec());
        let (mut s0, mut s1) = (one.clone(), vec![]);
        let (mut t0, mut t1) = (vec![], one);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.last() {
            None => (vec![], s0, t0),
            Some(l) => {
                let li = self.base.inv(l).expect("unit");
                (
                    self.scale(&r0, &li),
                    self.scale(&s0, &li),
                    self.scale(&t0, &li),
                )
            }
        }
    }

    pub fn mulmod(&self, a: &[R::Elem], b: &[R::Elem], m: &[R::Elem]) -> Vec<R::Elem> {
        self.rem(&self.mul(&a.to_vec(), &b.to_vec()), m)
    }

    pub fn powmod(&self, a: &[R::Elem], mut e: u64, m: &[R::Elem]) -> Vec<R::Elem> {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.constant(self.base.one()), m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mulmod(&base, &base, m);
            }
        }
        acc
    }

    /// Inverse of `a` modulo `m`, if it exists.
    pub fn invmod(&self, a: &[R::Elem], m: &[R::Elem]) -> Option<Vec<R::Elem>> {
        let (d, s, _) = self.xgcd(a, m);
        (d.len() == 1).then(|| self.rem(&s, m))
    }

    pub fn is_squarefree(&self, f: &[R::Elem]) -> bool {
        let d = self.derivative(f);
        if d.is_empty() {
            return f.len() <= 1;
        }
        self.gcd(f, &d).len() == 1
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![]
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.clone();
        for (o, s) in out.iter_mut().zip(short) {
            *o = self.base.add(o, s);
        }
        self.normalized(out)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => self.base.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => self.base.neg(y),
                (None, None) => unreachable!(),
            })
            .collect();
        self.normalized(out)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|c| self.base.neg(c)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.base.mul(x, y);
                out[i + j] = self.base.add(&out[i + j], &t);
            }
        }
        self.normalized(out)
    }
    fn characteristic(&self) -> u32 {
        self.base.characteristic()
    }
}

/// Polynomials of degree `< len` as an F_p-space (used for bounded unknowns).
pub fn bounded_to_fp<R: FpSpace>(ring: &PolyRing<R>, f: &[R::Elem], len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len * ring.base.fp_dim());
    for i in 0..len {
        out.extend(ring.base.to_fp(&ring.coeff(f, i)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf::{Fe, Gf};

    fn f2() -> PolyRing<Gf> {
        PolyRing::new(Gf::prime(2).unwrap())
    }

    fn p(bits: &[u32]) -> Vec<Fe> {
        bits.iter().map(|&b| Fe(b)).collect()
    }

    #[test]
    fn divrem_reconstructs() {
        let r = f2();
        let f = p(&[1, 0, 1, 1, 0, 1]);
        let g = p(&[1, 1, 1]);
        let (q, rem) = r.divrem(&f, &g);
        assert_eq!(r.add(&r.mul(&q, &g), &rem), f);
        assert!(rem.len() < g.len());
    }

    #[test]
    fn xgcd_bezout() {
        let r = f2();
        let f = p(&[0, 1, 1]);
        let g = p(&[0, 1]);
        let (d, s, t) = r.xgcd(&f, &g);
        assert_eq!(d, p(&[0, 1]));
        assert_eq!(r.add(&r.mul(&s, &f), &r.mul(&t, &g)), d);
    }

    #[test]
    fn compose_and_derivative() {
        let r = f2();
        // (x+1)^2 = x^2 + 1
        let f = p(&[0, 0, 1]);
        let g = p(&[1, 1]);
        assert_eq!(r.compose(&f, &g), p(&[1, 0, 1]));
        assert!(r.derivative(&f).is_empty());
        assert_eq!(r.derivative(&p(&[1, 1, 1, 1])), p(&[1, 0, 1]));
    }
}
