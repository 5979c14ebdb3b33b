use super::gf::Gf;
use super::poly::PolyRing;
use super::ring::{Field, FiniteField, FpSpace, Ring};

/// The quotient `R[y]/(modulus)` for a monic modulus over a field `R`.
///
/// This is a field exactly when the modulus is irreducible; for reducible
/// moduli (e.g. `A/π^N`) it is still a ring and `inv` fails on zero divisors.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtField<R: Field> {
    pub poly: PolyRing<R>,
    pub modulus: Vec<R::Elem>,
}

impl<R: Field> ExtField<R> {
    pub fn new(base: R, modulus: Vec<R::Elem>) -> Self {
        let poly = PolyRing::new(base);
        let modulus = poly.monic(&modulus);
        assert!(modulus.len() >= 2, "modulus must have positive degree");
        Self { poly, modulus }
    }

    pub fn base(&self) -> &R {
        &self.poly.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn reduce(&self, f: &[R::Elem]) -> Vec<R::Elem> {
        if f.len() < self.modulus.len() {
            return self.poly.normalized(f.to_vec());
        }
        self.poly.rem_monic(f, &self.modulus)
    }

    /// The class of `y`.
    pub fn gen(&self) -> Vec<R::Elem> {
        self.reduce(&self.poly.x())
    }

    pub fn from_base(&self, c: R::Elem) -> Vec<R::Elem> {
        self.poly.constant(c)
    }

    /// The base-field value of an element lying in the base field.
    pub fn as_base(&self, a: &[R::Elem]) -> Option<R::Elem> {
        match a.len() {
            0 => Some(self.base().zero()),
            1 => Some(a[0].clone()),
            _ => None,
        }
    }
}

impl<R: Field> Ring for ExtField<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![]
    }
    fn one(&self) -> Self::Elem {
        self.poly.one()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.poly.add(a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.poly.sub(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.poly.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&self.poly.mul(a, b))
    }
    fn characteristic(&self) -> u32 {
        self.poly.characteristic()
    }
    fn mul_int(&self, a: &Self::Elem, n: u64) -> Self::Elem {
        self.poly
            .normalized(a.iter().map(|c| self.base().mul_int(c, n)).collect())
    }
}

impl<R: Field> Field for ExtField<R> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.is_empty() {
            return None;
        }
        self.poly.invmod(a, &self.modulus)
    }
}

impl FpSpace for ExtField<Gf> {
    fn fp_dim(&self) -> usize {
        self.degree() * self.base().degree() as usize
    }
    fn to_fp(&self, a: &Self::Elem) -> Vec<u32> {
        super::poly::bounded_to_fp(&self.poly, a, self.degree())
    }
    fn from_fp(&self, coords: &[u32]) -> Self::Elem {
        let k = self.base().degree() as usize;
        let v = coords
            .chunks(k)
            .map(|c| self.base().from_coords(c))
            .collect();
        self.poly.normalized(v)
    }
}

impl FiniteField for ExtField<Gf> {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf::Fe;

    #[test]
    fn f8_as_quotient() {
        let f2 = Gf::prime(2).unwrap();
        let e = ExtField::new(f2, vec![Fe(1), Fe(1), Fe(0), Fe(1)]);
        assert_eq!(e.order(), 8);
        let y = e.gen();
        assert_eq!(e.pow(&y, 7), e.one());
        assert_eq!(e.mul(&y, &e.inv(&y).unwrap()), e.one());
        let c = e.to_fp(&y);
        assert_eq!(e.from_fp(&c), y);
    }

    #[test]
    fn zero_divisor_has_no_inverse() {
        let f2 = Gf::prime(2).unwrap();
        // F_2[y]/(y^2) is not a field.
        let e = ExtField::new(f2, vec![Fe(0), Fe(0), Fe(1)]);
        assert!(e.inv(&e.gen()).is_none());
    }
}
