use std::fmt::Debug;
use std::hash::Hash;

/// A commutative ring given as a context object; elements are plain values
/// and every operation goes through the context.
pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn characteristic(&self) -> u32;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `n·a` for a non-negative integer `n`.
    fn mul_int(&self, a: &Self::Elem, n: u64) -> Self::Elem {
        let n = n % self.characteristic() as u64;
        let mut acc = self.zero();
        for _ in 0..n {
            acc = self.add(&acc, a);
        }
        acc
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero (or for a zero divisor when the
    /// context is a quotient ring that is not actually a field).
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// A ring that is a finite-dimensional vector space over its prime field,
/// with explicit coordinates. Used to turn F_p-linear maps into matrices.
pub trait FpSpace: Ring {
    fn fp_dim(&self) -> usize;
    fn to_fp(&self, a: &Self::Elem) -> Vec<u32>;
    fn from_fp(&self, coords: &[u32]) -> Self::Elem;
}

pub trait FiniteField: Field + FpSpace {
    /// Number of elements.
    fn order(&self) -> u128 {
        (self.characteristic() as u128).pow(self.fp_dim() as u32)
    }
}
