//! Factorization of univariate polynomials over finite fields:
//! squarefree decomposition, distinct-degree and Cantor–Zassenhaus splitting.

use std::cmp::Ordering;

use super::poly::PolyRing;
use super::ring::{FiniteField, Ring};
use crate::rng::SplitMix64;

/// Canonical order on polynomials: by degree, then coefficients from the
/// constant term upwards.
pub fn canonical_cmp<T: Ord>(a: &[T], b: &[T]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn order_u64<F: FiniteField>(f: &F) -> u64 {
    u64::try_from(f.order()).expect("field order fits in u64")
}

pub fn random_elem<F: FiniteField>(f: &F, rng: &mut SplitMix64) -> F::Elem {
    let p = f.characteristic() as u64;
    let c: Vec<u32> = (0..f.fp_dim()).map(|_| rng.below(p) as u32).collect();
    f.from_fp(&c)
}

fn random_poly<F: FiniteField>(r: &PolyRing<F>, len: usize, rng: &mut SplitMix64) -> Vec<F::Elem> {
    r.normalized((0..len).map(|_| random_elem(&r.base, rng)).collect())
}

/// `a^(1/p)` in a finite field.
fn pth_root<F: FiniteField>(f: &F, a: &F::Elem) -> F::Elem {
    let p = f.characteristic() as u64;
    f.pow(a, order_u64(f) / p)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, e)` with `g`
/// squarefree, pairwise coprime, and `f = ∏ g^e`.
pub fn squarefree_decomposition<F: FiniteField>(
    r: &PolyRing<F>,
    f: &[F::Elem],
) -> Vec<(Vec<F::Elem>, u32)> {
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let p = r.base.characteristic();
    let d = r.derivative(f);
    if d.is_empty() {
        let root = pth_f(r, f);
        for (g, e) in squarefree_decomposition(r, &root) {
            out.push((g, e * p));
        }
        return out;
    }
    let mut c = r.gcd(f, &d);
    let mut w = r.div_exact(f, &c).unwrap();
    let mut i = 1;
    while w.len() > 1 {
        let y = r.gcd(&w, &c);
        let z = r.div_exact(&w, &y).unwrap();
        if z.len() > 1 {
            out.push((z, i));
        }
        i += 1;
        c = r.div_exact(&c, &y).unwrap();
        w = y;
    }
    if c.len() > 1 {
        let root = pth_f(r, &c);
        for (g, e) in squarefree_decomposition(r, &root) {
            out.push((g, e * p));
        }
    }
    out
}

fn pth_f<F: FiniteField>(r: &PolyRing<F>, f: &[F::Elem]) -> Vec<F::Elem> {
    let p = r.base.characteristic() as usize;
    r.normalized(f.iter().step_by(p).map(|c| pth_root(&r.base, c)).collect())
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree<F: FiniteField>(
    r: &PolyRing<F>,
    f: &[F::Elem],
) -> Vec<(Vec<F::Elem>, usize)> {
    let q = order_u64(&r.base);
    let x = r.x();
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut h = r.rem(&x, &rest);
    let mut i = 1;
    while rest.len() > 2 * i {
        h = r.powmod(&h, q, &rest);
        let g = r.gcd(&rest, &r.sub(&h, &x));
        if g.len() > 1 {
            rest = r.div_exact(&rest, &g).unwrap();
            h = r.rem(&h, &rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.len() > 1 {
        let d = rest.len() - 1;
        out.push((rest, d));
    }
    out
}

/// Splits a monic product of distinct irreducibles of degree `d`.
pub fn equal_degree<F: FiniteField>(
    r: &PolyRing<F>,
    g: &[F::Elem],
    d: usize,
    rng: &mut SplitMix64,
) -> Vec<Vec<F::Elem>> {
    let n = g.len() - 1;
    if n == d {
        return vec![g.to_vec()];
    }
    let q = order_u64(&r.base);
    let p = r.base.characteristic() as u64;
    let one = r.one();
    loop {
        let a = random_poly(r, n, rng);
        if a.len() <= 1 {
            continue;
        }
        let cand = if p == 2 {
            // Absolute trace to F_2 of the residue class of a.
            let k = q.trailing_zeros() as usize;
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..k * d {
                t = r.mulmod(&t, &t, g);
                acc = r.add(&acc, &t);
            }
            r.gcd(g, &acc)
        } else {
            // a^((q^d-1)/2) = (a^(1+q+...+q^(d-1)))^((q-1)/2), small exponents only.
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = r.powmod(&t, q, g);
                acc = r.mulmod(&acc, &t, g);
            }
            let b = r.powmod(&acc, (q - 1) / 2, g);
            r.gcd(g, &r.sub(&b, &one))
        };
        if cand.len() > 1 && cand.len() < g.len() {
            let other = r.div_exact(g, &cand).unwrap();
            let mut out = equal_degree(r, &cand, d, rng);
            out.extend(equal_degree(r, &other, d, rng));
            return out;
        }
    }
}

/// Complete factorization: leading coefficient and sorted `(monic irreducible, exponent)`.
pub fn factor<F: FiniteField>(
    r: &PolyRing<F>,
    f: &[F::Elem],
) -> (F::Elem, Vec<(Vec<F::Elem>, u32)>) {
    assert!(!f.is_empty(), "factor of zero");
    let unit = r.lead(f);
    let monic = r.monic(f);
    let mut rng = SplitMix64::new(0x5eed ^ monic.len() as u64);
    let mut out = Vec::new();
    for (g, e) in squarefree_decomposition(r, &monic) {
        for (h, d) in distinct_degree(r, &g) {
            for irr in equal_degree(r, &h, d, &mut rng) {
                out.push((irr, e));
            }
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    (unit, out)
}

/// Rabin's irreducibility test.
pub fn is_irreducible<F: FiniteField>(r: &PolyRing<F>, f: &[F::Elem]) -> bool {
    let Some(n) = r.deg(f) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = r.monic(f);
    let q = order_u64(&r.base);
    let x = r.x();
    let mut frob = vec![r.rem(&x, &f)];
    for _ in 0..n {
        let last = frob.last().unwrap();
        frob.push(r.powmod(last, q, &f));
    }
    if r.sub(&frob[n], &r.rem(&x, &f)).len() > 0 {
        return false;
    }
    let mut m = n;
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            primes.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    primes
        .iter()
        .all(|&l| r.gcd(&f, &r.sub(&frob[n / l], &x)).len() == 1)
}
