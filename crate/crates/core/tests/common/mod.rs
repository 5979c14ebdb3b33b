//! Independent oracles shared by the integration tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::BTreeMap;

use carlitz::algebra::{Fe, Gf, PolyRing, RatFn, RatFnField, Ring};
use carlitz::carlitz::{carlitz_coeffs, carlitz_eval};
use carlitz::field::{self, FieldDescriptor, PolyT};
use carlitz::local::{LocalVerdict, Place};

pub fn p(c: &[u32]) -> PolyT {
    let mut v: PolyT = c.iter().map(|&x| Fe(x)).collect();
    while v.last() == Some(&Fe(0)) {
        v.pop();
    }
    v
}

/// `v_π` of a nonzero polynomial by repeated division.
fn poly_val(ring: &PolyRing<Gf>, f: &[Fe], pi: &[Fe]) -> i64 {
    let mut f = f.to_vec();
    let mut v = 0;
    loop {
        let (q, r) = ring.divrem(&f, pi);
        if !r.is_empty() {
            return v;
        }
        f = q;
        v += 1;
    }
}

/// `v_π(x)`, `None` for zero.
pub fn val(ring: &PolyRing<Gf>, x: &RatFn, pi: &[Fe]) -> Option<i64> {
    if x.num.is_empty() {
        return None;
    }
    Some(poly_val(ring, &x.num, pi) - poly_val(ring, &x.den, pi))
}

pub fn val_inf(x: &RatFn) -> Option<i64> {
    if x.num.is_empty() {
        return None;
    }
    Some(x.den.len() as i64 - x.num.len() as i64)
}

/// `T ↦ 1/T` done by hand on numerator and denominator.
fn invert(k: &RatFnField, ring: &PolyRing<Gf>, x: &RatFn) -> RatFn {
    if x.num.is_empty() {
        return x.clone();
    }
    let (dn, dd) = (x.num.len() - 1, x.den.len() - 1);
    let mut n: PolyT = x.num.iter().rev().cloned().collect();
    let mut d: PolyT = x.den.iter().rev().cloned().collect();
    // Multiply through by U^{max(dn, dd)}.
    if dn < dd {
        n = ring.mul(&n, &ring.monomial(Fe(1), dd - dn));
    } else {
        d = ring.mul(&d, &ring.monomial(Fe(1), dn - dd));
    }
    k.frac(&ring.normalized(n), &ring.normalized(d))
}

fn pi_pow(k: &RatFnField, ring: &PolyRing<Gf>, pi: &[Fe], e: i64) -> RatFn {
    let pe = ring.pow(&pi.to_vec(), e.unsigned_abs());
    if e >= 0 {
        k.from_poly(&pe)
    } else {
        k.frac(&[Fe(1)], &pe)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleVerdict {
    pub solvable: bool,
    /// Some root valuation is an integer.
    pub integral_valuation: bool,
}

/// Decides local solvability of `C_a(x) = m` at `place` by exhaustive search.
///
/// For every integer `w` at which the minimum of `v(m)` and `v(c_i) + q^i w`
/// is attained twice, substitutes `x = π^w z`, divides by `π^μ`, and searches
/// all residues `z mod π^N`, `N = 2·v(c_0') + 1`, for `v(f(z)) ≥ N`. Residues
/// are built digit by digit, keeping only prefixes with `v(f) ≥` length,
/// which is exact because `f(z + π^j t) ≡ f(z) (mod π^j)`.
pub fn local_oracle(fd: &FieldDescriptor, a: &[Fe], m: &RatFn, place: &Place) -> OracleVerdict {
    let k = fd.k_field();
    let ring = fd.k_ring();
    let q = fd.q;
    if m.num.is_empty() {
        return OracleVerdict {
            solvable: true,
            integral_valuation: true,
        };
    }
    let mut cs: Vec<RatFn> = carlitz_coeffs(&ring, a)
        .coeffs
        .iter()
        .map(|c| k.from_poly(c))
        .collect();
    let mut m = m.clone();
    let pi: PolyT = match place {
        Place::Finite(pi) => pi.clone(),
        Place::Infinite => {
            cs = cs.iter().map(|c| invert(&k, &ring, c)).collect();
            m = invert(&k, &ring, &m);
            p(&[0, 1])
        }
    };
    let vm = val(&ring, &m, &pi).unwrap();
    let vc: Vec<Option<i64>> = cs.iter().map(|c| val(&ring, c, &pi)).collect();
    let mut integral = false;
    for w in -80i64..=80 {
        let mut terms = vec![vm];
        let mut qi = 1i64;
        for v in &vc {
            if let Some(v) = v {
                terms.push(v + qi * w);
            }
            qi *= q as i64;
        }
        let mu = *terms.iter().min().unwrap();
        if terms.iter().filter(|&&t| t == mu).count() < 2 {
            continue;
        }
        integral = true;
        // Scaled equation Σ c_i' z^{q^i} = m'.
        let mut scaled = Vec::new();
        let mut qi = 1i64;
        for c in &cs {
            scaled.push(k.mul(c, &pi_pow(&k, &ring, &pi, w * qi - mu)));
            qi *= q as i64;
        }
        let ms = k.mul(&m, &pi_pow(&k, &ring, &pi, -mu));
        let e = val(&ring, &scaled[0], &pi).unwrap();
        let n = 2 * e + 1;
        let f = |z: &RatFn| -> Option<i64> {
            let mut acc = k.neg(&ms);
            let mut zq = z.clone();
            for c in &scaled {
                acc = k.add(&acc, &k.mul(c, &zq));
                zq = k.pow(&zq, q);
            }
            val(&ring, &acc, &pi)
        };
        let digits = field::residues(&ring, pi.len() - 1);
        let mut level: Vec<PolyT> = vec![vec![]];
        for j in 0..n {
            let pj = ring.pow(&pi, j as u64);
            let mut next = Vec::new();
            for z in &level {
                for d in &digits {
                    let cand = ring.add(z, &ring.mul(d, &pj));
                    if f(&k.from_poly(&cand)).map_or(true, |v| v > j) {
                        next.push(cand);
                    }
                }
            }
            level = next;
            if level.is_empty() {
                break;
            }
        }
        if !level.is_empty() {
            return OracleVerdict {
                solvable: true,
                integral_valuation: true,
            };
        }
    }
    OracleVerdict {
        solvable: false,
        integral_valuation: integral,
    }
}

/// Checks a Solvable witness by evaluation: `v(C_a(x) − m)` reaches the
/// certified precision, or is exactly zero when the root is claimed exact.
pub fn witness_ok(
    fd: &FieldDescriptor,
    a: &[Fe],
    m: &RatFn,
    place: &Place,
    verdict: &LocalVerdict,
) -> bool {
    let LocalVerdict::Solvable { witness, certified } = verdict else {
        return true;
    };
    let k = fd.k_field();
    let ring = fd.k_ring();
    let x = witness.to_ratfn(&k);
    let r = k.sub(&carlitz_eval(&k, &ring, a, &x), m);
    let v = match place {
        Place::Finite(pi) => val(&ring, &r, pi),
        Place::Infinite => val_inf(&r),
    };
    match (certified, v) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(c), Some(v)) => v >= *c,
    }
}

/// Every reduced `num/den` with `deg num ≤ d`, monic `den` of degree `≤ d`.
pub fn all_ratfns(fd: &FieldDescriptor, d: usize) -> Vec<RatFn> {
    let k = fd.k_field();
    let ring = fd.k_ring();
    let nums = field::residues(&ring, d + 1);
    let dens: Vec<PolyT> = (0..=d).flat_map(|e| field::monic_polys(&ring, e)).collect();
    let mut out = vec![k.zero()];
    for den in &dens {
        for num in nums.iter().filter(|n| !n.is_empty()) {
            if ring.gcd(num, den).len() == 1 {
                out.push(k.frac(num, den));
            }
        }
    }
    out
}

/// Map from `C_a(x)` to the sorted list of `x` over all `x` from [`all_ratfns`].
pub fn global_table(fd: &FieldDescriptor, a: &[Fe], d: usize) -> BTreeMap<RatFn, Vec<RatFn>> {
    let k = fd.k_field();
    let ring = fd.k_ring();
    let mut out: BTreeMap<RatFn, Vec<RatFn>> = BTreeMap::new();
    for x in all_ratfns(fd, d) {
        out.entry(carlitz_eval(&k, &ring, a, &x))
            .or_default()
            .push(x);
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

/// Counts residues coprime to `f` by enumeration.
pub fn phi_brute(ring: &PolyRing<Gf>, f: &[Fe]) -> u64 {
    field::residues(ring, f.len() - 1)
        .iter()
        .filter(|r| !r.is_empty() && ring.gcd(r, f).len() == 1)
        .count() as u64
}

/// `(1/d) Σ_{e|d} μ(e) Q^{d/e}`.
pub fn necklace(qn: u64, d: u32) -> u64 {
    fn mobius(mut n: u32) -> i64 {
        let mut r = 1;
        let mut f = 2;
        while f * f <= n {
            if n % f == 0 {
                n /= f;
                if n % f == 0 {
                    return 0;
                }
                r = -r;
            }
            f += 1;
        }
        if n > 1 {
            r = -r;
        }
        r
    }
    let s: i64 = (1..=d)
        .filter(|e| d % e == 0)
        .map(|e| mobius(e) * (qn as i64).pow(d / e))
        .sum();
    (s / d as i64) as u64
}
