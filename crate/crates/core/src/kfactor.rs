//! Factoring squarefree polynomials over K = F(T) and over finite extensions
//! of K.
//!
//! Over K the polynomial is made monic with polynomial coefficients, factored
//! modulo a prime P of F[T], lifted P-adically and recombined. Over an
//! extension E = K(y) the norm of `f(x − s·y)` down to K is factored and each
//! factor is pulled back with a gcd.

use crate::algebra::ffactor::{self, canonical_cmp};
use crate::algebra::linalg::charpoly;
use crate::algebra::{ExtField, Fe, Gf, PolyRing, RatFn, RatFnField, Ring};
use crate::error::{Error, Result};
use crate::field::{monic_polys, PolyT};

/// A polynomial in x with coefficients in F[T].
type Poly2 = Vec<PolyT>;

const MAX_PRIME_DEGREE: usize = 24;
const PRIMES_TO_COMPARE: usize = 3;
const MAX_SHIFTS: usize = 64;

/// Monic irreducible factors of a squarefree `f` over K, in canonical order.
pub fn factor_over_k(k: &RatFnField, f: &[RatFn]) -> Result<Vec<Vec<RatFn>>> {
    let kx = PolyRing::new(k.clone());
    let f = kx.normalized(f.to_vec());
    let n = kx.deg(&f).ok_or(Error::ZeroInput)?;
    if n == 0 {
        return Err(Error::ConstantInput);
    }
    let f = kx.monic(&f);
    if n == 1 {
        return Ok(vec![f]);
    }
    if !kx.is_squarefree(&f) {
        return Err(Error::NotSquarefree);
    }
    let a = PolyRing::new(k.gf().clone());
    let mut d = a.one();
    for c in &f {
        let g = a.gcd(&d, &c.den);
        d = a.mul(&d, &a.div_exact(&c.den, &g).unwrap());
    }
    // F(y) = D^n f(y/D) is monic with coefficients in F[T].
    let big: Poly2 = f
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let num = a.mul(&c.num, &a.pow(&d, (n - i) as u64));
            a.div_exact(&num, &c.den).unwrap()
        })
        .collect();
    let mut out: Vec<Vec<RatFn>> = factor_monic_integral(&a, &big)?
        .into_iter()
        .map(|g| {
            let dg = g.len() - 1;
            g.iter()
                .enumerate()
                .map(|(i, c)| k.frac(c, &a.pow(&d, (dg - i) as u64)))
                .collect()
        })
        .collect();
    out.sort_by(|x, y| canonical_cmp(x, y));
    Ok(out)
}

fn reduce_coeffs(a: &PolyRing<Gf>, f: &[PolyT], m: &PolyT) -> Poly2 {
    let ax = PolyRing::new(a.clone());
    ax.normalized(f.iter().map(|c| a.rem_monic(c, m)).collect())
}

/// Picks a prime of F[T] modulo which `f` stays squarefree, preferring the
/// fewest local factors among the first few candidates.
fn choose_prime(a: &PolyRing<Gf>, f: &Poly2) -> Result<(PolyT, Vec<Poly2>)> {
    let mut best: Option<(PolyT, Vec<Poly2>)> = None;
    let mut good = 0;
    for dp in 1..=MAX_PRIME_DEGREE {
        for p in monic_polys(a, dp) {
            if !ffactor::is_irreducible(a, &p) {
                continue;
            }
            let fp = ExtField::new(a.base.clone(), p.clone());
            let fpx = PolyRing::new(fp.clone());
            let fbar = fpx.normalized(f.iter().map(|c| fp.reduce(c)).collect());
            if !fpx.is_squarefree(&fbar) {
                continue;
            }
            let local: Vec<Poly2> = ffactor::factor(&fpx, &fbar)
                .1
                .into_iter()
                .map(|(g, _)| g)
                .collect();
            if best.as_ref().map_or(true, |(_, b)| local.len() < b.len()) {
                best = Some((p, local));
            }
            good += 1;
            if good >= PRIMES_TO_COMPARE || best.as_ref().unwrap().1.len() == 1 {
                return Ok(best.unwrap());
            }
        }
        if best.is_some() {
            break;
        }
    }
    best.ok_or_else(|| Error::Internal("no prime keeps the polynomial squarefree".into()))
}

fn factor_monic_integral(a: &PolyRing<Gf>, f: &Poly2) -> Result<Vec<Poly2>> {
    let ax = PolyRing::new(a.clone());
    let (p, local) = choose_prime(a, f)?;
    if local.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    // Precision P^e with e·deg P beyond every coefficient degree of a factor;
    // deg_T is additive on monic products so the coefficients of f bound them.
    let bound = f.iter().map(|c| c.len()).max().unwrap_or(1);
    let e = bound / (p.len() - 1) + 1;
    let modulus = a.pow(&p, e as u64);
    let mut remaining = hensel_lift(a, f, &p, &local, e);

    let mut cur = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = None;
        for subset in combinations(remaining.len(), s) {
            let c0 = subset.iter().fold(a.one(), |acc, &i| {
                a.rem_monic(&a.mul(&acc, &remaining[i][0]), &modulus)
            });
            if !cur[0].is_empty() && (c0.is_empty() || !a.divides(&c0, &cur[0])) {
                continue;
            }
            let cand = subset.iter().fold(ax.one(), |acc, &i| {
                reduce_coeffs(a, &ax.mul(&acc, &remaining[i]), &modulus)
            });
            let (quo, rem) = ax.divrem_monic(&cur, &cand);
            if rem.is_empty() {
                found = Some((subset, cand, quo));
                break;
            }
        }
        match found {
            Some((subset, cand, quo)) => {
                out.push(cand);
                cur = quo;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => s += 1,
        }
    }
    out.push(cur);
    Ok(out)
}

/// Lifts the factorization `f ≡ ∏ local (mod P)` to one modulo `P^e`.
fn hensel_lift(a: &PolyRing<Gf>, f: &Poly2, p: &PolyT, local: &[Poly2], e: usize) -> Vec<Poly2> {
    let modulus = a.pow(p, e as u64);
    if local.len() == 1 {
        return vec![reduce_coeffs(a, f, &modulus)];
    }
    let fp = ExtField::new(a.base.clone(), p.clone());
    let fpx = PolyRing::new(fp.clone());
    let g = &local[0];
    let h = local[1..].iter().fold(fpx.one(), |acc, x| fpx.mul(&acc, x));
    let (gcd, _, t) = fpx.xgcd(g, &h);
    debug_assert!(fpx.is_one(&gcd));
    let ax = PolyRing::new(a.clone());
    let (mut gg, mut hh) = (g.clone(), h.clone());
    let mut pj = p.clone();
    for _ in 1..e {
        let next = a.mul(&pj, p);
        let err = reduce_coeffs(a, &ax.sub(f, &ax.mul(&gg, &hh)), &next);
        let ebar = fpx.normalized(
            err.iter()
                .map(|c| fp.reduce(&a.div_exact(c, &pj).unwrap()))
                .collect(),
        );
        let dg = fpx.rem(&fpx.mul(&t, &ebar), g);
        let dh = fpx
            .div_exact(&fpx.sub(&ebar, &fpx.mul(&dg, &h)), g)
            .unwrap();
        gg = reduce_coeffs(
            a,
            &ax.add(&gg, &dg.iter().map(|c| a.mul(c, &pj)).collect::<Vec<_>>()),
            &next,
        );
        hh = reduce_coeffs(
            a,
            &ax.add(&hh, &dh.iter().map(|c| a.mul(c, &pj)).collect::<Vec<_>>()),
            &next,
        );
        pj = next;
    }
    let mut out = vec![gg];
    out.extend(hensel_lift(a, &hh, p, &local[1..], e));
    out
}

/// All `s`-element subsets of `0..n` in lexicographic order.
fn combinations(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..s).collect();
    if s > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..s).rev().find(|&i| cur[i] < n - s + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..s {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The `idx`-th polynomial of F[T], reading `idx` in base |F|.
fn shift_poly(gf: &Gf, mut idx: usize) -> PolyT {
    let b = gf.size() as usize;
    let mut out = Vec::new();
    while idx > 0 {
        out.push(Fe((idx % b) as u32));
        idx /= b;
    }
    out
}

type EElem = Vec<RatFn>;

/// Monic irreducible factors of a squarefree `f` over `E = K[y]/(g)`, in
/// canonical order.
pub fn factor_over_extension(e: &ExtField<RatFnField>, f: &[EElem]) -> Result<Vec<Vec<EElem>>> {
    let k = e.base().clone();
    let ex = PolyRing::new(e.clone());
    let f = ex.normalized(f.to_vec());
    let n = ex.deg(&f).ok_or(Error::ZeroInput)?;
    if n == 0 {
        return Err(Error::ConstantInput);
    }
    let f = ex.monic(&f);
    if n == 1 {
        return Ok(vec![f]);
    }
    let d = e.degree();
    if d == 1 {
        let fk: Vec<RatFn> = f.iter().map(|c| e.as_base(c).unwrap()).collect();
        return Ok(factor_over_k(&k, &fk)?
            .into_iter()
            .map(|g| g.into_iter().map(|c| e.from_base(c)).collect())
            .collect());
    }
    if !ex.is_squarefree(&f) {
        return Err(Error::NotSquarefree);
    }
    let kx = PolyRing::new(k.clone());
    let y = e.gen();
    let powers: Vec<EElem> = (0..d).map(|i| e.pow(&y, i as u64)).collect();
    for idx in 0..MAX_SHIFTS {
        let sy = e.mul(&e.from_base(k.from_poly(&shift_poly(k.gf(), idx))), &y);
        let theta = vec![sy.clone(), e.one()];
        // Multiplication by θ = x + s·y on E[x]/f, basis y^i x^j at index j·d + i.
        let dim = d * n;
        let mut mat = vec![vec![k.zero(); dim]; dim];
        for j in 0..n {
            for (i, yi) in powers.iter().enumerate() {
                let mut b = vec![e.zero(); j + 1];
                b[j] = yi.clone();
                let img = ex.rem_monic(&ex.mul(&theta, &b), &f);
                for (jj, c) in img.iter().enumerate() {
                    for (ii, kc) in c.iter().enumerate() {
                        mat[jj * d + ii][j * d + i] = kc.clone();
                    }
                }
            }
        }
        let norm = charpoly(&k, mat);
        if !kx.is_squarefree(&norm) {
            continue;
        }
        let back = vec![e.neg(&sy), e.one()];
        let mut out = Vec::new();
        for nj in factor_over_k(&k, &norm)? {
            let lifted: Vec<EElem> = nj.iter().map(|c| e.from_base(c.clone())).collect();
            let g = ex.gcd(&f, &ex.compose(&lifted, &back));
            if g.len() > 1 {
                out.push(g);
            }
        }
        if out.iter().map(|g| g.len() - 1).sum::<usize>() != n {
            return Err(Error::Internal(
                "norm factors do not cover the polynomial".into(),
            ));
        }
        out.sort_by(|x, y| canonical_cmp(x, y));
        return Ok(out);
    }
    Err(Error::Internal("no separating shift found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_tower;

    fn p(c: &[u32]) -> PolyT {
        c.iter().map(|&x| Fe(x)).collect()
    }

    #[test]
    fn subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(5, 1)[4], vec![4]);
    }

    #[test]
    fn factors_products_over_k() {
        let fd = field_tower(2, 1, 1).unwrap();
        let k = fd.k_field();
        let kx = PolyRing::new(k.clone());
        // (x^2 + T x + 1/T)(x + T^3 + 1)(x^2 + x + T)
        let f1 = vec![k.frac(&p(&[1]), &p(&[0, 1])), k.t(), k.one()];
        let f2 = vec![k.from_poly(&p(&[1, 0, 0, 1])), k.one()];
        let f3 = vec![k.t(), k.one(), k.one()];
        let f = kx.mul(&kx.mul(&f1, &f2), &f3);
        let got = factor_over_k(&k, &f).unwrap();
        let mut want = vec![f1, f2, f3];
        want.sort_by(|x, y| canonical_cmp(x, y));
        assert_eq!(got, want);
    }

    #[test]
    fn irreducible_stays_whole() {
        let fd = field_tower(3, 1, 1).unwrap();
        let k = fd.k_field();
        // x^3 − x − T is irreducible over F_3(T).
        let f = vec![
            k.from_poly(&p(&[0, 2])),
            k.from_const(Fe(2)),
            k.zero(),
            k.one(),
        ];
        assert_eq!(factor_over_k(&k, &f).unwrap(), vec![f]);
    }

    #[test]
    fn splits_over_quadratic_extension() {
        let fd = field_tower(3, 1, 1).unwrap();
        let k = fd.k_field();
        // E = K(y), y^2 = T; x^4 − T^2 = (x − y)(x + y)(x^2 + T).
        let e = ExtField::new(k.clone(), vec![k.from_poly(&p(&[0, 2])), k.zero(), k.one()]);
        let ex = PolyRing::new(e.clone());
        let f: Vec<EElem> = vec![
            e.from_base(k.from_poly(&p(&[0, 0, 2]))),
            e.zero(),
            e.zero(),
            e.zero(),
            e.one(),
        ];
        let got = factor_over_extension(&e, &f).unwrap();
        assert_eq!(got.len(), 3);
        let prod = got.iter().fold(ex.one(), |acc, g| ex.mul(&acc, g));
        assert_eq!(prod, f);
        assert_eq!(got.iter().filter(|g| g.len() == 2).count(), 2);
    }
}
