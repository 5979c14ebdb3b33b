//! Roots of `C_a(x) = m` in K = F_{q^n}(T) by linear algebra over F_p.

use crate::algebra::linalg::FpLinearMap;
use crate::algebra::ratfn::split_off;
use crate::algebra::{Fe, RatFn, Ring};
use crate::carlitz::{carlitz_coeffs, carlitz_eval, Conductor};
use crate::error::{Error, Result};
use crate::field::{self, FieldDescriptor, PolyT};
use crate::local::{integral_root_valuations, lower_hull, LocalEquation, Place};

/// Every root of `C_a(x) − m` in K, in canonical order.
///
/// A pole of order `k` of `x` at a finite place gives `C_a(x)` a pole of
/// order `k·q^{deg a}` there, so the denominator of `x` is determined by
/// that of `m`; the numerator degree is bounded by the smallest integral
/// root valuation at ∞. The remaining equation is F_p-linear in the
/// numerator coefficients.
pub fn solve_global(
    fd: &FieldDescriptor,
    a: &[Fe],
    m: &RatFn,
    degree_cap: usize,
) -> Result<Vec<RatFn>> {
    let ring = fd.k_ring();
    let k = fd.k_field();
    let a = ring.normalized(a.to_vec());
    let d = ring.deg(&a).ok_or(Error::ZeroInput)?;
    let qd = fd.q.pow(d as u32);

    // Denominator: den(m) must be a q^d-th power of a polynomial D.
    let mut den = ring.one();
    if m.den.len() > 1 {
        let fac = field::factor(&ring, &m.den)?;
        for (pi, e) in &fac.factors {
            if *e as u64 % qd != 0 {
                return Ok(vec![]);
            }
            den = ring.mul(&den, &ring.pow(pi, *e as u64 / qd));
        }
    }
    let deg_den = den.len() as i64 - 1;

    // Numerator degree from the polygon at infinity.
    let inf = LocalEquation::new(fd, &a, m, &Place::Infinite);
    let mut ws = integral_root_valuations(&lower_hull(&inf.newton_points()));
    if k.is_zero(m) {
        // x = 0 is always a root; other roots obey the same polygon.
        ws.push(i64::MAX);
    }
    let Some(&w_min) = ws.iter().min() else {
        return Ok(vec![]);
    };
    let max_num_deg = if w_min == i64::MAX {
        -1
    } else {
        deg_den - w_min
    };
    if max_num_deg < 0 {
        // Only x = 0 can be a root.
        return Ok(if k.is_zero(m) { vec![k.zero()] } else { vec![] });
    }
    let unknowns = max_num_deg as usize + 1;
    if unknowns > degree_cap {
        return Err(Error::DegreeCap {
            needed: unknowns,
            cap: degree_cap,
        });
    }

    // Σ c_i N^{q^i} D^{q^d − q^i} = m·D^{q^d}; precompute P_i = c_i D^{q^d − q^i}.
    let c = carlitz_coeffs(&ring, &a);
    let mut pis = Vec::new();
    let mut qi = 1u64;
    for ci in &c.coeffs {
        pis.push(ring.mul(ci, &ring.pow(&den, qd - qi)));
        qi *= fd.q;
    }
    let rhs_poly = {
        let dq = ring.pow(&den, qd);
        let (num, rest) = (ring.mul(&m.num, &dq), &m.den);
        ring.div_exact(&num, rest)
            .ok_or_else(|| Error::Internal("denominator bound is wrong".into()))?
    };
    let ext_dim = fd.ext.degree() as usize;
    let image_len = {
        let mut l = rhs_poly.len();
        let mut qi = 1usize;
        for pi in &pis {
            if !pi.is_empty() {
                l = l.max(pi.len() + (unknowns - 1) * qi);
            }
            qi *= fd.q as usize;
        }
        l
    };
    let to_fp = |f: &PolyT| -> Vec<u32> {
        let mut out = Vec::with_capacity(image_len * ext_dim);
        for i in 0..image_len {
            out.extend(fd.ext.coords(ring.coeff(f, i)));
        }
        out
    };
    let mut columns = Vec::with_capacity(unknowns * ext_dim);
    for j in 0..unknowns {
        for t in 0..ext_dim {
            let e = Fe(fd.p.pow(t as u32));
            let mono = ring.monomial(e, j);
            let mut img = vec![];
            let mut cur = mono;
            for (i, pi) in pis.iter().enumerate() {
                if i > 0 {
                    cur = crate::algebra::ratfn::poly_frobenius(&fd.ext, &cur, fd.q);
                }
                img = ring.add(&img, &ring.mul(pi, &cur));
            }
            columns.push(to_fp(&img));
        }
    }
    let map = FpLinearMap::from_columns(fd.p, image_len * ext_dim, columns);
    let Some(sol) = map.solve(&to_fp(&rhs_poly)) else {
        return Ok(vec![]);
    };
    let mut out = Vec::new();
    for v in sol.enumerate() {
        let num: PolyT =
            ring.normalized(v.chunks(ext_dim).map(|c| fd.ext.from_coords(c)).collect());
        let x = k.frac(&num, &den);
        if carlitz_eval(&k, &ring, &a, &x) != *m {
            return Err(Error::Internal("global root failed substitution".into()));
        }
        out.push(x);
    }
    out.sort();
    Ok(out)
}

/// Whether `solutions` is empty or a full coset `x₀ + (Λ_a ∩ K)`.
pub fn solution_coset_check(
    fd: &FieldDescriptor,
    solutions: &[RatFn],
    a: &[Fe],
    degree_cap: usize,
) -> Result<bool> {
    let Some(x0) = solutions.first() else {
        return Ok(true);
    };
    let k = fd.k_field();
    let torsion = solve_global(fd, a, &k.zero(), degree_cap)?;
    if torsion.len() != solutions.len() {
        return Ok(false);
    }
    let mut shifted: Vec<RatFn> = solutions.iter().map(|x| k.sub(x, x0)).collect();
    shifted.sort();
    Ok(shifted == torsion)
}

/// Splits the finite poles of `m`: pairs `(π, −v_π(m))`.
pub fn poles(fd: &FieldDescriptor, m: &RatFn) -> Result<Vec<(PolyT, u32)>> {
    if m.den.len() <= 1 {
        return Ok(vec![]);
    }
    let ring = fd.k_ring();
    Ok(field::factor(&ring, &m.den)?
        .factors
        .into_iter()
        .map(|(pi, _)| {
            let (v, _) = split_off(&ring, &m.den, &pi);
            (pi, v)
        })
        .collect())
}

/// `q^{deg a}` roots of `C_a` over K, if they are all rational.
pub fn rational_torsion(
    fd: &FieldDescriptor,
    cond: &Conductor,
    degree_cap: usize,
) -> Result<Vec<RatFn>> {
    solve_global(fd, &cond.monic, &fd.k_field().zero(), degree_cap)
}
