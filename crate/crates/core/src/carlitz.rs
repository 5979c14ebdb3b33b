//! The Carlitz module: twisted polynomials, `a ↦ C_a`, evaluation in any
//! F_q-algebra that receives F_{q^n}[T], cyclotomic polynomials and torsion.

use std::collections::BTreeMap;

use crate::algebra::ratfn::poly_frobenius;
use crate::algebra::{ExtField, Fe, Field, Gf, PolyRing, RatFn, RatFnField, Ring};
use crate::error::{Error, Result};
use crate::field::{self, FieldDescriptor, PolyT};

/// An F_q-algebra `S` with a structure map F_{q^n}[T] → S.
pub trait CarlitzAlgebra: Ring {
    fn q(&self) -> u64;
    fn from_poly_t(&self, f: &[Fe]) -> Self::Elem;
    fn frobenius(&self, x: &Self::Elem) -> Self::Elem {
        self.pow(x, self.q())
    }
}

impl CarlitzAlgebra for PolyRing<Gf> {
    fn q(&self) -> u64 {
        self.base.q()
    }
    fn from_poly_t(&self, f: &[Fe]) -> PolyT {
        self.normalized(f.to_vec())
    }
    fn frobenius(&self, x: &PolyT) -> PolyT {
        poly_frobenius(&self.base, x, self.base.q())
    }
}

impl CarlitzAlgebra for RatFnField {
    fn q(&self) -> u64 {
        self.gf().q()
    }
    fn from_poly_t(&self, f: &[Fe]) -> RatFn {
        self.from_poly(f)
    }
    fn frobenius(&self, x: &RatFn) -> RatFn {
        RatFnField::frobenius(self, x)
    }
}

/// `F_{q^n}[T]/(M)`: the variable of the quotient is T itself.
impl CarlitzAlgebra for ExtField<Gf> {
    fn q(&self) -> u64 {
        self.base().q()
    }
    fn from_poly_t(&self, f: &[Fe]) -> PolyT {
        self.reduce(f)
    }
}

/// A finite extension `R[y]/(g)` of an algebra `R`; T maps through `R`.
impl<R: CarlitzAlgebra + Field> CarlitzAlgebra for ExtField<R> {
    fn q(&self) -> u64 {
        self.base().q()
    }
    fn from_poly_t(&self, f: &[Fe]) -> Self::Elem {
        self.from_base(self.base().from_poly_t(f))
    }
}

/// `Σ c_i τ^i`, equivalently the polynomial `Σ c_i x^{q^i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivePoly<E> {
    pub coeffs: Vec<E>,
}

impl<E: Clone> AdditivePoly<E> {
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn map<F>(&self, f: impl Fn(&E) -> F) -> AdditivePoly<F> {
        AdditivePoly {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// `L(x) − m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineAdditivePoly<E> {
    pub linear: AdditivePoly<E>,
    pub constant: E,
}

/// Composition `f ∘ g` in the twisted ring: `τ c = c^q τ`.
pub fn twisted_mul<S: CarlitzAlgebra>(
    s: &S,
    f: &AdditivePoly<S::Elem>,
    g: &AdditivePoly<S::Elem>,
) -> AdditivePoly<S::Elem> {
    if f.coeffs.is_empty() || g.coeffs.is_empty() {
        return AdditivePoly { coeffs: vec![] };
    }
    let mut out = vec![s.zero(); f.coeffs.len() + g.coeffs.len() - 1];
    let mut gi = g.coeffs.clone();
    for (i, fi) in f.coeffs.iter().enumerate() {
        if i > 0 {
            gi = gi.iter().map(|c| s.frobenius(c)).collect();
        }
        for (j, gj) in gi.iter().enumerate() {
            out[i + j] = s.add(&out[i + j], &s.mul(fi, gj));
        }
    }
    while out.last().is_some_and(|c| s.is_zero(c)) {
        out.pop();
    }
    AdditivePoly { coeffs: out }
}

/// Coefficients of `C_a` over `ring = F[T]`, via `C_{T^{k+1}} = (T + τ) C_{T^k}`.
pub fn carlitz_coeffs(ring: &PolyRing<Gf>, a: &[Fe]) -> AdditivePoly<PolyT> {
    let q = ring.base.q();
    let t = ring.x();
    let mut out: Vec<PolyT> = vec![];
    let mut cur: Vec<PolyT> = vec![ring.one()];
    for (k, ak) in a.iter().enumerate() {
        if k > 0 {
            let mut next = vec![vec![]; cur.len() + 1];
            for (i, f) in cur.iter().enumerate() {
                next[i] = ring.add(&next[i], &ring.mul(&t, f));
                next[i + 1] = poly_frobenius(&ring.base, f, q);
            }
            cur = next;
        }
        if ak.0 != 0 {
            if out.len() < cur.len() {
                out.resize(cur.len(), vec![]);
            }
            for (o, c) in out.iter_mut().zip(&cur) {
                *o = ring.add(o, &ring.scale(c, ak));
            }
        }
    }
    while out.last().is_some_and(|c| c.is_empty()) {
        out.pop();
    }
    AdditivePoly { coeffs: out }
}

/// `Σ c_i x^{q^i}` with coefficients already in `S`.
pub fn additive_eval<S: CarlitzAlgebra>(s: &S, coeffs: &[S::Elem], x: &S::Elem) -> S::Elem {
    let mut acc = s.zero();
    let mut xp = x.clone();
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            xp = s.frobenius(&xp);
        }
        if !s.is_zero(c) {
            acc = s.add(&acc, &s.mul(c, &xp));
        }
    }
    acc
}

/// `C(x)` for an additive polynomial with F_{q^n}[T] coefficients, in `S`.
pub fn eval_additive<S: CarlitzAlgebra>(s: &S, c: &AdditivePoly<PolyT>, x: &S::Elem) -> S::Elem {
    let coeffs: Vec<S::Elem> = c.coeffs.iter().map(|f| s.from_poly_t(f)).collect();
    additive_eval(s, &coeffs, x)
}

/// `C_a(x)` in `S`.
pub fn carlitz_eval<S: CarlitzAlgebra>(
    s: &S,
    ring: &PolyRing<Gf>,
    a: &[Fe],
    x: &S::Elem,
) -> S::Elem {
    eval_additive(s, &carlitz_coeffs(ring, a), x)
}

/// The dense polynomial `Σ c_i x^{q^i}` over `R[T]`.
pub fn to_dense(ring: &PolyRing<Gf>, c: &AdditivePoly<PolyT>) -> Vec<PolyT> {
    let q = ring.base.q() as usize;
    let Some(d) = c.degree() else { return vec![] };
    let mut out = vec![vec![]; q.pow(d as u32) + 1];
    let mut idx = 1;
    for ci in &c.coeffs {
        out[idx] = ci.clone();
        idx *= q;
    }
    out
}

/// Monic part, unit and factorization of the Carlitz index `a`.
///
/// `a` is given over F_{q^n} but must lie in F_q[T]; factorization and
/// `φ` are taken over F_q.
#[derive(Clone, Debug)]
pub struct Conductor {
    pub a: PolyT,
    pub unit: Fe,
    pub monic: PolyT,
    /// Factorization of the monic part over F_q (coefficients in F_q codes).
    pub factors: Vec<(PolyT, u32)>,
    pub phi: u64,
    pub deg: usize,
}

impl Conductor {
    pub fn new(fd: &FieldDescriptor, a: &[Fe]) -> Result<Conductor> {
        let ring = fd.k_ring();
        let a = ring.normalized(a.to_vec());
        let deg = ring.deg(&a).ok_or(Error::ZeroInput)?;
        if deg == 0 {
            return Err(Error::ConstantInput);
        }
        let a_base = fd.restrict_poly(&a).ok_or_else(|| {
            Error::RingMismatch("the Carlitz index must have coefficients in F_q".into())
        })?;
        let ar = fd.a_ring();
        let fac = field::factor(&ar, &a_base)?;
        let phi = field::euler_phi(&ar, &a_base)?;
        let unit = fd.embed(fac.unit);
        let monic = ring.monic(&a);
        Ok(Conductor {
            a,
            unit,
            monic,
            factors: fac.factors,
            phi,
            deg,
        })
    }

    /// Monic divisors of ā (over F_{q^n}, coefficients in F_q), by degree.
    pub fn divisors(&self, fd: &FieldDescriptor) -> Vec<PolyT> {
        let ring = fd.k_ring();
        let mut out = vec![ring.one()];
        for (p, e) in &self.factors {
            let pe = fd.embed_poly(p);
            let mut next = Vec::new();
            for d in &out {
                let mut cur = d.clone();
                for _ in 0..=*e {
                    next.push(cur.clone());
                    cur = ring.mul(&cur, &pe);
                }
            }
            out = next;
        }
        out.sort_by(|a, b| crate::algebra::ffactor::canonical_cmp(a, b));
        out
    }

    /// The prime powers `P_i^{e_i}` of ā over F_{q^n}.
    pub fn prime_powers(&self, fd: &FieldDescriptor) -> Vec<(PolyT, PolyT, u32)> {
        let ring = fd.k_ring();
        self.factors
            .iter()
            .map(|(p, e)| {
                let pe = fd.embed_poly(p);
                (pe.clone(), ring.pow(&pe, *e as u64), *e)
            })
            .collect()
    }

    /// `q^{deg a}`.
    pub fn torsion_size(&self, fd: &FieldDescriptor) -> u64 {
        fd.q.pow(self.deg as u32)
    }

    /// Residues of degree `< deg a` with coefficients in F_q, in canonical order.
    pub fn residues(&self, fd: &FieldDescriptor) -> Vec<PolyT> {
        field::residues(&fd.a_ring(), self.deg)
            .into_iter()
            .map(|b| fd.embed_poly(&b))
            .collect()
    }

    /// Units of `A/āA`, in canonical order.
    pub fn units(&self, fd: &FieldDescriptor) -> Vec<PolyT> {
        let ring = fd.k_ring();
        self.residues(fd)
            .into_iter()
            .filter(|b| !b.is_empty() && ring.gcd(b, &self.monic).len() == 1)
            .collect()
    }
}

/// Φ_ā as a polynomial in x with F_{q^n}[T] coefficients (ā the monic part of `a`).
pub fn cyclotomic_poly(fd: &FieldDescriptor, a: &[Fe]) -> Result<Vec<PolyT>> {
    let cond = Conductor::new(fd, a)?;
    Ok(cyclotomic_of(fd, &cond))
}

pub fn cyclotomic_of(fd: &FieldDescriptor, cond: &Conductor) -> Vec<PolyT> {
    let ring = fd.k_ring();
    let xr = PolyRing::new(ring.clone());
    let divs = cond.divisors(fd);
    let mut phis: BTreeMap<PolyT, Vec<PolyT>> = BTreeMap::new();
    for d in &divs {
        let cd = to_dense(&ring, &carlitz_coeffs(&ring, d));
        let phi = if d.len() == 1 {
            cd
        } else {
            let mut rest = cd;
            for (e, pe) in &phis {
                if ring.divides(e, d) {
                    rest = xr.divrem_monic(&rest, pe).0;
                }
            }
            rest
        };
        phis.insert(d.clone(), phi);
    }
    phis.remove(&cond.monic).expect("ā is among its divisors")
}

/// Roots of `C_a` in an ambient algebra, with a marked generator if present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionSet<E> {
    pub elements: Vec<E>,
    pub generator: Option<E>,
    /// Whether all `q^{deg a}` torsion points are present.
    pub full: bool,
}

/// `{C_b(λ) : deg b < deg a}` for a generator `λ` of Λ_a in `S`.
pub fn torsion_from_generator<S: CarlitzAlgebra>(
    s: &S,
    fd: &FieldDescriptor,
    cond: &Conductor,
    lambda: &S::Elem,
) -> Vec<S::Elem> {
    let basis = torsion_basis(s, fd, cond, lambda);
    cond.residues(fd)
        .iter()
        .map(|b| combine(s, fd, &basis, b))
        .collect()
}

/// `C_{T^j}(λ)` for `j < deg a`; `C_b(λ)` is F_q-linear in the coefficients of `b`.
pub fn torsion_basis<S: CarlitzAlgebra>(
    s: &S,
    fd: &FieldDescriptor,
    cond: &Conductor,
    lambda: &S::Elem,
) -> Vec<S::Elem> {
    let ring = fd.k_ring();
    let mut out = Vec::with_capacity(cond.deg);
    let mut cur = lambda.clone();
    let ct = carlitz_coeffs(&ring, &ring.x());
    for _ in 0..cond.deg {
        out.push(cur.clone());
        cur = eval_additive(s, &ct, &cur);
    }
    out
}

/// `Σ b_j C_{T^j}(λ)` from a precomputed basis.
pub fn combine<S: CarlitzAlgebra>(
    s: &S,
    _fd: &FieldDescriptor,
    basis: &[S::Elem],
    b: &[Fe],
) -> S::Elem {
    let mut acc = s.zero();
    for (bj, e) in b.iter().zip(basis) {
        if bj.0 != 0 {
            acc = s.add(&acc, &s.mul(&s.from_poly_t(&[*bj]), e));
        }
    }
    acc
}

/// Whether `λ` generates Λ_a: `C_a(λ) = 0` and `C_{ā/P}(λ) ≠ 0` for every prime `P | ā`.
pub fn is_generator<S: CarlitzAlgebra>(
    s: &S,
    fd: &FieldDescriptor,
    lambda: &S::Elem,
    a: &[Fe],
) -> Result<bool> {
    let cond = Conductor::new(fd, a)?;
    let ring = fd.k_ring();
    if !s.is_zero(&carlitz_eval(s, &ring, &cond.monic, lambda)) {
        return Err(Error::NotTorsion(crate::wire::format_poly(fd.p, a)));
    }
    for (p, _) in &cond.factors {
        let d = ring.div_exact(&cond.monic, &fd.embed_poly(p)).unwrap();
        if s.is_zero(&carlitz_eval(s, &ring, &d, lambda)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Roots of `C_a` in K (via the global solver), generator marked.
pub fn torsion_points(
    fd: &FieldDescriptor,
    a: &[Fe],
    degree_cap: usize,
) -> Result<TorsionSet<RatFn>> {
    let k = fd.k_field();
    let cond = Conductor::new(fd, a)?;
    let elements = crate::global::solve_global(fd, a, &k.zero(), degree_cap)?;
    let mut generator = None;
    for e in &elements {
        if is_generator(&k, fd, e, a)? {
            generator = Some(e.clone());
            break;
        }
    }
    let full = elements.len() as u64 == cond.torsion_size(fd);
    Ok(TorsionSet {
        elements,
        generator,
        full,
    })
}
