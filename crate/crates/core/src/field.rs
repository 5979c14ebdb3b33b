//! The constant fields F_p ⊆ F_q ⊆ F_{q^n} and the polynomial rings over them.

use crate::algebra::ffactor::{self, canonical_cmp};
use crate::algebra::{Fe, Gf, PolyRing, RatFnField, Ring};
use crate::error::{Error, Result};

/// Polynomial in T, lowest degree first, no trailing zeros.
pub type PolyT = Vec<Fe>;

/// Lexicographically smallest monic irreducible of degree `k` over F_p, with
/// coefficients compared from the constant term up.
pub fn smallest_irreducible(p: u32, k: u32) -> Result<Vec<u32>> {
    if k == 1 {
        return Ok(vec![0, 1]);
    }
    let fp = Gf::prime(p)?;
    let ring = PolyRing::new(fp);
    let total = (p as u64)
        .checked_pow(k)
        .ok_or(Error::FieldTooLarge(u64::MAX))?;
    for idx in 0..total {
        // The constant term is the most significant digit of idx.
        let mut c = vec![0u32; k as usize + 1];
        let mut v = idx;
        for i in (0..k as usize).rev() {
            c[i] = (v % p as u64) as u32;
            v /= p as u64;
        }
        c[k as usize] = 1;
        let f: Vec<Fe> = c.iter().map(|&x| Fe(x)).collect();
        if ffactor::is_irreducible(&ring, &f) {
            return Ok(c);
        }
    }
    Err(Error::Internal(format!(
        "no irreducible of degree {k} over F_{p}"
    )))
}

/// F_q = F_p[s]/(μ_r) and F_{q^n} = F_p[t]/(μ_{rn}), with an explicit embedding.
#[derive(Clone, Debug)]
pub struct FieldDescriptor {
    pub p: u32,
    pub r: u32,
    pub n: u32,
    pub q: u64,
    /// F_q.
    pub base: Gf,
    /// F_{q^n}, the constant field of K.
    pub ext: Gf,
    embed: Vec<Fe>,
    restrict: Vec<Option<Fe>>,
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, o: &Self) -> bool {
        (self.p, self.r, self.n) == (o.p, o.r, o.n)
    }
}

/// Builds the deterministic field tower for `(p, r, n)`.
pub fn field_tower(p: u32, r: u32, n: u32) -> Result<FieldDescriptor> {
    if !crate::algebra::gf::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 || n == 0 {
        return Err(Error::InvalidField("r and n must be positive".into()));
    }
    let q = (p as u64)
        .checked_pow(r)
        .ok_or(Error::FieldTooLarge(u64::MAX))?;
    let big = q.checked_pow(n).unwrap_or(u64::MAX);
    if big > crate::algebra::gf::MAX_FIELD_ORDER {
        return Err(Error::FieldTooLarge(big));
    }
    let base = Gf::new(p, &smallest_irreducible(p, r)?, q)?;
    let ext = Gf::new(p, &smallest_irreducible(p, r * n)?, q)?;

    // Image of the generator of F_q: the smallest-code root of its modulus.
    let gen_image = if r == 1 {
        None
    } else {
        let m: Vec<Fe> = base.modulus().iter().map(|&c| Fe(c)).collect();
        let ring = PolyRing::new(ext.clone());
        Some(
            ext.elements()
                .find(|x| ext.is_zero(&ring.eval(&m, x)))
                .ok_or_else(|| Error::Internal("F_q modulus has no root in F_{q^n}".into()))?,
        )
    };
    let embed: Vec<Fe> = base
        .elements()
        .map(|c| match gen_image {
            None => c,
            Some(g) => {
                let d = base.coords(c);
                d.iter()
                    .rev()
                    .fold(Fe(0), |acc, &di| ext.add(&ext.mul(&acc, &g), &Fe(di)))
            }
        })
        .collect();
    let mut restrict = vec![None; ext.size() as usize];
    for (i, e) in embed.iter().enumerate() {
        restrict[e.0 as usize] = Some(Fe(i as u32));
    }
    Ok(FieldDescriptor {
        p,
        r,
        n,
        q,
        base,
        ext,
        embed,
        restrict,
    })
}

impl FieldDescriptor {
    /// The moduli of F_q and F_{q^n} over F_p, omitting degree-one levels.
    pub fn modulus_chain(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        if self.r > 1 {
            out.push(self.base.modulus().to_vec());
        }
        if self.r * self.n > 1 && self.n > 1 {
            out.push(self.ext.modulus().to_vec());
        }
        out
    }

    /// Image of the generator of F_q in F_{q^n} (`None` when F_q is prime).
    pub fn generator_image(&self) -> Option<Fe> {
        (self.r > 1).then(|| self.embed[self.base.p() as usize])
    }

    pub fn embed(&self, c: Fe) -> Fe {
        self.embed[c.0 as usize]
    }

    pub fn embed_poly(&self, f: &[Fe]) -> PolyT {
        f.iter().map(|&c| self.embed(c)).collect()
    }

    /// Preimage in F_q, if the element lies there.
    pub fn restrict(&self, c: Fe) -> Option<Fe> {
        self.restrict[c.0 as usize]
    }

    pub fn restrict_poly(&self, f: &[Fe]) -> Option<PolyT> {
        f.iter().map(|&c| self.restrict(c)).collect()
    }

    /// A = F_q[T].
    pub fn a_ring(&self) -> PolyRing<Gf> {
        PolyRing::new(self.base.clone())
    }

    /// F_{q^n}[T].
    pub fn k_ring(&self) -> PolyRing<Gf> {
        PolyRing::new(self.ext.clone())
    }

    /// K = F_{q^n}(T).
    pub fn k_field(&self) -> RatFnField {
        RatFnField::new(self.ext.clone())
    }
}

/// `unit · ∏ factor^exp`, factors monic irreducible in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(PolyT, u32)>,
}

impl Factorization {
    pub fn expand(&self, ring: &PolyRing<Gf>) -> PolyT {
        let mut acc = ring.constant(self.unit);
        for (f, e) in &self.factors {
            acc = ring.mul(&acc, &ring.pow(f, *e as u64));
        }
        acc
    }

    /// The prime powers `P^e`.
    pub fn prime_powers(&self, ring: &PolyRing<Gf>) -> Vec<PolyT> {
        self.factors
            .iter()
            .map(|(f, e)| ring.pow(f, *e as u64))
            .collect()
    }
}

pub fn xgcd(ring: &PolyRing<Gf>, f: &[Fe], g: &[Fe]) -> Result<(PolyT, PolyT, PolyT)> {
    if f.is_empty() && g.is_empty() {
        return Err(Error::ZeroInput);
    }
    Ok(ring.xgcd(f, g))
}

pub fn factor(ring: &PolyRing<Gf>, a: &[Fe]) -> Result<Factorization> {
    if a.is_empty() {
        return Err(Error::ZeroInput);
    }
    let (unit, factors) = ffactor::factor(ring, a);
    Ok(Factorization { unit, factors })
}

/// The unique residue modulo `∏ M_i` satisfying every congruence `x ≡ b_i mod M_i`.
pub fn crt(ring: &PolyRing<Gf>, congruences: &[(PolyT, PolyT)]) -> Result<PolyT> {
    for (i, (_, mi)) in congruences.iter().enumerate() {
        if mi.is_empty() {
            return Err(Error::ZeroInput);
        }
        for (_, mj) in &congruences[i + 1..] {
            if ring.gcd(mi, mj).len() != 1 {
                return Err(Error::NonCoprimeModuli(
                    crate::wire::format_poly(ring.base.p(), mi),
                    crate::wire::format_poly(ring.base.p(), mj),
                ));
            }
        }
    }
    let mut x: PolyT = vec![];
    let mut m = ring.one();
    for (b, mi) in congruences {
        // x' = x + m·((b − x)·m^{-1} mod mi)
        let minv = ring.invmod(&m, mi).expect("coprime moduli");
        let t = ring.mulmod(&ring.sub(b, &x), &minv, mi);
        x = ring.add(&x, &ring.mul(&m, &t));
        m = ring.mul(&m, mi);
        x = ring.rem(&x, &m);
    }
    Ok(x)
}

/// Number of nonzero residues of degree `< deg a` coprime to `a`, over the
/// coefficient field of `ring`.
pub fn euler_phi(ring: &PolyRing<Gf>, a: &[Fe]) -> Result<u64> {
    match ring.deg(a) {
        None => Err(Error::ZeroInput),
        Some(0) => Err(Error::ConstantInput),
        Some(_) => {
            let q = ring.base.size() as u64;
            let f = factor(ring, a)?;
            Ok(f.factors
                .iter()
                .map(|(p, e)| {
                    let qd = q.pow((p.len() - 1) as u32);
                    qd.pow(e - 1) * (qd - 1)
                })
                .product())
        }
    }
}

/// All monic polynomials of degree `d`, in canonical order.
pub fn monic_polys(ring: &PolyRing<Gf>, d: usize) -> Vec<PolyT> {
    let s = ring.base.size() as u64;
    let total = s.pow(d as u32);
    let mut out: Vec<PolyT> = (0..total)
        .map(|mut idx| {
            let mut c = vec![Fe(0); d + 1];
            for ci in c.iter_mut().take(d) {
                *ci = Fe((idx % s) as u32);
                idx /= s;
            }
            c[d] = Fe(1);
            c
        })
        .collect();
    out.sort_by(|a, b| canonical_cmp(a, b));
    out
}

/// All polynomials of degree `< d` (including zero), in canonical order.
pub fn residues(ring: &PolyRing<Gf>, d: usize) -> Vec<PolyT> {
    let s = ring.base.size() as u64;
    let mut out: Vec<PolyT> = (0..s.pow(d as u32))
        .map(|mut idx| {
            let mut c = vec![Fe(0); d];
            for ci in c.iter_mut() {
                *ci = Fe((idx % s) as u32);
                idx /= s;
            }
            ring.normalized(c)
        })
        .collect();
    out.sort_by(|a, b| canonical_cmp(a, b));
    out
}

/// Monic irreducibles of degree exactly `d`, in canonical order.
pub fn monic_irreducibles(ring: &PolyRing<Gf>, d: usize) -> Vec<PolyT> {
    monic_polys(ring, d)
        .into_iter()
        .filter(|f| ffactor::is_irreducible(ring, f))
        .collect()
}
