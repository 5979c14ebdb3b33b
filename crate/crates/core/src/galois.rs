//! The image Σ of Gal(L/K) in pairs `(b, u)`, splitting of primes in
//! k(Λ_ā)/k, and prime counts by residue class.

use std::collections::BTreeMap;

use crate::algebra::{ffactor, ExtField, Fe, PolyRing, Ring};
use crate::carlitz::{combine, cyclotomic_of, torsion_basis, Conductor};
use crate::error::{Error, Result};
use crate::field::{self, field_tower, FieldDescriptor, PolyT};
use crate::tower::{eval_k_in_e, ExtensionTower, LElem};

/// Largest `|A/āA|` for which pairs are enumerated.
pub const MAX_RESIDUES: u64 = 64;

/// The automorphism `λ ↦ C_b(λ)`, `h ↦ C_u(λ) + h`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaloisPair {
    pub b: PolyT,
    pub u: PolyT,
}

impl GaloisPair {
    pub fn identity() -> GaloisPair {
        GaloisPair {
            b: vec![Fe(1)],
            u: vec![],
        }
    }

    /// `(b₁,u₁)∘(b₂,u₂) = (b₁b₂, b₁u₂ + u₁)` modulo ā.
    pub fn compose(
        &self,
        other: &GaloisPair,
        ring: &PolyRing<crate::algebra::Gf>,
        abar: &[Fe],
    ) -> GaloisPair {
        GaloisPair {
            b: ring.rem(&ring.mul(&self.b, &other.b), abar),
            u: ring.rem(&ring.add(&ring.mul(&self.b, &other.u), &self.u), abar),
        }
    }

    pub fn is_unipotent(&self) -> bool {
        self.b == [Fe(1)]
    }
}

/// All pairs defining a K-automorphism of the tower, in canonical order.
pub fn galois_image(fd: &FieldDescriptor, tower: &ExtensionTower) -> Result<Vec<GaloisPair>> {
    let cond = &tower.cond;
    let size = cond.torsion_size(fd);
    if size > MAX_RESIDUES {
        return Err(Error::EnumerationCap {
            needed: size,
            cap: MAX_RESIDUES,
        });
    }
    let e = &tower.e;
    let l = &tower.l;
    let basis = torsion_basis(e, fd, cond, &tower.lambda());
    let residues = cond.residues(fd);
    let images: Vec<_> = residues.iter().map(|b| combine(e, fd, &basis, b)).collect();
    let h = tower.h();
    let ex = PolyRing::new(e.base().clone());
    let mut out = Vec::new();
    for (b, cb) in residues.iter().zip(&images) {
        if b.is_empty() || !cond.units(fd).contains(b) {
            continue;
        }
        if !e.is_zero(&eval_k_in_e(e, &tower.g1, cb)) {
            continue;
        }
        // g2 with y replaced by C_b(λ).
        let moved: Vec<LElem> = tower
            .g2
            .iter()
            .map(|c| l.from_base(ex.eval_in(c, e, cb, |r| e.from_base(r.clone()))))
            .collect();
        for (u, cu) in residues.iter().zip(&images) {
            let x = l.add(&tower.lift_e(cu), &h);
            let v = moved
                .iter()
                .rev()
                .fold(l.zero(), |acc, c| l.add(&l.mul(&acc, &x), c));
            if l.is_zero(&v) {
                out.push(GaloisPair {
                    b: b.clone(),
                    u: u.clone(),
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Whether `(1, u) ∈ Σ` forces `u = 0`.
pub fn sigma_cap_m_trivial(sigma: &[GaloisPair]) -> bool {
    sigma.iter().all(|g| !g.is_unipotent() || g.u.is_empty())
}

/// Whether Σ contains the identity and is closed under composition.
pub fn is_group(sigma: &[GaloisPair], ring: &PolyRing<crate::algebra::Gf>, abar: &[Fe]) -> bool {
    sigma.contains(&GaloisPair::identity())
        && sigma.iter().all(|x| {
            sigma
                .iter()
                .all(|y| sigma.contains(&x.compose(y, ring, abar)))
        })
}

/// Decomposition of a prime `P` of k = F_q(T) in k(Λ_ā).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingType {
    pub e: u64,
    pub f: u64,
    pub g: u64,
    pub place: PolyT,
}

fn base_descriptor(fd: &FieldDescriptor) -> Result<FieldDescriptor> {
    field_tower(fd.p, fd.r, 1)
}

fn restrict(fd: &FieldDescriptor, f: &[Fe]) -> Result<PolyT> {
    fd.restrict_poly(f)
        .ok_or_else(|| Error::RingMismatch("expected coefficients in F_q".into()))
}

/// Splitting of `place` (monic irreducible over F_q) from the factorization
/// of Φ_ā over `A/P`.
pub fn frobenius_splitting(fd: &FieldDescriptor, place: &[Fe], a: &[Fe]) -> Result<SplittingType> {
    let k0 = base_descriptor(fd)?;
    let p = restrict(fd, place)?;
    let a = restrict(fd, a)?;
    let ring = k0.k_ring();
    if !ffactor::is_irreducible(&ring, &p) || !ring.is_monic(&p) {
        return Err(Error::InvalidField(
            "the place must be monic irreducible".into(),
        ));
    }
    let cond = Conductor::new(&k0, &a)?;
    let phi = cyclotomic_of(&k0, &cond);
    let res = ExtField::new(k0.ext.clone(), p.clone());
    let rx = PolyRing::new(res.clone());
    let reduced = rx.normalized(phi.iter().map(|c| res.reduce(c)).collect());
    let (_, facs) = ffactor::factor(&rx, &reduced);
    let f = (facs[0].0.len() - 1) as u64;
    if facs.iter().any(|(g, _)| (g.len() - 1) as u64 != f) {
        return Err(Error::Internal("residue degrees are not uniform".into()));
    }
    let g = facs.len() as u64;
    Ok(SplittingType {
        e: cond.phi / (f * g),
        f,
        g,
        place: fd.embed_poly(&p),
    })
}

/// Multiplicative order of `x` modulo ā, or `None` if not a unit.
pub fn unit_order(ring: &PolyRing<crate::algebra::Gf>, x: &[Fe], abar: &[Fe]) -> Option<u64> {
    let x = ring.rem(x, abar);
    if x.is_empty() || ring.gcd(&x, abar).len() != 1 {
        return None;
    }
    let mut cur = x.clone();
    let mut n = 1;
    while !ring.is_one(&cur) {
        cur = ring.mulmod(&cur, &x, abar);
        n += 1;
    }
    Some(n)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityEstimate {
    /// `(class, count)` over the units of `A/āA`, in canonical order.
    pub counts: Vec<(PolyT, u64)>,
    pub total: u64,
}

impl DensityEstimate {
    pub fn fractions(&self) -> Vec<(PolyT, f64)> {
        self.counts
            .iter()
            .map(|(c, n)| (c.clone(), *n as f64 / self.total as f64))
            .collect()
    }
}

/// Monic irreducibles `P ∤ ā` of degree ≤ `max_degree` over F_q, counted by
/// `P mod ā`.
pub fn density_estimate(
    fd: &FieldDescriptor,
    a: &[Fe],
    max_degree: usize,
) -> Result<DensityEstimate> {
    let k0 = base_descriptor(fd)?;
    let a = restrict(fd, a)?;
    let cond = Conductor::new(&k0, &a)?;
    let ring = k0.k_ring();
    let mut counts: BTreeMap<PolyT, u64> = cond.units(&k0).into_iter().map(|u| (u, 0)).collect();
    let mut total = 0;
    for d in 1..=max_degree {
        for p in field::monic_irreducibles(&ring, d) {
            let r = ring.rem(&p, &cond.monic);
            if let Some(c) = counts.get_mut(&r) {
                *c += 1;
                total += 1;
            }
        }
    }
    if total == 0 {
        return Err(Error::EmptySample);
    }
    let mut counts: Vec<(PolyT, u64)> = counts
        .into_iter()
        .map(|(c, n)| (fd.embed_poly(&c), n))
        .collect();
    counts.sort_by(|x, y| ffactor::canonical_cmp(&x.0, &y.0));
    Ok(DensityEstimate { counts, total })
}
