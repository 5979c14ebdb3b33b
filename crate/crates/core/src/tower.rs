//! The tower K ⊆ E = K(λ) ⊆ L = E(h), where λ generates Λ_ā and h is a
//! root of `C_a(x) − m`.

use crate::algebra::{ExtField, Fe, Field, PolyRing, RatFn, RatFnField, Ring};
use crate::carlitz::{
    carlitz_coeffs, carlitz_eval, combine, cyclotomic_of, to_dense, torsion_basis, Conductor,
};
use crate::error::{Error, Result};
use crate::field::{self, FieldDescriptor, PolyT};
use crate::kfactor::{factor_over_extension, factor_over_k};
use crate::local::{LocalVerdict, Place};
use crate::wire::format_poly;

pub type EField = ExtField<RatFnField>;
pub type EElem = Vec<RatFn>;
pub type LField = ExtField<EField>;
pub type LElem = Vec<EElem>;

#[derive(Clone, Debug)]
pub struct ExtensionTower {
    pub cond: Conductor,
    pub m: RatFn,
    pub k: RatFnField,
    /// Minimal polynomial of λ over K.
    pub g1: Vec<RatFn>,
    pub e: EField,
    /// Minimal polynomial of h over E.
    pub g2: Vec<EElem>,
    pub l: LField,
    /// Roots of `C_a(x) − m` lying in E.
    pub roots_in_e: Vec<EElem>,
    /// `q^{deg a}`.
    pub torsion_size: u64,
}

impl ExtensionTower {
    /// `[("y", g1), ("z", g2)]`; a level of degree one is trivial.
    pub fn levels(&self) -> Vec<(&'static str, usize)> {
        vec![("y", self.degree_lambda()), ("z", self.degree_h())]
    }

    pub fn degree_lambda(&self) -> usize {
        self.g1.len() - 1
    }

    pub fn degree_h(&self) -> usize {
        self.g2.len() - 1
    }

    /// `[L:K]`.
    pub fn degree(&self) -> usize {
        self.degree_lambda() * self.degree_h()
    }

    pub fn lambda(&self) -> EElem {
        self.e.gen()
    }

    pub fn h(&self) -> LElem {
        self.l.gen()
    }

    pub fn lift_e(&self, x: &EElem) -> LElem {
        self.l.from_base(x.clone())
    }

    /// Whether `C_a(x) − m` splits into linear factors over K(λ).
    pub fn splits_over_lambda(&self) -> bool {
        self.roots_in_e.len() as u64 == self.torsion_size
    }

    /// The K-value of an element of L lying in K.
    pub fn as_k(&self, x: &LElem) -> Option<RatFn> {
        self.e.as_base(&self.l.as_base(x)?)
    }
}

/// Dense coefficients of `C_a(x) − m` over K.
pub fn carlitz_minus_m(fd: &FieldDescriptor, a: &[Fe], m: &RatFn) -> Vec<RatFn> {
    let ring = fd.k_ring();
    let k = fd.k_field();
    let mut f: Vec<RatFn> = to_dense(&ring, &carlitz_coeffs(&ring, a))
        .iter()
        .map(|c| k.from_poly(c))
        .collect();
    f[0] = k.sub(&f[0], m);
    f
}

/// Builds `K(λ)` from the canonical irreducible factor of Φ_ā over K and `L`
/// from the canonical irreducible factor of `C_a(x) − m` over K(λ).
///
/// The norm used to factor over K(λ) has dimension `[K(λ):K]·q^{deg a}`,
/// which must not exceed `degree_cap` when `[K(λ):K] > 1`.
pub fn build_splitting_tower(
    fd: &FieldDescriptor,
    a: &[Fe],
    m: &RatFn,
    degree_cap: usize,
) -> Result<ExtensionTower> {
    let cond = Conductor::new(fd, a)?;
    let k = fd.k_field();
    let phi: Vec<RatFn> = cyclotomic_of(fd, &cond)
        .iter()
        .map(|c| k.from_poly(c))
        .collect();
    let g1 = factor_over_k(&k, &phi)?.into_iter().next().unwrap();
    let e = ExtField::new(k.clone(), g1.clone());
    let f: Vec<EElem> = carlitz_minus_m(fd, &cond.a, m)
        .into_iter()
        .map(|c| e.from_base(c))
        .collect();
    let dim = e.degree() * (f.len() - 1);
    if e.degree() > 1 && dim > degree_cap {
        return Err(Error::DegreeCap {
            needed: dim,
            cap: degree_cap,
        });
    }
    let factors = factor_over_extension(&e, &f)?;
    let roots_in_e: Vec<EElem> = factors
        .iter()
        .filter(|g| g.len() == 2)
        .map(|g| e.neg(&g[0]))
        .collect();
    let g2 = factors.into_iter().next().unwrap();
    let l = ExtField::new(e.clone(), g2.clone());
    let torsion_size = cond.torsion_size(fd);
    Ok(ExtensionTower {
        cond,
        m: m.clone(),
        k,
        g1,
        e,
        g2,
        l,
        roots_in_e,
        torsion_size,
    })
}

/// Outcome of the local hypothesis over the tested places.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    Satisfied,
    Failed,
    Untested,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingCheck {
    pub hypothesis: Hypothesis,
    /// `L = K(λ)`.
    pub conclusion: bool,
    pub candidate: bool,
    pub failing_places: Vec<Place>,
    pub untested_places: Vec<Place>,
}

/// Compares local solvability at the listed places with `L = K(λ)`.
///
/// An unsolvable place decides the hypothesis negatively even if other
/// places are inconclusive; otherwise any inconclusive place leaves the
/// instance untested.
pub fn verify_splitting_theorem(
    tower: &ExtensionTower,
    verdicts: &[(Place, LocalVerdict)],
) -> SplittingCheck {
    let failing_places: Vec<Place> = verdicts
        .iter()
        .filter(|(_, v)| matches!(v, LocalVerdict::Unsolvable(_)))
        .map(|(p, _)| p.clone())
        .collect();
    let untested_places: Vec<Place> = verdicts
        .iter()
        .filter(|(_, v)| v.is_inconclusive())
        .map(|(p, _)| p.clone())
        .collect();
    let hypothesis = if !failing_places.is_empty() {
        Hypothesis::Failed
    } else if !untested_places.is_empty() {
        Hypothesis::Untested
    } else {
        Hypothesis::Satisfied
    };
    let conclusion = tower.splits_over_lambda();
    SplittingCheck {
        hypothesis,
        conclusion,
        candidate: hypothesis == Hypothesis::Satisfied && !conclusion,
        failing_places,
        untested_places,
    }
}

/// A rational root assembled prime power by prime power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    pub x: RatFn,
    /// `(P_i^{e_i}, b_i, m_i)` per prime power of ā.
    pub parts: Vec<(PolyT, PolyT, RatFn)>,
    pub epsilon: PolyT,
}

/// Finds `x_K = C_ε(λ) + h ∈ K` with `C_a(x_K) = m`.
///
/// For each prime power `P_i^{e_i}` of ā, with `a_i = ā/P_i^{e_i}`, searches
/// `b_i` such that `m_i = C_{a_i}(C_{b_i}(λ) + h)` lies in K, sets
/// `ε ≡ b_i (mod P_i^{e_i})` and certifies `x_K = Σ C_{υ_i}(m_i)` for a Bézout
/// identity `Σ υ_i a_i = 1`.
pub fn reconstruct_global_solution(
    fd: &FieldDescriptor,
    tower: &ExtensionTower,
) -> Result<Reconstruction> {
    let ring = fd.k_ring();
    let k = &tower.k;
    let cond = &tower.cond;
    let abar = &cond.monic;
    let basis = torsion_basis(&tower.e, fd, cond, &tower.lambda());
    let h = tower.h();
    // C_a(x) = m is C_ā(x) = m / unit.
    let target = k.mul(&tower.m, &k.from_const(fd.ext.inv(&cond.unit).unwrap()));

    let mut parts = Vec::new();
    let mut a_is = Vec::new();
    for (_, pe, _) in cond.prime_powers(fd) {
        let ai = ring.div_exact(abar, &pe).unwrap();
        let dim = pe.len() - 1;
        let mut found = None;
        for b in field::residues(&fd.a_ring(), dim) {
            let b = fd.embed_poly(&b);
            let cb = combine(&tower.e, fd, &basis, &b);
            let x = tower.l.add(&tower.lift_e(&cb), &h);
            if let Some(mi) = tower.as_k(&carlitz_eval(&tower.l, &ring, &ai, &x)) {
                found = Some((b, mi));
                break;
            }
        }
        let (b, mi) =
            found.ok_or_else(|| Error::ReconstructionObstructed(format_poly(fd.p, &pe)))?;
        parts.push((pe, b, mi));
        a_is.push(ai);
    }

    let congruences: Vec<(PolyT, PolyT)> = parts
        .iter()
        .map(|(pe, b, _)| (b.clone(), pe.clone()))
        .collect();
    let epsilon = field::crt(&ring, &congruences)?;

    // Σ υ_i a_i = 1.
    let mut g = a_is[0].clone();
    let mut ups = vec![ring.one()];
    for ai in &a_is[1..] {
        let (d, s, t) = field::xgcd(&ring, &g, ai)?;
        ups.iter_mut().for_each(|u| *u = ring.mul(u, &s));
        ups.push(t);
        g = d;
    }
    if !ring.is_one(&g) {
        return Err(Error::Internal("cofactors of ā are not coprime".into()));
    }
    let mut x = k.zero();
    for (u, (_, _, mi)) in ups.iter().zip(&parts) {
        x = k.add(&x, &carlitz_eval(k, &ring, u, mi));
    }

    let ce = combine(&tower.e, fd, &basis, &ring.rem(&epsilon, abar));
    let x_tower = tower.l.add(&tower.lift_e(&ce), &h);
    if tower.as_k(&x_tower).as_ref() != Some(&x) {
        return Err(Error::Internal(
            "Bézout combination disagrees with C_ε(λ) + h".into(),
        ));
    }
    if carlitz_eval(k, &ring, abar, &x) != target {
        return Err(Error::Internal(
            "reconstructed root failed substitution".into(),
        ));
    }
    Ok(Reconstruction { x, parts, epsilon })
}

/// `g(x)` for `g` over K and `x` in E.
pub fn eval_k_in_e(e: &EField, g: &[RatFn], x: &EElem) -> EElem {
    let kx = PolyRing::new(e.base().clone());
    kx.eval_in(g, e, x, |c| e.from_base(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_tower;

    fn p(c: &[u32]) -> PolyT {
        c.iter().map(|&x| Fe(x)).collect()
    }

    #[test]
    fn tower_examples() {
        let fd = field_tower(2, 1, 1).unwrap();
        let k = fd.k_field();
        let t = build_splitting_tower(&fd, &p(&[0, 1]), &k.t(), 24).unwrap();
        assert_eq!(
            (t.degree_lambda(), t.degree(), t.splits_over_lambda()),
            (1, 2, false)
        );
        let t = build_splitting_tower(&fd, &p(&[0, 1]), &k.from_poly(&p(&[1, 1])), 24).unwrap();
        assert_eq!((t.degree(), t.roots_in_e.len()), (1, 2));
        let fd3 = field_tower(3, 1, 1).unwrap();
        let k3 = fd3.k_field();
        let t = build_splitting_tower(&fd3, &p(&[0, 1]), &k3.zero(), 24).unwrap();
        assert_eq!(t.g1, vec![k3.t(), k3.zero(), k3.one()]);
        assert_eq!(t.degree(), 2);
        assert!(t.splits_over_lambda());
    }

    #[test]
    fn reconstruction_examples() {
        let fd = field_tower(2, 1, 1).unwrap();
        let k = fd.k_field();
        let a = p(&[0, 1, 1]);
        let m = k.from_poly(&p(&[0, 0, 0, 1, 0, 1, 1, 0, 1]));
        let t = build_splitting_tower(&fd, &a, &m, 24).unwrap();
        let r = reconstruct_global_solution(&fd, &t).unwrap();
        let roots = crate::global::solve_global(&fd, &a, &m, 24).unwrap();
        assert!(roots.contains(&r.x));
        assert_eq!(r.parts.len(), 2);
    }

    #[test]
    fn reconstruction_in_quadratic_tower() {
        // λ_T is irrational for q = 3; m = C_T(1/T) still has a rational root.
        let fd = field_tower(3, 1, 1).unwrap();
        let k = fd.k_field();
        let ring = fd.k_ring();
        let a = p(&[0, 1]);
        let x0 = k.frac(&p(&[1]), &p(&[0, 1]));
        let m = carlitz_eval(&k, &ring, &a, &x0);
        let t = build_splitting_tower(&fd, &a, &m, 24).unwrap();
        assert_eq!(t.degree_lambda(), 2);
        let r = reconstruct_global_solution(&fd, &t).unwrap();
        assert_eq!(carlitz_eval(&k, &ring, &a, &r.x), m);
    }

    #[test]
    fn obstruction_is_reported() {
        let fd = field_tower(2, 1, 1).unwrap();
        let k = fd.k_field();
        let t = build_splitting_tower(&fd, &p(&[0, 1]), &k.t(), 24).unwrap();
        assert!(matches!(
            reconstruct_global_solution(&fd, &t),
            Err(Error::ReconstructionObstructed(_))
        ));
    }
}
