//! Places of K = F_{q^n}(T) and solvability of `C_a(x) = m` in completions.
//!
//! The infinite place is handled by the substitution `T = 1/U`, after which
//! it is the finite place `U`. All local data (coefficients, witnesses) for
//! the infinite place therefore live in the variable `U`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

use crate::algebra::ffactor::canonical_cmp;
use crate::algebra::linalg::{AffineSolution, FpLinearMap};
use crate::algebra::ratfn::{poly_valuation, split_off};
use crate::algebra::{ExtField, Fe, Field, FpSpace, Gf, PolyRing, RatFn, RatFnField, Ring};
use crate::carlitz::{additive_eval, carlitz_coeffs, AdditivePoly, AffineAdditivePoly};
use crate::error::{Error, Result};
use crate::field::{monic_irreducibles, FieldDescriptor, PolyT};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(PolyT),
    Infinite,
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => canonical_cmp(a, b),
            (Place::Finite(_), Place::Infinite) => Ordering::Less,
            (Place::Infinite, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinite, Place::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.len() - 1,
            Place::Infinite => 1,
        }
    }

    /// The uniformizer in local coordinates (`U` for the infinite place).
    pub fn local_pi(&self) -> PolyT {
        match self {
            Place::Finite(p) => p.clone(),
            Place::Infinite => vec![Fe(0), Fe(1)],
        }
    }

    pub fn label(&self, p: u32) -> String {
        match self {
            Place::Finite(f) => crate::wire::format_poly(p, f),
            Place::Infinite => "inf".into(),
        }
    }

    pub fn parse(field: &Gf, s: &str) -> Result<Place> {
        if s.trim() == "inf" {
            return Ok(Place::Infinite);
        }
        let f = crate::wire::parse_poly(field, s)?;
        let ring = PolyRing::new(field.clone());
        if !ring.is_monic(&f) || !crate::algebra::ffactor::is_irreducible(&ring, &f) {
            return Err(Error::Parse(format!(
                "place {s:?} is not a monic irreducible"
            )));
        }
        Ok(Place::Finite(f))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p:?}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

/// All monic irreducibles over F_{q^n} of degree `≤ max_degree`, then ∞.
pub fn enumerate_places(
    fd: &FieldDescriptor,
    max_degree: usize,
    include_infinite: bool,
) -> Vec<Place> {
    let ring = fd.k_ring();
    let mut out: Vec<Place> = (1..=max_degree)
        .flat_map(|d| monic_irreducibles(&ring, d))
        .map(Place::Finite)
        .collect();
    if include_infinite {
        out.push(Place::Infinite);
    }
    out
}

/// Element `π^{−shift}·(mantissa + O(π^precision))` of a completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalElem {
    pub place: Place,
    pub shift: i64,
    pub mantissa: PolyT,
    pub precision: u32,
}

impl LocalElem {
    /// The global element `π^{−shift}·mantissa` of K (back in the variable T).
    pub fn to_ratfn(&self, k: &RatFnField) -> RatFn {
        let pi = self.place.local_pi();
        let x = k.mul(&k.pi_power(&pi, -self.shift), &k.from_poly(&self.mantissa));
        match self.place {
            Place::Finite(_) => x,
            Place::Infinite => k.invert_variable(&x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    NonIntegralSlope,
    ResidueObstruction,
    LiftObstruction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalVerdict {
    /// `certified` is a lower bound for `v(C_a(x) − m)`; `None` means the
    /// witness is an exact root.
    Solvable {
        witness: LocalElem,
        certified: Option<i64>,
    },
    Unsolvable(Obstruction),
    Inconclusive {
        needed: u32,
        cap: u32,
    },
}

impl LocalVerdict {
    pub fn is_solvable(&self) -> bool {
        matches!(self, LocalVerdict::Solvable { .. })
    }
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, LocalVerdict::Inconclusive { .. })
    }
    pub fn status(&self) -> &'static str {
        match self {
            LocalVerdict::Solvable { .. } => "solvable",
            LocalVerdict::Unsolvable(Obstruction::NonIntegralSlope) => "non_integral_slope",
            LocalVerdict::Unsolvable(Obstruction::ResidueObstruction) => "residue_obstruction",
            LocalVerdict::Unsolvable(Obstruction::LiftObstruction) => "lift_obstruction",
            LocalVerdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// A Newton polygon segment: slope and horizontal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub slope: Ratio<i64>,
    pub length: u64,
}

/// Lower convex hull of points with distinct abscissae, left to right.
pub fn lower_hull(points: &[(u64, i64)]) -> Vec<Segment> {
    let mut pts = points.to_vec();
    pts.sort();
    let mut hull: Vec<(u64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // Drop the middle point when it lies on or above the chord.
            let lhs = (y2 - y1) as i128 * (pt.0 - x1) as i128;
            let rhs = (pt.1 - y1) as i128 * (x2 - x1) as i128;
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| Segment {
            slope: Ratio::new(w[1].1 - w[0].1, (w[1].0 - w[0].0) as i64),
            length: w[1].0 - w[0].0,
        })
        .collect()
}

/// The equation `C_a(x) = m` written in the local coordinate of `place`.
#[derive(Clone, Debug)]
pub struct LocalEquation {
    pub k: RatFnField,
    pub pi: PolyT,
    pub q: u64,
    pub coeffs: Vec<RatFn>,
    pub m: RatFn,
}

impl LocalEquation {
    pub fn new(fd: &FieldDescriptor, a: &[Fe], m: &RatFn, place: &Place) -> LocalEquation {
        let k = fd.k_field();
        let ring = fd.k_ring();
        let c = carlitz_coeffs(&ring, a);
        let (coeffs, m) = match place {
            Place::Finite(_) => (c.coeffs.iter().map(|f| k.from_poly(f)).collect(), m.clone()),
            Place::Infinite => (
                c.coeffs
                    .iter()
                    .map(|f| k.invert_variable(&k.from_poly(f)))
                    .collect(),
                k.invert_variable(m),
            ),
        };
        LocalEquation {
            pi: place.local_pi(),
            q: fd.q,
            coeffs,
            m,
            k,
        }
    }

    pub fn valuation(&self, x: &RatFn) -> Option<i64> {
        self.k.valuation(x, &self.pi)
    }

    /// `g(z) − m` in local coordinates.
    pub fn residual(&self, z: &RatFn) -> RatFn {
        self.k
            .sub(&additive_eval(&self.k, &self.coeffs, z), &self.m)
    }

    pub fn newton_points(&self) -> Vec<(u64, i64)> {
        let mut pts = Vec::new();
        if let Some(v) = self.valuation(&self.m) {
            pts.push((0, v));
        }
        let mut qi = 1u64;
        for c in &self.coeffs {
            if let Some(v) = self.valuation(c) {
                pts.push((qi, v));
            }
            qi *= self.q;
        }
        pts
    }
}

/// Newton polygon of `C_a(x) − m` at `place`. For `m = 0` the root `x = 0`
/// is not represented; the polygon covers the remaining roots.
pub fn newton_polygon(fd: &FieldDescriptor, a: &[Fe], m: &RatFn, place: &Place) -> Vec<Segment> {
    lower_hull(&LocalEquation::new(fd, a, m, place).newton_points())
}

/// Integral root valuations read off the polygon, ascending.
pub fn integral_root_valuations(segments: &[Segment]) -> Vec<i64> {
    let mut out: Vec<i64> = segments
        .iter()
        .filter(|s| s.slope.is_integer())
        .map(|s| -s.slope.to_integer())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The equation after `x = π^w z` and division by `π^μ`: integral
/// coefficients, `e = v(c'_0)`, decided modulo `π^{2e+1}`.
#[derive(Clone, Debug)]
pub struct ScaledEquation {
    pub eq: LocalEquation,
    pub w: i64,
    pub mu: i64,
    pub e: u32,
    pub coeffs: Vec<RatFn>,
    pub m: RatFn,
}

impl ScaledEquation {
    pub fn new(eq: LocalEquation, w: i64) -> ScaledEquation {
        let k = &eq.k;
        let mut mu = eq.valuation(&eq.m).unwrap_or(i64::MAX);
        let mut qi = 1i64;
        for c in &eq.coeffs {
            if let Some(v) = eq.valuation(c) {
                mu = mu.min(v + w * qi);
            }
            qi *= eq.q as i64;
        }
        let mut coeffs = Vec::new();
        let mut qi = 1i64;
        for c in &eq.coeffs {
            coeffs.push(k.mul(c, &k.pi_power(&eq.pi, w * qi - mu)));
            qi *= eq.q as i64;
        }
        let m = k.mul(&eq.m, &k.pi_power(&eq.pi, -mu));
        let e = eq.k.valuation(&coeffs[0], &eq.pi).expect("nonzero a") as u32;
        ScaledEquation {
            eq,
            w,
            mu,
            e,
            coeffs,
            m,
        }
    }

    pub fn threshold(&self) -> u32 {
        2 * self.e + 1
    }

    pub fn residual(&self, z: &RatFn) -> RatFn {
        let k = &self.eq.k;
        k.sub(&additive_eval(k, &self.coeffs, z), &self.m)
    }

    pub fn as_affine(&self) -> AffineAdditivePoly<RatFn> {
        AffineAdditivePoly {
            linear: AdditivePoly {
                coeffs: self.coeffs.clone(),
            },
            constant: self.m.clone(),
        }
    }
}

/// `x mod M` for `x` integral at every prime of `M`.
pub fn reduce_mod(k: &RatFnField, x: &RatFn, modulus: &[Fe]) -> PolyT {
    let r = &k.ring;
    let inv = r
        .invmod(&x.den, modulus)
        .expect("denominator is a unit modulo M");
    r.mulmod(&x.num, &inv, modulus)
}

/// All `z mod π^N` with `g(z) ≡ m (mod π^N)`, as an affine F_p-space.
fn solve_mod_power(eq: &ScaledEquation, n: u32) -> Option<(ExtField<Gf>, AffineSolution)> {
    let k = &eq.eq.k;
    let modulus = k.ring.pow(&eq.eq.pi, n as u64);
    let rn = ExtField::new(k.gf().clone(), modulus.clone());
    let coeffs: Vec<PolyT> = eq
        .coeffs
        .iter()
        .map(|c| reduce_mod(k, c, &modulus))
        .collect();
    let dim = rn.fp_dim();
    let columns = (0..dim)
        .map(|i| {
            let mut e = vec![0u32; dim];
            e[i] = 1;
            rn.to_fp(&additive_eval(&rn, &coeffs, &rn.from_fp(&e)))
        })
        .collect();
    let map = FpLinearMap::from_columns(k.gf().p(), dim, columns);
    let rhs = rn.to_fp(&reduce_mod(k, &eq.m, &modulus));
    map.solve(&rhs).map(|s| (rn, s))
}

/// Residue-field solutions of `C_a(x) = m̄`. At ∞ the equation is first
/// multiplied by `U^{deg a}` so that its coefficients are integral.
pub fn solve_residue(fd: &FieldDescriptor, a: &[Fe], m_bar: &[Fe], place: &Place) -> Vec<PolyT> {
    let k = fd.k_field();
    let ring = fd.k_ring();
    let eq = LocalEquation::new(fd, a, &k.zero(), place);
    let pi = eq.pi.clone();
    let scale = match place {
        Place::Finite(_) => k.one(),
        Place::Infinite => k.pi_power(&pi, (a.len() - 1) as i64),
    };
    let coeffs: Vec<PolyT> = eq
        .coeffs
        .iter()
        .map(|c| reduce_mod(&k, &k.mul(c, &scale), &pi))
        .collect();
    let rf = ExtField::new(fd.ext.clone(), pi.clone());
    let dim = rf.fp_dim();
    let columns = (0..dim)
        .map(|i| {
            let mut e = vec![0u32; dim];
            e[i] = 1;
            rf.to_fp(&additive_eval(&rf, &coeffs, &rf.from_fp(&e)))
        })
        .collect();
    let map = FpLinearMap::from_columns(fd.p, dim, columns);
    let rhs = rf.to_fp(&ring.rem(m_bar, &pi));
    let mut out: Vec<PolyT> = match map.solve(&rhs) {
        None => vec![],
        Some(s) => s.enumerate().iter().map(|v| rf.from_fp(v)).collect(),
    };
    out.sort_by(|a, b| canonical_cmp(a, b));
    out
}

/// Result of Hensel lifting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lifted {
    /// `z` with `v(f(z)) ≥ target`, known modulo `π^{target − e}`; exact
    /// roots are flagged.
    Root {
        z: PolyT,
        exact: bool,
    },
    Obstruction,
}

/// Newton iteration `z ← z − f(z)/c_0` for an integral additive equation
/// `f(z) = L(z) − m` at the place `pi`, starting from `z0`.
pub fn lift_hensel(
    k: &RatFnField,
    pi: &[Fe],
    f: &AffineAdditivePoly<RatFn>,
    z0: &[Fe],
    target: u32,
) -> Result<Lifted> {
    let e = k
        .valuation(&f.linear.coeffs[0], pi)
        .ok_or_else(|| Error::Precision("linear coefficient vanishes".into()))?;
    if e < 0 {
        return Err(Error::Precision("equation is not integral".into()));
    }
    let e = e as u32;
    let residual = |z: &PolyT| {
        k.sub(
            &additive_eval(k, &f.linear.coeffs, &k.from_poly(z)),
            &f.constant,
        )
    };
    let modulus = k.ring.pow(&pi.to_vec(), target.max(e + 1) as u64);
    let mut z = k.ring.normalized(z0.to_vec());
    let mut r = residual(&z);
    match k.valuation(&r, pi) {
        None => return Ok(Lifted::Root { z, exact: true }),
        Some(v) if v < (2 * e + 1) as i64 => return Ok(Lifted::Obstruction),
        _ => {}
    }
    loop {
        match k.valuation(&r, pi) {
            None => return Ok(Lifted::Root { z, exact: true }),
            Some(v) if v >= target as i64 => {
                let keep = k.ring.pow(&pi.to_vec(), (target - e.min(target)) as u64);
                let zr = if keep.len() > 1 {
                    k.ring.rem(&z, &keep)
                } else {
                    z.clone()
                };
                return Ok(Lifted::Root {
                    z: zr,
                    exact: false,
                });
            }
            Some(_) => {}
        }
        let delta = k.div(&r, &f.linear.coeffs[0]).unwrap();
        let d = reduce_mod(k, &delta, &modulus);
        z = k.ring.rem(&k.ring.sub(&z, &d), &modulus);
        let next = residual(&z);
        if let (Some(v0), Some(v1)) = (k.valuation(&r, pi), k.valuation(&next, pi)) {
            if v1 <= v0 && v1 < target as i64 {
                return Err(Error::Precision(format!(
                    "Newton step did not improve ({v0} -> {v1})"
                )));
            }
        }
        r = next;
    }
}

/// Decides solvability of `C_a(x) = m` in the completion at `place`.
///
/// `precision_cap` bounds the working precision `N` (in the scaled
/// variable); the default is `4·(2e′+1)`.
pub fn solve_local(
    fd: &FieldDescriptor,
    a: &[Fe],
    m: &RatFn,
    place: &Place,
    precision_cap: Option<u32>,
) -> Result<LocalVerdict> {
    if a.is_empty() {
        return Err(Error::ZeroInput);
    }
    let k = fd.k_field();
    let eq = LocalEquation::new(fd, a, m, place);
    if k.is_zero(m) {
        let witness = LocalElem {
            place: place.clone(),
            shift: 0,
            mantissa: vec![],
            precision: u32::MAX,
        };
        return Ok(LocalVerdict::Solvable {
            witness,
            certified: None,
        });
    }
    let ws = integral_root_valuations(&lower_hull(&eq.newton_points()));
    let Some(&w) = ws.first() else {
        return Ok(LocalVerdict::Unsolvable(Obstruction::NonIntegralSlope));
    };
    let pi = eq.pi.clone();
    let sc = ScaledEquation::new(eq, w);
    let n = sc.threshold();
    let cap = precision_cap.unwrap_or(4 * n);
    if cap < n {
        return Ok(LocalVerdict::Inconclusive { needed: n, cap });
    }
    if solve_mod_power(&sc, 1).is_none() {
        return Ok(LocalVerdict::Unsolvable(Obstruction::ResidueObstruction));
    }
    let Some((rn, sol)) = solve_mod_power(&sc, n) else {
        return Ok(LocalVerdict::Unsolvable(Obstruction::LiftObstruction));
    };
    let z0 = rn.from_fp(&sol.particular);
    let lifted = lift_hensel(&k, &pi, &sc.as_affine(), &z0, cap)?;
    let (z, exact) = match lifted {
        Lifted::Root { z, exact } => (z, exact),
        Lifted::Obstruction => {
            return Err(Error::Precision(
                "solution modulo π^(2e+1) failed to lift".into(),
            ))
        }
    };
    let certified = match k.valuation(&sc.residual(&k.from_poly(&z)), &pi) {
        None => None,
        Some(v) => Some(sc.mu + v),
    };
    if let Some(c) = certified {
        if c < sc.mu + (n as i64) {
            return Err(Error::Precision(format!(
                "certified precision {c} below threshold"
            )));
        }
    }
    let precision = if exact { u32::MAX } else { cap - sc.e };
    let witness = LocalElem {
        place: place.clone(),
        shift: -w,
        mantissa: z,
        precision,
    };
    Ok(LocalVerdict::Solvable { witness, certified })
}

/// `v_π` of a polynomial, `None` for zero.
pub fn poly_val(ring: &PolyRing<Gf>, f: &[Fe], pi: &[Fe]) -> Option<u32> {
    (!f.is_empty()).then(|| poly_valuation(ring, f, pi))
}

/// Splits `f = π^v · rest`.
pub fn strip(ring: &PolyRing<Gf>, f: &[Fe], pi: &[Fe]) -> (u32, PolyT) {
    split_off(ring, f, pi)
}
