//! Dense linear algebra over a prime field F_p, and characteristic
//! polynomials over arbitrary fields.

use super::poly::PolyRing;
use super::ring::{Field, Ring};

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is small and prime: Fermat.
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Solution set `particular + span(kernel)` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub p: u32,
    pub particular: Vec<u32>,
    pub kernel: Vec<Vec<u32>>,
}

impl AffineSolution {
    /// Number of solutions, `p^dim(kernel)`.
    pub fn count(&self) -> u128 {
        (self.p as u128).pow(self.kernel.len() as u32)
    }

    /// Every solution, in the order of the coefficient vectors over the
    /// kernel basis (first basis vector fastest).
    pub fn enumerate(&self) -> Vec<Vec<u32>> {
        let k = self.kernel.len();
        let total = self.count() as usize;
        let mut out = Vec::with_capacity(total);
        let mut coef = vec![0u32; k];
        for _ in 0..total {
            let mut v = self.particular.clone();
            for (c, b) in coef.iter().zip(&self.kernel) {
                if *c == 0 {
                    continue;
                }
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = (*vi + c * bi) % self.p;
                }
            }
            out.push(v);
            for c in coef.iter_mut() {
                *c += 1;
                if *c < self.p {
                    break;
                }
                *c = 0;
            }
        }
        out
    }
}

/// The matrix of a linear map given by the images of the basis vectors.
#[derive(Clone, Debug)]
pub struct FpLinearMap {
    p: u32,
    rows: usize,
    columns: Vec<Vec<u32>>,
}

impl FpLinearMap {
    pub fn from_columns(p: u32, rows: usize, columns: Vec<Vec<u32>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.len() == rows));
        Self { p, rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.rows];
        for (xi, col) in x.iter().zip(&self.columns) {
            if *xi == 0 {
                continue;
            }
            for (o, c) in out.iter_mut().zip(col) {
                *o = (*o + xi * c) % self.p;
            }
        }
        out
    }

    /// Solves `M x = rhs`; `None` when `rhs` is not in the image.
    pub fn solve(&self, rhs: &[u32]) -> Option<AffineSolution> {
        let p = self.p;
        let n = self.cols();
        let mut m: Vec<Vec<u32>> = (0..self.rows)
            .map(|r| {
                let mut row: Vec<u32> = self.columns.iter().map(|c| c[r]).collect();
                row.push(rhs[r] % p);
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, pr);
            let iv = inv_mod(m[r][c], p);
            for x in m[r].iter_mut() {
                *x = *x * iv % p;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c] == 0 {
                    continue;
                }
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        if m[r..].iter().any(|row| row[n] != 0) {
            return None;
        }
        let mut particular = vec![0u32; n];
        for (i, &c) in pivots.iter().enumerate() {
            particular[c] = m[i][n];
        }
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let kernel = (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u32; n];
                v[f] = 1;
                for (i, &c) in pivots.iter().enumerate() {
                    v[c] = (p - m[i][f]) % p;
                }
                v
            })
            .collect();
        Some(AffineSolution {
            p,
            particular,
            kernel,
        })
    }
}

/// Characteristic polynomial `det(x·I − M)` over any field, by reduction to
/// Hessenberg form.
pub fn charpoly<R: Field>(r: &R, mut a: Vec<Vec<R::Elem>>) -> Vec<R::Elem> {
    let n = a.len();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !r.is_zero(&a[i][j])) else {
            continue;
        };
        if piv != j + 1 {
            a.swap(piv, j + 1);
            for row in a.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = r.inv(&a[j + 1][j]).unwrap();
        for i in j + 2..n {
            if r.is_zero(&a[i][j]) {
                continue;
            }
            let u = r.mul(&a[i][j], &inv);
            for c in 0..n {
                let t = r.mul(&u, &a[j + 1][c]);
                a[i][c] = r.sub(&a[i][c], &t);
            }
            for row in a.iter_mut() {
                let t = r.mul(&u, &row[i]);
                row[j + 1] = r.add(&row[j + 1], &t);
            }
        }
    }
    // p_m = (x − h_mm) p_{m−1} − Σ_i h_{m−i,m} (∏_{j=m−i+1}^{m} h_{j,j−1}) p_{m−i−1}, 1-indexed.
    let pr = PolyRing::new(r.clone());
    let h = |i: usize, j: usize| &a[i - 1][j - 1];
    let mut ps: Vec<Vec<R::Elem>> = vec![pr.one()];
    for m in 1..=n {
        let lin = pr.normalized(vec![r.neg(h(m, m)), r.one()]);
        let mut pm = pr.mul(&lin, &ps[m - 1]);
        let mut prod = r.one();
        for i in 1..m {
            prod = r.mul(&prod, h(m - i + 1, m - i));
            let c = r.mul(h(m - i, m), &prod);
            if !r.is_zero(&c) {
                pm = pr.sub(&pm, &pr.scale(&ps[m - i - 1], &c));
            }
        }
        ps.push(pm);
    }
    ps.pop().unwrap()
}
