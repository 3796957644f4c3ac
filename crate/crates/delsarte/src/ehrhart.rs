//! Lattice-point counts of dilates of the Newton simplex, the Ehrhart
//! numerator pair `(Psi, Phi)`, and the fundamental parallelepiped.
//!
//! `Psi(t) = (1-t)^{n+1} P_Delta(t)` has degree at most `n`; the interior
//! numerator `Phi` picks up degree `n+1` with vanishing constant term, and
//! the two are tied by the reciprocity `t^{n+1} Psi(1/t) = Phi(t)`.  `Phi`
//! is therefore stored with `n+2` coefficients.

use crate::lattice::StructureMatrix;
use crate::{binomial, grid, Int, Rat};
use num_traits::{Signed, ToPrimitive, Zero};

/// Numerators of the closed and interior Ehrhart generating series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartPair {
    /// `psi[k]`, `k = 0..n`; `Psi(1) = gamma`.
    pub psi: Vec<Int>,
    /// `phi[k]`, `k = 0..n+1`; `phi[0] = 0`.
    pub phi: Vec<Int>,
}

impl EhrhartPair {
    /// Reciprocity `t^{n+1} Psi(1/t) = Phi(t)`: coefficient reversal into
    /// degree `n+1`.
    pub fn reciprocity_holds(&self) -> bool {
        let deg = self.phi.len() - 1;
        (0..=deg).all(|j| {
            let psi_c = if deg - j < self.psi.len() {
                self.psi[deg - j].clone()
            } else {
                Int::zero()
            };
            self.phi[j] == psi_c
        })
    }
}

fn coord_i64(v: &Int) -> i64 {
    v.to_i64().expect("lattice coordinate exceeds i64 range")
}

/// Bounding box of `k * Delta`: per-coordinate min/max over the vertices
/// `0, k*alpha(1), ..., k*alpha(n)`.
fn dilate_box(sm: &StructureMatrix, k: u64) -> (Vec<i64>, Vec<i64>) {
    let n = sm.n();
    let kk = Int::from(k);
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    for a in &sm.data.alpha {
        for c in 0..n {
            let v = coord_i64(&(&a[c] * &kk));
            lo[c] = lo[c].min(v);
            hi[c] = hi[c].max(v);
        }
    }
    (lo, hi)
}

/// `l(k*Delta)` (or the interior count with strict inequalities).
pub fn count_points(sm: &StructureMatrix, k: u64, interior: bool) -> u64 {
    let (lo, hi) = dilate_box(sm, k);
    let ell = Int::from(k);
    grid::count_box(&lo, &hi, |p| {
        let i: Vec<Int> = p.iter().map(|&x| Int::from(x)).collect();
        sm.member(&ell, &i, interior)
    }) as u64
}

/// Finite differences `sum_j (-1)^j C(n+1, j) counts[k-j]`.
fn differences(counts: &[Int], n: usize, upto: usize) -> Vec<Int> {
    (0..=upto)
        .map(|k| {
            let mut acc = Int::zero();
            for j in 0..=k.min(n + 1) {
                let term = binomial((n + 1) as u64, j as u64) * &counts[k - j];
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect()
}

/// Both numerators from exact counts of the dilates `k = 0..n+1`.
pub fn ehrhart(sm: &StructureMatrix) -> EhrhartPair {
    let n = sm.n();
    let closed: Vec<Int> =
        (0..=n as u64 + 1).map(|k| Int::from(count_points(sm, k, false))).collect();
    let open: Vec<Int> =
        (0..=n as u64 + 1).map(|k| Int::from(count_points(sm, k, true))).collect();
    let mut psi = differences(&closed, n, n + 1);
    let top = psi.pop().expect("n+2 differences computed");
    assert!(top.is_zero(), "Psi must have degree at most n");
    let phi = differences(&open, n, n + 1);
    assert!(phi[0].is_zero(), "Phi must have vanishing constant term");
    let pair = EhrhartPair { psi, phi };
    debug_assert!(pair.reciprocity_holds());
    pair
}

/// Evaluate the Ehrhart polynomial reconstructed from `psi` at dilate `k`:
/// `l(k*Delta) = sum_j psi[j] * C(n + k - j, n)`.
pub fn ehrhart_eval(psi: &[Int], n: usize, k: u64) -> Int {
    let mut acc = Int::zero();
    for (j, c) in psi.iter().enumerate() {
        let a = (n as u64 + k).saturating_sub(j as u64);
        if (j as u64) <= n as u64 + k {
            acc += c * binomial(a, n as u64);
        }
    }
    acc
}

/// All lattice points of the half-open fundamental parallelepiped
/// `{ sum t_q (1, alpha(q)) : 0 <= t_q < 1 }`, returned lex-sorted as
/// `(ell, I)` pairs.  Cardinality is exactly `gamma`.
pub fn parallelepiped_points(sm: &StructureMatrix) -> Vec<(Int, Vec<Int>)> {
    let n = sm.n();
    // I-coordinate bounds: sums of negative / positive parts of the alpha rows.
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    for a in &sm.data.alpha {
        for c in 0..n {
            let v = coord_i64(&a[c]);
            if v < 0 {
                lo[c] += v;
            } else {
                hi[c] += v;
            }
        }
    }
    let mut out: Vec<(Int, Vec<Int>)> = Vec::new();
    for ell in 0..=n as i64 {
        let ell_int = Int::from(ell);
        let mut hits = grid::scan_box(&lo, &hi, |p| {
            let i: Vec<Int> = p.iter().map(|&x| Int::from(x)).collect();
            let inside = sm.grades(&ell_int, &i).into_iter().all(|t| {
                !t.is_negative() && t < Rat::from(Int::from(1))
            });
            inside.then(|| (ell_int.clone(), i))
        });
        out.append(&mut hits);
    }
    assert_eq!(Int::from(out.len()), sm.gamma, "parallelepiped must hold gamma points");
    out
}
