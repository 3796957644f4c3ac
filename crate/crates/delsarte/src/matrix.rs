//! Dense exact matrices: rational (`Mat`) and integer (`IMat`).
//!
//! Sizes here are desk scale (a few hundred rows at most), so the
//! implementations favour exactness and determinism over asymptotics:
//! Gauss-Jordan over `BigRational`, Bareiss over `BigInt`.

use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix over `BigRational`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Row-major view of all entries.
    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.at(k, j);
                    let cur = out.at(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Rat) -> Mat {
        let data = self.data.iter().map(|a| a * s).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert_eq!(self.rows, self.cols, "pow needs a square matrix");
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.rows)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.at(i, i).clone()).sum()
    }

    /// Monic characteristic polynomial, ascending coefficients, by the
    /// Faddeev-LeVerrier trace recursion.
    pub fn char_poly(&self) -> Vec<Rat> {
        assert_eq!(self.rows, self.cols);
        let d = self.rows;
        let mut coeffs = vec![Rat::zero(); d + 1];
        coeffs[d] = Rat::one();
        let mut acc = self.clone();
        for k in 1..=d {
            if k > 1 {
                let shifted = acc.add(&Mat::identity(d).scale(&coeffs[d - k + 1]));
                acc = self.mul(&shifted);
            }
            coeffs[d - k] = -acc.trace() / Rat::from(Int::from(k as i64));
        }
        coeffs
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols && self.transpose() == self.scale(&-Rat::one())
    }

    /// Determinant by fraction-aware Gaussian elimination.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { return Rat::zero() };
            if p != col {
                for j in 0..n {
                    let a = m.at(col, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(col, j, b);
                    m.set(p, j, a);
                }
                det = -det;
            }
            let pv = m.at(col, col).clone();
            det *= &pv;
            for r in col + 1..n {
                let f = m.at(r, col) / &pv;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let val = m.at(r, j) - &f * m.at(col, j);
                    m.set(r, j, val);
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !m.at(r, col).is_zero())?;
            if p != col {
                for j in 0..n {
                    let (a, b) = (m.at(col, j).clone(), m.at(p, j).clone());
                    m.set(col, j, b);
                    m.set(p, j, a);
                    let (a, b) = (inv.at(col, j).clone(), inv.at(p, j).clone());
                    inv.set(col, j, b);
                    inv.set(p, j, a);
                }
            }
            let pv = m.at(col, col).clone();
            for j in 0..n {
                let a = m.at(col, j) / &pv;
                m.set(col, j, a);
                let b = inv.at(col, j) / &pv;
                inv.set(col, j, b);
            }
            for r in 0..n {
                if r == col || m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone();
                for j in 0..n {
                    let a = m.at(r, j) - &f * m.at(col, j);
                    m.set(r, j, a);
                    let b = inv.at(r, j) - &f * inv.at(col, j);
                    inv.set(r, j, b);
                }
            }
        }
        Some(inv)
    }

    /// Reduced row echelon form; returns the pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    let (a, b) = (self.at(r, j).clone(), self.at(p, j).clone());
                    self.set(r, j, b);
                    self.set(p, j, a);
                }
            }
            let pv = self.at(r, c).clone();
            for j in 0..self.cols {
                let v = self.at(r, j) / &pv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.at(i, c).is_zero() {
                    continue;
                }
                let f = self.at(i, c).clone();
                for j in 0..self.cols {
                    let v = self.at(i, j) - &f * self.at(r, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right nullspace, one vector per free column of the RREF.
    /// Deterministic: free columns in increasing order, free slot set to 1.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.at(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Signature `(n_plus, n_minus, n_zero)` of a symmetric matrix by exact
    /// congruence diagonalization (simultaneous row and column operations).
    pub fn signature(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric(), "signature needs a symmetric matrix");
        let n = self.rows;
        let mut m = self.clone();
        let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
        for i in 0..n {
            if m.at(i, i).is_zero() {
                // Prefer a congruence swap with a later nonzero diagonal entry.
                if let Some(j) = (i + 1..n).find(|&j| !m.at(j, j).is_zero()) {
                    m.swap_sym(i, j);
                } else if let Some(j) = (i + 1..n).find(|&j| !m.at(i, j).is_zero()) {
                    // All later diagonal entries vanish: fold row/col j in,
                    // giving diagonal entry 2*m[i][j] != 0 in characteristic 0.
                    m.fold_sym(i, j);
                } else {
                    zero += 1;
                    continue;
                }
            }
            let pv = m.at(i, i).clone();
            if pv.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for r in i + 1..n {
                let f = m.at(r, i) / &pv;
                if f.is_zero() {
                    continue;
                }
                // row_r -= f * row_i, then col_r -= f * col_i.
                for j in 0..n {
                    let v = m.at(r, j) - &f * m.at(i, j);
                    m.set(r, j, v);
                }
                for j in 0..n {
                    let v = m.at(j, r) - &f * m.at(j, i);
                    m.set(j, r, v);
                }
            }
        }
        (pos, neg, zero)
    }

    fn swap_sym(&mut self, a: usize, b: usize) {
        let n = self.cols;
        for j in 0..n {
            let (x, y) = (self.at(a, j).clone(), self.at(b, j).clone());
            self.set(a, j, y);
            self.set(b, j, x);
        }
        for i in 0..self.rows {
            let (x, y) = (self.at(i, a).clone(), self.at(i, b).clone());
            self.set(i, a, y);
            self.set(i, b, x);
        }
    }

    fn fold_sym(&mut self, a: usize, b: usize) {
        let n = self.cols;
        for j in 0..n {
            let v = self.at(a, j) + self.at(b, j);
            self.set(a, j, v);
        }
        for i in 0..self.rows {
            let v = self.at(i, a) + self.at(i, b);
            self.set(i, a, v);
        }
    }
}

/// Dense row-major matrix over `BigInt`.  Used where products of integer
/// matrices stay integral (companion matrices, unimodular conjugations).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IMat {
        let mut t = IMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.at(k, j);
                    let cur = out.at(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> IMat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = IMat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IMat::identity(self.rows)
    }

    /// Determinant by the Bareiss fraction-free algorithm.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = 1i64;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m.at(r, k).is_zero()) else {
                    return Int::zero();
                };
                for j in 0..n {
                    let (a, b) = (m.at(k, j).clone(), m.at(p, j).clone());
                    m.set(k, j, b);
                    m.set(p, j, a);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    m.set(i, j, num / &prev);
                }
                m.set(i, k, Int::zero());
            }
            prev = m.at(k, k).clone();
        }
        let d = m.at(n - 1, n - 1).clone();
        if sign < 0 { -d } else { d }
    }

    pub fn to_mat(&self) -> Mat {
        Mat::from_rows(
            (0..self.rows)
                .map(|i| self.row(i).iter().map(|v| Rat::from(v.clone())).collect())
                .collect(),
        )
    }

    /// Exact inverse for unimodular matrices; `None` if `det` is not a unit.
    pub fn inverse_unimodular(&self) -> Option<IMat> {
        let d = self.det();
        if !(d.clone().abs()).is_one() {
            return None;
        }
        let inv = self.to_mat().inverse()?;
        let mut out = IMat::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = inv.at(i, j);
                debug_assert!(e.is_integer());
                out.set(i, j, e.to_integer());
            }
        }
        Some(out)
    }
}
