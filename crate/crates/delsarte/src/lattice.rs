//! Structure matrix of a deformed Delsarte polynomial: determinant scale
//! `gamma`, weight vector `B`, the linear forms `L_q`, and membership in the
//! semigroup cone `S_Delta`.
//!
//! Row order of the structure matrix is canonical: rows `1..n` are
//! `(alpha(i), 0, 1)`, row `n+1` is `(0, 0, 1)`, row `n+2` is
//! `(alpha(n+2), 1, 1)`.  Row order only permutes the columns of the
//! inverse, and every exported quantity depends on the column data alone.

use crate::matrix::{IMat, Mat};
use crate::{Error, Int, Rat, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Input datum: `n` independent exponent vectors, plus one deformation
/// exponent strictly inside the simplex spanned by them and the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentData {
    pub n: usize,
    /// Exponent vectors `alpha(1..n)`, each of length `n`.
    pub alpha: Vec<Vec<Int>>,
    /// Deformation exponent `alpha(n+2)`, length `n`.  `alpha(n+1) = 0` is implicit.
    pub deform: Vec<Int>,
}

impl ExponentData {
    pub fn new(alpha: Vec<Vec<Int>>, deform: Vec<Int>) -> Self {
        let n = alpha.len();
        assert!(n >= 1, "need at least one exponent vector");
        assert!(alpha.iter().all(|a| a.len() == n), "exponent vectors must have length n");
        assert_eq!(deform.len(), n, "deformation exponent must have length n");
        ExponentData { n, alpha, deform }
    }

    pub fn from_i64(alpha: &[&[i64]], deform: &[i64]) -> Self {
        ExponentData::new(
            alpha.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect(),
            deform.iter().map(|&v| Int::from(v)).collect(),
        )
    }
}

/// One column of `gamma * L^{-1}`: the exact linear form
/// `L_q(I, z, k) = (<v, I> - B*z + C*k) / gamma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub v: Vec<Int>,
    pub b: Int,
    pub c: Int,
    pub denom: Int,
}

impl LinearForm {
    /// `<v, I>`.
    pub fn pairing(&self, i: &[Int]) -> Int {
        self.v.iter().zip(i).map(|(a, b)| a * b).sum()
    }

    /// Exact value `(<v,I> - B*z + C*k) / gamma`.
    pub fn eval(&self, i: &[Int], z: &Rat, k: &Int) -> Rat {
        let affine = Rat::from(self.pairing(i) + &self.c * k) - Rat::from(self.b.clone()) * z;
        affine / Rat::from(self.denom.clone())
    }

    /// Grading value `L_q(I, 0, ell)` used by cone membership and weights.
    pub fn grade(&self, i: &[Int], ell: &Int) -> Rat {
        self.eval(i, &Rat::zero(), ell)
    }

    /// Coefficient of `z`, as an exact rational `-B/gamma`.
    pub fn z_coeff(&self) -> Rat {
        Rat::new(-self.b.clone(), self.denom.clone())
    }
}

/// The structure matrix `L`, its determinant data, and the n+2 linear forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureMatrix {
    pub data: ExponentData,
    pub l: IMat,
    /// Signed determinant of `L`.
    pub det: Int,
    /// `gamma = |det L| = n! vol(Delta)`.
    pub gamma: Int,
    /// Forms `L_1 .. L_{n+2}`; `forms[q]` is the (q+1)-st form of the text.
    pub forms: Vec<LinearForm>,
}

/// Assemble the structure matrix, invert it exactly, and extract the forms.
pub fn build_structure(data: ExponentData) -> Result<StructureMatrix> {
    let n = data.n;
    let dim = n + 2;
    let mut rows: Vec<Vec<Int>> = Vec::with_capacity(dim);
    for a in &data.alpha {
        let mut row = a.clone();
        row.push(Int::zero());
        row.push(Int::one());
        rows.push(row);
    }
    let mut zero_row = vec![Int::zero(); dim];
    zero_row[dim - 1] = Int::one();
    rows.push(zero_row);
    let mut deform_row = data.deform.clone();
    deform_row.push(Int::one());
    deform_row.push(Int::one());
    rows.push(deform_row);

    let l = IMat::from_rows(rows);
    let det = l.det();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let gamma = det.clone().abs();

    let inv = l.to_mat().inverse().expect("nonzero determinant has an inverse");
    let mut forms = Vec::with_capacity(dim);
    for q in 0..dim {
        let col: Vec<Rat> =
            inv.col(q).iter().map(|e| e * Rat::from(gamma.clone())).collect();
        debug_assert!(col.iter().all(|e| e.is_integer()), "gamma * L^-1 must be integral");
        let ints: Vec<Int> = col.iter().map(|e| e.to_integer()).collect();
        let v = ints[..n].to_vec();
        let b = -ints[n].clone();
        let c = ints[n + 1].clone();
        forms.push(LinearForm { v, b, c, denom: gamma.clone() });
    }

    // Interiority of the deformation exponent: all n+1 barycentric weights positive.
    if forms[..=n].iter().any(|f| !f.b.is_positive()) {
        return Err(Error::NotInterior);
    }

    let sm = StructureMatrix { data, l, det, gamma, forms };
    sm.assert_column_patterns();
    Ok(sm)
}

impl StructureMatrix {
    pub fn n(&self) -> usize {
        self.data.n
    }

    /// Weight vector `(B_1, ..., B_{n+1})`; positive, sums to `gamma`.
    pub fn weight_vector(&self) -> Vec<Int> {
        let b: Vec<Int> = self.forms[..=self.n()].iter().map(|f| f.b.clone()).collect();
        debug_assert_eq!(b.iter().sum::<Int>(), self.gamma);
        b
    }

    /// True iff `gcd(B_1, ..., B_{n+1}) = 1`.
    pub fn gcd_condition(&self) -> bool {
        let mut g = Int::zero();
        for b in self.weight_vector() {
            g = g.gcd(&b);
        }
        g.is_one()
    }

    /// Membership `I` in `ell * Delta`, i.e. `L_q(I,0,ell) >= 0` for all
    /// `q in [1; n+1]`.  With `strict`, membership in the interior.
    pub fn member(&self, ell: &Int, i: &[Int], strict: bool) -> bool {
        self.forms[..=self.n()].iter().all(|f| {
            let val = f.grade(i, ell);
            if strict { val.is_positive() } else { !val.is_negative() }
        })
    }

    /// `(ell, I)` lies in the semigroup cone `S_Delta`.
    pub fn in_s_delta(&self, ell: &Int, i: &[Int]) -> bool {
        !ell.is_negative() && self.member(ell, i, false)
    }

    /// Grading values `(L_1(I,0,ell), ..., L_{n+1}(I,0,ell))`.
    pub fn grades(&self, ell: &Int, i: &[Int]) -> Vec<Rat> {
        self.forms[..=self.n()].iter().map(|f| f.grade(i, ell)).collect()
    }

    fn assert_column_patterns(&self) {
        let n = self.n();
        // Forms 1..n have no k-term; form n+1 carries k with coefficient 1;
        // form n+2 is exactly z.
        for f in &self.forms[..n] {
            assert!(f.c.is_zero());
        }
        assert_eq!(self.forms[n].c, self.gamma);
        let last = &self.forms[n + 1];
        assert!(last.v.iter().all(|e| e.is_zero()));
        assert_eq!(last.b, -self.gamma.clone());
        assert!(last.c.is_zero());
        // Sum of the first n+1 columns is (0, -1, 1) scaled by gamma.
        for coord in 0..n {
            let s: Int = self.forms[..=n].iter().map(|f| f.v[coord].clone()).sum();
            assert!(s.is_zero());
        }
        let sb: Int = self.forms[..=n].iter().map(|f| f.b.clone()).sum();
        assert_eq!(sb, self.gamma);
        let sc: Int = self.forms[..=n].iter().map(|f| f.c.clone()).sum();
        assert_eq!(sc, self.gamma);
    }

    /// Exact barycentric coordinates of `I` with respect to the simplex
    /// vertices `alpha(1..n)` and the origin: `t_q = L_q(I,0,ell)` for
    /// `q <= n`, and the origin weight is `L_{n+1}(I,0,ell)`.
    pub fn barycentric_direct(&self, i: &[Int]) -> Option<Vec<Rat>> {
        let n = self.n();
        let a_t = Mat::from_rows(
            (0..n)
                .map(|r| {
                    (0..n).map(|c| Rat::from(self.data.alpha[c][r].clone())).collect()
                })
                .collect(),
        );
        let inv = a_t.inverse()?;
        let iv: Vec<Rat> = i.iter().map(|e| Rat::from(e.clone())).collect();
        Some(inv.matvec(&iv))
    }
}
