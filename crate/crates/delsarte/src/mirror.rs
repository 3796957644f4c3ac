//! The polar polytope and weighted projective mirror: Fano/reflexive
//! flags, the transposed polynomial, the Poincare series of the
//! hypersurface, and the Stokes/Gram matrices of the exceptional
//! collection on the weighted projective space.

use crate::lattice::StructureMatrix;
use crate::matrix::IMat;
use crate::monodromy::{companion, weight_char_poly, CharPolys};
use crate::poly::IPoly;
use crate::{Int, Rat, Result};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedProjectiveData {
    pub b: Vec<Int>,
    pub gamma: Int,
    pub fano: bool,
    pub reflexive: bool,
    /// Vertices `v_q / B_q` of the polar polytope, q = 1..n+1.
    pub polar_vertices: Vec<Vec<Rat>>,
}

/// Shifted exponents `alpha_0(q) = alpha(q) - alpha(n+2)`, q = 1..n+1.
fn shifted_exponents(sm: &StructureMatrix) -> Vec<Vec<Int>> {
    let n = sm.n();
    let mut out = Vec::with_capacity(n + 1);
    for q in 0..=n {
        let row: Vec<Int> = if q < n {
            sm.data.alpha[q]
                .iter()
                .zip(&sm.data.deform)
                .map(|(a, d)| a - d)
                .collect()
        } else {
            sm.data.deform.iter().map(|d| -d).collect()
        };
        out.push(row);
    }
    out
}

/// Polar vertices with the Fano (`gamma/B_q` integral) and reflexive
/// (vertices integral) flags; checks the pairing and barycenter laws.
pub fn polar_and_flags(sm: &StructureMatrix) -> WeightedProjectiveData {
    let n = sm.n();
    let b = sm.weight_vector();
    let vertices: Vec<Vec<Rat>> = sm.forms[..=n]
        .iter()
        .map(|f| {
            f.v.iter()
                .map(|vi| Rat::new(vi.clone(), f.b.clone()))
                .collect()
        })
        .collect();
    let alpha0 = shifted_exponents(sm);
    for (i, a) in alpha0.iter().enumerate() {
        for (j, vert) in vertices.iter().enumerate() {
            let pair: Rat = a
                .iter()
                .zip(vert)
                .map(|(ai, vi)| Rat::from(ai.clone()) * vi)
                .sum();
            let mut expect = -Rat::one();
            if i == j {
                expect += Rat::new(sm.gamma.clone(), b[j].clone());
            }
            assert_eq!(pair, expect, "polar pairing law");
        }
    }
    let mut barycenter = vec![Int::zero(); n];
    for (bq, a) in b.iter().zip(&alpha0) {
        for (acc, ai) in barycenter.iter_mut().zip(a) {
            *acc += bq * ai;
        }
    }
    assert!(barycenter.iter().all(Int::is_zero), "weighted barycenter law");
    let fano = b.iter().all(|bq| sm.gamma.is_multiple_of(bq));
    let reflexive = vertices
        .iter()
        .flatten()
        .all(|x| x.denom().is_one());
    WeightedProjectiveData { b, gamma: sm.gamma.clone(), fano, reflexive, polar_vertices: vertices }
}

/// Exponent data of the transposed polynomial
/// `f^T = y^1 (sum_i b_i y^(row_i) + b_(n+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransposeData {
    /// Rows of the n x (n+1) matrix whose columns are the alpha_0(q).
    pub rows: Vec<Vec<Int>>,
    /// The all-ones offset exponent.
    pub offset: Vec<Int>,
    pub weights: Vec<Int>,
    pub degree: Int,
}

pub fn transpose_polynomial(sm: &StructureMatrix) -> TransposeData {
    let n = sm.n();
    let alpha0 = shifted_exponents(sm);
    let rows: Vec<Vec<Int>> = (0..n)
        .map(|i| alpha0.iter().map(|a| a[i].clone()).collect())
        .collect();
    let weights = sm.weight_vector();
    for row in &rows {
        let pair: Int = row.iter().zip(&weights).map(|(r, w)| r * w).sum();
        assert!(pair.is_zero(), "rows must be orthogonal to the weights");
    }
    let degree: Int = weights.iter().cloned().sum();
    assert_eq!(degree, sm.gamma);
    TransposeData { rows, offset: vec![Int::one(); n + 1], weights, degree }
}

/// `hilb(k)` for k = 0..=upto: the number of (n+1)-tuples m >= 0 with
/// sum m_q B_q = k.
pub fn hilbert_coefficients(b: &[Int], upto: usize) -> Vec<Int> {
    let mut c = vec![Int::zero(); upto + 1];
    c[0] = Int::one();
    for bq in b {
        let step = bq.to_usize().expect("B_q fits usize");
        for k in step..=upto {
            let prev = c[k - step].clone();
            c[k] += prev;
        }
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareSeries {
    pub numerator: IPoly,
    pub denominator: IPoly,
    pub coefficients: Vec<Int>,
    /// Realized sign s in `(1-t^gamma) x_inf = s * x0 * prod(1-t^{B_q})`.
    pub orientation_sign: i64,
}

/// `P_Y(t) = (1 - t^gamma) / prod(1 - t^{B_q})`, with the exact
/// cross-multiplied comparison against the local characteristic
/// polynomials.
pub fn poincare_series(sm: &StructureMatrix, cp: &CharPolys, upto: usize) -> PoincareSeries {
    let gamma = sm.gamma.to_usize().expect("gamma fits usize");
    let b = sm.weight_vector();
    let numerator = IPoly::power_minus_one(gamma).neg();
    let denominator = {
        let mut acc = IPoly::one();
        for bq in &b {
            acc = acc.mul(&IPoly::power_minus_one(bq.to_usize().expect("B_q fits usize")).neg());
        }
        acc
    };
    let hilb = hilbert_coefficients(&b, upto);
    let coefficients: Vec<Int> = (0..=upto)
        .map(|k| {
            if k >= gamma {
                &hilb[k] - &hilb[k - gamma]
            } else {
                hilb[k].clone()
            }
        })
        .collect();
    let lhs = numerator.mul(&cp.x_inf);
    let rhs = cp.x0.mul(&denominator);
    let orientation_sign = if sm.n() % 2 == 0 { 1 } else { -1 };
    assert_eq!(
        lhs,
        rhs.mul_scalar(&Int::from(orientation_sign)),
        "series orientation law"
    );
    PoincareSeries { numerator, denominator, coefficients, orientation_sign }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramData {
    /// Euler pairings `chi(O(i), O(j)) = hilb(j - i)`.
    pub g: IMat,
    /// Stokes matrix of the dual collection, `J G^{-T} J`.
    pub s: IMat,
    /// `S + (-1)^(n-1) S^T`, invariant under the unreduced monodromies.
    pub x: IMat,
}

/// Core construction from the weight vector alone, so classical weight
/// systems can be checked without a structure matrix.
pub fn gram_and_stokes_from_weights(b: &[Int], n: usize) -> GramData {
    let gamma_int: Int = b.iter().cloned().sum();
    let gamma = gamma_int.to_usize().expect("gamma fits usize");
    let hilb = hilbert_coefficients(b, gamma.saturating_sub(1));
    let mut g = IMat::zero(gamma, gamma);
    for i in 0..gamma {
        for j in i..gamma {
            g.set(i, j, hilb[j - i].clone());
        }
    }
    let g_inv_t = g
        .inverse_unimodular()
        .expect("unit triangular")
        .transpose();
    let mut j_flip = IMat::zero(gamma, gamma);
    for i in 0..gamma {
        j_flip.set(i, gamma - 1 - i, Int::one());
    }
    let s = j_flip.mul(&g_inv_t).mul(&j_flip);
    // Upper Toeplitz algebra: the same matrix carries the coefficients
    // of prod(1 - t^{B_q}).
    let inverse_series = {
        let mut acc = IPoly::one();
        for bq in b {
            acc = acc.mul(&IPoly::power_minus_one(bq.to_usize().expect("B_q fits usize")).neg());
        }
        acc
    };
    for i in 0..gamma {
        for j in 0..gamma {
            let expect = if j >= i { inverse_series.coeff(j - i) } else { Int::zero() };
            debug_assert_eq!(*s.at(i, j), expect);
        }
    }
    let sign = if n % 2 == 1 { Int::one() } else { -Int::one() };
    let mut x = IMat::zero(gamma, gamma);
    let st = s.transpose();
    for i in 0..gamma {
        for j in 0..gamma {
            x.set(i, j, s.at(i, j) + st.at(i, j) * &sign);
        }
    }

    // Invariance of X: the cyclic generator preserves it on the nose;
    // the companion at infinity does so in the dual-collection basis,
    // reached by conjugating with J G.
    let cycle = companion(&IPoly::power_minus_one(gamma)).transpose();
    assert_eq!(cycle.transpose().mul(&x).mul(&cycle), x, "cycle invariance");
    let h_inf = companion(&weight_char_poly(b));
    let jg = j_flip.mul(&g);
    let t_f = jg
        .mul(&h_inf)
        .mul(&jg.inverse_unimodular().expect("unimodular"));
    assert_eq!(t_f.transpose().mul(&x).mul(&t_f), x, "infinity invariance");
    GramData { g, s, x }
}

pub fn gram_and_stokes(sm: &StructureMatrix) -> GramData {
    gram_and_stokes_from_weights(&sm.weight_vector(), sm.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example1, example2, quadratic};
    use crate::monodromy::char_polys;
    use crate::{binomial, int, rat};

    #[test]
    fn polar_data_of_the_examples() {
        let w2 = polar_and_flags(&example2());
        assert!(w2.fano);
        assert!(w2.reflexive);
        assert_eq!(w2.polar_vertices[0], vec![rat(3, 1), rat(-1, 1), rat(-1, 1)]);

        let w1 = polar_and_flags(&example1());
        assert!(!w1.fano);

        let wq = polar_and_flags(&quadratic());
        assert!(wq.fano);
        assert!(wq.reflexive);
        assert_eq!(wq.polar_vertices, vec![vec![rat(1, 1)], vec![rat(-1, 1)]]);
    }

    #[test]
    fn transpose_rows_and_weights() {
        let t2 = transpose_polynomial(&example2());
        assert_eq!(
            t2.rows,
            vec![
                vec![int(1), int(0), int(0), int(-1)],
                vec![int(0), int(1), int(0), int(-1)],
                vec![int(0), int(0), int(1), int(-1)],
            ]
        );
        assert_eq!(t2.weights, vec![int(1); 4]);
        assert_eq!(t2.degree, int(4));

        let tq = transpose_polynomial(&quadratic());
        assert_eq!(tq.rows, vec![vec![int(1), int(-1)]]);
        assert_eq!(tq.degree, int(2));

        let t1 = transpose_polynomial(&example1());
        for row in &t1.rows {
            let pair: Int = row.iter().zip(&t1.weights).map(|(r, w)| r * w).sum();
            assert!(pair.is_zero());
        }
    }

    #[test]
    fn hilbert_series_inverts_the_weight_product() {
        for sm in [example1(), example2(), quadratic()] {
            let b = sm.weight_vector();
            let gamma = sm.gamma.to_usize().unwrap();
            let upto = 3 * gamma;
            let hilb = hilbert_coefficients(&b, upto);
            let series = IPoly::new(hilb.clone());
            let mut prod = IPoly::one();
            for bq in &b {
                prod = prod.mul(&IPoly::power_minus_one(bq.to_usize().unwrap()).neg());
            }
            let full = series.mul(&prod);
            for k in 0..=upto {
                let expect = if k == 0 { Int::one() } else { Int::zero() };
                assert_eq!(full.coeff(k), expect);
            }
        }
    }

    #[test]
    fn hilbert_counts_match_direct_enumeration() {
        let b = [int(2), int(3), int(1)];
        let hilb = hilbert_coefficients(&b, 9);
        for (k, expect) in hilb.iter().enumerate() {
            let mut count = 0;
            for m0 in 0..=k / 2 {
                for m1 in 0..=k / 3 {
                    let rest = k as i64 - 2 * m0 as i64 - 3 * m1 as i64;
                    if rest >= 0 {
                        count += 1;
                    }
                }
            }
            assert_eq!(*expect, int(count));
        }
    }

    #[test]
    fn poincare_series_values() {
        let sm = example2();
        let cp = char_polys(&sm);
        let series = poincare_series(&sm, &cp, 6);
        assert_eq!(
            series.coefficients[..4],
            [int(1), int(4), int(10), int(20)]
        );
        assert_eq!(series.orientation_sign, -1);

        let smq = quadratic();
        let cpq = char_polys(&smq);
        let sq = poincare_series(&smq, &cpq, 5);
        assert_eq!(
            sq.coefficients,
            vec![int(1), int(2), int(2), int(2), int(2), int(2)]
        );

        let sm1 = example1();
        let cp1 = char_polys(&sm1);
        let s1 = poincare_series(&sm1, &cp1, 12);
        assert_eq!(s1.orientation_sign, 1);
        assert_eq!(s1.coefficients[0], int(1));
    }

    #[test]
    fn projective_plane_gram_and_stokes() {
        let data = gram_and_stokes_from_weights(&[int(1), int(1), int(1)], 2);
        let expect_g = [[1, 3, 6], [0, 1, 3], [0, 0, 1]];
        let expect_s = [[1, -3, 3], [0, 1, -3], [0, 0, 1]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(*data.g.at(i, j), int(expect_g[i][j]));
                assert_eq!(*data.s.at(i, j), int(expect_s[i][j]));
            }
        }
    }

    #[test]
    fn projective_space_gram_binomials() {
        for n in 1..=4usize {
            let b = vec![int(1); n + 1];
            let data = gram_and_stokes_from_weights(&b, n);
            let gamma = n + 1;
            for i in 0..gamma {
                for j in i..gamma {
                    assert_eq!(
                        *data.g.at(i, j),
                        binomial((n + j - i) as u64, n as u64)
                    );
                }
                if i + 1 < gamma {
                    assert_eq!(data.s.at(i, i + 1).clone().abs(), int(n as i64 + 1));
                }
            }
        }
    }

    #[test]
    fn stokes_of_the_examples() {
        for sm in [example1(), example2(), quadratic()] {
            let data = gram_and_stokes(&sm);
            let gamma = sm.gamma.to_usize().unwrap();
            for i in 0..gamma {
                assert!(data.g.at(i, i).is_one());
                assert!(data.s.at(i, i).is_one());
                for j in 0..i {
                    assert!(data.g.at(i, j).is_zero());
                    assert!(data.s.at(i, j).is_zero());
                }
            }
            assert!(data.g.det().is_one());
            assert!(data.s.det().is_one());
        }
    }
}
