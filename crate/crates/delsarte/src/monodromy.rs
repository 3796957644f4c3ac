//! Characteristic polynomials of the local monodromies, Levelt companion
//! matrices, the global generator list, the unreduced companion pair, the
//! invariant bilinear form with its exact signature, and Hodge numbers
//! read off the residue count p(k).

use crate::lattice::StructureMatrix;
use crate::matrix::{IMat, Mat};
use crate::mellin::pk_fractional;
use crate::poly::{cyclotomic, divisors, gcd_over_q, IPoly};
use crate::{Error, Int, Rat, Result};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// `prod_q (t^{B_q} - 1)`, the unreduced characteristic polynomial at
/// infinity.
pub fn weight_char_poly(b: &[Int]) -> IPoly {
    let mut acc = IPoly::one();
    for bq in b {
        acc = acc.mul(&IPoly::power_minus_one(bq.to_usize().expect("B_q fits usize")));
    }
    acc
}

/// Common factor via the divisor lattice: the product of Phi_d over
/// divisors d of gamma dividing some B_q.
pub fn phi_cyclotomic(sm: &StructureMatrix) -> IPoly {
    let gamma = sm.gamma.to_u64().expect("gamma fits u64");
    let b = sm.weight_vector();
    let mut acc = IPoly::one();
    for d in divisors(gamma) {
        let di = Int::from(d);
        if b.iter().any(|bq| bq.is_multiple_of(&di)) {
            acc = acc.mul(&cyclotomic(d));
        }
    }
    acc
}

/// The same factor as a subresultant-style gcd over Q, normalized monic.
pub fn phi_euclid(sm: &StructureMatrix) -> IPoly {
    let gamma = sm.gamma.to_u64().expect("gamma fits u64");
    gcd_over_q(
        &weight_char_poly(&sm.weight_vector()),
        &IPoly::power_minus_one(gamma as usize),
    )
}

/// The same factor by inclusion-exclusion over nonempty index subsets,
/// with exponents read from iterated h.c.f. values gcd(gamma, B_S).
pub fn phi_inclusion_exclusion(sm: &StructureMatrix) -> IPoly {
    let b = sm.weight_vector();
    let mut num = IPoly::one();
    let mut den = IPoly::one();
    for mask in 1u32..(1 << b.len()) {
        let mut g = sm.gamma.clone();
        for (q, bq) in b.iter().enumerate() {
            if mask >> q & 1 == 1 {
                g = g.gcd(bq);
            }
        }
        let factor = IPoly::power_minus_one(g.to_usize().expect("gcd fits usize"));
        if mask.count_ones() % 2 == 1 {
            num = num.mul(&factor);
        } else {
            den = den.mul(&factor);
        }
    }
    num.div_exact(&den)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPolys {
    pub x0: IPoly,
    pub x_inf: IPoly,
    pub phi: IPoly,
    pub gamma_bar: usize,
}

/// `phi = gcd(prod(t^{B_q}-1), t^gamma-1)`; the reduced local
/// characteristic polynomials are the cofactors.
pub fn char_polys(sm: &StructureMatrix) -> CharPolys {
    let gamma = sm.gamma.to_u64().expect("gamma fits u64");
    let phi = phi_cyclotomic(sm);
    debug_assert_eq!(phi, phi_euclid(sm));
    let x_inf = weight_char_poly(&sm.weight_vector()).div_exact(&phi);
    let x0 = IPoly::power_minus_one(gamma as usize).div_exact(&phi);
    let gamma_bar = x0.degree().expect("x0 nonzero");
    assert_eq!(x_inf.degree(), Some(gamma_bar));
    let n = sm.n() as i64;
    let sign = if n % 2 == 0 { Int::one() } else { -Int::one() };
    assert_eq!(x_inf.coeff(0), sign, "constant term of x_inf");
    assert_eq!(x0.coeff(0), Int::one(), "constant term of x0");
    CharPolys { x0, x_inf, phi, gamma_bar }
}

/// Companion matrix of a monic integer polynomial: ones on the
/// subdiagonal, negated coefficients in the last column.
pub fn companion(p: &IPoly) -> IMat {
    let d = p.degree().expect("nonzero polynomial");
    assert!(d >= 1 && p.leading().map_or(false, |l| l.is_one()), "companion needs a monic polynomial");
    let mut m = IMat::zero(d, d);
    for i in 1..d {
        m.set(i, i - 1, Int::one());
    }
    for i in 0..d {
        m.set(i, d - 1, -p.coeff(i));
    }
    m
}

/// Levelt generators: `h_inf = companion(x_inf)`, `h_0^{-1} =
/// companion(x0)`, `h_1 = (h_0 h_inf)^{-1}`.
pub fn companion_pair(cp: &CharPolys) -> (IMat, IMat, IMat) {
    let h_inf = companion(&cp.x_inf);
    let h0_inv = companion(&cp.x0);
    let h_0 = h0_inv.inverse_unimodular().expect("x0 has unit constant term");
    let h_1 = h_inf
        .inverse_unimodular()
        .expect("x_inf has unit constant term")
        .mul(&h0_inv);
    (h_inf, h_0, h_1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyData {
    pub h_inf: IMat,
    pub h_0: IMat,
    pub h_1: IMat,
    /// `M_{w^i} = h_inf^{-i} h_1 h_inf^i` for i = 0..gamma-1.
    pub generators: Vec<IMat>,
    /// `M_inf = h_inf^gamma`.
    pub m_inf: IMat,
}

/// Builds the generator list and checks the defining relations:
/// `h_0^gamma = id` and `M_{w^{gamma-1}} ... M_{w^0} M_inf = id`.
pub fn global_generators(sm: &StructureMatrix, cp: &CharPolys) -> MonodromyData {
    let gamma = sm.gamma.to_u64().expect("gamma fits u64");
    let (h_inf, h_0, h_1) = companion_pair(cp);
    assert!(h_0.pow(gamma).is_identity(), "h_0 must have order dividing gamma");
    let h_inv = h_inf.inverse_unimodular().expect("unimodular");
    let mut generators = Vec::with_capacity(gamma as usize);
    let mut g = h_1.clone();
    for _ in 0..gamma {
        generators.push(g.clone());
        g = h_inv.mul(&g).mul(&h_inf);
    }
    let m_inf = h_inf.pow(gamma);
    let mut product = IMat::identity(cp.gamma_bar);
    for gen in generators.iter().rev() {
        product = product.mul(gen);
    }
    assert!(product.mul(&m_inf).is_identity(), "loop product relation");
    MonodromyData { h_inf, h_0, h_1, generators, m_inf }
}

/// The unreduced gamma-dimensional pair: the companion of
/// `prod(t^{B_q}-1)` and the inverse cyclic shift.
pub fn reducible_pair(sm: &StructureMatrix) -> (IMat, IMat) {
    let gamma = sm.gamma.to_u64().expect("gamma fits u64");
    let big_inf = companion(&weight_char_poly(&sm.weight_vector()));
    let big_0 = companion(&IPoly::power_minus_one(gamma as usize)).transpose();
    debug_assert!(big_0.pow(gamma).is_identity());
    debug_assert!(big_0.det().abs().is_one());
    (big_inf, big_0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    Symmetric,
    Antisymmetric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantForm {
    /// Primitive integer matrix spanning the invariant solution line.
    pub matrix: IMat,
    pub kind: FormKind,
    /// Inertia (plus, minus) when the form is symmetric.
    pub signature: Option<(usize, usize)>,
    pub rank: usize,
}

fn columns_to_mat(cols: &[Vec<Rat>]) -> Mat {
    let d = cols.first().map_or(0, Vec::len);
    let mut m = Mat::zero(d, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

fn mat_columns(m: &Mat) -> Vec<Vec<Rat>> {
    (0..m.cols).map(|j| m.col(j)).collect()
}

/// Solves `h^T X h = X` for both Levelt generators at once.  Columns of
/// an h_inf-invariant X form the orbit `x_{j+1} = M x_j` with
/// `M = h_inf^{-T}`; the wrap-around holds automatically because char(M)
/// equals x_inf.  Imposing the h_0 relation pins the orbit start to a
/// line; anything else is an InvariantDimension error.
pub fn invariant_form(sm: &StructureMatrix, cp: &CharPolys) -> Result<InvariantForm> {
    let d = cp.gamma_bar;
    let (h_inf, _, _) = companion_pair(cp);
    let m = h_inf
        .inverse_unimodular()
        .expect("unimodular")
        .transpose()
        .to_mat();
    let c0 = companion(&cp.x0);
    let n_mat = c0
        .inverse_unimodular()
        .expect("unimodular")
        .transpose()
        .to_mat();
    let restriction = m.sub(&n_mat);

    // Candidate orbit starts; narrowed by R M^j x = 0 for j = 0..d-2.
    let mut basis = Mat::identity(d);
    let mut image = basis.clone();
    for j in 0..d.saturating_sub(1) {
        if j > 0 {
            image = m.mul(&image);
        }
        let violated = restriction.mul(&image);
        let combos = violated.nullspace();
        if combos.is_empty() {
            return Err(Error::InvariantDimension(0));
        }
        let recombine = columns_to_mat(&combos);
        basis = basis.mul(&recombine);
        image = image.mul(&recombine);
    }

    // Wrap condition for h_0: N M^{d-1} x + sum_k b_k M^k x = 0.
    let mut wraps = Vec::new();
    for x0 in mat_columns(&basis) {
        let mut orbit = vec![x0];
        for _ in 1..d {
            orbit.push(m.matvec(orbit.last().expect("nonempty")));
        }
        let mut v = n_mat.matvec(&orbit[d - 1]);
        for (k, y) in orbit.iter().enumerate() {
            let bk = Rat::from(cp.x0.coeff(k));
            for (vi, yi) in v.iter_mut().zip(y) {
                *vi += &bk * yi;
            }
        }
        wraps.push(v);
    }
    let final_combos = columns_to_mat(&wraps).nullspace();
    if final_combos.len() != 1 {
        return Err(Error::InvariantDimension(final_combos.len()));
    }
    let x0 = basis.matvec(&final_combos[0]);

    let mut orbit = vec![x0];
    for _ in 1..d {
        orbit.push(m.matvec(orbit.last().expect("nonempty")));
    }
    let x = columns_to_mat(&orbit);
    debug_assert_eq!(h_inf.to_mat().transpose().mul(&x).mul(&h_inf.to_mat()), x);

    // Clear denominators, strip content, make the first nonzero entry
    // positive.
    let mut scale = Int::one();
    for e in x.entries() {
        scale = scale.lcm(e.denom());
    }
    let mut ints: Vec<Int> = x.entries().iter().map(|e| (e * Rat::from(scale.clone())).to_integer()).collect();
    let mut content = Int::zero();
    for v in &ints {
        content = content.gcd(v);
    }
    if !content.is_zero() {
        for v in &mut ints {
            *v /= &content;
        }
    }
    if let Some(first) = ints.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            for v in &mut ints {
                *v = -v.clone();
            }
        }
    }
    let mut matrix = IMat::zero(d, d);
    for i in 0..d {
        for j in 0..d {
            matrix.set(i, j, ints[i * d + j].clone());
        }
    }

    let rat_x = matrix.to_mat();
    let kind = if rat_x.is_symmetric() {
        FormKind::Symmetric
    } else if rat_x.is_antisymmetric() {
        FormKind::Antisymmetric
    } else {
        unreachable!("a one-dimensional invariant line is transpose-stable");
    };
    let rank = rat_x.rank();
    assert_eq!(rank, d, "the invariant form must be nondegenerate");
    let signature = match kind {
        FormKind::Symmetric => {
            let (plus, minus, zero) = rat_x.signature();
            assert_eq!(zero, 0);
            let gap = plus.abs_diff(minus) as i64;
            assert_eq!(gap, hodge_alternating_sum(sm).abs(), "signature gap vs Hodge data");
            Some((plus, minus))
        }
        FormKind::Antisymmetric => None,
    };
    Ok(InvariantForm { matrix, kind, signature, rank })
}

/// Histogram of `n - p(k)` over the torsion-free classes; needs no gcd
/// hypothesis.
fn pk_histogram(sm: &StructureMatrix) -> BTreeMap<usize, usize> {
    let gamma = sm.gamma.to_u64().expect("gamma fits u64");
    let n = sm.n() as i64;
    let mut hist = BTreeMap::new();
    for k in 1..gamma {
        if let Ok(p) = pk_fractional(sm, k) {
            *hist.entry((n - p) as usize).or_insert(0) += 1;
        }
    }
    hist
}

fn hodge_alternating_sum(sm: &StructureMatrix) -> i64 {
    pk_histogram(sm)
        .iter()
        .map(|(&ell, &count)| if ell % 2 == 0 { count as i64 } else { -(count as i64) })
        .sum()
}

/// `{ell -> h^{ell, n+1-ell}}` from p(k), cross-checked against the
/// weight-(n+1) part of the graded ring classification.
pub fn hodge_numbers(sm: &StructureMatrix) -> Result<BTreeMap<usize, usize>> {
    let hist = pk_histogram(sm);
    let basis = crate::jacobi::ring_basis(sm)?;
    let table = crate::jacobi::hodge_weight_classification(sm, &basis);
    let n = sm.n();
    let mut pure = BTreeMap::new();
    for (&(p, w), &dim) in &table.dims {
        if w == n + 1 {
            *pure.entry(n - p).or_insert(0) += dim;
        }
    }
    assert_eq!(hist, pure, "p(k) histogram vs graded classification");
    let total: usize = hist.values().sum();
    assert_eq!(total, char_polys(sm).gamma_bar);
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example1, example2, quadratic};
    use crate::int;
    use crate::lattice::{build_structure, ExponentData};
    use crate::poly::RPoly;

    fn ipoly(coeffs: &[i64]) -> IPoly {
        IPoly::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    fn gcd2_fixture() -> StructureMatrix {
        build_structure(ExponentData::from_i64(&[&[4, 0], &[0, 2]], &[1, 1])).unwrap()
    }

    fn mixed_fixture() -> StructureMatrix {
        build_structure(ExponentData::from_i64(&[&[3, 0], &[0, 2]], &[1, 1])).unwrap()
    }

    #[test]
    fn characteristic_polynomials_of_the_examples() {
        let cp = char_polys(&example1());
        assert_eq!(cp.x0, ipoly(&[1, -1, 0, 1, 0, -1, 1]));
        assert_eq!(cp.x_inf, ipoly(&[1, -1, 0, 0, 0, -1, 1]));
        assert_eq!(cp.phi.degree(), Some(6));
        assert_eq!(cp.gamma_bar, 6);

        let cp2 = char_polys(&example2());
        assert_eq!(cp2.x0, ipoly(&[1, 1, 1, 1]));
        assert_eq!(cp2.x_inf, ipoly(&[-1, 3, -3, 1]));
        assert_eq!(cp2.phi, ipoly(&[-1, 1]));

        let cpq = char_polys(&quadratic());
        assert_eq!(cpq.x0, ipoly(&[1, 1]));
        assert_eq!(cpq.x_inf, ipoly(&[-1, 1]));
        assert_eq!(cpq.gamma_bar, 1);

        let cpg = char_polys(&gcd2_fixture());
        assert_eq!(cpg.x0, ipoly(&[1, 0, 0, 0, 1]));
        assert_eq!(cpg.x_inf, ipoly(&[1, 0, -2, 0, 1]));

        let cpm = char_polys(&mixed_fixture());
        assert_eq!(cpm.x0, ipoly(&[1, -1, 1]));
        assert_eq!(cpm.x_inf, ipoly(&[1, -2, 1]));
    }

    #[test]
    fn phi_routes_agree() {
        for sm in [example1(), example2(), quadratic(), gcd2_fixture(), mixed_fixture()] {
            let a = phi_cyclotomic(&sm);
            let b = phi_euclid(&sm);
            let c = phi_inclusion_exclusion(&sm);
            assert_eq!(a, b);
            assert_eq!(a, c);
        }
    }

    #[test]
    fn unit_root_multiplicity_at_infinity() {
        // (t-1)^n divides x_inf exactly.
        for sm in [example1(), example2(), quadratic(), gcd2_fixture(), mixed_fixture()] {
            let cp = char_polys(&sm);
            let t_minus_one = ipoly(&[-1, 1]);
            let mut rem = cp.x_inf.clone();
            let mut mult = 0;
            while rem.eval(&Int::one()).is_zero() {
                rem = rem.div_exact(&t_minus_one);
                mult += 1;
            }
            assert_eq!(mult, sm.n());
        }
    }

    #[test]
    fn gamma_bar_counts_torsion_free_classes() {
        for sm in [example1(), example2(), quadratic(), gcd2_fixture(), mixed_fixture()] {
            let cp = char_polys(&sm);
            assert_eq!(cp.gamma_bar, crate::jacobi::z_gamma_zero(&sm).len());
        }
    }

    #[test]
    fn companion_structure_and_char_polys() {
        let cp = char_polys(&example2());
        let (h_inf, h_0, h_1) = companion_pair(&cp);
        assert_eq!(h_inf.col(2), vec![int(1), int(-3), int(3)]);
        let poly_of = |m: &IMat| RPoly::new(m.to_mat().char_poly());
        assert_eq!(poly_of(&h_inf), cp.x_inf.to_rpoly());
        assert_eq!(poly_of(&h_0), cp.x0.to_rpoly());
        assert_eq!(h_1.to_mat().sub(&Mat::identity(3)).rank(), 1);
        assert!(h_1.mul(&h_1).is_identity());

        let cp1 = char_polys(&example1());
        let (h_inf1, h_01, h_11) = companion_pair(&cp1);
        assert_eq!(poly_of(&h_inf1), cp1.x_inf.to_rpoly());
        assert_eq!(poly_of(&h_01), cp1.x0.to_rpoly());
        assert_eq!(h_11.to_mat().sub(&Mat::identity(6)).rank(), 1);
    }

    #[test]
    fn generator_relations() {
        for sm in [example1(), example2(), quadratic(), mixed_fixture()] {
            let cp = char_polys(&sm);
            let data = global_generators(&sm, &cp);
            let gamma = sm.gamma.to_u64().unwrap();
            assert_eq!(data.generators.len(), gamma as usize);
            assert!(data.h_0.pow(gamma).is_identity());
            let id = Mat::identity(cp.gamma_bar);
            for gen in &data.generators {
                assert_eq!(gen.to_mat().sub(&id).rank(), 1);
            }
            if sm.n() % 2 == 1 {
                assert!(data.h_1.mul(&data.h_1).is_identity());
            }
        }
    }

    #[test]
    fn reducible_pair_shape() {
        let sm = example2();
        let (big_inf, big_0) = reducible_pair(&sm);
        assert_eq!(
            big_inf.col(3),
            vec![int(-1), int(4), int(-6), int(4)]
        );
        assert_eq!(*big_inf.at(0, 3), int(-1));
        let char_inf = RPoly::new(big_inf.to_mat().char_poly());
        assert_eq!(char_inf, weight_char_poly(&sm.weight_vector()).to_rpoly());
        assert!(big_0.pow(4).is_identity());
        assert_eq!(big_0.det().abs(), Int::one());
        let char_0 = RPoly::new(big_0.to_mat().char_poly());
        assert_eq!(char_0, IPoly::power_minus_one(4).to_rpoly());
    }

    #[test]
    fn weight_factor_coefficients() {
        assert_eq!(weight_char_poly(&[int(1), int(1), int(1)]), ipoly(&[-1, 3, -3, 1]));
        assert_eq!(
            weight_char_poly(&vec![int(1); 4]),
            ipoly(&[1, -4, 6, -4, 1])
        );
    }

    #[test]
    fn invariant_form_of_the_examples() {
        let sm1 = example1();
        let cp1 = char_polys(&sm1);
        let form1 = invariant_form(&sm1, &cp1).unwrap();
        assert_eq!(form1.rank, 6);
        if let Some((plus, minus)) = form1.signature {
            assert_eq!(plus, minus);
        }

        let sm2 = example2();
        let cp2 = char_polys(&sm2);
        let form2 = invariant_form(&sm2, &cp2).unwrap();
        assert_eq!(form2.rank, 3);
        assert_eq!(form2.kind, FormKind::Symmetric);
        let (plus, minus) = form2.signature.unwrap();
        assert_eq!(plus.abs_diff(minus), 1);

        let smq = quadratic();
        let cpq = char_polys(&smq);
        let formq = invariant_form(&smq, &cpq).unwrap();
        assert_eq!(formq.rank, 1);
        assert_eq!(formq.kind, FormKind::Symmetric);
    }

    #[test]
    fn invariance_of_the_form() {
        for sm in [example1(), example2(), quadratic(), mixed_fixture()] {
            let cp = char_polys(&sm);
            let (h_inf, h_0, _) = companion_pair(&cp);
            let form = invariant_form(&sm, &cp).unwrap();
            let x = form.matrix.to_mat();
            for h in [h_inf.to_mat(), h_0.to_mat()] {
                assert_eq!(h.transpose().mul(&x).mul(&h), x);
            }
        }
    }

    #[test]
    fn hodge_numbers_of_the_examples() {
        let h1 = hodge_numbers(&example1()).unwrap();
        assert_eq!(h1, BTreeMap::from([(1, 3), (2, 3)]));
        let h2 = hodge_numbers(&example2()).unwrap();
        assert_eq!(h2, BTreeMap::from([(1, 1), (2, 1), (3, 1)]));
        let hq = hodge_numbers(&quadratic()).unwrap();
        assert_eq!(hq, BTreeMap::from([(1, 1)]));
        for (sm, h) in [(example1(), h1), (example2(), h2), (quadratic(), hq)] {
            let n = sm.n();
            for (&ell, &count) in &h {
                assert_eq!(h.get(&(n + 1 - ell)), Some(&count));
            }
        }
        assert!(matches!(
            hodge_numbers(&gcd2_fixture()),
            Err(Error::GcdViolation(_))
        ));
    }
}
