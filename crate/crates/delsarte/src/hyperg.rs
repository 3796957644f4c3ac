//! Pochhammer theta-operators annihilating the period integrals, their
//! singular loci, the exponent multisets of the Kummer pullback, the
//! irreducible reduced operator, Frobenius series solutions, and the
//! quantum differential operator of the mirror.

use crate::lattice::StructureMatrix;
use crate::poly::{pochhammer, RPoly};
use crate::{frac, Error, Int, Rat, Result};
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// `P(theta) - s^gamma Q(theta)` acting through `theta = s d/ds`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaOperator {
    pub gamma: u64,
    /// Indicial polynomial at s=0; roots are exactly 0..gamma-1.
    pub p: RPoly,
    pub q: RPoly,
}

/// `P = (-theta)(-theta+1)...(-theta+gamma-1)`,
/// `Q = (-1)^gamma prod_q (grade_q + (B_q/gamma) theta)_(B_q)`.
pub fn operators(sm: &StructureMatrix, ell: &Int, i: &[Int]) -> Result<ThetaOperator> {
    if !sm.in_s_delta(ell, i) {
        return Err(Error::NotInRing(format!("({ell}, {i:?})")));
    }
    let gamma = sm.gamma.to_u64().expect("gamma fits u64");
    let p = pochhammer(&RPoly::linear(Rat::zero(), -Rat::one()), gamma);
    let sign = if gamma % 2 == 0 { Rat::one() } else { -Rat::one() };
    let mut q = RPoly::constant(sign);
    for (grade, bq) in sm.grades(ell, i).into_iter().zip(sm.weight_vector()) {
        let slope = Rat::new(bq.clone(), sm.gamma.clone());
        let base = RPoly::linear(grade, slope);
        q = q.mul(&pochhammer(&base, bq.to_u64().expect("B_q fits u64")));
    }
    debug_assert_eq!(p.degree(), Some(gamma as usize));
    debug_assert_eq!(q.degree(), Some(gamma as usize));
    Ok(ThetaOperator { gamma, p, q })
}

/// Regular singularities away from 0 and infinity: `gamma` rays of equal
/// angle at a common modulus, given by `|s|^gamma = radius_power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularLoci {
    pub gamma: u64,
    /// Value of `|s|^gamma` on the singular circle.
    pub radius_power: Rat,
    /// Arguments of the singular points in turns, `j/gamma`.
    pub turns: Vec<Rat>,
}

/// Solves `(prod_q B_q^{B_q}) (s/gamma)^gamma = 1` for the modulus.
pub fn singular_loci(sm: &StructureMatrix) -> SingularLoci {
    let gamma = sm.gamma.to_u64().expect("gamma fits u64");
    let mut den = Int::one();
    for bq in sm.weight_vector() {
        den *= bq.pow(bq.to_u32().expect("B_q fits u32"));
    }
    let num = sm.gamma.pow(gamma as u32);
    let turns = (0..gamma)
        .map(|j| Rat::new(Int::from(j), sm.gamma.clone()))
        .collect();
    SingularLoci { gamma, radius_power: Rat::new(num, den), turns }
}

/// Local exponent data of the degree-gamma Kummer pullback in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMultisets {
    pub c_plus: Vec<Rat>,
    pub c_minus: Vec<Rat>,
    /// Min-multiplicity intersection of the other two.
    pub c_zero: Vec<Rat>,
    /// Order of the reduced operator, `|c_plus| - |c_zero|`.
    pub gamma_bar: usize,
}

fn multiset_counts(v: &[Rat]) -> BTreeMap<Rat, usize> {
    let mut m = BTreeMap::new();
    for x in v {
        *m.entry(x.clone()).or_insert(0) += 1;
    }
    m
}

fn multiset_intersect(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let cb = multiset_counts(b);
    let mut out = Vec::new();
    for (x, ca) in multiset_counts(a) {
        let k = ca.min(cb.get(&x).copied().unwrap_or(0));
        out.extend(std::iter::repeat(x).take(k));
    }
    out
}

fn multiset_difference(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let cb = multiset_counts(b);
    let mut out = Vec::new();
    for (x, ca) in multiset_counts(a) {
        let k = ca.saturating_sub(cb.get(&x).copied().unwrap_or(0));
        out.extend(std::iter::repeat(x).take(k));
    }
    out
}

/// `c_plus = {j/gamma}`; `c_minus` collects, per factor q, the fractional
/// parts of `(j + 1 + ell [q = n+1] + <v_q, I>/gamma) / B_q`.
pub fn exponent_multisets(sm: &StructureMatrix, ell: &Int, i: &[Int]) -> Result<ExponentMultisets> {
    if !sm.in_s_delta(ell, i) {
        return Err(Error::NotInRing(format!("({ell}, {i:?})")));
    }
    let n = sm.n();
    let gamma = sm.gamma.to_u64().expect("gamma fits u64");
    let c_plus: Vec<Rat> = (0..gamma)
        .map(|j| Rat::new(Int::from(j), sm.gamma.clone()))
        .collect();
    let mut c_minus = Vec::new();
    for (q, form) in sm.forms[..=n].iter().enumerate() {
        let pairing = Rat::new(form.pairing(i), sm.gamma.clone());
        let shift = if q == n { Rat::from(ell.clone()) } else { Rat::zero() };
        let bq = Rat::from(form.b.clone());
        let mut j = Rat::one();
        while j <= bq {
            c_minus.push(frac(&((&j + &shift + &pairing) / &bq)));
            j += Rat::one();
        }
    }
    c_minus.sort();
    let c_zero = multiset_intersect(&c_plus, &c_minus);
    let gamma_bar = c_plus.len() - c_zero.len();
    Ok(ExponentMultisets { c_plus, c_minus, c_zero, gamma_bar })
}

/// Exponents of the reduced irreducible operator
/// `prod(theta_t + a) - t prod(theta_t + b + 1)`, each list of length
/// gamma_bar, ascending.
pub fn reduced_operator(ms: &ExponentMultisets) -> (Vec<Rat>, Vec<Rat>) {
    let plus = multiset_difference(&ms.c_plus, &ms.c_zero);
    let minus = multiset_difference(&ms.c_minus, &ms.c_zero);
    debug_assert_eq!(plus.len(), ms.gamma_bar);
    debug_assert_eq!(minus.len(), ms.gamma_bar);
    (plus, minus)
}

/// Truncated solution `s^rho sum_m c_m s^m`, support in `gamma Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusSeries {
    pub rho: u64,
    /// `coeffs[m]` multiplies `s^(rho+m)`; length truncation+1.
    pub coeffs: Vec<Rat>,
    pub truncation: usize,
}

/// `c_0 = 1`, `c_(m+gamma) = Q(rho+m) c_m / P(rho+m+gamma)`.
pub fn frobenius_series(op: &ThetaOperator, rho: u64, truncation: usize) -> Result<FrobeniusSeries> {
    let at = |x: u64| Rat::from(Int::from(x));
    if !op.p.eval(&at(rho)).is_zero() {
        return Err(Error::IndicialMismatch);
    }
    assert!(truncation >= op.gamma as usize, "truncation below the order");
    let mut coeffs = vec![Rat::zero(); truncation + 1];
    coeffs[0] = Rat::one();
    let mut m = 0usize;
    while m + (op.gamma as usize) <= truncation {
        let denom = op.p.eval(&at(rho + m as u64 + op.gamma));
        if denom.is_zero() {
            return Err(Error::ResonanceFailure(m));
        }
        coeffs[m + op.gamma as usize] = op.q.eval(&at(rho + m as u64)) * &coeffs[m] / denom;
        m += op.gamma as usize;
    }
    Ok(FrobeniusSeries { rho, coeffs, truncation })
}

/// Coefficients of `(P(theta) - s^gamma Q(theta))` applied to the series,
/// at orders `rho..rho+truncation`.  All must vanish.
pub fn annihilation_residual(op: &ThetaOperator, series: &FrobeniusSeries) -> Vec<Rat> {
    let g = op.gamma as usize;
    (0..=series.truncation)
        .map(|m| {
            let here = Rat::from(Int::from(series.rho + m as u64));
            let mut r = op.p.eval(&here) * &series.coeffs[m];
            if m >= g {
                let back = Rat::from(Int::from(series.rho + (m - g) as u64));
                r -= op.q.eval(&back) * &series.coeffs[m - g];
            }
            r
        })
        .collect()
}

/// `u^gamma - prod_q (-B_q theta_u / gamma)_(B_q)` and its rescaling
/// `e^t - z^gamma prod_q (-B_q d/dt)_(B_q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumOde {
    pub gamma: u64,
    /// Theta-polynomial subtracted from `u^gamma`.
    pub theta_coeffs: Vec<Rat>,
    /// Polynomial in `d/dt` multiplying `z^gamma`.
    pub rescaled_coeffs: Vec<Rat>,
}

pub fn quantum_ode(sm: &StructureMatrix) -> QuantumOde {
    let gamma = sm.gamma.to_u64().expect("gamma fits u64");
    let mut theta = RPoly::one();
    let mut rescaled = RPoly::one();
    for bq in sm.weight_vector() {
        let m = bq.to_u64().expect("B_q fits u64");
        let scaled_slope = -Rat::new(bq.clone(), sm.gamma.clone());
        theta = theta.mul(&pochhammer(&RPoly::linear(Rat::zero(), scaled_slope), m));
        let raw_slope = -Rat::from(bq.clone());
        rescaled = rescaled.mul(&pochhammer(&RPoly::linear(Rat::zero(), raw_slope), m));
    }
    QuantumOde {
        gamma,
        theta_coeffs: theta.coeffs().to_vec(),
        rescaled_coeffs: rescaled.coeffs().to_vec(),
    }
}
