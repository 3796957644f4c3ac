//! Gamma-factor skeletons of the period Mellin transforms, their positive
//! pole progressions, pole order at the origin, and the residue count
//! `p(k)` computed along two independent routes.
//!
//! The periodic prefactor of a transform depends on the choice of cycle and
//! is not computable from the input datum; it is carried as an opaque class
//! and never evaluated.

use crate::jacobi::RingBasis;
use crate::lattice::StructureMatrix;
use crate::{frac, Error, Int, Rat, Result};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Opaque marker for the cycle-dependent periodic prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefactorClass {
    Undetermined,
}

/// Product of Gamma factors `Gamma(c_q + d_q z)`, one per form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaProduct {
    /// `(c_q, d_q)` for `q = 1..n+2`; the last factor is exactly `z`.
    pub factors: Vec<(Rat, Rat)>,
    pub prefactor_class: PrefactorClass,
    /// True only for the unit class, where every argument vanishes at z=0.
    pub degenerate: bool,
}

/// The n+2 Gamma-arguments `L_q(I, z, ell)` of the transform of `u^ell x^I`.
pub fn mellin_transform(sm: &StructureMatrix, ell: &Int, i: &[Int]) -> Result<GammaProduct> {
    if !sm.in_s_delta(ell, i) {
        return Err(Error::NotInRing(format!("({ell}, {i:?})")));
    }
    let n = sm.n();
    let factors: Vec<(Rat, Rat)> = sm
        .forms
        .iter()
        .map(|f| (f.grade(i, ell), f.z_coeff()))
        .collect();
    debug_assert_eq!(factors[n + 1], (Rat::zero(), Rat::one()));
    let zsum: Rat = factors[..=n].iter().map(|(_, d)| d.clone()).sum();
    debug_assert_eq!(zsum, -Rat::one());
    let degenerate = factors[..=n].iter().all(|(c, _)| c.is_zero());
    Ok(GammaProduct { factors, prefactor_class: PrefactorClass::Undetermined, degenerate })
}

/// Poles of positive direction up to `bound`, as a sorted multiset:
/// the union over decreasing factors of `(c_q + m) / (-d_q)`, `m >= 0`.
pub fn positive_poles(gp: &GammaProduct, bound: &Rat) -> Vec<Rat> {
    let mut out = Vec::new();
    for (c, d) in &gp.factors {
        if !d.is_negative() {
            continue;
        }
        let step = -(Rat::one() / d);
        let mut pole = c * &step;
        while pole <= *bound {
            out.push(pole.clone());
            pole += &step;
        }
    }
    out.sort();
    out
}

/// Order of the pole at z=0: the number of vanishing arguments among the
/// first n+1 factors.  Equals the weight defect of the monomial.
pub fn pole_order_at_zero(sm: &StructureMatrix, ell: &Int, i: &[Int]) -> usize {
    assert!(sm.in_s_delta(ell, i), "point must lie in the semigroup cone");
    sm.grades(ell, i).iter().filter(|t| t.is_zero()).count()
}

/// Per-representative smallest positive-direction pole `beta`, and the
/// maximal pole-multiplicity table `r(beta)` over the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaTable {
    /// `betas[k-1]` belongs to the class-k representative.
    pub betas: Vec<Rat>,
    /// `r` at each realized `beta`, keyed by value.
    pub r_of_beta: BTreeMap<Rat, usize>,
}

/// `beta(rep) = min_q (gamma/B_q) L_q`; `r(beta)` counts, maximized over
/// reps, the factors whose pole progression meets `beta` modulo 1.
pub fn beta_and_rbeta(sm: &StructureMatrix, basis: &RingBasis) -> BetaTable {
    let b = sm.weight_vector();
    let scaled: Vec<Vec<Rat>> = basis
        .reps
        .iter()
        .map(|rep| {
            sm.grades(&rep.ell, &rep.i)
                .into_iter()
                .zip(&b)
                .map(|(t, bq)| t * Rat::new(sm.gamma.clone(), bq.clone()))
                .collect()
        })
        .collect();
    let betas: Vec<Rat> = scaled
        .iter()
        .map(|vals| vals.iter().min().expect("n+1 factors").clone())
        .collect();

    // Progression of factor q modulo 1 repeats with period B_q in m.
    let meets = |base: &Rat, bq: &Int, beta: &Rat| -> bool {
        let step = Rat::new(sm.gamma.clone(), bq.clone());
        let mut m = Int::zero();
        while &m < bq {
            let val = base + &step * Rat::from(m.clone());
            if frac(&(val - beta)).is_zero() {
                return true;
            }
            m += 1;
        }
        false
    };
    let mut r_of_beta = BTreeMap::new();
    for beta in &betas {
        let r = scaled
            .iter()
            .map(|vals| {
                vals.iter()
                    .zip(&b)
                    .filter(|(base, bq)| meets(base, bq, beta))
                    .count()
            })
            .max()
            .unwrap_or(0);
        r_of_beta.insert(beta.clone(), r);
    }
    // Integer shifts of beta see the same progressions modulo 1.
    for (beta, r) in &r_of_beta {
        for m in 1..=2 {
            let shifted = beta - Rat::from(Int::from(m));
            let r_shifted = scaled
                .iter()
                .map(|vals| {
                    vals.iter()
                        .zip(&b)
                        .filter(|(base, bq)| meets(base, bq, &shifted))
                        .count()
                })
                .max()
                .unwrap_or(0);
            assert_eq!(*r, r_shifted, "r must be invariant under integer shifts");
        }
    }
    BetaTable { betas, r_of_beta }
}

/// `p(k)` by signed pole/zero counting over the closed window
/// `[1/gamma, (k+1)/gamma]`: order +1 at `z = (1+m)/gamma`, order -1 at
/// `z = 1/gamma + m/B_q` for each of the n+1 factors.
pub fn pk_residue_window(sm: &StructureMatrix, k: u64) -> Result<i64> {
    check_unit_class(sm, k)?;
    let g = sm.gamma.clone();
    let right = Rat::new(Int::from(k + 1), g.clone());
    let left = Rat::new(Int::one(), g.clone());
    let mut order = 0i64;
    let mut m = Int::zero();
    loop {
        let z = Rat::new(Int::one() + &m, g.clone());
        if z > right {
            break;
        }
        if z >= left {
            order += 1;
        }
        m += 1;
    }
    for bq in sm.weight_vector() {
        let mut m = Int::zero();
        loop {
            let z = &left + Rat::new(m.clone(), bq.clone());
            if z > right {
                break;
            }
            order -= 1;
            m += 1;
        }
    }
    Ok(-order)
}

/// `p(k) = n - sum_q frac(k B_q / gamma)`, the closed form.
pub fn pk_fractional(sm: &StructureMatrix, k: u64) -> Result<i64> {
    check_unit_class(sm, k)?;
    let total: Rat = sm
        .weight_vector()
        .iter()
        .map(|bq| frac(&Rat::new(bq * Int::from(k), sm.gamma.clone())))
        .sum();
    let n = Rat::from(Int::from(sm.n() as i64));
    let p = n - total;
    assert!(p.is_integer());
    Ok(p.to_integer().to_i64().expect("p(k) fits i64"))
}

/// Both routes, asserted equal.
pub fn pk_residue(sm: &StructureMatrix, k: u64) -> Result<i64> {
    let a = pk_residue_window(sm, k)?;
    let b = pk_fractional(sm, k)?;
    assert_eq!(a, b, "window count and fractional form must agree");
    Ok(a)
}

fn check_unit_class(sm: &StructureMatrix, k: u64) -> Result<()> {
    let kk = Int::from(k);
    let in_zero = !kk.is_zero()
        && kk < sm.gamma
        && sm
            .weight_vector()
            .iter()
            .all(|bq| !(&kk * bq).is_multiple_of(&sm.gamma));
    if in_zero {
        Ok(())
    } else {
        Err(Error::NotInZGammaZero(k.to_string()))
    }
}
