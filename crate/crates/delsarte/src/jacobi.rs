//! Monomial basis of the positive Jacobi quotient ring, the fractional
//! grading map `lambda_bar`, the reduced unit set of `Z/gamma`, the
//! mixed-Hodge classification of basis monomials, and the shifted
//! transition gradings.
//!
//! The descent recursion uses the two ring relations separately: the move
//! `(ell, I) -> (ell-1, I - alpha(i))` lowers the `i`-th grade by one and
//! fixes every other grade, and the move `(ell, I) -> (ell-1, I)` does the
//! same for grade `n+1`.  Iterating while any grade is `>= 1` lands on the
//! unique lattice point of the half-open fundamental parallelepiped in the
//! same grading class.

use crate::lattice::StructureMatrix;
use crate::matrix::Mat;
use crate::{frac, Error, Int, Rat, Result};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// A monomial `u^ell x^I` in parallelepiped normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialRep {
    pub ell: Int,
    pub i: Vec<Int>,
    /// Fractional grades `<L_q(I,0,ell)>`, `q = 1..n+1`.
    pub lambda_bar: Vec<Rat>,
    /// Hodge level; equals `ell` for a representative.
    pub hodge_level: Int,
    /// Count of vanishing grades (`r` in the weight filtration).
    pub weight_defect: usize,
}

/// Result of reduction to the basis: a representative or the unit class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalForm {
    Unit,
    Rep(MonomialRep),
}

/// Fractional grades of a cone point.
pub fn lambda_bar(sm: &StructureMatrix, ell: &Int, i: &[Int]) -> Result<Vec<Rat>> {
    if !sm.in_s_delta(ell, i) {
        return Err(Error::NotInRing(format!("({ell}, {i:?})")));
    }
    Ok(sm.grades(ell, i).iter().map(frac).collect())
}

fn require_gcd(sm: &StructureMatrix) -> Result<()> {
    if sm.gcd_condition() {
        Ok(())
    } else {
        let mut g = Int::zero();
        for b in sm.weight_vector() {
            g = g.gcd(&b);
        }
        Err(Error::GcdViolation(g.to_string()))
    }
}

fn rep_from_point(sm: &StructureMatrix, ell: Int, i: Vec<Int>) -> MonomialRep {
    let grades = sm.grades(&ell, &i);
    let one = Rat::one();
    debug_assert!(grades.iter().all(|t| !t.is_negative() && *t < one));
    let weight_defect = grades.iter().filter(|t| t.is_zero()).count();
    let lambda_bar = grades.iter().map(frac).collect();
    MonomialRep { hodge_level: ell.clone(), ell, i, lambda_bar, weight_defect }
}

/// Descend `u^k x^{k alpha(n+2)}` to its parallelepiped representative.
pub fn descend(sm: &StructureMatrix, k: u64) -> Result<MonomialRep> {
    require_gcd(sm)?;
    let g = sm.gamma.to_u64().expect("gamma fits u64");
    assert!(k >= 1 && k < g, "class index must lie in 1..gamma-1");
    let n = sm.n();
    let mut ell = Int::from(k);
    let mut i: Vec<Int> = sm.data.deform.iter().map(|c| c * Int::from(k)).collect();
    let one = Rat::one();
    loop {
        let grades = sm.grades(&ell, &i);
        let Some(q) = grades.iter().position(|t| *t >= one) else {
            break;
        };
        ell -= 1;
        if q < n {
            for c in 0..n {
                i[c] -= &sm.data.alpha[q][c];
            }
        }
        // q == n subtracts the zero exponent: only ell drops.
        if ell.is_negative() {
            return Err(Error::DescentStuck);
        }
    }
    if !sm.in_s_delta(&ell, &i) {
        return Err(Error::DescentStuck);
    }
    let rep = rep_from_point(sm, ell, i);
    // The class grading is preserved by both moves.
    let expect: Vec<Rat> = sm
        .weight_vector()
        .iter()
        .map(|b| frac(&Rat::new(b * Int::from(k), sm.gamma.clone())))
        .collect();
    debug_assert_eq!(rep.lambda_bar, expect);
    Ok(rep)
}

/// The monomial basis: representatives of the classes `k = 1..gamma-1`.
#[derive(Debug, Clone)]
pub struct RingBasis {
    /// `reps[k-1]` represents class `k`.
    pub reps: Vec<MonomialRep>,
    by_lambda: BTreeMap<Vec<Rat>, usize>,
}

impl RingBasis {
    pub fn find_by_lambda(&self, lam: &[Rat]) -> Option<&MonomialRep> {
        self.by_lambda.get(lam).map(|&idx| &self.reps[idx])
    }
}

/// Build the basis by descending every nonzero class.
pub fn ring_basis(sm: &StructureMatrix) -> Result<RingBasis> {
    require_gcd(sm)?;
    let g = sm.gamma.to_u64().expect("gamma fits u64");
    let mut reps = Vec::with_capacity((g - 1) as usize);
    let mut by_lambda = BTreeMap::new();
    for k in 1..g {
        let rep = descend(sm, k)?;
        let prev = by_lambda.insert(rep.lambda_bar.clone(), (k - 1) as usize);
        assert!(prev.is_none(), "grading map must be injective on the basis");
        reps.push(rep);
    }
    Ok(RingBasis { reps, by_lambda })
}

/// `{ k in [0; gamma-1] : gamma divides no k*B_q }`, ascending.
pub fn z_gamma_zero(sm: &StructureMatrix) -> Vec<Int> {
    let g = sm.gamma.to_u64().expect("gamma fits u64");
    let b = sm.weight_vector();
    (0..g)
        .map(Int::from)
        .filter(|k| b.iter().all(|bq| !(k * bq).is_multiple_of(&sm.gamma)))
        .collect()
}

/// Dimensions of the mixed-Hodge pieces: `(p, w) -> dim` over the basis,
/// with `p = n - ell` and `w = n + 1 + r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeTable {
    pub dims: BTreeMap<(usize, usize), usize>,
    /// Dimension of the pure weight-(n+1) part: representatives with `r = 0`.
    pub top_weight_dim: usize,
}

pub fn hodge_weight_classification(sm: &StructureMatrix, basis: &RingBasis) -> HodgeTable {
    let n = sm.n();
    let mut dims: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut top = 0usize;
    for rep in &basis.reps {
        let ell = rep.ell.to_usize().expect("level fits usize");
        assert!(ell <= n, "representative level exceeds n");
        let p = n - ell;
        let w = n + 1 + rep.weight_defect;
        *dims.entry((p, w)).or_insert(0) += 1;
        if rep.weight_defect == 0 {
            top += 1;
        }
    }
    assert_eq!(
        top,
        z_gamma_zero(sm).len(),
        "pure-weight dimension must equal the reduced unit count"
    );
    HodgeTable { dims, top_weight_dim: top }
}

/// Reduce an arbitrary cone point to the basis (or the unit class).
pub fn normal_form(
    sm: &StructureMatrix,
    basis: &RingBasis,
    ell: &Int,
    i: &[Int],
) -> Result<NormalForm> {
    require_gcd(sm)?;
    let lam = lambda_bar(sm, ell, i)?;
    if lam.iter().all(|t| t.is_zero()) {
        return Ok(NormalForm::Unit);
    }
    let rep = basis
        .find_by_lambda(&lam)
        .expect("every nonzero grading class has a basis representative");
    Ok(NormalForm::Rep(rep.clone()))
}

/// The shifted point and both gradings of the transition identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DsTransition {
    /// `pi(ell, alpha) = (ell, alpha - ell * alpha(n+2))`.
    pub pi: (Int, Vec<Int>),
    /// `Ltilde_q(ell, alpha) = (<v_q, alpha> + ell*gamma*delta_{q,n+1}) / B_q`.
    pub l_tilde: Vec<Rat>,
    /// `L^{sh}_q` of the shifted point: `-ell + <b_q, beta>` with `b_q = -v_q / B_q`.
    pub l_shift: Vec<Rat>,
}

/// Compute the transition data and check `l_shift[q] + l_tilde[q] = 0`.
pub fn ds_transition_and_gradings(
    sm: &StructureMatrix,
    ell: &Int,
    alpha: &[Int],
) -> Result<DsTransition> {
    if !sm.in_s_delta(ell, alpha) {
        return Err(Error::NotInCone(ell.to_string(), format!("{alpha:?}")));
    }
    let n = sm.n();
    let beta: Vec<Int> =
        (0..n).map(|c| &alpha[c] - ell * &sm.data.deform[c]).collect();
    let mut l_tilde = Vec::with_capacity(n + 1);
    let mut l_shift = Vec::with_capacity(n + 1);
    for q in 0..=n {
        let f = &sm.forms[q];
        let mut num: Int = f.v.iter().zip(alpha).map(|(a, b)| a * b).sum();
        if q == n {
            num += ell * &sm.gamma;
        }
        l_tilde.push(Rat::new(num, f.b.clone()));
        let dot: Int = f.v.iter().zip(&beta).map(|(a, b)| a * b).sum();
        let shifted = -Rat::from(ell.clone()) - Rat::new(dot, f.b.clone());
        l_shift.push(shifted);
    }
    for q in 0..=n {
        assert!(
            (&l_shift[q] + &l_tilde[q]).is_zero(),
            "transition identity failed at q = {q}"
        );
    }
    Ok(DsTransition { pi: (ell.clone(), beta), l_tilde, l_shift })
}

/// Solve `<b_q, alpha(j) - alpha(n+2)> = 1` for all `j != q` directly.
/// Independent route to the closed form `b_q = -v_q / B_q`.
pub fn shift_covector_direct(sm: &StructureMatrix, q: usize) -> Option<Vec<Rat>> {
    let n = sm.n();
    assert!(q <= n);
    // Vertices alpha(1..n+1) with alpha(n+1) = 0, all shifted by -alpha(n+2).
    let shifted: Vec<Vec<Rat>> = (0..=n)
        .map(|j| {
            (0..n)
                .map(|c| {
                    let a = if j < n { sm.data.alpha[j][c].clone() } else { Int::zero() };
                    Rat::from(a - &sm.data.deform[c])
                })
                .collect()
        })
        .collect();
    let rows: Vec<Vec<Rat>> =
        (0..=n).filter(|&j| j != q).map(|j| shifted[j].clone()).collect();
    let mat = Mat::from_rows(rows);
    let inv = mat.inverse()?;
    let ones = vec![Rat::one(); n];
    Some(inv.matvec(&ones))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example1, example2, quadratic};
    use crate::lattice::{build_structure, ExponentData};
    use crate::{int, rat};

    #[test]
    fn lambda_bar_of_marked_points() {
        let sm = example1();
        assert_eq!(
            lambda_bar(&sm, &int(1), &[int(2), int(1)]).unwrap(),
            vec![rat(5, 12), rat(3, 12), rat(4, 12)]
        );
        assert_eq!(
            lambda_bar(&sm, &int(0), &[int(0), int(0)]).unwrap(),
            vec![rat(0, 1); 3]
        );
        let sm2 = example2();
        assert_eq!(
            lambda_bar(&sm2, &int(1), &[int(1), int(1), int(1)]).unwrap(),
            vec![rat(1, 4); 4]
        );
        assert!(matches!(
            lambda_bar(&sm, &int(1), &[int(4), int(0)]),
            Err(Error::NotInRing(_))
        ));
    }

    #[test]
    fn descent_reaches_the_expected_representatives() {
        let sm2 = example2();
        let rep = descend(&sm2, 2).unwrap();
        assert_eq!(rep.ell, int(2));
        assert_eq!(rep.i, vec![int(2), int(2), int(2)]);

        let sm = example1();
        let rep1 = descend(&sm, 1).unwrap();
        assert_eq!(rep1.ell, int(1));
        assert_eq!(rep1.i, vec![int(2), int(1)]);
        assert_eq!(rep1.lambda_bar, vec![rat(5, 12), rat(3, 12), rat(4, 12)]);

        // k=3 exercises the grade-(n+1) move: lambda_bar has a vanishing slot.
        let rep3 = descend(&sm, 3).unwrap();
        assert_eq!(rep3.ell, int(1));
        assert_eq!(rep3.i, vec![int(3), int(0)]);
        assert_eq!(rep3.lambda_bar, vec![rat(3, 12), rat(9, 12), rat(0, 1)]);
        assert_eq!(rep3.weight_defect, 1);

        let repq = descend(&quadratic(), 1).unwrap();
        assert_eq!((repq.ell, repq.i), (int(1), vec![int(1)]));
    }

    #[test]
    fn basis_support_of_the_first_example() {
        let sm = example1();
        let basis = ring_basis(&sm).unwrap();
        assert_eq!(basis.reps.len(), 11);
        let support: Vec<(i64, Vec<i64>)> = {
            let mut s: Vec<(i64, Vec<i64>)> = basis
                .reps
                .iter()
                .map(|r| {
                    (
                        r.ell.to_i64().unwrap(),
                        r.i.iter().map(|c| c.to_i64().unwrap()).collect(),
                    )
                })
                .collect();
            s.sort();
            s
        };
        let expected: Vec<(i64, Vec<i64>)> = vec![
            (1, vec![1, 0]),
            (1, vec![1, 1]),
            (1, vec![2, 0]),
            (1, vec![2, 1]),
            (1, vec![2, 2]),
            (1, vec![3, 0]),
            (1, vec![3, 1]),
            (1, vec![3, 2]),
            (2, vec![4, 1]),
            (2, vec![4, 2]),
            (2, vec![5, 2]),
        ];
        assert_eq!(support, expected);
        // Degree histogram matches the Ehrhart numerator (1, 8, 3).
        let pair = crate::ehrhart::ehrhart(&sm);
        for level in 1..=sm.n() {
            let count =
                basis.reps.iter().filter(|r| r.ell == Int::from(level)).count();
            assert_eq!(Int::from(count), pair.psi[level]);
        }
    }

    #[test]
    fn second_example_basis_is_the_diagonal() {
        let basis = ring_basis(&example2()).unwrap();
        assert_eq!(basis.reps.len(), 3);
        for (k, rep) in basis.reps.iter().enumerate() {
            let k = k as i64 + 1;
            assert_eq!(rep.ell, int(k));
            assert_eq!(rep.i, vec![int(k); 3]);
            assert_eq!(rep.weight_defect, 0);
        }
    }

    #[test]
    fn reduced_unit_sets() {
        assert_eq!(
            z_gamma_zero(&example1()),
            vec![int(1), int(2), int(5), int(7), int(10), int(11)]
        );
        assert_eq!(z_gamma_zero(&example2()), vec![int(1), int(2), int(3)]);
        // gamma = 6 with B = (3, 2, 1).
        let sm = build_structure(ExponentData::from_i64(&[&[3, 0], &[0, 2]], &[1, 1]))
            .unwrap();
        assert_eq!(sm.gamma, int(6));
        assert_eq!(sm.weight_vector(), vec![int(2), int(3), int(1)]);
        assert_eq!(z_gamma_zero(&sm), vec![int(1), int(5)]);
    }

    #[test]
    fn hodge_tables_of_the_worked_examples() {
        let sm = example1();
        let basis = ring_basis(&sm).unwrap();
        let table = hodge_weight_classification(&sm, &basis);
        assert_eq!(table.top_weight_dim, 6);
        let ell1_pure = table.dims.get(&(1, 3)).copied().unwrap_or(0);
        let ell2_pure = table.dims.get(&(0, 3)).copied().unwrap_or(0);
        assert_eq!((ell1_pure, ell2_pure), (3, 3));
        let total: usize = table.dims.values().sum();
        assert_eq!(total, 11);

        let sm2 = example2();
        let basis2 = ring_basis(&sm2).unwrap();
        let table2 = hodge_weight_classification(&sm2, &basis2);
        assert_eq!(table2.top_weight_dim, 3);
        assert_eq!(table2.dims.values().sum::<usize>(), 3);
        assert!(table2.dims.keys().all(|&(_, w)| w == 4));
    }

    #[test]
    fn normal_form_reduces_powers_of_the_deformation_monomial() {
        let sm = example1();
        let basis = ring_basis(&sm).unwrap();
        let nf = normal_form(&sm, &basis, &int(3), &[int(6), int(3)]).unwrap();
        match nf {
            NormalForm::Rep(rep) => {
                assert_eq!(rep.lambda_bar, vec![rat(3, 12), rat(9, 12), rat(0, 1)]);
                assert_eq!((rep.ell, rep.i), (int(1), vec![int(3), int(0)]));
            }
            NormalForm::Unit => panic!("k=3 is not the unit class"),
        }
        // gamma-th power of the deformation monomial is the unit.
        let nf12 = normal_form(&sm, &basis, &int(12), &[int(24), int(12)]).unwrap();
        assert_eq!(nf12, NormalForm::Unit);
        // A basis element reduces to itself.
        let sm2 = example2();
        let basis2 = ring_basis(&sm2).unwrap();
        let nf2 = normal_form(&sm2, &basis2, &int(1), &vec![int(1); 3]).unwrap();
        match nf2 {
            NormalForm::Rep(rep) => assert_eq!((rep.ell, rep.i), (int(1), vec![int(1); 3])),
            NormalForm::Unit => panic!("basis element is not the unit"),
        }
    }

    #[test]
    fn transition_gradings_cancel() {
        let sm = example1();
        let t = ds_transition_and_gradings(&sm, &int(1), &[int(2), int(1)]).unwrap();
        assert_eq!(t.pi, (int(1), vec![int(0), int(0)]));
        assert_eq!(t.l_tilde, vec![rat(1, 1); 3]);
        assert_eq!(t.l_shift, vec![rat(-1, 1); 3]);

        let zero = ds_transition_and_gradings(&sm, &int(0), &[int(0), int(0)]).unwrap();
        assert!(zero.l_tilde.iter().all(|v| v.is_zero()));

        let sm2 = example2();
        let t2 = ds_transition_and_gradings(&sm2, &int(2), &vec![int(2); 3]).unwrap();
        assert_eq!(t2.pi, (int(2), vec![int(0); 3]));

        assert!(matches!(
            ds_transition_and_gradings(&sm, &int(1), &[int(4), int(0)]),
            Err(Error::NotInCone(_, _))
        ));
    }

    #[test]
    fn shift_covector_routes_agree() {
        for sm in [example1(), example2(), quadratic()] {
            let n = sm.n();
            for q in 0..=n {
                let direct = shift_covector_direct(&sm, q).unwrap();
                let closed: Vec<Rat> = sm.forms[q]
                    .v
                    .iter()
                    .map(|vc| -Rat::new(vc.clone(), sm.forms[q].b.clone()))
                    .collect();
                assert_eq!(direct, closed, "q = {q}");
            }
        }
    }

    #[test]
    fn gcd_obstruction_is_reported() {
        // B = (2, 2, 4): common factor 2.
        let sm = build_structure(ExponentData::from_i64(&[&[4, 0], &[0, 2]], &[1, 1]));
        let sm = sm.unwrap();
        assert_eq!(sm.weight_vector(), vec![int(2), int(4), int(2)]);
        assert!(!sm.gcd_condition());
        assert!(matches!(ring_basis(&sm), Err(Error::GcdViolation(_))));
        assert!(matches!(descend(&sm, 1), Err(Error::GcdViolation(_))));
    }
}
