//! Dense univariate polynomials: integer (`IPoly`), rational (`RPoly`),
//! cyclotomic factors, and exact gcd over Q normalized to a primitive
//! integer polynomial.
//!
//! Coefficients are stored in ascending degree and kept trimmed, so the
//! zero polynomial is the empty coefficient list.

use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer polynomial, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IPoly(Vec<Int>);

impl IPoly {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IPoly(coeffs)
    }

    pub fn zero() -> Self {
        IPoly(Vec::new())
    }

    pub fn one() -> Self {
        IPoly(vec![Int::one()])
    }

    pub fn constant(c: Int) -> Self {
        IPoly::new(vec![c])
    }

    /// `t^d`.
    pub fn monomial(d: usize) -> Self {
        let mut c = vec![Int::zero(); d + 1];
        c[d] = Int::one();
        IPoly(c)
    }

    /// `t^d - 1`.
    pub fn power_minus_one(d: usize) -> Self {
        assert!(d >= 1);
        let mut c = vec![Int::zero(); d + 1];
        c[0] = -Int::one();
        c[d] = Int::one();
        IPoly(c)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Int {
        self.0.get(k).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Int> {
        self.0.last()
    }

    pub fn neg(&self) -> Self {
        IPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        let mut out = vec![Int::zero(); len];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        IPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IPoly::zero();
        }
        let mut out = vec![Int::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IPoly::new(out)
    }

    pub fn mul_scalar(&self, s: &Int) -> Self {
        IPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    /// Long division when the divisor leading coefficient is a unit.
    /// Returns `(quotient, remainder)`.
    pub fn div_rem_unit(&self, div: &Self) -> (Self, Self) {
        let lead = div.leading().expect("division by zero polynomial");
        assert!(lead.clone().abs().is_one(), "divisor leading coefficient must be a unit");
        let dd = div.degree().unwrap();
        let mut rem = self.0.clone();
        let mut quot = vec![Int::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = &rem[rem.len() - 1] / lead;
            quot[k] = q.clone();
            for (j, c) in div.0.iter().enumerate() {
                let idx = k + j;
                rem[idx] = &rem[idx] - &q * c;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (IPoly::new(quot), IPoly::new(rem))
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn div_exact(&self, div: &Self) -> Self {
        let (q, r) = self.div_rem_unit(div);
        assert!(r.is_zero(), "division was not exact");
        q
    }

    pub fn eval(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + Rat::from(c.clone());
        }
        acc
    }

    pub fn to_rpoly(&self) -> RPoly {
        RPoly::new(self.0.iter().map(|c| Rat::from(c.clone())).collect())
    }

    /// Reverse-coefficient polynomial `t^deg * p(1/t)`.
    pub fn reciprocal(&self) -> Self {
        let mut c = self.0.clone();
        c.reverse();
        IPoly::new(c)
    }

    /// Divide out the content and force a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IPoly::zero();
        }
        let mut content = Int::zero();
        for c in &self.0 {
            content = content.gcd(c);
        }
        let mut out: Vec<Int> = self.0.iter().map(|c| c / &content).collect();
        if out.last().unwrap().is_negative() {
            for c in &mut out {
                *c = -&*c;
            }
        }
        IPoly(out)
    }
}

/// All divisors of `d`, ascending.
pub fn divisors(d: u64) -> Vec<u64> {
    assert!(d >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut e = 1;
    while e * e <= d {
        if d % e == 0 {
            small.push(e);
            if e * e != d {
                large.push(d / e);
            }
        }
        e += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// The `d`-th cyclotomic polynomial, by the recursive exact-division formula
/// `Phi_d = (t^d - 1) / prod_{e | d, e < d} Phi_e`.
pub fn cyclotomic(d: u64) -> IPoly {
    fn build(d: u64, memo: &mut std::collections::BTreeMap<u64, IPoly>) -> IPoly {
        if let Some(p) = memo.get(&d) {
            return p.clone();
        }
        let mut num = IPoly::power_minus_one(d as usize);
        for e in divisors(d) {
            if e == d {
                continue;
            }
            let phi = build(e, memo);
            num = num.div_exact(&phi);
        }
        memo.insert(d, num.clone());
        num
    }
    build(d, &mut std::collections::BTreeMap::new())
}

/// Rational polynomial, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RPoly(Vec<Rat>);

impl RPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RPoly(coeffs)
    }

    pub fn zero() -> Self {
        RPoly(Vec::new())
    }

    pub fn one() -> Self {
        RPoly(vec![Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        RPoly::new(vec![c])
    }

    /// `a + b*t`.
    pub fn linear(a: Rat, b: Rat) -> Self {
        RPoly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.0.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn neg(&self) -> Self {
        RPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        let mut out = vec![Rat::zero(); len];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        RPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RPoly::new(out)
    }

    pub fn mul_scalar(&self, s: &Rat) -> Self {
        RPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        let lead = div.0.last().expect("division by zero polynomial").clone();
        let dd = div.degree().unwrap();
        let mut rem = self.0.clone();
        let mut quot = vec![Rat::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            quot[k] = q.clone();
            for (j, c) in div.0.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &q * c;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (RPoly::new(quot), RPoly::new(rem))
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitute `t -> -t`.
    pub fn flip_sign(&self) -> Self {
        RPoly::new(
            self.0
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Clear denominators and normalize: primitive integer polynomial with
    /// positive leading coefficient.
    pub fn to_primitive_ipoly(&self) -> IPoly {
        if self.is_zero() {
            return IPoly::zero();
        }
        let mut lcm = Int::one();
        for c in &self.0 {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<Int> = self.0.iter().map(|c| (c * Rat::from(lcm.clone())).to_integer()).collect();
        IPoly::new(ints).primitive_part()
    }
}

/// Pochhammer product `prod_{j=0}^{m-1} (base + j)` of a rational linear
/// polynomial `base(theta)`, expanded in ascending powers of `theta`.
pub fn pochhammer(base: &RPoly, m: u64) -> RPoly {
    let mut acc = RPoly::one();
    for j in 0..m {
        let shifted = base.add(&RPoly::constant(Rat::from(Int::from(j))));
        acc = acc.mul(&shifted);
    }
    acc
}

/// Monic gcd over Q, returned as a primitive integer polynomial with
/// positive leading coefficient.
pub fn gcd_over_q(a: &IPoly, b: &IPoly) -> IPoly {
    let mut x = a.to_rpoly();
    let mut y = b.to_rpoly();
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y);
        x = y;
        y = r;
    }
    if x.is_zero() {
        return IPoly::zero();
    }
    x.to_primitive_ipoly()
}
