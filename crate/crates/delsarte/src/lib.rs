//! Exact invariants of deformed Delsarte Laurent polynomials.
//!
//! A deformed Delsarte polynomial in `n` variables is
//! `f(x) = x^a(1) + ... + x^a(n) + 1 + s * x^a(n+2)`
//! with independent exponent vectors `a(1)..a(n)`, the implicit constant
//! exponent `a(n+1) = 0`, and a deformation exponent `a(n+2)` strictly
//! interior to the Newton simplex.  Everything downstream of that datum is
//! computed here in exact integer or rational arithmetic:
//!
//! * [`lattice`]: the structure matrix, its inverse columns (weight vectors),
//!   the linear forms `L_q`, and membership in the semigroup cone.
//! * [`ehrhart`]: lattice point counts of dilates, the Ehrhart numerator
//!   pair, and the fundamental parallelepiped.
//! * [`jacobi`]: monomial representatives of the quotient ring, descent to
//!   the parallelepiped basis, gradings, and the Hodge-weight classification.
//! * [`mellin`]: Gamma-factor products of the period Mellin transform, their
//!   pole progressions, and the two pole-count routes.
//! * [`hyperg`]: the Pochhammer operator pair `(P, Q)`, singular loci,
//!   exponent multisets, the irreducible reduced operator, and Frobenius
//!   series solutions.
//! * [`monodromy`]: characteristic polynomials, the Levelt companion pair,
//!   explicit global generators, the invariant bilinear form with exact
//!   signature, and Hodge number histograms.
//! * [`mirror`]: the polar weighted-projective data, the transpose
//!   polynomial, the Poincare series identity, and the Gram/Stokes pairing
//!   of the mirror collection.
//!
//! All public functions are deterministic: set-valued output is sorted, and
//! rational data is kept in lowest terms.  The optional `parallel` feature
//! (on by default) runs the box enumerations on a rayon pool; the sequential
//! kernel is always compiled and gives bit-identical results.

#![forbid(unsafe_code)]

pub mod ehrhart;
pub mod grid;
pub mod hyperg;
pub mod jacobi;
pub mod lattice;
pub mod matrix;
pub mod mellin;
pub mod mirror;
pub mod monodromy;
pub mod poly;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision integer used throughout.
pub type Int = BigInt;
/// Arbitrary-precision rational used throughout; always in lowest terms.
pub type Rat = BigRational;

/// Convenience: `Int` from an `i64`.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Convenience: `Rat` from an integer pair `p/q`, `q != 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The exponent rows are linearly dependent, so no simplex is spanned.
    #[error("exponent vectors are linearly dependent: structure matrix is singular")]
    SingularMatrix,
    /// The deformation exponent is not strictly inside the Newton simplex.
    #[error("deformation exponent is not strictly interior to the Newton simplex")]
    NotInterior,
    /// A lattice point lies outside the semigroup cone.
    #[error("point ({0}, {1:?}) is not in the semigroup cone")]
    NotInCone(String, String),
    /// A monomial datum is outside the grading range of the quotient ring.
    #[error("monomial is outside the ring grading range: {0}")]
    NotInRing(String),
    /// The weight vector has a common factor, so classes fail to generate.
    #[error("weight vector has gcd {0}; the ring basis requires gcd 1")]
    GcdViolation(String),
    /// Descent failed to terminate on a parallelepiped representative.
    /// Unreachable for valid cone points; kept as a defensive variant.
    #[error("descent stalled before reaching a parallelepiped representative")]
    DescentStuck,
    /// A class index outside the reduced unit set was passed where one is required.
    #[error("class {0} is not in the reduced unit set of Z/gamma")]
    NotInZGammaZero(String),
    /// Indicial roots of the reduced operator disagree with the exponent multiset.
    #[error("indicial polynomial roots do not match the exponent multiset")]
    IndicialMismatch,
    /// The Frobenius recursion hit a vanishing leading coefficient.
    /// Unreachable for admissible local exponents; kept as a defensive variant.
    #[error("resonant Frobenius recursion: leading coefficient vanished at order {0}")]
    ResonanceFailure(usize),
    /// The joint invariant-form space does not have dimension one.
    #[error("invariant bilinear form space has dimension {0}, expected 1")]
    InvariantDimension(usize),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;


/// Fractional part `t - floor(t)` of a rational, in `[0, 1)`.
pub fn frac(t: &Rat) -> Rat {
    t - t.floor()
}

/// Binomial coefficient `C(a, b)` as an exact integer; 0 when `b > a`.
pub fn binomial(a: u64, b: u64) -> Int {
    if b > a {
        return Int::from(0);
    }
    let b = b.min(a - b);
    let mut num = Int::from(1);
    let mut den = Int::from(1);
    for j in 0..b {
        num *= Int::from(a - j);
        den *= Int::from(j + 1);
    }
    num / den
}

/// Floor of a rational as an `Int`.
pub fn floor_int(t: &Rat) -> Int {
    t.floor().to_integer()
}
