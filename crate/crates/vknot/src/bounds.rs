//! Lower bounds extracted from the writhe polynomials, and the mutant
//! family separating the second-order invariant from the first.
//!
//! Two complexity measures are bounded from below here:
//!
//! - the **virtual crossing number**: half the exponent width of `W` is a
//!   lower bound ([`vc_lower_bound`]);
//! - the **forbidden number** (how many forbidden moves are needed to
//!   unknot): one forbidden move changes the coefficient-magnitude sum of
//!   `W/(t−1)` by at most 2, and unknotting must drive it to zero, so half
//!   that sum is a lower bound ([`forbidden_lower_bound`]).  Independently,
//!   a diagram unknottable by a *single* forbidden move has a second-order
//!   polynomial of a very restricted shape; violating the shape certifies
//!   forbidden number at least 2 ([`forbidden_one_obstruction`]).

use crate::gauss::GaussDiagram;
use crate::laurent::{LaurentError, UniLaurent};
use crate::writhe::{v_polynomial, writhe_invariants, VResidue};
use num_traits::ToPrimitive;
use thiserror::Error;

/// Errors from bound computations and family construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    /// The mutant family is indexed by `k >= 1`.
    #[error("the mutant family needs k >= 1, got {0}")]
    IndexTooSmall(usize),
    /// Polynomial arithmetic failed (e.g. `W` not divisible by `t - 1`).
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Verdict of the single-forbidden-move shape test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    /// The second-order polynomial's shape rules out unknotting with one
    /// forbidden move.
    Yes,
    /// The shape is compatible with one forbidden move (no conclusion).
    No,
    /// The second-order polynomial is only defined up to a non-zero modulus,
    /// so the shape of one representative proves nothing.
    Inconclusive,
}

/// The lower bounds derived from one diagram's writhe polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    /// Lower bound for the virtual crossing number.
    pub vc_lower: u64,
    /// Lower bound for the forbidden number, from `W/(t−1)`.
    pub forbidden_lower_w: u64,
    /// Whether unknotting with a single forbidden move is excluded.
    pub forbidden_one_excluded: Obstruction,
}

/// Lower bound for the virtual crossing number: half the exponent width of
/// the writhe polynomial, rounded up.  Zero for `W = 0`.
pub fn vc_lower_bound(w: &UniLaurent) -> u64 {
    ((w.shape().width + 1) / 2) as u64
}

/// Lower bound for the forbidden number: half the sum of coefficient
/// magnitudes of `W/(t−1)`, rounded up.  Zero for `W = 0`; fails with
/// [`LaurentError::NotDivisible`] if `t − 1` does not divide `W` (which
/// never happens for the writhe polynomial of a diagram).
pub fn forbidden_lower_bound(w: &UniLaurent) -> Result<u64, BoundsError> {
    let quotient = w.divide_exact(&UniLaurent::t_minus_one())?;
    let sum = quotient.shape().coeff_abs_sum;
    Ok(((sum + 1u8) / 2u8).to_u64().expect("bound fits in u64"))
}

/// Shape test excluding unknotting by a single forbidden move.
///
/// When the second-order polynomial is an honest polynomial (zero modulus),
/// a diagram one forbidden move away from the unknot can have at most four
/// terms, at most two of them with even exponent and at most two with odd
/// exponent.  A violation answers [`Obstruction::Yes`]; conformance answers
/// [`Obstruction::No`].  With a non-zero modulus the representative's shape
/// is not meaningful and the answer is [`Obstruction::Inconclusive`].
pub fn forbidden_one_obstruction(v: &VResidue) -> Obstruction {
    if !v.modulus.is_zero() {
        return Obstruction::Inconclusive;
    }
    let total = v.v_rep.shape().term_count;
    let even = v
        .v_rep
        .terms()
        .filter(|(&e, _)| e.rem_euclid(2) == 0)
        .count();
    let odd = total - even;
    if total > 4 || even > 2 || odd > 2 {
        Obstruction::Yes
    } else {
        Obstruction::No
    }
}

/// Computes all bounds for one diagram.
pub fn bounds_report(d: &GaussDiagram) -> Result<BoundsReport, BoundsError> {
    let w = writhe_invariants(d).w;
    Ok(BoundsReport {
        vc_lower: vc_lower_bound(&w),
        forbidden_lower_w: forbidden_lower_bound(&w)?,
        forbidden_one_excluded: forbidden_one_obstruction(&v_polynomial(d)),
    })
}

/// Builds the mutant pair `(K, MK)` of the positive-chord family indexed by
/// `k >= 1`.
///
/// Both diagrams have `k + 3` chords, all positive, and identical writhe
/// polynomials `-(k+2) + (k+1)t⁻¹ + t^{k+1}`; their second-order
/// polynomials differ by `k + (1-k)t⁻¹ + t^{k+1} - 2t^k`, which is not an
/// integer multiple of the shared modulus — so the pair is separated at
/// second order but not at first.
///
/// Chord ids follow first appearance along the circle.  In `K` the unique
/// alternating pair is `{k+2, k+3}` (one over/under interleaving); in `MK`
/// it is `{k+1, k+3}` (the other interleaving).
pub fn mutant_family(k: usize) -> Result<(GaussDiagram, GaussDiagram), BoundsError> {
    if k < 1 {
        return Err(BoundsError::IndexTooSmall(k));
    }
    let mut a = String::new();
    for i in 1..=k + 2 {
        a.push_str(&format!("O{i}+"));
    }
    for i in (2..=k + 1).rev() {
        a.push_str(&format!("U{i}+"));
    }
    a.push_str(&format!("U{}+U1+O{}+U{}+", k + 3, k + 3, k + 2));

    let mut b = String::new();
    for i in 1..=k + 2 {
        b.push_str(&format!("O{i}+"));
    }
    b.push_str(&format!("U{}+O{}+U{}+", k + 1, k + 3, k + 2));
    for i in (1..=k).rev() {
        b.push_str(&format!("U{i}+"));
    }
    b.push_str(&format!("U{}+", k + 3));

    let ka = GaussDiagram::parse(&a).expect("generated code is valid");
    let mk = GaussDiagram::parse(&b).expect("generated code is valid");
    Ok((ka, mk))
}
