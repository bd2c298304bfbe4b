//! The writhe polynomial, its second-order refinement, and the bridges tying
//! both to the two-variable determinant polynomial.
//!
//! The *n-writhe* `wₙ` of a diagram is the signed count of chords of index
//! `n`.  At knot level the zeroth coefficient is corrected by the writhe, and
//! the generating polynomial `W(t) = Σ wₙ(K) tⁿ` is a knot invariant.  The
//! second-order polynomial `V(t)` refines `W`; individual diagrams only pin it
//! up to adding integer multiples of `W`, so it is represented as a residue.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::alexander::alexander_suite;
use crate::configurations::{classify_pair, PairClass};
use crate::gauss::GaussDiagram;
use crate::laurent::{LaurentError, UniLaurent};

/// Errors from residue-class comparisons.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WritheError {
    /// Residues can only be compared against the same modulus.
    #[error("residues have different moduli")]
    ModulusMismatch,
}

/// The writhe polynomial of a knot together with its coefficient data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WritheInvariants {
    /// `W(t) = Σ wₙ(K) tⁿ`.  Its coefficients always sum to zero.
    pub w: UniLaurent,
    /// Knot-level n-writhes: the diagram's signed index counts, with the
    /// writhe subtracted from the `n = 0` entry.  Zero entries are omitted.
    pub wn: BTreeMap<i64, i64>,
    /// Sum of the odd-index n-writhes.
    pub odd_writhe: i64,
}

/// Compute the writhe polynomial and n-writhes of a diagram's knot.
pub fn writhe_invariants(d: &GaussDiagram) -> WritheInvariants {
    let mut wn: BTreeMap<i64, i64> = BTreeMap::new();
    let mut odd_writhe = 0;
    for r in d.all_indices() {
        *wn.entry(r.ind).or_insert(0) += r.sign;
        if r.ind % 2 != 0 {
            odd_writhe += r.sign;
        }
    }
    *wn.entry(0).or_insert(0) -= d.writhe();
    wn.retain(|_, c| *c != 0);
    let w = UniLaurent::from_terms(wn.iter().map(|(&n, &c)| (n, c)));
    debug_assert!(
        wn.values().sum::<i64>() == 0,
        "writhe polynomial coefficients must sum to zero"
    );
    WritheInvariants { w, wn, odd_writhe }
}

/// A second-order writhe value: a representative polynomial that is only
/// well-defined up to adding integer multiples of the modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VResidue {
    /// The representative computed from the given diagram.
    pub v_rep: UniLaurent,
    /// The writhe polynomial of the same knot.
    pub modulus: UniLaurent,
}

/// Compute the second-order writhe residue of a diagram.
///
/// The representative is
/// `Wr(Wr+1)/2 + Σ_c ε(c) t^{Ind(c)} (LO(c) − (1+ε(c))/2)` plus `ε₁ε₂
/// t^{Ind₁+Ind₂}` for every class-`A` chord pair, minus the same for every
/// class-`B` pair.
pub fn v_polynomial(d: &GaussDiagram) -> VResidue {
    let wr = d.writhe();
    let mut v = UniLaurent::monomial(0, wr * (wr + 1) / 2);
    let records = d.all_indices();
    for r in &records {
        v = v + UniLaurent::monomial(r.ind, r.sign * (r.lo - (1 + r.sign) / 2));
    }
    for i in 0..records.len() {
        for j in (i + 1)..records.len() {
            let (c1, c2) = (&records[i], &records[j]);
            let term = UniLaurent::monomial(c1.ind + c2.ind, c1.sign * c2.sign);
            match classify_pair(d, c1.id, c2.id).expect("both chords exist") {
                PairClass::NonAlternating => {}
                PairClass::A => v = v + term,
                PairClass::B => v = v - term,
            }
        }
    }
    VResidue {
        v_rep: v,
        modulus: writhe_invariants(d).w,
    }
}

/// If `p` is an integer multiple of `m`, return the multiplier.
///
/// For `m = 0` only `p = 0` qualifies (with multiplier 0).  Otherwise the
/// candidate is read off one nonzero coefficient of `m` and then verified
/// against the whole polynomial.
pub fn integer_multiple(p: &UniLaurent, m: &UniLaurent) -> Option<BigInt> {
    if m.is_zero() {
        return p.is_zero().then(BigInt::zero);
    }
    let (&e, mc) = m.terms().next().expect("nonzero polynomial has a term");
    let (q, r) = p.coeff(e).div_rem(mc);
    if !r.is_zero() {
        return None;
    }
    (m.scale(q.clone()) == *p).then_some(q)
}

/// Are two residues the same class, i.e. do their representatives differ by
/// an integer multiple of the (shared) modulus?
pub fn v_equivalent(a: &VResidue, b: &VResidue) -> Result<bool, WritheError> {
    if a.modulus != b.modulus {
        return Err(WritheError::ModulusMismatch);
    }
    let diff = &a.v_rep - &b.v_rep;
    Ok(integer_multiple(&diff, &a.modulus).is_some())
}

/// Outcome of checking the two substitution bridges on one diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BridgeCheck {
    /// Does `Δ₀/(1-uv)` evaluated at `(t, t⁻¹)` equal `-W(t)`?
    pub w_ok: bool,
    /// Does the once-more-divided polynomial `Φ` at `(t, t⁻¹)` equal the
    /// second-order representative?
    pub v_ok: bool,
}

/// Check both substitution bridges between the determinant pipeline and the
/// writhe polynomials on a single diagram.
pub fn bridge_check(d: &GaussDiagram) -> Result<BridgeCheck, LaurentError> {
    let suite = alexander_suite(d)?;
    let inv = writhe_invariants(d);
    let v = v_polynomial(d);
    Ok(BridgeCheck {
        w_ok: suite.delta0_prime_raw.substitute_diag() == -&inv.w,
        v_ok: suite.phi.substitute_diag() == v.v_rep,
    })
}
