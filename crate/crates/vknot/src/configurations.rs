//! Independent reconstruction of the two-variable determinant polynomial from
//! alternating chord subsets.
//!
//! The determinant expansion of the crossing matrix can be regrouped by the
//! subset of crossings at which a permutation picks the off-diagonal block
//! entry.  Groups attached to non-alternating subsets cancel, and each
//! alternating subset contributes a closed-form product read off the link
//! obtained by smoothing its crossings.  This module implements that
//! reconstruction, the first three layers `f0`, `f1`, `f2` of the expansion in
//! powers of `1 - uv`, and a permutation-sum determinant, all as independent
//! oracles for the matrix pipeline in [`crate::alexander`].

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::alexander::PolyMatrix;
use crate::gauss::{GaussDiagram, GaussError, IndexRecord, Role};
use crate::laurent::BiLaurent;

/// Chord-subset enumeration is exponential; refuse diagrams beyond this size.
pub const MAX_ORACLE_CHORDS: usize = 12;
/// Permutation-sum determinants are refused beyond this matrix size.
pub const MAX_ORACLE_MATRIX: usize = 12;

/// Errors from the configuration oracle.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    /// A configuration must contain at least one chord.
    #[error("configuration is empty")]
    EmptyConfiguration,
    /// Smoothing and contributions are defined only for alternating subsets.
    #[error("configuration is not alternating")]
    NotAlternating,
    /// The requested exhaustive computation would be too large.
    #[error("input size {size} exceeds oracle limit {max}")]
    SizeLimit { size: usize, max: usize },
    /// A chord id was not present in the diagram.
    #[error(transparent)]
    Gauss(#[from] GaussError),
}

/// How a pair of chords sits relative to each other.
///
/// For an alternating pair the four endpoints alternate over/under around the
/// circle; reading from the over-endpoint of one chord, either both chords
/// close up before the other begins (`A`, two descending components after
/// smoothing) or they interleave (`B`, one descending component).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    NonAlternating,
    A,
    B,
}

/// The link obtained by smoothing every crossing of an alternating subset.
///
/// The subset's `2m` endpoints cut the circle into `2m` boundary segments.  A
/// segment is *descending* when it runs forward from an over-endpoint to an
/// under-endpoint of the subset and *ascending* otherwise.  Smoothing joins
/// the descending segment arriving at a crossing's under-endpoint to the
/// descending segment leaving its over-endpoint, and the ascending segment
/// arriving at its over-endpoint to the ascending segment leaving its
/// under-endpoint, so components are homogeneous in kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothedLink {
    /// Descending components; each is a cyclic list of `(from, to)` position
    /// pairs walked forward along the circle.
    pub descending: Vec<Vec<(usize, usize)>>,
    /// Ascending components, in the same encoding.
    pub ascending: Vec<Vec<(usize, usize)>>,
    /// Signed count of under-endpoints of non-subset chords met along the
    /// ascending components, each weighted by its chord's sign.
    pub u_count: i64,
    /// The same count for over-endpoints.
    pub o_count: i64,
}

impl SmoothedLink {
    /// Number of descending components (`|L_d|`).
    pub fn descending_count(&self) -> usize {
        self.descending.len()
    }
}

/// The subset's endpoints in circular order: `(position, chord id, role)`.
fn subset_endpoints(
    d: &GaussDiagram,
    subset: &[usize],
) -> Result<Vec<(usize, usize, Role)>, OracleError> {
    if subset.is_empty() {
        return Err(OracleError::EmptyConfiguration);
    }
    let ids: BTreeSet<usize> = subset.iter().copied().collect();
    let mut endpoints = Vec::with_capacity(2 * ids.len());
    for &id in &ids {
        let c = d.chord(id)?;
        endpoints.push((c.over_pos, id, Role::Over));
        endpoints.push((c.under_pos, id, Role::Under));
    }
    endpoints.sort_unstable();
    Ok(endpoints)
}

/// Does the subset's endpoint sequence alternate over/under around the circle?
///
/// Every singleton alternates trivially.  The empty subset is rejected.
pub fn is_alternating(d: &GaussDiagram, subset: &[usize]) -> Result<bool, OracleError> {
    let endpoints = subset_endpoints(d, subset)?;
    let k = endpoints.len();
    Ok((0..k).all(|i| endpoints[i].2 != endpoints[(i + 1) % k].2))
}

/// Smooth every crossing of an alternating subset and describe the result.
pub fn smooth(d: &GaussDiagram, subset: &[usize]) -> Result<SmoothedLink, OracleError> {
    let endpoints = subset_endpoints(d, subset)?;
    let k = endpoints.len();
    if !(0..k).all(|i| endpoints[i].2 != endpoints[(i + 1) % k].2) {
        return Err(OracleError::NotAlternating);
    }
    let total = 2 * d.degree();

    // Segment i runs forward from endpoints[i] to endpoints[(i + 1) % k]; it
    // is descending iff it starts at an over-endpoint.  Map each chord to the
    // segment starting at each of its endpoints.
    let mut start_of: BTreeMap<(usize, Role), usize> = BTreeMap::new();
    for (i, &(_, id, role)) in endpoints.iter().enumerate() {
        start_of.insert((id, role), i);
    }
    // successor[i]: the segment joined after segment i by the smoothing.
    let successor: Vec<usize> = (0..k)
        .map(|i| {
            let (_, end_id, end_role) = endpoints[(i + 1) % k];
            // A descending segment ends at an under-endpoint and continues
            // from the same chord's over-endpoint; an ascending segment ends
            // at an over-endpoint and continues from the under-endpoint.
            let next_role = match end_role {
                Role::Under => Role::Over,
                Role::Over => Role::Under,
            };
            start_of[&(end_id, next_role)]
        })
        .collect();

    let mut seen = vec![false; k];
    let mut descending = Vec::new();
    let mut ascending = Vec::new();
    let mut u_count = 0i64;
    let mut o_count = 0i64;
    for i in 0..k {
        if seen[i] {
            continue;
        }
        let mut component = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            let from = endpoints[j].0;
            let to = endpoints[(j + 1) % k].0;
            component.push((from, to));
            j = successor[j];
        }
        if endpoints[i].2 == Role::Over {
            descending.push(component);
        } else {
            // Walk the interior of each ascending segment, tallying passages
            // through endpoints of chords outside the subset.
            for &(from, to) in &component {
                let mut p = (from + 1) % total;
                while p != to {
                    let (id, role) = d.endpoint(p).expect("position in range");
                    let sign = d.chord(id).expect("chord exists").sign;
                    match role {
                        Role::Under => u_count += sign,
                        Role::Over => o_count += sign,
                    }
                    p = (p + 1) % total;
                }
            }
            ascending.push(component);
        }
    }
    Ok(SmoothedLink {
        descending,
        ascending,
        u_count,
        o_count,
    })
}

/// The closed-form determinant contribution of one alternating subset:
/// `(1-uv)^{neg} (1-(uv)^{-1})^{pos} (-1)^{m+|L_d|} u^{-U} v^{-O}`.
pub fn contribution(d: &GaussDiagram, subset: &[usize]) -> Result<BiLaurent, OracleError> {
    let link = smooth(d, subset)?;
    let ids: BTreeSet<usize> = subset.iter().copied().collect();
    let mut pos = 0u32;
    let mut neg = 0u32;
    for &id in &ids {
        if d.chord(id)?.sign > 0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    let m = ids.len();
    let sign = if (m + link.descending_count()).is_multiple_of(2) {
        1
    } else {
        -1
    };
    let factor = BiLaurent::one_minus_uv().pow(neg) * BiLaurent::one_minus_uv_inverse().pow(pos);
    Ok(factor
        .scale(sign)
        .mul_monomial(-link.u_count, -link.o_count))
}

/// Iterate over the nonempty subsets of the diagram's chord ids.
fn subsets(d: &GaussDiagram) -> impl Iterator<Item = Vec<usize>> {
    let n = d.degree();
    (1u32..(1u32 << n)).map(move |mask| {
        (1..=n)
            .filter(|id| mask & (1 << (id - 1)) != 0)
            .collect::<Vec<_>>()
    })
}

/// Reassemble the full determinant polynomial from alternating subsets:
/// `(uv)^{-Wr} - 1` plus the contribution of every nonempty alternating
/// subset.  Exponential in the chord count, hence guarded.
pub fn delta0_via_configurations(d: &GaussDiagram) -> Result<BiLaurent, OracleError> {
    let n = d.degree();
    if n > MAX_ORACLE_CHORDS {
        return Err(OracleError::SizeLimit {
            size: n,
            max: MAX_ORACLE_CHORDS,
        });
    }
    let mut total = BiLaurent::uv_pow(-d.writhe()) - BiLaurent::one();
    for subset in subsets(d) {
        if is_alternating(d, &subset)? {
            total = total + contribution(d, &subset)?;
        }
    }
    Ok(total)
}

/// `(uv)` exponent attached to a chord of the given sign: `-1` for positive
/// chords, `0` for negative ones.
fn uv_exp(sign: i64) -> i64 {
    -(1 + sign) / 2
}

/// The first three layers of the expansion of the determinant polynomial in
/// powers of `1 - uv`:
///
/// * `f0 = (uv)^{-Wr} - 1`;
/// * `f1 = Σ_c -ε(c) (uv)^{-(1+ε)/2} u^{-LU(c)} v^{LO(c)}`;
/// * `f2` sums over alternating pairs, with one closed form for class `A`
///   pairs and another (subtracted) for class `B` pairs.
///
/// The full polynomial minus `f0 + (1-uv)f1 + (1-uv)^2 f2` is divisible by
/// `(1-uv)^3`.
pub fn f_polynomials(d: &GaussDiagram) -> (BiLaurent, BiLaurent, BiLaurent) {
    let f0 = BiLaurent::uv_pow(-d.writhe()) - BiLaurent::one();

    let records = d.all_indices();
    let mut f1 = BiLaurent::zero();
    for r in &records {
        f1 = f1 + BiLaurent::monomial(uv_exp(r.sign) - r.lu, uv_exp(r.sign) + r.lo, -r.sign);
    }

    let mut f2 = BiLaurent::zero();
    for i in 0..records.len() {
        for j in (i + 1)..records.len() {
            let (c1, c2) = (&records[i], &records[j]);
            match classify_pair(d, c1.id, c2.id).expect("chords exist") {
                PairClass::NonAlternating => {}
                PairClass::A => f2 = f2 + pair_term_a(c1, c2),
                PairClass::B => {
                    let shift = uv_exp(c1.sign) + uv_exp(c2.sign);
                    let term = BiLaurent::monomial(
                        shift - c1.lu - c2.lu,
                        shift + c1.lo + c2.lo,
                        c1.sign * c2.sign,
                    );
                    f2 = f2 - term;
                }
            }
        }
    }
    (f0, f1, f2)
}

/// The class-`A` pair summand.  Symmetric in its arguments because
/// `LU + RU + ε` and `LO + RO - ε` are the same for every chord of a diagram.
fn pair_term_a(c1: &IndexRecord, c2: &IndexRecord) -> BiLaurent {
    let shift = uv_exp(c1.sign) + uv_exp(c2.sign);
    BiLaurent::monomial(
        shift - c1.lu + c2.ru + c2.sign,
        shift + c1.lo - c2.ro + c2.sign,
        c1.sign * c2.sign,
    )
}

/// Classify an unordered pair of chords by smoothing: class `A` pairs smooth
/// to two descending components, class `B` pairs to one.
pub fn classify_pair(d: &GaussDiagram, c1: usize, c2: usize) -> Result<PairClass, OracleError> {
    assert!(c1 != c2, "classify_pair requires distinct chords");
    let subset = [c1, c2];
    if !is_alternating(d, &subset)? {
        return Ok(PairClass::NonAlternating);
    }
    let link = smooth(d, &subset)?;
    Ok(match link.descending_count() {
        2 => PairClass::A,
        1 => PairClass::B,
        other => unreachable!("alternating pair smooths to 1 or 2 descending components, got {other}"),
    })
}

/// One structural entry of a crossing-matrix row, kept unmerged so
/// permutation terms can be attributed to chord subsets.
#[derive(Debug, Clone)]
struct StructEntry {
    col: usize,
    value: BiLaurent,
    /// Chord id whose off-diagonal block entry this is, if any.  Choosing such
    /// an entry puts the chord into the permutation's subset.
    block_of: Option<usize>,
}

/// The unmerged structural entries of the crossing matrix, row by row.
///
/// Unlike [`crate::alexander::build_matrix`], a curl whose off-diagonal block
/// entry collides with a permutation entry is kept as two separate entries
/// (`1 - (uv)^{∓1}` and `-1`), which is exactly the term-splitting that makes
/// the subset grouping below work.
fn struct_entries(d: &GaussDiagram) -> Vec<Vec<StructEntry>> {
    let n = d.degree();
    let labeling = crate::alexander::arc_labeling(d);
    let mut rows: Vec<Vec<StructEntry>> = vec![Vec::new(); 2 * n];
    for c in d.chords() {
        let r1 = 2 * c.id - 2;
        let r2 = 2 * c.id - 1;
        if c.sign > 0 {
            rows[r1].push(StructEntry {
                col: r1,
                value: BiLaurent::monomial(-1, 0, 1),
                block_of: None,
            });
            rows[r1].push(StructEntry {
                col: r2,
                value: BiLaurent::one_minus_uv_inverse(),
                block_of: Some(c.id),
            });
            rows[r2].push(StructEntry {
                col: r2,
                value: BiLaurent::monomial(0, -1, 1),
                block_of: None,
            });
        } else {
            rows[r1].push(StructEntry {
                col: r1,
                value: BiLaurent::monomial(0, 1, 1),
                block_of: None,
            });
            rows[r2].push(StructEntry {
                col: r1,
                value: BiLaurent::one_minus_uv(),
                block_of: Some(c.id),
            });
            rows[r2].push(StructEntry {
                col: r2,
                value: BiLaurent::monomial(1, 0, 1),
                block_of: None,
            });
        }
    }
    for (i, &p) in labeling.pi.iter().enumerate() {
        rows[i].push(StructEntry {
            col: p - 1,
            value: BiLaurent::monomial(0, 0, -1),
            block_of: None,
        });
    }
    rows
}

/// Permutation-expansion determinant over the merged matrix entries.  An
/// independent code path from [`PolyMatrix::determinant`], used as an oracle.
pub fn brute_force_det(m: &PolyMatrix) -> Result<BiLaurent, OracleError> {
    let size = m.size();
    if size > MAX_ORACLE_MATRIX {
        return Err(OracleError::SizeLimit {
            size,
            max: MAX_ORACLE_MATRIX,
        });
    }
    let rows: Vec<Vec<(usize, &BiLaurent)>> = (0..size).map(|r| m.row(r)).collect();
    let mut total = BiLaurent::zero();
    let mut chosen: Vec<usize> = Vec::with_capacity(size);
    permutation_sum(&rows, 0, &mut chosen, &BiLaurent::one(), &mut total);
    Ok(total)
}

/// Depth-first signed permutation expansion shared by the determinant oracle.
fn permutation_sum(
    rows: &[Vec<(usize, &BiLaurent)>],
    row: usize,
    chosen: &mut Vec<usize>,
    partial: &BiLaurent,
    total: &mut BiLaurent,
) {
    if row == rows.len() {
        *total = std::mem::take(total) + partial.clone();
        return;
    }
    for &(col, value) in &rows[row] {
        if chosen.contains(&col) {
            continue;
        }
        // Parity of the new inversions introduced by σ(row) = col.
        let inversions = chosen.iter().filter(|&&c| c > col).count();
        let mut next = partial * value;
        if inversions % 2 == 1 {
            next = -next;
        }
        chosen.push(col);
        permutation_sum(rows, row + 1, chosen, &next, total);
        chosen.pop();
    }
}

/// The permutation expansion of the determinant, grouped by the chord subset
/// whose off-diagonal block entries the permutation uses.  Curl collisions are
/// split between the two subsets they straddle.  Keys are sorted chord id
/// sets; every group is present, including the empty subset's.
pub fn grouped_permutation_sums(
    d: &GaussDiagram,
) -> Result<BTreeMap<Vec<usize>, BiLaurent>, OracleError> {
    let n = d.degree();
    if 2 * n > MAX_ORACLE_MATRIX {
        return Err(OracleError::SizeLimit {
            size: 2 * n,
            max: MAX_ORACLE_MATRIX,
        });
    }
    let rows = struct_entries(d);
    let mut groups: BTreeMap<Vec<usize>, BiLaurent> = BTreeMap::new();
    for mask in 0u32..(1u32 << n) {
        let subset: Vec<usize> = (1..=n).filter(|id| mask & (1 << (id - 1)) != 0).collect();
        groups.insert(subset, BiLaurent::zero());
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(2 * n);
    let mut subset: BTreeSet<usize> = BTreeSet::new();
    grouped_sum(&rows, 0, &mut chosen, &mut subset, &BiLaurent::one(), &mut groups);
    Ok(groups)
}

fn grouped_sum(
    rows: &[Vec<StructEntry>],
    row: usize,
    chosen: &mut Vec<usize>,
    subset: &mut BTreeSet<usize>,
    partial: &BiLaurent,
    groups: &mut BTreeMap<Vec<usize>, BiLaurent>,
) {
    if row == rows.len() {
        let key: Vec<usize> = subset.iter().copied().collect();
        let slot = groups.entry(key).or_insert_with(BiLaurent::zero);
        *slot = std::mem::take(slot) + partial.clone();
        return;
    }
    for entry in &rows[row] {
        if chosen.contains(&entry.col) {
            continue;
        }
        let inversions = chosen.iter().filter(|&&c| c > entry.col).count();
        let mut next = partial * &entry.value;
        if inversions % 2 == 1 {
            next = -next;
        }
        chosen.push(entry.col);
        let added = match entry.block_of {
            Some(id) => subset.insert(id),
            None => false,
        };
        grouped_sum(rows, row + 1, chosen, subset, &next, groups);
        if added {
            subset.remove(&entry.block_of.expect("just inserted"));
        }
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::{alexander_suite, build_matrix};

    fn mixed3() -> GaussDiagram {
        GaussDiagram::parse("U1-O2+U3+O1-O3+U2+").unwrap()
    }

    fn trefoil() -> GaussDiagram {
        GaussDiagram::parse("O1+O2+U1+U2+").unwrap()
    }

    #[test]
    fn alternation_basics() {
        let d = trefoil();
        assert!(is_alternating(&d, &[1]).unwrap());
        assert!(is_alternating(&d, &[2]).unwrap());
        // Endpoints of {1, 2} read O O U U around the circle.
        assert!(!is_alternating(&d, &[1, 2]).unwrap());
        assert_eq!(
            is_alternating(&d, &[]).unwrap_err(),
            OracleError::EmptyConfiguration
        );
        assert!(matches!(
            is_alternating(&d, &[7]).unwrap_err(),
            OracleError::Gauss(_)
        ));
        assert_eq!(
            smooth(&d, &[1, 2]).unwrap_err(),
            OracleError::NotAlternating
        );
    }

    #[test]
    fn pair_classes_by_descending_count() {
        // Two side-by-side kinks: endpoints O1 U1 O2 U2, both chords close up
        // before the other begins.
        let a = GaussDiagram::parse("O1+U1+O2+U2+").unwrap();
        assert_eq!(classify_pair(&a, 1, 2).unwrap(), PairClass::A);
        let la = smooth(&a, &[1, 2]).unwrap();
        assert_eq!(la.descending_count(), 2);
        assert_eq!(la.ascending.len(), 1);

        // Interleaved: endpoints O1 U2 O2 U1.
        let b = GaussDiagram::parse("O1+U2+O2+U1+").unwrap();
        assert_eq!(classify_pair(&b, 1, 2).unwrap(), PairClass::B);
        let lb = smooth(&b, &[1, 2]).unwrap();
        assert_eq!(lb.descending_count(), 1);
        assert_eq!(lb.ascending.len(), 2);

        let d = trefoil();
        assert_eq!(classify_pair(&d, 1, 2).unwrap(), PairClass::NonAlternating);
    }

    #[test]
    fn kink_contribution_and_f1() {
        // A single positive curl with empty left arc.
        let d = GaussDiagram::parse("O1+U1+").unwrap();
        let c = contribution(&d, &[1]).unwrap();
        assert_eq!(c, BiLaurent::one() - BiLaurent::uv_pow(-1));

        let (f0, f1, f2) = f_polynomials(&d);
        assert_eq!(f0, BiLaurent::uv_pow(-1) - BiLaurent::one());
        assert_eq!(f1, -BiLaurent::uv_pow(-1));
        assert!(f2.is_zero());
        let total = f0 + BiLaurent::one_minus_uv() * f1;
        assert!(total.is_zero());
    }

    #[test]
    fn singleton_contributions_match_index_data() {
        // For a singleton {c} the ascending component is the left arc, so the
        // closed form reduces to ±(1-(uv)^{∓1}) u^{-LU} v^{LO}.
        let d = mixed3();
        for r in d.all_indices() {
            let got = contribution(&d, &[r.id]).unwrap();
            let factor = if r.sign > 0 {
                BiLaurent::one_minus_uv_inverse()
            } else {
                BiLaurent::one_minus_uv()
            };
            let expected = factor.mul_monomial(-r.lu, r.lo);
            assert_eq!(got, expected, "chord {}", r.id);
        }
    }

    #[test]
    fn configuration_sum_matches_determinant() {
        for code in [
            "O1+U1+",
            "O1+O2+U1+U2+",
            "U1-O2+U3+O1-O3+U2+",
            "O1+O2+U1+O3-U2+U3-",
            "O1+U2+O2+U1+",
            "O1-U2-O2-U1-",
        ] {
            let d = GaussDiagram::parse(code).unwrap();
            let det = build_matrix(&d).determinant();
            let via = delta0_via_configurations(&d).unwrap();
            assert_eq!(via, det, "{code}");
        }
        assert!(delta0_via_configurations(&GaussDiagram::empty())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn configuration_sum_matches_determinant_randomly() {
        for seed in 0..40 {
            let d = GaussDiagram::random(1 + (seed as usize % 5), seed);
            let det = build_matrix(&d).determinant();
            let via = delta0_via_configurations(&d).unwrap();
            assert_eq!(via, det, "seed {seed} code {d}");
        }
    }

    #[test]
    fn chord_sum_identity() {
        // LU + RU + ε is the full signed under-count, i.e. the writhe, for
        // every chord; likewise LO + RO - ε is -writhe.
        for seed in 0..20 {
            let d = GaussDiagram::random(4, seed);
            let wr = d.writhe();
            for r in d.all_indices() {
                assert_eq!(r.lu + r.ru + r.sign, wr);
                assert_eq!(r.lo + r.ro - r.sign, -wr);
            }
        }
    }

    #[test]
    fn class_a_summand_is_symmetric() {
        let a = GaussDiagram::parse("O1+U1+O2-U2-").unwrap();
        assert_eq!(classify_pair(&a, 1, 2).unwrap(), PairClass::A);
        let records = a.all_indices();
        assert_eq!(
            pair_term_a(&records[0], &records[1]),
            pair_term_a(&records[1], &records[0])
        );
    }

    #[test]
    fn f_expansion_agrees_to_third_order() {
        for seed in 0..30 {
            let d = GaussDiagram::random(1 + (seed as usize % 5), seed + 1000);
            let delta = build_matrix(&d).determinant();
            let (f0, f1, f2) = f_polynomials(&d);
            let one_minus_uv = BiLaurent::one_minus_uv();
            let approx = f0 + &one_minus_uv * &f1 + &(&one_minus_uv * &one_minus_uv) * &f2;
            let rest = delta - approx;
            if rest.is_zero() {
                continue;
            }
            let cube = one_minus_uv.pow(3);
            assert!(
                rest.divide_exact(&cube).is_ok(),
                "seed {seed} code {d} remainder {rest}"
            );
        }
    }

    #[test]
    fn brute_force_matches_laplace() {
        for code in ["O1+U1+", "O1+O2+U1+U2+", "U1-O2+U3+O1-O3+U2+"] {
            let d = GaussDiagram::parse(code).unwrap();
            let m = build_matrix(&d);
            assert_eq!(brute_force_det(&m).unwrap(), m.determinant(), "{code}");
        }
        for seed in 100..130 {
            let d = GaussDiagram::random(1 + (seed as usize % 4), seed);
            let m = build_matrix(&d);
            assert_eq!(brute_force_det(&m).unwrap(), m.determinant(), "{d}");
        }
    }

    #[test]
    fn brute_force_one_by_one() {
        let mut m = PolyMatrix::new(1);
        let p = BiLaurent::from_terms([((1, 0), 2), ((0, 1), -3)]);
        m.add_to(0, 0, &p);
        assert_eq!(brute_force_det(&m).unwrap(), p);
    }

    #[test]
    fn size_guards() {
        assert_eq!(
            brute_force_det(&PolyMatrix::new(13)).unwrap_err(),
            OracleError::SizeLimit { size: 13, max: 12 }
        );
        let d = GaussDiagram::random(13, 7);
        assert_eq!(
            delta0_via_configurations(&d).unwrap_err(),
            OracleError::SizeLimit { size: 13, max: 12 }
        );
        assert_eq!(
            grouped_permutation_sums(&d).unwrap_err(),
            OracleError::SizeLimit { size: 26, max: 12 }
        );
    }

    #[test]
    fn grouped_sums_realize_the_cancellation_lemma() {
        for code in [
            "O1+U1+",
            "O1+O2+U1+U2+",
            "U1-O2+U3+O1-O3+U2+",
            "O1-U2-O2-U1-",
        ] {
            let d = GaussDiagram::parse(code).unwrap();
            let groups = grouped_permutation_sums(&d).unwrap();

            // The groups sum to the determinant.
            let mut total = BiLaurent::zero();
            for v in groups.values() {
                total = total + v.clone();
            }
            assert_eq!(total, build_matrix(&d).determinant(), "{code}");

            // The empty group is (uv)^{-Wr} - 1; non-alternating groups
            // vanish; alternating groups equal the closed-form contribution.
            for (subset, value) in &groups {
                if subset.is_empty() {
                    let f0 = BiLaurent::uv_pow(-d.writhe()) - BiLaurent::one();
                    assert_eq!(*value, f0, "{code} empty subset");
                } else if is_alternating(&d, subset).unwrap() {
                    assert_eq!(
                        *value,
                        contribution(&d, subset).unwrap(),
                        "{code} subset {subset:?}"
                    );
                } else {
                    assert!(value.is_zero(), "{code} subset {subset:?}: {value}");
                }
            }
        }
    }

    #[test]
    fn grouped_sums_on_random_diagrams() {
        for seed in 0..15 {
            let d = GaussDiagram::random(1 + (seed as usize % 4), seed + 500);
            let groups = grouped_permutation_sums(&d).unwrap();
            for (subset, value) in &groups {
                if subset.is_empty() {
                    continue;
                }
                if is_alternating(&d, subset).unwrap() {
                    assert_eq!(*value, contribution(&d, subset).unwrap(), "{d} {subset:?}");
                } else {
                    assert!(value.is_zero(), "{d} {subset:?}");
                }
            }
        }
    }

    #[test]
    fn suite_delta_matches_oracle_normalization() {
        let d = mixed3();
        let suite = alexander_suite(&d).unwrap();
        let via = delta0_via_configurations(&d).unwrap();
        assert_eq!(suite.delta0_raw, via);
    }
}
