//! Diagram rewriting: the four generating Reidemeister moves and the two
//! forbidden moves.
//!
//! The kink insertions ([`insert_r1`]) and the paired insertion
//! ([`insert_r2`]) add chords; the triangle move ([`apply_r3`]) only
//! rearranges endpoints; the forbidden moves ([`apply_forbidden`]) swap two
//! adjacent same-role endpoints.  Together these drive the invariance
//! property suites: the first three preserve (or shift by a known unit) every
//! invariant in this crate, while forbidden moves change the writhe
//! polynomial by an exactly predictable amount.

use crate::gauss::{GaussDiagram, GaussError, Role};
use thiserror::Error;

/// Errors from move application.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    /// An anchor position lies outside the diagram.
    #[error("position {pos} is out of range for a diagram with {degree} chords")]
    PositionOutOfRange { pos: usize, degree: usize },
    /// Neither two-chord insertion layout satisfied its postconditions.
    #[error("no two-chord insertion layout satisfies the index postconditions")]
    PatternViolation,
    /// The requested chords or positions do not form the required pattern.
    #[error("the requested site does not match a rearrangeable pattern")]
    PatternNotFound,
    /// A forbidden move needs two tails or two heads, not one of each.
    #[error("positions {pos} and {next} mix a head with a tail")]
    MixedEndpoints { pos: usize, next: usize },
    /// An underlying diagram error (unknown chord id, etc.).
    #[error(transparent)]
    Gauss(#[from] GaussError),
}

/// The two oriented kink insertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum R1Variant {
    /// Over endpoint immediately followed by its under endpoint: the right
    /// arc is empty, so `RO = RU = 0` and the chord has index 0.
    Ia,
    /// Under endpoint immediately followed by its over endpoint: the left
    /// arc is empty, so `LO = LU = 0`.
    Ib,
}

/// Which forbidden move a swap turned out to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForbiddenKind {
    /// Two adjacent tails (over endpoints) swapped.
    FO,
    /// Two adjacent heads (under endpoints) swapped.
    FU,
}

/// A single move in a script, as consumed by the CLI's `moves` subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveSpec {
    /// Kink insertion at a gap.
    Ia { pos: usize },
    /// Kink insertion at a gap (the `(uv)⁻¹`-shifting variant).
    Ib { pos: usize },
    /// Paired insertion anchored at two gaps.
    IIa { pos_a: usize, pos_b: usize },
    /// Triangle rearrangement of three chords (two positive, one negative).
    IIIa { chords: (usize, usize, usize) },
    /// Forbidden tail swap at a position.
    FO { pos: usize },
    /// Forbidden head swap at a position.
    FU { pos: usize },
}

/// Applies one scripted move.
///
/// `FO`/`FU` additionally require that the swap at the given position really
/// is of the named kind; a mismatch reports [`MoveError::PatternNotFound`].
pub fn apply_move(d: &GaussDiagram, spec: &MoveSpec) -> Result<GaussDiagram, MoveError> {
    match *spec {
        MoveSpec::Ia { pos } => insert_r1(d, pos, R1Variant::Ia),
        MoveSpec::Ib { pos } => insert_r1(d, pos, R1Variant::Ib),
        MoveSpec::IIa { pos_a, pos_b } => insert_r2(d, pos_a, pos_b),
        MoveSpec::IIIa { chords } => apply_r3(d, chords),
        MoveSpec::FO { pos } => {
            let (moved, kind) = apply_forbidden(d, pos)?;
            (kind == ForbiddenKind::FO)
                .then_some(moved)
                .ok_or(MoveError::PatternNotFound)
        }
        MoveSpec::FU { pos } => {
            let (moved, kind) = apply_forbidden(d, pos)?;
            (kind == ForbiddenKind::FU)
                .then_some(moved)
                .ok_or(MoveError::PatternNotFound)
        }
    }
}

/// One endpoint to insert: `(gap, tag, role, sign)`.  Gaps index the `2n+1`
/// slots between (and around) existing endpoints; endpoints listed at the
/// same gap keep their listed order.  Tags pair up the new endpoints.
type Insertion = (usize, usize, Role, i64);

fn insert_endpoints(d: &GaussDiagram, inserts: &[Insertion]) -> GaussDiagram {
    let m = 2 * d.degree();
    let mut new_over: Vec<Option<usize>> = Vec::new();
    let mut new_under: Vec<Option<usize>> = Vec::new();
    let mut new_sign: Vec<i64> = Vec::new();
    let mut host_pos = Vec::with_capacity(m);
    let mut next = 0usize;
    for p in 0..=m {
        for &(gap, tag, role, sign) in inserts {
            if gap == p {
                while new_over.len() <= tag {
                    new_over.push(None);
                    new_under.push(None);
                    new_sign.push(0);
                }
                match role {
                    Role::Over => new_over[tag] = Some(next),
                    Role::Under => new_under[tag] = Some(next),
                }
                new_sign[tag] = sign;
                next += 1;
            }
        }
        if p < m {
            host_pos.push(next);
            next += 1;
        }
    }
    let mut raw: Vec<(usize, usize, i64)> = d
        .chords()
        .iter()
        .map(|c| (host_pos[c.over_pos], host_pos[c.under_pos], c.sign))
        .collect();
    for tag in 0..new_over.len() {
        raw.push((
            new_over[tag].expect("inserted chord missing its over endpoint"),
            new_under[tag].expect("inserted chord missing its under endpoint"),
            new_sign[tag],
        ));
    }
    GaussDiagram::from_chords(raw).expect("insertion preserves validity")
}

fn check_gap(d: &GaussDiagram, pos: usize) -> Result<(), MoveError> {
    if pos > 2 * d.degree() {
        return Err(MoveError::PositionOutOfRange {
            pos,
            degree: d.degree(),
        });
    }
    Ok(())
}

/// Inserts one positive kink chord with both endpoints adjacent at `pos`.
pub fn insert_r1(d: &GaussDiagram, pos: usize, variant: R1Variant) -> Result<GaussDiagram, MoveError> {
    check_gap(d, pos)?;
    let order = match variant {
        R1Variant::Ia => [Role::Over, Role::Under],
        R1Variant::Ib => [Role::Under, Role::Over],
    };
    Ok(insert_endpoints(
        d,
        &[(pos, 0, order[0], 1), (pos, 0, order[1], 1)],
    ))
}

/// Inserts an opposite-sign chord pair (positive `c₁`, negative `c₂`) with
/// two adjacent endpoints at each anchor.
///
/// The layout is chosen so that, verified at runtime: the chords have equal
/// index, the negative chord's left over-index is one less than the positive
/// chord's, and every other chord alternates with one iff it alternates with
/// the other, in the same configuration class.  The nested arrangement
/// (`O₁ O₂ … U₂ U₁`) satisfies these; if it ever did not, the interleaved
/// arrangement (`O₁ O₂ … U₁ U₂`) is tried before giving up.
pub fn insert_r2(d: &GaussDiagram, pos_a: usize, pos_b: usize) -> Result<GaussDiagram, MoveError> {
    check_gap(d, pos_a)?;
    check_gap(d, pos_b)?;
    let layouts: [[Insertion; 4]; 2] = [
        // nested: heads meet head-to-head inside
        [
            (pos_a, 0, Role::Over, 1),
            (pos_a, 1, Role::Over, -1),
            (pos_b, 1, Role::Under, -1),
            (pos_b, 0, Role::Under, 1),
        ],
        // interleaved fallback
        [
            (pos_a, 0, Role::Over, 1),
            (pos_a, 1, Role::Over, -1),
            (pos_b, 0, Role::Under, 1),
            (pos_b, 1, Role::Under, -1),
        ],
    ];
    for layout in &layouts {
        let out = insert_endpoints(d, layout);
        if r2_postconditions(&out, pos_a, pos_b)? {
            return Ok(out);
        }
    }
    Err(MoveError::PatternViolation)
}

fn r2_postconditions(out: &GaussDiagram, pos_a: usize, pos_b: usize) -> Result<bool, MoveError> {
    // The two inserted chords own the endpoints at the (shifted) anchor gaps;
    // anchor `pos_a` contributes the first two new positions when scanning.
    let shift_a = if pos_b < pos_a { 2 } else { 0 };
    let (first, _) = out.endpoint(pos_a + shift_a)?;
    let (second, _) = out.endpoint(pos_a + shift_a + 1)?;
    let recs = out.all_indices();
    let (c1, c2) = if recs[first - 1].sign == 1 {
        (first, second)
    } else {
        (second, first)
    };
    if recs[c1 - 1].ind != recs[c2 - 1].ind || recs[c2 - 1].lo != recs[c1 - 1].lo - 1 {
        return Ok(false);
    }
    for other in 1..=out.degree() {
        if other == c1 || other == c2 {
            continue;
        }
        let with_c1 = crate::configurations::classify_pair(out, other, c1)
            .map_err(|_| MoveError::PatternNotFound)?;
        let with_c2 = crate::configurations::classify_pair(out, other, c2)
            .map_err(|_| MoveError::PatternNotFound)?;
        if with_c1 != with_c2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The two triangle-move site patterns, written as three adjacent endpoint
/// pairs in circle order.  Slots 0 and 1 are the positive chords, slot 2 the
/// negative one.  Applying the move swaps the two endpoints of every pair;
/// in both patterns this preserves all three indices and lowers the negative
/// chord's left over-index by one, removing an alternating pair of class A
/// (second pattern) or creating one of class B (first pattern).
const R3_PATTERNS: [[[(usize, Role); 2]; 3]; 2] = [
    [
        [(0, Role::Under), (1, Role::Over)],
        [(2, Role::Over), (0, Role::Over)],
        [(1, Role::Under), (2, Role::Under)],
    ],
    [
        [(1, Role::Under), (0, Role::Over)],
        [(0, Role::Under), (2, Role::Under)],
        [(2, Role::Over), (1, Role::Over)],
    ],
];

/// Which of the two triangle-move site patterns to plant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum R3Pattern {
    /// Applying the move to this site makes the positive pair alternating
    /// (class `B`).
    CreatePair,
    /// Applying the move to this site makes the positive pair stop
    /// alternating (it was class `A`).
    RemovePair,
}

/// Inserts a fresh triangle-move site into `d`: three new chords (two
/// positive, one negative) whose endpoints form three adjacent pairs at the
/// given strictly increasing insertion gaps.  Returns the new diagram and
/// the ids `(c₁, c₂, c₃)` of the planted chords (positives first), ready to
/// feed to [`apply_r3`].  Used to exercise the triangle move on random
/// diagrams.
pub fn plant_r3_site(
    d: &GaussDiagram,
    gaps: [usize; 3],
    pattern: R3Pattern,
) -> Result<(GaussDiagram, (usize, usize, usize)), MoveError> {
    check_gap(d, gaps[2])?;
    if !(gaps[0] < gaps[1] && gaps[1] < gaps[2]) {
        return Err(MoveError::PatternViolation);
    }
    let template = &R3_PATTERNS[match pattern {
        R3Pattern::CreatePair => 0,
        R3Pattern::RemovePair => 1,
    }];
    let signs = [1, 1, -1];
    let inserts: Vec<Insertion> = (0..3)
        .flat_map(|i| {
            template[i]
                .iter()
                .map(move |&(slot, role)| (gaps[i], slot, role, signs[slot]))
        })
        .collect();
    let out = insert_endpoints(d, &inserts);
    // each planted pair lands at `gap + 2·(pairs already placed)`
    let mut ids = [0usize; 3];
    for (gi, &g) in gaps.iter().enumerate() {
        for (k, &(slot, _)) in template[gi].iter().enumerate() {
            let (id, _) = out.endpoint(g + 2 * gi + k).expect("planted endpoint");
            ids[slot] = id;
        }
    }
    Ok((out, (ids[0], ids[1], ids[2])))
}

/// Rearranges the six endpoints of a matched chord triple (two positive
/// chords and one negative) whose endpoints form three adjacent pairs in one
/// of the two recognized site patterns.
///
/// Diagrams always carry canonical first-appearance labels, so a move that
/// rearranges endpoints may relabel chords; callers tracking specific chords
/// should re-locate them by endpoint position afterwards.
pub fn apply_r3(
    d: &GaussDiagram,
    chords: (usize, usize, usize),
) -> Result<GaussDiagram, MoveError> {
    let (a, b, c) = chords;
    if a == b || a == c || b == c {
        return Err(MoveError::PatternNotFound);
    }
    let (ca, cb, cc) = (*d.chord(a)?, *d.chord(b)?, *d.chord(c)?);
    // slot order: two positives then the negative
    let mut pos_ids = Vec::new();
    let mut neg_ids = Vec::new();
    for ch in [ca, cb, cc] {
        if ch.sign == 1 {
            pos_ids.push(ch.id);
        } else {
            neg_ids.push(ch.id);
        }
    }
    if pos_ids.len() != 2 || neg_ids.len() != 1 {
        return Err(MoveError::PatternNotFound);
    }
    let m = 2 * d.degree();
    let members = [pos_ids[0], pos_ids[1], neg_ids[0]];
    let owned: Vec<usize> = (0..m)
        .filter(|&p| {
            let (id, _) = d.endpoint(p).expect("position in range");
            members.contains(&id)
        })
        .collect();
    for pairing in adjacent_pairings(&owned, m) {
        for swap_pos in [false, true] {
            let slot_of = |id: usize| {
                if id == members[2] {
                    2
                } else if (id == members[0]) != swap_pos {
                    0
                } else {
                    1
                }
            };
            for pattern in &R3_PATTERNS {
                for rot in 0..3 {
                    let matched = (0..3).all(|i| {
                        let want = &pattern[(i + rot) % 3];
                        let (p, q) = pairing[i];
                        let (id_p, role_p) = d.endpoint(p).expect("in range");
                        let (id_q, role_q) = d.endpoint(q).expect("in range");
                        (slot_of(id_p), role_p) == want[0] && (slot_of(id_q), role_q) == want[1]
                    });
                    if matched {
                        return Ok(swap_pairs(d, &pairing));
                    }
                }
            }
        }
    }
    Err(MoveError::PatternNotFound)
}

/// Ways to split six positions into three cyclically adjacent disjoint pairs,
/// each pair ordered `(p, p+1 mod m)` and pairs listed by circle order of
/// their first element.
fn adjacent_pairings(owned: &[usize], m: usize) -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::new();
    if owned.len() != 6 {
        return out;
    }
    let mut stack = vec![(Vec::<(usize, usize)>::new(), owned.to_vec())];
    while let Some((acc, rest)) = stack.pop() {
        if rest.is_empty() {
            let mut arr = [(0, 0); 3];
            arr.copy_from_slice(&acc);
            out.push(arr);
            continue;
        }
        for (i, &p) in rest.iter().enumerate() {
            let q = (p + 1) % m;
            if let Some(j) = rest.iter().position(|&x| x == q) {
                if j != i {
                    let mut acc2 = acc.clone();
                    acc2.push((p, q));
                    let rest2: Vec<usize> = rest
                        .iter()
                        .copied()
                        .filter(|&x| x != p && x != q)
                        .collect();
                    stack.push((acc2, rest2));
                }
            }
        }
    }
    for arr in &mut out {
        arr.sort();
    }
    out.sort();
    out.dedup();
    out
}

fn swap_pairs(d: &GaussDiagram, pairing: &[(usize, usize)]) -> GaussDiagram {
    let relocate = |p: usize| {
        for &(x, y) in pairing {
            if p == x {
                return y;
            }
            if p == y {
                return x;
            }
        }
        p
    };
    GaussDiagram::from_chords(
        d.chords()
            .iter()
            .map(|c| (relocate(c.over_pos), relocate(c.under_pos), c.sign)),
    )
    .expect("endpoint swaps preserve validity")
}

/// Swaps the endpoints at `pos` and `pos+1` (cyclically), which must belong
/// to distinct chords and have the same role: two tails give an `FO` move,
/// two heads an `FU` move.
pub fn apply_forbidden(
    d: &GaussDiagram,
    pos: usize,
) -> Result<(GaussDiagram, ForbiddenKind), MoveError> {
    let m = 2 * d.degree();
    if pos >= m {
        return Err(MoveError::PositionOutOfRange {
            pos,
            degree: d.degree(),
        });
    }
    let next = (pos + 1) % m;
    let (id_a, role_a) = d.endpoint(pos)?;
    let (id_b, role_b) = d.endpoint(next)?;
    if id_a == id_b {
        return Err(MoveError::PatternNotFound);
    }
    if role_a != role_b {
        return Err(MoveError::MixedEndpoints { pos, next });
    }
    let kind = match role_a {
        Role::Over => ForbiddenKind::FO,
        Role::Under => ForbiddenKind::FU,
    };
    Ok((swap_pairs(d, &[(pos, next)]), kind))
}

/// The exact writhe-polynomial delta produced by a forbidden move at `pos`,
/// predicted from the pre-move diagram: with `c₁` the chord whose endpoint
/// sits at `pos` and `c₂` at `pos+1`, the move adds `ε(c₂)` to `Ind(c₁)` and
/// subtracts `ε(c₁)` from `Ind(c₂)`, so
/// `W_after − W_before = ε₁t^{i₁}(t^{ε₂} − 1) + ε₂t^{i₂}(t^{−ε₁} − 1)`.
pub fn forbidden_w_delta(d: &GaussDiagram, pos: usize) -> Result<crate::laurent::UniLaurent, MoveError> {
    let m = 2 * d.degree();
    if pos >= m {
        return Err(MoveError::PositionOutOfRange {
            pos,
            degree: d.degree(),
        });
    }
    let (id_a, _) = d.endpoint(pos)?;
    let (id_b, _) = d.endpoint((pos + 1) % m)?;
    let recs = d.all_indices();
    let (e1, i1) = (recs[id_a - 1].sign, recs[id_a - 1].ind);
    let (e2, i2) = (recs[id_b - 1].sign, recs[id_b - 1].ind);
    Ok(crate::laurent::UniLaurent::from_terms([
        (i1 + e2, e1),
        (i1, -e1),
        (i2 - e1, e2),
        (i2, -e2),
    ]))
}
