//! Gauss diagrams of virtual knots.
//!
//! A diagram of degree `n` is an oriented circle with `2n` marked points,
//! numbered `0..2n` in the direction of orientation, joined in pairs by `n`
//! signed chords.  Each chord is directed from the point where its crossing
//! is traversed *over* to the point where it is traversed *under*.  Virtual
//! crossings of a planar picture leave no trace here, so this data is exactly
//! the information carried by a Gauss code such as `U1-O2+U3+O1-O3+U2+`.
//!
//! Chord identifiers are canonical: construction renumbers them `1..=n` in
//! order of first appearance around the circle starting from position 0.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use thiserror::Error;

/// Errors raised while building or querying Gauss diagrams.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GaussError {
    /// A token was not of the form `O<int><sign>` or `U<int><sign>`.
    #[error("malformed token '{0}' (expected e.g. 'O1+' or 'U3-')")]
    MalformedToken(String),
    /// A crossing label appeared a number of times other than two.
    #[error("crossing '{label}' appears {count} time(s); every crossing needs exactly one O and one U")]
    CrossingCount { label: String, count: usize },
    /// A crossing label appeared twice in the same role.
    #[error("crossing '{label}' appears twice as {role}")]
    RoleConflict { label: String, role: char },
    /// The two occurrences of a label carried different signs.
    #[error("crossing '{label}' has inconsistent signs")]
    SignMismatch { label: String },
    /// A chord sign other than +1 or -1.
    #[error("chord {id} has sign {sign}; only +1 and -1 are allowed")]
    InvalidSign { id: usize, sign: i64 },
    /// Endpoint positions do not form a permutation of `0..2n`.
    #[error("endpoint position {pos} is out of range or used more than once")]
    PositionConflict { pos: usize },
    /// Query for a position not present in the diagram.
    #[error("position {pos} is out of range")]
    PositionOutOfRange { pos: usize },
    /// Query for a chord id not present in the diagram.
    #[error("no chord with id {id}")]
    UnknownChord { id: usize },
}

/// Role of an endpoint: the over- or under-passage of its crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Over,
    Under,
}

/// A directed, signed chord.  Positions index the `2n` marked points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chord {
    /// Canonical identifier in `1..=n`.
    pub id: usize,
    /// Position of the over-passage (the tail of the chord).
    pub over_pos: usize,
    /// Position of the under-passage (the head of the chord).
    pub under_pos: usize,
    /// Crossing sign, `+1` or `-1`.
    pub sign: i64,
}

/// The index data of one chord.
///
/// `ro`/`ru` are the signed counts of over- and under-endpoints on the right
/// arc (from the chord's over-passage forward to its under-passage), `lo`/`lu`
/// the same for the left arc, and `ind = ro + ru` is the chord's index.
/// Endpoints are counted with the label signs: an over-endpoint of a chord of
/// sign `e` counts as `-e`, an under-endpoint as `+e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRecord {
    pub id: usize,
    pub sign: i64,
    pub ro: i64,
    pub ru: i64,
    pub lo: i64,
    pub lu: i64,
    pub ind: i64,
}

/// Which of the three diagram symmetries to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    /// Switch every crossing: reverse each chord and negate its sign.
    SwitchAll,
    /// Mirror image: negate every sign, keeping positions and directions.
    ///
    /// This is the unique sign/order/direction combination under which the
    /// zeroth polynomial transforms as `u, v -> 1/u, 1/v` (checked against
    /// the other three candidate definitions on random diagrams).
    Mirror,
    /// Orientation reversal: reverse the circle order only.
    Reverse,
}

/// An immutable Gauss diagram.  All operations producing diagrams return new
/// values with canonical chord labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussDiagram {
    n: usize,
    chords: Vec<Chord>,
    /// For each position, the owning chord id and the role played there.
    at_position: Vec<(usize, Role)>,
}

impl GaussDiagram {
    // ---- Construction ----

    /// The empty diagram (the unknot).
    pub fn empty() -> Self {
        Self {
            n: 0,
            chords: Vec::new(),
            at_position: Vec::new(),
        }
    }

    /// Builds a diagram from `(over_pos, under_pos, sign)` triples.
    ///
    /// The positions of all chords together must be a permutation of
    /// `0..2n`.  Chords are relabelled `1..=n` by first appearance.
    pub fn from_chords(raw: impl IntoIterator<Item = (usize, usize, i64)>) -> Result<Self, GaussError> {
        let raw: Vec<(usize, usize, i64)> = raw.into_iter().collect();
        let n = raw.len();
        let mut at_position: Vec<Option<(usize, Role)>> = vec![None; 2 * n];
        for (k, &(over_pos, under_pos, sign)) in raw.iter().enumerate() {
            if sign != 1 && sign != -1 {
                return Err(GaussError::InvalidSign { id: k + 1, sign });
            }
            for (pos, role) in [(over_pos, Role::Over), (under_pos, Role::Under)] {
                if pos >= 2 * n {
                    return Err(GaussError::PositionConflict { pos });
                }
                if at_position[pos].is_some() {
                    return Err(GaussError::PositionConflict { pos });
                }
                at_position[pos] = Some((k, role));
            }
        }
        // Relabel chords 1..=n in order of first appearance.
        let mut new_id = vec![0usize; n];
        let mut next = 0usize;
        for slot in &at_position {
            let (k, _) = slot.expect("all positions filled");
            if new_id[k] == 0 {
                next += 1;
                new_id[k] = next;
            }
        }
        let mut chords: Vec<Chord> = raw
            .iter()
            .enumerate()
            .map(|(k, &(over_pos, under_pos, sign))| Chord {
                id: new_id[k],
                over_pos,
                under_pos,
                sign,
            })
            .collect();
        chords.sort_by_key(|c| c.id);
        let at_position = at_position
            .into_iter()
            .map(|slot| {
                let (k, role) = slot.expect("all positions filled");
                (new_id[k], role)
            })
            .collect();
        Ok(Self { n, chords, at_position })
    }

    /// Parses a Gauss code.
    ///
    /// The grammar is a sequence of tokens `(O|U)<int>(+|-)`, case-sensitive,
    /// with optional whitespace between tokens.  The empty (or all-blank)
    /// string denotes the empty diagram.
    pub fn parse(input: &str) -> Result<Self, GaussError> {
        let mut tokens: Vec<(char, String, i64)> = Vec::new();
        let mut chars = input.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            let role = chars.next().unwrap();
            if role != 'O' && role != 'U' {
                return Err(GaussError::MalformedToken(role.to_string()));
            }
            let mut label = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    label.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            if label.is_empty() {
                return Err(GaussError::MalformedToken(format!("{role}")));
            }
            let sign = match chars.next() {
                Some('+') => 1,
                Some('-') => -1,
                other => {
                    let mut tok = format!("{role}{label}");
                    if let Some(o) = other {
                        tok.push(o);
                    }
                    return Err(GaussError::MalformedToken(tok));
                }
            };
            tokens.push((role, label, sign));
        }

        // Group the two occurrences of each label.
        struct Partial {
            over_pos: Option<usize>,
            under_pos: Option<usize>,
            sign: i64,
            count: usize,
        }
        let mut order: Vec<String> = Vec::new();
        let mut partial: std::collections::HashMap<String, Partial> = std::collections::HashMap::new();
        for (pos, (role, label, sign)) in tokens.iter().enumerate() {
            let entry = partial.entry(label.clone()).or_insert_with(|| {
                order.push(label.clone());
                Partial {
                    over_pos: None,
                    under_pos: None,
                    sign: *sign,
                    count: 0,
                }
            });
            entry.count += 1;
            if entry.sign != *sign {
                return Err(GaussError::SignMismatch { label: label.clone() });
            }
            let slot = match role {
                'O' => &mut entry.over_pos,
                _ => &mut entry.under_pos,
            };
            if slot.is_some() {
                return Err(GaussError::RoleConflict {
                    label: label.clone(),
                    role: *role,
                });
            }
            *slot = Some(pos);
        }
        let mut raw = Vec::with_capacity(order.len());
        for label in order {
            let p = &partial[&label];
            if p.count != 2 {
                return Err(GaussError::CrossingCount { label, count: p.count });
            }
            raw.push((p.over_pos.unwrap(), p.under_pos.unwrap(), p.sign));
        }
        Self::from_chords(raw)
    }

    /// A uniformly random degree-`n` diagram, deterministic in `seed`.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(n, &mut rng)
    }

    /// As [`random`](Self::random) but drawing from a caller-supplied source.
    pub fn random_with(n: usize, rng: &mut impl Rng) -> Self {
        let mut positions: Vec<usize> = (0..2 * n).collect();
        positions.shuffle(rng);
        let raw: Vec<(usize, usize, i64)> = (0..n)
            .map(|k| {
                let (a, b) = (positions[2 * k], positions[2 * k + 1]);
                let (over_pos, under_pos) = if rng.random() { (a, b) } else { (b, a) };
                let sign = if rng.random() { 1 } else { -1 };
                (over_pos, under_pos, sign)
            })
            .collect();
        Self::from_chords(raw).expect("random construction is always valid")
    }

    // ---- Accessors ----

    /// Number of chords.
    pub fn degree(&self) -> usize {
        self.n
    }

    /// True for the empty diagram.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// All chords, sorted by id.
    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    /// The chord with the given id.
    pub fn chord(&self, id: usize) -> Result<&Chord, GaussError> {
        self.chords
            .get(id.wrapping_sub(1))
            .filter(|c| c.id == id)
            .ok_or(GaussError::UnknownChord { id })
    }

    /// The chord id and role found at a position.
    pub fn endpoint(&self, pos: usize) -> Result<(usize, Role), GaussError> {
        self.at_position
            .get(pos)
            .copied()
            .ok_or(GaussError::PositionOutOfRange { pos })
    }

    /// The label sign of the endpoint at a position: `-sign` at an
    /// over-passage, `+sign` at an under-passage.
    pub fn endpoint_sign(&self, pos: usize) -> Result<i64, GaussError> {
        let (id, role) = self.endpoint(pos)?;
        let chord = self.chord(id)?;
        Ok(match role {
            Role::Over => -chord.sign,
            Role::Under => chord.sign,
        })
    }

    /// The canonical Gauss code, starting from position 0.
    pub fn to_code(&self) -> String {
        let mut out = String::new();
        for &(id, role) in &self.at_position {
            let chord = &self.chords[id - 1];
            out.push(match role {
                Role::Over => 'O',
                Role::Under => 'U',
            });
            out.push_str(&id.to_string());
            out.push(if chord.sign > 0 { '+' } else { '-' });
        }
        out
    }

    // ---- Indices and writhes ----

    /// Walks the open arc from `from` to `to` (exclusive at both ends) and
    /// returns the signed over- and under-endpoint counts along it.
    fn arc_counts(&self, from: usize, to: usize) -> (i64, i64) {
        let m = 2 * self.n;
        let mut over = 0;
        let mut under = 0;
        let mut p = (from + 1) % m;
        while p != to {
            let (id, role) = self.at_position[p];
            let sign = self.chords[id - 1].sign;
            match role {
                Role::Over => over += -sign,
                Role::Under => under += sign,
            }
            p = (p + 1) % m;
        }
        (over, under)
    }

    /// Index data for one chord.
    pub fn indices(&self, id: usize) -> Result<IndexRecord, GaussError> {
        let chord = *self.chord(id)?;
        let (ro, ru) = self.arc_counts(chord.over_pos, chord.under_pos);
        let (lo, lu) = self.arc_counts(chord.under_pos, chord.over_pos);
        Ok(IndexRecord {
            id,
            sign: chord.sign,
            ro,
            ru,
            lo,
            lu,
            ind: ro + ru,
        })
    }

    /// Index data for every chord, in id order.
    pub fn all_indices(&self) -> Vec<IndexRecord> {
        (1..=self.n)
            .map(|id| self.indices(id).expect("ids 1..=n are valid"))
            .collect()
    }

    /// The writhe: the sum of all crossing signs.
    pub fn writhe(&self) -> i64 {
        self.chords.iter().map(|c| c.sign).sum()
    }

    /// The `n`-writhe: the sum of signs over chords of index `n`.
    pub fn n_writhe(&self, n: i64) -> i64 {
        self.all_indices()
            .iter()
            .filter(|r| r.ind == n)
            .map(|r| r.sign)
            .sum()
    }

    // ---- Symmetries ----

    /// Applies one of the three diagram symmetries.
    pub fn transform(&self, kind: TransformKind) -> Self {
        let m = 2 * self.n;
        let flip = |p: usize| m - 1 - p;
        let raw: Vec<(usize, usize, i64)> = match kind {
            TransformKind::SwitchAll => self
                .chords
                .iter()
                .map(|c| (c.under_pos, c.over_pos, -c.sign))
                .collect(),
            TransformKind::Mirror => self
                .chords
                .iter()
                .map(|c| (c.over_pos, c.under_pos, -c.sign))
                .collect(),
            TransformKind::Reverse => self
                .chords
                .iter()
                .map(|c| (flip(c.over_pos), flip(c.under_pos), c.sign))
                .collect(),
        };
        Self::from_chords(raw).expect("symmetries preserve validity")
    }

    /// Switches every crossing (reverses every chord, negating its sign).
    pub fn switch_all(&self) -> Self {
        self.transform(TransformKind::SwitchAll)
    }

    /// The mirror image.
    pub fn mirror(&self) -> Self {
        self.transform(TransformKind::Mirror)
    }

    /// The same knot traversed in the opposite direction.
    pub fn reverse(&self) -> Self {
        self.transform(TransformKind::Reverse)
    }

    /// Moves the basepoint forward by `k` positions, relabelling chords.
    pub fn rotate(&self, k: usize) -> Self {
        if self.n == 0 {
            return Self::empty();
        }
        let m = 2 * self.n;
        let shift = |p: usize| (p + m - (k % m)) % m;
        Self::from_chords(
            self.chords
                .iter()
                .map(|c| (shift(c.over_pos), shift(c.under_pos), c.sign)),
        )
        .expect("rotation preserves validity")
    }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_code())
    }
}
