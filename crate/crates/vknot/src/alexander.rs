//! The generalized Alexander polynomial of a Gauss diagram.
//!
//! Walking around the circle cuts it into `2n` arcs.  Each arc is labelled by
//! the crossing passage at its head: at a positive crossing `c_i` the incoming
//! under-arc is `a_{2i-1}` and the incoming over-arc is `a_{2i}`; at a negative
//! crossing the roles are exchanged.  The diagram then determines a `2n x 2n`
//! matrix `B = M - P` over `Z[u^±1, v^±1]`, where `M` is block-diagonal with
//! one `2x2` block per crossing and `P` is the permutation matrix of the arc
//! successor map `π`.  The generalized Alexander polynomial is
//! `Δ0 = det(B)`, a diagram invariant up to multiplication by `(uv)^k`.
//!
//! When a curl's two endpoints are adjacent, an off-diagonal block entry and a
//! `π` entry can land on the same matrix cell; the map-based construction
//! merges them (e.g. `1 - (uv)^-1` and `-1` combine to `-(uv)^-1`).

use crate::gauss::{GaussDiagram, Role};
use crate::laurent::{BiLaurent, LaurentError};
use crate::writhe;
use std::collections::{BTreeMap, HashMap};

/// Arc labels and the successor permutation of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcLabeling {
    /// `pi[i - 1]` is `π(i)` for labels `i` in `1..=2n`.  Following the knot,
    /// arc `a_i` runs into arc `a_{π(i)}`.
    pub pi: Vec<usize>,
    /// `in_label[p]` is the label of the arc whose head lies at position `p`.
    pub in_label: Vec<usize>,
}

impl ArcLabeling {
    /// The cycle of `π` starting from `start` (a label in `1..=2n`).
    pub fn cycle_from(&self, start: usize) -> Vec<usize> {
        let mut cycle = vec![start];
        let mut cur = self.pi[start - 1];
        while cur != start {
            cycle.push(cur);
            cur = self.pi[cur - 1];
        }
        cycle
    }

    /// True when `π` is one `2n`-cycle, as it always is for a knot diagram.
    pub fn is_single_cycle(&self) -> bool {
        self.pi.is_empty() || self.cycle_from(1).len() == self.pi.len()
    }
}

/// Computes the arc labels and successor permutation.
pub fn arc_labeling(d: &GaussDiagram) -> ArcLabeling {
    let m = 2 * d.degree();
    let mut in_label = vec![0usize; m];
    for (p, slot) in in_label.iter_mut().enumerate() {
        let (id, role) = d.endpoint(p).expect("p < 2n");
        let sign = d.chord(id).expect("valid id").sign;
        // Label of the arc entering this passage.
        *slot = match (sign > 0, role) {
            (true, Role::Under) | (false, Role::Over) => 2 * id - 1,
            _ => 2 * id,
        };
    }
    let mut pi = vec![0usize; m];
    for p in 0..m {
        // The arc entering position p continues as the arc entering p + 1.
        pi[in_label[p] - 1] = in_label[(p + 1) % m];
    }
    ArcLabeling { pi, in_label }
}

/// A sparse square matrix over `Z[u^±1, v^±1]` with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    size: usize,
    entries: BTreeMap<(usize, usize), BiLaurent>,
}

impl PolyMatrix {
    /// The zero matrix of the given size.
    pub fn new(size: usize) -> Self {
        Self {
            size,
            entries: BTreeMap::new(),
        }
    }

    /// Side length.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Adds `p` into the entry at `(row, col)`, dropping it if it cancels.
    pub fn add_to(&mut self, row: usize, col: usize, p: &BiLaurent) {
        assert!(row < self.size && col < self.size, "index out of range");
        let cell = self.entries.entry((row, col)).or_default();
        *cell = &*cell + p;
        if cell.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    /// The entry at `(row, col)`; zero entries are not stored.
    pub fn entry(&self, row: usize, col: usize) -> Option<&BiLaurent> {
        self.entries.get(&(row, col))
    }

    /// All structurally non-zero entries of one row.
    pub fn row(&self, row: usize) -> Vec<(usize, &BiLaurent)> {
        self.entries
            .range((row, 0)..=(row, self.size.saturating_sub(1)))
            .map(|(&(_, c), p)| (c, p))
            .collect()
    }

    /// Exact determinant by Laplace expansion along rows, memoized on the set
    /// of still-unused columns.  The sparsity of the crossing matrix (at most
    /// three entries per row) keeps the state space small.
    pub fn determinant(&self) -> BiLaurent {
        assert!(
            self.size <= 64,
            "determinant supports sizes up to 64, got {}",
            self.size
        );
        let rows: Vec<Vec<(usize, &BiLaurent)>> = (0..self.size).map(|r| self.row(r)).collect();
        let full: u64 = if self.size == 64 {
            u64::MAX
        } else {
            (1u64 << self.size) - 1
        };
        let mut memo: HashMap<u64, BiLaurent> = HashMap::new();
        self.det_rec(full, &rows, &mut memo)
    }

    fn det_rec(
        &self,
        mask: u64,
        rows: &[Vec<(usize, &BiLaurent)>],
        memo: &mut HashMap<u64, BiLaurent>,
    ) -> BiLaurent {
        if mask == 0 {
            return BiLaurent::one();
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let row = self.size - mask.count_ones() as usize;
        let mut acc = BiLaurent::zero();
        for &(col, entry) in &rows[row] {
            if mask & (1u64 << col) == 0 {
                continue;
            }
            // Parity of the column's rank among the still-available columns.
            let below = (mask & ((1u64 << col) - 1)).count_ones();
            let sub = self.det_rec(mask & !(1u64 << col), rows, memo);
            let term = entry * &sub;
            acc = if below.is_multiple_of(2) { &acc + &term } else { &acc - &term };
        }
        memo.insert(mask, acc.clone());
        acc
    }
}

/// Builds the crossing matrix `B = M - P` of a diagram.
pub fn build_matrix(d: &GaussDiagram) -> PolyMatrix {
    let n = d.degree();
    let mut b = PolyMatrix::new(2 * n);
    let u_inv = BiLaurent::monomial(-1, 0, 1);
    let v_inv = BiLaurent::monomial(0, -1, 1);
    let u = BiLaurent::monomial(1, 0, 1);
    let v = BiLaurent::monomial(0, 1, 1);
    for chord in d.chords() {
        let r1 = 2 * chord.id - 2; // row of a_{2i-1}, 0-based
        let r2 = 2 * chord.id - 1; // row of a_{2i}
        if chord.sign > 0 {
            b.add_to(r1, r1, &u_inv);
            b.add_to(r1, r2, &BiLaurent::one_minus_uv_inverse());
            b.add_to(r2, r2, &v_inv);
        } else {
            b.add_to(r1, r1, &v);
            b.add_to(r2, r1, &BiLaurent::one_minus_uv());
            b.add_to(r2, r2, &u);
        }
    }
    let minus_one = -BiLaurent::one();
    let lab = arc_labeling(d);
    for (i, &pi_i) in lab.pi.iter().enumerate() {
        b.add_to(i, pi_i - 1, &minus_one);
    }
    b
}

/// The Alexander-type polynomials attached to one diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexanderResult {
    /// `det(M - P)` exactly as computed, before normalization.
    pub delta0_raw: BiLaurent,
    /// `delta0_raw` shifted by `(uv)^k` so the minimum `u`-exponent is zero.
    pub delta0: BiLaurent,
    /// `delta0_raw / (1 - uv)`.
    pub delta0_prime_raw: BiLaurent,
    /// `delta0 / (1 - uv)`.
    pub delta0_prime: BiLaurent,
    /// `delta0 / ((1 - u)(1 - v)(1 - uv))`.
    pub delta0_bar: BiLaurent,
    /// `(delta0_prime_raw + W(u)) / (1 - uv)`, where `W` is the writhe
    /// polynomial injected along `t -> u`.
    pub phi: BiLaurent,
}

/// Computes `Δ0` and its companions for a diagram.
///
/// The empty diagram yields all zeros.  Division failures would indicate a
/// violation of the factorization theorems and are reported as errors rather
/// than silently absorbed.
pub fn alexander_suite(d: &GaussDiagram) -> Result<AlexanderResult, LaurentError> {
    if d.is_empty() {
        let z = BiLaurent::zero();
        return Ok(AlexanderResult {
            delta0_raw: z.clone(),
            delta0: z.clone(),
            delta0_prime_raw: z.clone(),
            delta0_prime: z.clone(),
            delta0_bar: z.clone(),
            phi: z,
        });
    }
    let delta0_raw = build_matrix(d).determinant();
    let delta0 = delta0_raw.normalized();
    let one_minus_uv = BiLaurent::one_minus_uv();
    let delta0_prime_raw = delta0_raw.divide_exact(&one_minus_uv)?;
    let delta0_prime = delta0.divide_exact(&one_minus_uv)?;
    let bar_divisor = &(&BiLaurent::from_terms([((0, 0), 1), ((1, 0), -1)])
        * &BiLaurent::from_terms([((0, 0), 1), ((0, 1), -1)]))
        * &one_minus_uv;
    let delta0_bar = delta0.divide_exact(&bar_divisor)?;
    let w = writhe::writhe_invariants(d).w;
    let phi = (&delta0_prime_raw + &w.inject_u()).divide_exact(&one_minus_uv)?;
    Ok(AlexanderResult {
        delta0_raw,
        delta0,
        delta0_prime_raw,
        delta0_prime,
        delta0_bar,
        phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mixed3() -> GaussDiagram {
        GaussDiagram::parse("U1-O2+U3+O1-O3+U2+").unwrap()
    }

    fn bi(pairs: &[((i64, i64), i64)]) -> BiLaurent {
        BiLaurent::from_terms(pairs.iter().copied())
    }

    #[test]
    fn arc_successor_cycle_of_mixed3() {
        let lab = arc_labeling(&mixed3());
        assert_eq!(lab.cycle_from(1), vec![1, 6, 3, 2, 4, 5]);
        assert!(lab.is_single_cycle());
    }

    #[test]
    fn arc_labeling_is_always_one_cycle() {
        for seed in 0..20 {
            let d = GaussDiagram::random(4, seed);
            assert!(arc_labeling(&d).is_single_cycle(), "seed {seed}");
        }
        assert!(arc_labeling(&GaussDiagram::empty()).is_single_cycle());
    }

    #[test]
    fn matrix_blocks_of_mixed3() {
        // Crossing 1 is negative, crossings 2 and 3 positive.
        let b = build_matrix(&mixed3());
        assert_eq!(b.entry(0, 0), Some(&bi(&[((0, 1), 1)]))); // v
        assert_eq!(b.entry(1, 0), Some(&BiLaurent::one_minus_uv()));
        assert_eq!(b.entry(1, 1), Some(&bi(&[((1, 0), 1)]))); // u
        assert_eq!(b.entry(2, 2), Some(&bi(&[((-1, 0), 1)]))); // u^-1
        assert_eq!(b.entry(2, 3), Some(&BiLaurent::one_minus_uv_inverse()));
        assert_eq!(b.entry(3, 3), Some(&bi(&[((0, -1), 1)]))); // v^-1
        // Permutation part: -1 at (i, π(i)).
        let minus_one = -BiLaurent::one();
        for (row, col) in [(0, 5), (1, 3), (2, 1), (3, 4), (4, 0), (5, 2)] {
            assert_eq!(b.entry(row, col), Some(&minus_one), "({row},{col})");
        }
    }

    #[test]
    fn determinant_of_mixed3_matches_closed_form() {
        // (1 - u)(1 - v)(1 - uv) u^-1 v^-1
        let expected = (&(&bi(&[((0, 0), 1), ((1, 0), -1)]) * &bi(&[((0, 0), 1), ((0, 1), -1)]))
            * &BiLaurent::one_minus_uv())
            .mul_monomial(-1, -1);
        assert_eq!(build_matrix(&mixed3()).determinant(), expected);
    }

    #[test]
    fn positive_curl_merges_to_special_entry_and_vanishes() {
        let d = GaussDiagram::parse("O1+U1+").unwrap();
        let b = build_matrix(&d);
        // 1 - (uv)^-1 from the block and -1 from π merge to -(uv)^-1.
        assert_eq!(b.entry(0, 1), Some(&bi(&[((-1, -1), -1)])));
        assert_eq!(b.entry(1, 0), Some(&(-BiLaurent::one())));
        assert!(b.determinant().is_zero());
    }

    #[test]
    fn negative_curl_merges_to_special_entry_and_vanishes() {
        let d = GaussDiagram::parse("O1-U1-").unwrap();
        let b = build_matrix(&d);
        // 1 - uv and -1 merge to -uv.
        assert_eq!(b.entry(1, 0), Some(&bi(&[((1, 1), -1)])));
        assert!(b.determinant().is_zero());
    }

    #[test]
    fn suite_of_virtual_trefoil() {
        let d = GaussDiagram::parse("O1+O2+U1+U2+").unwrap();
        let r = alexander_suite(&d).unwrap();
        let raw = bi(&[
            ((-2, -2), 1),
            ((-1, 0), 1),
            ((0, -1), 1),
            ((-2, -1), -1),
            ((-1, -2), -1),
            ((0, 0), -1),
        ]);
        assert_eq!(r.delta0_raw, raw);
        assert_eq!(r.delta0, raw.mul_monomial(2, 2));
        // Δ0' raw = (1 - u)(1 - v) u^-2 v^-2
        let prime = (&bi(&[((0, 0), 1), ((1, 0), -1)]) * &bi(&[((0, 0), 1), ((0, 1), -1)]))
            .mul_monomial(-2, -2);
        assert_eq!(r.delta0_prime_raw, prime);
        // Φ = (1 - u - v + 2uv - u^2 v) u^-2 v^-2
        let phi = bi(&[((0, 0), 1), ((1, 0), -1), ((0, 1), -1), ((1, 1), 2), ((2, 1), -1)])
            .mul_monomial(-2, -2);
        assert_eq!(r.phi, phi);
        assert_eq!(r.delta0_bar, BiLaurent::one());
    }

    #[test]
    fn suite_of_empty_diagram_is_zero() {
        let r = alexander_suite(&GaussDiagram::empty()).unwrap();
        assert!(r.delta0_raw.is_zero());
        assert!(r.delta0.is_zero());
        assert!(r.phi.is_zero());
    }

    #[test]
    fn determinant_of_empty_matrix_is_one() {
        assert_eq!(PolyMatrix::new(0).determinant(), BiLaurent::one());
    }

    #[test]
    fn determinant_matches_dense_two_by_two() {
        let mut m = PolyMatrix::new(2);
        let a = bi(&[((1, 0), 1)]);
        let b2 = bi(&[((0, 1), 1)]);
        let c = bi(&[((0, 0), 3)]);
        let d = bi(&[((1, 1), 1), ((0, 0), -1)]);
        m.add_to(0, 0, &a);
        m.add_to(0, 1, &b2);
        m.add_to(1, 0, &c);
        m.add_to(1, 1, &d);
        assert_eq!(m.determinant(), &(&a * &d) - &(&b2 * &c));
    }
}
