//! Consistency checks and seeded random sweeps over every invariant in the
//! crate.
//!
//! [`check_diagram`] runs all structural identities on a single diagram,
//! reporting one named result per identity; [`invariant_sweep`] runs it over
//! seeded random diagrams, and [`move_sweep`] exercises the move layer's
//! invariance and delta laws.  The CLI's `verify` and `selftest` subcommands
//! and the acceptance tests are thin wrappers over these.

use crate::alexander::{alexander_suite, build_matrix};
use crate::bounds::forbidden_lower_bound;
use crate::configurations::{
    brute_force_det, classify_pair, contribution, delta0_via_configurations, f_polynomials,
    grouped_permutation_sums, is_alternating, PairClass, MAX_ORACLE_CHORDS, MAX_ORACLE_MATRIX,
};
use crate::gauss::GaussDiagram;
use crate::laurent::{BiLaurent, UniLaurent};
use crate::moves::{
    apply_forbidden, apply_r3, forbidden_w_delta, insert_r1, insert_r2, plant_r3_site, R1Variant,
    R3Pattern,
};
use crate::writhe::{bridge_check, v_polynomial, writhe_invariants};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Outcome of one named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Not run, e.g. an exponential oracle guarded by a size limit.
    Skipped,
}

/// One named consistency check with its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    /// Human-readable supporting detail (shift witnesses, mismatched values).
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            status: CheckStatus::Pass,
            detail: detail.into(),
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            status: CheckStatus::Fail,
            detail: detail.into(),
        }
    }

    fn skip(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            status: CheckStatus::Skipped,
            detail: detail.into(),
        }
    }

    fn of(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Self::pass(name, detail)
        } else {
            Self::fail(name, detail)
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skipped",
        };
        if self.detail.is_empty() {
            write!(f, "{}: {}", self.name, status)
        } else {
            write!(f, "{}: {} ({})", self.name, status, self.detail)
        }
    }
}

/// Runs every structural identity on one diagram.
///
/// The checks, in order:
///
/// - `alexander-divisibility`: `(1−u)(1−v)(1−uv)` divides the raw
///   determinant polynomial;
/// - `configuration-oracle`: the alternating-configuration reconstruction
///   equals the determinant (size-guarded);
/// - `determinant-oracle`: the permutation-expansion determinant agrees with
///   the Laplace pipeline (size-guarded);
/// - `grouped-expansion`: grouping the permutation expansion by chord subset
///   gives the closed-form contribution on alternating subsets and zero on
///   non-alternating ones (size-guarded);
/// - `f-expansion`: the determinant minus
///   `f₀ + (1−uv)f₁ + (1−uv)²f₂` is divisible by `(1−uv)³`;
/// - `writhe-sum-zero`: the writhe polynomial vanishes at `t = 1`;
/// - `writhe-divisibility`: `(t−1)(t⁻¹−1)` divides the writhe polynomial;
/// - `odd-writhe-evaluation`: the odd writhe equals `2Δ̄₀(−1,−1)`;
/// - `bridge-writhe` / `bridge-second-order`: the substitution bridges from
///   the determinant pipeline to `W` and to the second-order representative;
/// - `phi-reconstruction`: `Φ·(1−uv) = Δ₀′ + W(u)`;
/// - `symmetry-switch` / `symmetry-reverse`: the respective determinant
///   identities hold up to a power of `uv`;
/// - `symmetry-mirror`: the mirror identity holds exactly.
pub fn check_diagram(d: &GaussDiagram) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let n = d.degree();

    let suite = match alexander_suite(d) {
        Ok(s) => s,
        Err(e) => {
            out.push(CheckResult::fail(
                "alexander-suite",
                format!("pipeline error: {e}"),
            ));
            return out;
        }
    };
    let inv = writhe_invariants(d);

    let divisor = &(&BiLaurent::from_terms([((0, 0), 1), ((1, 0), -1)])
        * &BiLaurent::from_terms([((0, 0), 1), ((0, 1), -1)]))
        * &BiLaurent::one_minus_uv();
    out.push(match suite.delta0_raw.divide_exact(&divisor) {
        Ok(_) => CheckResult::pass("alexander-divisibility", ""),
        Err(e) => CheckResult::fail("alexander-divisibility", e.to_string()),
    });

    if n <= MAX_ORACLE_CHORDS {
        let oracle = delta0_via_configurations(d).expect("within size limit");
        out.push(CheckResult::of(
            "configuration-oracle",
            oracle == suite.delta0_raw,
            "",
        ));
    } else {
        out.push(CheckResult::skip("configuration-oracle", "size limit"));
    }

    if n >= 1 && 2 * n <= MAX_ORACLE_MATRIX {
        let det = brute_force_det(&build_matrix(d)).expect("within size limit");
        out.push(CheckResult::of(
            "determinant-oracle",
            det == suite.delta0_raw,
            "",
        ));

        let groups = grouped_permutation_sums(d).expect("within size limit");
        let mut ok = true;
        let mut detail = String::new();
        for (subset, value) in &groups {
            let expected_ok = if subset.is_empty() {
                *value == BiLaurent::uv_pow(-d.writhe()) - BiLaurent::one()
            } else if is_alternating(d, subset).expect("chords exist") {
                *value == contribution(d, subset).expect("chords exist")
            } else {
                value.is_zero()
            };
            if !expected_ok {
                ok = false;
                detail = format!("subset {subset:?} has unexpected group sum {value}");
                break;
            }
        }
        out.push(CheckResult::of("grouped-expansion", ok, detail));
    } else {
        let why = if n == 0 { "empty diagram" } else { "size limit" };
        out.push(CheckResult::skip("determinant-oracle", why));
        out.push(CheckResult::skip("grouped-expansion", why));
    }

    let (f0, f1, f2) = f_polynomials(d);
    let omuv = BiLaurent::one_minus_uv();
    let truncated = f0 + &omuv * &f1 + &(&omuv * &omuv) * &f2;
    let cubed = &(&omuv * &omuv) * &omuv;
    out.push(
        match (&suite.delta0_raw - &truncated).divide_exact(&cubed) {
            Ok(_) => CheckResult::pass("f-expansion", ""),
            Err(e) => CheckResult::fail("f-expansion", e.to_string()),
        },
    );

    let at_one = inv.w.eval_int(1).expect("no zero powers");
    out.push(CheckResult::of(
        "writhe-sum-zero",
        at_one == BigRational::from(BigInt::from(0)),
        format!("W(1) = {at_one}"),
    ));

    let w_divisor = UniLaurent::from_terms([(1, -1), (0, 2), (-1, -1)]);
    out.push(match inv.w.divide_exact(&w_divisor) {
        Ok(_) => CheckResult::pass("writhe-divisibility", ""),
        Err(e) => CheckResult::fail("writhe-divisibility", e.to_string()),
    });

    let bar_eval = suite.delta0_bar.eval_int(-1, -1).expect("powers of -1");
    let doubled = bar_eval * BigRational::from(BigInt::from(2));
    out.push(CheckResult::of(
        "odd-writhe-evaluation",
        doubled == BigRational::from(BigInt::from(inv.odd_writhe)),
        format!("2·Δ̄₀(−1,−1) = {doubled}, odd writhe = {}", inv.odd_writhe),
    ));

    match bridge_check(d) {
        Ok(b) => {
            out.push(CheckResult::of("bridge-writhe", b.w_ok, ""));
            out.push(CheckResult::of("bridge-second-order", b.v_ok, ""));
        }
        Err(e) => {
            out.push(CheckResult::fail("bridge-writhe", e.to_string()));
            out.push(CheckResult::fail("bridge-second-order", e.to_string()));
        }
    }

    out.push(CheckResult::of(
        "phi-reconstruction",
        &suite.phi * &omuv == &suite.delta0_prime_raw + &inv.w.inject_u(),
        "",
    ));

    let switched = alexander_suite(&d.switch_all())
        .expect("switching preserves validity")
        .delta0_raw;
    out.push(match switched.eq_up_to_uv_power(&-suite.delta0_raw.swap_vars()) {
        Some(k) => CheckResult::pass("symmetry-switch", format!("shift (uv)^{k}")),
        None => CheckResult::fail("symmetry-switch", "identity fails for every shift"),
    });

    let reversed = alexander_suite(&d.reverse())
        .expect("reversal preserves validity")
        .delta0_raw;
    out.push(
        match reversed.eq_up_to_uv_power(&-suite.delta0_raw.invert_vars()) {
            Some(k) => CheckResult::pass("symmetry-reverse", format!("shift (uv)^{k}")),
            None => CheckResult::fail("symmetry-reverse", "identity fails for every shift"),
        },
    );

    let mirrored = alexander_suite(&d.mirror())
        .expect("mirroring preserves validity")
        .delta0_raw;
    out.push(CheckResult::of(
        "symmetry-mirror",
        mirrored == suite.delta0_raw.invert_vars(),
        "",
    ));

    out
}

/// One failed check inside a sweep, with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailure {
    /// Gauss code of the offending diagram.
    pub code: String,
    /// Name of the failed check.
    pub check: String,
    /// Supporting detail.
    pub detail: String,
}

/// Totals of a random sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    /// Diagrams generated.
    pub diagrams: usize,
    /// Individual checks executed (excluding skips).
    pub checks: usize,
    /// Every failure encountered.
    pub failures: Vec<CheckFailure>,
}

impl SweepReport {
    /// True when no check failed.
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, code: &str, results: Vec<CheckResult>) {
        for r in results {
            match r.status {
                CheckStatus::Pass => self.checks += 1,
                CheckStatus::Skipped => {}
                CheckStatus::Fail => {
                    self.checks += 1;
                    self.failures.push(CheckFailure {
                        code: code.to_string(),
                        check: r.name.to_string(),
                        detail: r.detail,
                    });
                }
            }
        }
    }

    fn note(&mut self, code: &str, check: &str, ok: bool, detail: impl Into<String>) {
        self.checks += 1;
        if !ok {
            self.failures.push(CheckFailure {
                code: code.to_string(),
                check: check.to_string(),
                detail: detail.into(),
            });
        }
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} diagrams, {} checks, {} failures",
            self.diagrams,
            self.checks,
            self.failures.len()
        )
    }
}

/// Runs [`check_diagram`] over `trials` seeded random diagrams with up to
/// `max_chords` chords each (degree sampled uniformly, including 0).
pub fn invariant_sweep(max_chords: usize, trials: usize, seed: u64) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SweepReport::default();
    for _ in 0..trials {
        let n = rng.random_range(0..=max_chords);
        let d = GaussDiagram::random_with(n, &mut rng);
        report.diagrams += 1;
        report.absorb(&d.to_code(), check_diagram(&d));
    }
    report
}

/// Exercises the move layer on seeded random diagrams: the three
/// invariance moves (adjacent-kink insertion, paired insertion, triangle
/// rearrangement), the `(uv)⁻¹`-shifting kink, and forbidden moves with
/// their exact writhe-polynomial delta law.
pub fn move_sweep(max_chords: usize, trials: usize, seed: u64) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SweepReport::default();
    for _ in 0..trials {
        let n = rng.random_range(0..=max_chords);
        let d = GaussDiagram::random_with(n, &mut rng);
        report.diagrams += 1;
        check_moves_on(&d, &mut rng, &mut report);
    }
    report
}

/// The exponents at which a forbidden move at `pos` may change the
/// second-order representative, provided neither moved chord alternates
/// with a third chord: the two moved chords' index exponents before and
/// after their shifts.
fn predicted_v_exponents(d: &GaussDiagram, pos: usize) -> Vec<i64> {
    let m = 2 * d.degree();
    let (a, _) = d.endpoint(pos).expect("valid position");
    let (b, _) = d.endpoint((pos + 1) % m).expect("valid position");
    let recs = d.all_indices();
    let (e1, i1) = (recs[a - 1].sign, recs[a - 1].ind);
    let (e2, i2) = (recs[b - 1].sign, recs[b - 1].ind);
    vec![i1, i1 + e2, i2, i2 - e1]
}

/// True when neither endpoint-owning chord at `pos`, `pos+1` forms an
/// alternating pair with any third chord.
fn moved_chords_isolated(d: &GaussDiagram, pos: usize) -> bool {
    let m = 2 * d.degree();
    let (a, _) = d.endpoint(pos).expect("valid position");
    let (b, _) = d.endpoint((pos + 1) % m).expect("valid position");
    (1..=d.degree())
        .filter(|&x| x != a && x != b)
        .all(|x| {
            classify_pair(d, a, x).expect("chords exist") == PairClass::NonAlternating
                && classify_pair(d, b, x).expect("chords exist") == PairClass::NonAlternating
        })
}

fn check_moves_on(d: &GaussDiagram, rng: &mut ChaCha8Rng, report: &mut SweepReport) {
    let code = d.to_code();
    let m = 2 * d.degree();
    let base = alexander_suite(d).expect("pipeline works");
    let inv = writhe_invariants(d);
    let v = v_polynomial(d);

    // adjacent kink, invariant variant
    let pos = rng.random_range(0..=m);
    let out = insert_r1(d, pos, R1Variant::Ia).expect("gap in range");
    let s = alexander_suite(&out).expect("pipeline works");
    let oi = writhe_invariants(&out);
    report.note(
        &code,
        "kink-ia-determinant",
        s.delta0_raw == base.delta0_raw,
        format!("insert at {pos}"),
    );
    report.note(
        &code,
        "kink-ia-writhe",
        oi.w == inv.w && oi.wn == inv.wn && oi.odd_writhe == inv.odd_writhe,
        format!("insert at {pos}"),
    );
    report.note(
        &code,
        "kink-ia-second-order",
        v_polynomial(&out).v_rep == v.v_rep,
        format!("insert at {pos}"),
    );

    // adjacent kink, unit-shifting variant
    let pos = rng.random_range(0..=m);
    let out = insert_r1(d, pos, R1Variant::Ib).expect("gap in range");
    let s = alexander_suite(&out).expect("pipeline works");
    let oi = writhe_invariants(&out);
    report.note(
        &code,
        "kink-ib-determinant",
        s.delta0_raw == &base.delta0_raw * &BiLaurent::monomial(-1, -1, 1),
        format!("insert at {pos}"),
    );
    report.note(
        &code,
        "kink-ib-writhe",
        oi.w == inv.w && oi.wn == inv.wn && oi.odd_writhe == inv.odd_writhe,
        format!("insert at {pos}"),
    );
    report.note(
        &code,
        "kink-ib-second-order",
        v_polynomial(&out).v_rep == &v.v_rep - &inv.w,
        format!("insert at {pos}"),
    );

    // paired insertion
    let (pa, pb) = (rng.random_range(0..=m), rng.random_range(0..=m));
    match insert_r2(d, pa, pb) {
        Ok(out) => {
            let s = alexander_suite(&out).expect("pipeline works");
            let oi = writhe_invariants(&out);
            report.note(
                &code,
                "paired-insertion",
                s.delta0_raw == base.delta0_raw
                    && oi.w == inv.w
                    && oi.wn == inv.wn
                    && v_polynomial(&out).v_rep == v.v_rep,
                format!("anchors {pa},{pb}"),
            );
        }
        Err(e) => report.note(&code, "paired-insertion", false, e.to_string()),
    }

    // triangle rearrangement on a planted site
    let mut gaps: Vec<usize> = (0..=m).collect();
    gaps.shuffle(rng);
    if gaps.len() >= 3 {
        let mut three = [gaps[0], gaps[1], gaps[2]];
        three.sort_unstable();
        let pattern = if rng.random_range(0..2) == 0 {
            R3Pattern::CreatePair
        } else {
            R3Pattern::RemovePair
        };
        match plant_r3_site(d, three, pattern) {
            Ok((planted, trio)) => match apply_r3(&planted, trio) {
                Ok(after) => {
                    let sb = alexander_suite(&planted).expect("pipeline works");
                    let sa = alexander_suite(&after).expect("pipeline works");
                    let ib = writhe_invariants(&planted);
                    let ia = writhe_invariants(&after);
                    report.note(
                        &code,
                        "triangle-move",
                        sb.delta0_raw == sa.delta0_raw
                            && ib.w == ia.w
                            && ib.wn == ia.wn
                            && v_polynomial(&planted).v_rep == v_polynomial(&after).v_rep,
                        format!("gaps {three:?}"),
                    );
                }
                Err(e) => report.note(
                    &code,
                    "triangle-move",
                    false,
                    format!("site not detected: {e}"),
                ),
            },
            Err(e) => report.note(&code, "triangle-move", false, format!("planting: {e}")),
        }
    }

    // forbidden move at a random valid position
    let mut positions: Vec<usize> = (0..m).collect();
    positions.shuffle(rng);
    for pos in positions {
        let Ok((moved, _)) = apply_forbidden(d, pos) else {
            continue;
        };
        let before_q = forbidden_lower_bound(&inv.w).expect("W divisible by t-1");
        let mi = writhe_invariants(&moved);
        let delta = &mi.w - &inv.w;
        report.note(
            &code,
            "forbidden-writhe-delta",
            delta == forbidden_w_delta(d, pos).expect("valid position"),
            format!("position {pos}"),
        );
        let after_q = forbidden_lower_bound(&mi.w).expect("W divisible by t-1");
        report.note(
            &code,
            "forbidden-bound-step",
            before_q.abs_diff(after_q) <= 1,
            format!("position {pos}: bound {before_q} -> {after_q}"),
        );
        if moved_chords_isolated(d, pos) {
            let predicted = predicted_v_exponents(d, pos);
            let changed = v.v_rep.differing_exponents(&v_polynomial(&moved).v_rep);
            report.note(
                &code,
                "forbidden-second-order-support",
                changed.iter().all(|e| predicted.contains(e)),
                format!("position {pos}: changed {changed:?} vs predicted {predicted:?}"),
            );
        }
        break;
    }
}
