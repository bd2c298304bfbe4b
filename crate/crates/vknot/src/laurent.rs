//! Sparse Laurent polynomials with exact arbitrary-precision integer
//! coefficients.
//!
//! Two concrete types are provided: [`BiLaurent`] over `Z[u^±1, v^±1]` and
//! [`UniLaurent`] over `Z[t^±1]`.  Both store their terms in a `BTreeMap`
//! from exponents to coefficients.  The representation invariant, maintained
//! by every constructor and operation, is that no stored coefficient is zero;
//! the zero polynomial is the empty map.  Equality is therefore structural.
//!
//! Exact division is performed by shifting both operands into the ordinary
//! polynomial ring (so that all exponents are non-negative), running
//! monomial-order division — graded-lexicographic with `u > v` for the
//! bivariate case — and shifting the quotient back.  A non-zero remainder is
//! reported as [`LaurentError::NotDivisible`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors arising from Laurent polynomial arithmetic.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LaurentError {
    /// Exact division was requested but the divisor does not divide the
    /// dividend over the integers.
    #[error("polynomial is not exactly divisible by the divisor")]
    NotDivisible,
    /// Division by the zero polynomial.
    #[error("division by the zero polynomial")]
    DivisionByZero,
    /// Evaluation would raise zero to a negative power.
    #[error("evaluation substitutes zero into a negative exponent")]
    ZeroToNegativePower,
    /// A polynomial string could not be parsed.
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

fn add_term<K: Ord + Copy>(map: &mut BTreeMap<K, BigInt>, key: K, coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    let entry = map.entry(key).or_insert_with(BigInt::zero);
    *entry += coeff;
    if entry.is_zero() {
        map.remove(&key);
    }
}

// ===========================================================================
// Bivariate Laurent polynomials
// ===========================================================================

/// A Laurent polynomial in `u` and `v` with `BigInt` coefficients.
///
/// Terms are keyed by the exponent pair `(i, j)` of `u^i v^j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiLaurent {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BiLaurent {
    // ---- Constructors ----

    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    /// The single term `c * u^i * v^j` (zero when `c = 0`).
    pub fn monomial(i: i64, j: i64, c: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, (i, j), c.into());
        Self { terms }
    }

    /// Builds a polynomial from `((i, j), c)` pairs, summing duplicates.
    pub fn from_terms<C: Into<BigInt>>(pairs: impl IntoIterator<Item = ((i64, i64), C)>) -> Self {
        let mut terms = BTreeMap::new();
        for ((i, j), c) in pairs {
            add_term(&mut terms, (i, j), c.into());
        }
        Self { terms }
    }

    /// The binomial `1 - uv`, ubiquitous in the invariants computed here.
    pub fn one_minus_uv() -> Self {
        Self::from_terms([((0, 0), 1), ((1, 1), -1)])
    }

    /// The binomial `1 - (uv)^-1`.
    pub fn one_minus_uv_inverse() -> Self {
        Self::from_terms([((0, 0), 1), ((-1, -1), -1)])
    }

    /// The monomial `(uv)^k`.
    pub fn uv_pow(k: i64) -> Self {
        Self::monomial(k, k, 1)
    }

    // ---- Accessors ----

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (non-zero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `u^i v^j` (zero when absent).
    pub fn coeff(&self, i: i64, j: i64) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterates over terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }

    /// Smallest exponent of `u` appearing, or `None` for zero.
    pub fn min_u_exp(&self) -> Option<i64> {
        self.terms.keys().map(|&(i, _)| i).min()
    }

    /// Smallest exponent of `v` appearing, or `None` for zero.
    pub fn min_v_exp(&self) -> Option<i64> {
        self.terms.keys().map(|&(_, j)| j).min()
    }

    // ---- Ring operations beyond the std::ops impls ----

    /// Multiplies by the integer `c`.
    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, a)| (k, a * &c)).collect(),
        }
    }

    /// Multiplies by the monomial `u^i v^j`.
    pub fn mul_monomial(&self, i: i64, j: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + i, b + j), c.clone()))
                .collect(),
        }
    }

    /// Raises to the power `e` by repeated multiplication.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    // ---- Substitutions ----

    /// Substitutes `u = t, v = t^-1`, collapsing to a univariate polynomial.
    pub fn substitute_diag(&self) -> UniLaurent {
        let mut terms = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            add_term(&mut terms, i - j, c.clone());
        }
        UniLaurent { terms }
    }

    /// The image under `u -> v, v -> u`.
    pub fn swap_vars(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// The image under `u -> u^-1, v -> v^-1`.
    pub fn invert_vars(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(i, j), c)| ((-i, -j), c.clone())).collect(),
        }
    }

    /// Exact evaluation at a rational point.
    ///
    /// Fails if a coordinate is zero while the corresponding variable occurs
    /// with a negative exponent.
    pub fn eval(&self, u: &BigRational, v: &BigRational) -> Result<BigRational, LaurentError> {
        let mut acc = BigRational::zero();
        for (&(i, j), c) in &self.terms {
            let term = pow_rational(u, i)? * pow_rational(v, j)? * BigRational::from(c.clone());
            acc += term;
        }
        Ok(acc)
    }

    /// Convenience form of [`eval`](Self::eval) at integer coordinates.
    pub fn eval_int(&self, u: i64, v: i64) -> Result<BigRational, LaurentError> {
        self.eval(
            &BigRational::from(BigInt::from(u)),
            &BigRational::from(BigInt::from(v)),
        )
    }

    // ---- Normalization and division ----

    /// Multiplies by the power of `uv` that brings the minimum `u`-exponent
    /// to zero.  The zero polynomial is returned unchanged.
    pub fn normalized(&self) -> Self {
        match self.min_u_exp() {
            None => Self::zero(),
            Some(m) => self.mul_monomial(-m, -m),
        }
    }

    /// Tests whether `self == (uv)^k * other` for some integer `k`, returning
    /// the witnessing `k`.  Both zero yields `Some(0)`.
    pub fn eq_up_to_uv_power(&self, other: &Self) -> Option<i64> {
        match (self.min_u_exp(), other.min_u_exp()) {
            (None, None) => Some(0),
            (Some(a), Some(b)) => {
                let k = a - b;
                (*self == other.mul_monomial(k, k)).then_some(k)
            }
            _ => None,
        }
    }

    /// Exact division, failing unless the divisor divides `self` over
    /// `Z[u^±1, v^±1]`.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self, LaurentError> {
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Shift both operands into Z[u, v].
        let (pu, pv) = (self.min_u_exp().unwrap(), self.min_v_exp().unwrap());
        let (qu, qv) = (divisor.min_u_exp().unwrap(), divisor.min_v_exp().unwrap());
        let f = self.mul_monomial(-pu, -pv);
        let g = divisor.mul_monomial(-qu, -qv);
        let q = poly_divide_exact(&f, &g)?;
        Ok(q.mul_monomial(pu - qu, pv - qv))
    }

    /// Renders the polynomial; see the `Display` impl.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// Graded-lexicographic comparison with `u > v`: first by total degree,
/// ties broken by the `u`-exponent.
fn grlex_key(&(i, j): &(i64, i64)) -> (i64, i64) {
    (i + j, i)
}

/// Division in `Z[u, v]` under graded-lex order, requiring zero remainder.
///
/// For an exact multiple the leading term of the running dividend is always
/// divisible by the leading term of the divisor, so a failed step proves
/// indivisibility.
fn poly_divide_exact(f: &BiLaurent, g: &BiLaurent) -> Result<BiLaurent, LaurentError> {
    let (&glead, gc) = g
        .terms
        .iter()
        .max_by_key(|(k, _)| grlex_key(k))
        .expect("divisor is non-zero");
    let mut rem = f.clone();
    let mut quot = BiLaurent::zero();
    while !rem.is_zero() {
        let (&flead, fc) = rem
            .terms
            .iter()
            .max_by_key(|(k, _)| grlex_key(k))
            .expect("loop invariant: rem is non-zero");
        let di = flead.0 - glead.0;
        let dj = flead.1 - glead.1;
        if di < 0 || dj < 0 {
            return Err(LaurentError::NotDivisible);
        }
        let (q, r) = fc.div_rem(gc);
        if !r.is_zero() {
            return Err(LaurentError::NotDivisible);
        }
        let t = BiLaurent::monomial(di, dj, q);
        rem = &rem - &(&t * g);
        quot = &quot + &t;
    }
    Ok(quot)
}

fn pow_rational(base: &BigRational, e: i64) -> Result<BigRational, LaurentError> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if base.is_zero() {
        return if e > 0 {
            Ok(BigRational::zero())
        } else {
            Err(LaurentError::ZeroToNegativePower)
        };
    }
    let mut b = if e > 0 { base.clone() } else { base.recip() };
    let mut n = e.unsigned_abs();
    let mut acc = BigRational::one();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        n >>= 1;
    }
    Ok(acc)
}

// ---- std::ops for BiLaurent (reference-based, with owned conveniences) ----

impl std::ops::Add for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        let mut terms = self.terms.clone();
        for (&k, c) in &rhs.terms {
            add_term(&mut terms, k, c.clone());
        }
        BiLaurent { terms }
    }
}

impl std::ops::Sub for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        let mut terms = self.terms.clone();
        for (&k, c) in &rhs.terms {
            add_term(&mut terms, k, -c.clone());
        }
        BiLaurent { terms }
    }
}

impl std::ops::Mul for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        let mut terms = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &rhs.terms {
                add_term(&mut terms, (a + x, b + y), c * d);
            }
        }
        BiLaurent { terms }
    }
}

impl std::ops::Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

impl std::ops::Add for BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: BiLaurent) -> BiLaurent {
        &self + &rhs
    }
}

impl std::ops::Sub for BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: BiLaurent) -> BiLaurent {
        &self - &rhs
    }
}

impl std::ops::Mul for BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: BiLaurent) -> BiLaurent {
        &self * &rhs
    }
}

impl std::ops::Neg for BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        -&self
    }
}

impl fmt::Display for BiLaurent {
    /// Terms in ascending `(i, j)` order.  Each term is rendered as
    /// `c*u^i*v^j` with the conventions: a unit coefficient is elided unless
    /// the term is constant, a zero exponent suppresses its variable, and an
    /// exponent of one is written as the bare variable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_terms(
            f,
            self.terms.iter().map(|(&(i, j), c)| {
                let mut vars = String::new();
                push_var(&mut vars, "u", i);
                push_var(&mut vars, "v", j);
                (c.clone(), vars)
            }),
        )
    }
}

// ===========================================================================
// Univariate Laurent polynomials
// ===========================================================================

/// A Laurent polynomial in `t` with `BigInt` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniLaurent {
    terms: BTreeMap<i64, BigInt>,
}

/// Summary statistics of a univariate Laurent polynomial, used by the
/// crossing-number and forbidden-number bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    /// Number of non-zero terms.
    pub term_count: usize,
    /// Smallest exponent present, `None` for the zero polynomial.
    pub min_exp: Option<i64>,
    /// Largest exponent present, `None` for the zero polynomial.
    pub max_exp: Option<i64>,
    /// `max_exp - min_exp`, or 0 for the zero polynomial.
    pub width: i64,
    /// Sum of the absolute values of all coefficients.
    pub coeff_abs_sum: BigInt,
}

impl UniLaurent {
    // ---- Constructors ----

    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// The single term `c * t^i`.
    pub fn monomial(i: i64, c: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, i, c.into());
        Self { terms }
    }

    /// Builds a polynomial from `(i, c)` pairs, summing duplicates.
    pub fn from_terms<C: Into<BigInt>>(pairs: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut terms = BTreeMap::new();
        for (i, c) in pairs {
            add_term(&mut terms, i, c.into());
        }
        Self { terms }
    }

    /// The binomial `t - 1`.
    pub fn t_minus_one() -> Self {
        Self::from_terms([(1, 1), (0, -1)])
    }

    // ---- Accessors ----

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^i` (zero when absent).
    pub fn coeff(&self, i: i64) -> BigInt {
        self.terms.get(&i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterates over terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    /// Exponents whose coefficients differ between `self` and `other`.
    pub fn differing_exponents(&self, other: &Self) -> Vec<i64> {
        let diff = self - other;
        diff.terms.keys().copied().collect()
    }

    /// Shape statistics (term count, support bounds, width, coefficient sum).
    pub fn shape(&self) -> Shape {
        let min_exp = self.terms.keys().next().copied();
        let max_exp = self.terms.keys().next_back().copied();
        Shape {
            term_count: self.terms.len(),
            min_exp,
            max_exp,
            width: match (min_exp, max_exp) {
                (Some(a), Some(b)) => b - a,
                _ => 0,
            },
            coeff_abs_sum: self.terms.values().map(|c| c.abs()).sum(),
        }
    }

    // ---- Ring operations ----

    /// Multiplies by the integer `c`.
    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, a)| (k, a * &c)).collect(),
        }
    }

    /// Multiplies by the monomial `t^i`.
    pub fn mul_monomial(&self, i: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k + i, c.clone())).collect(),
        }
    }

    // ---- Substitutions ----

    /// The image under `t -> t^-1`.
    pub fn reverse_t(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Injects into `Z[u^±1, v^±1]` by `t^n -> u^n`.
    pub fn inject_u(&self) -> BiLaurent {
        BiLaurent::from_terms(self.terms.iter().map(|(&n, c)| ((n, 0), c.clone())))
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, t: &BigRational) -> Result<BigRational, LaurentError> {
        let mut acc = BigRational::zero();
        for (&i, c) in &self.terms {
            acc += pow_rational(t, i)? * BigRational::from(c.clone());
        }
        Ok(acc)
    }

    /// Convenience form of [`eval`](Self::eval) at an integer point.
    pub fn eval_int(&self, t: i64) -> Result<BigRational, LaurentError> {
        self.eval(&BigRational::from(BigInt::from(t)))
    }

    // ---- Division ----

    /// Exact division, failing unless the divisor divides `self` over
    /// `Z[t^±1]`.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self, LaurentError> {
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let pm = *self.terms.keys().next().unwrap();
        let qm = *divisor.terms.keys().next().unwrap();
        let mut rem = self.mul_monomial(-pm);
        let g = divisor.mul_monomial(-qm);
        let (&glead, gc) = g.terms.iter().next_back().unwrap();
        let mut quot = UniLaurent::zero();
        while !rem.is_zero() {
            let (&flead, fc) = rem.terms.iter().next_back().unwrap();
            if flead < glead {
                return Err(LaurentError::NotDivisible);
            }
            let (q, r) = fc.div_rem(gc);
            if !r.is_zero() {
                return Err(LaurentError::NotDivisible);
            }
            let t = UniLaurent::monomial(flead - glead, q);
            rem = &rem - &(&t * &g);
            quot = &quot + &t;
        }
        Ok(quot.mul_monomial(pm - qm))
    }

    // ---- Parsing and rendering ----

    /// Parses the rendered form back into a polynomial.
    ///
    /// Whitespace is ignored, so both `-2 + t^-1 + t` and `-2+t^-1+t` are
    /// accepted, as are terms with or without an explicit `*`.
    pub fn parse(input: &str) -> Result<Self, LaurentError> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(LaurentError::Parse("empty input".into()));
        }
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let mut poly = UniLaurent::zero();
        while pos < bytes.len() {
            let mut sign = 1i64;
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    sign = -1;
                    pos += 1;
                }
                _ if pos == 0 => {}
                other => {
                    return Err(LaurentError::Parse(format!(
                        "expected '+' or '-' before term at byte {pos}, found '{}'",
                        other as char
                    )))
                }
            }
            let digits_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: BigInt = if digits_start == pos {
                BigInt::one()
            } else {
                s[digits_start..pos].parse().map_err(|_| {
                    LaurentError::Parse(format!("bad coefficient '{}'", &s[digits_start..pos]))
                })?
            };
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
            }
            let exponent: i64 = if pos < bytes.len() && bytes[pos] == b't' {
                pos += 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let exp_start = pos;
                    if pos < bytes.len() && bytes[pos] == b'-' {
                        pos += 1;
                    }
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    s[exp_start..pos].parse().map_err(|_| {
                        LaurentError::Parse(format!("bad exponent '{}'", &s[exp_start..pos]))
                    })?
                } else {
                    1
                }
            } else {
                if digits_start == pos {
                    return Err(LaurentError::Parse(format!(
                        "expected coefficient or 't' at byte {pos}"
                    )));
                }
                0
            };
            poly = &poly + &UniLaurent::monomial(exponent, coeff * sign);
        }
        Ok(poly)
    }

    /// Renders the polynomial; see the `Display` impl.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

// ---- std::ops for UniLaurent ----

impl std::ops::Add for &UniLaurent {
    type Output = UniLaurent;
    fn add(self, rhs: &UniLaurent) -> UniLaurent {
        let mut terms = self.terms.clone();
        for (&k, c) in &rhs.terms {
            add_term(&mut terms, k, c.clone());
        }
        UniLaurent { terms }
    }
}

impl std::ops::Sub for &UniLaurent {
    type Output = UniLaurent;
    fn sub(self, rhs: &UniLaurent) -> UniLaurent {
        let mut terms = self.terms.clone();
        for (&k, c) in &rhs.terms {
            add_term(&mut terms, k, -c.clone());
        }
        UniLaurent { terms }
    }
}

impl std::ops::Mul for &UniLaurent {
    type Output = UniLaurent;
    fn mul(self, rhs: &UniLaurent) -> UniLaurent {
        let mut terms = BTreeMap::new();
        for (&a, c) in &self.terms {
            for (&x, d) in &rhs.terms {
                add_term(&mut terms, a + x, c * d);
            }
        }
        UniLaurent { terms }
    }
}

impl std::ops::Neg for &UniLaurent {
    type Output = UniLaurent;
    fn neg(self) -> UniLaurent {
        UniLaurent {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

impl std::ops::Add for UniLaurent {
    type Output = UniLaurent;
    fn add(self, rhs: UniLaurent) -> UniLaurent {
        &self + &rhs
    }
}

impl std::ops::Sub for UniLaurent {
    type Output = UniLaurent;
    fn sub(self, rhs: UniLaurent) -> UniLaurent {
        &self - &rhs
    }
}

impl std::ops::Mul for UniLaurent {
    type Output = UniLaurent;
    fn mul(self, rhs: UniLaurent) -> UniLaurent {
        &self * &rhs
    }
}

impl std::ops::Neg for UniLaurent {
    type Output = UniLaurent;
    fn neg(self) -> UniLaurent {
        -&self
    }
}

impl fmt::Display for UniLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_terms(
            f,
            self.terms.iter().map(|(&i, c)| {
                let mut vars = String::new();
                push_var(&mut vars, "t", i);
                (c.clone(), vars)
            }),
        )
    }
}

// ---- Shared rendering helpers ----

fn push_var(out: &mut String, name: &str, exp: i64) {
    match exp {
        0 => {}
        1 => {
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(name);
        }
        e => {
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(name);
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

fn render_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (BigInt, String)>,
) -> fmt::Result {
    let mut first = true;
    for (coeff, vars) in terms {
        let negative = coeff.is_negative();
        let mag = coeff.abs();
        if first {
            if negative {
                write!(f, "-")?;
            }
            first = false;
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if vars.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{vars}")?;
        } else {
            write!(f, "{mag}*{vars}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(pairs: &[((i64, i64), i64)]) -> BiLaurent {
        BiLaurent::from_terms(pairs.iter().copied())
    }

    fn uni(pairs: &[(i64, i64)]) -> UniLaurent {
        UniLaurent::from_terms(pairs.iter().copied())
    }

    #[test]
    fn zero_is_canonical() {
        let p = bi(&[((1, 2), 3)]);
        let q = bi(&[((1, 2), -3)]);
        assert!((&p + &q).is_zero());
        assert_eq!(&p + &q, BiLaurent::zero());
        assert_eq!(BiLaurent::monomial(5, 5, 0), BiLaurent::zero());
    }

    #[test]
    fn product_expands() {
        // (1 - u)(1 - v)(1 - uv) u^-1 v^-1
        let p = &(&bi(&[((0, 0), 1), ((1, 0), -1)]) * &bi(&[((0, 0), 1), ((0, 1), -1)]))
            * &BiLaurent::one_minus_uv();
        let p = p.mul_monomial(-1, -1);
        let expected = bi(&[
            ((-1, -1), 1),
            ((-1, 0), -1),
            ((0, -1), -1),
            ((1, 0), 1),
            ((0, 1), 1),
            ((1, 1), -1),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn divide_exact_recovers_factor() {
        let a = bi(&[((0, 0), 1), ((1, 0), -1)]).mul_monomial(-1, 0);
        let b = BiLaurent::one_minus_uv();
        let prod = &a * &b;
        assert_eq!(prod.divide_exact(&b).unwrap(), a);
        assert_eq!(prod.divide_exact(&a).unwrap(), b);
    }

    #[test]
    fn divide_exact_rejects_non_multiple() {
        let p = bi(&[((0, 0), 1), ((1, 0), 1)]);
        assert_eq!(
            p.divide_exact(&BiLaurent::one_minus_uv()),
            Err(LaurentError::NotDivisible)
        );
        assert_eq!(
            p.divide_exact(&BiLaurent::zero()),
            Err(LaurentError::DivisionByZero)
        );
    }

    #[test]
    fn divide_exact_integer_coefficients_matter() {
        // 2 + 2u is divisible by 2 but u + 1 is not divisible by 2 over Z.
        let two = BiLaurent::monomial(0, 0, 2);
        assert_eq!(
            bi(&[((0, 0), 2), ((1, 0), 2)]).divide_exact(&two).unwrap(),
            bi(&[((0, 0), 1), ((1, 0), 1)])
        );
        assert_eq!(
            bi(&[((0, 0), 1), ((1, 0), 1)]).divide_exact(&two),
            Err(LaurentError::NotDivisible)
        );
    }

    #[test]
    fn zero_divided_by_anything_is_zero() {
        assert_eq!(
            BiLaurent::zero().divide_exact(&BiLaurent::one_minus_uv()).unwrap(),
            BiLaurent::zero()
        );
    }

    #[test]
    fn substitute_diag_collapses_uv() {
        // 1 - uv vanishes on the diagonal u = t, v = t^-1.
        assert!(BiLaurent::one_minus_uv().substitute_diag().is_zero());
        let p = bi(&[((2, 1), 3), ((0, 1), 1)]);
        assert_eq!(p.substitute_diag(), uni(&[(1, 3), (-1, 1)]));
    }

    #[test]
    fn eval_exact_rational() {
        // u^-1 v at (2, 3) = 3/2.
        let p = BiLaurent::monomial(-1, 1, 1);
        let r = p.eval_int(2, 3).unwrap();
        assert_eq!(r, BigRational::new(BigInt::from(3), BigInt::from(2)));
        assert_eq!(
            p.eval_int(0, 1),
            Err(LaurentError::ZeroToNegativePower)
        );
        // Non-negative exponents evaluate at zero without error.
        assert_eq!(
            BiLaurent::monomial(2, 0, 5).eval_int(0, 0).unwrap(),
            BigRational::zero()
        );
    }

    #[test]
    fn normalized_shifts_min_u_to_zero() {
        let p = bi(&[((-2, 1), 1), ((1, -3), 4)]);
        let n = p.normalized();
        assert_eq!(n.min_u_exp(), Some(0));
        assert_eq!(n, p.mul_monomial(2, 2));
        assert_eq!(BiLaurent::zero().normalized(), BiLaurent::zero());
    }

    #[test]
    fn eq_up_to_uv_power_finds_shift() {
        let p = bi(&[((0, 0), 1), ((1, 2), -2)]);
        let q = p.mul_monomial(3, 3);
        assert_eq!(q.eq_up_to_uv_power(&p), Some(3));
        assert_eq!(p.eq_up_to_uv_power(&q), Some(-3));
        assert_eq!(p.eq_up_to_uv_power(&p.mul_monomial(1, 0)), None);
        assert_eq!(BiLaurent::zero().eq_up_to_uv_power(&BiLaurent::zero()), Some(0));
        assert_eq!(p.eq_up_to_uv_power(&BiLaurent::zero()), None);
    }

    #[test]
    fn uni_divide_exact() {
        let w = uni(&[(0, -2), (-1, 1), (1, 1)]); // t^-1 - 2 + t
        let q = w.divide_exact(&UniLaurent::t_minus_one()).unwrap();
        assert_eq!(&q * &UniLaurent::t_minus_one(), w);
        assert_eq!(q, uni(&[(-1, -1), (0, 1)])); // 1 - t^-1
        // t + 1 is not divisible by t - 1.
        assert_eq!(
            uni(&[(1, 1), (0, 1)]).divide_exact(&UniLaurent::t_minus_one()),
            Err(LaurentError::NotDivisible)
        );
    }

    #[test]
    fn shape_statistics() {
        let w = uni(&[(0, -2), (-1, 1), (1, 1)]);
        let s = w.shape();
        assert_eq!(s.term_count, 3);
        assert_eq!(s.min_exp, Some(-1));
        assert_eq!(s.max_exp, Some(1));
        assert_eq!(s.width, 2);
        assert_eq!(s.coeff_abs_sum, BigInt::from(4));
        let z = UniLaurent::zero().shape();
        assert_eq!(z.term_count, 0);
        assert_eq!(z.width, 0);
        assert_eq!(z.min_exp, None);
        assert_eq!(z.max_exp, None);
    }

    #[test]
    fn render_uni() {
        assert_eq!(uni(&[(0, -2), (-1, 1), (1, 1)]).render(), "t^-1 - 2 + t");
        assert_eq!(UniLaurent::zero().render(), "0");
        assert_eq!(uni(&[(0, 5)]).render(), "5");
        assert_eq!(uni(&[(1, -1)]).render(), "-t");
        assert_eq!(uni(&[(-2, 3), (2, -3)]).render(), "3*t^-2 - 3*t^2");
    }

    #[test]
    fn render_bi() {
        let p = bi(&[((0, 0), 2), ((1, 1), -1), ((-1, -1), -1)]);
        assert_eq!(p.render(), "-u^-1*v^-1 + 2 - u*v");
        assert_eq!(BiLaurent::one().render(), "1");
        assert_eq!(BiLaurent::monomial(1, 0, 1).render(), "u");
        assert_eq!(BiLaurent::monomial(0, -1, -2).render(), "-2*v^-1");
    }

    #[test]
    fn parse_round_trip() {
        for text in [
            "-2 + t^-1 + t",
            "0",
            "2+t^-2-2*t^-1-2*t+t^2",
            "1 - t^-2 + t^-1 - t",
            "7",
            "-t^4",
            "t",
        ] {
            let p = UniLaurent::parse(text).unwrap();
            let q = UniLaurent::parse(&p.render()).unwrap();
            assert_eq!(p, q, "round trip failed for {text}");
        }
        assert_eq!(
            UniLaurent::parse("2+t^-2-2*t^-1-2*t+t^2").unwrap(),
            uni(&[(0, 2), (-2, 1), (-1, -2), (1, -2), (2, 1)])
        );
        // Implicit '*' is accepted.
        assert_eq!(UniLaurent::parse("3t^2").unwrap(), uni(&[(2, 3)]));
        assert!(UniLaurent::parse("").is_err());
        assert!(UniLaurent::parse("t^").is_err());
        assert!(UniLaurent::parse("2x").is_err());
    }
}
