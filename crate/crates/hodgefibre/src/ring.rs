//! Exact arithmetic in the ring of Laurent polynomials in `u`, `v` with
//! rational exponents and unbounded integer coefficients, together with a
//! text grammar (parser and canonical formatter).
//!
//! Values of [`BidegreePolynomial`] live in the direct limit of the rings
//! `Z[u^(1/n), v^(1/n), u^(-1), v^(-1)]` over all `n >= 1`: every term is an
//! integer coefficient on a monomial `u^a * v^b` with `a`, `b` exact reduced
//! rationals. No floating point is involved anywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exponent of one variable: an exact rational, kept reduced with positive
/// denominator by `num_rational`.
pub type Exponent = Rational64;

/// Convenience constructor for exponents.
pub fn exponent(numer: i64, denom: i64) -> Exponent {
    Rational64::new(numer, denom)
}

/// A finitely supported sum of terms `c * u^a * v^b` with integer `c` and
/// rational `a`, `b`.
///
/// Terms are stored in ascending lexicographic order on `(a, b)`, zero
/// coefficients are never kept, so structural equality is value equality and
/// formatting is canonical.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BidegreePolynomial {
    terms: BTreeMap<(Exponent, Exponent), BigInt>,
}

impl BidegreePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(Exponent::zero(), Exponent::zero(), c)
    }

    /// The single term `c * u^uexp * v^vexp` (zero `c` gives the zero
    /// polynomial).
    pub fn monomial(uexp: Exponent, vexp: Exponent, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((uexp, vexp), c);
        }
        Self { terms }
    }

    /// Accumulates an arbitrary term list into canonical form; repeated
    /// exponent pairs are summed and cancellations removed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Exponent, BigInt)>,
    {
        let mut out = Self::zero();
        for (uexp, vexp, c) in terms {
            out.add_term(uexp, vexp, c);
        }
        out
    }

    fn add_term(&mut self, uexp: Exponent, vexp: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((uexp, vexp)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(uexp, vexp));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic `(uexp, vexp)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, Exponent, &BigInt)> + '_ {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    /// Coefficient of `u^uexp * v^vexp` (zero when the term is absent).
    pub fn coefficient(&self, uexp: Exponent, vexp: Exponent) -> BigInt {
        self.terms
            .get(&(uexp, vexp))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Substitutes `u -> u^(-1)`, `v -> v^(-1)`; a ring involution.
    pub fn invert_vars(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((-a, -b), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `u -> t`, `v -> 1` and collects; a ring homomorphism onto
    /// univariate polynomials in `t`.
    pub fn specialize_v(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::from_terms(self.terms.iter().map(|(&(a, _), c)| (a, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

impl fmt::Display for BidegreePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Canonical order: ascending total weight, then descending u part,
        // so pure powers of u precede pure powers of v.
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(&(a, b), _)| (a + b, std::cmp::Reverse(a)));
        format_terms(f, ordered.into_iter().map(|(&(a, b), c)| {
            let mut vars = Vec::new();
            push_var(&mut vars, "u", a);
            push_var(&mut vars, "v", b);
            (vars, c)
        }))
    }
}

impl fmt::Debug for BidegreePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BidegreePolynomial({self})")
    }
}

impl FromStr for BidegreePolynomial {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_polynomial(s)
    }
}

fn push_var(vars: &mut Vec<String>, name: &str, e: Exponent) {
    if e.is_zero() {
        return;
    }
    if e.is_one() {
        vars.push(name.to_string());
    } else {
        vars.push(format!("{name}^{}", format_exponent(e)));
    }
}

/// Integer exponents print bare (possibly negative), fractional ones as
/// `(p/q)` with reduced `p/q` and positive `q`.
fn format_exponent(e: Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

/// Shared canonical term renderer for both polynomial types: signs between
/// terms, `*` separators, unit coefficients omitted before variable factors.
fn format_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (Vec<String>, &'a BigInt)>,
{
    let mut first = true;
    for (vars, c) in terms {
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        let mag = c.magnitude();
        if vars.is_empty() {
            write!(f, "{mag}")?;
        } else {
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            f.write_str(&vars.join("*"))?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl AddAssign<&BidegreePolynomial> for BidegreePolynomial {
    fn add_assign(&mut self, rhs: &BidegreePolynomial) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl SubAssign<&BidegreePolynomial> for BidegreePolynomial {
    fn sub_assign(&mut self, rhs: &BidegreePolynomial) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, -c.clone());
        }
    }
}

impl AddAssign for BidegreePolynomial {
    fn add_assign(&mut self, rhs: Self) {
        *self += &rhs;
    }
}

impl SubAssign for BidegreePolynomial {
    fn sub_assign(&mut self, rhs: Self) {
        *self -= &rhs;
    }
}

impl Neg for &BidegreePolynomial {
    type Output = BidegreePolynomial;

    fn neg(self) -> BidegreePolynomial {
        BidegreePolynomial {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

impl Neg for BidegreePolynomial {
    type Output = BidegreePolynomial;

    fn neg(self) -> BidegreePolynomial {
        -&self
    }
}

impl Add<&BidegreePolynomial> for &BidegreePolynomial {
    type Output = BidegreePolynomial;

    fn add(self, rhs: &BidegreePolynomial) -> BidegreePolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&BidegreePolynomial> for &BidegreePolynomial {
    type Output = BidegreePolynomial;

    fn sub(self, rhs: &BidegreePolynomial) -> BidegreePolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&BidegreePolynomial> for &BidegreePolynomial {
    type Output = BidegreePolynomial;

    fn mul(self, rhs: &BidegreePolynomial) -> BidegreePolynomial {
        let mut out = BidegreePolynomial::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident, $t:ty) => {
        impl $imp for $t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&$t> for $t {
            type Output = $t;
            fn $method(self, rhs: &$t) -> $t {
                (&self).$method(rhs)
            }
        }
        impl $imp<$t> for &$t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, BidegreePolynomial);
forward_binop!(Sub, sub, BidegreePolynomial);
forward_binop!(Mul, mul, BidegreePolynomial);

impl Mul<i64> for &BidegreePolynomial {
    type Output = BidegreePolynomial;

    fn mul(self, rhs: i64) -> BidegreePolynomial {
        let rhs = BigInt::from(rhs);
        BidegreePolynomial::from_terms(
            self.terms.iter().map(|(&(a, b), c)| (a, b, c * &rhs)),
        )
    }
}

impl Mul<i64> for BidegreePolynomial {
    type Output = BidegreePolynomial;

    fn mul(self, rhs: i64) -> BidegreePolynomial {
        &self * rhs
    }
}

impl MulAssign<&BidegreePolynomial> for BidegreePolynomial {
    fn mul_assign(&mut self, rhs: &BidegreePolynomial) {
        *self = &*self * rhs;
    }
}

/// A finitely supported univariate polynomial in `t` with rational exponents
/// and integer coefficients; the target of [`BidegreePolynomial::specialize_v`]
/// and the carrier of Saito/Varchenko spectra.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct UnivariatePolynomial {
    terms: BTreeMap<Exponent, BigInt>,
}

impl UnivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: Exponent, c: impl Into<BigInt>) -> Self {
        Self::from_terms([(exp, c.into())])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigInt)>,
    {
        let mut out = Self::default();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, exp: Exponent) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Multiplies by `t^shift`.
    pub fn shift_exponents(&self, shift: Exponent) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, self.terms.iter().map(|(&e, c)| {
            let mut vars = Vec::new();
            push_var(&mut vars, "t", e);
            (vars, c)
        }))
    }
}

impl fmt::Debug for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnivariatePolynomial({self})")
    }
}

impl AddAssign<&UnivariatePolynomial> for UnivariatePolynomial {
    fn add_assign(&mut self, rhs: &UnivariatePolynomial) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Add<&UnivariatePolynomial> for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;

    fn add(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&UnivariatePolynomial> for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;

    fn sub(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        let mut out = self.clone();
        out += &-rhs;
        out
    }
}

impl Mul<&UnivariatePolynomial> for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;

    fn mul(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        let mut out = UnivariatePolynomial::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;

    fn neg(self) -> UnivariatePolynomial {
        UnivariatePolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

forward_binop!(Add, add, UnivariatePolynomial);
forward_binop!(Sub, sub, UnivariatePolynomial);
forward_binop!(Mul, mul, UnivariatePolynomial);

impl Neg for UnivariatePolynomial {
    type Output = UnivariatePolynomial;

    fn neg(self) -> UnivariatePolynomial {
        -&self
    }
}

/// The class of the affine line: `u*v`.
pub fn lefschetz() -> BidegreePolynomial {
    lefschetz_power(1)
}

/// `(u*v)^k`.
pub fn lefschetz_power(k: u32) -> BidegreePolynomial {
    BidegreePolynomial::monomial(Exponent::from(i64::from(k)), Exponent::from(i64::from(k)), 1)
}

/// The class of `dim`-dimensional projective space, `1 + uv + ... + (uv)^dim`.
///
/// Negative `dim` yields the empty sum (the zero polynomial), which is the
/// convention the blow-up formulas rely on.
pub fn projective_space(dim: i64) -> BidegreePolynomial {
    let mut out = BidegreePolynomial::zero();
    for i in 0..=dim {
        out += BidegreePolynomial::monomial(Exponent::from(i), Exponent::from(i), 1);
    }
    out
}

/// The class of the `dim`-dimensional algebraic torus, `(uv - 1)^dim`.
pub fn torus(dim: u32) -> BidegreePolynomial {
    (lefschetz() - BidegreePolynomial::one()).pow(dim)
}

/// Error produced by [`parse_polynomial`], carrying the byte offset of the
/// offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Parses the polynomial grammar
///
/// ```text
/// poly   := ["-"] term (("+"|"-") term)*
/// term   := coeff ("*" factor)* | factor ("*" factor)*
/// factor := ("u"|"v") ("^" exp)?
/// exp    := integer | "(" integer "/" integer ")"
/// ```
///
/// Whitespace between tokens is ignored. The result is canonical, so
/// `parse_polynomial(p.to_string())` round-trips every polynomial.
pub fn parse_polynomial(input: &str) -> Result<BidegreePolynomial, ParseError> {
    Parser::new(input).parse_poly()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            offset,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_poly(mut self) -> Result<BidegreePolynomial, ParseError> {
        let mut out = BidegreePolynomial::zero();
        self.skip_ws();
        let mut negate = self.eat(b'-');
        loop {
            self.skip_ws();
            let term = self.parse_term()?;
            if negate {
                out -= term;
            } else {
                out += term;
            }
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => {
                    negate = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    negate = true;
                    self.pos += 1;
                }
                Some(_) => {
                    return Err(self.err(self.pos, "expected '+', '-' or end of input"));
                }
            }
        }
    }

    fn parse_term(&mut self) -> Result<BidegreePolynomial, ParseError> {
        self.skip_ws();
        let mut uexp = Exponent::zero();
        let mut vexp = Exponent::zero();
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'+' || c == b'-' => self.parse_bigint()?,
            Some(b'u') | Some(b'v') => {
                let (du, dv) = self.parse_factor()?;
                uexp += du;
                vexp += dv;
                BigInt::one()
            }
            _ => return Err(self.err(self.pos, "expected a coefficient, 'u' or 'v'")),
        };
        loop {
            self.skip_ws();
            if !self.eat(b'*') {
                break;
            }
            let (du, dv) = self.parse_factor()?;
            uexp += du;
            vexp += dv;
        }
        Ok(BidegreePolynomial::monomial(uexp, vexp, coeff))
    }

    fn parse_factor(&mut self) -> Result<(Exponent, Exponent), ParseError> {
        self.skip_ws();
        let var = match self.peek() {
            Some(b'u') => b'u',
            Some(b'v') => b'v',
            _ => return Err(self.err(self.pos, "expected 'u' or 'v'")),
        };
        self.pos += 1;
        let exp = if self.eat(b'^') {
            self.parse_exponent()?
        } else {
            Exponent::one()
        };
        if var == b'u' {
            Ok((exp, Exponent::zero()))
        } else {
            Ok((Exponent::zero(), exp))
        }
    }

    fn parse_exponent(&mut self) -> Result<Exponent, ParseError> {
        self.skip_ws();
        if self.eat(b'(') {
            let numer = self.parse_i64()?;
            self.skip_ws();
            if !self.eat(b'/') {
                return Err(self.err(self.pos, "expected '/' in fractional exponent"));
            }
            let denom_at = {
                self.skip_ws();
                self.pos
            };
            let denom = self.parse_i64()?;
            if denom == 0 {
                return Err(self.err(denom_at, "exponent is not a rational literal: denominator is zero"));
            }
            self.skip_ws();
            if !self.eat(b')') {
                return Err(self.err(self.pos, "expected ')' after fractional exponent"));
            }
            Ok(Exponent::new(numer, denom))
        } else {
            match self.peek() {
                Some(c) if c.is_ascii_digit() || c == b'+' || c == b'-' => {
                    Ok(Exponent::from(self.parse_i64()?))
                }
                _ => Err(self.err(self.pos, "expected an integer or '(' in exponent")),
            }
        }
    }

    fn digit_span(&mut self) -> Result<(usize, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'+') || self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits_from = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_from {
            return Err(self.err(self.pos, "expected an integer"));
        }
        Ok((start, self.pos))
    }

    fn parse_bigint(&mut self) -> Result<BigInt, ParseError> {
        let (start, end) = self.digit_span()?;
        let text = std::str::from_utf8(&self.src[start..end]).expect("ascii span");
        BigInt::from_str(text).map_err(|_| self.err(start, "invalid integer literal"))
    }

    fn parse_i64(&mut self) -> Result<i64, ParseError> {
        let (start, end) = self.digit_span()?;
        let text = std::str::from_utf8(&self.src[start..end]).expect("ascii span");
        text.parse::<i64>()
            .map_err(|_| self.err(start, "exponent is not a rational literal: out of range"))
    }
}
