//! Grothendieck-class expressions for standard varieties and the class-level
//! identities: blow-up relation, open complements, cubical hyperresolutions
//! and the toric orbit formula.
//!
//! Classes are represented by their image under the Hodge-Euler homomorphism,
//! i.e. as polynomials; no formal scissor-relation rewriting is attempted.
//! Anything outside the built-in vocabulary enters as a polynomial literal.

use std::fmt;

use thiserror::Error;

use crate::ring::{
    lefschetz, parse_polynomial, projective_space, torus, BidegreePolynomial, ParseError,
};

/// Parameter violation discovered when evaluating a [`ClassExpr`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("parameter out of range: {constructor} requires {requirement}, got {value}")]
    ParameterOutOfRange {
        constructor: &'static str,
        requirement: &'static str,
        value: i64,
    },
}

/// An expression tree over the built-in variety vocabulary, closed under
/// sum, difference, product and integer scaling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassExpr {
    /// A single point; evaluates to 1.
    Point,
    /// Projective space of dimension `n >= 0`.
    Projective(i64),
    /// A smooth projective curve of genus `g >= 0`.
    Curve(i64),
    /// The quadric surface.
    P1xP1,
    /// The projective plane blown up in `k >= 0` points.
    BlowupP2(i64),
    /// The algebraic torus of dimension `n >= 0`.
    Torus(i64),
    /// A toric variety given by its orbit counts `s_0..s_n` (all `>= 0`),
    /// `s_k` the number of `k`-dimensional orbits.
    Toric(Vec<i64>),
    /// An explicit polynomial class.
    Literal(BidegreePolynomial),
    Sum(Box<ClassExpr>, Box<ClassExpr>),
    Difference(Box<ClassExpr>, Box<ClassExpr>),
    Product(Box<ClassExpr>, Box<ClassExpr>),
    Scale(i64, Box<ClassExpr>),
}

impl ClassExpr {
    /// Evaluates the expression to its Hodge-Euler polynomial.
    pub fn eval(&self) -> Result<BidegreePolynomial, ClassError> {
        let nonnegative = |constructor, value: i64| {
            if value < 0 {
                Err(ClassError::ParameterOutOfRange {
                    constructor,
                    requirement: "a nonnegative integer",
                    value,
                })
            } else {
                Ok(value)
            }
        };
        match self {
            ClassExpr::Point => Ok(BidegreePolynomial::one()),
            ClassExpr::Projective(n) => Ok(projective_space(nonnegative("projective", *n)?)),
            ClassExpr::Curve(g) => {
                let g = nonnegative("curve", *g)?;
                // 1 - g*u - g*v + uv
                let odd_part = parse_polynomial("u + v").expect("fixed literal");
                Ok(BidegreePolynomial::one() + lefschetz() - odd_part * g)
            }
            ClassExpr::P1xP1 => Ok((BidegreePolynomial::one() + lefschetz()).pow(2)),
            ClassExpr::BlowupP2(k) => {
                let k = nonnegative("blowup_p2", *k)?;
                Ok(projective_space(2) + lefschetz() * k)
            }
            ClassExpr::Torus(n) => {
                let n = nonnegative("torus", *n)?;
                Ok(torus(n as u32))
            }
            ClassExpr::Toric(orbit_counts) => {
                let torus_class = lefschetz() - BidegreePolynomial::one();
                let mut out = BidegreePolynomial::zero();
                for (k, &s) in orbit_counts.iter().enumerate() {
                    nonnegative("toric", s)?;
                    out += torus_class.pow(k as u32) * s;
                }
                Ok(out)
            }
            ClassExpr::Literal(p) => Ok(p.clone()),
            ClassExpr::Sum(a, b) => Ok(a.eval()? + b.eval()?),
            ClassExpr::Difference(a, b) => Ok(a.eval()? - b.eval()?),
            ClassExpr::Product(a, b) => Ok(a.eval()? * b.eval()?),
            ClassExpr::Scale(n, a) => Ok(a.eval()? * *n),
        }
    }
}

impl From<BidegreePolynomial> for ClassExpr {
    fn from(p: BidegreePolynomial) -> Self {
        ClassExpr::Literal(p)
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassExpr::Point => f.write_str("point"),
            ClassExpr::Projective(n) => write!(f, "projective({n})"),
            ClassExpr::Curve(g) => write!(f, "curve({g})"),
            ClassExpr::P1xP1 => f.write_str("p1xp1"),
            ClassExpr::BlowupP2(k) => write!(f, "blowup_p2({k})"),
            ClassExpr::Torus(n) => write!(f, "torus({n})"),
            ClassExpr::Toric(s) => {
                f.write_str("toric(")?;
                for (i, v) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str(")")
            }
            ClassExpr::Literal(p) => write!(f, "poly({p})"),
            ClassExpr::Sum(a, b) => write!(f, "{a} + {b}"),
            ClassExpr::Difference(a, b) => write!(f, "{a} - ({b})"),
            ClassExpr::Product(a, b) => write!(f, "({a})*({b})"),
            // Negative scales go in parens so the output stays parseable in
            // factor position.
            ClassExpr::Scale(n, a) if *n < 0 => write!(f, "({n})*({a})"),
            ClassExpr::Scale(n, a) => write!(f, "{n}*({a})"),
        }
    }
}

/// The class of the blow-up of a smooth variety along a smooth center of
/// codimension `c >= 1`: `total + center*(P_{c-1} - 1)`.
pub fn blowup_class(
    total: &BidegreePolynomial,
    center: &BidegreePolynomial,
    c: u32,
) -> Result<BidegreePolynomial, ClassError> {
    if c < 1 {
        return Err(ClassError::ParameterOutOfRange {
            constructor: "blowup_class",
            requirement: "codimension at least 1",
            value: c as i64,
        });
    }
    let exceptional_fibre = projective_space(i64::from(c) - 1) - BidegreePolynomial::one();
    Ok(total + &(center * &exceptional_fibre))
}

/// The class of the complement of a normal crossing divisor with level
/// classes `D(1)..D(N)`: `ambient - D(1) + D(2) - ...`.
pub fn open_complement(
    ambient: &BidegreePolynomial,
    levels: &[BidegreePolynomial],
) -> BidegreePolynomial {
    let mut out = ambient.clone();
    for (m, level) in levels.iter().enumerate() {
        if m % 2 == 0 {
            out -= level;
        } else {
            out += level;
        }
    }
    out
}

/// The class `sum (-1)^(|I|-1) [X_I]` of a variety from the pieces of a
/// cubical hyperresolution, given as `(|I|, class)` pairs with `|I| >= 1`.
pub fn cubical_class(pieces: &[(u32, BidegreePolynomial)]) -> BidegreePolynomial {
    let mut out = BidegreePolynomial::zero();
    for (cardinality, class) in pieces {
        if cardinality % 2 == 1 {
            out += class;
        } else {
            out -= class;
        }
    }
    out
}

/// Parses the class-expression syntax used in CLI files:
///
/// ```text
/// expr   := ["-"] term (("+"|"-") term)*
/// term   := factor ("*" factor)*
/// factor := integer | "point" | "p1xp1" | name "(" args ")" | "(" expr ")"
/// ```
///
/// where `name` is one of `projective`, `curve`, `blowup_p2`, `torus`,
/// `toric` (comma-separated integer arguments) or `poly` (whose single
/// argument is the polynomial grammar of [`parse_polynomial`]).
pub fn parse_class_expr(input: &str) -> Result<ClassExpr, ParseError> {
    let mut parser = ExprParser {
        src: input.as_bytes(),
        pos: 0,
    };
    let expr = parser.parse_expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(ParseError {
            offset: parser.pos,
            message: "expected '+', '-', '*' or end of input".into(),
        });
    }
    Ok(expr)
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
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

    fn parse_expr(&mut self) -> Result<ClassExpr, ParseError> {
        self.skip_ws();
        let mut out = if self.eat(b'-') {
            ClassExpr::Scale(-1, Box::new(self.parse_term()?))
        } else {
            self.parse_term()?
        };
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    out = ClassExpr::Sum(Box::new(out), Box::new(self.parse_term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    out = ClassExpr::Difference(Box::new(out), Box::new(self.parse_term()?));
                }
                _ => return Ok(out),
            }
        }
    }

    fn parse_term(&mut self) -> Result<ClassExpr, ParseError> {
        let mut out = self.parse_factor()?;
        loop {
            self.skip_ws();
            if !self.eat(b'*') {
                return Ok(out);
            }
            out = ClassExpr::Product(Box::new(out), Box::new(self.parse_factor()?));
        }
    }

    fn parse_factor(&mut self) -> Result<ClassExpr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.err(self.pos, "expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(ClassExpr::Scale(self.parse_i64()?, Box::new(ClassExpr::Point)))
            }
            Some(c) if c.is_ascii_lowercase() => self.parse_constructor(),
            _ => Err(self.err(self.pos, "expected a class constructor, integer or '('")),
        }
    }

    fn parse_i64(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start || (self.pos == start + 1 && self.src[start] == b'-') {
            return Err(self.err(start, "expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii span")
            .parse::<i64>()
            .map_err(|_| self.err(start, "integer out of range"))
    }

    fn parse_constructor(&mut self) -> Result<ClassExpr, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() || c == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii span");
        match name {
            "point" => Ok(ClassExpr::Point),
            "p1xp1" => Ok(ClassExpr::P1xP1),
            "projective" => Ok(ClassExpr::Projective(self.single_int_arg(name)?)),
            "curve" => Ok(ClassExpr::Curve(self.single_int_arg(name)?)),
            "blowup_p2" => Ok(ClassExpr::BlowupP2(self.single_int_arg(name)?)),
            "torus" => Ok(ClassExpr::Torus(self.single_int_arg(name)?)),
            "toric" => Ok(ClassExpr::Toric(self.int_args()?)),
            "poly" => self.poly_arg(),
            _ => Err(self.err(start, format!("unknown class constructor '{name}'"))),
        }
    }

    fn expect_open_paren(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if !self.eat(b'(') {
            return Err(self.err(self.pos, "expected '(' after constructor name"));
        }
        Ok(())
    }

    fn single_int_arg(&mut self, name: &str) -> Result<i64, ParseError> {
        let args = self.int_args()?;
        if args.len() != 1 {
            return Err(self.err(
                self.pos,
                format!("{name} takes exactly one integer argument"),
            ));
        }
        Ok(args[0])
    }

    fn int_args(&mut self) -> Result<Vec<i64>, ParseError> {
        self.expect_open_paren()?;
        let mut args = Vec::new();
        loop {
            self.skip_ws();
            args.push(self.parse_i64()?);
            self.skip_ws();
            if self.eat(b',') {
                continue;
            }
            if self.eat(b')') {
                return Ok(args);
            }
            return Err(self.err(self.pos, "expected ',' or ')' in argument list"));
        }
    }

    /// `poly(...)`: finds the balanced closing paren, hands the inside to the
    /// polynomial parser, and rebases any inner error offset to this input.
    fn poly_arg(&mut self) -> Result<ClassExpr, ParseError> {
        self.expect_open_paren()?;
        let arg_start = self.pos;
        let mut depth = 1usize;
        while let Some(c) = self.peek() {
            match c {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        let text = std::str::from_utf8(&self.src[arg_start..self.pos])
                            .map_err(|_| self.err(arg_start, "polynomial must be ascii"))?;
                        let poly = parse_polynomial(text).map_err(|e| ParseError {
                            offset: arg_start + e.offset,
                            message: e.message,
                        })?;
                        self.pos += 1;
                        return Ok(ClassExpr::Literal(poly));
                    }
                }
                _ => {}
            }
            self.pos += 1;
        }
        Err(self.err(self.pos, "unterminated poly(...) argument"))
    }
}
