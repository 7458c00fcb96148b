//! Homogeneous polynomials in the four variables `x, y, z, w`.
//!
//! Forms are sparse maps from monomials to nonzero coefficients. Text input
//! follows a small grammar:
//!
//! ```text
//! expr   := sign? term (('+'|'-') term)*
//! term   := coeff? ('*'? factor)*
//! factor := var ('^' uint)?
//! var    := x | y | z | w
//! coeff  := int | int '/' uint
//! ```
//!
//! Whitespace is ignored. Printing uses graded reverse-lexicographic order
//! (largest monomial first), so `parse(print(f)) == f`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{exact_rank, ExactMatrix, Field, FieldScalar};
use crate::error::{Error, Result};

pub const VARIABLES: [char; 4] = ['x', 'y', 'z', 'w'];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("polynomial is not homogeneous: found terms of degree {first} and {second}")]
    Inhomogeneous { first: u32, second: u32 },
}

/// Exponent vector of `x^a y^b z^c w^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> [u32; 4] {
        self.0
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }
}

/// Graded reverse-lexicographic order with `x > y > z > w`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in (0..4).rev() {
                if self.0[i] != other.0[i] {
                    return other.0[i].cmp(&self.0[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, &e) in VARIABLES.iter().zip(&self.0) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `d`, in decreasing graded-reverse-lex order.
pub fn monomials_of_degree(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                out.push(Monomial([a, b, c, d - a - b - c]));
            }
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// A homogeneous form of fixed degree with coefficients in one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousForm {
    degree: u32,
    field: Field,
    terms: BTreeMap<Monomial, FieldScalar>,
}

impl HomogeneousForm {
    pub fn zero(degree: u32, field: Field) -> Self {
        Self { degree, field, terms: BTreeMap::new() }
    }

    /// Sums the given terms; zero coefficients are dropped.
    pub fn from_terms(
        degree: u32,
        field: Field,
        terms: impl IntoIterator<Item = (Monomial, FieldScalar)>,
    ) -> Result<Self> {
        let mut f = Self::zero(degree, field);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::data(format!("monomial {m} has degree {}, expected {degree}", m.degree())));
            }
            if c.field() != field {
                return Err(Error::data(format!("coefficient in {} for a form over {field}", c.field())));
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    /// Linear form `a x + b y + c z + d w`.
    pub fn linear(field: Field, coeffs: [FieldScalar; 4]) -> Result<Self> {
        let terms = coeffs.into_iter().enumerate().map(|(i, c)| {
            let mut e = [0; 4];
            e[i] = 1;
            (Monomial(e), c)
        });
        Self::from_terms(1, field, terms)
    }

    pub fn parse(text: &str) -> std::result::Result<Self, ParseError> {
        Parser::new(text).parse()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&FieldScalar> {
        self.terms.get(m)
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldScalar)> {
        self.terms.iter().rev()
    }

    fn add_term(&mut self, m: Monomial, c: FieldScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Maps a rational form to `F_p`; prime-field forms must already match.
    pub fn to_field(&self, field: Field) -> Result<Self> {
        if field == self.field {
            return Ok(self.clone());
        }
        let mut out = Self::zero(self.degree, field);
        for (m, c) in &self.terms {
            let q = c
                .as_rational()
                .ok_or_else(|| Error::data(format!("cannot move a form over {} to {field}", self.field)))?;
            out.add_term(*m, FieldScalar::from_rational(field, q)?);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree || self.field != other.field {
            return Err(Error::data(format!(
                "cannot add forms of degree {} over {} and degree {} over {}",
                self.degree, self.field, other.degree, other.field
            )));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &FieldScalar) -> Self {
        let mut out = Self::zero(self.degree, self.field);
        for (m, c) in &self.terms {
            out.add_term(*m, c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::data("cannot multiply forms over different fields"));
        }
        let mut out = Self::zero(self.degree + other.degree, self.field);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.times(b), ca * cb);
            }
        }
        Ok(out)
    }

    /// Exact value at a point given by four coordinates.
    pub fn evaluate_at(&self, point: &[FieldScalar]) -> Result<FieldScalar> {
        if point.len() != 4 {
            return Err(Error::data(format!("expected 4 coordinates, got {}", point.len())));
        }
        if let Some(c) = point.iter().find(|c| c.field() != self.field) {
            return Err(Error::data(format!("coordinate in {} for a form over {}", c.field(), self.field)));
        }
        // powers[i][e] = point[i]^e
        let powers: Vec<Vec<FieldScalar>> = point
            .iter()
            .map(|c| {
                let mut p = vec![FieldScalar::one(self.field)];
                for e in 1..=self.degree as usize {
                    let next = &p[e - 1] * c;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = FieldScalar::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..4 {
                t = &t * &powers[i][m.0[i] as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Formal partial derivative in variable `var` (0 = x, ..., 3 = w).
    pub fn partial(&self, var: usize) -> Self {
        let degree = self.degree.saturating_sub(1);
        let mut out = Self::zero(degree, self.field);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[var] -= 1;
            out.add_term(dm, c * &FieldScalar::from_i64(self.field, e as i64));
        }
        out
    }

    pub fn gradient(&self) -> [HomogeneousForm; 4] {
        [self.partial(0), self.partial(1), self.partial(2), self.partial(3)]
    }

    /// Rank of the 4x4 matrix of second partials at `point`.
    pub fn hessian_rank_at(&self, point: &[FieldScalar]) -> Result<usize> {
        let grad = self.gradient();
        let mut entries = Vec::with_capacity(16);
        for g in &grad {
            for j in 0..4 {
                entries.push(g.partial(j).evaluate_at(point)?);
            }
        }
        Ok(exact_rank(&ExactMatrix::new(4, 4, self.field, entries)?))
    }
}

impl FromStr for HomogeneousForm {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        Self::parse(s)
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Self { chars, pos: 0, end: text.len() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { position: self.offset(), message: message.into() }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Some(s.parse().expect("ascii digits"))
    }

    fn parse(mut self) -> std::result::Result<HomogeneousForm, ParseError> {
        let mut terms: Vec<(Monomial, BigRational)> = Vec::new();
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let (m, mut c) = self.term()?;
            if sign < 0 {
                c = -c;
            }
            if let Some((first, _)) = terms.first() {
                if first.degree() != m.degree() {
                    return Err(ParseError::Inhomogeneous { first: first.degree(), second: m.degree() });
                }
            }
            terms.push((m, c));
            match self.peek() {
                None => break,
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                Some(c) => return Err(self.error(format!("unexpected {c:?}"))),
            }
            self.pos += 1;
        }
        let degree = terms[0].0.degree();
        let mut form = HomogeneousForm::zero(degree, Field::Rational);
        for (m, c) in terms {
            form.add_term(m, FieldScalar::Rational(c));
        }
        Ok(form)
    }

    fn term(&mut self) -> std::result::Result<(Monomial, BigRational), ParseError> {
        let mut coeff = BigRational::from_integer(1.into());
        let mut seen_anything = false;
        if let Some(num) = self.digits() {
            seen_anything = true;
            let mut den = BigInt::from(1);
            if self.peek() == Some('/') {
                self.pos += 1;
                den = self.digits().ok_or_else(|| self.error("expected denominator digits"))?;
                if den.is_zero() {
                    return Err(self.error("zero denominator"));
                }
            }
            coeff = BigRational::new(num, den);
        }
        let mut mono = Monomial::default();
        loop {
            let had_star = self.peek() == Some('*');
            if had_star {
                if !seen_anything {
                    return Err(self.error("'*' without a left operand"));
                }
                self.pos += 1;
            }
            match self.peek() {
                Some(c) if VARIABLES.contains(&c) => {
                    self.pos += 1;
                    let var = VARIABLES.iter().position(|&v| v == c).expect("known variable");
                    let mut exp = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        let e = self.digits().ok_or_else(|| self.error("expected exponent"))?;
                        exp = u32::try_from(&e).map_err(|_| self.error("exponent too large"))?;
                    }
                    mono.0[var] += exp;
                    seen_anything = true;
                }
                Some(c) if c.is_alphabetic() || c == '_' => {
                    return Err(self.error(format!("unknown identifier {c:?}")));
                }
                _ if had_star => return Err(self.error("expected a variable after '*'")),
                _ => break,
            }
        }
        if !seen_anything {
            return Err(self.error("expected a term"));
        }
        Ok((mono, coeff))
    }
}
