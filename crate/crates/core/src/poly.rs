//! Coefficient rings: exact rationals and sparse multivariate polynomials
//! over the rationals.
//!
//! A [`Poly`] stores monomials as exponent vectors with trailing zeros
//! trimmed, so arithmetic never needs to know how many variables the ambient
//! ring declares. The declared, ordered variable list lives in [`PolyRing`],
//! which is only consulted for printing, evaluation and bounds checks.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative ring of exact coefficients usable inside graded forms.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_rational(q: &BigRational) -> Self;

    fn scale(&self, q: &BigRational) -> Self {
        self.clone() * Self::from_rational(q)
    }

    /// True when printing this coefficient next to a basis element needs
    /// parentheses.
    fn is_compound(&self) -> bool {
        false
    }
}

impl Coeff for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn scale(&self, q: &BigRational) -> Self {
        self * q
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector with trailing zeros removed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(index: usize) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of variables the monomial actually touches (highest index + 1).
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.0.len().max(other.0.len());
        let exps = (0..len)
            .map(|i| self.exponent(i) + other.exponent(i))
            .collect();
        Monomial(exps)
    }

    fn with_exponent(&self, var: usize, e: u32) -> Monomial {
        let mut exps = self.0.clone();
        if exps.len() <= var {
            exps.resize(var + 1, 0);
        }
        exps[var] = e;
        Monomial::new(exps)
    }

    /// Graded lexicographic comparison (lower total degree first, then
    /// `x1 > x2 > ...` within a degree).
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let len = self.0.len().max(other.0.len());
            for i in 0..len {
                match self.exponent(i).cmp(&other.exponent(i)) {
                    Ordering::Equal => continue,
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

/// Sparse multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

/// Sign of a polynomial that is certified nowhere zero on real points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefiniteSign {
    Positive,
    Negative,
}

impl Poly {
    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(index: usize) -> Self {
        Poly::monomial(Monomial::var(index), rat(1))
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Poly::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Number of variables touched by any monomial.
    pub fn support_len(&self) -> usize {
        self.terms.keys().map(Monomial::support_len).max().unwrap_or(0)
    }

    /// Largest power of `var` dividing the polynomial; `None` for zero.
    pub fn valuation(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).min()
    }

    /// Minimal total degree in the given variables across all monomials;
    /// `None` for zero.
    pub fn order_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.exponent(v)).sum())
            .min()
    }

    /// Coefficient of `var^e`, as a polynomial in the remaining variables.
    pub fn coefficient_of_power(&self, var: usize, e: u32) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exponent(var) == e)
                .map(|(m, c)| (m.with_exponent(var, 0), c.clone())),
        )
    }

    /// Exact division by `var^e`; `None` if some monomial is not divisible.
    pub fn div_var_power(&self, var: usize, e: u32) -> Option<Poly> {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let have = m.exponent(var);
            if have < e {
                return None;
            }
            out.terms.insert(m.with_exponent(var, have - e), c.clone());
        }
        Some(out)
    }

    pub fn scale(&self, q: &BigRational) -> Poly {
        if q.is_zero() {
            return Poly::default();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * q))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Ring homomorphism sending variable `v` to `images[v]`; variables past
    /// the end of `images` are left in place.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = match images.get(v) {
                    Some(img) => img.clone(),
                    None => Poly::var(v),
                };
                term = &term * &base.pow(e);
            }
            out = &out + &term;
        }
        out
    }

    /// Evaluates at a rational point. Returns `None` if the point is too
    /// short for the variables in use.
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            if m.support_len() > point.len() {
                return None;
            }
            let mut term = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    term *= &point[v];
                }
            }
            acc += term;
        }
        Some(acc)
    }

    pub fn derivative(&self, var: usize) -> Poly {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(var);
            (e > 0).then(|| (m.with_exponent(var, e - 1), c * rat(e as i64)))
        }))
    }

    /// Syntactic certificate that the polynomial has no real zero: a nonzero
    /// constant term, and every other monomial is an even power product whose
    /// coefficient has the same sign as the constant.
    pub fn definite_sign(&self) -> Option<DefiniteSign> {
        let constant = self.terms.get(&Monomial::one())?;
        let positive = constant.is_positive();
        for (m, c) in &self.terms {
            if m.is_one() {
                continue;
            }
            if m.exponents().iter().any(|e| e % 2 == 1) || c.is_positive() != positive {
                return None;
            }
        }
        Some(if positive {
            DefiniteSign::Positive
        } else {
            DefiniteSign::Negative
        })
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(rat(1))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;

    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Coeff for Poly {
    fn from_rational(q: &BigRational) -> Self {
        Poly::constant(q.clone())
    }

    fn scale(&self, q: &BigRational) -> Self {
        Poly::scale(self, q)
    }

    fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut monos: Vec<_> = self.poly.terms.iter().collect();
        monos.sort_by(|a, b| a.0.grlex_cmp(b.0));
        for (idx, (m, c)) in monos.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let unit = abs.is_one();
            if m.is_one() {
                write!(f, "{abs}")?;
                continue;
            }
            if !unit {
                write!(f, "{abs}*")?;
            }
            let mut first = true;
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                match self.names.get(v) {
                    Some(name) => write!(f, "{name}")?,
                    None => write!(f, "v{}", v + 1)?,
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.display_with(&[]), f)
    }
}

/// Declared, ordered variable list of a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    names: Vec<String>,
}

impl PolyRing {
    pub fn new(names: Vec<String>) -> Self {
        PolyRing { names }
    }

    /// `x1..xm` followed by `y1..yb`.
    pub fn fibre_and_base(fibre: usize, base: usize) -> Self {
        let names = (1..=fibre)
            .map(|i| format!("x{i}"))
            .chain((1..=base).map(|i| format!("y{i}")))
            .collect();
        PolyRing { names }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        p.support_len() <= self.names.len()
    }

    pub fn display<'a>(&'a self, p: &'a Poly) -> PolyDisplay<'a> {
        p.display_with(&self.names)
    }

    /// Parses a polynomial written with `+ - * ^`, parentheses, integer or
    /// `p/q` literals and this ring's variable names.
    pub fn parse(&self, text: &str) -> Result<Poly, String> {
        let tokens = tokenize(text)?;
        let mut parser = PolyParser {
            tokens,
            pos: 0,
            ring: self,
        };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(format!("unexpected trailing input in `{text}`"));
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                return Err("floating-point literals are not exact; use p/q".into());
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Num(s.parse().map_err(|_| "bad integer")?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct PolyParser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    ring: &'a PolyRing,
}

impl PolyParser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Poly, String> {
        let mut acc = if self.peek_op() == Some('-') {
            self.pos += 1;
            -self.term()?
        } else {
            self.term()?
        };
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, String> {
        let mut acc = self.power()?;
        loop {
            match self.peek_op() {
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = &acc * &rhs;
                }
                Some('/') => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    let d = rhs
                        .as_constant()
                        .filter(|d| !d.is_zero())
                        .ok_or("division only by nonzero constants")?;
                    acc = acc.scale(&d.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, String> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| "exponent too large")?;
                    Ok(base.pow(e))
                }
                _ => Err("expected integer exponent after `^`".into()),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, String> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(BigRational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.ring
                    .index_of(&name)
                    .map(Poly::var)
                    .ok_or_else(|| format!("unknown variable `{name}`"))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err("missing `)`".into());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

/// Parses an exact rational from `"p/q"` or an integer string. Decimal and
/// exponent notation are rejected.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let t = text.trim();
    if t.contains(['.', 'e', 'E']) {
        return Err(format!("`{t}` is not an exact rational (floating-point literal)"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| format!("bad numerator in `{t}`"))?;
    let d: BigInt = den.parse().map_err(|_| format!("bad denominator in `{t}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{t}`"));
    }
    Ok(BigRational::new(n, d))
}

/// Renders a rational as `p/q` or an integer string.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
