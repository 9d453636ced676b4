//! Sparse polynomials in `x, y` over the rationals, with a text parser.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::UPoly;
use super::OracleError;

/// Terms `c x^i y^j` keyed by `(i, j)`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::term(BigRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(BigRational::one(), 0, 1)
    }

    /// `c x^i y^j`.
    pub fn term(c: BigRational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, i, j);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, u32, u32)>) -> Self {
        let mut p = Self::zero();
        for (c, i, j) in terms {
            p.add_term(c, i, j);
        }
        p
    }

    /// `y^n - c x^m`.
    pub fn binomial(n: u32, c: BigRational, m: u32) -> Self {
        Self::from_terms([(BigRational::one(), 0, n), (-c, m, 0)])
    }

    fn add_term(&mut self, c: BigRational, i: u32, j: u32) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0, 0)
    }

    /// `ord f`: the lowest total degree present.
    pub fn order(&self) -> Result<u32, OracleError> {
        self.terms.keys().map(|(i, j)| i + j).min().ok_or(OracleError::ZeroPolynomial)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|(_, j)| *j).max()
    }

    pub fn homogeneous_part(&self, d: u32) -> BivariatePoly {
        Self {
            terms: self.terms.iter().filter(|((i, j), _)| i + j == d).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// `in f`: the homogeneous part of degree `ord f`.
    pub fn initial_form(&self) -> Result<BivariatePoly, OracleError> {
        Ok(self.homogeneous_part(self.order()?))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), v)| (v * c, i, j)))
    }

    pub fn partial_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), v)| (v * int(i as i64), i - 1, j)),
        )
    }

    pub fn partial_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|(&(i, j), v)| (v * int(j as i64), i, j - 1)),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `f(x + c y, y)`.
    pub fn shear(&self, c: i64) -> Self {
        if c == 0 {
            return self.clone();
        }
        let lin = &Self::x() + &Self::y().scale(&int(c));
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            out = &out + &(&lin.pow(i) * &Self::term(v.clone(), 0, j));
        }
        out
    }

    /// `f(0, y)` as a polynomial in `y`.
    pub fn at_x_zero(&self) -> UPoly {
        let mut v = vec![BigRational::zero(); self.degree_y().map_or(0, |d| d as usize + 1)];
        for (&(i, j), c) in &self.terms {
            if i == 0 {
                v[j as usize] = c.clone();
            }
        }
        UPoly::new(v)
    }

    /// `f(x, 0)` as a polynomial in `x`.
    pub fn at_y_zero(&self) -> UPoly {
        let deg = self.terms.keys().map(|(i, _)| *i).max().map_or(0, |d| d as usize + 1);
        let mut v = vec![BigRational::zero(); deg];
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                v[i as usize] = c.clone();
            }
        }
        UPoly::new(v)
    }

    /// Coefficients in `y`, each a polynomial in `x`.
    pub fn to_y_coeffs(&self) -> Vec<UPoly> {
        let dy = self.degree_y().map_or(0, |d| d as usize + 1);
        let mut rows: Vec<Vec<BigRational>> = vec![Vec::new(); dy];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, BigRational::zero());
            }
            row[i as usize] = c.clone();
        }
        rows.into_iter().map(UPoly::new).collect()
    }

    pub fn from_y_coeffs(coeffs: &[UPoly]) -> Self {
        let mut p = Self::zero();
        for (j, c) in coeffs.iter().enumerate() {
            for (i, v) in c.coeffs().iter().enumerate() {
                p.add_term(v.clone(), i as u32, j as u32);
            }
        }
        p
    }

    /// `x^a y^b` dividing every term, with `(a, b)` maximal.
    pub fn monomial_content(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|(i, _)| *i).min().unwrap_or(0);
        let b = self.terms.keys().map(|(_, j)| *j).min().unwrap_or(0);
        (a, b)
    }

    /// `f / (x^a y^b)`; the monomial must divide every term.
    pub fn divide_monomial(&self, a: u32, b: u32) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), v)| (v.clone(), i - a, j - b)))
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, o: &BivariatePoly) -> BivariatePoly {
        let mut p = self.clone();
        for (&(i, j), v) in &o.terms {
            p.add_term(v.clone(), i, j);
        }
        p
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, o: &BivariatePoly) -> BivariatePoly {
        self + &-o
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, o: &BivariatePoly) -> BivariatePoly {
        let mut p = BivariatePoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                p.add_term(a * b, i + k, j + l);
            }
        }
        p
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, coeff: &BigRational, i: u32, j: u32) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    if !coeff.is_one() || (i == 0 && j == 0) {
        parts.push(coeff.to_string());
    }
    for (var, e) in [("x", i), ("y", j)] {
        match e {
            0 => {}
            1 => parts.push(var.to_string()),
            _ => parts.push(format!("{var}^{e}")),
        }
    }
    f.write_str(&parts.join("*"))
}

impl fmt::Display for BivariatePoly {
    /// Terms by increasing total degree, then decreasing power of `y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|&&(i, j)| (i + j, std::cmp::Reverse(j)));
        for (n, &&(i, j)) in keys.iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let (sign, abs) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            match (n, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            write_monomial(f, &abs, i, j)?;
        }
        Ok(())
    }
}

/// Largest exponent accepted after `^`.
const MAX_POWER: u32 = 256;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> OracleError {
        OracleError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt, OracleError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn expr(&mut self) -> Result<BivariatePoly, OracleError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivariatePoly, OracleError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    let c = d.constant_term();
                    if d.terms().count() != 1 || c.is_zero() {
                        return Err(self.err("division only by a nonzero constant"));
                    }
                    acc = acc.scale(&c.recip());
                }
                Some(c) if c == b'(' || c == b'x' || c == b'y' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<BivariatePoly, OracleError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .ok()
                .filter(|e| *e <= MAX_POWER)
                .ok_or_else(|| self.err(format!("exponent above {MAX_POWER}")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BivariatePoly, OracleError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BivariatePoly::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BivariatePoly::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(c) if c.is_ascii_digit() => Ok(BivariatePoly::constant(BigRational::from_integer(self.integer()?))),
            Some(c) => Err(self.err(format!("unexpected character {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl FromStr for BivariatePoly {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let out = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BivariatePoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("y^2 - x^3").to_string(), "y^2 - x^3");
        assert_eq!(p("3/2*x^2*y - y^3").to_string(), "-y^3 + 3/2*x^2*y");
        assert_eq!(p("(y^2-x^3)*(y^2-2*x^3)").to_string(), "y^4 - 3*x^3*y^2 + 2*x^6");
        assert_eq!(p("2x y").to_string(), "2*x*y");
        assert_eq!(p("-(x - y)^2").to_string(), "-y^2 + 2*x*y - x^2");
        assert!("y^2 - ".parse::<BivariatePoly>().is_err());
        assert!("y^2 z".parse::<BivariatePoly>().is_err());
        assert!("x/y".parse::<BivariatePoly>().is_err());
        assert!("(x".parse::<BivariatePoly>().is_err());
    }

    #[test]
    fn order_and_initial_form() {
        assert_eq!(p("y^2 - x^3").order().unwrap(), 2);
        assert_eq!(p("y^2 - x^3").initial_form().unwrap(), p("y^2"));
        let f = p("(y^2-x^3)*(x^2-y^3)");
        assert_eq!(f.order().unwrap(), 4);
        assert_eq!(f.initial_form().unwrap(), p("x^2*y^2"));
        assert_eq!(p("x + y + x^2").initial_form().unwrap(), p("x + y"));
        assert_eq!(BivariatePoly::zero().order(), Err(OracleError::ZeroPolynomial));
    }

    #[test]
    fn calculus_and_shear() {
        let f = p("y^2 - x^3");
        assert_eq!(f.partial_x(), p("-3*x^2"));
        assert_eq!(f.partial_y(), p("2*y"));
        assert_eq!(p("x").shear(2), p("x + 2*y"));
        let g = p("x^2*y + y^3 - 4");
        assert_eq!(BivariatePoly::from_y_coeffs(&g.to_y_coeffs()), g);
        assert_eq!(g.at_x_zero(), UPoly::from_ints(&[-4, 0, 0, 1]));
        assert_eq!(g.at_y_zero(), UPoly::from_ints(&[-4]));
    }
}
