//! Local intersection multiplicity at the origin.
//!
//! The main path removes common factors that are units at the origin, shears
//! `x <- x + c y` until the leading coefficient in `y` of `f` is a constant
//! and `f`, `g` share no zero on `x = 0` other than the origin, and then
//! reads `(f, g)_0 = ord_x Res_y(f, g)`. Fulton's algorithm offers an
//! independent computation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::bivariate::BivariatePoly;
use super::upoly::UPoly;
use super::OracleError;

/// Shears tried before giving up.
pub const MAX_SHEAR: i64 = 64;

/// Work bound for [`fulton`].
pub const FULTON_STEPS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IntersectionNumber {
    Finite(u64),
    Infinite,
}

impl IntersectionNumber {
    pub fn finite(self) -> Option<u64> {
        match self {
            IntersectionNumber::Finite(n) => Some(n),
            IntersectionNumber::Infinite => None,
        }
    }
}

impl fmt::Display for IntersectionNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntersectionNumber::Finite(n) => write!(f, "{n}"),
            IntersectionNumber::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for IntersectionNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            IntersectionNumber::Finite(n) => s.serialize_u64(*n),
            IntersectionNumber::Infinite => s.serialize_str("inf"),
        }
    }
}

// --- Polynomials in y over Q[x] ------------------------------------------------

fn trim(mut v: Vec<UPoly>) -> Vec<UPoly> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn content(a: &[UPoly]) -> UPoly {
    a.iter().fold(UPoly::zero(), |acc, c| acc.gcd(c))
}

fn primitive_part(a: &[UPoly]) -> Vec<UPoly> {
    let c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x.exact_div(&c).expect("content divides")).collect()
}

/// `lc(b)^(deg a - deg b + 1) a mod b` in `Q[x][y]`.
fn pseudo_rem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        let mut next: Vec<UPoly> = r.iter().map(|c| c * &lb).collect();
        for (i, bc) in b.iter().enumerate() {
            next[k + i] = &next[k + i] - &(&lr * bc);
        }
        r = trim(next);
        if r.len() > k + db + 1 {
            unreachable!("leading term cancels");
        }
    }
    r
}

/// Greatest common divisor in `Q[x, y]`, up to a rational unit.
pub fn poly_gcd(f: &BivariatePoly, g: &BivariatePoly) -> BivariatePoly {
    let (mut a, mut b) = (trim(f.to_y_coeffs()), trim(g.to_y_coeffs()));
    if a.is_empty() {
        return g.clone();
    }
    if b.is_empty() {
        return f.clone();
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let c = content(&a).gcd(&content(&b));
    let (mut a, mut b) = (primitive_part(&a), primitive_part(&b));
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive_part(&r);
    }
    let g: Vec<UPoly> = a.iter().map(|x| x * &c).collect();
    BivariatePoly::from_y_coeffs(&g)
}

/// Exact quotient in `Q[x][y]`.
pub fn poly_exact_div(f: &BivariatePoly, d: &BivariatePoly) -> Option<BivariatePoly> {
    let mut r = trim(f.to_y_coeffs());
    let b = trim(d.to_y_coeffs());
    let db = b.len().checked_sub(1)?;
    let mut q = vec![UPoly::zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap().exact_div(&b[db])?;
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &(&c * bc);
        }
        q[k] = c;
        r = trim(r);
    }
    r.is_empty().then(|| BivariatePoly::from_y_coeffs(&q))
}

/// Determinant over `Q[x]` by fraction-free Gaussian elimination.
fn bareiss_det(mut m: Vec<Vec<UPoly>>) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::one();
    }
    let mut sign = false;
    let mut prev = UPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return UPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// `Res_y(f, g)` as a polynomial in `x`.
pub fn resultant_y(f: &BivariatePoly, g: &BivariatePoly) -> UPoly {
    let a = trim(f.to_y_coeffs());
    let b = trim(g.to_y_coeffs());
    if a.is_empty() || b.is_empty() {
        return UPoly::zero();
    }
    let (p, q) = (a.len() - 1, b.len() - 1);
    let n = p + q;
    let mut m = vec![vec![UPoly::zero(); n]; n];
    for row in 0..q {
        for (k, c) in a.iter().enumerate() {
            m[row][row + p - k] = c.clone();
        }
    }
    for row in 0..p {
        for (k, c) in b.iter().enumerate() {
            m[q + row][row + q - k] = c.clone();
        }
    }
    bareiss_det(m)
}

fn vanishes_at_origin(f: &BivariatePoly) -> bool {
    f.constant_term().is_zero()
}

/// A shear after which `lc_y(f)` is a nonzero constant and the only common
/// zero of `f(0, y)` and `g(0, y)` is `y = 0`.
pub fn regularizing_shear(f: &BivariatePoly, g: &BivariatePoly) -> Result<i64, OracleError> {
    for c in 0..=MAX_SHEAR {
        let fc = f.shear(c);
        if fc.degree_y() != fc.total_degree() {
            continue;
        }
        let gc = g.shear(c);
        let h = fc.at_x_zero().gcd(&gc.at_x_zero());
        if h.degree() == h.order() {
            return Ok(c);
        }
    }
    Err(OracleError::ShearNotFound)
}

/// `(f, g)_0`; `Infinite` exactly when `f` and `g` share a factor through 0.
pub fn intersection_number(f: &BivariatePoly, g: &BivariatePoly) -> Result<IntersectionNumber, OracleError> {
    if f.is_zero() || g.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    if !vanishes_at_origin(f) || !vanishes_at_origin(g) {
        return Ok(IntersectionNumber::Finite(0));
    }
    let h = poly_gcd(f, g);
    let (f, g) = if h.total_degree().unwrap_or(0) > 0 {
        if vanishes_at_origin(&h) {
            return Ok(IntersectionNumber::Infinite);
        }
        (
            poly_exact_div(f, &h).expect("gcd divides"),
            poly_exact_div(g, &h).expect("gcd divides"),
        )
    } else {
        (f.clone(), g.clone())
    };
    let c = regularizing_shear(&f, &g)?;
    let r = resultant_y(&f.shear(c), &g.shear(c));
    match r.order() {
        Some(k) => Ok(IntersectionNumber::Finite(k as u64)),
        None => unreachable!("coprime polynomials have a nonzero resultant"),
    }
}

/// Fulton's algorithm. Errors when the work bound is exhausted, which a
/// shared component through the origin always does.
pub fn fulton(f: &BivariatePoly, g: &BivariatePoly) -> Result<IntersectionNumber, OracleError> {
    let mut steps = 0usize;
    let mut total = 0u64;
    let mut stack = vec![(f.clone(), g.clone())];
    while let Some((mut a, mut b)) = stack.pop() {
        loop {
            steps += 1;
            if steps > FULTON_STEPS {
                return Err(OracleError::FultonBudget);
            }
            if a.is_zero() || b.is_zero() {
                return Ok(IntersectionNumber::Infinite);
            }
            if !vanishes_at_origin(&a) || !vanishes_at_origin(&b) {
                break;
            }
            let (pa, pb) = (a.at_y_zero(), b.at_y_zero());
            match (pa.degree(), pb.degree()) {
                (None, None) => return Ok(IntersectionNumber::Infinite),
                (Some(_), None) => std::mem::swap(&mut a, &mut b),
                _ => {}
            }
            let (pa, pb) = (a.at_y_zero(), b.at_y_zero());
            if pa.is_zero() {
                // a = y * rest, and (y, b)_0 = ord_x b(x, 0).
                total += pb.order().expect("b(0,0) = 0 and b(x,0) != 0") as u64;
                let rest = a.divide_monomial(0, 1);
                stack.push((rest, b));
                break;
            }
            let (r, s) = (pa.degree().unwrap(), pb.degree().unwrap());
            if r > s {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let factor = pb.leading().unwrap() / pa.leading().unwrap();
            let shift = BivariatePoly::term(factor, (s - r) as u32, 0);
            b = &b - &(&shift * &a);
        }
    }
    Ok(IntersectionNumber::Finite(total))
}

/// `(f, g)_0` after the substitution `x <- x + c y`; used for invariance checks.
pub fn sheared_intersection(f: &BivariatePoly, g: &BivariatePoly, c: i64) -> Result<IntersectionNumber, OracleError> {
    intersection_number(&f.shear(c), &g.shear(c))
}

#[allow(dead_code)]
fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use IntersectionNumber::*;

    fn p(s: &str) -> BivariatePoly {
        s.parse().unwrap()
    }

    fn i(a: &str, b: &str) -> IntersectionNumber {
        intersection_number(&p(a), &p(b)).unwrap()
    }

    #[test]
    fn worked_values() {
        assert_eq!(i("y^2-x^3", "y^2-2*x^3"), Finite(6));
        assert_eq!(i("x", "y"), Finite(1));
        assert_eq!(i("y^2-x^3", "y"), Finite(3));
        assert_eq!(i("y^2-x^3", "x^2-y^3"), Finite(4));
        assert_eq!(i("y^2-x^3", "x"), Finite(2));
        assert_eq!(i("y^2-x^3", "x+1"), Finite(0));
    }

    #[test]
    fn common_components() {
        assert_eq!(i("y^2-x^3", "(y^2-x^3)*(x+y)"), Infinite);
        // The shared factor y - 1 is a unit at the origin.
        assert_eq!(i("(y-1)*y", "(y-1)*x"), Finite(1));
        assert_eq!(i("x*y", "x*(y+x^2)"), Infinite);
    }

    #[test]
    fn fulton_agrees() {
        for (a, b) in [
            ("y^2-x^3", "y^2-2*x^3"),
            ("x", "y"),
            ("y^2-x^3", "x^2-y^3"),
            ("(y-1)*y", "(y-1)*x"),
            ("y^3-x^5", "2*y^2+x^4-x*y"),
            ("y^2-x^3", "(y^2-x^3)*(x+y)"),
        ] {
            assert_eq!(fulton(&p(a), &p(b)).unwrap(), i(a, b), "{a} / {b}");
        }
    }

    #[test]
    fn resultant_of_cusps() {
        let r = resultant_y(&p("y^2-x^3"), &p("y^2-2*x^3"));
        assert_eq!(r, UPoly::monomial(int(1), 6));
    }

    #[test]
    fn gcd_and_division() {
        let f = p("(y^2-x^3)*(x+y)");
        let g = p("(y^2-x^3)*(x-2*y+1)");
        let h = poly_gcd(&f, &g);
        let q = poly_exact_div(&f, &h).unwrap();
        assert_eq!(q.total_degree(), Some(1));
        assert!(poly_exact_div(&p("x+y"), &p("x-y")).is_none());
    }
}
