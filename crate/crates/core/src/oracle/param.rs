//! Truncated Puiseux parametrizations `x = t^n`, `y = sum a_i t^i`.
//!
//! A [`BranchParam`] knows the coefficients `a_i` for `i < trunc`; anything
//! at or beyond `t^trunc` is unknown. Every derived quantity is either exact
//! or reported as [`OracleError::TruncationExceeded`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bivariate::BivariatePoly;
use super::OracleError;
use crate::semigroup::{BranchSemigroup, CharExponents};

pub const DEFAULT_TRUNC: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchParam {
    n: u64,
    y: BTreeMap<u64, BigRational>,
    trunc: u64,
}

impl BranchParam {
    /// Validates `1 <= n <= i < trunc` for every term and primitivity.
    pub fn new(n: u64, y: BTreeMap<u64, BigRational>, trunc: u64) -> Result<Self, OracleError> {
        if n == 0 {
            return Err(OracleError::InvalidParam("n must be positive".into()));
        }
        let y: BTreeMap<u64, BigRational> = y.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if let Some((&i, _)) = y.iter().find(|(&i, _)| i < n || i >= trunc) {
            return Err(OracleError::InvalidParam(format!(
                "exponent {i} outside [{n}, {trunc})"
            )));
        }
        let g = y.keys().fold(n, |g, &i| g.gcd(&i));
        if g != 1 {
            return Err(OracleError::NotPrimitive);
        }
        Ok(Self { n, y, trunc })
    }

    /// `x = t^n`, `y = sum t^beta_k` over the characteristic exponents.
    pub fn from_semigroup(s: &BranchSemigroup, trunc: u64) -> Result<Self, OracleError> {
        let beta = s.to_char_exponents();
        let e = beta.exponents();
        let y = e[1..].iter().map(|&b| (b, BigRational::one())).collect();
        Self::new(e[0], y, trunc)
    }

    /// As [`Self::from_semigroup`] with random nonzero coefficients and extra
    /// terms at exponents that do not change the characteristic sequence.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, s: &BranchSemigroup, trunc: u64) -> Result<Self, OracleError> {
        let beta = s.to_char_exponents();
        let e = beta.exponents().to_vec();
        let gcds = beta.gcd_sequence();
        let mut y = BTreeMap::new();
        for i in e[0]..trunc {
            // Highest k with beta_k <= i; only multiples of e_k are free.
            let k = e.iter().rposition(|&b| b <= i).unwrap();
            let coef = if k > 0 && e[k] == i {
                nonzero(rng)
            } else if i % gcds[k] == 0 && rng.gen_bool(0.3) {
                nonzero(rng)
            } else {
                continue;
            };
            y.insert(i, coef);
        }
        Self::new(e[0], y, trunc)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn y(&self) -> &BTreeMap<u64, BigRational> {
        &self.y
    }

    pub fn trunc(&self) -> u64 {
        self.trunc
    }

    pub fn is_smooth(&self) -> bool {
        self.n == 1
    }

    /// Puiseux characteristic exponents read off the known terms.
    pub fn char_exponents(&self) -> Result<CharExponents, OracleError> {
        let mut beta = vec![self.n];
        let mut e = self.n;
        for &i in self.y.keys() {
            if i % e != 0 {
                beta.push(i);
                e = e.gcd(&i);
            }
        }
        Ok(CharExponents::new(beta)?)
    }

    pub fn semigroup(&self) -> Result<BranchSemigroup, OracleError> {
        Ok(self.char_exponents()?.to_semigroup()?)
    }

    fn y_series(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.trunc as usize];
        for (&i, c) in &self.y {
            v[i as usize] = c.clone();
        }
        v
    }
}

fn nonzero<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let num: i64 = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den: i64 = rng.gen_range(1..=3);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn mul_trunc(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                v[i + j] += x * y;
            }
        }
    }
    v
}

/// `(f, g)_0 = ord_t g(t^n, y(t))` when the order is below the truncation.
pub fn param_intersection(p: &BranchParam, g: &BivariatePoly) -> Result<u64, OracleError> {
    if g.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    let len = p.trunc as usize;
    let y = p.y_series();
    let max_j = g.terms().map(|(&(_, j), _)| j).max().unwrap_or(0);
    let mut powers = vec![vec![BigRational::zero(); len]];
    powers[0][0] = BigRational::one();
    for j in 1..=max_j as usize {
        let next = mul_trunc(&powers[j - 1], &y, len);
        powers.push(next);
    }
    let mut total = vec![BigRational::zero(); len];
    for (&(i, j), c) in g.terms() {
        let shift = p.n as usize * i as usize;
        if shift >= len {
            continue;
        }
        for (k, a) in powers[j as usize].iter().enumerate().take(len - shift) {
            if !a.is_zero() {
                total[k + shift] += c * a;
            }
        }
    }
    total
        .iter()
        .position(|c| !c.is_zero())
        .map(|k| k as u64)
        .ok_or(OracleError::TruncationExceeded { trunc: p.trunc })
}

/// `q = p^alpha` for a series with `p_0 = 1`, up to degree `len - 1`.
fn series_power(p: &[BigRational], alpha: &BigRational, len: usize) -> Vec<BigRational> {
    let mut q = vec![BigRational::zero(); len];
    if len == 0 {
        return q;
    }
    q[0] = BigRational::one();
    let a1 = alpha + BigRational::one();
    for k in 1..len {
        let kk = BigRational::from_integer(BigInt::from(k));
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let Some(pi) = p.get(i) else { break };
            if pi.is_zero() || q[k - i].is_zero() {
                continue;
            }
            let w = &a1 * BigRational::from_integer(BigInt::from(i)) - &kk;
            acc += w * pi * &q[k - i];
        }
        q[k] = acc / kk;
    }
    q
}

/// Strict transform in the chart `x1 = x`, `y1 = y/x - a`, followed by a
/// linear change of coordinates that puts it back in the form `x = t^n'`.
pub fn param_blowup(p: &BranchParam) -> Result<BranchParam, OracleError> {
    if p.is_smooth() {
        return Err(OracleError::SmoothBranch);
    }
    let n = p.n;
    let t1 = p.trunc - n;
    let y1: BTreeMap<u64, BigRational> =
        p.y.iter().filter(|(&i, _)| i > n).map(|(&i, c)| (i - n, c.clone())).collect();
    let Some((&s, b)) = y1.iter().next() else {
        return Err(OracleError::TruncationExceeded { trunc: p.trunc });
    };
    let lost = |e| match e {
        OracleError::NotPrimitive => OracleError::TruncationExceeded { trunc: p.trunc },
        e => e,
    };
    if s >= n {
        return BranchParam::new(n, y1, t1).map_err(lost);
    }
    // X = y1 / b = t^s (1 + h(t)), known mod t^t1; the new y is t^n in tau = X^(1/s).
    let b = b.clone();
    let hlen = (t1 - s) as usize;
    let mut p1 = vec![BigRational::zero(); hlen];
    for (&i, c) in &y1 {
        let k = (i - s) as usize;
        if k < hlen {
            p1[k] = c / &b;
        }
    }
    let t2 = p.trunc - s;
    let mut y = BTreeMap::new();
    for k in n..t2 {
        let alpha = -BigRational::new(BigInt::from(k), BigInt::from(s));
        let q = series_power(&p1, &alpha, (k - n + 1) as usize);
        let c = &q[(k - n) as usize] * BigRational::new(BigInt::from(n), BigInt::from(k));
        if !c.is_zero() {
            y.insert(k, c);
        }
    }
    BranchParam::new(s, y, t2).map_err(lost)
}

/// Blows up until the branch is smooth, returning every intermediate germ.
pub fn param_resolve(p: &BranchParam) -> Result<Vec<BranchParam>, OracleError> {
    let mut out = vec![p.clone()];
    while !out.last().unwrap().is_smooth() {
        let next = param_blowup(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoef {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
struct RawParam {
    n: u64,
    y: BTreeMap<String, RawCoef>,
    #[serde(default = "default_trunc")]
    trunc: u64,
}

fn default_trunc() -> u64 {
    DEFAULT_TRUNC
}

struct Terms<'a>(&'a BTreeMap<u64, BigRational>);

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (i, c) in self.0 {
            map.serialize_entry(&i.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

/// Exponents in numeric order, coefficients as `"p/q"` strings.
impl Serialize for BranchParam {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BranchParam", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("y", &Terms(&self.y))?;
        st.serialize_field("trunc", &self.trunc)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for BranchParam {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RawParam::deserialize(d)?;
        let mut y = BTreeMap::new();
        for (k, v) in raw.y {
            let i: u64 = k.trim().parse().map_err(|_| D::Error::custom(format!("bad exponent {k:?}")))?;
            let c = match v {
                RawCoef::Int(c) => BigRational::from_integer(BigInt::from(c)),
                RawCoef::Text(t) => t
                    .trim()
                    .parse::<BigRational>()
                    .map_err(|_| D::Error::custom(format!("bad coefficient {t:?}")))?,
            };
            y.insert(i, c);
        }
        BranchParam::new(raw.n, y, raw.trunc).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::blowup_branch;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn param(n: u64, terms: &[(u64, i64)], trunc: u64) -> BranchParam {
        let y = terms.iter().map(|&(i, c)| (i, BigRational::from_integer(c.into()))).collect();
        BranchParam::new(n, y, trunc).unwrap()
    }

    fn sg(v: &[u64]) -> BranchSemigroup {
        BranchSemigroup::new(v.to_vec()).unwrap()
    }

    #[test]
    fn intersections() {
        let p = param(4, &[(6, 1), (7, 1)], 64);
        assert_eq!(param_intersection(&p, &"y^2-x^3".parse().unwrap()).unwrap(), 13);
        assert_eq!(param_intersection(&p, &"x".parse().unwrap()).unwrap(), 4);
        let cusp = param(2, &[(3, 1)], 64);
        assert_eq!(
            param_intersection(&cusp, &"y^2-x^3".parse().unwrap()),
            Err(OracleError::TruncationExceeded { trunc: 64 })
        );
    }

    #[test]
    fn semigroups_and_validation() {
        assert_eq!(param(4, &[(6, 1), (7, 1)], 64).semigroup().unwrap(), sg(&[4, 6, 13]));
        let y = [(6u64, BigRational::one())].into_iter().collect();
        assert_eq!(BranchParam::new(4, y, 64), Err(OracleError::NotPrimitive));
        let y = [(2u64, BigRational::one())].into_iter().collect();
        assert!(matches!(BranchParam::new(4, y, 64), Err(OracleError::InvalidParam(_))));
    }

    #[test]
    fn blowups() {
        let p = param(4, &[(6, 1), (7, 1)], 64);
        let q = param_blowup(&p).unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(q.y().get(&4), Some(&BigRational::one()));
        assert_eq!(q.y().get(&5), Some(&BigRational::from_integer((-2).into())));
        assert_eq!(q.semigroup().unwrap(), sg(&[2, 5]));
        let r = param_blowup(&param(4, &[(9, 1), (10, 1)], 64)).unwrap();
        assert_eq!(r.semigroup().unwrap(), sg(&[4, 5]));
        assert!(param_blowup(&param(2, &[(3, 1)], 64)).unwrap().is_smooth());
    }

    #[test]
    fn blowup_agrees_with_semigroup_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for v in [&[4u64, 6, 13][..], &[6, 9, 19], &[3, 7], &[5, 7], &[4, 10, 21], &[6, 8, 27]] {
            let s = sg(v);
            let p = BranchParam::random(&mut rng, &s, 40).unwrap();
            assert_eq!(p.semigroup().unwrap(), s);
            let q = param_blowup(&p).unwrap();
            assert_eq!(q.semigroup().unwrap(), blowup_branch(&s).unwrap(), "{v:?}");
        }
    }

    #[test]
    fn json_round_trip() {
        let p: BranchParam = serde_json::from_str(r#"{"n":4,"y":{"6":"1","7":1}}"#).unwrap();
        assert_eq!(p.trunc(), DEFAULT_TRUNC);
        let back: BranchParam = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
