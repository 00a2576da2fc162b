use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::ff::{inv_mod, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Laurent polynomial in the parameters `q1`, `q2` with integer coefficients.
///
/// Terms are keyed by the exponent pair `(a, b)` of `q1^a * q2^b`; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamLaurent {
    terms: BTreeMap<(i32, i32), BigInt>,
}

impl ParamLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, a: i32, b: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        Self { terms }
    }

    pub fn q1() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn q2() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `q3 = (q1 q2)^-1`.
    pub fn q3() -> Self {
        Self::monomial(1, -1, -1)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i32, i32), BigInt)>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, e: (i32, i32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// The coefficient if this is a constant (possibly zero).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: i32, b: i32) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Componentwise minimum of the exponents, `None` for zero.
    pub fn min_exponents(&self) -> Option<(i32, i32)> {
        let a = self.terms.keys().map(|e| e.0).min()?;
        let b = self.terms.keys().map(|e| e.1).min()?;
        Some((a, b))
    }

    /// Multiply by `q1^da q2^db`.
    pub fn shift(&self, da: i32, db: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + da, b + db), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Exact division of every coefficient by `c`.
    pub(crate) fn div_exact_int(&self, c: &BigInt) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| {
                    debug_assert!((v % c).is_zero());
                    (*e, v / c)
                })
                .collect(),
        }
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Coefficient of the largest monomial in the canonical order.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Value over `F_p` at nonzero `q1`, `q2`.
    pub fn eval_mod(&self, p: u64, q1: u64, q2: u64) -> u64 {
        debug_assert!(!q1.is_multiple_of(p) && !q2.is_multiple_of(p));
        let q1i = inv_mod(q1, p);
        let q2i = inv_mod(q2, p);
        let pw = |x: u64, xi: u64, e: i32| {
            if e >= 0 {
                pow_mod(x, e as u64, p)
            } else {
                pow_mod(xi, (-e) as u64, p)
            }
        };
        let pb = BigInt::from(p);
        let mut acc = 0u64;
        for (&(a, b), c) in &self.terms {
            let c = c.mod_floor(&pb).to_u64().unwrap_or(0);
            let t = mul_mod(c, mul_mod(pw(q1, q1i, a), pw(q2, q2i, b), p), p);
            acc = (acc + t) % p;
        }
        acc
    }
}

impl fmt::Debug for ParamLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text: monomials `c*q1^a*q2^b` in increasing exponent order,
/// joined by ` + `; zero prints as `0`.
impl fmt::Display for ParamLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*q1^{a}*q2^{b}")?;
        }
        Ok(())
    }
}

impl FromStr for ParamLaurent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let bad = || Error::Parse(format!("bad Laurent monomial in {s:?}"));
        let mut out = Self::zero();
        for mono in s.split(" + ") {
            let mut parts = mono.trim().split('*');
            let c: BigInt = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let a = parts
                .next()
                .and_then(|t| t.strip_prefix("q1^"))
                .ok_or_else(bad)?
                .parse::<i32>()
                .map_err(|_| bad())?;
            let b = parts
                .next()
                .and_then(|t| t.strip_prefix("q2^"))
                .ok_or_else(bad)?
                .parse::<i32>()
                .map_err(|_| bad())?;
            if parts.next().is_some() {
                return Err(bad());
            }
            out.add_term((a, b), c);
        }
        Ok(out)
    }
}

impl Add<&ParamLaurent> for &ParamLaurent {
    type Output = ParamLaurent;
    fn add(self, rhs: &ParamLaurent) -> ParamLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&ParamLaurent> for &ParamLaurent {
    type Output = ParamLaurent;
    fn sub(self, rhs: &ParamLaurent) -> ParamLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&ParamLaurent> for &ParamLaurent {
    type Output = ParamLaurent;
    fn mul(self, rhs: &ParamLaurent) -> ParamLaurent {
        let mut out = ParamLaurent::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ParamLaurent {
    type Output = ParamLaurent;
    fn neg(self) -> ParamLaurent {
        ParamLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Add for ParamLaurent {
    type Output = ParamLaurent;
    fn add(self, rhs: ParamLaurent) -> ParamLaurent {
        &self + &rhs
    }
}

impl Sub for ParamLaurent {
    type Output = ParamLaurent;
    fn sub(self, rhs: ParamLaurent) -> ParamLaurent {
        &self - &rhs
    }
}

impl Mul for ParamLaurent {
    type Output = ParamLaurent;
    fn mul(self, rhs: ParamLaurent) -> ParamLaurent {
        &self * &rhs
    }
}

impl Neg for ParamLaurent {
    type Output = ParamLaurent;
    fn neg(self) -> ParamLaurent {
        -&self
    }
}
