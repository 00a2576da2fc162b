use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::laurent::ParamLaurent;
use super::poly::{b_div_exact, b_from_laurent, b_gcd, b_to_laurent};
use crate::error::{arg, Error, Result};

/// Exact element of `Q(q1, q2)`, stored as a reduced quotient of Laurent
/// polynomials.
///
/// Normal form: the numerator carries every monomial factor, the denominator
/// is a polynomial with zero minimal exponent in each parameter, numerator and
/// denominator are coprime, and the denominator's largest monomial has a
/// positive coefficient. Structural equality is therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: ParamLaurent,
    den: ParamLaurent,
}

impl Scalar {
    pub fn zero() -> Self {
        Self {
            num: ParamLaurent::zero(),
            den: ParamLaurent::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(ParamLaurent::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(ParamLaurent::constant(c))
    }

    pub fn from_ratio(n: i64, d: i64) -> Result<Self> {
        Self::new(ParamLaurent::constant(n), ParamLaurent::constant(d))
    }

    pub fn from_laurent(num: ParamLaurent) -> Self {
        Self {
            num,
            den: ParamLaurent::one(),
        }
    }

    pub fn q1() -> Self {
        Self::from_laurent(ParamLaurent::q1())
    }

    pub fn q2() -> Self {
        Self::from_laurent(ParamLaurent::q2())
    }

    pub fn q3() -> Self {
        Self::from_laurent(ParamLaurent::q3())
    }

    /// `num / den`, normalized.
    pub fn new(num: ParamLaurent, den: ParamLaurent) -> Result<Self> {
        if den.is_zero() {
            return arg("zero denominator");
        }
        Ok(Self::normalize(num, den))
    }

    pub fn num(&self) -> &ParamLaurent {
        &self.num
    }

    pub fn den(&self) -> &ParamLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn normalize(num: ParamLaurent, den: ParamLaurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (na, nb) = num.min_exponents().unwrap();
        let (da, db) = den.min_exponents().unwrap();
        let mut n = num.shift(-na, -nb);
        let mut d = den.shift(-da, -db);
        if let Some(c) = d.as_constant() {
            let g = n.content().gcd(&c);
            if !g.is_one() {
                n = n.div_exact_int(&g);
                d = d.div_exact_int(&g);
            }
        } else {
            let (nd, dd) = (b_from_laurent(&n), b_from_laurent(&d));
            let g = b_gcd(&nd, &dd);
            if !(g.len() == 1 && g[0].len() == 1 && g[0][0].is_one()) {
                n = b_to_laurent(&b_div_exact(&nd, &g).expect("gcd divides numerator"));
                d = b_to_laurent(&b_div_exact(&dd, &g).expect("gcd divides denominator"));
            }
        }
        if d.leading_coeff().is_some_and(|c| c.is_negative()) {
            n = -n;
            d = -d;
        }
        Self {
            num: n.shift(na - da, nb - db),
            den: d,
        }
    }

    /// Re-run normalization; the result equals `self` for every value built
    /// through the public API.
    pub fn renormalized(&self) -> Self {
        Self::normalize(self.num.clone(), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return arg("inverse of zero");
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(Self {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn scale_int(&self, c: i64) -> Self {
        Self::normalize(self.num.scale(&BigInt::from(c)), self.den.clone())
    }

    /// Equality decided by cross-multiplication, independent of normal form.
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Substitute exact values for the parameters.
    pub fn substitute(&self, q1: &Scalar, q2: &Scalar) -> Result<Scalar> {
        let eval = |p: &ParamLaurent| -> Result<Scalar> {
            let mut acc = Scalar::zero();
            for (&(a, b), c) in p.terms() {
                let c = Scalar::from_laurent(ParamLaurent::constant(c.clone()));
                acc += &(&c * &(&q1.pow(a)? * &q2.pow(b)?));
            }
            Ok(acc)
        };
        let d = eval(&self.den)?;
        if d.is_zero() {
            return Err(Error::BadPoint("denominator vanishes".into()));
        }
        Ok(&eval(&self.num)? / &d)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<ParamLaurent> for Scalar {
    fn from(p: ParamLaurent) -> Self {
        Self::from_laurent(p)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text `num/den`, each side in [`ParamLaurent`] canonical form.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("missing '/' in scalar {s:?}")))?;
        Scalar::new(n.parse()?, d.parse()?)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Scalar::normalize(&self.num + &rhs.num, self.den.clone());
        }
        Scalar::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar {
                num: &self.num * &rhs.num,
                den: ParamLaurent::one(),
            };
        }
        Scalar::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a checked inverse.
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> ParamLaurent {
        s.parse().unwrap()
    }

    #[test]
    fn cancels_common_factor() {
        // (q1^2 - q2^2) / (q1 + q2) = q1 - q2
        let n = lp("1*q1^2*q2^0 + -1*q1^0*q2^2");
        let d = lp("1*q1^1*q2^0 + 1*q1^0*q2^1");
        let s = Scalar::new(n, d).unwrap();
        assert_eq!(s, Scalar::from_laurent(lp("1*q1^1*q2^0 + -1*q1^0*q2^1")));
    }

    #[test]
    fn monomials_move_to_numerator_and_sign_is_canonical() {
        let s = Scalar::new(lp("1*q1^0*q2^0"), lp("-2*q1^3*q2^1 + -2*q1^4*q2^1")).unwrap();
        assert_eq!(s.den().min_exponents(), Some((0, 0)));
        assert!(s.den().leading_coeff().unwrap().is_positive());
        assert_eq!(s.num(), &lp("-1*q1^-3*q2^-1"));
        assert_eq!(s.den(), &lp("2*q1^0*q2^0 + 2*q1^1*q2^0"));
    }

    #[test]
    fn field_operations() {
        let a = Scalar::q1() + Scalar::one();
        let b = Scalar::q2() - Scalar::q3();
        let c = &a / &b;
        assert_eq!(&c * &b, a);
        assert_eq!(&(&a + &c) - &c, a);
        assert!(Scalar::zero().inv().is_err());
        assert_eq!(Scalar::from_ratio(2, 4).unwrap(), Scalar::from_ratio(1, 2).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let s = Scalar::new(lp("3*q1^-1*q2^2"), lp("1*q1^0*q2^0 + 1*q1^1*q2^0")).unwrap();
        assert_eq!(s.to_string().parse::<Scalar>().unwrap(), s);
    }

    #[test]
    fn substitute_degenerate_point() {
        let e1 = Scalar::q1() + Scalar::q2() + Scalar::q3();
        assert_eq!(e1.substitute(&Scalar::one(), &Scalar::one()).unwrap(), Scalar::from(3));
        let bad = Scalar::one() / (Scalar::q1() - Scalar::one());
        assert!(matches!(
            bad.substitute(&Scalar::one(), &Scalar::one()),
            Err(Error::BadPoint(_))
        ));
    }
}
