use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::word::{Bidegree, Generator, Word};
use crate::coeff::{specialize, EvalAssign, Scalar};
use crate::error::Result;

/// Finite linear combination of words over [`Scalar`].
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AlgElem {
    terms: BTreeMap<Word, Scalar>,
}

impl AlgElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(Scalar::one(), w)
    }

    pub fn term(c: Scalar, w: Word) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn gen(g: Generator) -> Self {
        Self::from_word(Word::from_letters([g]))
    }

    /// `u[1,d]`.
    pub fn u(d: i32) -> Self {
        Self::gen(Generator::u(d))
    }

    /// `Th[0,k]`; `Th[0,0]` is the unit and negative `k` gives zero, matching
    /// the series convention `T0+(z) = sum_{k>=0} Th[0,k] z^-k`.
    pub fn th(k: i32) -> Self {
        match k {
            k if k < 0 => Self::zero(),
            0 => Self::one(),
            k => Self::gen(Generator::th(k)),
        }
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero();
        if s.is_zero() {
            return out;
        }
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// The bidegree-`b` homogeneous component.
    pub fn project(&self, b: Bidegree) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.bidegree() == b)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// All nonzero homogeneous components.
    pub fn components(&self) -> BTreeMap<Bidegree, AlgElem> {
        let mut out: BTreeMap<Bidegree, AlgElem> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.bidegree())
                .or_default()
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// The common bidegree of all words, `None` for zero or mixed elements.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys().map(Word::bidegree);
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.bidegree().is_some()
    }

    /// Apply a word-to-element map linearly.
    pub fn map_linear(&self, mut f: impl FnMut(&Word) -> AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (w, c) in &self.terms {
            for (w2, c2) in f(w).terms {
                out.add_term(w2, c * &c2);
            }
        }
        out
    }

    /// Coefficients reduced into `F_p` at `a`.
    pub fn specialize(&self, a: &EvalAssign) -> Result<Vec<(Word, u64)>> {
        self.terms
            .iter()
            .map(|(w, c)| Ok((w.clone(), specialize(c, a)?.value())))
            .filter(|r| !matches!(r, Ok((_, 0))))
            .collect()
    }

    /// Serialized `(scalar-text, word-text)` pairs in canonical word order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(w, c)| (c.to_string(), w.to_string()))
            .collect()
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[(scalar, word); (scalar, word); ...]`.
impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "({c}, {w})")?;
        }
        write!(f, "]")
    }
}

impl Add<&AlgElem> for &AlgElem {
    type Output = AlgElem;
    fn add(self, rhs: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub<&AlgElem> for &AlgElem {
    type Output = AlgElem;
    fn sub(self, rhs: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Mul<&AlgElem> for &AlgElem {
    type Output = AlgElem;
    fn mul(self, rhs: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        AlgElem {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Add for AlgElem {
    type Output = AlgElem;
    fn add(self, rhs: AlgElem) -> AlgElem {
        &self + &rhs
    }
}

impl Sub for AlgElem {
    type Output = AlgElem;
    fn sub(self, rhs: AlgElem) -> AlgElem {
        &self - &rhs
    }
}

impl Mul for AlgElem {
    type Output = AlgElem;
    fn mul(self, rhs: AlgElem) -> AlgElem {
        &self * &rhs
    }
}

impl Neg for AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        -&self
    }
}

/// `x * y` in the free algebra.
pub fn mul(x: &AlgElem, y: &AlgElem) -> AlgElem {
    x * y
}

/// The bidegree-`b` component of `x`.
pub fn project(x: &AlgElem, b: Bidegree) -> AlgElem {
    x.project(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_and_concatenation() {
        let u0 = AlgElem::u(0);
        assert_eq!(mul(&u0, &AlgElem::one()), u0);
        let p = mul(&AlgElem::u(1), &AlgElem::u(2));
        assert_eq!(p, AlgElem::from_word(Word::us(&[1, 2])));
        assert_eq!(p.bidegree(), Some(Bidegree::new(2, 3)));
    }

    #[test]
    fn distributivity_example() {
        let lhs = mul(&(&AlgElem::u(0) + &AlgElem::th(1)), &AlgElem::u(0));
        let rhs = &AlgElem::from_word(Word::us(&[0, 0]))
            + &AlgElem::from_word(Word::from_letters([Generator::th(1), Generator::u(0)]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection() {
        let x = &AlgElem::u(3) + &(&AlgElem::th(1) * &AlgElem::u(2));
        assert_eq!(project(&x, Bidegree::new(1, 3)), x);
        assert!(project(&AlgElem::u(3), Bidegree::new(2, 3)).is_zero());
        let y = &x + &AlgElem::u(-1);
        let sum = y
            .components()
            .values()
            .fold(AlgElem::zero(), |acc, c| &acc + c);
        assert_eq!(sum, y);
        assert_eq!(y.bidegree(), None);
    }

    #[test]
    fn th_series_conventions() {
        assert_eq!(AlgElem::th(0), AlgElem::one());
        assert!(AlgElem::th(-2).is_zero());
    }

    #[test]
    fn display_pairs() {
        let x = AlgElem::term(Scalar::from(2), Word::us(&[1]));
        assert_eq!(x.to_string(), "[(2*q1^0*q2^0/1*q1^0*q2^0, u1[1])]");
        assert_eq!(AlgElem::zero().to_string(), "[]");
    }
}
