use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{arg, Error, Result};

/// `(level, degree)` in the `Z^2` grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bidegree {
    pub n: u32,
    pub d: i32,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { n: 0, d: 0 };

    pub fn new(n: u32, d: i32) -> Self {
        Self { n, d }
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.n + rhs.n, self.d + rhs.d)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.d)
    }
}

/// A generator `u[1,d]` (level 1, any `d`) or `Th[0,k]` (level 0, `k >= 1`).
///
/// The derived order puts every level-0 letter before every level-1 letter,
/// then orders by index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    level: u8,
    index: i32,
}

impl Generator {
    pub fn new(level: u8, index: i32) -> Result<Self> {
        match level {
            1 => Ok(Self { level, index }),
            0 if index >= 1 => Ok(Self { level, index }),
            0 => arg(format!("Th[0,{index}]: level-0 index must be >= 1")),
            _ => arg(format!("generator level {level} not in {{0,1}}")),
        }
    }

    /// `u[1,d]`.
    pub fn u(d: i32) -> Self {
        Self { level: 1, index: d }
    }

    /// `Th[0,k]`; panics if `k < 1`.
    pub fn th(k: i32) -> Self {
        assert!(k >= 1, "Th[0,{k}] requires k >= 1");
        Self { level: 0, index: k }
    }

    pub fn level(self) -> u8 {
        self.level
    }

    pub fn index(self) -> i32 {
        self.index
    }

    pub fn is_u(self) -> bool {
        self.level == 1
    }

    pub fn is_th(self) -> bool {
        self.level == 0
    }

    pub fn bidegree(self) -> Bidegree {
        Bidegree::new(self.level as u32, self.index)
    }

    /// Same letter with the index moved by `k`.
    pub fn shifted(self, k: i32) -> Self {
        Self {
            level: self.level,
            index: self.index + k,
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_u() {
            write!(f, "u1[{}]", self.index)
        } else {
            write!(f, "th[{}]", self.index)
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_idx = |body: &str| -> Result<i32> {
            body.strip_suffix(']')
                .and_then(|b| b.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad letter {s:?}")))
        };
        if let Some(rest) = s.strip_prefix("u1[") {
            Ok(Generator::u(parse_idx(rest)?))
        } else if let Some(rest) = s.strip_prefix("th[") {
            Generator::new(0, parse_idx(rest)?).map_err(|e| Error::Parse(e.to_string()))
        } else {
            Err(Error::Parse(format!("bad letter {s:?}")))
        }
    }
}

/// A monomial in the free algebra.
///
/// Words are ordered by length first, then lexicographically by letter.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Generator; 8]>);

impl Word {
    pub fn empty() -> Self {
        Self(SmallVec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Generator>) -> Self {
        Self(letters.into_iter().collect())
    }

    /// Word of `u[1,d]` letters.
    pub fn us(indices: &[i32]) -> Self {
        Self(indices.iter().map(|&d| Generator::u(d)).collect())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, g: Generator) {
        self.0.push(g);
    }

    pub fn pop(&mut self) -> Option<Generator> {
        self.0.pop()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// `left * self * right`.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Word {
        let mut out: SmallVec<[Generator; 8]> =
            SmallVec::with_capacity(left.len() + self.len() + right.len());
        out.extend_from_slice(&left.0);
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&right.0);
        Word(out)
    }

    pub fn bidegree(&self) -> Bidegree {
        self.0
            .iter()
            .fold(Bidegree::ZERO, |acc, g| acc + g.bidegree())
    }

    pub fn level(&self) -> u32 {
        self.0.iter().filter(|g| g.is_u()).count() as u32
    }

    /// Sum of the level-0 indices.
    pub fn theta_weight(&self) -> u32 {
        self.0
            .iter()
            .filter(|g| g.is_th())
            .map(|g| g.index() as u32)
            .sum()
    }

    pub fn is_u_only(&self) -> bool {
        self.0.iter().all(|g| g.is_u())
    }

    pub fn is_theta_only(&self) -> bool {
        self.0.iter().all(|g| g.is_th())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Whitespace-separated letters; the empty word prints as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<SmallVec<_>>>()
            .map(Word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_invariants() {
        assert!(Generator::new(0, 0).is_err());
        assert!(Generator::new(2, 1).is_err());
        assert!(Generator::new(1, -7).is_ok());
        assert!(Generator::th(1) < Generator::u(-100));
    }

    #[test]
    fn word_order_is_length_first() {
        let short = Word::us(&[5]);
        let long = Word::us(&[-5, -5]);
        assert!(short < long);
        assert!(Word::us(&[0, 1]) < Word::us(&[1, 0]));
        let th = Word::from_letters([Generator::th(1), Generator::u(0)]);
        assert!(th < Word::us(&[-3, 0]));
    }

    #[test]
    fn bidegree_is_additive() {
        let a = Word::from_letters([Generator::th(2), Generator::u(-1)]);
        let b = Word::us(&[1, 2]);
        assert_eq!(a.concat(&b).bidegree(), a.bidegree() + b.bidegree());
        assert_eq!(Word::us(&[1, 2]).bidegree(), Bidegree::new(2, 3));
        assert_eq!(a.theta_weight(), 2);
    }

    #[test]
    fn text_round_trip() {
        let w = Word::from_letters([Generator::u(-1), Generator::th(3), Generator::u(2)]);
        assert_eq!(w.to_string(), "u1[-1] th[3] u1[2]");
        assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        assert_eq!("1".parse::<Word>().unwrap(), Word::empty());
        assert!("th[0]".parse::<Word>().is_err());
    }
}
