use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Scalar;
use crate::freealg::{AlgElem, Bidegree, Window, Word};

/// Finite sum of `c * (left (x) right)` with the window it was truncated to.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElem {
    terms: BTreeMap<(Word, Word), Scalar>,
    pub window: Window,
}

impl TensorElem {
    pub fn zero(window: Window) -> Self {
        Self {
            terms: BTreeMap::new(),
            window,
        }
    }

    /// `x (x) y`.
    pub fn pure(x: &AlgElem, y: &AlgElem, window: Window) -> Self {
        let mut out = Self::zero(window);
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                out.add_term(a.clone(), b.clone(), ca * cb);
            }
        }
        out
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((left, right)) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, left: &Word, right: &Word) -> Scalar {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((l, r), c) in &o.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Scalar::from(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(self.window);
        for ((l, r), c) in &self.terms {
            out.add_term(l.clone(), r.clone(), c * s);
        }
        out
    }

    /// Componentwise product `(a (x) b)(c (x) d) = ac (x) bd`.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.window);
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &o.terms {
                out.add_term(l1.concat(l2), r1.concat(r2), c1 * c2);
            }
        }
        out
    }

    /// Terms grouped by `(left bidegree, right bidegree)`.
    pub fn components(&self) -> BTreeMap<(Bidegree, Bidegree), TensorElem> {
        let mut out: BTreeMap<(Bidegree, Bidegree), TensorElem> = BTreeMap::new();
        for ((l, r), c) in &self.terms {
            out.entry((l.bidegree(), r.bidegree()))
                .or_insert_with(|| Self::zero(self.window))
                .add_term(l.clone(), r.clone(), c.clone());
        }
        out
    }

    /// Terms whose left leg has the given level.
    pub fn left_level(&self, n: u32) -> TensorElem {
        let mut out = Self::zero(self.window);
        for ((l, r), c) in &self.terms {
            if l.level() == n {
                out.add_term(l.clone(), r.clone(), c.clone());
            }
        }
        out
    }

    /// Apply a word map to the left leg.
    pub fn map_left(&self, mut f: impl FnMut(&Word) -> Word) -> TensorElem {
        let mut out = Self::zero(self.window);
        for ((l, r), c) in &self.terms {
            out.add_term(f(l), r.clone(), c.clone());
        }
        out
    }

    /// `(eps (x) id)`: keep terms with empty left leg.
    pub fn counit_left(&self) -> AlgElem {
        let mut out = AlgElem::zero();
        for ((l, r), c) in &self.terms {
            if l.is_empty() {
                out.add_term(r.clone(), c.clone());
            }
        }
        out
    }

    /// `(id (x) eps)`: keep terms with empty right leg.
    pub fn counit_right(&self) -> AlgElem {
        let mut out = AlgElem::zero();
        for ((l, r), c) in &self.terms {
            if r.is_empty() {
                out.add_term(l.clone(), c.clone());
            }
        }
        out
    }

    /// Whether both legs of every term are in the attached window.
    pub fn in_window(&self) -> bool {
        self.terms
            .keys()
            .all(|(l, r)| self.window.contains_word(l) && self.window.contains_word(r))
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[(c, left | right); ...]`.
impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| format!("({c}, {l} | {r})"))
            .collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

/// The counit: the coefficient of the empty word.
pub fn counit(x: &AlgElem) -> Scalar {
    x.coeff(&Word::empty())
}
