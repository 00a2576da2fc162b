use std::fmt;

use super::elem::AlgElem;
use super::word::{Bidegree, Generator, Word};
use crate::error::{arg, Result};

/// Truncation box making every graded component finite-dimensional.
///
/// A word is in-window when its level is at most `n_max`, every `u[1,d]`
/// letter has `u_min <= d <= u_max`, and its total level-0 weight (the sum of
/// the `Th[0,k]` indices, which bounds each index) is at most `th_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub n_max: u32,
    pub u_min: i32,
    pub u_max: i32,
    pub th_max: u32,
}

impl Window {
    pub fn new(n_max: u32, u_min: i32, u_max: i32, th_max: u32) -> Result<Self> {
        if u_min > u_max {
            return arg(format!("empty u-range [{u_min}, {u_max}]"));
        }
        Ok(Self {
            n_max,
            u_min,
            u_max,
            th_max,
        })
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        let mut level = 0u32;
        let mut weight = 0u32;
        for g in w.letters() {
            if g.is_u() {
                if g.index() < self.u_min || g.index() > self.u_max {
                    return false;
                }
                level += 1;
            } else {
                weight += g.index() as u32;
            }
        }
        level <= self.n_max && weight <= self.th_max
    }

    pub fn contains(&self, x: &AlgElem) -> bool {
        x.words().all(|w| self.contains_word(w))
    }

    pub fn with_th_max(self, th_max: u32) -> Self {
        Self { th_max, ..self }
    }

    pub fn with_n_max(self, n_max: u32) -> Self {
        Self { n_max, ..self }
    }

    /// In-window words with exactly `level` u-letters, level-0 weight at most
    /// `theta_budget` (capped by `th_max`), and degree `degree` if given.
    /// Output is sorted in canonical word order.
    pub fn words(&self, level: u32, theta_budget: u32, degree: Option<i32>) -> Vec<Word> {
        let mut out = Vec::new();
        if level > self.n_max {
            return out;
        }
        let budget = theta_budget.min(self.th_max);
        let mut cur = Word::empty();
        self.words_rec(&mut cur, level, budget, 0, degree, &mut out);
        out.sort();
        out
    }

    fn words_rec(
        &self,
        cur: &mut Word,
        u_left: u32,
        budget: u32,
        deg: i32,
        target: Option<i32>,
        out: &mut Vec<Word>,
    ) {
        if let Some(t) = target {
            let lo = deg + u_left as i32 * self.u_min;
            let hi = deg + u_left as i32 * self.u_max + budget as i32;
            if t < lo || t > hi {
                return;
            }
        }
        if u_left == 0 && target.is_none_or(|t| t == deg) {
            out.push(cur.clone());
        }
        if u_left > 0 {
            for d in self.u_min..=self.u_max {
                cur.push(Generator::u(d));
                self.words_rec(cur, u_left - 1, budget, deg + d, target, out);
                cur.pop();
            }
        }
        for k in 1..=budget {
            cur.push(Generator::th(k as i32));
            self.words_rec(cur, u_left, budget - k, deg + k as i32, target, out);
            cur.pop();
        }
    }

    /// All in-window words of bidegree `b`.
    pub fn component_words(&self, b: Bidegree) -> Vec<Word> {
        self.words(b.n, self.th_max, Some(b.d))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n<={},u={}..{},th<={}",
            self.n_max, self.u_min, self.u_max, self.th_max
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_range() {
        assert!(Window::new(2, 3, 2, 0).is_err());
    }

    #[test]
    fn membership_rules() {
        let w = Window::new(2, -1, 2, 3).unwrap();
        assert!(w.contains_word(&Word::us(&[-1, 2])));
        assert!(!w.contains_word(&Word::us(&[-2])));
        assert!(!w.contains_word(&Word::us(&[0, 0, 0])));
        let heavy = Word::from_letters([Generator::th(2), Generator::th(2)]);
        assert!(!w.contains_word(&heavy));
        assert!(w.contains_word(&Word::from_letters([Generator::th(1), Generator::th(2)])));
    }

    #[test]
    fn component_words_level_two() {
        let w = Window::new(2, -1, 2, 0).unwrap();
        let words = w.component_words(Bidegree::new(2, 1));
        assert_eq!(
            words,
            vec![
                Word::us(&[-1, 2]),
                Word::us(&[0, 1]),
                Word::us(&[1, 0]),
                Word::us(&[2, -1])
            ]
        );
    }

    #[test]
    fn component_words_edge_cases() {
        let w = Window::new(2, 0, 3, 2).unwrap();
        assert_eq!(w.component_words(Bidegree::ZERO), vec![Word::empty()]);
        assert!(w.component_words(Bidegree::new(1, -5)).is_empty());
        // Th-only words of degree 2: th[2], th[1] th[1]
        assert_eq!(w.component_words(Bidegree::new(0, 2)).len(), 2);
    }

    #[test]
    fn enumeration_matches_filtered_brute_force() {
        let w = Window::new(2, -1, 1, 2).unwrap();
        for d in -3..=5 {
            let direct = w.component_words(Bidegree::new(2, d));
            let mut brute: Vec<Word> = w
                .words(2, 2, None)
                .into_iter()
                .filter(|x| x.bidegree().d == d)
                .collect();
            brute.sort();
            assert_eq!(direct, brute, "degree {d}");
            assert!(direct.iter().all(|x| w.contains_word(x)));
        }
    }
}
