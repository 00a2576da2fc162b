//! The coproduct on the free algebra:
//! `Delta(u[1,d]) = u[1,d] (x) 1 + sum_{k>=0} Th[0,k] (x) u[1,d-k]` and
//! `Delta(Th[0,m]) = sum_{i+j=m} Th[0,i] (x) Th[0,j]`, extended
//! multiplicatively.

use std::collections::{BTreeMap, BTreeSet};

use super::tensor::TensorElem;
use crate::error::{arg, Result};
use crate::freealg::{AlgElem, Bidegree, Generator, Window, Word};

type Key = (Bidegree, Bidegree);

/// How one letter splits: `Left` sends a `u` letter whole to the left leg,
/// `Weight(k)` puts `Th[0,k]` on the left and the rest on the right.
#[derive(Clone, Copy)]
enum Split {
    Left,
    Weight(i32),
}

fn assemble(w: &Word, splits: &[Split]) -> (Word, Word) {
    let mut l = Word::empty();
    let mut r = Word::empty();
    for (g, s) in w.letters().iter().zip(splits) {
        match (g.is_u(), *s) {
            (true, Split::Left) => l.push(*g),
            (true, Split::Weight(k)) => {
                if k > 0 {
                    l.push(Generator::th(k));
                }
                r.push(Generator::u(g.index() - k));
            }
            (false, Split::Weight(i)) => {
                if i > 0 {
                    l.push(Generator::th(i));
                }
                let j = g.index() - i;
                if j > 0 {
                    r.push(Generator::th(j));
                }
            }
            (false, Split::Left) => unreachable!("level-0 letters always split by weight"),
        }
    }
    (l, r)
}

/// Enumerate the splittings of `w` whose left leg has level `n_left` and
/// level-0 weight exactly `weight`. `cap(pos)` bounds the weight taken from a
/// right-going `u` letter.
fn splittings(
    w: &Word,
    n_left: u32,
    weight: i32,
    cap: &dyn Fn(usize) -> i32,
    f: &mut dyn FnMut(&[Split]),
) {
    let u_pos: Vec<usize> = (0..w.len()).filter(|&i| w.letters()[i].is_u()).collect();
    if n_left as usize > u_pos.len() {
        return;
    }
    for mask in 0u32..(1 << u_pos.len()) {
        if mask.count_ones() != n_left {
            continue;
        }
        let mut splits = vec![Split::Weight(0); w.len()];
        for (b, &p) in u_pos.iter().enumerate() {
            if mask >> b & 1 == 1 {
                splits[p] = Split::Left;
            }
        }
        let slots: Vec<(usize, i32)> = (0..w.len())
            .filter(|&i| !matches!(splits[i], Split::Left))
            .map(|i| {
                let g = w.letters()[i];
                (i, if g.is_u() { cap(i) } else { g.index() })
            })
            .collect();
        distribute(&slots, 0, weight, &mut splits, f);
    }
}

fn distribute(
    slots: &[(usize, i32)],
    at: usize,
    left: i32,
    splits: &mut Vec<Split>,
    f: &mut dyn FnMut(&[Split]),
) {
    if at == slots.len() {
        if left == 0 {
            f(splits);
        }
        return;
    }
    let (pos, cap) = slots[at];
    for k in 0..=left.min(cap) {
        splits[pos] = Split::Weight(k);
        distribute(slots, at + 1, left - k, splits, f);
    }
}

/// All splittings of `w` landing in the component `key`. For each choice of
/// left-going `u` letters the left level-0 weight is forced.
fn component_of_word(w: &Word, key: Key) -> Vec<(Word, Word)> {
    let (bl, _) = key;
    let mut out = Vec::new();
    let u_pos: Vec<usize> = (0..w.len()).filter(|&i| w.letters()[i].is_u()).collect();
    for mask in 0u32..(1 << u_pos.len()) {
        if mask.count_ones() != bl.n {
            continue;
        }
        let left_u: i32 = u_pos
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &p)| w.letters()[p].index())
            .sum();
        let weight = bl.d - left_u;
        if weight < 0 {
            continue;
        }
        let mut splits = vec![Split::Weight(0); w.len()];
        for (b, &p) in u_pos.iter().enumerate() {
            if mask >> b & 1 == 1 {
                splits[p] = Split::Left;
            }
        }
        let slots: Vec<(usize, i32)> = (0..w.len())
            .filter(|&i| !matches!(splits[i], Split::Left))
            .map(|i| {
                let g = w.letters()[i];
                (i, if g.is_u() { weight } else { g.index() })
            })
            .collect();
        distribute(&slots, 0, weight, &mut splits, &mut |s| out.push(assemble(w, s)));
    }
    out
}

/// The full `(left, right)` bidegree component of `Delta(x)`, without any
/// truncation. Always a finite sum.
pub fn delta_component(x: &AlgElem, key: Key, window: Window) -> TensorElem {
    let mut out = TensorElem::zero(window);
    for (w, c) in x.terms() {
        if w.bidegree() != key.0 + key.1 {
            continue;
        }
        for (l, r) in component_of_word(w, key) {
            out.add_term(l, r, c.clone());
        }
    }
    out
}

/// Keys of all components of `Delta(x)` with at least one term whose legs
/// both lie in `w`.
fn candidate_keys(x: &AlgElem, w: &Window) -> BTreeSet<Key> {
    let mut keys = BTreeSet::new();
    for word in x.words() {
        let n = word.level();
        for n_left in 0..=n {
            if n_left > w.n_max || n - n_left > w.n_max {
                continue;
            }
            for weight in 0..=w.th_max as i32 {
                let cap = |i: usize| word.letters()[i].index() - w.u_min;
                splittings(word, n_left, weight, &cap, &mut |s| {
                    let (l, r) = assemble(word, s);
                    if w.contains_word(&l) && w.contains_word(&r) {
                        keys.insert((l.bidegree(), r.bidegree()));
                    }
                });
            }
        }
    }
    keys
}

/// `Delta(x)` split into the components that lie wholly inside the window
/// and the keys of those that stick out of it.
#[derive(Clone, Debug)]
pub struct DeltaSplit {
    pub complete: BTreeMap<Key, TensorElem>,
    pub truncated: Vec<Key>,
}

impl DeltaSplit {
    pub fn total(&self, window: Window) -> TensorElem {
        self.complete
            .values()
            .fold(TensorElem::zero(window), |acc, t| acc.add(t))
    }
}

pub fn delta_split(x: &AlgElem, w: &Window) -> Result<DeltaSplit> {
    if !w.contains(x) {
        return arg(format!("coproduct input is not inside window {w}"));
    }
    let mut complete = BTreeMap::new();
    let mut truncated = Vec::new();
    for key in candidate_keys(x, w) {
        let comp = delta_component(x, key, *w);
        if comp.is_zero() {
            continue;
        }
        if comp.in_window() {
            complete.insert(key, comp);
        } else {
            truncated.push(key);
        }
    }
    Ok(DeltaSplit {
        complete,
        truncated,
    })
}

/// `Delta(x)` restricted to the components lying wholly inside the window.
pub fn delta(x: &AlgElem, w: &Window) -> Result<TensorElem> {
    Ok(delta_split(x, w)?.total(*w))
}

/// Every term of `Delta(x)` with both legs in the window, whether or not its
/// component is complete.
pub fn delta_terms(x: &AlgElem, w: &Window) -> TensorElem {
    let mut out = TensorElem::zero(*w);
    for (word, c) in x.terms() {
        let n = word.level();
        for n_left in 0..=n {
            for weight in 0..=w.th_max as i32 {
                let cap = |i: usize| word.letters()[i].index() - w.u_min;
                splittings(word, n_left, weight, &cap, &mut |s| {
                    let (l, r) = assemble(word, s);
                    if w.contains_word(&l) && w.contains_word(&r) {
                        out.add_term(l, r, c.clone());
                    }
                });
            }
        }
    }
    out
}

/// Sort the letters of a word of level-0 letters; other words unchanged.
pub fn sort_theta(w: &Word) -> Word {
    if !w.is_theta_only() {
        return w.clone();
    }
    let mut ix: Vec<i32> = w.letters().iter().map(|g| g.index()).collect();
    ix.sort_unstable();
    Word::from_letters(ix.into_iter().map(Generator::th))
}

/// `Delta` of a single generator as in-window terms, for spot checks.
pub fn delta_generator(g: Generator, w: &Window) -> TensorElem {
    delta_terms(&AlgElem::gen(g), w)
}
