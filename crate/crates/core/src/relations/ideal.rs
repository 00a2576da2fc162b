//! Windowed two-sided ideals: translates of relators inside one graded
//! component, quotient ranks and membership certificates.

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use super::linalg::{exact_rank, sparse_from, Echelon, SparseVec};
use super::relators::{enumerate_with, Family, Relator};
use crate::coeff::{add_mod, mul_mod, sub_mod, EvalAssign, Scalar};
use crate::error::{arg, Error, Result};
use crate::freealg::{AlgElem, Bidegree, Window, Word};

/// Number of fresh parameter points tried before a bad-point error is final.
pub const MAX_RETRIES: u32 = 8;

/// `left * relators[rel] * right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Translate {
    pub left: Word,
    pub rel: usize,
    pub right: Word,
}

/// The linear system of one graded component: its in-window words and the
/// in-window translates of the given relators landing in it.
pub struct ComponentSystem {
    pub bidegree: Bidegree,
    pub window: Window,
    pub relators: Vec<Relator>,
    pub words: Vec<Word>,
    pub translates: Vec<Translate>,
    index: HashMap<Word, u32>,
}

impl ComponentSystem {
    pub fn new(b: Bidegree, w: &Window, relators: Vec<Relator>) -> Self {
        let words = w.component_words(b);
        // Columns run in reverse word order so the longest words, the ones
        // richest in level-0 letters, are eliminated first. Much less fill-in.
        let nw = words.len();
        let index = words
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), (nw - 1 - i) as u32))
            .collect();
        let mut cache: HashMap<(u32, u32, i32), Vec<Word>> = HashMap::new();
        let mut translates = Vec::new();
        for (ri, rel) in relators.iter().enumerate() {
            let Some(rb) = rel.bidegree() else { continue };
            if rb.n > b.n {
                continue;
            }
            let weight = rel.max_theta_weight();
            if weight > w.th_max {
                continue;
            }
            let key = (b.n - rb.n, w.th_max - weight, b.d - rb.d);
            let fills = cache
                .entry(key)
                .or_insert_with(|| w.words(key.0, key.1, Some(key.2)));
            // A translate is a word of the complementary degree cut in two.
            for f in fills.iter() {
                for cut in 0..=f.len() {
                    let letters = f.letters();
                    translates.push(Translate {
                        left: Word::from_letters(letters[..cut].iter().copied()),
                        rel: ri,
                        right: Word::from_letters(letters[cut..].iter().copied()),
                    });
                }
            }
        }
        Self {
            bidegree: b,
            window: *w,
            relators,
            words,
            translates,
            index,
        }
    }

    /// System for the in-window relators of `families`.
    pub fn for_families(b: Bidegree, w: &Window, families: &[Family]) -> Self {
        Self::new(b, w, enumerate_with(w, families))
    }

    pub fn column(&self, word: &Word) -> Option<u32> {
        self.index.get(word).copied()
    }

    /// Inverse of [`ComponentSystem::column`].
    pub fn word_at(&self, col: u32) -> &Word {
        &self.words[self.words.len() - 1 - col as usize]
    }

    pub fn translate_elem(&self, t: &Translate) -> AlgElem {
        let l = AlgElem::from_word(t.left.clone());
        let r = AlgElem::from_word(t.right.clone());
        &(&l * &self.relators[t.rel].elem) * &r
    }

    /// Specialized relators, one list of `(column offset word, value)` each.
    fn specialized(&self, a: &EvalAssign) -> Result<Vec<Vec<(Word, u64)>>> {
        self.relators.iter().map(|r| r.elem.specialize(a)).collect()
    }

    /// Rows of the translate matrix over `F_p`.
    pub fn rows(&self, a: &EvalAssign) -> Result<Vec<SparseVec>> {
        let rels = self.specialized(a)?;
        Ok(self
            .translates
            .iter()
            .map(|t| {
                let entries = rels[t.rel]
                    .iter()
                    .map(|(w, c)| {
                        let col = self
                            .column(&w.sandwich(&t.left, &t.right))
                            .expect("translate words are in-window");
                        (col, *c)
                    })
                    .collect();
                sparse_from(entries, a.prime)
            })
            .collect())
    }

    /// `x` as a sparse vector over `F_p`; `None` if some word is not a column.
    pub fn vector(&self, x: &AlgElem, a: &EvalAssign) -> Result<Option<SparseVec>> {
        let mut entries = Vec::new();
        for (w, c) in x.specialize(a)? {
            match self.column(&w) {
                Some(col) => entries.push((col, c)),
                None => return Ok(None),
            }
        }
        Ok(Some(sparse_from(entries, a.prime)))
    }

    pub fn echelon(&self, a: &EvalAssign, track: bool) -> Result<Echelon> {
        let mut e = Echelon::new(a.prime, track);
        for row in self.rows(a)? {
            e.insert(row);
        }
        Ok(e)
    }
}

/// Outcome of [`rank_quotient`].
#[derive(Clone, Debug)]
pub struct RankReport {
    pub bidegree: Bidegree,
    pub window: Window,
    /// `None` for exact arithmetic over `Q(q1, q2)`.
    pub prime: Option<u64>,
    pub seed: u64,
    pub n_words: usize,
    pub n_relators: usize,
    pub relator_rank: usize,
    pub quotient_rank: usize,
    pub elapsed_ms: u128,
}

impl PartialEq for RankReport {
    fn eq(&self, o: &Self) -> bool {
        (
            self.bidegree,
            self.window,
            self.n_words,
            self.n_relators,
            self.relator_rank,
            self.quotient_rank,
        ) == (
            o.bidegree,
            o.window,
            o.n_words,
            o.n_relators,
            o.relator_rank,
            o.quotient_rank,
        )
    }
}

impl fmt::Display for RankReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}]: words={} translates={} rank={} quotient={}",
            self.bidegree,
            self.window,
            self.n_words,
            self.n_relators,
            self.relator_rank,
            self.quotient_rank
        )
    }
}

/// Rank of the defining-relator translates in component `b` at the point `a`.
pub fn rank_quotient(b: Bidegree, w: &Window, a: &EvalAssign) -> Result<RankReport> {
    let start = Instant::now();
    let sys = ComponentSystem::for_families(b, w, &Family::DEFINING);
    let e = sys.echelon(a, false)?;
    Ok(RankReport {
        bidegree: b,
        window: *w,
        prime: Some(a.prime),
        seed: a.seed,
        n_words: sys.words.len(),
        n_relators: sys.translates.len(),
        relator_rank: e.rank(),
        quotient_rank: sys.words.len() - e.rank(),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// [`rank_quotient`] at the first generic point of `(prime, seed)` whose
/// specialization succeeds, redrawing up to [`MAX_RETRIES`] times.
pub fn rank_quotient_seeded(b: Bidegree, w: &Window, prime: u64, seed: u64) -> Result<RankReport> {
    with_retries(prime, seed, |a| rank_quotient(b, w, a))
}

/// Largest component handled by [`rank_quotient_exact`].
pub const EXACT_MAX_WORDS: usize = 12;

/// Rank over `Q(q1, q2)` without specialization, for small components.
pub fn rank_quotient_exact(b: Bidegree, w: &Window) -> Result<RankReport> {
    let start = Instant::now();
    let sys = ComponentSystem::for_families(b, w, &Family::DEFINING);
    if sys.words.len() > EXACT_MAX_WORDS {
        return arg(format!(
            "exact rank limited to {EXACT_MAX_WORDS} words, component {b} has {}",
            sys.words.len()
        ));
    }
    let rows: Vec<Vec<Scalar>> = sys
        .translates
        .iter()
        .map(|t| {
            let x = sys.translate_elem(t);
            sys.words.iter().map(|word| x.coeff(word)).collect()
        })
        .collect();
    let rank = exact_rank(rows);
    Ok(RankReport {
        bidegree: b,
        window: *w,
        prime: None,
        seed: 0,
        n_words: sys.words.len(),
        n_relators: sys.translates.len(),
        relator_rank: rank,
        quotient_rank: sys.words.len() - rank,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Run `f` at successive generic points until it stops reporting a bad point.
pub fn with_retries<T>(prime: u64, seed: u64, mut f: impl FnMut(&EvalAssign) -> Result<T>) -> Result<T> {
    let mut last = None;
    for attempt in 0..MAX_RETRIES {
        let a = EvalAssign::draw(prime, seed, attempt);
        match f(&a) {
            Err(Error::BadPoint(m)) => last = Some(m),
            other => return other,
        }
    }
    Err(Error::BadPoint(format!(
        "no usable point after {MAX_RETRIES} attempts: {}",
        last.unwrap_or_default()
    )))
}

/// One term `coeff * left * relator * right` of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertTerm<C> {
    pub coeff: C,
    pub left: Word,
    pub rel: usize,
    pub right: Word,
}

/// A certificate valid over `F_p` at one parameter point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularCombination {
    pub assign: EvalAssign,
    pub terms: Vec<CertTerm<u64>>,
}

/// Evidence that `target` lies in the two-sided ideal of `relators`.
///
/// `exact` holds a combination over `Q(q1, q2)` when one was found directly;
/// otherwise `modular` holds one combination per prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub target: AlgElem,
    pub window: Window,
    pub relators: Vec<Relator>,
    pub exact: Option<Vec<CertTerm<Scalar>>>,
    pub modular: Vec<ModularCombination>,
}

impl Certificate {
    /// Recombine every listed product and compare with the target. The exact
    /// part is checked over `Q(q1, q2)`, each modular part over its prime.
    pub fn verify(&self) -> Result<bool> {
        if let Some(terms) = &self.exact {
            let mut sum = AlgElem::zero();
            for t in terms {
                let x = &(&AlgElem::from_word(t.left.clone()) * &self.relators[t.rel].elem)
                    * &AlgElem::from_word(t.right.clone());
                sum = &sum + &x.scale(&t.coeff);
            }
            if sum != self.target {
                return Ok(false);
            }
        }
        for m in &self.modular {
            if !verify_modular(&self.target, &self.relators, m)? {
                return Ok(false);
            }
        }
        Ok(self.exact.is_some() || !self.modular.is_empty())
    }

    pub fn primes(&self) -> Vec<u64> {
        self.modular.iter().map(|m| m.assign.prime).collect()
    }

    /// Number of terms in the first available combination.
    pub fn n_terms(&self) -> usize {
        match &self.exact {
            Some(t) => t.len(),
            None => self.modular.first().map_or(0, |m| m.terms.len()),
        }
    }

    /// Ids of the relators that actually occur with a nonzero coefficient.
    pub fn used_relators(&self) -> Vec<String> {
        let mut used: Vec<usize> = match &self.exact {
            Some(t) => t.iter().map(|x| x.rel).collect(),
            None => self
                .modular
                .iter()
                .flat_map(|m| m.terms.iter().map(|x| x.rel))
                .collect(),
        };
        used.sort_unstable();
        used.dedup();
        used.into_iter().map(|i| self.relators[i].id()).collect()
    }
}

fn verify_modular(target: &AlgElem, relators: &[Relator], m: &ModularCombination) -> Result<bool> {
    let p = m.assign.prime;
    let mut acc: HashMap<Word, u64> = HashMap::new();
    let mut cache: HashMap<usize, Vec<(Word, u64)>> = HashMap::new();
    for t in &m.terms {
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(t.rel) {
            e.insert(relators[t.rel].elem.specialize(&m.assign)?);
        }
        for (w, c) in &cache[&t.rel] {
            let e = acc.entry(w.sandwich(&t.left, &t.right)).or_insert(0);
            *e = add_mod(*e, mul_mod(t.coeff, *c, p), p);
        }
    }
    for (w, c) in target.specialize(&m.assign)? {
        let e = acc.entry(w).or_insert(0);
        *e = sub_mod(*e, c, p);
    }
    Ok(acc.values().all(|&v| v == 0))
}

/// Result of a membership query.
#[derive(Clone, Debug)]
pub enum Membership {
    Certified(Box<Certificate>),
    /// Not in the span of the in-window translates. Says nothing about the
    /// full ideal.
    NotInWindowedSpan,
}

impl Membership {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Membership::Certified(c) => Some(c),
            Membership::NotInWindowedSpan => None,
        }
    }
}

fn check_target(x: &AlgElem, w: &Window) -> Result<Bidegree> {
    let Some(b) = x.bidegree() else {
        return arg("membership target must be nonzero and homogeneous");
    };
    if !w.contains(x) {
        return arg(format!("membership target is not inside window {w}"));
    }
    Ok(b)
}

/// `x = c * rel` for one of the relators, checked exactly.
fn scalar_multiple(x: &AlgElem, relators: &[Relator]) -> Option<(usize, Scalar)> {
    let (w0, c0) = x.terms().next()?;
    relators.iter().enumerate().find_map(|(i, r)| {
        let rc = r.elem.coeff(w0);
        if rc.is_zero() || r.elem.len() != x.len() {
            return None;
        }
        let c = c0 / &rc;
        (r.elem.scale(&c) == *x).then_some((i, c))
    })
}

/// Decide membership of `x` in the span of the in-window translates of the
/// relators of `families`, over every prime in `primes`.
///
/// A certificate is returned only if a combination is found and verified by
/// re-multiplication over each prime (or exactly, for the one-relator case).
pub fn membership(
    x: &AlgElem,
    w: &Window,
    primes: &[u64],
    seed: u64,
    families: &[Family],
) -> Result<Membership> {
    let b = check_target(x, w)?;
    let sys = ComponentSystem::for_families(b, w, families);
    membership_in(&sys, x, primes, seed)
}

/// [`membership`] against a prebuilt component system, so several targets of
/// one component can share the enumeration.
pub fn membership_in(sys: &ComponentSystem, x: &AlgElem, primes: &[u64], seed: u64) -> Result<Membership> {
    let b = check_target(x, &sys.window)?;
    if b != sys.bidegree {
        return arg(format!("target bidegree {b} differs from system {}", sys.bidegree));
    }
    if primes.is_empty() {
        return arg("membership needs at least one prime");
    }
    if let Some((rel, c)) = scalar_multiple(x, &sys.relators) {
        let cert = Certificate {
            target: x.clone(),
            window: sys.window,
            relators: sys.relators.clone(),
            exact: Some(vec![CertTerm {
                coeff: c,
                left: Word::empty(),
                rel,
                right: Word::empty(),
            }]),
            modular: Vec::new(),
        };
        return Ok(Membership::Certified(Box::new(cert)));
    }
    let mut modular = Vec::new();
    for &p in primes {
        let found = with_retries(p, seed, |a| {
            let Some(v) = sys.vector(x, a)? else {
                return Ok(None);
            };
            let e = sys.echelon(a, true)?;
            Ok(e.solve(v).map(|combo| ModularCombination {
                assign: a.clone(),
                terms: combo
                    .into_iter()
                    .map(|(i, c)| {
                        let t = &sys.translates[i];
                        CertTerm {
                            coeff: c,
                            left: t.left.clone(),
                            rel: t.rel,
                            right: t.right.clone(),
                        }
                    })
                    .collect(),
            }))
        })?;
        match found {
            Some(m) => modular.push(m),
            None => return Ok(Membership::NotInWindowedSpan),
        }
    }
    let cert = Certificate {
        target: x.clone(),
        window: sys.window,
        relators: sys.relators.clone(),
        exact: None,
        modular,
    };
    if !cert.verify()? {
        return Err(Error::Argument(
            "solver produced a combination that does not recombine".into(),
        ));
    }
    Ok(Membership::Certified(Box::new(cert)))
}

/// Try windows with level-0 cap `th_lo..=th_hi` (other bounds from `w`) and
/// return the first that certifies `x`, with that cap.
pub fn membership_minimal(
    x: &AlgElem,
    w: &Window,
    th_lo: u32,
    th_hi: u32,
    primes: &[u64],
    seed: u64,
    families: &[Family],
) -> Result<(Membership, u32)> {
    for th in th_lo..=th_hi {
        let ww = w.with_th_max(th);
        if !ww.contains(x) {
            continue;
        }
        let m = membership(x, &ww, primes, seed, families)?;
        if matches!(m, Membership::Certified(_)) {
            return Ok((m, th));
        }
    }
    Ok((Membership::NotInWindowedSpan, th_hi))
}
