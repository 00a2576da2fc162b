//! Does `Delta` respect the relations? Each complete component of
//! `Delta(rel)` is tested for membership in `I (x) A + A (x) I` by reducing
//! both legs modulo the windowed ideal, with the oracle as a fallback.

use std::collections::HashMap;

use super::delta::{delta_split, sort_theta, DeltaSplit};
use super::tensor::TensorElem;
use crate::coeff::{add_mod, mul_mod, specialize, sub_mod, EvalAssign};
use crate::error::{Error, Result};
use crate::freealg::{AlgElem, Bidegree, Generator, Window, Word};
use crate::relations::linalg::SparseVec;
use crate::relations::{
    enumerate_with, linalg::Echelon, nested_commutator, relator_cubic, ComponentSystem, Family,
    Relator,
};
use crate::shuffle::{EvalPointSet, Evaluator};
use crate::Status;

type Key = (Bidegree, Bidegree);

struct Leg {
    sys: ComponentSystem,
    ech: Echelon,
}

/// Normal forms of words modulo the in-window defining ideal, one graded
/// component at a time, at a fixed parameter point.
pub struct LegReducer {
    window: Window,
    assign: EvalAssign,
    relators: Vec<Relator>,
    legs: HashMap<Bidegree, Leg>,
    forms: HashMap<Word, (SparseVec, Vec<(usize, u64)>)>,
}

impl LegReducer {
    pub fn new(window: Window, assign: EvalAssign) -> Self {
        Self {
            relators: enumerate_with(&window, &Family::DEFINING),
            window,
            assign,
            legs: HashMap::new(),
            forms: HashMap::new(),
        }
    }

    fn leg(&mut self, b: Bidegree) -> Result<&Leg> {
        if !self.legs.contains_key(&b) {
            let sys = ComponentSystem::new(b, &self.window, self.relators.clone());
            let ech = sys.echelon(&self.assign, true)?;
            self.legs.insert(b, Leg { sys, ech });
        }
        Ok(&self.legs[&b])
    }

    /// `(normal form, translate combination)` with
    /// `word = normal form + sum c_i translate_i`.
    fn reduce(&mut self, w: &Word) -> Result<(SparseVec, Vec<(usize, u64)>)> {
        if let Some(f) = self.forms.get(w) {
            return Ok(f.clone());
        }
        let leg = self.leg(w.bidegree())?;
        let col = leg
            .sys
            .column(w)
            .ok_or_else(|| Error::Argument(format!("word {w} is outside the window")))?;
        let f = leg.ech.decompose(vec![(col, 1)]);
        self.forms.insert(w.clone(), f.clone());
        Ok(f)
    }

    /// `sum c_i translate_i` of a leg as specialized words.
    fn expand(&self, b: Bidegree, combo: &[(usize, u64)]) -> Result<HashMap<Word, u64>> {
        let p = self.assign.prime;
        let sys = &self.legs[&b].sys;
        let mut out: HashMap<Word, u64> = HashMap::new();
        for &(i, c) in combo {
            let t = &sys.translates[i];
            for (w, v) in sys.relators[t.rel].elem.specialize(&self.assign)? {
                let e = out.entry(w.sandwich(&t.left, &t.right)).or_insert(0);
                *e = add_mod(*e, mul_mod(c, v, p), p);
            }
        }
        Ok(out)
    }
}

/// Evidence that a tensor component lies in `I (x) A + A (x) I` over `F_p`:
/// `x = sum c [(L - nf L) (x) R + nf L (x) (R - nf R)]`, each difference a
/// combination of leg translates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegCertificate {
    pub prime: u64,
    pub left_translates: usize,
    pub right_translates: usize,
    /// The recombined sum equals the component at the stated point.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub left: Bidegree,
    pub right: Bidegree,
    pub n_terms: usize,
    pub certificate: Option<LegCertificate>,
    /// `(ev (x) ev)` vanished at every oracle point.
    pub oracle_zero: bool,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub relator_id: String,
    pub components: Vec<ComponentReport>,
    /// Components sticking out of the window; not judged.
    pub truncated: Vec<Key>,
    pub status: Status,
}

/// `(ev (x) ev)(x)` at one point: the left leg on the first coordinates, the
/// right leg on the following ones.
pub fn eval_tensor(ev: &Evaluator, x: &TensorElem, assign: &EvalAssign, pt: &[u64]) -> Result<u64> {
    let p = ev.prime();
    let mut s = 0u64;
    for ((l, r), c) in x.terms() {
        let (nl, nr) = (l.level() as usize, r.level() as usize);
        if pt.len() < nl + nr {
            return Err(Error::Argument("evaluation point too short".into()));
        }
        let a = ev.eval_word(l, &pt[..nl])?;
        if a == 0 {
            continue;
        }
        let b = ev.eval_word(r, &pt[nl..nl + nr])?;
        let c = specialize(c, assign)?.value();
        s = add_mod(s, mul_mod(c, mul_mod(a, b, p), p), p);
    }
    Ok(s)
}

/// Whether `(ev (x) ev)(x)` vanishes at every point of `pts`.
pub fn oracle_annihilates(x: &TensorElem, pts: &EvalPointSet) -> Result<bool> {
    let ev = Evaluator::new(&pts.assign, x.window.th_max as usize)?;
    for pt in &pts.points {
        if eval_tensor(&ev, x, &pts.assign, pt)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs [`delta_check_relator`] for many relators with shared leg reductions.
pub struct DeltaChecker {
    reducer: LegReducer,
    pts: EvalPointSet,
}

/// Oracle points per component in [`DeltaChecker`].
pub const ORACLE_POINTS: usize = 8;

impl DeltaChecker {
    pub fn new(window: Window, assign: EvalAssign) -> Self {
        let pts = EvalPointSet::new(assign.prime, assign.seed, ORACLE_POINTS, 2 * window.n_max.max(1) as usize);
        Self {
            reducer: LegReducer::new(window, assign),
            pts,
        }
    }

    pub fn window(&self) -> Window {
        self.reducer.window
    }

    fn check_component(&mut self, key: Key, x: &TensorElem) -> Result<ComponentReport> {
        let a = self.reducer.assign.clone();
        let p = a.prime;
        let mut image: HashMap<(u32, u32), u64> = HashMap::new();
        let mut terms = Vec::new();
        for ((l, r), c) in x.terms() {
            let c = specialize(c, &a)?.value();
            let fl = self.reducer.reduce(l)?;
            let fr = self.reducer.reduce(r)?;
            for &(i, u) in &fl.0 {
                for &(j, v) in &fr.0 {
                    let e = image.entry((i, j)).or_insert(0);
                    *e = add_mod(*e, mul_mod(c, mul_mod(u, v, p), p), p);
                }
            }
            terms.push((l.clone(), r.clone(), c, fl, fr));
        }
        let member = image.values().all(|&v| v == 0);
        let oracle_zero = oracle_annihilates(x, &self.pts)?;
        let certificate = if member {
            Some(self.certify(key, x, &terms)?)
        } else {
            None
        };
        let status = match (&certificate, oracle_zero) {
            // A certified member must also vanish in the oracle.
            (Some(c), true) if c.verified => Status::Pass,
            (Some(_), _) => Status::Fail,
            (None, true) => Status::Inconclusive,
            (None, false) => Status::Fail,
        };
        Ok(ComponentReport {
            left: key.0,
            right: key.1,
            n_terms: x.len(),
            certificate,
            oracle_zero,
            status,
        })
    }

    #[allow(clippy::type_complexity)]
    fn certify(
        &mut self,
        key: Key,
        x: &TensorElem,
        terms: &[(Word, Word, u64, (SparseVec, Vec<(usize, u64)>), (SparseVec, Vec<(usize, u64)>))],
    ) -> Result<LegCertificate> {
        let a = self.reducer.assign.clone();
        let p = a.prime;
        let mut sum: HashMap<(Word, Word), u64> = HashMap::new();
        let (mut nl, mut nr) = (0, 0);
        for (_, r, c, fl, fr) in terms {
            nl += fl.1.len();
            nr += fr.1.len();
            // (L - nf L) (x) R
            for (w, v) in self.reducer.expand(key.0, &fl.1)? {
                let e = sum.entry((w, r.clone())).or_insert(0);
                *e = add_mod(*e, mul_mod(*c, v, p), p);
            }
            // nf L (x) (R - nf R)
            let right = self.reducer.expand(key.1, &fr.1)?;
            let leg = &self.reducer.legs[&key.0];
            for &(col, u) in &fl.0 {
                let lw = leg.sys.word_at(col);
                for (w, v) in &right {
                    let e = sum.entry((lw.clone(), w.clone())).or_insert(0);
                    *e = add_mod(*e, mul_mod(*c, mul_mod(u, *v, p), p), p);
                }
            }
        }
        for ((l, r), c) in x.terms() {
            let c = specialize(c, &a)?.value();
            let e = sum.entry((l.clone(), r.clone())).or_insert(0);
            *e = sub_mod(*e, c, p);
        }
        Ok(LegCertificate {
            prime: p,
            left_translates: nl,
            right_translates: nr,
            verified: sum.values().all(|&v| v == 0),
        })
    }

    pub fn check(&mut self, rel: &Relator) -> Result<CheckReport> {
        let split = delta_split(&rel.elem, &self.reducer.window)?;
        self.check_split(rel.id(), &split)
    }

    pub fn check_split(&mut self, id: String, split: &DeltaSplit) -> Result<CheckReport> {
        let mut components = Vec::new();
        for (key, x) in &split.complete {
            components.push(self.check_component(*key, x)?);
        }
        let status = if components.is_empty() {
            Status::Inconclusive
        } else {
            components.iter().fold(Status::Pass, |s, c| s.and(c.status))
        };
        Ok(CheckReport {
            relator_id: id,
            components,
            truncated: split.truncated.clone(),
            status,
        })
    }
}

/// Check every complete component of `Delta(rel)` for membership in
/// `I (x) A + A (x) I` within `w`, at the parameter point `a`.
pub fn delta_check_relator(rel: &Relator, w: &Window, a: &EvalAssign) -> Result<CheckReport> {
    DeltaChecker::new(*w, a.clone()).check(rel)
}

/// `Delta(r)` for `r = [[u[1,-1], u[1,1]], u[1,0]]` split by the level of the
/// left leg.
#[derive(Clone, Debug)]
pub struct Eq1Decomposition {
    pub r: AlgElem,
    /// Level `3 (x) 0`.
    pub term1: TensorElem,
    /// Levels `1 (x) 2` and `2 (x) 1`.
    pub e: TensorElem,
    /// Level `0 (x) 3`.
    pub term3: TensorElem,
    pub split: DeltaSplit,
}

/// Smallest window bounds accepted by [`eq1_decompose`].
pub const EQ1_MIN_WEIGHT: u32 = 4;

pub fn eq1_decompose(w: &Window) -> Result<Eq1Decomposition> {
    let need_u = -1 - EQ1_MIN_WEIGHT as i32;
    if w.n_max < 3 || w.u_min > need_u || w.u_max < 1 || w.th_max < EQ1_MIN_WEIGHT {
        return Err(Error::WindowTooSmall(format!(
            "need n >= 3, u range covering {need_u}..1 and th >= {EQ1_MIN_WEIGHT}, got {w}"
        )));
    }
    let r = relator_cubic(-2).elem;
    let split = delta_split(&r, w)?;
    let mut term1 = TensorElem::zero(*w);
    let mut e = TensorElem::zero(*w);
    let mut term3 = TensorElem::zero(*w);
    for ((bl, _), x) in &split.complete {
        let slot = match bl.n {
            3 => &mut term1,
            0 => &mut term3,
            _ => &mut e,
        };
        *slot = slot.add(x);
    }
    Ok(Eq1Decomposition {
        r,
        term1,
        e,
        term3,
        split,
    })
}

/// `sum_{m+n+l=k} Th[0,m] Th[0,n] Th[0,l] (x) [[u[1,-1-m], u[1,1-n]], u[1,-l]]`
/// with the level-0 letters sorted.
pub fn eq1_term3_formula(k: u32, w: Window) -> TensorElem {
    let k = k as i32;
    let mut out = TensorElem::zero(w);
    for m in 0..=k {
        for n in 0..=(k - m) {
            let l = k - m - n;
            let thetas = Word::from_letters(
                [m, n, l]
                    .into_iter()
                    .filter(|&i| i > 0)
                    .map(Generator::th),
            );
            let left = AlgElem::from_word(sort_theta(&thetas));
            out = out.add(&TensorElem::pure(&left, &nested_commutator(-1 - m, 1 - n, -l), w));
        }
    }
    out
}

impl Eq1Decomposition {
    pub fn window(&self) -> Window {
        self.term1.window
    }

    pub fn term1_matches(&self) -> bool {
        self.term1 == TensorElem::pure(&self.r, &AlgElem::one(), self.window())
    }

    /// `term1 + E + term3` is all of the complete part of `Delta(r)`.
    pub fn sums_to_delta(&self) -> bool {
        self.term1.add(&self.e).add(&self.term3) == self.split.total(self.window())
    }

    /// For each level-0 weight `k <= max_weight`: whether the `(0,k) (x) (3,-k)`
    /// component of `term3`, with sorted level-0 letters, equals the formula.
    /// `None` if the component is not complete in the window.
    pub fn term3_matches(&self, max_weight: u32) -> Vec<(u32, Option<bool>)> {
        let w = self.window();
        (0..=max_weight)
            .map(|k| {
                let key = (Bidegree::new(0, k as i32), Bidegree::new(3, -(k as i32)));
                let got = self.split.complete.get(&key).map(|x| x.map_left(sort_theta));
                let ok = got.map(|g| g == eq1_term3_formula(k, w));
                (k, ok)
            })
            .collect()
    }

    /// `(ev (x) ev)` of each complete `E` component at `n_points` points for
    /// every prime.
    pub fn e_vanishing(&self, primes: &[u64], seed: u64, n_points: usize) -> Result<Vec<(Key, bool)>> {
        let mut sets = Vec::new();
        for &p in primes {
            sets.push(EvalPointSet::new(p, seed, n_points, 3));
        }
        let mut out = Vec::new();
        for (key, x) in &self.split.complete {
            if key.0.n == 0 || key.0.n == 3 {
                continue;
            }
            let mut ok = true;
            for pts in &sets {
                ok &= oracle_annihilates(x, pts)?;
            }
            out.push((*key, ok));
        }
        Ok(out)
    }
}

/// Exact counit check `(eps (x) id) Delta(x) = x = (id (x) eps) Delta(x)`
/// on a single generator inside `w`.
pub fn counit_holds(g: Generator, w: &Window) -> Result<bool> {
    let x = AlgElem::gen(g);
    let d = super::delta::delta(&x, w)?;
    Ok(d.counit_left() == x && d.counit_right() == x)
}
