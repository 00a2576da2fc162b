//! The operator model: `u[1,d]` acts by left shuffle multiplication with
//! `x^d`, `Th[0,k]` by multiplication with `h_k`. An element is evaluated
//! through its action on the vacuum `1`.


use rand::Rng;

use super::symrat::{shuffle_mul, theta_op, SymRat};
use crate::coeff::{
    add_mod, elem_syms, inv_mod, mul_mod, point_rng, pow_mod, specialize, sub_mod, theta_series,
    EvalAssign,
};
use crate::error::{arg, Error, Result};
use crate::freealg::{AlgElem, Word};
use crate::relations::{linalg::dense_rank, Relator};

/// Largest level handled with exact rational functions.
pub const EXACT_MAX_VARS: usize = 3;
/// Largest level of a relator-times-probe image checked exactly; above it
/// the image is evaluated at points.
pub const EXACT_MAX_PROBED_VARS: usize = 2;

/// Image of an element of the `u[1,*]` subalgebra; `u[1,d] -> x_1^d`.
pub fn can_map(x: &AlgElem) -> Result<SymRat> {
    let mut level = None;
    let mut out: Option<SymRat> = None;
    for (w, c) in x.terms() {
        if !w.is_u_only() {
            return arg(format!("can_map needs level-1 letters only, got {w}"));
        }
        let n = w.len();
        if *level.get_or_insert(n) != n {
            return arg("can_map needs a single level");
        }
        let img = act_word(w, &SymRat::one()).scale(c);
        out = Some(match out {
            Some(acc) => acc.add(&img),
            None => img,
        });
    }
    Ok(out.unwrap_or_else(|| SymRat::zero(0)))
}

/// Apply the letters of `w` to `f`, rightmost first.
pub fn act_word(w: &Word, f: &SymRat) -> SymRat {
    let mut acc = f.clone();
    for g in w.letters().iter().rev() {
        acc = if g.is_u() {
            shuffle_mul(&SymRat::monomial(g.index()), &acc)
        } else {
            theta_op(g.index() as usize, &acc)
        };
    }
    acc
}

/// Exact image of `x . probe` where `probe` is a word acting on the vacuum.
/// `None` if `x` is not of a single level.
pub fn act_exact(x: &AlgElem, probe: &Word) -> Option<SymRat> {
    let base = act_word(probe, &SymRat::one());
    let mut out: Option<SymRat> = None;
    for (w, c) in x.terms() {
        let img = act_word(w, &base).scale(c);
        if out.as_ref().is_some_and(|o| o.n_vars() != img.n_vars()) {
            return None;
        }
        out = Some(match out {
            Some(acc) => acc.add(&img),
            None => img,
        });
    }
    Some(out.unwrap_or_else(|| SymRat::zero(probe.level() as usize)))
}

/// Random evaluation points sharing one parameter point.
///
/// Every point has `max_vars` nonzero, pairwise distinct coordinates; a
/// function of `n` variables is evaluated on the first `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPointSet {
    pub prime: u64,
    pub seed: u64,
    pub assign: EvalAssign,
    pub points: Vec<Vec<u64>>,
}

impl EvalPointSet {
    pub fn new(prime: u64, seed: u64, n_points: usize, max_vars: usize) -> Self {
        Self::with_attempt(prime, seed, 0, n_points, max_vars)
    }

    /// Same as [`EvalPointSet::new`] but with the `attempt`-th parameter
    /// point and point stream, for redraws.
    pub fn with_attempt(prime: u64, seed: u64, attempt: u32, n_points: usize, max_vars: usize) -> Self {
        let assign = EvalAssign::draw(prime, seed, attempt);
        let mut rng = point_rng(prime, seed.wrapping_add(0x9e37_79b9).wrapping_add(attempt as u64));
        let mut points: Vec<Vec<u64>> = Vec::with_capacity(n_points);
        while points.len() < n_points {
            let mut pt: Vec<u64> = Vec::with_capacity(max_vars);
            while pt.len() < max_vars {
                let x = rng.gen_range(2..prime);
                if !pt.contains(&x) {
                    pt.push(x);
                }
            }
            if !points.contains(&pt) {
                points.push(pt);
            }
        }
        Self {
            prime,
            seed,
            assign,
            points,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_vars(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }
}

/// Evaluates the action on the vacuum at points over `F_p`, without
/// building rational functions.
pub struct Evaluator {
    assign: EvalAssign,
    e1: u64,
    e2: u64,
    phi: Vec<u64>,
}

impl Evaluator {
    pub fn new(assign: &EvalAssign, max_theta: usize) -> Result<Self> {
        let e = elem_syms();
        let phi = theta_series(max_theta)
            .iter()
            .map(|s| specialize(s, assign).map(|v| v.value()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            assign: assign.clone(),
            e1: specialize(&e[1], assign)?.value(),
            e2: specialize(&e[2], assign)?.value(),
            phi,
        })
    }

    pub fn prime(&self) -> u64 {
        self.assign.prime
    }

    fn omega(&self, x: u64, y: u64) -> Result<u64> {
        let p = self.prime();
        let d = sub_mod(x, y, p);
        if d == 0 {
            return Err(Error::BadPoint("coincident coordinates".into()));
        }
        // chi_-1(x, y) = x^3 - e2 x^2 y + e1 x y^2 - y^3
        let x2 = mul_mod(x, x, p);
        let y2 = mul_mod(y, y, p);
        let mut c = mul_mod(x2, x, p);
        c = sub_mod(c, mul_mod(self.e2, mul_mod(x2, y, p), p), p);
        c = add_mod(c, mul_mod(self.e1, mul_mod(x, y2, p), p), p);
        c = sub_mod(c, mul_mod(y2, y, p), p);
        Ok(mul_mod(c, inv_mod(pow_mod(d, 3, p), p), p))
    }

    /// Kernel values between all coordinate pairs, computed once per point.
    fn point<'a>(&self, xs: &'a [u64]) -> Result<Point<'a>> {
        let n = xs.len();
        let mut omega = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    omega[i * n + j] = self.omega(xs[i], xs[j])?;
                }
            }
        }
        let p = self.prime();
        let inv = xs
            .iter()
            .map(|&x| {
                if x % p == 0 {
                    Err(Error::BadPoint("zero coordinate".into()))
                } else {
                    Ok(inv_mod(x, p))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Point { xs, inv, omega })
    }

    fn h(&self, k: usize, xs: &[u64]) -> Result<u64> {
        if k >= self.phi.len() {
            return Err(Error::Argument(format!("theta index {k} exceeds evaluator range")));
        }
        let p = self.prime();
        let mut acc = vec![0u64; k + 1];
        acc[0] = 1;
        for &x in xs {
            let mut next = vec![0u64; k + 1];
            for (j, &a) in acc.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let mut xp = 1u64;
                for l in 0..=(k - j) {
                    let t = mul_mod(a, mul_mod(self.phi[l], xp, p), p);
                    next[j + l] = add_mod(next[j + l], t, p);
                    xp = mul_mod(xp, x, p);
                }
            }
            acc = next;
        }
        Ok(acc[k])
    }

    /// Value of `w . 1` at `xs`; `xs.len()` must equal the level of `w`.
    pub fn eval_word(&self, w: &Word, xs: &[u64]) -> Result<u64> {
        self.word_at(w, &self.point(xs)?)
    }

    fn word_at(&self, w: &Word, pt: &Point<'_>) -> Result<u64> {
        let n = pt.xs.len();
        if w.level() as usize != n {
            return arg(format!("word {w} has level {} but point has {n} coordinates", w.level()));
        }
        let mut memo = vec![UNSET; (w.len() + 1) << n];
        self.rec(w, 0, (1u32 << n) - 1, pt, None, &mut memo)
    }

    /// `memo[pos << n | mask]`: the suffix from `pos` acting on the vacuum
    /// (or on the function tabulated in `tail`), evaluated at the coordinates
    /// in `mask`.
    fn rec(
        &self,
        w: &Word,
        pos: usize,
        mask: u32,
        pt: &Point<'_>,
        tail: Option<&[u64]>,
        memo: &mut [u64],
    ) -> Result<u64> {
        if pos == w.len() {
            return Ok(match tail {
                Some(t) => t[mask as usize],
                None => u64::from(mask == 0),
            });
        }
        let xs = pt.xs;
        let n = xs.len();
        let slot = pos << n | mask as usize;
        if memo[slot] != UNSET {
            return Ok(memo[slot]);
        }
        let p = self.prime();
        let g = w.letters()[pos];
        let v = if g.is_u() {
            let mut s = 0u64;
            for i in 0..n {
                if mask >> i & 1 == 0 {
                    continue;
                }
                let rest = mask & !(1 << i);
                let inner = self.rec(w, pos + 1, rest, pt, tail, memo)?;
                if inner == 0 {
                    continue;
                }
                let d = g.index();
                let xd = if d >= 0 {
                    pow_mod(xs[i], d as u64, p)
                } else {
                    pow_mod(pt.inv[i], (-d) as u64, p)
                };
                let mut t = mul_mod(xd, inner, p);
                for j in 0..n {
                    if rest >> j & 1 == 1 {
                        t = mul_mod(t, pt.omega[i * n + j], p);
                    }
                }
                s = add_mod(s, t, p);
            }
            s
        } else {
            let sub: Vec<u64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| xs[i]).collect();
            let inner = self.rec(w, pos + 1, mask, pt, tail, memo)?;
            mul_mod(self.h(g.index() as usize, &sub)?, inner, p)
        };
        memo[slot] = v;
        Ok(v)
    }

    /// `sum c w . 1` at `xs` for already specialized coefficients; words of
    /// other levels contribute nothing.
    pub fn eval_terms(&self, terms: &[(Word, u64)], xs: &[u64]) -> Result<u64> {
        let p = self.prime();
        let pt = self.point(xs)?;
        let mut s = 0u64;
        for (w, c) in terms {
            if w.level() as usize != xs.len() {
                continue;
            }
            s = add_mod(s, mul_mod(*c, self.word_at(w, &pt)?, p), p);
        }
        Ok(s)
    }

    /// `sum c (w s) . 1` at `xs`, sharing the evaluation of the common
    /// suffix `s` across the terms.
    pub fn eval_terms_with_suffix(&self, terms: &[(Word, u64)], suffix: &Word, xs: &[u64]) -> Result<u64> {
        let p = self.prime();
        let n = xs.len();
        let k = suffix.level();
        let pt = self.point(xs)?;
        let mut memo = vec![UNSET; (suffix.len() + 1) << n];
        let mut tail = vec![0u64; 1 << n];
        for (mask, t) in tail.iter_mut().enumerate() {
            if (mask as u32).count_ones() == k {
                *t = self.rec(suffix, 0, mask as u32, &pt, None, &mut memo)?;
            }
        }
        let mut s = 0u64;
        for (w, c) in terms {
            if w.level() + k != n as u32 {
                continue;
            }
            let mut memo = vec![UNSET; (w.len() + 1) << n];
            let v = self.rec(w, 0, (1u32 << n) - 1, &pt, Some(&tail), &mut memo)?;
            s = add_mod(s, mul_mod(*c, v, p), p);
        }
        Ok(s)
    }

    /// Value of `x . 1` at `xs`; words of other levels contribute nothing.
    pub fn eval_elem(&self, x: &AlgElem, xs: &[u64]) -> Result<u64> {
        self.eval_terms(&x.specialize(&self.assign)?, xs)
    }
}

/// Field elements are below the prime, so this never collides with a value.
const UNSET: u64 = u64::MAX;

struct Point<'a> {
    xs: &'a [u64],
    inv: Vec<u64>,
    /// `omega[i * n + j] = omega(x_i, x_j)`.
    omega: Vec<u64>,
}

/// The probes of a given level: `1`, `x^s` and `can(u[1,s] u[1,t])` for
/// `s, t` in `[-2, 2]`, each written as the word acting on the vacuum.
pub fn probes(level: u32) -> Vec<Word> {
    match level {
        0 => vec![Word::empty()],
        1 => (-2..=2).map(|s| Word::us(&[s])).collect(),
        2 => (-2..=2)
            .flat_map(|s| (-2..=2).map(move |t| Word::us(&[s, t])))
            .collect(),
        _ => Vec::new(),
    }
}

/// Outcome of [`rep_check_relator`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepCheck {
    pub relator: String,
    pub test_level: u32,
    pub probes: usize,
    /// Probes settled by exact rational-function arithmetic.
    pub exact: usize,
    /// Probes settled at evaluation points.
    pub modular: usize,
    pub failures: Vec<String>,
}

impl RepCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Apply `rel` to every probe of level `<= test_level` and test that the
/// image vanishes. The relator's own image is compared exactly up to
/// [`EXACT_MAX_VARS`] variables, probed images up to
/// [`EXACT_MAX_PROBED_VARS`]; larger images are evaluated at every point of
/// `pts`.
pub fn rep_check_relator(rel: &Relator, test_level: u32, pts: &EvalPointSet) -> Result<RepCheck> {
    rep_check_relator_sets(rel, test_level, std::slice::from_ref(pts))
}

/// [`rep_check_relator`] over several point sets (typically one per prime).
/// Exact comparisons do not depend on the point set and run once.
pub fn rep_check_relator_sets(rel: &Relator, test_level: u32, sets: &[EvalPointSet]) -> Result<RepCheck> {
    if test_level > 2 {
        return arg("probe level must be in [0, 2]");
    }
    let rel_level = rel.bidegree().map_or(0, |b| b.n);
    let max_theta = rel.elem.words().map(|w| w.theta_weight() as usize).max().unwrap_or(0);
    let mut modular = Vec::with_capacity(sets.len());
    for pts in sets {
        modular.push((
            pts,
            Evaluator::new(&pts.assign, max_theta)?,
            rel.elem.specialize(&pts.assign)?,
        ));
    }
    let mut out = RepCheck {
        relator: rel.id(),
        test_level,
        probes: 0,
        exact: 0,
        modular: 0,
        failures: Vec::new(),
    };
    for level in 0..=test_level {
        for probe in probes(level) {
            out.probes += 1;
            let n = (rel_level + level) as usize;
            let zero = if n <= EXACT_MAX_PROBED_VARS || (probe.is_empty() && n <= EXACT_MAX_VARS) {
                out.exact += 1;
                act_exact(&rel.elem, &probe).is_some_and(|f| f.is_zero())
            } else {
                out.modular += 1;
                let mut all = true;
                'sets: for (pts, ev, rel_terms) in &modular {
                    if pts.max_vars() < n {
                        return arg(format!("point set has {} coordinates, need {n}", pts.max_vars()));
                    }
                    for pt in &pts.points {
                        if ev.eval_terms_with_suffix(rel_terms, &probe, &pt[..n])? != 0 {
                            all = false;
                            break 'sets;
                        }
                    }
                }
                all
            };
            if !zero {
                out.failures.push(if probe.is_empty() { "1".into() } else { probe.to_string() });
            }
        }
    }
    Ok(out)
}

/// Rank of the `elems x points` evaluation matrix over `F_p`.
pub fn eval_rank(elems: &[SymRat], pts: &EvalPointSet) -> Result<usize> {
    if pts.len() < elems.len() {
        return arg(format!("{} points for {} functions", pts.len(), elems.len()));
    }
    let Some(n) = elems.first().map(SymRat::n_vars) else {
        return Ok(0);
    };
    if elems.iter().any(|f| f.n_vars() != n) || pts.max_vars() < n {
        return arg("functions must share a variable count covered by the points");
    }
    let rows = elems
        .iter()
        .map(|f| {
            pts.points
                .iter()
                .map(|pt| f.eval(&pts.assign, &pt[..n]))
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(dense_rank(&rows, pts.prime))
}
