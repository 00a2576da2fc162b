use std::fmt;

use crate::coeff::{kernel_chi, specialize, theta_series, EvalAssign, KernelPoly, Scalar};
use crate::error::Result;
use crate::coeff::{add_mod, inv_mod, mul_mod, pow_mod, sub_mod};

/// A symmetric rational function `N(x_1..x_n) / prod_{i<j} (x_i - x_j)^3`.
///
/// Only the numerator is stored. Since the denominator is antisymmetric, a
/// symmetric function has an antisymmetric numerator, which is therefore
/// divisible by every `x_i - x_j`; the true pole order on each diagonal is
/// at most 2.
#[derive(Clone, PartialEq, Eq)]
pub struct SymRat {
    num: KernelPoly,
}

/// `chi_-1(x, y)`, the numerator of the shuffle kernel
/// `omega(x, y) = chi_-1(x, y) / (x - y)^3`.
pub fn omega_numerator() -> KernelPoly {
    kernel_chi(-1).expect("valid sign")
}

/// Place the two-variable polynomial `p(x, y)` on variables `(i, j)` of `n`.
fn embed2(p: &KernelPoly, n: usize, i: usize, j: usize) -> KernelPoly {
    let mut out = KernelPoly::zero(n);
    for (e, c) in p.terms() {
        let mut v = vec![0; n];
        v[i] += e[0];
        v[j] += e[1];
        out.add_term(v, c.clone());
    }
    out
}

/// Rename the variables of `p` (of arity `vars.len()`) to `vars` among `n`.
fn embed(p: &KernelPoly, n: usize, vars: &[usize]) -> KernelPoly {
    let mut out = KernelPoly::zero(n);
    for (e, c) in p.terms() {
        let mut v = vec![0; n];
        for (k, &x) in vars.iter().enumerate() {
            v[x] += e[k];
        }
        out.add_term(v, c.clone());
    }
    out
}

impl SymRat {
    pub fn zero(n: usize) -> Self {
        Self {
            num: KernelPoly::zero(n),
        }
    }

    /// The constant 1 in zero variables (the vacuum).
    pub fn one() -> Self {
        Self {
            num: KernelPoly::constant(0, Scalar::one()),
        }
    }

    /// `x_1^d` in one variable.
    pub fn monomial(d: i32) -> Self {
        Self {
            num: KernelPoly::monomial(Scalar::one(), vec![d]),
        }
    }

    /// Build from the numerator over `prod_{i<j} (x_i - x_j)^3`.
    pub fn from_numerator(num: KernelPoly) -> Self {
        Self { num }
    }

    pub fn n_vars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &KernelPoly {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n_vars(), o.n_vars(), "variable count");
        Self {
            num: self.num.add(&o.num),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self {
            num: self.num.scale(s),
        }
    }

    /// Value at `xs` over `F_p`, the parameters taken from `a`.
    pub fn eval(&self, a: &EvalAssign, xs: &[u64]) -> Result<u64> {
        let p = a.prime;
        let n = self.n_vars();
        assert_eq!(xs.len(), n, "point arity");
        let num = eval_poly(&self.num, a, xs)?;
        let mut den = 1u64;
        for i in 0..n {
            for j in (i + 1)..n {
                den = mul_mod(den, pow_mod(sub_mod(xs[i], xs[j], p), 3, p), p);
            }
        }
        if den == 0 {
            return Err(crate::Error::BadPoint("point on a diagonal".into()));
        }
        Ok(mul_mod(num, inv_mod(den, p), p))
    }
}

/// Value of a Laurent polynomial in the `x_i` over `F_p`.
pub fn eval_poly(poly: &KernelPoly, a: &EvalAssign, xs: &[u64]) -> Result<u64> {
    let p = a.prime;
    let mut s = 0u64;
    for (e, c) in poly.terms() {
        let mut t = specialize(c, a)?.value();
        for (k, &d) in e.iter().enumerate() {
            t = mul_mod(t, signed_pow(xs[k], d, p)?, p);
        }
        s = add_mod(s, t, p);
    }
    Ok(s)
}

pub(crate) fn signed_pow(x: u64, d: i32, p: u64) -> Result<u64> {
    if d >= 0 {
        return Ok(pow_mod(x, d as u64, p));
    }
    if x.is_multiple_of(p) {
        return Err(crate::Error::BadPoint("zero coordinate with negative power".into()));
    }
    Ok(pow_mod(inv_mod(x, p), (-d) as u64, p))
}

/// `F * G`: sum over the ways to split the variables into a block for `F`
/// and a block for `G`, each term weighted by `prod omega(x_i, x_j)` over
/// `i` in the first block and `j` in the second.
pub fn shuffle_mul(f: &SymRat, g: &SymRat) -> SymRat {
    let (n, m) = (f.n_vars(), g.n_vars());
    let total = n + m;
    let chi = omega_numerator();
    let mut out = KernelPoly::zero(total);
    for mask in 0u32..(1 << total) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let s: Vec<usize> = (0..total).filter(|i| mask >> i & 1 == 1).collect();
        let t: Vec<usize> = (0..total).filter(|i| mask >> i & 1 == 0).collect();
        // Reordering the cross factors (x_i - x_j)^3 into i < j order.
        let inversions = s
            .iter()
            .map(|&i| t.iter().filter(|&&j| j < i).count())
            .sum::<usize>();
        let mut term = embed(&f.num, total, &s).mul(&embed(&g.num, total, &t));
        for &i in &s {
            for &j in &t {
                term = term.mul(&embed2(&chi, total, i, j));
            }
        }
        if inversions % 2 == 1 {
            term = term.neg();
        }
        out = out.add(&term);
    }
    SymRat { num: out }
}

/// `h_k(x_1..x_n)`: the `z^-k` coefficient of `prod_i Phi(z, x_i)` with
/// `Phi(z, x) = chi_-1(z, x) / chi_1(z, x)` expanded in `x / z`.
pub fn theta_multiplier(k: usize, n: usize) -> KernelPoly {
    let phi = theta_series(k);
    // Dynamic programming over variables: acc[j] is the weight-j part.
    let mut acc: Vec<KernelPoly> = (0..=k)
        .map(|j| {
            if j == 0 {
                KernelPoly::constant(n, Scalar::one())
            } else {
                KernelPoly::zero(n)
            }
        })
        .collect();
    for i in 0..n {
        let mut next: Vec<KernelPoly> = (0..=k).map(|_| KernelPoly::zero(n)).collect();
        for (j, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (l, c) in phi.iter().enumerate().take(k - j + 1) {
                let mut e = vec![0; n];
                e[i] = l as i32;
                next[j + l] = next[j + l].add(&a.mul(&KernelPoly::monomial(c.clone(), e)));
            }
        }
        acc = next;
    }
    acc.swap_remove(k)
}

/// Multiplication by `h_k`.
pub fn theta_op(k: usize, f: &SymRat) -> SymRat {
    if k == 0 {
        return f.clone();
    }
    SymRat {
        num: f.num.mul(&theta_multiplier(k, f.n_vars())),
    }
}

impl fmt::Debug for SymRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `(numerator) / prod (x_i - x_j)^3` with monomials `c*x1^a*x2^b...`.
impl fmt::Display for SymRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n_vars();
        let mut parts = Vec::new();
        for (e, c) in self.num.terms() {
            let mut s = format!("({c})");
            for (i, &d) in e.iter().enumerate() {
                if d != 0 {
                    s.push_str(&format!("*x{}^{}", i + 1, d));
                }
            }
            parts.push(s);
        }
        let num = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        };
        if n < 2 {
            write!(f, "{num}")
        } else {
            write!(f, "[{num}] / Delta{n}^3")
        }
    }
}
