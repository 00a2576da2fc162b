//! Coefficient extraction from products of generating series.
//!
//! Conventions: `T1(z) = sum_{d in Z} u[1,d] z^-d` and
//! `T0+(z) = sum_{k >= 0} Th[0,k] z^-k` with `Th[0,0] = 1`.

use super::elem::AlgElem;
use super::word::{Generator, Word};
use crate::coeff::KernelPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    T1,
    T0Plus,
}

/// One series factor `T(z_var)` of an ordered product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesFactor {
    pub var: usize,
    pub kind: SeriesKind,
}

impl SeriesFactor {
    pub fn t1(var: usize) -> Self {
        Self {
            var,
            kind: SeriesKind::T1,
        }
    }

    pub fn t0(var: usize) -> Self {
        Self {
            var,
            kind: SeriesKind::T0Plus,
        }
    }
}

/// Coefficient of `prod_i z_i^{-target[i]}` in
/// `kernel(z) * T(z_{f_1}) * ... * T(z_{f_r})`, the series multiplied in the
/// listed order.
///
/// For a kernel monomial `prod z_i^{a_i}` the factor on `z_i` contributes the
/// letter of index `a_i + target[i]`.
pub fn coefficient(kernel: &KernelPoly, factors: &[SeriesFactor], target: &[i32]) -> AlgElem {
    assert_eq!(target.len(), kernel.nvars(), "target arity");
    let mut out = AlgElem::zero();
    'terms: for (exps, c) in kernel.terms() {
        let mut w = Word::empty();
        for f in factors {
            let idx = exps[f.var] + target[f.var];
            match f.kind {
                SeriesKind::T1 => w.push(Generator::u(idx)),
                SeriesKind::T0Plus => match idx {
                    i if i < 0 => continue 'terms,
                    0 => {}
                    i => w.push(Generator::th(i)),
                },
            }
        }
        out.add_term(w, c.clone());
    }
    out
}

/// Coefficient of `prod_i z_i^-1`.
pub fn residue(kernel: &KernelPoly, factors: &[SeriesFactor]) -> AlgElem {
    coefficient(kernel, factors, &vec![1; kernel.nvars()])
}
