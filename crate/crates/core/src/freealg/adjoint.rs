//! The elements `u[0,k]` and their adjoint action.
//!
//! `u[0,k]` is the `z^-k` coefficient of `log T0+(z)`, computed with the
//! level-0 letters treated as commuting and written in nondecreasing index
//! order. Its bracket with `u[1,l]` is `alpha_k u[1,l+k]`.

use std::collections::BTreeMap;

use super::elem::AlgElem;
use super::word::{Generator, Word};
use crate::coeff::{alpha, Scalar};
use crate::error::{arg, Result};

type CommPoly = BTreeMap<Vec<i32>, Scalar>;

fn comm_mul(a: &CommPoly, b: &CommPoly, max_weight: i32) -> CommPoly {
    let mut out = CommPoly::new();
    for (ma, ca) in a {
        let wa: i32 = ma.iter().sum();
        for (mb, cb) in b {
            if wa + mb.iter().sum::<i32>() > max_weight {
                continue;
            }
            let mut m: Vec<i32> = ma.iter().chain(mb).copied().collect();
            m.sort_unstable();
            let slot = out.entry(m).or_default();
            *slot += &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `u[0,k]` as a polynomial in the `Th[0,*]`.
pub fn u0_as_theta(k: i32) -> Result<AlgElem> {
    if k < 1 {
        return arg(format!("u[0,{k}] requires k >= 1"));
    }
    let x: CommPoly = (1..=k).map(|j| (vec![j], Scalar::one())).collect();
    let mut power = x.clone();
    let mut log = CommPoly::new();
    for r in 1..=k {
        if r > 1 {
            power = comm_mul(&power, &x, k);
        }
        let sign = if r % 2 == 1 { 1 } else { -1 };
        let c = Scalar::from_ratio(sign, r as i64)?;
        for (m, v) in &power {
            if m.iter().sum::<i32>() == k {
                let slot = log.entry(m.clone()).or_default();
                *slot += &(&c * v);
            }
        }
    }
    let mut out = AlgElem::zero();
    for (m, c) in log {
        out.add_term(Word::from_letters(m.into_iter().map(Generator::th)), c);
    }
    Ok(out)
}

/// The derivation with `u[1,l] -> alpha_k u[1,l+k]` and `Th[0,m] -> 0`.
pub fn ad_u0(k: i32, x: &AlgElem) -> Result<AlgElem> {
    let a = alpha(k as i64)?;
    Ok(x.map_linear(|w| {
        let mut out = AlgElem::zero();
        for (pos, g) in w.letters().iter().enumerate() {
            if g.is_u() {
                let mut letters = w.letters().to_vec();
                letters[pos] = g.shifted(k);
                out.add_term(Word::from_letters(letters), a.clone());
            }
        }
        out
    }))
}
