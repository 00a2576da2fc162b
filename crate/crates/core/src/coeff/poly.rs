//! Dense polynomial kernels behind [`Scalar`](super::Scalar) normalization:
//! exact division and gcd in `Z[q2]` and `Z[q2][q1]` by primitive
//! pseudo-remainder sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::ParamLaurent;

/// Little-endian coefficients, no trailing zeros.
pub(crate) type UPoly = Vec<BigInt>;
/// Polynomial in `q1` whose coefficients are [`UPoly`]s in `q2`.
pub(crate) type BPoly = Vec<UPoly>;

fn u_trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn u_is_one(p: &UPoly) -> bool {
    p.len() == 1 && p[0].is_one()
}

fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out: UPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    u_trim(&mut out);
    out
}

fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    u_trim(&mut out);
    out
}

fn u_content(p: &UPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn u_div_scalar(p: &UPoly, c: &BigInt) -> UPoly {
    p.iter().map(|x| x / c).collect()
}

/// Exact quotient `a / b` over `Z`, `None` if `b` does not divide `a`.
fn u_div_exact(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    let lb = b.last().unwrap();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let (c, rem) = r.last().unwrap().div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        u_trim(&mut r);
    }
    if r.is_empty() {
        u_trim(&mut q);
        Some(q)
    } else {
        None
    }
}

fn u_prem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let lb = b.last().unwrap().clone();
    while !r.is_empty() && r.len() >= b.len() {
        let shift = r.len() - b.len();
        let la = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &la * y;
        }
        u_trim(&mut r);
    }
    r
}

fn u_primitive(p: &UPoly) -> UPoly {
    let c = u_content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out = u_div_scalar(p, &c);
    if out.last().is_some_and(|x| x.is_negative()) {
        out.iter_mut().for_each(|x| *x = -x.clone());
    }
    out
}

/// Prime for the coprimality shortcut.
const IMAGE_PRIME: u64 = 2_147_483_647;

fn big_mod(c: &BigInt, p: u64) -> u64 {
    let m = c.mod_floor(&BigInt::from(p));
    m.try_into().expect("reduced below p")
}

fn m_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn m_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = m_mul(r, b, p);
        }
        b = m_mul(b, b, p);
        e >>= 1;
    }
    r
}

fn m_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of `gcd(a, b)` in `F_p[x]` for nonzero inputs.
fn m_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    m_trim(&mut a);
    m_trim(&mut b);
    while !b.is_empty() {
        let inv = m_pow(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let c = m_mul(*a.last().unwrap(), inv, p);
            let shift = a.len() - b.len();
            for (j, y) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p - m_mul(c, *y, p)) % p;
            }
            m_trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// A sufficient test for `gcd(a, b)` having degree 0: the images mod p are
/// coprime while both leading coefficients survive. The true gcd reduces to a
/// divisor of the image gcd of the same degree, so that degree is 0 too.
fn u_coprime_image(a: &UPoly, b: &UPoly) -> bool {
    let p = IMAGE_PRIME;
    let ia: Vec<u64> = a.iter().map(|c| big_mod(c, p)).collect();
    let ib: Vec<u64> = b.iter().map(|c| big_mod(c, p)).collect();
    ia.last() != Some(&0) && ib.last() != Some(&0) && m_gcd_degree(ia, ib, p) == 0
}

/// Same test in `q1` for bivariate inputs, after substituting `q2 = t`.
fn b_coprime_image(a: &BPoly, b: &BPoly) -> bool {
    let p = IMAGE_PRIME;
    let at = |u: &UPoly, t: u64| {
        u.iter()
            .rev()
            .fold(0u64, |acc, c| (m_mul(acc, t, p) + big_mod(c, p)) % p)
    };
    (2..6).any(|t| {
        let ia: Vec<u64> = a.iter().map(|u| at(u, t)).collect();
        let ib: Vec<u64> = b.iter().map(|u| at(u, t)).collect();
        ia.last() != Some(&0) && ib.last() != Some(&0) && m_gcd_degree(ia, ib, p) == 0
    })
}

/// Gcd in `Z[x]` with positive leading coefficient.
pub(crate) fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        return u_primitive(b).into_iter().map(|x| x * u_content(b)).collect();
    }
    if b.is_empty() {
        return u_primitive(a).into_iter().map(|x| x * u_content(a)).collect();
    }
    let c = u_content(a).gcd(&u_content(b));
    if u_coprime_image(a, b) {
        return vec![c];
    }
    let (mut x, mut y) = (u_primitive(a), u_primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        let r = u_prem(&x, &y);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            y = vec![BigInt::one()];
            break;
        }
        x = y;
        y = u_primitive(&r);
    }
    y.into_iter().map(|v| v * &c).collect()
}

fn b_trim(p: &mut BPoly) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

/// Build from a Laurent polynomial with nonnegative exponents.
pub(crate) fn b_from_laurent(p: &ParamLaurent) -> BPoly {
    let mut out: BPoly = Vec::new();
    for (&(a, b), c) in p.terms() {
        assert!(a >= 0 && b >= 0, "negative exponent in dense conversion");
        let (a, b) = (a as usize, b as usize);
        if out.len() <= a {
            out.resize(a + 1, Vec::new());
        }
        if out[a].len() <= b {
            out[a].resize(b + 1, BigInt::zero());
        }
        out[a][b] += c;
    }
    for u in out.iter_mut() {
        u_trim(u);
    }
    b_trim(&mut out);
    out
}

pub(crate) fn b_to_laurent(p: &BPoly) -> ParamLaurent {
    ParamLaurent::from_terms(p.iter().enumerate().flat_map(|(a, u)| {
        u.iter()
            .enumerate()
            .map(move |(b, c)| ((a as i32, b as i32), c.clone()))
    }))
}

fn b_content(p: &BPoly) -> UPoly {
    let mut g: UPoly = Vec::new();
    for c in p {
        g = u_gcd(&g, c);
        if u_is_one(&g) {
            break;
        }
    }
    g
}

fn b_div_upoly(p: &BPoly, c: &UPoly) -> BPoly {
    p.iter()
        .map(|x| u_div_exact(x, c).expect("content divides every coefficient"))
        .collect()
}

fn b_primitive(p: &BPoly) -> BPoly {
    let c = b_content(p);
    if c.is_empty() {
        return Vec::new();
    }
    let mut out = b_div_upoly(p, &c);
    b_make_positive(&mut out);
    out
}

fn b_make_positive(p: &mut BPoly) {
    let neg = p
        .last()
        .and_then(|u| u.last())
        .is_some_and(|x| x.is_negative());
    if neg {
        for u in p.iter_mut() {
            for x in u.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

fn b_prem(a: &BPoly, b: &BPoly) -> BPoly {
    let mut r = a.clone();
    let lb = b.last().unwrap().clone();
    while !r.is_empty() && r.len() >= b.len() {
        let shift = r.len() - b.len();
        let la = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x = u_mul(x, &lb);
        }
        for (j, y) in b.iter().enumerate() {
            let t = u_mul(&la, y);
            r[shift + j] = u_sub(&r[shift + j], &t);
        }
        b_trim(&mut r);
    }
    r
}

/// Exact quotient in `Z[q1, q2]`.
pub(crate) fn b_div_exact(a: &BPoly, b: &BPoly) -> Option<BPoly> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let mut q: BPoly = vec![Vec::new(); a.len() - b.len() + 1];
    let lb = b.last().unwrap();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = u_div_exact(r.last().unwrap(), lb)?;
        for (j, y) in b.iter().enumerate() {
            let t = u_mul(&c, y);
            r[shift + j] = u_sub(&r[shift + j], &t);
        }
        q[shift] = c;
        b_trim(&mut r);
    }
    if r.is_empty() {
        b_trim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// Gcd in `Z[q1, q2]`, normalized to a positive leading coefficient.
pub(crate) fn b_gcd(a: &BPoly, b: &BPoly) -> BPoly {
    if a.is_empty() {
        let mut out = b.clone();
        b_make_positive(&mut out);
        return out;
    }
    if b.is_empty() {
        let mut out = a.clone();
        b_make_positive(&mut out);
        return out;
    }
    let c = u_gcd(&b_content(a), &b_content(b));
    let (mut x, mut y) = (b_primitive(a), b_primitive(b));
    if b_coprime_image(&x, &y) {
        y = vec![vec![BigInt::one()]];
        let mut out: BPoly = y.iter().map(|u| u_mul(u, &c)).collect();
        b_make_positive(&mut out);
        return out;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.len() == 1 {
            y = vec![vec![BigInt::one()]];
            break;
        }
        let r = b_prem(&x, &y);
        if r.is_empty() {
            break;
        }
        x = y;
        y = b_primitive(&r);
    }
    let mut out: BPoly = y.iter().map(|u| u_mul(u, &c)).collect();
    b_make_positive(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> ParamLaurent {
        s.parse().unwrap()
    }

    #[test]
    fn bivariate_gcd_finds_common_factor() {
        // (q1 + q2)(q1 - q2) and (q1 + q2)^2
        let s = lp("1*q1^1*q2^0 + 1*q1^0*q2^1");
        let d = lp("1*q1^1*q2^0 + -1*q1^0*q2^1");
        let a = b_from_laurent(&(&s * &d));
        let b = b_from_laurent(&(&s * &s));
        assert_eq!(b_to_laurent(&b_gcd(&a, &b)), s);
    }

    #[test]
    fn gcd_keeps_integer_content() {
        let a = b_from_laurent(&lp("4*q1^0*q2^0 + 6*q1^1*q2^2"));
        let b = b_from_laurent(&lp("6*q1^0*q2^0 + 9*q1^1*q2^2"));
        assert_eq!(
            b_to_laurent(&b_gcd(&a, &b)),
            lp("2*q1^0*q2^0 + 3*q1^1*q2^2")
        );
    }

    #[test]
    fn coprime_inputs_have_unit_gcd() {
        let a = b_from_laurent(&lp("1*q1^0*q2^0 + 1*q1^1*q2^0"));
        let b = b_from_laurent(&lp("1*q1^0*q2^0 + 1*q1^0*q2^1"));
        assert_eq!(b_to_laurent(&b_gcd(&a, &b)), ParamLaurent::one());
    }

    #[test]
    fn exact_division() {
        let s = lp("1*q1^1*q2^0 + 1*q1^0*q2^1");
        let t = lp("2*q1^0*q2^0 + -1*q1^2*q2^1");
        let prod = b_from_laurent(&(&s * &t));
        let q = b_div_exact(&prod, &b_from_laurent(&s)).unwrap();
        assert_eq!(b_to_laurent(&q), t);
        assert!(b_div_exact(&b_from_laurent(&t), &b_from_laurent(&s)).is_none());
    }
}
