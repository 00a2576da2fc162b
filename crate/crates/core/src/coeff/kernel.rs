use std::collections::BTreeMap;
use std::fmt;

use super::scalar::Scalar;
use crate::error::{arg, Result};

/// `e_k(q1, q2, q3)` with `q3 = (q1 q2)^-1`.
pub fn elem_sym(k: i64) -> Result<Scalar> {
    let (q1, q2, q3) = (Scalar::q1(), Scalar::q2(), Scalar::q3());
    Ok(match k {
        0 => Scalar::one(),
        1 => &(&q1 + &q2) + &q3,
        2 => &(&(&q1 * &q2) + &(&q1 * &q3)) + &(&q2 * &q3),
        3 => Scalar::one(),
        _ => return arg(format!("elementary symmetric index {k} outside [0,3]")),
    })
}

/// `e_j` for `j = 0..=3`.
pub fn elem_syms() -> [Scalar; 4] {
    [0, 1, 2, 3].map(|k| elem_sym(k).expect("index in range"))
}

/// Laurent polynomial over [`Scalar`] in formal series variables
/// `z_0, ..., z_{n-1}`; exponent vectors map to coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct KernelPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Scalar>,
}

impl KernelPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::monomial(c, vec![0; nvars])
    }

    pub fn monomial(c: Scalar, exps: Vec<i32>) -> Self {
        let mut out = Self::zero(exps.len());
        out.add_term(exps, c);
        out
    }

    /// The variable `z_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(Scalar::one(), e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: Scalar) {
        assert_eq!(exps.len(), self.nvars, "exponent arity");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Exchange the roles of `z_i` and `z_j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(i, j);
            out.add_term(e, c.clone());
        }
        out
    }

    /// Substitute exact values for `q1`, `q2` in every coefficient.
    pub fn substitute_params(&self, q1: &Scalar, q2: &Scalar) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.substitute(q1, q2)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for KernelPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("({c})*z^{e:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `chi_eps(z, w) = prod_i (z - q_i^eps w)` as a polynomial in `(z, w)`,
/// expanded as `sum_j (-1)^j e_j^(eps) z^(3-j) w^j`.
pub fn kernel_chi(eps: i8) -> Result<KernelPoly> {
    let e = elem_syms();
    let mut out = KernelPoly::zero(2);
    for j in 0..4usize {
        let c = match eps {
            1 => e[j].clone(),
            -1 => e[3 - j].clone(),
            _ => return arg(format!("kernel sign must be +1 or -1, got {eps}")),
        };
        let c = if j % 2 == 1 { -c } else { c };
        out.add_term(vec![3 - j as i32, j as i32], c);
    }
    Ok(out)
}

/// Structure constant of the adjoint action of `u[0,k]` on `u[1,*]`:
/// `(1/k) * sum_i (q_i^k - q_i^-k)`.
pub fn alpha(k: i64) -> Result<Scalar> {
    if k < 1 {
        return arg(format!("alpha index must be positive, got {k}"));
    }
    let k32 = k as i32;
    let mut s = Scalar::zero();
    for q in [Scalar::q1(), Scalar::q2(), Scalar::q3()] {
        s += &(&q.pow(k32)? - &q.pow(-k32)?);
    }
    Ok(&s * &Scalar::from_ratio(1, k)?)
}

/// Coefficients `phi_0..=phi_{k_max}` of
/// `chi_-1(z, x) / chi_1(z, x) = sum_j phi_j (x/z)^j`.
pub fn theta_series(k_max: usize) -> Vec<Scalar> {
    let e = elem_syms();
    // 1 / prod(1 - q_i t): c_k = e1 c_{k-1} - e2 c_{k-2} + c_{k-3}
    let mut inv = vec![Scalar::zero(); k_max + 1];
    inv[0] = Scalar::one();
    for k in 1..=k_max {
        let mut c = &e[1] * &inv[k - 1];
        if k >= 2 {
            c -= &(&e[2] * &inv[k - 2]);
        }
        if k >= 3 {
            c += &inv[k - 3];
        }
        inv[k] = c;
    }
    // prod(1 - q_i^-1 t) = 1 - e2 t + e1 t^2 - t^3
    let num = [Scalar::one(), -&e[2], e[1].clone(), Scalar::from(-1)];
    (0..=k_max)
        .map(|k| {
            let mut s = Scalar::zero();
            for (j, n) in num.iter().enumerate() {
                if j <= k {
                    s += &(n * &inv[k - j]);
                }
            }
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elem_sym_values() {
        assert_eq!(elem_sym(0).unwrap(), Scalar::one());
        assert_eq!(elem_sym(3).unwrap(), Scalar::one());
        assert_eq!(
            elem_sym(1).unwrap(),
            &(&Scalar::q1() + &Scalar::q2()) + &Scalar::q3()
        );
        assert!(elem_sym(4).is_err());
        assert!(elem_sym(-1).is_err());
    }

    #[test]
    fn chi_expansions() {
        let e = elem_syms();
        let plus = kernel_chi(1).unwrap();
        assert_eq!(plus.coeff(&[3, 0]), Scalar::one());
        assert_eq!(plus.coeff(&[2, 1]), -&e[1]);
        assert_eq!(plus.coeff(&[1, 2]), e[2]);
        assert_eq!(plus.coeff(&[0, 3]), Scalar::from(-1));
        let minus = kernel_chi(-1).unwrap();
        assert_eq!(minus.coeff(&[2, 1]), -&e[2]);
        assert_eq!(minus.coeff(&[1, 2]), e[1]);
        assert!(kernel_chi(0).is_err());
    }

    #[test]
    fn chi_matches_product_form() {
        let z = KernelPoly::var(2, 0);
        let w = KernelPoly::var(2, 1);
        for (eps, qs) in [
            (1i32, [Scalar::q1(), Scalar::q2(), Scalar::q3()]),
            (-1, [Scalar::q1(), Scalar::q2(), Scalar::q3()]),
        ] {
            let mut prod = KernelPoly::constant(2, Scalar::one());
            for q in qs {
                let f = z.add(&w.scale(&q.pow(eps).unwrap()).neg());
                prod = prod.mul(&f);
            }
            assert_eq!(prod, kernel_chi(eps as i8).unwrap());
        }
    }

    #[test]
    fn chi_at_trivial_parameters_is_cube() {
        let one = Scalar::one();
        let chi = kernel_chi(1).unwrap().substitute_params(&one, &one).unwrap();
        let d = KernelPoly::var(2, 0).add(&KernelPoly::var(2, 1).neg());
        assert_eq!(chi, d.mul(&d).mul(&d));
    }

    #[test]
    fn chi_antisymmetry() {
        let plus = kernel_chi(1).unwrap();
        let minus = kernel_chi(-1).unwrap();
        assert_eq!(minus, plus.swap_vars(0, 1).neg());
    }

    #[test]
    fn alpha_values() {
        let e = elem_syms();
        assert_eq!(alpha(1).unwrap(), &e[1] - &e[2]);
        let mut s = Scalar::zero();
        for q in [Scalar::q1(), Scalar::q2(), Scalar::q3()] {
            s += &(&q.pow(2).unwrap() - &q.pow(-2).unwrap());
        }
        assert_eq!(alpha(2).unwrap(), &s / &Scalar::from(2));
        assert!(alpha(0).is_err());
        let one = Scalar::one();
        for k in 1..5 {
            assert!(alpha(k).unwrap().substitute(&one, &one).unwrap().is_zero());
        }
    }

    #[test]
    fn theta_series_first_terms() {
        let e = elem_syms();
        let phi = theta_series(3);
        assert_eq!(phi[0], Scalar::one());
        assert_eq!(phi[1], &e[1] - &e[2]);
    }
}
