use std::fmt;

use crate::coeff::{kernel_chi, KernelPoly, Scalar};
use crate::error::{arg, Result};
use crate::freealg::series::{coefficient, residue, SeriesFactor};
use crate::freealg::{AlgElem, Bidegree, Window, Word};

/// The relator families. The first four are the defining relations; `RSym`
/// collects the symmetrized cubic elements whose vanishing is derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    ThetaComm,
    QuadTT,
    Mixed,
    Cubic,
    RSym,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::ThetaComm,
        Family::QuadTT,
        Family::Mixed,
        Family::Cubic,
        Family::RSym,
    ];

    /// Families generating the defining ideal.
    pub const DEFINING: [Family; 4] = [
        Family::ThetaComm,
        Family::QuadTT,
        Family::Mixed,
        Family::Cubic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ThetaComm => "THETA_COMM",
            Family::QuadTT => "QUAD_TT",
            Family::Mixed => "MIXED",
            Family::Cubic => "CUBIC",
            Family::RSym => "R_SYM",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A homogeneous relator with the family and parameters that rebuild it.
#[derive(Clone, PartialEq, Eq)]
pub struct Relator {
    pub elem: AlgElem,
    pub family: Family,
    pub params: Vec<i32>,
}

impl Relator {
    /// `FAMILY(p1,p2,...)`.
    pub fn id(&self) -> String {
        let ps: Vec<String> = self.params.iter().map(i32::to_string).collect();
        format!("{}({})", self.family, ps.join(","))
    }

    pub fn bidegree(&self) -> Option<Bidegree> {
        self.elem.bidegree()
    }

    /// Largest level-0 weight among the words.
    pub fn max_theta_weight(&self) -> u32 {
        self.elem.words().map(Word::theta_weight).max().unwrap_or(0)
    }

    /// Rebuild from family and parameters.
    pub fn rebuild(family: Family, params: &[i32]) -> Result<Relator> {
        let want = match family {
            Family::ThetaComm | Family::QuadTT | Family::Mixed => 2,
            Family::Cubic => 1,
            Family::RSym => 3,
        };
        if params.len() != want {
            return arg(format!("{family} takes {want} parameters"));
        }
        match family {
            Family::ThetaComm => relator_theta_comm(params[0], params[1]),
            Family::QuadTT => Ok(relator_quad(params[0], params[1])),
            Family::Mixed => Ok(relator_mixed(params[0], params[1])),
            Family::Cubic => Ok(relator_cubic(params[0])),
            Family::RSym => Ok(relator_r(params[0], params[1], params[2])),
        }
    }
}

impl fmt::Debug for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Dump line: `FAMILY(params): elem`.
impl fmt::Display for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id(), self.elem)
    }
}

/// `Th[0,m] Th[0,n] - Th[0,n] Th[0,m]`.
pub fn relator_theta_comm(m: i32, n: i32) -> Result<Relator> {
    if m < 1 || n < 1 {
        return arg(format!("THETA_COMM({m},{n}) needs positive indices"));
    }
    Ok(Relator {
        elem: AlgElem::th(m).commutator(&AlgElem::th(n)),
        family: Family::ThetaComm,
        params: vec![m, n],
    })
}

/// Coefficient of `z^-a w^-b` in
/// `chi_1(z,w) A(z) T1(w) - chi_-1(z,w) T1(w) A(z)` with `A` the given series.
fn exchange_relation(left: SeriesFactor, a: i32, b: i32) -> AlgElem {
    let chi_p = kernel_chi(1).expect("valid sign");
    let chi_m = kernel_chi(-1).expect("valid sign");
    let w = SeriesFactor::t1(1);
    let lhs = coefficient(&chi_p, &[left, w], &[a, b]);
    let rhs = coefficient(&chi_m, &[w, left], &[a, b]);
    &lhs - &rhs
}

/// Coefficient of `z^-a w^-b` in `chi_1(z,w) T1(z) T1(w) = chi_-1(z,w) T1(w) T1(z)`.
pub fn relator_quad(a: i32, b: i32) -> Relator {
    Relator {
        elem: exchange_relation(SeriesFactor::t1(0), a, b),
        family: Family::QuadTT,
        params: vec![a, b],
    }
}

/// Coefficient of `z^-a w^-b` in `chi_1(z,w) T0+(z) T1(w) = chi_-1(z,w) T1(w) T0+(z)`.
pub fn relator_mixed(a: i32, b: i32) -> Relator {
    Relator {
        elem: exchange_relation(SeriesFactor::t0(0), a, b),
        family: Family::Mixed,
        params: vec![a, b],
    }
}

/// `Res_{z,y,w} (zyw)^m (z+w)(y^2 - zw) T1(z) T1(y) T1(w)`.
pub fn relator_cubic(m: i32) -> Relator {
    // variables: z = 0, y = 1, w = 2
    let one = Scalar::one;
    let z_plus_w = KernelPoly::var(3, 0).add(&KernelPoly::var(3, 2));
    let y2_minus_zw = KernelPoly::monomial(one(), vec![0, 2, 0])
        .add(&KernelPoly::monomial(-one(), vec![1, 0, 1]));
    let kernel = KernelPoly::monomial(one(), vec![m, m, m])
        .mul(&z_plus_w)
        .mul(&y2_minus_zw);
    let elem = residue(
        &kernel,
        &[SeriesFactor::t1(0), SeriesFactor::t1(1), SeriesFactor::t1(2)],
    );
    Relator {
        elem,
        family: Family::Cubic,
        params: vec![m],
    }
}

/// `[[u[1,a], u[1,b]], u[1,c]]`.
pub fn nested_commutator(a: i32, b: i32, c: i32) -> AlgElem {
    AlgElem::u(a)
        .commutator(&AlgElem::u(b))
        .commutator(&AlgElem::u(c))
}

/// Sum over the six orderings `(m',n',l')` of `(m,n,l)` of
/// `[[u[1,m'-1], u[1,n'+1]], u[1,l']]`.
pub fn relator_r(m: i32, n: i32, l: i32) -> Relator {
    let t = [m, n, l];
    let mut elem = AlgElem::zero();
    for [i, j, k] in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        elem = &elem + &nested_commutator(t[i] - 1, t[j] + 1, t[k]);
    }
    Relator {
        elem,
        family: Family::RSym,
        params: vec![m, n, l],
    }
}

fn keep(rel: Relator, w: &Window) -> Option<Relator> {
    (!rel.elem.is_zero() && w.contains(&rel.elem)).then_some(rel)
}

/// In-window relators of one family, in parameter order.
///
/// Families with a parameter symmetry list each relator once:
/// `THETA_COMM(m,n)` with `m < n`, `QUAD_TT(a,b)` with `a <= b` (the relator is
/// symmetric in `a, b`) and `R_SYM(m,n,l)` with `m <= n <= l`.
pub fn enumerate_family(w: &Window, family: Family) -> Vec<Relator> {
    let th = w.th_max as i32;
    let (lo, hi) = (w.u_min, w.u_max);
    let mut out = Vec::new();
    match family {
        Family::ThetaComm => {
            for m in 1..=th {
                for n in (m + 1)..=th {
                    out.extend(relator_theta_comm(m, n).ok().and_then(|r| keep(r, w)));
                }
            }
        }
        Family::QuadTT if w.n_max >= 2 => {
            for a in (lo - 3)..=hi {
                for b in a..=hi {
                    out.extend(keep(relator_quad(a, b), w));
                }
            }
        }
        Family::Mixed if w.n_max >= 1 => {
            for a in -3..=(th - 3) {
                for b in (lo - 3)..=hi {
                    out.extend(keep(relator_mixed(a, b), w));
                }
            }
        }
        Family::Cubic if w.n_max >= 3 => {
            for m in (lo - 3)..=hi {
                out.extend(keep(relator_cubic(m), w));
            }
        }
        Family::RSym if w.n_max >= 3 => {
            for m in (lo - 1)..=(hi + 1) {
                for n in m..=(hi + 1) {
                    for l in n..=(hi + 1) {
                        out.extend(keep(relator_r(m, n, l), w));
                    }
                }
            }
        }
        _ => {}
    }
    out
}

/// All in-window relators of all five families, ordered by `(family, params)`.
pub fn enumerate_relators(w: &Window) -> Vec<Relator> {
    enumerate_with(w, &Family::ALL)
}

/// In-window relators of the listed families, ordered by `(family, params)`.
pub fn enumerate_with(w: &Window, families: &[Family]) -> Vec<Relator> {
    let mut fams = families.to_vec();
    fams.sort();
    fams.dedup();
    fams.into_iter()
        .flat_map(|f| enumerate_family(w, f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{alpha, elem_syms};
    use crate::freealg::{project, Generator};

    fn word(ix: &[i32]) -> AlgElem {
        AlgElem::from_word(Word::us(ix))
    }

    fn tu(k: i32, d: i32) -> AlgElem {
        AlgElem::from_word(Word::from_letters([Generator::th(k), Generator::u(d)]))
    }

    fn ut(d: i32, k: i32) -> AlgElem {
        AlgElem::from_word(Word::from_letters([Generator::u(d), Generator::th(k)]))
    }

    #[test]
    fn theta_comm_examples() {
        assert!(relator_theta_comm(1, 1).unwrap().elem.is_zero());
        let r12 = relator_theta_comm(1, 2).unwrap();
        let want = &(&AlgElem::th(1) * &AlgElem::th(2)) - &(&AlgElem::th(2) * &AlgElem::th(1));
        assert_eq!(r12.elem, want);
        assert_eq!(relator_theta_comm(2, 1).unwrap().elem, -&r12.elem);
        assert_eq!(r12.bidegree(), Some(Bidegree::new(0, 3)));
        assert!(relator_theta_comm(0, 1).is_err());
    }

    #[test]
    fn quad_hand_expansion() {
        // rho_{-1,-1} = 2(u2 u-1 - u-1 u2) - 2 e1 u1 u0 + 2 e2 u0 u1
        let e = elem_syms();
        let two = Scalar::from(2);
        let want = &(&(&word(&[2, -1]) - &word(&[-1, 2])).scale(&two)
            - &word(&[1, 0]).scale(&(&two * &e[1])))
            + &word(&[0, 1]).scale(&(&two * &e[2]));
        assert_eq!(relator_quad(-1, -1).elem, want);
    }

    #[test]
    fn quad_matches_closed_form() {
        let e = elem_syms();
        for a in -3..=3 {
            for b in -3..=3 {
                let mut want = AlgElem::zero();
                for j in 0..4i32 {
                    let s = if j % 2 == 0 { Scalar::one() } else { Scalar::from(-1) };
                    let t = &word(&[a + 3 - j, b + j]).scale(&e[j as usize])
                        - &word(&[b + j, a + 3 - j]).scale(&e[3 - j as usize]);
                    want = &want + &t.scale(&s);
                }
                let r = relator_quad(a, b);
                assert_eq!(r.elem, want, "rho({a},{b})");
                assert_eq!(r.elem, relator_quad(b, a).elem);
                assert_eq!(r.bidegree(), Some(Bidegree::new(2, a + b + 3)));
                assert_eq!(project(&r.elem, Bidegree::new(2, a + b + 3)), r.elem);
            }
        }
    }

    #[test]
    fn mixed_examples() {
        assert!(relator_mixed(-3, 0).elem.is_zero());
        let a1 = alpha(1).unwrap();
        for b in [0, 5] {
            let want = &(&tu(1, b) - &ut(b, 1)) - &AlgElem::u(b + 1).scale(&a1);
            assert_eq!(relator_mixed(-2, b).elem, want);
        }
        let r = relator_mixed(1, -2);
        assert_eq!(r.bidegree(), Some(Bidegree::new(1, 2)));
    }

    #[test]
    fn cubic_residue_closed_form() {
        for m in -5..=5 {
            let r = relator_cubic(m);
            let want = &(&(&word(&[m + 2, m + 3, m + 1]) + &word(&[m + 1, m + 3, m + 2]))
                - &word(&[m + 3, m + 1, m + 2]))
                - &word(&[m + 2, m + 1, m + 3]);
            assert_eq!(r.elem, want);
            assert_eq!(r.elem, nested_commutator(m + 1, m + 3, m + 2));
            assert_eq!(r.bidegree(), Some(Bidegree::new(3, 3 * m + 6)));
        }
        assert_eq!(relator_cubic(-2).elem, nested_commutator(-1, 1, 0));
    }

    #[test]
    fn r_family() {
        for l in -3..=3 {
            assert_eq!(
                relator_r(l, l, l).elem,
                nested_commutator(l - 1, l + 1, l).scale(&Scalar::from(6))
            );
        }
        let r = relator_r(1, 0, 0);
        assert_eq!(r.elem, relator_r(0, 1, 0).elem);
        assert_eq!(r.elem, relator_r(0, 0, 1).elem);
        assert_eq!(r.bidegree(), Some(Bidegree::new(3, 1)));
    }

    #[test]
    fn enumeration_examples() {
        let w = Window::new(2, -1, 2, 0).unwrap();
        let quads = enumerate_family(&w, Family::QuadTT);
        assert_eq!(quads.len(), 1);
        assert_eq!(quads[0].params, vec![-1, -1]);
        let narrow = Window::new(2, 0, 2, 0).unwrap();
        assert!(enumerate_family(&narrow, Family::QuadTT).is_empty());
        let th = Window::new(0, 0, 0, 3).unwrap();
        let all = enumerate_relators(&th);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].id(), "THETA_COMM(1,2)");
    }

    #[test]
    fn enumeration_is_sorted_and_in_window() {
        let w = Window::new(3, -2, 2, 2).unwrap();
        let rels = enumerate_relators(&w);
        assert!(rels.windows(2).all(|p| (p[0].family, &p[0].params) < (p[1].family, &p[1].params)));
        assert!(rels.iter().all(|r| w.contains(&r.elem) && r.elem.is_homogeneous()));
        for r in &rels {
            assert_eq!(Relator::rebuild(r.family, &r.params).unwrap(), *r);
        }
    }
}
