//! Symmetric rational function oracle: a model in which every defining
//! relation holds, used as the target of the canonical morphism.
//!
//! Level-`n` elements are symmetric functions of `x_1..x_n`. The product is
//! the shuffle product with kernel `omega(x, y) = chi_-1(x, y) / (x - y)^3`;
//! `Th[0,k]` acts diagonally by `h_k`, the `z^-k` coefficient of
//! `prod_i Phi(z, x_i)`.

mod oracle;
mod symrat;

pub use oracle::{
    act_exact, act_word, can_map, eval_rank, probes, rep_check_relator, rep_check_relator_sets, EvalPointSet, Evaluator,
    RepCheck, EXACT_MAX_PROBED_VARS, EXACT_MAX_VARS,
};
pub use symrat::{eval_poly, omega_numerator, shuffle_mul, theta_multiplier, theta_op, SymRat};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{alpha, elem_syms, KernelPoly, Scalar, DEFAULT_PRIMES};
    use crate::freealg::{AlgElem, Word};
    use crate::relations::{relator_cubic, relator_mixed, relator_quad, relator_theta_comm};

    fn mono(c: Scalar, e: &[i32]) -> KernelPoly {
        KernelPoly::monomial(c, e.to_vec())
    }

    #[test]
    fn unit_is_neutral() {
        let f = SymRat::monomial(3);
        assert_eq!(shuffle_mul(&SymRat::one(), &f), f);
        assert_eq!(shuffle_mul(&f, &SymRat::one()), f);
    }

    #[test]
    fn two_constants() {
        // [2(x1^2 + x1 x2 + x2^2) - (e1 + e2) x1 x2] / (x1 - x2)^2, written
        // over (x1 - x2)^3
        let e = elem_syms();
        let two = Scalar::from(2);
        let inner = mono(two.clone(), &[2, 0])
            .add(&mono(two.clone(), &[1, 1]))
            .add(&mono(two, &[0, 2]))
            .add(&mono(-&(&e[1] + &e[2]), &[1, 1]));
        let diff = mono(Scalar::one(), &[1, 0]).add(&mono(-Scalar::one(), &[0, 1]));
        let want = SymRat::from_numerator(inner.mul(&diff));
        assert_eq!(shuffle_mul(&SymRat::monomial(0), &SymRat::monomial(0)), want);
        assert_eq!(can_map(&AlgElem::from_word(Word::us(&[0, 0]))).unwrap(), want);
    }

    #[test]
    fn two_term_formula_at_points() {
        use crate::coeff::{specialize, FFElem};
        let pts = EvalPointSet::new(DEFAULT_PRIMES[0], 11, 5, 2);
        let a_ = &pts.assign;
        let p = pts.prime;
        let e = elem_syms();
        let e1 = specialize(&e[1], a_).unwrap();
        let e2 = specialize(&e[2], a_).unwrap();
        let omega = |x: FFElem, y: FFElem| {
            let chi = x.pow(3) - e2 * x.pow(2) * y + e1 * x * y.pow(2) - y.pow(3);
            chi * (x - y).pow(3).inv().unwrap()
        };
        let pw = |x: FFElem, d: i32| if d >= 0 { x.pow(d as u64) } else { x.inv().unwrap().pow((-d) as u64) };
        for (a, b) in [(0, 1), (-2, 3), (1, 1)] {
            let f = shuffle_mul(&SymRat::monomial(a), &SymRat::monomial(b));
            for pt in &pts.points {
                let (x1, x2) = (FFElem::new(pt[0], p), FFElem::new(pt[1], p));
                let direct = pw(x1, a) * pw(x2, b) * omega(x1, x2) + pw(x2, a) * pw(x1, b) * omega(x2, x1);
                assert_eq!(f.eval(a_, &pt[..2]).unwrap(), direct.value());
            }
        }
    }

    #[test]
    fn cubic_and_quad_vanish_exactly() {
        for m in -3..=3 {
            assert!(can_map(&relator_cubic(m).elem).unwrap().is_zero(), "cubic {m}");
        }
        for a in -2..=2 {
            for b in -2..=2 {
                assert!(can_map(&relator_quad(a, b).elem).unwrap().is_zero(), "quad {a},{b}");
            }
        }
    }

    #[test]
    fn can_rejects_theta() {
        assert!(can_map(&AlgElem::th(1)).is_err());
    }

    #[test]
    fn theta_op_examples() {
        let f = SymRat::monomial(2);
        assert_eq!(theta_op(0, &f), f);
        assert!(theta_op(3, &SymRat::one()).is_zero());
        let a1 = alpha(1).unwrap();
        let want = SymRat::from_numerator(mono(a1, &[3]));
        assert_eq!(theta_op(1, &f), want);
    }

    #[test]
    fn associativity_small() {
        let (a, b, c) = (SymRat::monomial(1), SymRat::monomial(-1), SymRat::monomial(0));
        let left = shuffle_mul(&shuffle_mul(&a, &b), &c);
        let right = shuffle_mul(&a, &shuffle_mul(&b, &c));
        assert_eq!(left, right);
    }

    #[test]
    fn relators_act_as_zero() {
        let pts = EvalPointSet::new(DEFAULT_PRIMES[0], 42, 4, 5);
        for rel in [
            relator_theta_comm(1, 2).unwrap(),
            relator_mixed(-2, 0),
            relator_mixed(0, -1),
            relator_quad(-1, 0),
            relator_cubic(-1),
        ] {
            let r = rep_check_relator(&rel, 2, &pts).unwrap();
            assert!(r.passed(), "{} {:?}", rel.id(), r.failures);
            assert_eq!(r.probes, 31);
        }
    }

    #[test]
    fn non_relator_is_caught() {
        let pts = EvalPointSet::new(DEFAULT_PRIMES[1], 1, 4, 5);
        let mut rel = relator_mixed(-2, 0);
        rel.elem = &rel.elem + &AlgElem::u(1);
        assert!(!rep_check_relator(&rel, 1, &pts).unwrap().passed());
    }

    #[test]
    fn eval_rank_examples() {
        let pts = EvalPointSet::new(DEFAULT_PRIMES[0], 5, 6, 2);
        let vander: Vec<SymRat> = (0..3).map(SymRat::monomial).collect();
        assert_eq!(eval_rank(&vander, &pts).unwrap(), 3);
        let f = SymRat::monomial(2);
        assert_eq!(eval_rank(&[f.clone(), f.scale(&Scalar::from(2))], &pts).unwrap(), 1);
        let words = [[-1, 2], [0, 1], [1, 0], [2, -1]];
        let imgs: Vec<SymRat> = words
            .iter()
            .map(|w| can_map(&AlgElem::from_word(Word::us(w))).unwrap())
            .collect();
        assert_eq!(eval_rank(&imgs, &pts).unwrap(), 3);
    }

    #[test]
    fn symmetric_with_removable_diagonal_pole() {
        let pts = EvalPointSet::new(DEFAULT_PRIMES[2], 8, 3, 3);
        let f = can_map(&AlgElem::from_word(Word::us(&[1, -1, 0]))).unwrap();
        for pt in &pts.points {
            let v = f.eval(&pts.assign, pt).unwrap();
            let swapped = [pt[1], pt[0], pt[2]];
            assert_eq!(f.eval(&pts.assign, &swapped).unwrap(), v);
            let diag = [pt[0], pt[0], pt[2]];
            assert_eq!(eval_poly(f.numerator(), &pts.assign, &diag).unwrap(), 0);
        }
    }
}
