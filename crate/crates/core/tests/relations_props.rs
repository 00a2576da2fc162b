use std::collections::HashMap;

use ehall_core::coeff::{add_mod, mul_mod, specialize, sub_mod, Scalar, DEFAULT_PRIMES};
use ehall_core::freealg::{AlgElem, Bidegree, Window, Word};
use ehall_core::relations::{
    membership, rank_quotient_exact, rank_quotient_seeded, relator_quad, Certificate, Family, Membership,
};

fn win(n: u32, lo: i32, hi: i32, th: u32) -> Window {
    Window::new(n, lo, hi, th).unwrap()
}

/// `chi_1(z, w) = z^3 - e1 z^2 w + e2 z w^2 - w^3` and
/// `chi_-1(z, w) = z^3 - e2 z^2 w + e1 z w^2 - w^3`, as `(i, j, coeff)` for
/// the monomial `z^i w^j`.
fn kernels() -> (Vec<(i32, i32, Scalar)>, Vec<(i32, i32, Scalar)>) {
    let (q1, q2, q3) = (Scalar::q1(), Scalar::q2(), Scalar::q3());
    let e1 = &(&q1 + &q2) + &q3;
    let e2 = &(&(&q1 * &q2) + &(&q1 * &q3)) + &(&q2 * &q3);
    let one = Scalar::one();
    let plus = vec![(3, 0, one.clone()), (2, 1, -&e1), (1, 2, e2.clone()), (0, 3, -&one)];
    let minus = vec![(3, 0, one.clone()), (2, 1, -&e2), (1, 2, e1), (0, 3, -&one)];
    (plus, minus)
}

/// The `z^-a w^-b` coefficient of `chi_1 T1(z) T1(w) - chi_-1 T1(w) T1(z)`,
/// expanded by hand with `T1(z) = sum_d u[1,d] z^-d`.
fn quad_by_hand(a: i32, b: i32) -> AlgElem {
    let (plus, minus) = kernels();
    let mut x = AlgElem::zero();
    for (i, j, c) in plus {
        x.add_term(Word::us(&[a + i, b + j]), c);
    }
    for (i, j, c) in minus {
        x.add_term(Word::us(&[b + j, a + i]), -&c);
    }
    x
}

#[test]
fn quad_matches_hand_expansion() {
    for a in -3..=3 {
        for b in -3..=3 {
            assert_eq!(relator_quad(a, b).elem, quad_by_hand(a, b), "({a},{b})");
        }
    }
}

/// Swapping the arguments gives the same relator up to sign, since
/// `chi_-1(w, z) = -chi_1(z, w)`.
#[test]
fn quad_is_symmetric() {
    for a in -3..=3 {
        for b in -3..=3 {
            let (x, y) = (relator_quad(a, b).elem, relator_quad(b, a).elem);
            assert!(x == y || x == -&y, "({a},{b})");
        }
    }
}

#[test]
fn rank_is_reproducible() {
    let w = win(2, -1, 2, 0);
    let b = Bidegree::new(2, 1);
    let exact = rank_quotient_exact(b, &w).unwrap();
    assert_eq!(exact.quotient_rank, 3);
    for p in DEFAULT_PRIMES {
        for seed in [1, 42, 1000] {
            let r = rank_quotient_seeded(b, &w, p, seed).unwrap();
            assert_eq!(r, exact, "p={p} seed={seed}");
        }
    }
}

/// Recombine a certificate from scratch: multiply out every product over
/// `Q(q1, q2)`, then specialize the sum at each certificate point.
fn recombine(cert: &Certificate) -> bool {
    for m in &cert.modular {
        let p = m.assign.prime;
        let mut acc: HashMap<Word, u64> = HashMap::new();
        for t in &m.terms {
            let x = &(&AlgElem::from_word(t.left.clone()) * &cert.relators[t.rel].elem)
                * &AlgElem::from_word(t.right.clone());
            for (w, c) in x.terms() {
                let v = specialize(c, &m.assign).unwrap().value();
                let e = acc.entry(w.clone()).or_insert(0);
                *e = add_mod(*e, mul_mod(t.coeff, v, p), p);
            }
        }
        for (w, c) in cert.target.terms() {
            let e = acc.entry(w.clone()).or_insert(0);
            *e = sub_mod(*e, specialize(c, &m.assign).unwrap().value(), p);
        }
        if acc.values().any(|&v| v != 0) {
            return false;
        }
    }
    !cert.modular.is_empty()
}

#[test]
fn membership_certificate_recombines() {
    let w = win(3, -3, 5, 0);
    // two translates at bidegree (3, 2), neither a multiple of a relator
    let x = &(&AlgElem::u(1) * &relator_quad(0, 1).elem).scale(&Scalar::q1())
        + &(&relator_quad(-1, 0).elem * &AlgElem::u(3));
    let m = membership(&x, &w, &DEFAULT_PRIMES[..2], 42, &Family::DEFINING).unwrap();
    let cert = m.certificate().expect("certified");
    assert!(cert.exact.is_none());
    assert_eq!(cert.primes(), DEFAULT_PRIMES[..2].to_vec());
    assert!(cert.verify().unwrap());
    assert!(recombine(cert));

    // a tampered certificate must not recombine
    let mut bad = cert.clone();
    bad.modular[0].terms[0].coeff = add_mod(bad.modular[0].terms[0].coeff, 1, DEFAULT_PRIMES[0]);
    assert!(!recombine(&bad));
    assert!(!bad.verify().unwrap());
}

#[test]
fn lone_word_is_not_a_member() {
    let w = win(3, -3, 5, 0);
    let x = AlgElem::from_word(Word::us(&[0, 1, 1]));
    let m = membership(&x, &w, &DEFAULT_PRIMES[..1], 42, &Family::DEFINING).unwrap();
    assert!(matches!(m, Membership::NotInWindowedSpan));
}
