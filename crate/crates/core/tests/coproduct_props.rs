use std::collections::BTreeMap;

use ehall_core::coeff::Scalar;
use ehall_core::coproduct::{counit, delta_component, TensorElem};
use ehall_core::freealg::{AlgElem, Bidegree, Generator, Window, Word};
use proptest::prelude::*;

type Key = (Bidegree, Bidegree);

fn big() -> Window {
    Window::new(6, -20, 20, 20).unwrap()
}

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        3 => (-2i32..=2).prop_map(Generator::u),
        1 => (1i32..=2).prop_map(Generator::th),
    ]
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(generator(), 1..=max).prop_map(Word::from_letters)
}

/// Every split of `b` into two bidegrees with the first degree in `-span..=span`.
fn splits(b: Bidegree, span: i32) -> Vec<Key> {
    let mut out = Vec::new();
    for n in 0..=b.n {
        for d in -span..=span {
            out.push((Bidegree::new(n, d), Bidegree::new(b.n - n, b.d - d)));
        }
    }
    out
}

fn as_map(t: &TensorElem) -> BTreeMap<(Word, Word), Scalar> {
    t.terms().map(|(k, c)| (k.clone(), c.clone())).collect()
}

/// The product of the components of `Delta(x)` and `Delta(y)` landing in `key`,
/// summed over every way of splitting `key`.
fn product_side(x: &AlgElem, y: &AlgElem, key: Key) -> TensorElem {
    let (bx, by) = (x.bidegree().unwrap(), y.bidegree().unwrap());
    let mut out = TensorElem::zero(big());
    for (lx, rx) in splits(bx, 12) {
        let (ly, ry) = (
            Bidegree::new(key.0.n.wrapping_sub(lx.n), key.0.d - lx.d),
            Bidegree::new(key.1.n.wrapping_sub(rx.n), key.1.d - rx.d),
        );
        if lx.n > key.0.n || rx.n > key.1.n || ly + ry != by {
            continue;
        }
        let a = delta_component(x, (lx, rx), big());
        let b = delta_component(y, (ly, ry), big());
        out = out.add(&a.mul(&b));
    }
    out
}

type Triple = BTreeMap<(Word, Word, Word), Scalar>;

fn add_triple(t: &mut Triple, k: (Word, Word, Word), c: Scalar) {
    let e = t.entry(k.clone()).or_insert_with(Scalar::zero);
    *e = &*e + &c;
    if e.is_zero() {
        t.remove(&k);
    }
}

/// `(Delta (x) id) Delta(x)` in the component `(b1, b2, b3)`.
fn delta_left(x: &AlgElem, b: [Bidegree; 3]) -> Triple {
    let mut out = Triple::new();
    for ((l, r), c) in delta_component(x, (b[0] + b[1], b[2]), big()).terms() {
        for ((ll, lr), c2) in delta_component(&AlgElem::from_word(l.clone()), (b[0], b[1]), big()).terms() {
            add_triple(&mut out, (ll.clone(), lr.clone(), r.clone()), c * c2);
        }
    }
    out
}

/// `(id (x) Delta) Delta(x)` in the component `(b1, b2, b3)`.
fn delta_right(x: &AlgElem, b: [Bidegree; 3]) -> Triple {
    let mut out = Triple::new();
    for ((l, r), c) in delta_component(x, (b[0], b[1] + b[2]), big()).terms() {
        for ((rl, rr), c2) in delta_component(&AlgElem::from_word(r.clone()), (b[1], b[2]), big()).terms() {
            add_triple(&mut out, (l.clone(), rl.clone(), rr.clone()), c * c2);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// `Delta(xy) = Delta(x) Delta(y)` componentwise.
    #[test]
    fn delta_is_multiplicative(x in word(2), y in word(2), nl in 0u32..=4, dl in -3i32..=6) {
        let (x, y) = (AlgElem::from_word(x), AlgElem::from_word(y));
        let b = (&x * &y).bidegree().unwrap();
        prop_assume!(nl <= b.n);
        let key = (Bidegree::new(nl, dl), Bidegree::new(b.n - nl, b.d - dl));
        let lhs = delta_component(&(&x * &y), key, big());
        prop_assert_eq!(as_map(&lhs), as_map(&product_side(&x, &y, key)));
    }

    #[test]
    fn delta_is_coassociative(x in word(3), n1 in 0u32..=3, n2 in 0u32..=3, d1 in -2i32..=4, d2 in -2i32..=4) {
        let x = AlgElem::from_word(x);
        let b = x.bidegree().unwrap();
        prop_assume!(n1 + n2 <= b.n);
        let bs = [
            Bidegree::new(n1, d1),
            Bidegree::new(n2, d2),
            Bidegree::new(b.n - n1 - n2, b.d - d1 - d2),
        ];
        prop_assert_eq!(delta_left(&x, bs), delta_right(&x, bs));
    }

    /// `(eps (x) id) Delta = id = (id (x) eps) Delta`.
    #[test]
    fn counit_axiom(w in word(3)) {
        let x = AlgElem::from_word(w);
        let b = x.bidegree().unwrap();
        let zero = Bidegree::new(0, 0);
        prop_assert_eq!(delta_component(&x, (zero, b), big()).counit_left(), x.clone());
        prop_assert_eq!(delta_component(&x, (b, zero), big()).counit_right(), x.clone());
        prop_assert!(counit(&x).is_zero());
    }
}

/// Level-0 generators are grouplike in the series sense:
/// `Delta(Th[0,m]) = sum_{i+j=m} Th[0,i] (x) Th[0,j]`.
#[test]
fn theta_coproduct_by_hand() {
    for m in 1..=4 {
        let x = AlgElem::th(m);
        for i in 0..=m {
            let key = (Bidegree::new(0, i), Bidegree::new(0, m - i));
            let t = delta_component(&x, key, big());
            let th = |k: i32| if k == 0 { Word::empty() } else { Word::from_letters([Generator::th(k)]) };
            assert_eq!(t.len(), 1, "m={m} i={i}");
            assert!(t.coeff(&th(i), &th(m - i)).is_one());
        }
    }
}

/// The random comparisons above are only meaningful if the sides are not
/// both empty; this pins one case with many terms.
#[test]
fn multiplicative_case_is_nontrivial() {
    let x = AlgElem::from_word(Word::from_letters([Generator::u(1), Generator::th(1)]));
    let y = AlgElem::from_word(Word::us(&[0, -1]));
    let key = (Bidegree::new(1, 2), Bidegree::new(2, -1));
    let lhs = delta_component(&(&x * &y), key, big());
    assert!(lhs.len() >= 4, "{}", lhs.len());
    assert_eq!(as_map(&lhs), as_map(&product_side(&x, &y, key)));
    let bs = [Bidegree::new(0, 1), Bidegree::new(1, 1), Bidegree::new(2, -1)];
    let x = &x * &y;
    let left = delta_left(&x, bs);
    assert!(!left.is_empty());
    assert_eq!(left, delta_right(&x, bs));
}
