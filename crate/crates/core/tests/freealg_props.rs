use ehall_core::coeff::{alpha, Scalar};
use ehall_core::freealg::{ad_u0, AlgElem, Bidegree, Generator, Window, Word};
use proptest::prelude::*;

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        3 => (-3i32..=3).prop_map(Generator::u),
        1 => (1i32..=3).prop_map(Generator::th),
    ]
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(generator(), 0..4).prop_map(Word::from_letters)
}

fn coeff() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        (-3i64..=3).prop_map(Scalar::from_int),
        Just(Scalar::q1()),
        Just(&Scalar::q2() - &Scalar::q3()),
    ]
}

fn elem() -> impl Strategy<Value = AlgElem> {
    prop::collection::vec((coeff(), word()), 0..4).prop_map(|ts| {
        let mut x = AlgElem::zero();
        for (c, w) in ts {
            x.add_term(w, c);
        }
        x
    })
}

fn homogeneous() -> impl Strategy<Value = AlgElem> {
    word().prop_filter("nonempty", |w| !w.is_empty()).prop_map(AlgElem::from_word)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn product_is_associative_and_unital(x in elem(), y in elem(), z in elem()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &AlgElem::one(), x.clone());
        prop_assert_eq!(&AlgElem::one() * &x, x);
    }

    #[test]
    fn bidegree_is_additive(x in homogeneous(), y in homogeneous()) {
        let (bx, by) = (x.bidegree().unwrap(), y.bidegree().unwrap());
        prop_assert_eq!((&x * &y).bidegree(), Some(bx + by));
    }

    #[test]
    fn components_add_back_up(x in elem()) {
        let sum = x.components().values().fold(AlgElem::zero(), |acc, c| &acc + c);
        prop_assert_eq!(sum, x);
    }

    #[test]
    fn ad_u0_is_a_derivation(k in 1i32..=3, x in elem(), y in elem()) {
        let lhs = ad_u0(k, &(&x * &y)).unwrap();
        let rhs = &(&ad_u0(k, &x).unwrap() * &y) + &(&x * &ad_u0(k, &y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ad_u0_shifts_degree(k in 1i32..=3, x in homogeneous()) {
        let b = x.bidegree().unwrap();
        let y = ad_u0(k, &x).unwrap();
        if !y.is_zero() {
            prop_assert_eq!(y.bidegree(), Some(b + Bidegree::new(0, k)));
        }
    }
}

/// On a single letter the action is `u[1,l] -> alpha_k u[1,l+k]`, and it
/// kills the level-0 letters.
#[test]
fn ad_u0_on_letters() {
    for k in 1..=3 {
        for l in -2..=2 {
            let want = AlgElem::u(l + k).scale(&alpha(k as i64).unwrap());
            assert_eq!(ad_u0(k, &AlgElem::u(l)).unwrap(), want);
        }
        assert!(ad_u0(k, &AlgElem::th(2)).unwrap().is_zero());
    }
}

/// The number of words of a component counted by brute force over all
/// letter sequences.
#[test]
fn component_words_by_brute_force() {
    let w = Window::new(2, -1, 1, 2).unwrap();
    let letters: Vec<Generator> = (-1..=1)
        .map(Generator::u)
        .chain((1..=2).map(Generator::th))
        .collect();
    let mut all: Vec<Word> = vec![Word::empty()];
    let mut frontier = all.clone();
    for _ in 0..4 {
        let mut next = Vec::new();
        for x in &frontier {
            for &g in &letters {
                let mut y = x.clone();
                y.push(g);
                if w.contains_word(&y) {
                    next.push(y);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    for n in 0..=2u32 {
        for d in -3..=4 {
            let b = Bidegree::new(n, d);
            let mut got = w.component_words(b);
            got.sort();
            let mut want: Vec<Word> = all.iter().filter(|x| x.bidegree() == b).cloned().collect();
            want.sort();
            assert_eq!(got, want, "{b}");
        }
    }
}
