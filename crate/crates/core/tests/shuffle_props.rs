use ehall_core::coeff::{Scalar, DEFAULT_PRIMES};
use ehall_core::freealg::{AlgElem, Bidegree, Generator, Window, Word};
use ehall_core::relations::{rank_quotient_seeded, relator_cubic, relator_quad};
use ehall_core::shuffle::{act_word, eval_rank, rep_check_relator, EvalPointSet, Evaluator, SymRat};
use proptest::prelude::*;

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        3 => (-2i32..=2).prop_map(Generator::u),
        1 => (1i32..=2).prop_map(Generator::th),
    ]
}

/// Words of level 1..=3 with at most two level-0 letters.
fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(generator(), 1..=4)
        .prop_map(Word::from_letters)
        .prop_filter("level 1..=3", |w| (1..=3).contains(&w.level()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// The point evaluator and the exact rational function agree.
    #[test]
    fn evaluator_matches_exact_image(w in word(), seed in 0u64..100) {
        let pts = EvalPointSet::new(DEFAULT_PRIMES[(seed % 3) as usize], seed, 3, 3);
        let ev = Evaluator::new(&pts.assign, 4).unwrap();
        let f = act_word(&w, &SymRat::one());
        let n = w.level() as usize;
        for pt in &pts.points {
            prop_assert_eq!(ev.eval_word(&w, &pt[..n]).unwrap(), f.eval(&pts.assign, &pt[..n]).unwrap());
        }
    }

    /// Sharing a suffix gives the same value as evaluating the concatenations.
    #[test]
    fn suffix_sharing_matches_concatenation(
        heads in prop::collection::vec((word(), 1u64..50), 1..4),
        suffix in word(),
        seed in 0u64..100,
    ) {
        let pts = EvalPointSet::new(DEFAULT_PRIMES[0], seed, 2, 5);
        let ev = Evaluator::new(&pts.assign, 6).unwrap();
        let joined: Vec<(Word, u64)> = heads.iter().map(|(h, c)| (h.concat(&suffix), *c)).collect();
        for pt in &pts.points {
            for n in 1..=5 {
                prop_assert_eq!(
                    ev.eval_terms_with_suffix(&heads, &suffix, &pt[..n]).unwrap(),
                    ev.eval_terms(&joined, &pt[..n]).unwrap()
                );
            }
        }
    }
}

/// The image of a component can never be bigger than the quotient.
#[test]
fn eval_rank_is_below_quotient_rank() {
    let w = Window::new(3, -1, 2, 0).unwrap();
    for b in [Bidegree::new(2, 0), Bidegree::new(2, 1), Bidegree::new(2, 2), Bidegree::new(3, 1)] {
        let upper = rank_quotient_seeded(b, &w, DEFAULT_PRIMES[1], 7).unwrap().quotient_rank;
        let imgs: Vec<SymRat> = w
            .component_words(b)
            .iter()
            .map(|x| act_word(x, &SymRat::one()))
            .collect();
        let pts = EvalPointSet::new(DEFAULT_PRIMES[1], 7, imgs.len() + 4, b.n as usize);
        let lower = eval_rank(&imgs, &pts).unwrap();
        assert!(lower <= upper, "{b}: {lower} > {upper}");
        assert!(lower > 0, "{b}");
    }
}

/// Perturbing one coefficient of a relator breaks the vanishing.
#[test]
fn mutated_relators_are_caught() {
    let pts = EvalPointSet::new(DEFAULT_PRIMES[2], 9, 4, 5);
    for rel in [relator_quad(-1, 1), relator_cubic(0)] {
        assert!(rep_check_relator(&rel, 1, &pts).unwrap().passed(), "{}", rel.id());
        let (w, c) = {
            let (w, c) = rel.elem.terms().next().unwrap();
            (w.clone(), c.clone())
        };
        let mut bad = rel.clone();
        bad.elem = &bad.elem + &AlgElem::term(&c * &Scalar::q2(), w);
        assert!(!rep_check_relator(&bad, 1, &pts).unwrap().passed(), "{}", rel.id());
    }
}
