//! Property tests: ring and group laws, and agreement between the symbolic
//! and finite worlds.

use proptest::prelude::*;
use relcomm_core::elemgroup::{eval, t, word_comm, word_inv, GroupWord, SquareMatrix};
use relcomm_core::oracle::{eval_elem, eval_word, FiniteRing, MatCtx};
use relcomm_core::rewrite::{certify, decompose_with, DecomposeOptions, GeneratorTerm, TermKind};
use relcomm_core::{IdealPattern, RingElem, Symbol};

const NAMES: [&str; 5] = ["a", "a2", "b", "b2", "c"];

fn elem() -> impl Strategy<Value = RingElem> {
    let mono = (-3i64..=3, prop::collection::vec(prop::sample::select(NAMES.to_vec()), 0..3));
    prop::collection::vec(mono, 0..4)
        .prop_map(|ms| ms.into_iter().fold(RingElem::zero(), |acc, (k, w)| &acc + &(&RingElem::int(k) * &RingElem::word(&w))))
}

/// Single monomial containing a symbol from `must`.
fn sorted(must: &'static [&'static str]) -> impl Strategy<Value = RingElem> {
    (prop::sample::select(must.to_vec()), prop::sample::select(NAMES.to_vec()), any::<bool>(), any::<bool>()).prop_map(
        |(m, other, long, neg)| {
            let w = if long { RingElem::word(&[m, other]) } else { RingElem::sym(m) };
            if neg {
                -&w
            } else {
                w
            }
        },
    )
}

fn mono_word(n: usize, max: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((pos(n), sorted(&NAMES)), 0..=max)
        .prop_map(move |ls| GroupWord::new(n, ls.into_iter().map(|((i, j), p)| t(i, j, p)).collect()).unwrap())
}

fn pos(n: usize) -> impl Strategy<Value = (usize, usize)> {
    (1..=n, 1..n).prop_map(move |(i, d)| (i, (i + d - 1) % n + 1))
}

fn word(n: usize, max: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((pos(n), elem()), 0..=max)
        .prop_map(move |ls| GroupWord::new(n, ls.into_iter().map(|((i, j), p)| t(i, j, p)).collect()).unwrap())
}

fn assign(vals: &[u8]) -> impl FnMut(&Symbol) -> u8 + '_ {
    move |s| vals[NAMES.iter().position(|x| *x == s.name()).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(x in elem(), y in elem(), z in elem()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &RingElem::one(), x.clone());
    }

    #[test]
    fn words_form_a_group(u in word(3, 4), v in word(3, 4)) {
        let id = SquareMatrix::identity(3);
        prop_assert_eq!(eval(&u).mul(&eval(&word_inv(&u))), id.clone());
        prop_assert_eq!(eval(&u.concat(&v).unwrap()), eval(&u).mul(&eval(&v)));
        let c = word_comm(&u, &v).unwrap();
        let expected = eval(&u).mul(&eval(&v)).mul(&eval(&word_inv(&u))).mul(&eval(&word_inv(&v)));
        prop_assert_eq!(eval(&c), expected);
    }

    #[test]
    fn finite_images_commute_with_eval(w in word(3, 3), vals in prop::collection::vec(0u8..8, 5)) {
        let r = FiniteRing::builtin("zmod:8").unwrap();
        let ctx = MatCtx::new(&r, 3).unwrap();
        let m = eval(&w);
        let entries: Vec<u8> = m.entries().iter().map(|e| eval_elem(&r, e, assign(&vals))).collect();
        prop_assert_eq!(eval_word(&ctx, &w, assign(&vals)), ctx.from_entries(&entries).key());
    }

    #[test]
    fn small_decompositions_certify(
        gens in prop::collection::vec(
            (mono_word(3, 1), pos(3), sorted(&["a", "a2"]), sorted(&["b", "b2"]), sorted(&["c"]), 0u8..4),
            1..3,
        ),
    ) {
        let terms: Vec<GeneratorTerm> = gens
            .into_iter()
            .map(|(x, (i, j), a, b, c, k)| {
                let kind = match k {
                    0 => TermKind::Z1ab { i, j, a, b, c },
                    1 => TermKind::Z1ba { i, j, a, b, c },
                    2 => TermKind::C2 { i, j, a, b },
                    _ => TermKind::C3 { i, j, a, b, c },
                };
                GeneratorTerm::new(x, kind)
            })
            .collect();
        let opts = DecomposeOptions { max_terms: Some(20_000), ..Default::default() };
        let d = decompose_with(&terms, 3, &opts);
        prop_assume!(!matches!(d, Err(relcomm_core::Error::SizeCap(..))));
        let d = d.unwrap();
        prop_assert_eq!(d.pair, (1, 2));
        prop_assert!(d.is_well_formed());
        prop_assert!(d.residual.records.iter().all(|r| r.p.member(&IdealPattern::symmetric())));
        prop_assert!(d.steps_hold());
        prop_assert!(d.matches(&terms));
        prop_assert!(certify(&terms, &d, None).unwrap());
    }
}
