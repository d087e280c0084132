use std::collections::HashSet;

use proptest::prelude::*;
use stabfin::words::{
    enumerate_words, map_to_f2, Bicyclic, FgWord, FreeGen, FreeWord, Item, Letter, ProductWord, Universe,
};
use stabfin::Limits;

/// Oracle for products: concatenate letters, delete `p q` pairs until none
/// remain, then regroup each maximal `p`/`q` run (now of the shape
/// `q…q p…p`) into one bicyclic item.
fn rewrite_oracle(letters: &[Letter]) -> ProductWord {
    let mut stack: Vec<Letter> = Vec::new();
    for &l in letters {
        if l == Letter::Q && stack.last() == Some(&Letter::P) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    let mut items = Vec::new();
    let mut run = Bicyclic::IDENTITY;
    for l in stack {
        match l {
            Letter::Q => {
                assert_eq!(run.p_exp, 0, "a q after a p would have cancelled");
                run.q_exp += 1;
            }
            Letter::P => run.p_exp += 1,
            Letter::Gen(g) => {
                if !run.is_identity() {
                    items.push(Item::Bc(run));
                }
                run = Bicyclic::IDENTITY;
                items.push(Item::Free(g));
            }
        }
    }
    if !run.is_identity() {
        items.push(Item::Bc(run));
    }
    ProductWord::from_items(items).expect("oracle output is normal")
}

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        3 => Just(Letter::P),
        3 => Just(Letter::Q),
        2 => (1u32..=3, any::<bool>()).prop_map(|(n, s)| Letter::Gen(if s { FreeGen::t_star(n) } else { FreeGen::t(n) })),
    ]
}

fn letters(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(), 0..max)
}

fn star_letters(ls: &[Letter]) -> Vec<Letter> {
    ls.iter()
        .rev()
        .map(|l| match l {
            Letter::P => Letter::Q,
            Letter::Q => Letter::P,
            Letter::Gen(g) => Letter::Gen(g.star()),
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn product_matches_rewriting(u in letters(10), v in letters(10)) {
        let (wu, wv) = (rewrite_oracle(&u), rewrite_oracle(&v));
        let joined: Vec<Letter> = u.iter().chain(&v).copied().collect();
        prop_assert_eq!(wu.mul(&wv), rewrite_oracle(&joined));
    }

    #[test]
    fn normal_forms_agree(u in letters(14)) {
        prop_assert_eq!(ProductWord::from_letters(u.clone()), rewrite_oracle(&u));
    }

    #[test]
    fn involution_reverses_and_stars(u in letters(10), v in letters(10)) {
        let (wu, wv) = (rewrite_oracle(&u), rewrite_oracle(&v));
        prop_assert_eq!(wu.star(), rewrite_oracle(&star_letters(&u)));
        prop_assert_eq!(wu.mul(&wv).star(), wv.star().mul(&wu.star()));
        prop_assert_eq!(wu.star().star(), wu);
    }

    #[test]
    fn product_is_associative(u in letters(8), v in letters(8), w in letters(8)) {
        let (a, b, c) = (rewrite_oracle(&u), rewrite_oracle(&v), rewrite_oracle(&w));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn bicyclic_star_is_anti_multiplicative(a in 0u64..8, b in 0u64..8, c in 0u64..8, d in 0u64..8) {
        let (x, y) = (Bicyclic::new(a, b), Bicyclic::new(c, d));
        prop_assert_eq!(x.mul(y).star(), y.star().mul(x.star()));
    }

    #[test]
    fn f2_map_is_multiplicative(u in prop::collection::vec((1u32..=4, any::<bool>()), 0..6),
                                v in prop::collection::vec((1u32..=4, any::<bool>()), 0..6)) {
        let fw = |xs: &[(u32, bool)]| FreeWord::new(xs.iter().map(|&(n, s)| if s { FreeGen::t_star(n) } else { FreeGen::t(n) }).collect());
        let (a, b) = (fw(&u), fw(&v));
        prop_assert_eq!(map_to_f2(&a.mul(&b)), map_to_f2(&a).mul(&map_to_f2(&b)));
        prop_assert!(map_to_f2(&a).is_reduced());
    }
}

#[test]
fn enumeration_counts_and_order() {
    let lim = Limits::default();
    for (m, k, n) in [(0, 2, 1), (2, 2, 21), (3, 2, 85), (4, 2, 341), (3, 3, 259), (2, 3, 43)] {
        let words = enumerate_words(m, k, Universe::Free, &lim).unwrap();
        assert_eq!(words.len(), n, "m={m} k={k}");
        assert!(words.windows(2).all(|w| w[0] < w[1]), "strictly increasing");
        assert!(words.iter().all(|w| w.len() <= m && w.max_index().unwrap_or(0) <= k));
    }
}

#[test]
fn f2_map_is_injective_on_enumerated_words() {
    let words = enumerate_words(4, 2, Universe::Free, &Limits::default()).unwrap();
    let images: HashSet<FgWord> = words.iter().map(|w| map_to_f2(&FreeWord::try_from(w).unwrap())).collect();
    assert_eq!(images.len(), 341);
}

#[test]
fn words_outside_a_universe_are_rejected() {
    let w = ProductWord::from_letters([Letter::Q, Letter::Gen(FreeGen::t(1))]);
    assert!(Universe::Product.admits(&w));
    assert!(!Universe::Free.admits(&w));
    assert!(!Universe::Bicyclic.admits(&w));
    assert!(FreeWord::try_from(&w).is_err());
}
