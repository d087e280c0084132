//! Seeded random words and elements for property checks.

use rand::Rng;

use crate::algebra::{Element, GroupElement};
use crate::scalar::Scalar;
use crate::words::{Bicyclic, FgLetter, FgWord, FreeGen, Item, ProductWord, Universe};

/// A small Gaussian rational, nonzero, with numerators in `-3..=3` and denominators in `1..=3`.
pub fn scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    loop {
        let re = Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        let z = if rng.gen_bool(0.25) {
            re + Scalar::i() * Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))
        } else {
            re
        };
        if !z.is_zero() {
            return z;
        }
    }
}

pub fn free_gen<R: Rng + ?Sized>(rng: &mut R, max_index: u32) -> FreeGen {
    let n = rng.gen_range(1..=max_index);
    if rng.gen_bool(0.5) {
        FreeGen::t(n)
    } else {
        FreeGen::t_star(n)
    }
}

/// A normal-form word of length `<= max_len` in `universe`.
///
/// Bicyclic blocks have `1 <= a + b <= max_exp`.
pub fn word<R: Rng + ?Sized>(
    rng: &mut R,
    universe: Universe,
    max_len: usize,
    max_index: u32,
    max_exp: u64,
) -> ProductWord {
    let bc_block = |rng: &mut R| loop {
        let b = Bicyclic::new(rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp));
        if !b.is_identity() && b.letter_count() <= max_exp {
            return b;
        }
    };
    match universe {
        Universe::Bicyclic => {
            if max_len == 0 || rng.gen_bool(0.1) {
                ProductWord::identity()
            } else {
                ProductWord::bc(bc_block(rng))
            }
        }
        Universe::Free | Universe::Product => {
            let len = rng.gen_range(0..=max_len);
            let mut items = Vec::with_capacity(len);
            for _ in 0..len {
                let prev_bc = matches!(items.last(), Some(Item::Bc(_)));
                if universe == Universe::Product && !prev_bc && rng.gen_bool(0.4) {
                    items.push(Item::Bc(bc_block(rng)));
                } else {
                    items.push(Item::Free(free_gen(rng, max_index)));
                }
            }
            ProductWord::from_items(items).expect("generated in normal form")
        }
        Universe::FreeGroup => panic!("use sample::group_word for the free group"),
    }
}

/// An element with up to `max_terms` terms.
pub fn element<R: Rng + ?Sized>(
    rng: &mut R,
    universe: Universe,
    max_terms: usize,
    max_len: usize,
    max_index: u32,
    max_exp: u64,
) -> Element {
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..n).map(|_| (word(rng, universe, max_len, max_index, max_exp), scalar(rng))).collect();
    Element::from_terms(universe, terms).expect("words generated inside the universe")
}

pub fn group_word<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> FgWord {
    let alphabet = [FgLetter::X, FgLetter::Y, FgLetter::X_INV, FgLetter::Y_INV];
    let n = rng.gen_range(0..=max_len);
    FgWord::from_letters((0..n).map(|_| alphabet[rng.gen_range(0..4)]).collect::<Vec<_>>())
}

pub fn group_element<R: Rng + ?Sized>(rng: &mut R, max_terms: usize, max_len: usize) -> GroupElement {
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..n).map(|_| (group_word(rng, max_len), scalar(rng))).collect();
    Element::from_terms(Universe::FreeGroup, terms).expect("free-group words")
}
