use num_complex::Complex64;
use num_traits::Signed;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use stabfin::embedding::{recover_generator_identity, GammaSequence, PhiMap};
use stabfin::oper::{build_rep, RepConfig};
use stabfin::sample;
use stabfin::states::{sum_abs_squares, trace_f2, FreeProductState, StateConfig};
use stabfin::words::{Item, Universe};
use stabfin::{Element, Limits, Scalar};

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = Universe::Product;
        let x = sample::element(&mut r, u, 3, 3, 2, 2);
        let y = sample::element(&mut r, u, 3, 3, 2, 2);
        let z = sample::element(&mut r, u, 3, 3, 2, 2);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!(&x * &Element::one(u), x.clone());
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn phi_is_a_star_homomorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        for gamma in [GammaSequence::reciprocal(), "1".parse().unwrap(), "3/2/n^2".parse().unwrap()] {
            let phi = PhiMap::new(gamma);
            let x = sample::element(&mut r, Universe::Free, 3, 3, 2, 0);
            let y = sample::element(&mut r, Universe::Free, 3, 3, 2, 0);
            let (px, py) = (phi.apply(&x).unwrap(), phi.apply(&y).unwrap());
            prop_assert_eq!(phi.apply(&(&x * &y)).unwrap(), &px * &py);
            prop_assert_eq!(phi.apply(&x.star()).unwrap(), px.star());
        }
    }

    #[test]
    fn moments_are_hermitian(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mu = FreeProductState::new(StateConfig::default(), &Limits::default());
        let x = sample::element(&mut r, Universe::Product, 4, 4, 2, 3);
        prop_assert_eq!(mu.moment(&x.star()).unwrap(), mu.moment(&x).unwrap().conj());
    }

    #[test]
    fn positivity_on_random_elements(seed in any::<u64>()) {
        let mut r = rng(seed);
        for cfg in [StateConfig::default(), StateConfig::vacuum()] {
            let mu = FreeProductState::new(cfg, &Limits::default());
            let x = sample::element(&mut r, Universe::Product, 3, 2, 2, 2);
            let m = mu.moment(&(&x.star() * &x)).unwrap();
            prop_assert!(m.is_real() && !m.re().is_negative(), "moment {}", m);
        }
    }

    #[test]
    fn trace_is_tracial_and_faithful(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = sample::group_element(&mut r, 4, 4);
        let y = sample::group_element(&mut r, 4, 4);
        prop_assert_eq!(trace_f2(&(&x * &y)), trace_f2(&(&y * &x)));
        let xx = trace_f2(&(&x.star() * &x));
        prop_assert_eq!(xx.clone(), Scalar::real(sum_abs_squares(&x)));
        prop_assert_eq!(xx.is_zero(), x.is_zero());
    }
}

#[test]
fn generator_recovery() {
    for n in 1..=10 {
        assert!(recover_generator_identity(n, &GammaSequence::reciprocal()).unwrap());
    }
    let custom: GammaSequence = "1,1,2/5".parse().unwrap();
    assert!(recover_generator_identity(3, &custom).unwrap());
}

#[test]
fn representation_respects_the_involution() {
    let rep = build_rep(&RepConfig { dim: 12, max_index: 3 }, &Limits::default()).unwrap();
    let mut r = rng(7);
    for _ in 0..100 {
        let x = sample::element(&mut r, Universe::Product, 3, 3, 3, 2);
        let a = rep.element(&x).unwrap();
        assert!(rep.element(&x.star()).unwrap().max_abs_diff(&a.adjoint()) < 1e-12, "x = {x}");
    }
}

/// `ρ(δ_u δ_v) ξ = ρ(δ_u) ρ(δ_v) ξ` for interior vectors, when the product
/// does not cancel a `p` against a `q` across a dense generator image.
#[test]
fn representation_is_multiplicative_away_from_the_boundary() {
    let d = 24;
    let l = 6;
    let rep = build_rep(&RepConfig { dim: d, max_index: 2 }, &Limits::default()).unwrap();
    let mut r = rng(8);
    let interior: Vec<Complex64> = (0..d)
        .map(|i| if (l..d - l).contains(&i) { Complex64::new(1.0 + i as f64, -0.5) } else { Complex64::new(0.0, 0.0) })
        .collect();
    let mut checked = 0;
    for _ in 0..400 {
        let (u, v) = if checked % 2 == 0 {
            (sample::word(&mut r, Universe::Bicyclic, 1, 0, 3), sample::word(&mut r, Universe::Bicyclic, 1, 0, 3))
        } else {
            (sample::word(&mut r, Universe::Product, 3, 2, 1), sample::word(&mut r, Universe::Product, 3, 2, 1))
        };
        let letters = u.letters().count() + v.letters().count();
        let seam_merges = matches!((u.items().last(), v.items().first()), (Some(Item::Bc(_)), Some(Item::Bc(_))));
        let is_bc = |w: &stabfin::ProductWord| w.items().iter().all(|i| matches!(i, Item::Bc(_)));
        if letters > l || (seam_merges && !(is_bc(&u) && is_bc(&v))) {
            continue;
        }
        let lhs = rep.word(&u.mul(&v)).unwrap().apply(&interior);
        let rhs = rep.word(&u).unwrap().apply(&rep.word(&v).unwrap().apply(&interior));
        let err = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let scale = rhs.iter().map(|z| z.norm()).fold(1.0, f64::max);
        assert!(err <= 1e-12 * scale, "u = {u}, v = {v}: {err}");
        checked += 1;
    }
    assert!(checked > 150);
}
