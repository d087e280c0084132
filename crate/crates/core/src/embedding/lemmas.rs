//! Brute-force verification of the filtration properties of `φ` on
//! index-bounded words, and of its injectivity on each filtration stage.
//!
//! Every property checked here is uniform in the generator indices, so
//! bounding indices by `k` only restricts which instances are examined.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use crate::algebra::Element;
use crate::limits::Limits;
use crate::linalg::rank_fraction_free;
use crate::scalar::Scalar;
use crate::words::{enumerate_words, ProductWord, Universe};

use super::{CheckParams, CheckReport, EmbeddingError, GammaSequence, PhiMap, Verdict};

fn images(phi: &PhiMap, words: &[ProductWord]) -> Result<Vec<Element>, EmbeddingError> {
    words.iter().map(|w| phi.apply_word(w)).collect()
}

fn report(check: &'static str, m: usize, k: u32, gamma: &GammaSequence, started: Instant) -> CheckReport {
    CheckReport {
        check,
        params: CheckParams { m, k, gamma: gamma.to_string() },
        result: Verdict::Pass,
        counterexample: None,
        matrix_dims: None,
        checked: 0,
        rank: None,
        dimension: None,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

/// For every `w` of length `m' <= m`: `φ(δ_w)` is supported on words of length `<= m'`.
pub fn verify_support_lemma(
    m: usize,
    k: u32,
    gamma: &GammaSequence,
    limits: &Limits,
) -> Result<CheckReport, EmbeddingError> {
    let started = Instant::now();
    let phi = PhiMap::new(gamma.clone());
    let words = enumerate_words(m, k, Universe::Free, limits)?;
    let mut counterexample = None;
    for w in &words {
        let image = phi.apply_word(w)?;
        if image.support_max_len() > w.len() {
            counterexample = Some(format!("w = {w}: phi(w) = {image}"));
            break;
        }
    }
    Ok(CheckReport {
        result: Verdict::from_bool(counterexample.is_none()),
        counterexample,
        checked: words.len(),
        ..report("support-lemma", m, k, gamma, started)
    })
}

/// For every target `w` of length exactly `m` and every `y` of length `<= m`:
/// the `δ_w`-coordinate of `φ(δ_y)` is nonzero exactly when `y = w`.
pub fn verify_coordinate_lemma(
    m: usize,
    k: u32,
    gamma: &GammaSequence,
    limits: &Limits,
) -> Result<CheckReport, EmbeddingError> {
    let started = Instant::now();
    let phi = PhiMap::new(gamma.clone());
    let candidates = enumerate_words(m, k, Universe::Free, limits)?;
    let targets: Vec<&ProductWord> = candidates.iter().filter(|w| w.len() == m).collect();
    Limits::check("target x candidate pairs", targets.len() * candidates.len(), limits.max_matrix_entries)?;
    let imgs = images(&phi, &candidates)?;

    let mut counterexample = None;
    'outer: for &w in &targets {
        for (y, img) in candidates.iter().zip(&imgs) {
            let nonzero = !img.coeff(w).is_zero();
            if nonzero != (y == w) {
                counterexample = Some(format!("w = {w}, y = {y}: coordinate = {}", img.coeff(w)));
                break 'outer;
            }
        }
    }
    Ok(CheckReport {
        result: Verdict::from_bool(counterexample.is_none()),
        counterexample,
        matrix_dims: Some([targets.len(), candidates.len()]),
        checked: targets.len() * candidates.len(),
        ..report("coordinate-lemma", m, k, gamma, started)
    })
}

/// Exact rank of `φ` restricted to `span{δ_u : len u <= m, indices <= k}`,
/// written in the coordinate basis of every support word that occurs.
/// Passes iff the rank equals the dimension of the domain.
pub fn injectivity_rank(
    m: usize,
    k: u32,
    gamma: &GammaSequence,
    limits: &Limits,
) -> Result<CheckReport, EmbeddingError> {
    let started = Instant::now();
    let phi = PhiMap::new(gamma.clone());
    let basis = enumerate_words(m, k, Universe::Free, limits)?;
    let imgs = images(&phi, &basis)?;

    let support: BTreeSet<&ProductWord> = imgs.iter().flat_map(|x| x.support()).collect();
    let column: BTreeMap<&ProductWord, usize> = support.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    Limits::check("matrix entries", support.len() * basis.len(), limits.max_matrix_entries)?;

    // One row per domain basis vector; the rank of the transpose is the same.
    let rows: Vec<Vec<Scalar>> = imgs
        .iter()
        .map(|img| {
            let mut row = vec![Scalar::zero(); support.len()];
            for (w, c) in img.terms() {
                row[column[w]] = c.clone();
            }
            row
        })
        .collect();
    let rank = rank_fraction_free(&rows);
    let dimension = basis.len();
    Ok(CheckReport {
        result: Verdict::from_bool(rank == dimension),
        matrix_dims: Some([support.len(), dimension]),
        checked: dimension,
        rank: Some(rank),
        dimension: Some(dimension),
        ..report("injectivity-rank", m, k, gamma, started)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::FreeGen;
    use num_rational::BigRational;

    fn gammas() -> Vec<GammaSequence> {
        vec![
            GammaSequence::reciprocal(),
            GammaSequence::constant(BigRational::from_integer(1.into())),
            GammaSequence::inverse_square(BigRational::new(3.into(), 2.into())),
        ]
    }

    #[test]
    fn support_lemma_small_cases() {
        let lim = Limits::default();
        let r = verify_support_lemma(0, 1, &GammaSequence::reciprocal(), &lim).unwrap();
        assert!(r.result.passed());
        assert_eq!(r.checked, 1);
        let r = verify_support_lemma(2, 2, &GammaSequence::reciprocal(), &lim).unwrap();
        assert!(r.result.passed());
        assert_eq!(r.checked, 21);
    }

    #[test]
    fn coordinate_lemma_base_case_values() {
        let phi = PhiMap::default();
        let t1 = ProductWord::gen(FreeGen::t(1));
        let img = phi.apply_word(&t1).unwrap();
        assert_eq!(img.coeff(&t1), Scalar::one());
        assert!(phi.apply_word(&ProductWord::identity()).unwrap().coeff(&t1).is_zero());

        let t1t2 = t1.mul(&ProductWord::gen(FreeGen::t(2)));
        assert_eq!(phi.apply_word(&t1t2).unwrap().coeff(&t1t2), Scalar::ratio(1, 2));
    }

    #[test]
    fn coordinate_lemma_counts() {
        let r = verify_coordinate_lemma(3, 2, &GammaSequence::reciprocal(), &Limits::default()).unwrap();
        assert!(r.result.passed(), "{:?}", r.counterexample);
        assert_eq!(r.matrix_dims, Some([64, 85]));
    }

    #[test]
    fn small_ranks() {
        let lim = Limits::default();
        for gamma in gammas() {
            let r = injectivity_rank(0, 1, &gamma, &lim).unwrap();
            assert_eq!((r.rank, r.dimension), (Some(1), Some(1)));
            let r = injectivity_rank(1, 1, &gamma, &lim).unwrap();
            assert_eq!((r.rank, r.dimension), (Some(3), Some(3)));
            assert!(r.result.passed());
            // support of {e, a1, a1*}: e, p, q, t1, t1*
            assert_eq!(r.matrix_dims, Some([5, 3]));
        }
    }

    #[test]
    fn lemmas_for_all_small_parameters() {
        let lim = Limits::default();
        for gamma in gammas() {
            for m in 0..=3 {
                for k in 1..=2 {
                    assert!(verify_support_lemma(m, k, &gamma, &lim).unwrap().result.passed());
                    assert!(verify_coordinate_lemma(m, k, &gamma, &lim).unwrap().result.passed());
                }
            }
        }
    }

    #[test]
    fn scaling_gamma_preserves_outcomes() {
        let lim = Limits::default();
        for c in [BigRational::new(1.into(), 7.into()), BigRational::from_integer(5.into())] {
            let g = GammaSequence::reciprocal().scaled(&c);
            assert!(verify_support_lemma(3, 2, &g, &lim).unwrap().result.passed());
            assert!(verify_coordinate_lemma(2, 2, &g, &lim).unwrap().result.passed());
            assert!(injectivity_rank(2, 2, &g, &lim).unwrap().result.passed());
        }
    }

    #[test]
    fn respects_limits() {
        let lim = Limits { max_matrix_entries: 10, ..Limits::default() };
        assert!(matches!(injectivity_rank(2, 2, &GammaSequence::reciprocal(), &lim), Err(EmbeddingError::Limit(_))));
    }
}
