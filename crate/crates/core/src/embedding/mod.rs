//! The unital *-homomorphism `φ : ℂS∞ → ℂ(BC*S∞)` given on generators by
//! `φ(δ_{tₙ}) = aₙ = δ_p + γₙ δ_{tₙ}`, and the exact checks built on it.

mod inverse;
mod lemmas;

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Element};
use crate::limits::LimitError;
use crate::scalar::Scalar;
use crate::words::{FreeGen, Item, ProductWord, Universe};

pub use inverse::{
    inverse_search, mat_inverse_search, Certificate, ElementMatrix, InverseOutcome, MatrixInverseOutcome, Side,
};
pub use lemmas::{injectivity_rank, verify_coordinate_lemma, verify_support_lemma};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error(transparent)]
    Limit(#[from] LimitError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("gamma sequence has no value at n = {0}")]
    GammaUndefined(u32),
    #[error("phi is defined on the free *-monoid algebra, got an element of {0}")]
    NotFreeUniverse(Universe),
    #[error("inverse search needs a nonzero element")]
    ZeroElement,
    #[error("inverse search is not available in universe {0}")]
    UnsupportedUniverse(Universe),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid gamma sequence {text:?}: {reason}")]
    BadGamma { text: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum GammaRule {
    /// `γₙ = c / n`
    Reciprocal,
    /// `γₙ = c`
    Constant,
    /// `γₙ = c / n²`
    InverseSquare,
    /// `γₙ = c · values[n-1]`
    Listed(Vec<BigRational>),
}

/// A strictly positive rational sequence `n ↦ γₙ`.
///
/// Text forms (also used in reports): `1/n`, `3/2/n^2`, `1`, or an explicit
/// comma-separated list such as `1,2/5,1/3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSequence {
    rule: GammaRule,
    scale: BigRational,
}

impl Default for GammaSequence {
    fn default() -> Self {
        GammaSequence::reciprocal()
    }
}

impl GammaSequence {
    /// `γₙ = 1/n`.
    pub fn reciprocal() -> Self {
        GammaSequence { rule: GammaRule::Reciprocal, scale: BigRational::one() }
    }

    /// `γₙ = c`; `c` must be positive.
    pub fn constant(c: BigRational) -> Self {
        assert!(c.is_positive(), "gamma must be positive");
        GammaSequence { rule: GammaRule::Constant, scale: c }
    }

    /// `γₙ = c/n²`; `c` must be positive.
    pub fn inverse_square(c: BigRational) -> Self {
        assert!(c.is_positive(), "gamma must be positive");
        GammaSequence { rule: GammaRule::InverseSquare, scale: c }
    }

    /// `γₙ = values[n-1]`; every value must be positive.
    pub fn listed(values: Vec<BigRational>) -> Result<Self, EmbeddingError> {
        if values.is_empty() || values.iter().any(|v| !v.is_positive()) {
            return Err(EmbeddingError::BadGamma {
                text: format!("{values:?}"),
                reason: "listed values must be nonempty and positive".into(),
            });
        }
        Ok(GammaSequence { rule: GammaRule::Listed(values), scale: BigRational::one() })
    }

    /// The same sequence multiplied by a positive constant.
    pub fn scaled(&self, c: &BigRational) -> Self {
        assert!(c.is_positive(), "gamma must stay positive");
        GammaSequence { rule: self.rule.clone(), scale: &self.scale * c }
    }

    pub fn gamma(&self, n: u32) -> Result<BigRational, EmbeddingError> {
        let n_big = BigRational::from_integer(n.into());
        Ok(match &self.rule {
            GammaRule::Reciprocal => &self.scale / n_big,
            GammaRule::Constant => self.scale.clone(),
            GammaRule::InverseSquare => &self.scale / (&n_big * &n_big),
            GammaRule::Listed(v) => {
                let value = v.get(n as usize - 1).ok_or(EmbeddingError::GammaUndefined(n))?;
                &self.scale * value
            }
        })
    }
}

impl fmt::Display for GammaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rule {
            GammaRule::Reciprocal => write!(f, "{}/n", self.scale),
            GammaRule::Constant => write!(f, "{}", self.scale),
            GammaRule::InverseSquare => write!(f, "{}/n^2", self.scale),
            GammaRule::Listed(v) => {
                let parts: Vec<String> = v.iter().map(|x| (x * &self.scale).to_string()).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl FromStr for GammaSequence {
    type Err = EmbeddingError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| EmbeddingError::BadGamma { text: text.to_string(), reason: reason.to_string() };
        let rational = |s: &str| -> Result<BigRational, EmbeddingError> {
            let v: BigRational = s.trim().parse().map_err(|_| bad("expected a rational such as 3/2"))?;
            if v.is_positive() {
                Ok(v)
            } else {
                Err(bad("values must be positive"))
            }
        };
        let t = text.trim();
        if let Some(c) = t.strip_suffix("/n^2") {
            return Ok(GammaSequence::inverse_square(rational(c)?));
        }
        if let Some(c) = t.strip_suffix("/n") {
            return Ok(GammaSequence { rule: GammaRule::Reciprocal, scale: rational(c)? });
        }
        if t.contains(',') {
            let values = t.split(',').map(rational).collect::<Result<Vec<_>, _>>()?;
            return GammaSequence::listed(values);
        }
        Ok(GammaSequence::constant(rational(t)?))
    }
}

/// `φ`, determined by its γ-sequence.
#[derive(Clone, Debug, Default)]
pub struct PhiMap {
    pub gamma: GammaSequence,
}

impl PhiMap {
    pub fn new(gamma: GammaSequence) -> Self {
        PhiMap { gamma }
    }

    /// `tₙ ↦ δ_p + γₙ δ_{tₙ}` and `tₙ* ↦ δ_q + γₙ δ_{tₙ*}` (γₙ is real).
    pub fn generator_image(&self, g: FreeGen) -> Result<Element, EmbeddingError> {
        let gamma = self.gamma.gamma(g.index())?;
        let bc = if g.starred { ProductWord::q() } else { ProductWord::p() };
        Ok(Element::from_terms(Universe::Product, [(bc, Scalar::one()), (ProductWord::gen(g), Scalar::real(gamma))])?)
    }

    /// `φ(δ_w)`: the product of generator images in order.
    pub fn apply_word(&self, w: &ProductWord) -> Result<Element, EmbeddingError> {
        self.apply_word_cached(w, &mut HashMap::new())
    }

    fn apply_word_cached(
        &self,
        w: &ProductWord,
        cache: &mut HashMap<FreeGen, Element>,
    ) -> Result<Element, EmbeddingError> {
        let mut acc = Element::one(Universe::Product);
        for item in w.items() {
            let g = match item {
                Item::Free(g) => *g,
                Item::Bc(_) => return Err(EmbeddingError::NotFreeUniverse(Universe::Product)),
            };
            let image = match cache.entry(g) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert(self.generator_image(g)?),
            };
            acc = acc.try_mul(image)?;
        }
        Ok(acc)
    }

    /// Linear extension of [`PhiMap::apply_word`]; `x` must live in `ℂS∞`.
    pub fn apply(&self, x: &Element) -> Result<Element, EmbeddingError> {
        if x.universe() != Universe::Free {
            return Err(EmbeddingError::NotFreeUniverse(x.universe()));
        }
        let mut cache = HashMap::new();
        let mut out = Element::zero(Universe::Product);
        for (w, c) in x.terms() {
            let image = self.apply_word_cached(w, &mut cache)?;
            out = out.try_add(&image.scale(c))?;
        }
        Ok(out)
    }
}

/// Checks the exact identity `δ_{tₙ} = γₙ⁻¹ (aₙ − δ_p)`.
pub fn recover_generator_identity(n: u32, gamma: &GammaSequence) -> Result<bool, EmbeddingError> {
    let phi = PhiMap::new(gamma.clone());
    let g = FreeGen::t(n);
    let a_n = phi.generator_image(g)?;
    let p = Element::basis(Universe::Product, ProductWord::p())?;
    let inv_gamma = Scalar::real(BigRational::one() / gamma.gamma(n)?);
    let recovered = a_n.try_sub(&p)?.scale(&inv_gamma);
    let target = Element::basis(Universe::Product, ProductWord::gen(g))?;
    Ok(recovered == target)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckParams {
    pub m: usize,
    pub k: u32,
    pub gamma: String,
}

/// JSON shape: `{check, params: {m, k, gamma}, result, counterexample?, matrix_dims?, elapsed_ms}`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub params: CheckParams,
    pub result: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix_dims: Option<[usize; 2]>,
    /// Number of words (or word pairs) examined.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    pub elapsed_ms: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn el(terms: &[(ProductWord, Scalar)]) -> Element {
        Element::from_terms(Universe::Product, terms.iter().cloned()).unwrap()
    }

    fn w(gens: &[ProductWord]) -> ProductWord {
        gens.iter().fold(ProductWord::identity(), |a, b| a.mul(b))
    }

    #[test]
    fn gamma_sequences() {
        let g = GammaSequence::reciprocal();
        assert_eq!(g.gamma(1).unwrap(), r(1, 1));
        assert_eq!(g.gamma(7).unwrap(), r(1, 7));
        let g: GammaSequence = "3/2/n^2".parse().unwrap();
        assert_eq!(g.gamma(2).unwrap(), r(3, 8));
        assert_eq!(g.to_string(), "3/2/n^2");
        let g: GammaSequence = "1".parse().unwrap();
        assert_eq!(g.gamma(5).unwrap(), r(1, 1));
        let g: GammaSequence = "1,1,2/5".parse().unwrap();
        assert_eq!(g.gamma(3).unwrap(), r(2, 5));
        assert!(matches!(g.gamma(4), Err(EmbeddingError::GammaUndefined(4))));
        assert!("0/n".parse::<GammaSequence>().is_err());
        assert!("-1".parse::<GammaSequence>().is_err());
        assert!("abc".parse::<GammaSequence>().is_err());
        assert_eq!(GammaSequence::reciprocal().scaled(&r(2, 3)).gamma(2).unwrap(), r(1, 3));
    }

    #[test]
    fn generator_images() {
        let phi = PhiMap::default();
        let p = ProductWord::p();
        let q = ProductWord::q();
        let t1 = ProductWord::gen(FreeGen::t(1));
        let t1s = ProductWord::gen(FreeGen::t_star(1));
        let t2 = ProductWord::gen(FreeGen::t(2));
        assert_eq!(phi.generator_image(FreeGen::t(1)).unwrap(), el(&[(p.clone(), Scalar::one()), (t1, Scalar::one())]));
        assert_eq!(phi.generator_image(FreeGen::t_star(1)).unwrap(), el(&[(q, Scalar::one()), (t1s, Scalar::one())]));
        assert_eq!(phi.generator_image(FreeGen::t(2)).unwrap(), el(&[(p, Scalar::one()), (t2, Scalar::ratio(1, 2))]));
    }

    #[test]
    fn apply_examples() {
        let phi = PhiMap::default();
        let one = Element::one(Universe::Free);
        assert_eq!(phi.apply(&one).unwrap(), Element::one(Universe::Product));

        let p = ProductWord::p();
        let q = ProductWord::q();
        let t1 = ProductWord::gen(FreeGen::t(1));
        let t1s = ProductWord::gen(FreeGen::t_star(1));
        let t2 = ProductWord::gen(FreeGen::t(2));

        let x = Element::basis(Universe::Free, w(&[t1.clone(), t2.clone()])).unwrap();
        let half = Scalar::ratio(1, 2);
        let expected = el(&[
            (w(&[p.clone(), p.clone()]), Scalar::one()),
            (w(&[p.clone(), t2.clone()]), half.clone()),
            (w(&[t1.clone(), p.clone()]), Scalar::one()),
            (w(&[t1.clone(), t2.clone()]), half),
        ]);
        assert_eq!(phi.apply(&x).unwrap(), expected);

        // (δ_q + δ_{t1*})(δ_p + δ_{t1}): qp stays a single non-identity block
        let x = Element::basis(Universe::Free, w(&[t1s.clone(), t1.clone()])).unwrap();
        let expected = el(&[
            (w(&[q.clone(), p.clone()]), Scalar::one()),
            (w(&[q, t1.clone()]), Scalar::one()),
            (w(&[t1s.clone(), p]), Scalar::one()),
            (w(&[t1s, t1]), Scalar::one()),
        ]);
        let image = phi.apply(&x).unwrap();
        assert_eq!(image, expected);
        assert_eq!(image.num_terms(), 4);
    }

    #[test]
    fn apply_rejects_other_universes() {
        let phi = PhiMap::default();
        assert!(matches!(
            phi.apply(&Element::one(Universe::Product)),
            Err(EmbeddingError::NotFreeUniverse(Universe::Product))
        ));
    }

    #[test]
    fn generator_recovery() {
        assert!(recover_generator_identity(1, &GammaSequence::reciprocal()).unwrap());
        assert!(recover_generator_identity(7, &GammaSequence::reciprocal()).unwrap());
        let custom = GammaSequence::listed(vec![r(1, 1), r(1, 1), r(2, 5)]).unwrap();
        assert!(recover_generator_identity(3, &custom).unwrap());
    }

    #[test]
    fn homomorphism_and_star_on_random_pairs() {
        let mut rng = StdRng::seed_from_u64(21);
        for gamma in
            [GammaSequence::reciprocal(), GammaSequence::constant(r(1, 1)), GammaSequence::inverse_square(r(3, 2))]
        {
            let phi = PhiMap::new(gamma);
            for _ in 0..60 {
                let x = sample::element(&mut rng, Universe::Free, 3, 3, 2, 1);
                let y = sample::element(&mut rng, Universe::Free, 3, 3, 2, 1);
                let lhs = phi.apply(&(&x * &y)).unwrap();
                let rhs = &phi.apply(&x).unwrap() * &phi.apply(&y).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(phi.apply(&x.star()).unwrap(), phi.apply(&x).unwrap().star());
            }
        }
    }
}
