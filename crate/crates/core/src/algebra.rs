//! Finitely supported linear combinations `Σ α_u δ_u` over exact scalars: the
//! *-algebras `ℂBC`, `ℂS∞`, `ℂ(BC*S∞)` and `ℂF₂`.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::Scalar;
use crate::words::{FgWord, ProductWord, Universe};

/// Normal-form words of a *-monoid.
pub trait StarWord: Clone + Ord + Hash + fmt::Display {
    fn identity() -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn star(&self) -> Self;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn belongs_to(&self, universe: Universe) -> bool;
}

impl StarWord for ProductWord {
    fn identity() -> Self {
        ProductWord::identity()
    }
    fn mul(&self, rhs: &Self) -> Self {
        ProductWord::mul(self, rhs)
    }
    fn star(&self) -> Self {
        ProductWord::star(self)
    }
    fn len(&self) -> usize {
        ProductWord::len(self)
    }
    fn belongs_to(&self, universe: Universe) -> bool {
        universe.admits(self)
    }
}

/// In a group algebra the involution is `δ_g* = δ_{g⁻¹}`.
impl StarWord for FgWord {
    fn identity() -> Self {
        FgWord::identity()
    }
    fn mul(&self, rhs: &Self) -> Self {
        FgWord::mul(self, rhs)
    }
    fn star(&self) -> Self {
        self.inverse()
    }
    fn len(&self) -> usize {
        FgWord::len(self)
    }
    fn belongs_to(&self, universe: Universe) -> bool {
        universe == Universe::FreeGroup
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("universe mismatch: {left} vs {right}")]
    UniverseMismatch { left: Universe, right: Universe },
    #[error("word {word} does not belong to universe {universe}")]
    WordOutsideUniverse { word: String, universe: Universe },
}

/// A finitely supported element of a semigroup algebra. Zero coefficients are
/// never stored, so the zero element is the empty map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<W: StarWord = ProductWord> {
    universe: Universe,
    terms: BTreeMap<W, Scalar>,
}

pub type GroupElement = Element<FgWord>;

impl<W: StarWord> Element<W> {
    pub fn zero(universe: Universe) -> Self {
        Element { universe, terms: BTreeMap::new() }
    }

    pub fn one(universe: Universe) -> Self {
        Self::zero(universe).with_term(W::identity(), Scalar::one())
    }

    /// `δ_w`.
    pub fn basis(universe: Universe, w: W) -> Result<Self, AlgebraError> {
        Self::monomial(universe, Scalar::one(), w)
    }

    /// `α δ_w`.
    pub fn monomial(universe: Universe, coeff: Scalar, w: W) -> Result<Self, AlgebraError> {
        Self::check_word(universe, &w)?;
        Ok(Self::zero(universe).with_term(w, coeff))
    }

    /// Collects `(word, coefficient)` pairs, merging repeated words.
    pub fn from_terms<I: IntoIterator<Item = (W, Scalar)>>(universe: Universe, terms: I) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(universe);
        for (w, c) in terms {
            Self::check_word(universe, &w)?;
            out.add_term(w, &c);
        }
        Ok(out)
    }

    /// `Σ cᵢ xᵢ`. `universe` fixes the result when `pairs` is empty.
    pub fn linear_combine(universe: Universe, pairs: &[(Scalar, &Element<W>)]) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(universe);
        for (c, x) in pairs {
            out.same_universe(x)?;
            for (w, a) in &x.terms {
                out.add_term(w.clone(), &(c * a));
            }
        }
        Ok(out)
    }

    fn check_word(universe: Universe, w: &W) -> Result<(), AlgebraError> {
        if w.belongs_to(universe) {
            Ok(())
        } else {
            Err(AlgebraError::WordOutsideUniverse { word: w.to_string(), universe })
        }
    }

    fn with_term(mut self, w: W, c: Scalar) -> Self {
        self.add_term(w, &c);
        self
    }

    fn add_term(&mut self, w: W, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_universe(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(AlgebraError::UniverseMismatch { left: self.universe, right: other.universe })
        }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in the word order.
    pub fn terms(&self) -> impl Iterator<Item = (&W, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &W> {
        self.terms.keys()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.same_universe(rhs)?;
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.same_universe(rhs)?;
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), &-c);
        }
        Ok(out)
    }

    /// Convolution: `(Σ α_u δ_u)(Σ β_v δ_v) = Σ α_u β_v δ_{uv}`.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.same_universe(rhs)?;
        let mut out = Self::zero(self.universe);
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.mul(v), &(a * b));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.universe);
        }
        Element { universe: self.universe, terms: self.terms.iter().map(|(w, a)| (w.clone(), c * a)).collect() }
    }

    /// Conjugate-linear extension of `δ_s* = δ_{s*}`.
    pub fn star(&self) -> Self {
        Element { universe: self.universe, terms: self.terms.iter().map(|(w, a)| (w.star(), a.conj())).collect() }
    }

    /// `⟨x, δ_w'⟩`: the coefficient of `δ_w`.
    pub fn coordinate(&self, w: &W) -> Result<Scalar, AlgebraError> {
        Self::check_word(self.universe, w)?;
        Ok(self.coeff(w))
    }

    /// Unchecked coordinate; words outside the universe simply read as zero.
    pub fn coeff(&self, w: &W) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest word length in the support; 0 for the zero element.
    pub fn support_max_len(&self) -> usize {
        self.terms.keys().map(StarWord::len).max().unwrap_or(0)
    }

    /// Re-tags the element as living in a larger (or equal) algebra.
    pub fn lift(&self, universe: Universe) -> Result<Self, AlgebraError> {
        for w in self.terms.keys() {
            Self::check_word(universe, w)?;
        }
        Ok(Element { universe, terms: self.terms.clone() })
    }
}

impl Element<ProductWord> {
    /// Largest free-generator index in the support.
    pub fn max_index(&self) -> Option<u32> {
        self.terms.keys().filter_map(|w| w.max_index()).max()
    }
}

impl<W: StarWord> fmt::Display for Element<W> {
    /// `1*e + 1/2*p t2`; the zero element renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{mag}*{w}")?;
        }
        Ok(())
    }
}

macro_rules! panicking_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<W: StarWord> $tr<&Element<W>> for &Element<W> {
            type Output = Element<W>;
            /// Panics on a universe mismatch; use the `try_` form to handle it.
            fn $method(self, rhs: &Element<W>) -> Element<W> {
                self.$checked(rhs).expect("element arithmetic across universes")
            }
        }
    };
}

panicking_op!(Add, add, try_add);
panicking_op!(Sub, sub, try_sub);
panicking_op!(Mul, mul, try_mul);

impl<W: StarWord> Neg for &Element<W> {
    type Output = Element<W>;
    fn neg(self) -> Element<W> {
        self.scale(&Scalar::from_int(-1))
    }
}
