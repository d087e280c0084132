//! States on the component algebras, the free-product state on `ℂ(BC*S∞)`,
//! exact Gram positivity checks, and the canonical trace on `ℂF₂`.
//!
//! * On `ℂBC`, `μ₁(δ_{q^a p^b}) = 𝟙_{a=b} 2^{-a}`: the vector state of the
//!   shift `S` against the density `diag(2^{-1}, 2^{-2}, …)`.
//! * On `ℂS∞`, either the character `μ₂(δ_w) = z^{len w}` or the vacuum
//!   `μ₂(δ_w) = 𝟙_{w=e}`.
//! * On the free product, moments are determined by the rule that
//!   alternating products of centered elements have moment zero.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{Element, GroupElement};
use crate::limits::{LimitError, Limits};
use crate::scalar::Scalar;
use crate::words::{Bicyclic, Block, FgWord, FreeWord, ProductWord, Universe};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StateError {
    #[error(transparent)]
    Limit(#[from] LimitError),
    #[error("moments are defined on bc, sinf and bcs elements, not {0}")]
    UnsupportedUniverse(Universe),
    #[error("invalid state {text:?}: {reason}")]
    BadState { text: String, reason: String },
}

/// `μ₁(q^a p^b) = 𝟙_{a=b} 2^{-a}`.
pub fn bc_moment(b: Bicyclic) -> Scalar {
    if b.q_exp != b.p_exp {
        return Scalar::zero();
    }
    let exp = u32::try_from(b.q_exp).expect("exponent fits in u32");
    Scalar::ratio(1, 2).pow(exp)
}

/// The state used on the free *-monoid algebra `ℂS∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeMonoidState {
    /// `δ_w ↦ z^{len w}`; a character, hence positive for real `z`.
    Character(BigRational),
    /// `δ_w ↦ 𝟙_{w=e}`.
    Vacuum,
}

impl Default for FreeMonoidState {
    fn default() -> Self {
        FreeMonoidState::Character(BigRational::new(1.into(), 2.into()))
    }
}

impl FreeMonoidState {
    pub fn moment(&self, w: &FreeWord) -> Scalar {
        match self {
            FreeMonoidState::Character(z) => {
                Scalar::real(z.clone()).pow(u32::try_from(w.len()).expect("word length fits in u32"))
            }
            FreeMonoidState::Vacuum if w.is_empty() => Scalar::one(),
            FreeMonoidState::Vacuum => Scalar::zero(),
        }
    }
}

impl fmt::Display for FreeMonoidState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeMonoidState::Character(z) => write!(f, "character:{z}"),
            FreeMonoidState::Vacuum => f.write_str("vacuum"),
        }
    }
}

impl FromStr for FreeMonoidState {
    type Err = StateError;

    /// `vacuum`, `character` (z = 1/2) or `character:z` with rational `z`.
    fn from_str(s: &str) -> Result<Self, StateError> {
        let bad = |reason: &str| StateError::BadState { text: s.to_string(), reason: reason.to_string() };
        match s.trim() {
            "vacuum" => Ok(FreeMonoidState::Vacuum),
            "character" => Ok(FreeMonoidState::default()),
            other => {
                let z =
                    other.strip_prefix("character:").ok_or_else(|| bad("expected vacuum, character or character:z"))?;
                let z: BigRational = z.trim().parse().map_err(|_| bad("z must be a rational number"))?;
                Ok(FreeMonoidState::Character(z))
            }
        }
    }
}

/// Component states defining the free-product state. The `ℂBC` component is
/// always the dyadic-density state [`bc_moment`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StateConfig {
    pub s_state: FreeMonoidState,
}

impl StateConfig {
    pub fn vacuum() -> Self {
        StateConfig { s_state: FreeMonoidState::Vacuum }
    }

    pub fn character(z: BigRational) -> Self {
        StateConfig { s_state: FreeMonoidState::Character(z) }
    }
}

impl Serialize for StateConfig {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("StateConfig", 2)?;
        st.serialize_field("bc_state", "dyadic-density")?;
        st.serialize_field("s_state", &self.s_state.to_string())?;
        st.end()
    }
}

fn block_word(b: &Block) -> ProductWord {
    match b {
        Block::Bc(bc) => ProductWord::bc(*bc),
        Block::Free(fw) => fw.to_product(),
    }
}

/// The free product `μ = μ₁ * μ₂` on `ℂ(BC*S∞)`, with a memo of word moments.
///
/// The memo is a pure cache: every entry equals the value recomputed from
/// scratch, so sharing one instance across threads is safe.
#[derive(Debug)]
pub struct FreeProductState {
    config: StateConfig,
    max_blocks: usize,
    memo: RwLock<HashMap<ProductWord, Scalar>>,
}

impl FreeProductState {
    pub fn new(config: StateConfig, limits: &Limits) -> Self {
        FreeProductState { config, max_blocks: limits.max_blocks, memo: RwLock::new(HashMap::new()) }
    }

    pub fn config(&self) -> &StateConfig {
        &self.config
    }

    fn block_moment(&self, b: &Block) -> Scalar {
        match b {
            Block::Bc(bc) => bc_moment(*bc),
            Block::Free(fw) => self.config.s_state.moment(fw),
        }
    }

    /// `μ(δ_w)`.
    ///
    /// Writing `w = c₁⋯c_r` in alternating blocks and `δ_{c_i} = ĉ_i + μ(c_i)δ_e`
    /// with `ĉ_i` centered, the product expands over subsets `T` of the
    /// blocks kept centered. `T = {1..r}` is alternating and centered, so it
    /// contributes nothing; every other term is a product of at most `r - 1`
    /// blocks, which after merging neighbours is a combination of words with
    /// fewer blocks, evaluated recursively.
    pub fn word_moment(&self, w: &ProductWord) -> Result<Scalar, StateError> {
        if let Some(v) = self.memo.read().expect("moment memo poisoned").get(w) {
            return Ok(v.clone());
        }
        let blocks = w.blocks();
        Limits::check("alternating blocks", blocks.len(), self.max_blocks)?;
        let value = match blocks.as_slice() {
            [] => Scalar::one(),
            [b] => self.block_moment(b),
            _ => self.expand(&blocks)?,
        };
        self.memo.write().expect("moment memo poisoned").insert(w.clone(), value.clone());
        Ok(value)
    }

    fn expand(&self, blocks: &[Block]) -> Result<Scalar, StateError> {
        let r = blocks.len();
        let moments: Vec<Scalar> = blocks.iter().map(|b| self.block_moment(b)).collect();
        let words: Vec<ProductWord> = blocks.iter().map(block_word).collect();
        // Blocks with zero moment are already centered and must lie in T.
        let forced: u32 = (0..r).filter(|&i| moments[i].is_zero()).fold(0, |acc, i| acc | 1 << i);
        let full = (1u32 << r) - 1;

        let mut total = Scalar::zero();
        for t in (0..full).filter(|t| t & forced == forced) {
            let weight: Scalar = (0..r).filter(|i| t & (1 << i) == 0).map(|i| moments[i].clone()).product();
            if weight.is_zero() {
                continue;
            }
            let mut product = Element::one(Universe::Product);
            for i in (0..r).filter(|i| t & (1 << i) != 0) {
                let centered = Element::from_terms(
                    Universe::Product,
                    [(words[i].clone(), Scalar::one()), (ProductWord::identity(), -moments[i].clone())],
                )
                .expect("block words lie in BC*S∞");
                product = &product * &centered;
            }
            for (u, c) in product.terms() {
                total += &(&weight * &(c * &self.word_moment(u)?));
            }
        }
        Ok(total)
    }

    /// `μ(x)` for `x` over `BC`, `S∞` or `BC*S∞`.
    pub fn moment(&self, x: &Element) -> Result<Scalar, StateError> {
        if x.universe() == Universe::FreeGroup {
            return Err(StateError::UnsupportedUniverse(x.universe()));
        }
        let mut total = Scalar::zero();
        for (w, c) in x.terms() {
            total += &(c * &self.word_moment(w)?);
        }
        Ok(total)
    }

    pub fn cached_words(&self) -> usize {
        self.memo.read().expect("moment memo poisoned").len()
    }
}

/// Outcome of [`gram_psd_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramReport {
    pub words: Vec<String>,
    pub state_config: StateConfig,
    /// `G[i][j] = μ(δ_{w_i}* δ_{w_j})`, rendered as scalars.
    pub matrix: Vec<Vec<String>>,
    pub psd: bool,
    /// Indices of a principal minor with negative determinant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violating_minor: Option<Vec<usize>>,
}

/// Builds the Gram matrix of `words` under `state` and decides positive
/// semidefiniteness exactly.
pub fn gram_psd_check(words: &[ProductWord], state: &FreeProductState) -> Result<GramReport, StateError> {
    let gram = words
        .iter()
        .map(|wi| {
            let wi_star = wi.star();
            words.iter().map(|wj| state.word_moment(&wi_star.mul(wj))).collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let violating_minor = hermitian_psd_witness(&gram);
    Ok(GramReport {
        words: words.iter().map(ToString::to_string).collect(),
        state_config: state.config().clone(),
        matrix: gram.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect(),
        psd: violating_minor.is_none(),
        violating_minor,
    })
}

/// Symmetric Gaussian elimination on a Hermitian matrix. Positive pivots are
/// eliminated; a negative pivot, or a zero pivot whose residual row is not
/// zero, exhibits a principal minor with negative determinant, whose indices
/// are returned. `None` means the matrix is positive semidefinite.
pub fn hermitian_psd_witness(matrix: &[Vec<Scalar>]) -> Option<Vec<usize>> {
    let n = matrix.len();
    let mut g = matrix.to_vec();
    let mut positive: Vec<usize> = Vec::new();
    for k in 0..n {
        let pivot = g[k][k].clone();
        debug_assert!(pivot.is_real(), "Hermitian matrices have real diagonals");
        if pivot.re().is_negative() {
            positive.push(k);
            return Some(positive);
        }
        if pivot.is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !g[k][j].is_zero()) {
                positive.extend([k, j]);
                return Some(positive);
            }
            continue;
        }
        let inv = pivot.inv().expect("nonzero pivot");
        let (top, rest) = g.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut().filter(|row| !row[k].is_zero()) {
            let f = &row[k] * &inv;
            for (x, p) in row.iter_mut().zip(pivot_row).skip(k + 1) {
                *x -= &(&f * p);
            }
        }
        positive.push(k);
    }
    None
}

/// The canonical trace on `ℂF₂`: the coefficient of the empty word.
pub fn trace_f2(x: &GroupElement) -> Scalar {
    x.coeff(&FgWord::default())
}

/// `Σ_g |α_g|²`.
pub fn sum_abs_squares<W: crate::algebra::StarWord>(x: &Element<W>) -> BigRational {
    x.terms().fold(BigRational::zero(), |acc, (_, c)| acc + c.norm_sqr())
}
