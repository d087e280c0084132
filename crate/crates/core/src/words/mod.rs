//! Normal forms for the monoids in play: the bicyclic monoid `BC`, the free
//! *-monoid `S∞`, their free product `BC*S∞`, and the free group `F₂`, together
//! with the maps `S∞ → S₂ → F₂`.
//!
//! Words are immutable values and every operation is pure.

mod bicyclic;
mod enumerate;
mod free_group;
mod product;

use std::fmt;
use std::num::NonZeroU32;

use serde::{Deserialize, Serialize};

pub use bicyclic::Bicyclic;
pub use enumerate::enumerate_words;
pub use free_group::{map_to_f2, FgGen, FgLetter, FgWord};
pub use product::{Block, FreeWord, Item, ProductWord};

/// A free generator `tₙ` (`starred == false`) or `tₙ*` of `S∞`.
///
/// The derived order (index first, then unstarred before starred) gives
/// `t₁ < t₁* < t₂ < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeGen {
    pub index: NonZeroU32,
    pub starred: bool,
}

impl FreeGen {
    /// `tₙ`; panics if `n == 0`.
    pub fn t(n: u32) -> Self {
        FreeGen { index: NonZeroU32::new(n).expect("generator index must be >= 1"), starred: false }
    }

    /// `tₙ*`; panics if `n == 0`.
    pub fn t_star(n: u32) -> Self {
        FreeGen { starred: true, ..Self::t(n) }
    }

    pub fn try_new(n: u32, starred: bool) -> Option<Self> {
        NonZeroU32::new(n).map(|index| FreeGen { index, starred })
    }

    pub fn star(self) -> Self {
        FreeGen { starred: !self.starred, ..self }
    }

    pub fn index(self) -> u32 {
        self.index.get()
    }
}

impl fmt::Display for FreeGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}{}", self.index, if self.starred { "*" } else { "" })
    }
}

/// A single letter of the alphabet `{p, q} ∪ {tₙ, tₙ*}`, ordered `p < q < t₁ < t₁* < t₂ < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    P,
    Q,
    Gen(FreeGen),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::P => f.write_str("p"),
            Letter::Q => f.write_str("q"),
            Letter::Gen(g) => g.fmt(f),
        }
    }
}

/// Which semigroup algebra an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Universe {
    /// `ℂBC`
    #[serde(rename = "bc")]
    Bicyclic,
    /// `ℂS∞`
    #[serde(rename = "sinf")]
    Free,
    /// `ℂ(BC*S∞)`
    #[serde(rename = "bcs")]
    Product,
    /// `ℂF₂`
    #[serde(rename = "f2")]
    FreeGroup,
}

impl Universe {
    pub fn name(self) -> &'static str {
        match self {
            Universe::Bicyclic => "bc",
            Universe::Free => "sinf",
            Universe::Product => "bcs",
            Universe::FreeGroup => "f2",
        }
    }

    /// Whether `w` (a word of `BC*S∞`) belongs to the submonoid this universe names.
    pub fn admits(self, w: &ProductWord) -> bool {
        match self {
            Universe::Product => true,
            Universe::Free => w.items().iter().all(|i| matches!(i, Item::Free(_))),
            Universe::Bicyclic => w.items().iter().all(|i| matches!(i, Item::Bc(_))),
            Universe::FreeGroup => false,
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Universe {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bc" => Ok(Universe::Bicyclic),
            "sinf" | "s" => Ok(Universe::Free),
            "bcs" => Ok(Universe::Product),
            "f2" => Ok(Universe::FreeGroup),
            other => Err(format!("unknown universe {other:?} (expected bc, sinf, bcs or f2)")),
        }
    }
}
