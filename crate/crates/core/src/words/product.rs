use std::cmp::Ordering;
use std::fmt;

use super::{Bicyclic, FreeGen, Letter};

/// One factor of a normal-form word in `BC*S∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Item {
    /// A non-identity element of `BC`.
    Bc(Bicyclic),
    Free(FreeGen),
}

impl Item {
    fn star(self) -> Item {
        match self {
            Item::Bc(b) => Item::Bc(b.star()),
            Item::Free(g) => Item::Free(g.star()),
        }
    }

    fn letters(self) -> impl Iterator<Item = Letter> + Clone {
        let (bc, gen) = match self {
            Item::Bc(b) => (b, None),
            Item::Free(g) => (Bicyclic::IDENTITY, Some(Letter::Gen(g))),
        };
        bc.letters().chain(gen)
    }
}

/// A maximal alternating block: one `BC` factor, or a run of free generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Bc(Bicyclic),
    Free(FreeWord),
}

/// Normal form of an element of `BC*S∞`: a sequence of items with no two
/// adjacent `BC` items and no identity item. The empty sequence is `e`.
///
/// `len` is the number of items. Words are ordered by length, then
/// lexicographically on letters with `p < q < t₁ < t₁* < t₂ < …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ProductWord {
    items: Vec<Item>,
}

impl ProductWord {
    pub fn identity() -> Self {
        ProductWord { items: Vec::new() }
    }

    pub fn bc(b: Bicyclic) -> Self {
        if b.is_identity() {
            Self::identity()
        } else {
            ProductWord { items: vec![Item::Bc(b)] }
        }
    }

    pub fn p() -> Self {
        Self::bc(Bicyclic::P)
    }

    pub fn q() -> Self {
        Self::bc(Bicyclic::Q)
    }

    pub fn gen(g: FreeGen) -> Self {
        ProductWord { items: vec![Item::Free(g)] }
    }

    /// Builds a word from items that are already in normal form; `None` otherwise.
    pub fn from_items(items: Vec<Item>) -> Option<Self> {
        is_normal(&items).then_some(ProductWord { items })
    }

    /// Multiplies out a string of letters.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        letters.into_iter().fold(Self::identity(), |acc, l| {
            let next = match l {
                Letter::P => Self::p(),
                Letter::Q => Self::q(),
                Letter::Gen(g) => Self::gen(g),
            };
            acc.mul(&next)
        })
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn is_identity(&self) -> bool {
        self.items.is_empty()
    }

    /// Length in the free product: the number of items.
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone + '_ {
        self.items.iter().flat_map(|i| i.letters())
    }

    /// Largest free-generator index occurring in the word.
    pub fn max_index(&self) -> Option<u32> {
        self.free_gens().map(|g| g.index()).max()
    }

    pub fn free_gens(&self) -> impl Iterator<Item = FreeGen> + '_ {
        self.items.iter().filter_map(|i| match i {
            Item::Free(g) => Some(*g),
            Item::Bc(_) => None,
        })
    }

    /// Normal-form product. Only the seam can need work: two `BC` items merge,
    /// and if they cancel to `e` the neighbours are free generators, which never
    /// cancel, so nothing cascades.
    pub fn mul(&self, rhs: &ProductWord) -> ProductWord {
        let mut items = Vec::with_capacity(self.items.len() + rhs.items.len());
        items.extend_from_slice(&self.items);
        let mut rest = rhs.items.as_slice();
        if let (Some(&Item::Bc(l)), Some((&Item::Bc(r), tail))) = (items.last(), rest.split_first()) {
            items.pop();
            let merged = l.mul(r);
            if merged.is_identity() {
                debug_assert!(
                    !matches!(items.last(), Some(Item::Bc(_))) && !matches!(tail.first(), Some(Item::Bc(_))),
                    "seam cancellation exposed adjacent BC items"
                );
            } else {
                items.push(Item::Bc(merged));
            }
            rest = tail;
        }
        items.extend_from_slice(rest);
        debug_assert!(is_normal(&items));
        ProductWord { items }
    }

    /// `(w₁ ⋯ wₙ)* = wₙ* ⋯ w₁*`.
    pub fn star(&self) -> ProductWord {
        ProductWord { items: self.items.iter().rev().map(|i| i.star()).collect() }
    }

    /// Splits into alternating component blocks; maximal runs of free items form one block.
    pub fn blocks(&self) -> Vec<Block> {
        let mut out: Vec<Block> = Vec::new();
        for item in &self.items {
            match (item, out.last_mut()) {
                (Item::Bc(b), _) => out.push(Block::Bc(*b)),
                (Item::Free(g), Some(Block::Free(run))) => run.gens.push(*g),
                (Item::Free(g), _) => out.push(Block::Free(FreeWord { gens: vec![*g] })),
            }
        }
        out
    }

    pub(crate) fn push_item(&mut self, item: Item) {
        self.items.push(item);
        debug_assert!(is_normal(&self.items));
    }
}

fn is_normal(items: &[Item]) -> bool {
    items.iter().all(|i| !matches!(i, Item::Bc(b) if b.is_identity()))
        && items.windows(2).all(|w| !matches!(w, [Item::Bc(_), Item::Bc(_)]))
}

impl Ord for ProductWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for ProductWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        for (i, letter) in self.letters().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl From<Bicyclic> for ProductWord {
    fn from(b: Bicyclic) -> Self {
        ProductWord::bc(b)
    }
}

impl From<FreeGen> for ProductWord {
    fn from(g: FreeGen) -> Self {
        ProductWord::gen(g)
    }
}

/// A word in the free *-monoid `S∞`: no relations at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    pub gens: Vec<FreeGen>,
}

impl FreeWord {
    pub fn new(gens: Vec<FreeGen>) -> Self {
        FreeWord { gens }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn mul(&self, rhs: &FreeWord) -> FreeWord {
        FreeWord { gens: self.gens.iter().chain(&rhs.gens).copied().collect() }
    }

    pub fn star(&self) -> FreeWord {
        FreeWord { gens: self.gens.iter().rev().map(|g| g.star()).collect() }
    }

    pub fn to_product(&self) -> ProductWord {
        ProductWord { items: self.gens.iter().map(|&g| Item::Free(g)).collect() }
    }
}

impl TryFrom<&ProductWord> for FreeWord {
    type Error = ();

    fn try_from(w: &ProductWord) -> Result<Self, ()> {
        w.items
            .iter()
            .map(|i| match i {
                Item::Free(g) => Ok(*g),
                Item::Bc(_) => Err(()),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(FreeWord::new)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_product().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u32) -> ProductWord {
        ProductWord::gen(FreeGen::t(n))
    }

    fn ts(n: u32) -> ProductWord {
        ProductWord::gen(FreeGen::t_star(n))
    }

    fn word(parts: &[ProductWord]) -> ProductWord {
        parts.iter().fold(ProductWord::identity(), |acc, w| acc.mul(w))
    }

    #[test]
    fn seam_cancellation() {
        let l = word(&[t(1), ProductWord::p()]);
        let r = word(&[ProductWord::q(), t(2)]);
        let prod = l.mul(&r);
        assert_eq!(prod, word(&[t(1), t(2)]));
        assert_eq!(prod.len(), 2);
    }

    #[test]
    fn identity_is_neutral() {
        let w = word(&[ts(3), ProductWord::bc(Bicyclic::new(2, 1)), t(1)]);
        assert_eq!(ProductWord::identity().mul(&w), w);
        assert_eq!(w.mul(&ProductWord::identity()), w);
    }

    #[test]
    fn lengths() {
        assert_eq!(ProductWord::identity().len(), 0);
        assert_eq!(ProductWord::bc(Bicyclic::new(0, 2)).len(), 1);
        let pt = word(&[ProductWord::p(), t(2)]);
        assert_eq!(pt.len(), 2);
        assert_eq!(ProductWord::p().mul(&t(1)).len(), 2);
    }

    #[test]
    fn star_examples() {
        let w = word(&[ProductWord::p(), t(1)]);
        assert_eq!(w.star(), word(&[ts(1), ProductWord::q()]));
        assert_eq!(ProductWord::identity().star(), ProductWord::identity());
        let w = word(&[ts(2), ProductWord::bc(Bicyclic::new(1, 1)), t(3)]);
        assert_eq!(w.star(), word(&[ts(3), ProductWord::bc(Bicyclic::new(1, 1)), t(2)]));
    }

    #[test]
    fn rejects_non_normal_items() {
        assert!(ProductWord::from_items(vec![Item::Bc(Bicyclic::P), Item::Bc(Bicyclic::Q)]).is_none());
        assert!(ProductWord::from_items(vec![Item::Bc(Bicyclic::IDENTITY)]).is_none());
        assert!(ProductWord::from_items(vec![Item::Bc(Bicyclic::P), Item::Free(FreeGen::t(1))]).is_some());
    }

    #[test]
    fn order_and_display() {
        let mut ws = [t(1), ProductWord::q(), ts(1), ProductWord::p(), t(2), ProductWord::identity()];
        ws.sort();
        let shown: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["e", "p", "q", "t1", "t1*", "t2"]);
        let w = word(&[ProductWord::bc(Bicyclic::new(2, 1)), ts(1), ProductWord::p()]);
        assert_eq!(w.to_string(), "q q p t1* p");
    }

    #[test]
    fn blocks_group_free_runs() {
        let w = word(&[ProductWord::q(), t(1), ts(2), ProductWord::p()]);
        assert_eq!(
            w.blocks(),
            vec![
                Block::Bc(Bicyclic::Q),
                Block::Free(FreeWord::new(vec![FreeGen::t(1), FreeGen::t_star(2)])),
                Block::Bc(Bicyclic::P),
            ]
        );
    }
}
