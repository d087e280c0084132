use std::cmp::Ordering;
use std::fmt;

use super::FreeWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FgGen {
    X,
    Y,
}

/// `x`, `x⁻¹`, `y` or `y⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgLetter {
    pub gen: FgGen,
    pub inverse: bool,
}

impl FgLetter {
    pub const X: FgLetter = FgLetter { gen: FgGen::X, inverse: false };
    pub const Y: FgLetter = FgLetter { gen: FgGen::Y, inverse: false };
    pub const X_INV: FgLetter = FgLetter { gen: FgGen::X, inverse: true };
    pub const Y_INV: FgLetter = FgLetter { gen: FgGen::Y, inverse: true };

    pub fn inv(self) -> Self {
        FgLetter { inverse: !self.inverse, ..self }
    }
}

impl fmt::Display for FgLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.gen {
            FgGen::X => "x",
            FgGen::Y => "y",
        };
        write!(f, "{g}{}", if self.inverse { "-" } else { "" })
    }
}

/// A freely reduced word in the free group on `x, y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FgWord {
    letters: Vec<FgLetter>,
}

impl FgWord {
    pub fn identity() -> Self {
        FgWord::default()
    }

    /// Reduces an arbitrary letter string.
    pub fn from_letters<I: IntoIterator<Item = FgLetter>>(letters: I) -> Self {
        let mut stack: Vec<FgLetter> = Vec::new();
        for l in letters {
            if stack.last() == Some(&l.inv()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        FgWord { letters: stack }
    }

    pub fn letters(&self) -> &[FgLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inv())
    }

    pub fn mul(&self, rhs: &FgWord) -> FgWord {
        // Both sides are reduced, so cancellation only eats inward from the seam.
        let common = self.letters.iter().rev().zip(&rhs.letters).take_while(|(l, r)| **l == r.inv()).count();
        let mut letters = self.letters[..self.letters.len() - common].to_vec();
        letters.extend_from_slice(&rhs.letters[common..]);
        FgWord { letters }
    }

    pub fn inverse(&self) -> FgWord {
        FgWord { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }
}

impl Ord for FgWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for FgWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FgWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `S∞ → S₂ → F₂`: `tₙ ↦ a(a*)ⁿa ↦ x yⁿ x` and `tₙ* ↦ y xⁿ y`.
///
/// The image only uses positive letters, so no reduction ever happens and the
/// map is injective (the images of generators form a prefix code).
pub fn map_to_f2(w: &FreeWord) -> FgWord {
    let mut letters = Vec::new();
    for g in &w.gens {
        let (outer, inner) = if g.starred { (FgLetter::Y, FgLetter::X) } else { (FgLetter::X, FgLetter::Y) };
        letters.push(outer);
        letters.extend(std::iter::repeat_n(inner, g.index() as usize));
        letters.push(outer);
    }
    FgWord::from_letters(letters)
}
