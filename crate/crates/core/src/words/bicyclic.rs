use std::fmt;

use super::Letter;

/// The element `q^a p^b` of the bicyclic monoid `⟨p, q : pq = e⟩`.
///
/// Every element has exactly one such form, so the exponent pair is a
/// canonical representative and `==` is equality in the monoid.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bicyclic {
    /// Power of `q` (the left factor).
    pub q_exp: u64,
    /// Power of `p` (the right factor).
    pub p_exp: u64,
}

impl Bicyclic {
    pub const IDENTITY: Bicyclic = Bicyclic { q_exp: 0, p_exp: 0 };
    pub const P: Bicyclic = Bicyclic { q_exp: 0, p_exp: 1 };
    pub const Q: Bicyclic = Bicyclic { q_exp: 1, p_exp: 0 };

    pub const fn new(q_exp: u64, p_exp: u64) -> Self {
        Bicyclic { q_exp, p_exp }
    }

    pub fn is_identity(self) -> bool {
        self.q_exp == 0 && self.p_exp == 0
    }

    /// `q^a p^b · q^c p^d`: the inner `p^b q^c` cancels down to `p^(b-c)` or `q^(c-b)`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Bicyclic) -> Bicyclic {
        if self.p_exp >= rhs.q_exp {
            Bicyclic::new(self.q_exp, self.p_exp - rhs.q_exp + rhs.p_exp)
        } else {
            Bicyclic::new(self.q_exp + rhs.q_exp - self.p_exp, rhs.p_exp)
        }
    }

    /// `p* = q`, hence `(q^a p^b)* = q^b p^a`.
    pub fn star(self) -> Bicyclic {
        Bicyclic::new(self.p_exp, self.q_exp)
    }

    /// Number of letters in the canonical spelling.
    pub fn letter_count(self) -> u64 {
        self.q_exp + self.p_exp
    }

    pub(crate) fn letters(self) -> impl Iterator<Item = Letter> + Clone {
        std::iter::repeat_n(Letter::Q, self.q_exp as usize).chain(std::iter::repeat_n(Letter::P, self.p_exp as usize))
    }
}

impl fmt::Display for Bicyclic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        let mut first = true;
        for letter in self.letters() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}
