//! Exact search for one-sided inverses with length-bounded support, for
//! single elements and for square matrices over the algebra.
//!
//! A candidate inverse is written as unknown coefficients on every word of
//! length `<= m` (indices bounded by those in the input plus `k_extra`), and
//! `a·x = 1` (or `x·a = 1`) becomes a finite linear system over the
//! coordinates of the product. Infeasibility is therefore relative to the
//! bound, and the certificate records it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::Element;
use crate::limits::Limits;
use crate::linalg::{solve_sparse, Solution, SparseRow};
use crate::scalar::Scalar;
use crate::words::{enumerate_words, ProductWord, Universe};

use super::EmbeddingError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `x · a = 1`
    Left,
    /// `a · x = 1`
    Right,
}

impl FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(format!("side must be left or right, got {other:?}")),
        }
    }
}

/// `rank[A | b] > rank A` for the bounded system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub rank_system: usize,
    pub rank_augmented: usize,
    pub unknowns: usize,
    pub equations: usize,
    /// Length bound on candidate supports.
    pub max_len: usize,
    /// Index bound on candidate supports.
    pub max_index: u32,
    /// Column (right inverse) or row (left inverse) of the identity that could not be reached.
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InverseOutcome {
    Found(Element),
    Infeasible(Certificate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixInverseOutcome {
    Found(ElementMatrix),
    Infeasible(Certificate),
}

/// A dense matrix of elements from one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementMatrix {
    rows: usize,
    cols: usize,
    universe: Universe,
    entries: Vec<Element>,
}

impl ElementMatrix {
    /// Row-major entries; all must share `universe`.
    pub fn new(rows: usize, cols: usize, universe: Universe, entries: Vec<Element>) -> Result<Self, EmbeddingError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(EmbeddingError::Shape(format!("{rows}x{cols} matrix with {} entries", entries.len())));
        }
        if let Some(bad) = entries.iter().find(|e| e.universe() != universe) {
            return Err(crate::algebra::AlgebraError::UniverseMismatch { left: universe, right: bad.universe() }.into());
        }
        Ok(ElementMatrix { rows, cols, universe, entries })
    }

    pub fn identity(n: usize, universe: Universe) -> Self {
        let entries = (0..n * n)
            .map(|idx| if idx / n == idx % n { Element::one(universe) } else { Element::zero(universe) })
            .collect();
        ElementMatrix { rows: n, cols: n, universe, entries }
    }

    /// `diag(d₁, …, dₙ)`.
    pub fn diagonal(diag: &[Element]) -> Result<Self, EmbeddingError> {
        let n = diag.len();
        let universe =
            diag.first().map(Element::universe).ok_or_else(|| EmbeddingError::Shape("empty diagonal".into()))?;
        let entries = (0..n * n)
            .map(|idx| if idx / n == idx % n { diag[idx / n].clone() } else { Element::zero(universe) })
            .collect();
        Self::new(n, n, universe, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.cols + j]
    }

    pub fn mul(&self, rhs: &ElementMatrix) -> Result<ElementMatrix, EmbeddingError> {
        if self.cols != rhs.rows {
            return Err(EmbeddingError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Element::zero(self.universe);
                for k in 0..self.cols {
                    acc = acc.try_add(&self.get(i, k).try_mul(rhs.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        ElementMatrix::new(self.rows, rhs.cols, self.universe, entries)
    }

    fn max_index(&self) -> u32 {
        self.entries.iter().filter_map(Element::max_index).max().unwrap_or(0)
    }
}

impl fmt::Display for ElementMatrix {
    /// `[a, b; c, d]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

/// Searches for `x` with `a·x = δ_e` (`Side::Right`) or `x·a = δ_e` (`Side::Left`).
pub fn inverse_search(
    a: &Element,
    side: Side,
    m: usize,
    k_extra: u32,
    limits: &Limits,
) -> Result<InverseOutcome, EmbeddingError> {
    if a.is_zero() {
        return Err(EmbeddingError::ZeroElement);
    }
    let mat = ElementMatrix::new(1, 1, a.universe(), vec![a.clone()])?;
    Ok(match mat_inverse_search(&mat, side, m, k_extra, limits)? {
        MatrixInverseOutcome::Found(x) => InverseOutcome::Found(x.get(0, 0).clone()),
        MatrixInverseOutcome::Infeasible(c) => InverseOutcome::Infeasible(c),
    })
}

/// Matrix version: solves `A·X = I` column by column (right) or `X·A = I` row
/// by row (left); each is an independent exact linear system.
pub fn mat_inverse_search(
    a: &ElementMatrix,
    side: Side,
    m: usize,
    k_extra: u32,
    limits: &Limits,
) -> Result<MatrixInverseOutcome, EmbeddingError> {
    if a.rows != a.cols {
        return Err(EmbeddingError::Shape(format!("inverse search needs a square matrix, got {}x{}", a.rows, a.cols)));
    }
    if a.universe == Universe::FreeGroup {
        return Err(EmbeddingError::UnsupportedUniverse(a.universe));
    }
    let n = a.rows;
    let max_index = a.max_index().saturating_add(k_extra);
    let candidates = enumerate_words(m, max_index, a.universe, limits)?;
    let per_entry = candidates.len();
    let unknowns = n * per_entry;
    Limits::check("unknowns", unknowns, limits.max_unknowns)?;

    let mut solved: Vec<Vec<Element>> = Vec::with_capacity(n);
    for target in 0..n {
        // Equations are indexed by (position in the product vector, word).
        let mut equations: BTreeMap<(usize, ProductWord), BTreeMap<usize, Scalar>> = BTreeMap::new();
        equations.entry((target, ProductWord::identity())).or_default();
        for inner in 0..n {
            for (widx, w) in candidates.iter().enumerate() {
                let var = inner * per_entry + widx;
                for pos in 0..n {
                    // Right: (A X)_{pos,target} gets A_{pos,inner} X_{inner,target}.
                    // Left:  (X A)_{target,pos} gets X_{target,inner} A_{inner,pos}.
                    let entry = match side {
                        Side::Right => a.get(pos, inner),
                        Side::Left => a.get(inner, pos),
                    };
                    for (u, c) in entry.terms() {
                        let word = match side {
                            Side::Right => u.mul(w),
                            Side::Left => w.mul(u),
                        };
                        let coeffs = equations.entry((pos, word)).or_default();
                        let slot = coeffs.entry(var).or_default();
                        *slot += c;
                        if slot.is_zero() {
                            coeffs.remove(&var);
                        }
                    }
                }
            }
        }
        let num_equations = equations.len();
        let rows = equations
            .into_iter()
            .map(|((pos, word), coeffs)| SparseRow {
                coeffs,
                rhs: if pos == target && word.is_identity() { Scalar::one() } else { Scalar::zero() },
            })
            .collect();
        match solve_sparse(unknowns, rows) {
            Solution::Inconsistent { rank_system, rank_augmented } => {
                return Ok(MatrixInverseOutcome::Infeasible(Certificate {
                    rank_system,
                    rank_augmented,
                    unknowns,
                    equations: num_equations,
                    max_len: m,
                    max_index,
                    target,
                }));
            }
            Solution::Unique(x) | Solution::Underdetermined(x) => {
                let line = (0..n)
                    .map(|inner| {
                        let terms = candidates
                            .iter()
                            .zip(&x[inner * per_entry..(inner + 1) * per_entry])
                            .map(|(w, c)| (w.clone(), c.clone()));
                        Element::from_terms(a.universe, terms)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                solved.push(line);
            }
        }
    }

    // `solved[target][inner]` is column `target` of X (right) or row `target` (left).
    let entries = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            match side {
                Side::Right => solved[j][i].clone(),
                Side::Left => solved[i][j].clone(),
            }
        })
        .collect();
    let x = ElementMatrix::new(n, n, a.universe, entries)?;
    let check = match side {
        Side::Right => a.mul(&x)?,
        Side::Left => x.mul(a)?,
    };
    assert_eq!(check, ElementMatrix::identity(n, a.universe), "solver returned a non-inverse");
    Ok(MatrixInverseOutcome::Found(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Bicyclic, FreeGen};

    fn basis(u: Universe, w: ProductWord) -> Element {
        Element::basis(u, w).unwrap()
    }

    #[test]
    fn p_has_right_inverse_q() {
        let p = basis(Universe::Product, ProductWord::p());
        let out = inverse_search(&p, Side::Right, 1, 0, &Limits::default()).unwrap();
        assert_eq!(out, InverseOutcome::Found(basis(Universe::Product, ProductWord::q())));
    }

    #[test]
    fn q_has_no_right_inverse() {
        let q = basis(Universe::Product, ProductWord::q());
        match inverse_search(&q, Side::Right, 6, 0, &Limits::default()).unwrap() {
            InverseOutcome::Infeasible(c) => {
                assert!(c.rank_augmented > c.rank_system);
                assert_eq!(c.max_len, 6);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        // but q is a left inverse of... p has no left inverse, q has one (p).
        let out = inverse_search(&q, Side::Left, 2, 0, &Limits::default()).unwrap();
        assert_eq!(out, InverseOutcome::Found(basis(Universe::Product, ProductWord::p())));
    }

    #[test]
    fn geometric_series_is_not_finitely_supported() {
        let a = &Element::one(Universe::Free) - &basis(Universe::Free, ProductWord::gen(FreeGen::t(1)));
        for side in [Side::Left, Side::Right] {
            let out = inverse_search(&a, side, 8, 0, &Limits::default()).unwrap();
            assert!(matches!(out, InverseOutcome::Infeasible(_)), "{side:?}");
        }
    }

    #[test]
    fn units_get_the_same_inverse_from_both_sides() {
        let two_e = Element::one(Universe::Product).scale(&Scalar::from_int(2));
        let l = inverse_search(&two_e, Side::Left, 2, 0, &Limits::default()).unwrap();
        let r = inverse_search(&two_e, Side::Right, 2, 0, &Limits::default()).unwrap();
        assert_eq!(l, r);
        assert_eq!(l, InverseOutcome::Found(Element::one(Universe::Product).scale(&Scalar::ratio(1, 2))));
    }

    #[test]
    fn rejects_zero_and_free_group() {
        assert_eq!(
            inverse_search(&Element::zero(Universe::Product), Side::Right, 1, 0, &Limits::default()),
            Err(EmbeddingError::ZeroElement)
        );
    }

    #[test]
    fn matrix_product_with_identity() {
        let u = Universe::Free;
        let t1 = basis(u, ProductWord::gen(FreeGen::t(1)));
        let a = ElementMatrix::new(2, 2, u, vec![Element::one(u), t1.clone(), Element::zero(u), t1]).unwrap();
        let id = ElementMatrix::identity(2, u);
        assert_eq!(id.mul(&a).unwrap(), a);
        assert_eq!(a.mul(&id).unwrap(), a);
        let wide = ElementMatrix::new(1, 2, u, vec![Element::one(u), Element::one(u)]).unwrap();
        assert!(wide.mul(&wide).is_err());
    }

    #[test]
    fn diagonal_q_over_bc_is_not_right_invertible() {
        let q = basis(Universe::Bicyclic, ProductWord::bc(Bicyclic::Q));
        let a = ElementMatrix::diagonal(&[q.clone(), q]).unwrap();
        let out = mat_inverse_search(&a, Side::Right, 4, 0, &Limits::default()).unwrap();
        assert!(matches!(out, MatrixInverseOutcome::Infeasible(_)));
    }

    #[test]
    fn elementary_matrix_inverse() {
        let u = Universe::Free;
        let t1 = basis(u, ProductWord::gen(FreeGen::t(1)));
        let a =
            ElementMatrix::new(2, 2, u, vec![Element::one(u), t1.clone(), Element::zero(u), Element::one(u)]).unwrap();
        let expected =
            ElementMatrix::new(2, 2, u, vec![Element::one(u), -&t1, Element::zero(u), Element::one(u)]).unwrap();
        let MatrixInverseOutcome::Found(x) = mat_inverse_search(&a, Side::Right, 2, 0, &Limits::default()).unwrap()
        else {
            panic!("elementary matrices are invertible");
        };
        assert_eq!(x, expected);
        assert_eq!(x.mul(&a).unwrap(), ElementMatrix::identity(2, u));
        assert_eq!(a.mul(&x).unwrap(), ElementMatrix::identity(2, u));
        let MatrixInverseOutcome::Found(y) = mat_inverse_search(&a, Side::Left, 2, 0, &Limits::default()).unwrap()
        else {
            panic!("left inverse exists too");
        };
        assert_eq!(y, x);
    }

    #[test]
    fn unknown_cap() {
        let a = Element::one(Universe::Free);
        let lim = Limits { max_unknowns: 3, ..Limits::default() };
        assert!(matches!(inverse_search(&a, Side::Right, 3, 1, &lim), Err(EmbeddingError::Limit(_))));
    }
}
