//! Exact linear algebra over the Gaussian rationals.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

type GaussInt = Complex<BigInt>;

/// Rank of a dense matrix by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled by the lcm of its denominators, which leaves the
/// rank unchanged and lands in `ℤ[i]`. Every intermediate entry is then a
/// minor of that integer matrix, so each division by the previous pivot is
/// exact.
pub fn rank_fraction_free(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<GaussInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, s| {
                use num_integer::Integer;
                acc.lcm(&s.denominator_lcm())
            });
            row.iter().map(|s| s.to_gaussian_integer(&lcm)).collect()
        })
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    debug_assert!(m.iter().all(|r| r.len() == ncols), "ragged matrix");

    let mut prev = GaussInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot_row) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for j in col + 1..ncols {
                let num = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = exact_div(num, &prev);
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

fn exact_div(num: GaussInt, den: &GaussInt) -> GaussInt {
    if den.is_one() {
        return num;
    }
    let quot = &num / den;
    debug_assert_eq!(&quot * den, num, "Bareiss division was not exact");
    quot
}

/// A row of a sparse system: `Σ coeffs[j]·x_j = rhs`.
#[derive(Clone, Debug, Default)]
pub struct SparseRow {
    pub coeffs: BTreeMap<usize, Scalar>,
    pub rhs: Scalar,
}

/// Outcome of [`solve_sparse`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// A particular solution with all free variables set to zero.
    Unique(Vec<Scalar>),
    Underdetermined(Vec<Scalar>),
    /// `rank[A | b] > rank A`.
    Inconsistent {
        rank_system: usize,
        rank_augmented: usize,
    },
}

impl Solution {
    pub fn values(&self) -> Option<&[Scalar]> {
        match self {
            Solution::Unique(v) | Solution::Underdetermined(v) => Some(v),
            Solution::Inconsistent { .. } => None,
        }
    }
}

/// Row-echelon basis built incrementally: each inserted row is reduced
/// against the pivots found so far (keyed by leading column) and, if anything
/// survives, normalized and kept as a new pivot.
#[derive(Debug, Default)]
struct Echelon {
    pivots: HashMap<usize, SparseRow>,
    inconsistent: bool,
}

impl Echelon {
    fn insert(&mut self, mut row: SparseRow) {
        while let Some((&lead, lead_coeff)) = row.coeffs.iter().next() {
            let Some(piv) = self.pivots.get(&lead) else { break };
            let factor = lead_coeff.clone();
            for (j, c) in &piv.coeffs {
                let entry = row.coeffs.entry(*j).or_default();
                *entry -= &(&factor * c);
                if entry.is_zero() {
                    row.coeffs.remove(j);
                }
            }
            row.rhs -= &(&factor * &piv.rhs);
        }
        match row.coeffs.iter().next() {
            None => self.inconsistent |= !row.rhs.is_zero(),
            Some((&lead, lead_coeff)) => {
                let inv = lead_coeff.inv().expect("zero coefficients are pruned");
                for c in row.coeffs.values_mut() {
                    *c = &*c * &inv;
                }
                row.rhs = &row.rhs * &inv;
                self.pivots.insert(lead, row);
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Back substitution in decreasing pivot order, free variables at zero.
    fn back_substitute(&self, ncols: usize) -> Vec<Scalar> {
        let mut x = vec![Scalar::zero(); ncols];
        let mut leads: Vec<usize> = self.pivots.keys().copied().collect();
        leads.sort_unstable_by(|a, b| b.cmp(a));
        for lead in leads {
            let row = &self.pivots[&lead];
            let mut value = row.rhs.clone();
            for (&j, c) in row.coeffs.range(lead + 1..) {
                value -= &(c * &x[j]);
            }
            x[lead] = value;
        }
        x
    }
}

/// Exact Gaussian elimination on sparse rows.
pub fn solve_sparse(ncols: usize, rows: Vec<SparseRow>) -> Solution {
    let mut ech = Echelon::default();
    for row in rows {
        debug_assert!(row.coeffs.keys().all(|&j| j < ncols));
        ech.insert(row);
    }
    let rank = ech.rank();
    if ech.inconsistent {
        return Solution::Inconsistent { rank_system: rank, rank_augmented: rank + 1 };
    }
    let x = ech.back_substitute(ncols);
    if rank == ncols {
        Solution::Unique(x)
    } else {
        Solution::Underdetermined(x)
    }
}

/// Rank by the sparse elimination route; same answer as [`rank_fraction_free`].
pub fn sparse_rank(rows: &[Vec<Scalar>]) -> usize {
    let mut ech = Echelon::default();
    for r in rows {
        ech.insert(SparseRow {
            coeffs: r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect(),
            rhs: Scalar::zero(),
        });
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    /// Oracle: textbook Gauss-Jordan over the field, dense, with divisions.
    fn naive_rank(rows: &[Vec<Scalar>]) -> usize {
        let mut m = rows.to_vec();
        let ncols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
            m.swap(rank, p);
            let inv = m[rank][col].inv().unwrap();
            let pivot_row = m[rank].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != rank && !row[col].is_zero() {
                    let f = &row[col] * &inv;
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        *x -= &(&f * p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn random_matrix(rng: &mut StdRng, r: usize, c: usize, rank_hint: usize) -> Vec<Vec<Scalar>> {
        // product of r×h and h×c factors has rank <= h
        let small = |rng: &mut StdRng| {
            let re = Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
            if rng.gen_bool(0.3) {
                re + Scalar::i() * Scalar::from_int(rng.gen_range(-2..=2))
            } else {
                re
            }
        };
        let a: Vec<Vec<Scalar>> = (0..r).map(|_| (0..rank_hint).map(|_| small(rng)).collect()).collect();
        let b: Vec<Vec<Scalar>> = (0..rank_hint).map(|_| (0..c).map(|_| small(rng)).collect()).collect();
        (0..r).map(|i| (0..c).map(|j| (0..rank_hint).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
    }

    #[test]
    fn identity_and_zero() {
        let id: Vec<Vec<Scalar>> = (0..4).map(|i| (0..4).map(|j| s((i == j) as i64)).collect()).collect();
        assert_eq!(rank_fraction_free(&id), 4);
        let zero = vec![vec![Scalar::zero(); 3]; 2];
        assert_eq!(rank_fraction_free(&zero), 0);
        assert_eq!(rank_fraction_free(&[]), 0);
    }

    #[test]
    fn dependent_rows() {
        let m = vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)], vec![s(0), s(1), s(1)]];
        assert_eq!(rank_fraction_free(&m), 2);
        assert_eq!(naive_rank(&m), 2);
        assert_eq!(sparse_rank(&m), 2);
    }

    #[test]
    fn three_routes_agree_on_random_matrices() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..60 {
            let r = rng.gen_range(1..8);
            let c = rng.gen_range(1..8);
            let h = rng.gen_range(0..=r.min(c));
            let m = random_matrix(&mut rng, r, c, h);
            let expected = naive_rank(&m);
            assert!(expected <= h);
            assert_eq!(rank_fraction_free(&m), expected);
            assert_eq!(sparse_rank(&m), expected);
        }
    }

    #[test]
    fn solves_and_detects_inconsistency() {
        // x + y = 3, x - y = 1
        let rows = vec![
            SparseRow { coeffs: [(0, s(1)), (1, s(1))].into(), rhs: s(3) },
            SparseRow { coeffs: [(0, s(1)), (1, s(-1))].into(), rhs: s(1) },
        ];
        assert_eq!(solve_sparse(2, rows), Solution::Unique(vec![s(2), s(1)]));

        // x + y = 1, 2x + 2y = 3
        let rows = vec![
            SparseRow { coeffs: [(0, s(1)), (1, s(1))].into(), rhs: s(1) },
            SparseRow { coeffs: [(0, s(2)), (1, s(2))].into(), rhs: s(3) },
        ];
        assert_eq!(solve_sparse(2, rows), Solution::Inconsistent { rank_system: 1, rank_augmented: 2 });

        // 0 = 1 with no unknowns touched
        let rows = vec![SparseRow { coeffs: BTreeMap::new(), rhs: s(1) }];
        assert!(matches!(solve_sparse(1, rows), Solution::Inconsistent { .. }));
    }

    #[test]
    fn underdetermined_solution_satisfies_system() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..40 {
            let m = random_matrix(&mut rng, 4, 6, 3);
            let x0: Vec<Scalar> = (0..6).map(|_| s(rng.gen_range(-3..=3))).collect();
            let b: Vec<Scalar> = m.iter().map(|r| r.iter().zip(&x0).map(|(a, x)| a * x).sum()).collect();
            let rows = m
                .iter()
                .zip(&b)
                .map(|(r, rhs)| SparseRow {
                    coeffs: r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect(),
                    rhs: rhs.clone(),
                })
                .collect();
            let sol = solve_sparse(6, rows);
            let x = sol.values().expect("consistent by construction");
            for (r, rhs) in m.iter().zip(&b) {
                let lhs: Scalar = r.iter().zip(x).map(|(a, v)| a * v).sum();
                assert_eq!(&lhs, rhs);
            }
        }
    }
}
