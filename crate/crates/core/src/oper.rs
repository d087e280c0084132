//! A truncated finite-dimensional representation of `ℂ(BC*S∞)` on `ℂ^d`.
//!
//! `q` acts as the forward shift `S` (`S e_i = e_{i+1}`, `S e_{d-1} = 0`),
//! `p` as its adjoint, and `tₙ` as a fixed dense matrix `Rₙ`. The relation
//! `pq = e` holds away from the top corner only: no finite-dimensional
//! algebra contains a non-unitary isometry, so the contract here is exactness
//! on interior basis vectors plus an explicit report of the boundary defect.
//!
//! All products use a fixed summation order, so identical configurations
//! give bitwise-identical matrices and norms.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::Element;
use crate::limits::{LimitError, Limits};
use crate::words::{Bicyclic, FreeGen, Item, Letter, ProductWord, Universe};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OperError {
    #[error("dimension must be at least 8, got {0}")]
    DimTooSmall(usize),
    #[error("generator index {index} is outside the representation (max {max})")]
    IndexOutOfRange { index: u32, max: u32 },
    #[error("boundary width {l} must be below half the dimension {dim}")]
    BoundaryTooWide { l: usize, dim: usize },
    #[error("cannot represent elements of {0}")]
    UnsupportedUniverse(Universe),
    #[error(transparent)]
    Limit(#[from] LimitError),
}

/// A square complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        DenseOperator { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let data = (0..dim * dim).map(|idx| f(idx / dim, idx % dim)).collect();
        DenseOperator { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `self · rhs`, accumulating over `k` in increasing order and skipping
    /// exact zeros of `self` (so products of shifts stay exactly 0/1).
    pub fn matmul(&self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = DenseOperator::zeros(d);
        for i in 0..d {
            let out_row = &mut out.data[i * d..(i + 1) * d];
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let rhs_row = &rhs.data[k * d..(k + 1) * d];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        DenseOperator { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        DenseOperator { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: Complex64) -> DenseOperator {
        DenseOperator { dim: self.dim, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn adjoint(&self) -> DenseOperator {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        self.data.chunks(self.dim).map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum()).collect()
    }

    /// `A† v` without forming the adjoint.
    fn apply_adjoint(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for (row, x) in self.data.chunks(d).zip(v) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a.conj() * x;
            }
        }
        out
    }

    /// Column `j`, i.e. the image of `e_j`.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }

    pub fn max_abs_diff(&self, rhs: &DenseOperator) -> f64 {
        self.data.iter().zip(&rhs.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Parameters of the truncated representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepConfig {
    pub dim: usize,
    /// Generators `t₁ … t_N` are represented.
    pub max_index: u32,
}

impl Default for RepConfig {
    fn default() -> Self {
        RepConfig { dim: 256, max_index: 20 }
    }
}

/// Generator images of the truncated representation.
#[derive(Clone, Debug)]
pub struct Representation {
    config: RepConfig,
    shift: DenseOperator,
    backshift: DenseOperator,
    gens: Vec<DenseOperator>,
}

/// `Rₙ[j][k] = (cos(n + 3j + 7k) + i·sin(2n + 5j + 11k)) / √d`.
fn fill(n: u32, dim: usize) -> DenseOperator {
    let scale = 1.0 / (dim as f64).sqrt();
    let n = f64::from(n);
    DenseOperator::from_fn(dim, |j, k| {
        let (j, k) = (j as f64, k as f64);
        Complex64::new((n + 3.0 * j + 7.0 * k).cos(), (2.0 * n + 5.0 * j + 11.0 * k).sin()) * scale
    })
}

pub fn build_rep(config: &RepConfig, limits: &Limits) -> Result<Representation, OperError> {
    if config.dim < 8 {
        return Err(OperError::DimTooSmall(config.dim));
    }
    Limits::check("representation dimension", config.dim, limits.max_dim)?;
    let d = config.dim;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let shift = DenseOperator::from_fn(d, |i, j| if i == j + 1 { one } else { zero });
    let backshift = shift.adjoint();
    let gens = (1..=config.max_index).map(|n| fill(n, d)).collect();
    Ok(Representation { config: config.clone(), shift, backshift, gens })
}

impl Representation {
    pub fn config(&self) -> &RepConfig {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.config.dim
    }

    /// `ρ(δ_q) = S`.
    pub fn q(&self) -> &DenseOperator {
        &self.shift
    }

    /// `ρ(δ_p) = S†`.
    pub fn p(&self) -> &DenseOperator {
        &self.backshift
    }

    /// `ρ(δ_{tₙ}) = Rₙ`.
    pub fn t(&self, n: u32) -> Result<&DenseOperator, OperError> {
        n.checked_sub(1)
            .and_then(|i| self.gens.get(i as usize))
            .ok_or(OperError::IndexOutOfRange { index: n, max: self.config.max_index })
    }

    pub fn generator(&self, g: FreeGen) -> Result<DenseOperator, OperError> {
        let r = self.t(g.index())?;
        Ok(if g.starred { r.adjoint() } else { r.clone() })
    }

    /// `ρ(δ_{q^a p^b}) = S^a (S†)^b`, as a product of letter matrices.
    pub fn bicyclic(&self, b: Bicyclic) -> DenseOperator {
        b.letters().fold(DenseOperator::identity(self.dim()), |acc, l| acc.matmul(self.letter_bc(l)))
    }

    fn letter_bc(&self, l: Letter) -> &DenseOperator {
        match l {
            Letter::P => &self.backshift,
            Letter::Q => &self.shift,
            Letter::Gen(_) => unreachable!("bicyclic letters are p and q"),
        }
    }

    /// Product of the letter matrices, left to right, without any rewriting.
    pub fn letters(&self, letters: &[Letter]) -> Result<DenseOperator, OperError> {
        let mut acc = DenseOperator::identity(self.dim());
        for &l in letters {
            acc = match l {
                Letter::Gen(g) => acc.matmul(&self.generator(g)?),
                bc => acc.matmul(self.letter_bc(bc)),
            };
        }
        Ok(acc)
    }

    /// `ρ(δ_w)`: the product of the item images of the normal form.
    pub fn word(&self, w: &ProductWord) -> Result<DenseOperator, OperError> {
        let mut acc = DenseOperator::identity(self.dim());
        for item in w.items() {
            let op = match item {
                Item::Bc(b) => self.bicyclic(*b),
                Item::Free(g) => self.generator(*g)?,
            };
            acc = acc.matmul(&op);
        }
        Ok(acc)
    }

    pub fn element(&self, x: &Element) -> Result<DenseOperator, OperError> {
        if x.universe() == Universe::FreeGroup {
            return Err(OperError::UnsupportedUniverse(x.universe()));
        }
        let mut acc = DenseOperator::zeros(self.dim());
        for (w, c) in x.terms() {
            let (re, im) = c.to_f64_pair();
            acc = acc.add(&self.word(w)?.scale(Complex64::new(re, im)));
        }
        Ok(acc)
    }
}

/// Largest singular value estimate from [`op_norm`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormEstimate {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub const NORM_TOLERANCE: f64 = 1e-10;
pub const NORM_MAX_ITERATIONS: usize = 10_000;

fn normalize(v: &mut [Complex64]) -> f64 {
    let n = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

/// Operator norm by power iteration on `A†A`, starting from the fixed vector
/// `v_i ∝ 1 + i/d`. Stops once the relative change of the estimate drops
/// below [`NORM_TOLERANCE`], or after [`NORM_MAX_ITERATIONS`] (flagged).
pub fn op_norm(a: &DenseOperator) -> NormEstimate {
    let d = a.dim();
    let mut v: Vec<Complex64> = (0..d).map(|i| Complex64::new(1.0 + i as f64 / d as f64, 0.0)).collect();
    normalize(&mut v);
    let mut estimate = 0.0;
    for iter in 1..=NORM_MAX_ITERATIONS {
        let av = a.apply(&v);
        let next = av.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if next == 0.0 {
            return NormEstimate { value: 0.0, iterations: iter, converged: true };
        }
        let done = (next - estimate).abs() < NORM_TOLERANCE * next;
        estimate = next;
        if done {
            return NormEstimate { value: estimate, iterations: iter, converged: true };
        }
        v = a.apply_adjoint(&av);
        if normalize(&mut v) == 0.0 {
            return NormEstimate { value: estimate, iterations: iter, converged: true };
        }
    }
    NormEstimate { value: estimate, iterations: NORM_MAX_ITERATIONS, converged: false }
}

/// `γₙ = 1 / (n ‖ρ(δ_{tₙ})‖)` with its underlying norm estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GammaEstimate {
    pub gamma: f64,
    pub norm: NormEstimate,
}

pub fn gamma_from_rep(n: u32, rep: &Representation) -> Result<GammaEstimate, OperError> {
    let norm = op_norm(rep.t(n)?);
    Ok(GammaEstimate { gamma: 1.0 / (f64::from(n) * norm.value), norm })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: u32,
    pub gamma: f64,
    /// `‖ρ(aₙ) − ρ(δ_p)‖` with `aₙ = δ_p + γₙ δ_{tₙ}`.
    pub norm_an_minus_p: f64,
    pub iters: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub dim: usize,
    pub rows: Vec<ConvergenceRow>,
}

/// Rows `n = 1..=n_max` of `‖ρ(aₙ) − ρ(δ_p)‖`, which should equal `1/n`.
pub fn convergence_report(n_max: u32, rep: &Representation) -> Result<ConvergenceReport, OperError> {
    let rows = (1..=n_max)
        .map(|n| {
            let g = gamma_from_rep(n, rep)?;
            let a_n = rep.p().add(&rep.t(n)?.scale(Complex64::new(g.gamma, 0.0)));
            let diff = op_norm(&a_n.sub(rep.p()));
            Ok(ConvergenceRow {
                n,
                gamma: g.gamma,
                norm_an_minus_p: diff.value,
                iters: diff.iterations,
                converged: g.norm.converged && diff.converged,
            })
        })
        .collect::<Result<_, OperError>>()?;
    Ok(ConvergenceReport { dim: rep.dim(), rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    pub dim: usize,
    pub l: usize,
    pub words_checked: usize,
    pub vectors_checked: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

/// For every string of `p`/`q` letters of length `<= l`, multiplies the letter
/// matrices and checks that every interior basis vector `e_i`
/// (`l <= i < d - l`) is sent exactly to `e_{i-b+a}`, where `q^a p^b` is the
/// bicyclic normal form of the string. Comparison is exact, not toleranced.
pub fn boundary_exactness_check(l: usize, rep: &Representation) -> Result<BoundaryReport, OperError> {
    let d = rep.dim();
    if 2 * l >= d {
        return Err(OperError::BoundaryTooWide { l, dim: d });
    }
    let mut words_checked = 0;
    let mut failure = None;
    let mut strings: Vec<Vec<Letter>> = vec![Vec::new()];
    'outer: for _ in 0..=l {
        let mut longer = Vec::new();
        for s in &strings {
            words_checked += 1;
            let op = rep.letters(s)?;
            let b = s
                .iter()
                .fold(Bicyclic::IDENTITY, |acc, &x| acc.mul(if x == Letter::P { Bicyclic::P } else { Bicyclic::Q }));
            for i in l..d - l {
                let target = i + b.q_exp as usize - b.p_exp as usize;
                let col = op.column(i);
                let exact = col.iter().enumerate().all(|(r, z)| {
                    let want = if r == target { 1.0 } else { 0.0 };
                    z.re == want && z.im == 0.0
                });
                if !exact {
                    let text: Vec<String> = s.iter().map(ToString::to_string).collect();
                    failure = Some(format!("word {:?} on e_{i}: expected e_{target}", text.join(" ")));
                    break 'outer;
                }
            }
            if s.len() < l {
                for x in [Letter::P, Letter::Q] {
                    let mut t = s.clone();
                    t.push(x);
                    longer.push(t);
                }
            }
        }
        strings = longer;
    }
    Ok(BoundaryReport { dim: d, l, words_checked, vectors_checked: d - 2 * l, passed: failure.is_none(), failure })
}

/// The isometry/non-unitary gap as seen by the truncation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InfinitenessWitness {
    /// Columns `j` where `ρ(p)ρ(q) − I` is nonzero (only the top corner `d − 1`).
    pub pq_defect_columns: Vec<usize>,
    /// `‖ρ(q)ρ(p) − I‖`.
    pub qp_minus_identity_norm: f64,
    /// `‖ρ(q)ρ(p) e₀‖`.
    pub qp_on_e0: f64,
}

pub fn infiniteness_witness(rep: &Representation) -> InfinitenessWitness {
    let d = rep.dim();
    let id = DenseOperator::identity(d);
    let pq = rep.p().matmul(rep.q()).sub(&id);
    let pq_defect_columns = (0..d).filter(|&j| pq.column(j).iter().any(|z| z.norm() != 0.0)).collect();
    let qp = rep.q().matmul(rep.p());
    let qp_on_e0 = qp.column(0).iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    InfinitenessWitness { pq_defect_columns, qp_minus_identity_norm: op_norm(&qp.sub(&id)).value, qp_on_e0 }
}
