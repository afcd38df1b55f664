//! Derivation algebras `Der(E)`: a closed form for the maximal-nilindex
//! class and a Leibniz-rule nullspace solver that works for any evolution
//! algebra.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::evolution::EvolutionAlgebra;
use crate::exact_linear::{MatrixQ, Rational, Subspace};

/// Pairs `(i, j)`, 1-based, with `i + 1 < j < n` and `a_ij != 0`.
pub type IndexSet = BTreeSet<(usize, usize)>;

pub fn index_set(e: &EvolutionAlgebra) -> IndexSet {
    let n = e.n();
    let mut set = IndexSet::new();
    for i in 1..n {
        for j in i + 2..n {
            if !e.a(i, j).is_zero() {
                set.insert((i, j));
            }
        }
    }
    set
}

/// A linear space of `n x n` matrices kept in canonical form: the
/// generators are the nonzero rows of the reduced row-echelon form of the
/// flattened spanning set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixSpace {
    n: usize,
    generators: Vec<MatrixQ>,
    flat: Subspace,
}

impl MatrixSpace {
    pub fn span<I>(n: usize, matrices: I) -> Result<Self>
    where
        I: IntoIterator<Item = MatrixQ>,
    {
        let mut flat = Vec::new();
        for m in matrices {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: if m.rows() != n { m.rows() } else { m.cols() },
                });
            }
            flat.push(m.flatten().to_vec());
        }
        let flat = Subspace::span(n * n, flat)?;
        let generators = flat
            .basis()
            .iter()
            .map(|v| MatrixQ::from_flat(n, n, v.clone()).expect("n*n entries"))
            .collect();
        Ok(MatrixSpace {
            n,
            generators,
            flat,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[MatrixQ] {
        &self.generators
    }

    pub fn contains(&self, m: &MatrixQ) -> Result<bool> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: m.rows(),
            });
        }
        self.flat.contains(m.flatten())
    }

    pub fn contains_space(&self, other: &MatrixSpace) -> Result<bool> {
        self.flat.contains_subspace(&other.flat)
    }

    /// `sum_k coeffs[k] * generators[k]`.
    pub fn combine(&self, coeffs: &[Rational]) -> Result<MatrixQ> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coeffs.len(),
            });
        }
        let mut out = MatrixQ::zeros(self.n, self.n);
        for (c, g) in coeffs.iter().zip(&self.generators) {
            out = out.add(&g.scale(c))?;
        }
        Ok(out)
    }
}

/// The constants `d_1, ..., d_(n-2)` that fix the last column of a
/// two-dimensional derivation algebra: row `i + 1` of the `alpha = 1`
/// generator carries `d_i` in column `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DerivationSpec {
    pub d: Vec<Rational>,
}

impl DerivationSpec {
    pub fn new(d: Vec<Rational>) -> Self {
        DerivationSpec { d }
    }

    /// Reads the derivation parameters back from a space of the shape
    /// `span{ diag(1, 2, ..., 2^(n-1)) + last column, E_1n }`.
    pub fn from_space(space: &MatrixSpace) -> Option<Self> {
        let n = space.n();
        if space.dim() != 2 || n < 3 {
            return None;
        }
        let g = &space.generators()[0];
        if !g[(0, 0)].is_one() || !g[(0, n - 1)].is_zero() {
            return None;
        }
        Some(DerivationSpec {
            d: (1..n - 1).map(|row| g[(row, n - 1)].clone()).collect(),
        })
    }
}

/// Solves the Leibniz rule `d(e_i e_j) = d(e_i) e_j + e_i d(e_j)` for all
/// `i <= j` as a linear system in the `n^2` entries of `d`.
///
/// Coefficient of `e_k` in the identity for the pair `(i, j)`:
/// `[i = j] sum_l a_il d_lk - d_ij a_jk - d_ji a_ik = 0`.
pub fn derivations_solver(e: &EvolutionAlgebra) -> MatrixSpace {
    let n = e.n();
    let var = |row: usize, col: usize| row * n + col;
    let a = e.structure();
    let mut equations: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let mut eq = vec![Rational::zero(); n * n];
                if i == j {
                    for l in 0..n {
                        eq[var(l, k)] += &a[(i, l)];
                    }
                }
                eq[var(i, j)] -= &a[(j, k)];
                eq[var(j, i)] -= &a[(i, k)];
                if eq.iter().any(|x| !x.is_zero()) {
                    equations.push(eq);
                }
            }
        }
    }
    let kernel = if equations.is_empty() {
        Subspace::full(n * n)
    } else {
        let rows = equations.len();
        MatrixQ::from_flat(rows, n * n, equations.into_iter().flatten().collect())
            .expect("rectangular system")
            .nullspace()
    };
    MatrixSpace::span(
        n,
        kernel
            .into_basis()
            .into_iter()
            .map(|v| MatrixQ::from_flat(n, n, v).expect("n*n entries")),
    )
    .expect("n x n generators")
}

/// Powers of two as exact rationals.
pub(crate) fn two_pow(k: usize) -> Rational {
    Rational::from_bigint(num_bigint::BigInt::from(1u8) << k)
}

/// `alpha = 1, beta = 0` member of the two-dimensional derivation algebra:
/// `diag(1, 2, ..., 2^(n-1))` with column-`n` entries
/// `(2^(i-1) - 2^(n-1)) a_(i-1,n) / a_(i-1,i)` in rows `2..n-1`.
fn scaling_derivation(e: &EvolutionAlgebra) -> MatrixQ {
    let n = e.n();
    let mut d = MatrixQ::zeros(n, n);
    for i in 1..=n {
        d[(i - 1, i - 1)] = two_pow(i - 1);
    }
    for i in 2..n {
        let coeff = two_pow(i - 1) - two_pow(n - 1);
        d[(i - 1, n - 1)] = coeff * e.a(i - 1, n) / e.a(i - 1, i);
    }
    d
}

/// `Der(E)` for a maximal-nilindex algebra: `span{E_1n}` when `I_A` is
/// nonempty, otherwise the scaling derivation together with `E_1n`.
pub fn derivations_closed_form(e: &EvolutionAlgebra) -> Result<MatrixSpace> {
    e.require_max_form()?;
    let n = e.n();
    let corner = MatrixQ::unit(n, 0, n - 1);
    if index_set(e).is_empty() {
        MatrixSpace::span(n, [scaling_derivation(e), corner])
    } else {
        MatrixSpace::span(n, [corner])
    }
}

/// `[d1, d2] = d1 d2 - d2 d1` as matrix products.
pub fn lie_bracket(d1: &MatrixQ, d2: &MatrixQ) -> Result<MatrixQ> {
    if !d1.is_square() || d1.rows() != d2.rows() || d1.cols() != d2.cols() {
        return Err(Error::DimensionMismatch {
            expected: d1.rows(),
            found: d2.rows(),
        });
    }
    d1.mul(d2)?.sub(&d2.mul(d1)?)
}

/// Builds the algebra with `a_(i,i+1) = subdiag[i-1]`,
/// `a_in = a_(i,i+1) d_i / (2^i - 2^(n-1))` for `i <= n-2`, and zeros
/// elsewhere. Its derivation algebra carries `alpha d_i` in row `i + 1`,
/// column `n`.
pub fn reconstruct_algebra(
    spec: &DerivationSpec,
    subdiag: &[Rational],
) -> Result<EvolutionAlgebra> {
    let n = subdiag.len() + 1;
    if n < 3 {
        return Err(Error::Precondition(format!(
            "reconstruction needs n >= 3, got {n}"
        )));
    }
    if spec.d.len() != n - 2 {
        return Err(Error::DimensionMismatch {
            expected: n - 2,
            found: spec.d.len(),
        });
    }
    if let Some(i) = subdiag.iter().position(Rational::is_zero) {
        return Err(Error::Precondition(format!(
            "subdiagonal entry {} is zero",
            i + 1
        )));
    }
    let mut a = MatrixQ::zeros(n, n);
    for i in 1..n {
        a[(i - 1, i)] = subdiag[i - 1].clone();
    }
    for i in 1..=n - 2 {
        let denom = two_pow(i) - two_pow(n - 1);
        let entry = &subdiag[i - 1] * &spec.d[i - 1] / denom;
        a[(i - 1, n - 1)] += entry;
    }
    EvolutionAlgebra::new(a)
}
