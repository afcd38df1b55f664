use super::{MatrixQ, Rational};
use crate::error::{Error, Result};

/// Linear subspace of `Q^d`, stored as the nonzero rows of a reduced
/// row-echelon basis. Two subspaces are equal iff their stored bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = Rational::one();
                v
            })
            .collect();
        Subspace { ambient_dim, basis }
    }

    /// Echelon basis of the span of `vectors`.
    pub fn span<I>(ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let mut rows = Vec::new();
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_zero()) {
                rows.push(v);
            }
        }
        if rows.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let n_rows = rows.len();
        let mut m = MatrixQ::from_flat(n_rows, ambient_dim, rows.into_iter().flatten().collect())?;
        let rank = m.rref_in_place();
        let basis = m.row_vectors().take(rank).map(<[Rational]>::to_vec).collect();
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vec<Rational>> {
        self.basis
    }

    fn check_ambient(&self, dim: usize) -> Result<()> {
        if self.ambient_dim != dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient_dim)?;
        Subspace::span(
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    /// Membership by reducing `v` against the echelon basis.
    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        self.check_ambient(v.len())?;
        let mut residual = v.to_vec();
        for row in &self.basis {
            let pivot = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("echelon rows are nonzero");
            if residual[pivot].is_zero() {
                continue;
            }
            let factor = residual[pivot].clone();
            for (r, b) in residual.iter_mut().zip(row) {
                if !b.is_zero() {
                    *r -= &factor * b;
                }
            }
        }
        Ok(residual.iter().all(Rational::is_zero))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other.ambient_dim)?;
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other.ambient_dim)?;
        Ok(self == other)
    }
}
