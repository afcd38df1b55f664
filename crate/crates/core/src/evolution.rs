//! Evolution algebras given by a structural matrix in a natural basis.
//!
//! Indices in the `a(i, j)` accessor are 1-based to match the usual
//! notation `e_i^2 = sum_k a_ik e_k`; everything else is 0-based.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_linear::{MatrixQ, Rational, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvolutionAlgebra {
    structure: MatrixQ,
}

/// Coordinates of an element over the natural basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement(pub Vec<Rational>);

impl AlgebraElement {
    pub fn basis(n: usize, i: usize) -> Self {
        let mut coords = vec![Rational::zero(); n];
        coords[i] = Rational::one();
        AlgebraElement(coords)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Nilindex {
    /// `E^m = 0` and `E^(m-1) != 0`.
    Nilpotent(usize),
    /// `E^cap` is still nonzero.
    NotNilpotent { cap: usize },
}

impl fmt::Display for Nilindex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nilindex::Nilpotent(m) => write!(f, "nilpotent({m})"),
            Nilindex::NotNilpotent { cap } => write!(f, "not_nilpotent(cap {cap})"),
        }
    }
}

/// The sequence `E^1, E^2, ...` up to the first zero term or the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerChain {
    /// `chain[k - 1]` is `E^k`.
    pub chain: Vec<Subspace>,
    pub verdict: Nilindex,
}

impl PowerChain {
    pub fn term(&self, k: usize) -> Option<&Subspace> {
        k.checked_sub(1).and_then(|i| self.chain.get(i))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(Subspace::dim).collect()
    }
}

impl EvolutionAlgebra {
    pub fn new(structure: MatrixQ) -> Result<Self> {
        if !structure.is_square() {
            return Err(Error::Shape(format!(
                "structural matrix must be square, got {}x{}",
                structure.rows(),
                structure.cols()
            )));
        }
        if structure.rows() < 2 {
            return Err(Error::Shape(format!(
                "dimension must be at least 2, got {}",
                structure.rows()
            )));
        }
        Ok(EvolutionAlgebra { structure })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(MatrixQ::from_i64(rows))
    }

    /// `e_i^2 = e_(i+1)` for `i < n`, `e_n^2 = 0`.
    pub fn chain(n: usize) -> Result<Self> {
        Self::new(MatrixQ::from_fn(n, n, |i, j| {
            if j == i + 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        }))
    }

    pub fn n(&self) -> usize {
        self.structure.rows()
    }

    pub fn structure(&self) -> &MatrixQ {
        &self.structure
    }

    /// Structural constant `a_ij`, 1-based.
    pub fn a(&self, i: usize, j: usize) -> &Rational {
        &self.structure[(i - 1, j - 1)]
    }

    /// Coordinates of `e_i^2` (0-based `i`).
    pub fn square_of_basis(&self, i: usize) -> &[Rational] {
        self.structure.row(i)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: len,
            });
        }
        Ok(())
    }

    /// `(uv)_k = sum_i u_i v_i a_ik`.
    pub fn multiply(&self, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
        Ok(AlgebraElement(self.multiply_coords(&u.0, &v.0)?))
    }

    pub fn multiply_coords(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(u.len())?;
        self.check_len(v.len())?;
        let weights: Vec<Rational> = u.iter().zip(v).map(|(a, b)| a * b).collect();
        self.structure.apply(&weights)
    }

    /// Span of all products `s t` with `s`, `t` basis vectors of the factors.
    fn subspace_product(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut products = Vec::with_capacity(s.dim() * t.dim());
        for x in s.basis() {
            for y in t.basis() {
                products.push(self.multiply_coords(x, y).expect("ambient dimension n"));
            }
        }
        Subspace::span(self.n(), products).expect("ambient dimension n")
    }

    /// Computes `E^k = sum_{i=1}^{floor(k/2)} E^i E^(k-i)` until a term
    /// vanishes or `E^cap` has been computed.
    pub fn power_chain(&self, cap: usize) -> PowerChain {
        let cap = cap.max(2);
        let n = self.n();
        let mut chain = vec![Subspace::full(n)];
        for k in 2..=cap {
            let mut term = Subspace::zero(n);
            for i in 1..=k / 2 {
                let product = self.subspace_product(&chain[i - 1], &chain[k - i - 1]);
                term = term.sum(&product).expect("ambient dimension n");
            }
            let vanished = term.is_zero();
            chain.push(term);
            if vanished {
                return PowerChain {
                    chain,
                    verdict: Nilindex::Nilpotent(k),
                };
            }
        }
        PowerChain {
            chain,
            verdict: Nilindex::NotNilpotent { cap },
        }
    }

    /// The largest possible index of nilpotency in dimension `n`.
    pub fn max_nilindex(n: usize) -> usize {
        (1usize << (n - 1)) + 1
    }

    pub fn power_chain_to_bound(&self) -> PowerChain {
        self.power_chain(Self::max_nilindex(self.n()))
    }

    pub fn nilindex(&self) -> Nilindex {
        self.power_chain_to_bound().verdict
    }

    pub fn rank(&self) -> usize {
        self.structure.rank()
    }

    /// Dimension of `E^2`, computed directly as a span of products.
    pub fn square_dim(&self) -> usize {
        let squares = (0..self.n()).map(|i| self.square_of_basis(i).to_vec());
        Subspace::span(self.n(), squares).expect("ambient").dim()
    }

    /// First reason the structural matrix is not strictly upper triangular
    /// with a nonvanishing superdiagonal, if any.
    pub fn max_form_violation(&self) -> Option<String> {
        let n = self.n();
        for i in 1..=n {
            for j in 1..=i {
                if !self.a(i, j).is_zero() {
                    return Some(format!(
                        "structural matrix is not strictly upper triangular (a_{i}{j} = {})",
                        self.a(i, j)
                    ));
                }
            }
        }
        if let Some(j) = (1..=n).find(|&j| !self.a(n, j).is_zero()) {
            return Some(format!("row {n} must vanish (a_{n}{j} != 0)"));
        }
        if let Some(i) = (1..n).find(|&i| self.a(i, i + 1).is_zero()) {
            return Some(format!("superdiagonal entry a_{i},{} vanishes", i + 1));
        }
        None
    }

    pub fn is_max_nilindex_form(&self) -> bool {
        self.max_form_violation().is_none()
    }

    pub fn require_max_form(&self) -> Result<()> {
        match self.max_form_violation() {
            None => Ok(()),
            Some(reason) => Err(Error::Precondition(format!(
                "algebra is not in maximal-nilindex form: {reason}"
            ))),
        }
    }

    /// Basis change onto the standard chain `f_i^2 = f_(i+1)`.
    ///
    /// Row `i` of the result holds the e-coordinates of `f_(i+1)`:
    /// `f_1 = e_1` and `f_(i+1) = (prod_{k=1}^{i-1} a_{k,k+1}^(2^(i-k))) e_i^2`.
    /// Read as a map it sends the chain algebra into `self`; its inverse maps
    /// `self` onto the chain.
    pub fn canonical_isomorphism(&self) -> Result<MatrixQ> {
        let n = self.n();
        for i in 1..=n {
            for j in 1..=n {
                let allowed = i < n && (j == i + 1 || j == n);
                if !allowed && !self.a(i, j).is_zero() {
                    return Err(Error::Precondition(format!(
                        "rows may only use columns i+1 and n, but a_{i},{j} = {}",
                        self.a(i, j)
                    )));
                }
            }
        }
        if let Some(i) = (1..n).find(|&i| self.a(i, i + 1).is_zero()) {
            return Err(Error::Precondition(format!(
                "superdiagonal entry a_{i},{} vanishes",
                i + 1
            )));
        }
        let mut basis = MatrixQ::zeros(n, n);
        basis[(0, 0)] = Rational::one();
        for i in 1..n {
            let factor: Rational = (1..i)
                .map(|k| self.a(k, k + 1).pow_two_power((i - k) as u32))
                .product();
            for (j, x) in self.square_of_basis(i - 1).iter().enumerate() {
                basis[(i, j)] = &factor * x;
            }
        }
        Ok(basis)
    }
}

/// Checks `psi(e_i e_j) = psi(e_i) psi(e_j)` on all basis pairs `i <= j`,
/// with `psi` mapping `source` into `target`.
pub fn verify_homomorphism(
    source: &EvolutionAlgebra,
    target: &EvolutionAlgebra,
    psi: &MatrixQ,
) -> Result<bool> {
    if psi.rows() != source.n() {
        return Err(Error::DimensionMismatch {
            expected: source.n(),
            found: psi.rows(),
        });
    }
    if psi.cols() != target.n() {
        return Err(Error::DimensionMismatch {
            expected: target.n(),
            found: psi.cols(),
        });
    }
    let zero = vec![Rational::zero(); target.n()];
    for i in 0..source.n() {
        for j in i..source.n() {
            let lhs = if i == j {
                psi.apply(source.square_of_basis(i))?
            } else {
                zero.clone()
            };
            let rhs = target.multiply_coords(psi.row(i), psi.row(j))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Rational {
        Rational::from_integer(x)
    }

    fn el(xs: &[i64]) -> AlgebraElement {
        AlgebraElement(xs.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn multiply_on_chain() {
        let e = EvolutionAlgebra::chain(3).unwrap();
        assert_eq!(e.multiply(&el(&[1, 0, 0]), &el(&[0, 1, 0])).unwrap(), el(&[0, 0, 0]));
        assert_eq!(e.multiply(&el(&[1, 0, 0]), &el(&[1, 0, 0])).unwrap(), el(&[0, 1, 0]));
        assert_eq!(e.multiply(&el(&[1, 1, 0]), &el(&[1, 1, 0])).unwrap(), el(&[0, 1, 1]));
        assert!(e.multiply(&el(&[1, 1]), &el(&[1, 1, 0])).is_err());
    }

    #[test]
    fn chain_algebra_power_sequence() {
        let e = EvolutionAlgebra::chain(3).unwrap();
        let pc = e.power_chain(20);
        let span = |vs: &[&[i64]]| {
            Subspace::span(3, vs.iter().map(|v| v.iter().map(|&x| q(x)).collect())).unwrap()
        };
        assert_eq!(pc.term(2).unwrap(), &span(&[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(pc.term(3).unwrap(), &span(&[&[0, 0, 1]]));
        assert_eq!(pc.term(4).unwrap(), &span(&[&[0, 0, 1]]));
        assert!(pc.term(5).unwrap().is_zero());
        assert_eq!(pc.verdict, Nilindex::Nilpotent(5));
        assert_eq!(e.nilindex(), Nilindex::Nilpotent(5));
    }

    #[test]
    fn zero_algebra_is_nilpotent_of_index_two() {
        let e = EvolutionAlgebra::new(MatrixQ::zeros(3, 3)).unwrap();
        assert_eq!(e.nilindex(), Nilindex::Nilpotent(2));
        assert!(!e.is_max_nilindex_form());
    }

    #[test]
    fn idempotent_never_vanishes() {
        let e = EvolutionAlgebra::from_i64(&[&[1, 0], &[0, 0]]).unwrap();
        let pc = e.power_chain(3);
        assert_eq!(pc.verdict, Nilindex::NotNilpotent { cap: 3 });
        let e1 = Subspace::span(2, [vec![q(1), q(0)]]).unwrap();
        assert!(pc.chain.iter().all(|s| s.contains_subspace(&e1).unwrap()));
        assert_eq!(e.nilindex(), Nilindex::NotNilpotent { cap: 3 });
    }

    #[test]
    fn max_form_recognition() {
        assert!(EvolutionAlgebra::chain(4).unwrap().is_max_nilindex_form());
        let broken = EvolutionAlgebra::from_i64(&[&[0, 0, 1], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        assert!(!broken.is_max_nilindex_form());
        let lower = EvolutionAlgebra::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert!(lower.max_form_violation().unwrap().contains("triangular"));
        assert!(lower.require_max_form().is_err());
    }

    #[test]
    fn canonical_isomorphism_examples() {
        let e = EvolutionAlgebra::from_i64(&[&[0, 3], &[0, 0]]).unwrap();
        assert_eq!(e.canonical_isomorphism().unwrap(), MatrixQ::from_i64(&[&[1, 0], &[0, 3]]));

        let e = EvolutionAlgebra::from_i64(&[&[0, 2, 7], &[0, 0, 5], &[0, 0, 0]]).unwrap();
        let f = e.canonical_isomorphism().unwrap();
        assert_eq!(f, MatrixQ::from_i64(&[&[1, 0, 0], &[0, 2, 7], &[0, 0, 20]]));
        let chain = EvolutionAlgebra::chain(3).unwrap();
        assert!(verify_homomorphism(&chain, &e, &f).unwrap());
        assert!(verify_homomorphism(&e, &chain, &f.inverse().unwrap()).unwrap());

        let c = EvolutionAlgebra::chain(5).unwrap();
        assert_eq!(c.canonical_isomorphism().unwrap(), MatrixQ::identity(5));
    }

    #[test]
    fn canonical_isomorphism_preconditions() {
        let interior =
            EvolutionAlgebra::from_i64(&[&[0, 1, 1, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0; 4]]).unwrap();
        assert!(matches!(interior.canonical_isomorphism(), Err(Error::Precondition(_))));
        let gap = EvolutionAlgebra::from_i64(&[&[0, 0, 1], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        assert!(matches!(gap.canonical_isomorphism(), Err(Error::Precondition(_))));
    }

    #[test]
    fn homomorphism_checks() {
        let e = EvolutionAlgebra::chain(3).unwrap();
        assert!(verify_homomorphism(&e, &e, &MatrixQ::identity(3)).unwrap());
        let swap = MatrixQ::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(!verify_homomorphism(&e, &e, &swap).unwrap());
        assert!(verify_homomorphism(&e, &e, &MatrixQ::identity(2)).is_err());
    }
}
