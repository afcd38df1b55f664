//! Automorphism groups of maximal-nilindex algebras and isomorphism testing
//! between two such algebras.
//!
//! Every automorphism is diagonal apart from its last column, with
//! `phi_ii = alpha^(2^(i-1))`, a free entry `beta` at `(1, n)`, and the
//! remaining last-column entries fixed by `alpha`. The last-column entries
//! are kept symbolically as coefficient vectors over the powers
//! `alpha^(2^0), ..., alpha^(2^(n-1))`.

use num_integer::Integer;

use crate::derivations::{index_set, IndexSet};
use crate::error::{Error, Result};
use crate::evolution::{verify_homomorphism, EvolutionAlgebra};
use crate::exact_linear::{MatrixQ, Rational};

/// gcd of `2^(j-1) - 2^i` over the index set.
pub fn eta(pairs: &IndexSet) -> Result<u64> {
    if pairs.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let mut g = 0u64;
    for &(i, j) in pairs {
        let high = 1u64
            .checked_shl((j - 1) as u32)
            .filter(|_| j <= 64)
            .ok_or_else(|| Error::Precondition(format!("index ({i},{j}) too large for eta")))?;
        let term = high - (1u64 << i);
        g = g.gcd(&term);
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlphaDomain {
    /// Any nonzero alpha.
    Free,
    /// `alpha^eta = 1`.
    RootOfUnity { eta: u64 },
}

impl AlphaDomain {
    pub fn name(&self) -> &'static str {
        match self {
            AlphaDomain::Free => "free",
            AlphaDomain::RootOfUnity { .. } => "root_of_unity",
        }
    }
}

/// Symbolic description of `Aut(E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismFamily {
    algebra: EvolutionAlgebra,
    domain: AlphaDomain,
    /// Entry `r` describes `phi_(r+2),n`; its `k`-th coefficient multiplies
    /// `alpha^(2^k)`.
    last_column: Vec<Vec<Rational>>,
}

/// Last column `phi_2n, ..., phi_(n-1),n` from the recurrence
/// `a_(i,i+1) phi_(i+1),n = a_in (alpha^(2^i) - alpha^(2^(n-1)))
///   - sum_{l=i+2}^{n-1} a_il phi_ln`, solved for `i = n-2` down to `1`.
pub fn last_column_by_recurrence(e: &EvolutionAlgebra) -> Vec<Vec<Rational>> {
    let n = e.n();
    if n < 3 {
        return Vec::new();
    }
    // col[l] holds phi_(l+1),n for 1 <= l <= n-2 (0-based rows of the map).
    let mut col: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; n];
    for i in (1..=n - 2).rev() {
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[i] += e.a(i, n);
        coeffs[n - 1] -= e.a(i, n);
        for l in i + 2..n {
            let a_il = e.a(i, l);
            if a_il.is_zero() {
                continue;
            }
            for (c, p) in coeffs.iter_mut().zip(&col[l - 1]) {
                *c -= a_il * p;
            }
        }
        let pivot = e.a(i, i + 1);
        col[i] = coeffs.into_iter().map(|c| c / pivot).collect();
    }
    col.into_iter().skip(1).take(n - 2).collect()
}

/// Closed last column `phi_in = a_(i-1),n / a_(i-1),i (alpha^(2^(i-1)) -
/// alpha^(2^(n-1)))`; agrees with the recurrence only when `I_A` is empty.
pub fn last_column_closed_form(e: &EvolutionAlgebra) -> Vec<Vec<Rational>> {
    let n = e.n();
    (2..n)
        .map(|i| {
            let scale = e.a(i - 1, n) / e.a(i - 1, i);
            let mut coeffs = vec![Rational::zero(); n];
            coeffs[i - 1] += &scale;
            coeffs[n - 1] -= &scale;
            coeffs
        })
        .collect()
}

fn evaluate_powers(coeffs: &[Rational], powers: &[Rational]) -> Rational {
    coeffs
        .iter()
        .zip(powers)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, p)| c * p)
        .sum()
}

/// `alpha^(2^k)` for `k = 0..n`.
fn two_power_ladder(alpha: &Rational, n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n);
    let mut p = alpha.clone();
    for _ in 0..n {
        out.push(p.clone());
        p = &p * &p;
    }
    out
}

pub fn automorphism_family(e: &EvolutionAlgebra) -> Result<AutomorphismFamily> {
    e.require_max_form()?;
    let pairs = index_set(e);
    let domain = if pairs.is_empty() {
        AlphaDomain::Free
    } else {
        AlphaDomain::RootOfUnity { eta: eta(&pairs)? }
    };
    Ok(AutomorphismFamily {
        algebra: e.clone(),
        domain,
        last_column: last_column_by_recurrence(e),
    })
}

impl AutomorphismFamily {
    pub fn n(&self) -> usize {
        self.algebra.n()
    }

    pub fn domain(&self) -> AlphaDomain {
        self.domain
    }

    pub fn eta(&self) -> Option<u64> {
        match self.domain {
            AlphaDomain::Free => None,
            AlphaDomain::RootOfUnity { eta } => Some(eta),
        }
    }

    pub fn algebra(&self) -> &EvolutionAlgebra {
        &self.algebra
    }

    pub fn last_column_coeffs(&self) -> &[Vec<Rational>] {
        &self.last_column
    }

    /// All admissible rational alphas when constrained. The only rational
    /// roots of unity are `1` and `-1`, and `-1` qualifies iff `eta` is
    /// even.
    pub fn alpha_solutions_over_q(&self) -> Option<Vec<Rational>> {
        let eta = self.eta()?;
        let mut out = Vec::new();
        if eta % 2 == 0 {
            out.push(Rational::from_integer(-1));
        }
        out.push(Rational::one());
        Some(out)
    }

    pub fn check_alpha(&self, alpha: &Rational) -> Result<()> {
        if alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        if let Some(eta) = self.eta() {
            let abs = alpha.abs();
            let unit = abs.is_one() && (eta % 2 == 0 || !alpha.is_negative());
            if !unit {
                let power = if abs.is_one() {
                    "-1".to_string()
                } else if eta <= 64 {
                    alpha.pow(eta).to_string()
                } else {
                    format!("{alpha}^{eta}")
                };
                return Err(Error::AlphaConstraint {
                    alpha: alpha.to_string(),
                    eta,
                    power,
                });
            }
        }
        Ok(())
    }

    pub fn last_column_at(&self, alpha: &Rational) -> Vec<Rational> {
        let powers = two_power_ladder(alpha, self.n());
        self.last_column
            .iter()
            .map(|c| evaluate_powers(c, &powers))
            .collect()
    }

    /// Evaluates the family without checking the alpha constraint.
    pub(crate) fn evaluate_unchecked(&self, alpha: &Rational, beta: &Rational) -> MatrixQ {
        let n = self.n();
        let powers = two_power_ladder(alpha, n);
        let mut phi = MatrixQ::diagonal(&powers);
        phi[(0, n - 1)] += beta;
        for (r, coeffs) in self.last_column.iter().enumerate() {
            phi[(r + 1, n - 1)] = evaluate_powers(coeffs, &powers);
        }
        phi
    }

    pub fn build(&self, alpha: &Rational, beta: &Rational) -> Result<MatrixQ> {
        self.check_alpha(alpha)?;
        Ok(self.evaluate_unchecked(alpha, beta))
    }
}

pub fn build_automorphism(
    family: &AutomorphismFamily,
    alpha: &Rational,
    beta: &Rational,
) -> Result<MatrixQ> {
    family.build(alpha, beta)
}

pub fn is_automorphism(e: &EvolutionAlgebra, phi: &MatrixQ) -> Result<bool> {
    if phi.rows() != e.n() || phi.cols() != e.n() {
        return Err(Error::DimensionMismatch {
            expected: e.n(),
            found: if phi.rows() != e.n() { phi.rows() } else { phi.cols() },
        });
    }
    Ok(verify_homomorphism(e, e, phi)? && phi.is_invertible())
}

/// Orders witnesses: smaller `|t|` first, positive before negative.
fn candidate_order(a: &Rational, b: &Rational) -> std::cmp::Ordering {
    a.abs()
        .cmp(&b.abs())
        .then_with(|| a.is_negative().cmp(&b.is_negative()))
}

/// `kappa_i` with `xi_ii = kappa_i t^(2^(i-1))`:
/// `kappa_1 = 1`, `kappa_(i+1) = a'_(i,i+1) / a_(i,i+1) kappa_i^2`.
fn diagonal_scales(source: &EvolutionAlgebra, target: &EvolutionAlgebra) -> Vec<Rational> {
    let mut kappa = vec![Rational::one()];
    for i in 1..source.n() {
        let rho = target.a(i, i + 1) / source.a(i, i + 1);
        let prev = &kappa[i - 1];
        kappa.push(rho * prev * prev);
    }
    kappa
}

/// Values `t = xi_11` compatible with the interior constraints, or `None`
/// when `t` is unconstrained. An empty vector means no isomorphism.
fn candidate_scalings(
    source: &EvolutionAlgebra,
    target: &EvolutionAlgebra,
    kappa: &[Rational],
) -> Result<Option<Vec<Rational>>> {
    let n = source.n();
    let mut candidates: Option<Vec<Rational>> = None;
    for i in 1..n {
        for k in i + 2..n {
            let (a, b) = (source.a(i, k), target.a(i, k));
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return Ok(Some(Vec::new())),
                (false, false) => {}
            }
            // a kappa_k t^(2^(k-1)) = b kappa_i^2 t^(2^i)
            let m = (1u64 << (k - 1)) - (1u64 << i);
            let m = u32::try_from(m)
                .map_err(|_| Error::Precondition(format!("exponent {m} too large")))?;
            let r = b * &kappa[i - 1] * &kappa[i - 1] / (a * &kappa[k - 1]);
            let roots = r.rational_roots(m);
            let next = match candidates {
                None => roots,
                Some(prev) => prev.into_iter().filter(|t| roots.contains(t)).collect(),
            };
            candidates = Some(next);
        }
    }
    Ok(candidates)
}

/// The unique map of the forced shape with `xi_11 = t` and `xi_1n = 0`.
fn forced_shape_map(
    source: &EvolutionAlgebra,
    target: &EvolutionAlgebra,
    kappa: &[Rational],
    t: &Rational,
) -> MatrixQ {
    let n = source.n();
    let powers = two_power_ladder(t, n);
    let x: Vec<Rational> = (0..n).map(|i| &kappa[i] * &powers[i]).collect();
    let mut xi = MatrixQ::diagonal(&x);
    // a_(i,i+1) c_(i+1) = a'_in x_i^2 - a_in x_n - sum_{l=i+2}^{n-1} a_il c_l
    for i in (1..=n.saturating_sub(2)).rev() {
        let mut rhs = target.a(i, n) * &x[i - 1] * &x[i - 1] - source.a(i, n) * &x[n - 1];
        for l in i + 2..n {
            let a_il = source.a(i, l);
            if !a_il.is_zero() {
                rhs -= a_il * &xi[(l - 1, n - 1)];
            }
        }
        xi[(i, n - 1)] = rhs / source.a(i, i + 1);
    }
    xi
}

/// Searches for an isomorphism `source -> target` between two
/// maximal-nilindex algebras of equal dimension.
///
/// Any isomorphism is diagonal apart from its last column. Its diagonal is
/// fixed by `t = xi_11` through `a_(i,i+1) xi_(i+1,i+1) = a'_(i,i+1) xi_ii^2`,
/// the interior constants restrict `t` to finitely many rationals (or leave
/// it free, in which case `t = 1`), and the last column is then forced up
/// to the free `(1, n)` entry, which is set to zero. Each candidate is
/// checked with [`verify_homomorphism`]; the first one to pass in the order
/// `|t|` ascending, positive first, is returned.
pub fn isomorphism_test(
    source: &EvolutionAlgebra,
    target: &EvolutionAlgebra,
) -> Result<Option<MatrixQ>> {
    source.require_max_form()?;
    target.require_max_form()?;
    if source.n() != target.n() {
        return Err(Error::Precondition(format!(
            "algebras have different dimensions {} and {}",
            source.n(),
            target.n()
        )));
    }
    let kappa = diagonal_scales(source, target);
    let mut candidates = candidate_scalings(source, target, &kappa)?
        .unwrap_or_else(|| vec![Rational::one()]);
    candidates.sort_by(candidate_order);
    for t in &candidates {
        let xi = forced_shape_map(source, target, &kappa, t);
        if verify_homomorphism(source, target, &xi)? && xi.is_invertible() {
            return Ok(Some(xi));
        }
    }
    Ok(None)
}

/// Every scaling `t` the isomorphism search tries; `None` when `t` is
/// unconstrained.
pub fn isomorphism_candidates(
    source: &EvolutionAlgebra,
    target: &EvolutionAlgebra,
) -> Result<Option<Vec<Rational>>> {
    source.require_max_form()?;
    target.require_max_form()?;
    if source.n() != target.n() {
        return Err(Error::Precondition("dimension mismatch".into()));
    }
    let kappa = diagonal_scales(source, target);
    candidate_scalings(source, target, &kappa)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Rational {
        Rational::from_integer(x)
    }

    fn example(rows: &[&[i64]]) -> EvolutionAlgebra {
        EvolutionAlgebra::from_i64(rows).unwrap()
    }

    fn e1() -> EvolutionAlgebra {
        example(&[
            &[0, 1, 1, 1, 0],
            &[0, 0, 1, 0, 0],
            &[0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1],
            &[0, 0, 0, 0, 0],
        ])
    }

    fn e2() -> EvolutionAlgebra {
        example(&[
            &[0, 1, 1, 0, 0],
            &[0, 0, 1, 0, 0],
            &[0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1],
            &[0, 0, 0, 0, 0],
        ])
    }

    fn n3() -> EvolutionAlgebra {
        example(&[&[0, 1, 5], &[0, 0, 1], &[0, 0, 0]])
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(&IndexSet::from([(1, 3), (1, 4)])).unwrap(), 2);
        assert_eq!(eta(&IndexSet::from([(1, 3)])).unwrap(), 2);
        assert_eq!(eta(&IndexSet::from([(2, 4)])).unwrap(), 4);
        assert_eq!(eta(&IndexSet::new()), Err(Error::EmptyIndexSet));
    }

    #[test]
    fn chain_family_is_free_with_zero_column() {
        let fam = automorphism_family(&EvolutionAlgebra::chain(5).unwrap()).unwrap();
        assert_eq!(fam.domain(), AlphaDomain::Free);
        assert!(fam.last_column_coeffs().iter().flatten().all(Rational::is_zero));
        assert_eq!(fam.alpha_solutions_over_q(), None);
    }

    #[test]
    fn example_family_is_diagonal_plus_corner() {
        let fam = automorphism_family(&e1()).unwrap();
        assert_eq!(fam.domain(), AlphaDomain::RootOfUnity { eta: 2 });
        assert_eq!(fam.alpha_solutions_over_q(), Some(vec![q(-1), q(1)]));
        let phi = fam.build(&q(-1), &q(7)).unwrap();
        let mut expected = MatrixQ::diagonal(&[q(-1), q(1), q(1), q(1), q(1)]);
        expected[(0, 4)] = q(7);
        assert_eq!(phi, expected);
        assert!(is_automorphism(&e1(), &phi).unwrap());
        assert!(matches!(fam.build(&q(2), &q(0)), Err(Error::AlphaConstraint { eta: 2, .. })));
        assert_eq!(fam.build(&q(0), &q(0)), Err(Error::ZeroAlpha));
    }

    #[test]
    fn three_dimensional_family() {
        let fam = automorphism_family(&n3()).unwrap();
        // phi_23 = 5 (alpha^2 - alpha^4)
        assert_eq!(fam.last_column_coeffs(), &[vec![q(0), q(5), q(-5)]]);
        let phi = fam.build(&q(2), &q(0)).unwrap();
        assert_eq!(phi, MatrixQ::from_i64(&[&[2, 0, 0], &[0, 4, -60], &[0, 0, 16]]));
        assert!(is_automorphism(&n3(), &phi).unwrap());
        let uncorrected = MatrixQ::diagonal(&[q(2), q(4), q(16)]);
        assert!(!is_automorphism(&n3(), &uncorrected).unwrap());
        assert_eq!(fam.build(&q(1), &q(0)).unwrap(), MatrixQ::identity(3));
    }

    #[test]
    fn recurrence_matches_closed_form_without_interior_entries() {
        let e = example(&[&[0, 2, 0, 3], &[0, 0, -1, 4], &[0, 0, 0, 5], &[0; 4]]);
        assert_eq!(last_column_by_recurrence(&e), last_column_closed_form(&e));
    }

    #[test]
    fn isomorphism_examples() {
        assert_eq!(isomorphism_test(&e1(), &e1()).unwrap(), Some(MatrixQ::identity(5)));
        assert_eq!(isomorphism_test(&e1(), &e2()).unwrap(), None);
        assert_eq!(isomorphism_test(&e2(), &e1()).unwrap(), None);

        let e = example(&[&[0, 2, 0, 3], &[0, 0, -1, 4], &[0, 0, 0, 5], &[0; 4]]);
        let chain = EvolutionAlgebra::chain(4).unwrap();
        let xi = isomorphism_test(&e, &chain).unwrap().unwrap();
        assert!(verify_homomorphism(&e, &chain, &xi).unwrap());
        let f = e.canonical_isomorphism().unwrap();
        assert!(is_automorphism(&chain, &f.mul(&xi).unwrap()).unwrap());
    }

    #[test]
    fn isomorphism_preconditions() {
        let zero = EvolutionAlgebra::new(MatrixQ::zeros(3, 3)).unwrap();
        assert!(isomorphism_test(&zero, &n3()).is_err());
        assert!(isomorphism_test(&n3(), &e1()).is_err());
    }

    #[test]
    fn candidate_ordering_prefers_positive() {
        let mut v = vec![q(-2), q(1), q(-1), q(2)];
        v.sort_by(candidate_order);
        assert_eq!(v, vec![q(1), q(-1), q(2), q(-2)]);
    }
}
