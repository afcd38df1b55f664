//! Local derivations, 2-local derivations and local automorphisms.
//!
//! Each property has a definitional checker (ground truth) and a shortcut
//! through the structure theorems; the two are reported separately so they
//! can be compared.

mod poly;
mod strata;

use std::collections::HashMap;

use rand::Rng;

use crate::automorphisms::{automorphism_family, is_automorphism, AlphaDomain, AutomorphismFamily};
use crate::derivations::{derivations_solver, MatrixSpace};
use crate::error::{Error, Result};
use crate::evolution::EvolutionAlgebra;
use crate::exact_linear::{MatrixQ, Rational};
use strata::StrataAnalysis;

/// Default number of random points tried by the sampling falsifiers.
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Accepted => "accepted",
            Verdict::Rejected => "rejected",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Accepted
        } else {
            Verdict::Rejected
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Theorem,
    Definitional,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Theorem => "theorem",
            Method::Definitional => "definitional",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Point(Vec<Rational>),
    Pair(Vec<Rational>, Vec<Rational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalVerdict {
    pub verdict: Verdict,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl LocalVerdict {
    pub fn accepted(method: Method) -> Self {
        LocalVerdict {
            verdict: Verdict::Accepted,
            method,
            witness: None,
        }
    }

    pub fn rejected(method: Method, witness: Option<Witness>) -> Self {
        LocalVerdict {
            verdict: Verdict::Rejected,
            method,
            witness,
        }
    }

    pub fn is_accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }
}

fn check_map(e: &EvolutionAlgebra, m: &MatrixQ) -> Result<()> {
    let n = e.n();
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: if m.rows() != n { m.rows() } else { m.cols() },
        });
    }
    Ok(())
}

/// Random point in `Q^n`: a random nonempty support with entries drawn from
/// `[-9, 9] \ {0}`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Rational> {
    loop {
        let point: Vec<Rational> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    let mut v = 0;
                    while v == 0 {
                        v = rng.gen_range(-9i64..=9);
                    }
                    Rational::from_integer(v)
                } else {
                    Rational::zero()
                }
            })
            .collect();
        if point.iter().any(|x| !x.is_zero()) {
            return point;
        }
    }
}

/// All `e_i`, all `e_i + e_j` (`i < j`) and the all-ones vector.
pub fn probe_points(n: usize) -> Vec<Vec<Rational>> {
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        v
    };
    let mut out: Vec<Vec<Rational>> = (0..n).map(unit).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = unit(i);
            v[j] = Rational::one();
            out.push(v);
        }
    }
    out.push(vec![Rational::one(); n]);
    out
}

/// Rank of a list of row vectors.
fn rank_of(rows: &[Vec<Rational>], width: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let flat = rows.iter().flatten().cloned().collect();
    MatrixQ::from_flat(rows.len(), width, flat)
        .expect("rectangular")
        .rank()
}

/// Whether `w` is a combination of the `images`: rank does not grow.
fn in_span(images: &[Vec<Rational>], w: &[Rational]) -> bool {
    if w.iter().all(Rational::is_zero) {
        return true;
    }
    let width = w.len();
    let mut with = images.to_vec();
    with.push(w.to_vec());
    rank_of(images, width) == rank_of(&with, width)
}

/// `delta(u)` lies in `{ d(u) : d in der }`.
pub fn pointwise_local_derivation(der: &MatrixSpace, delta: &MatrixQ, u: &[Rational]) -> Result<bool> {
    let images = der
        .generators()
        .iter()
        .map(|g| g.apply(u))
        .collect::<Result<Vec<_>>>()?;
    Ok(in_span(&images, &delta.apply(u)?))
}

/// Precomputed strata for one algebra, so that many candidate maps can be
/// decided against the same derivation algebra.
#[derive(Clone, Debug)]
pub struct LocalDerivationChecker {
    der: MatrixSpace,
    analysis: StrataAnalysis,
    samples: usize,
}

impl LocalDerivationChecker {
    pub fn new(e: &EvolutionAlgebra) -> Result<Self> {
        e.require_max_form()?;
        let der = derivations_solver(e);
        let analysis = StrataAnalysis::new(e.n(), der.generators())?;
        Ok(LocalDerivationChecker {
            der,
            analysis,
            samples: DEFAULT_SAMPLES,
        })
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn der(&self) -> &MatrixSpace {
        &self.der
    }

    /// Exact decision over every support stratum, followed by the random
    /// falsifier when the exact step accepts.
    pub fn check<R: Rng + ?Sized>(&self, delta: &MatrixQ, rng: &mut R) -> Result<LocalVerdict> {
        let n = self.der.n();
        if delta.rows() != n || delta.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: delta.rows(),
            });
        }
        if let Some(u) = self.analysis.find_violation(delta) {
            return Ok(LocalVerdict::rejected(Method::Definitional, Some(Witness::Point(u))));
        }
        for _ in 0..self.samples {
            let u = random_point(rng, n);
            if !pointwise_local_derivation(&self.der, delta, &u)? {
                return Ok(LocalVerdict::rejected(Method::Definitional, Some(Witness::Point(u))));
            }
        }
        Ok(LocalVerdict::accepted(Method::Definitional))
    }

    /// Every local derivation, as a matrix space.
    pub fn space(&self) -> MatrixSpace {
        let n = self.der.n();
        let flat = self.analysis.solution_space();
        MatrixSpace::span(
            n,
            flat.basis()
                .iter()
                .map(|v| MatrixQ::from_flat(n, n, v.clone()).expect("n*n entries")),
        )
        .expect("square generators")
    }
}

pub fn is_local_derivation<R: Rng + ?Sized>(
    e: &EvolutionAlgebra,
    delta: &MatrixQ,
    rng: &mut R,
) -> Result<LocalVerdict> {
    check_map(e, delta)?;
    LocalDerivationChecker::new(e)?.check(delta, rng)
}

pub fn local_derivation_space(e: &EvolutionAlgebra) -> Result<MatrixSpace> {
    Ok(LocalDerivationChecker::new(e)?.space())
}

/// The two-dimensional families stated for `n = 2`:
/// `[[a, b], [0, 2a]]` and `[[a, b], [0, 0]]`.
pub fn stated_local_derivation_families_n2() -> [MatrixSpace; 2] {
    let q = Rational::from_integer;
    let scaled = MatrixQ::diagonal(&[q(1), q(2)]);
    let upper = MatrixQ::unit(2, 0, 1);
    let first = MatrixSpace::span(2, [scaled, upper.clone()]).expect("2x2");
    let second = MatrixSpace::span(2, [MatrixQ::unit(2, 0, 0), upper]).expect("2x2");
    [first, second]
}

/// Shortcut verdict: for `n > 2` a local derivation is a derivation; for
/// `n = 2` membership in one of the two stated families.
pub fn local_derivation_by_theorem(e: &EvolutionAlgebra, delta: &MatrixQ) -> Result<LocalVerdict> {
    e.require_max_form()?;
    check_map(e, delta)?;
    let ok = if e.n() == 2 {
        let [a, b] = stated_local_derivation_families_n2();
        a.contains(delta)? || b.contains(delta)?
    } else {
        derivations_solver(e).contains(delta)?
    };
    Ok(LocalVerdict {
        verdict: Verdict::from_bool(ok),
        method: Method::Theorem,
        witness: None,
    })
}

#[derive(Clone, Debug)]
pub struct LocalDerivationReport {
    pub n: usize,
    pub der: MatrixSpace,
    pub definitional: MatrixSpace,
    pub equals_der: bool,
    /// Only for `n = 2`.
    pub stated_families: Option<[MatrixSpace; 2]>,
    pub stated_contained: Option<bool>,
    pub discrepancy: Option<String>,
}

impl LocalDerivationReport {
    pub fn summary(&self) -> String {
        if self.equals_der {
            format!("equals Der(E), dim {}", self.der.dim())
        } else {
            format!(
                "strictly larger than Der(E): dim {} vs {}",
                self.definitional.dim(),
                self.der.dim()
            )
        }
    }
}

pub fn local_derivation_set_description(e: &EvolutionAlgebra) -> Result<LocalDerivationReport> {
    let checker = LocalDerivationChecker::new(e)?;
    let der = checker.der().clone();
    let definitional = checker.space();
    let equals_der = der.contains_space(&definitional)? && definitional.contains_space(&der)?;
    let (stated_families, stated_contained, discrepancy) = if e.n() == 2 {
        let families = stated_local_derivation_families_n2();
        let contained =
            definitional.contains_space(&families[0])? && definitional.contains_space(&families[1])?;
        // The union of the two families is not a subspace; the definitional
        // set is, so any extra map witnesses the gap.
        let extra = upper_triangular_gap(&definitional, &families)?;
        let note = extra.map(|m| {
            format!(
                "definitional set (dim {}, all maps with Delta_21 = 0) strictly contains the stated \
                 families; e.g. {} is a local derivation in neither family",
                definitional.dim(),
                format_matrix(&m)
            )
        });
        (Some(families), Some(contained), note)
    } else {
        (None, None, None)
    };
    Ok(LocalDerivationReport {
        n: e.n(),
        der,
        definitional,
        equals_der,
        stated_families,
        stated_contained,
        discrepancy,
    })
}

/// A generator-built element of `space` outside both `families`, if any.
fn upper_triangular_gap(space: &MatrixSpace, families: &[MatrixSpace; 2]) -> Result<Option<MatrixQ>> {
    let q = Rational::from_integer;
    let mut candidates: Vec<MatrixQ> = space.generators().to_vec();
    candidates.push(MatrixQ::diagonal(&[q(1), q(3)]));
    for m in candidates {
        if space.contains(&m)? && !families[0].contains(&m)? && !families[1].contains(&m)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn format_matrix(m: &MatrixQ) -> String {
    let rows: Vec<String> = m
        .row_vectors()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// One derivation in `der` that sends `u` to `wu` and `v` to `wv`, if
/// the stacked linear system is consistent.
pub fn pair_feasible(
    der: &MatrixSpace,
    (u, wu): (&[Rational], &[Rational]),
    (v, wv): (&[Rational], &[Rational]),
) -> Result<bool> {
    let n = der.n();
    let m = der.dim();
    let rhs: Vec<Rational> = wu.iter().chain(wv).cloned().collect();
    if m == 0 {
        return Ok(rhs.iter().all(Rational::is_zero));
    }
    // Columns are generators, rows are the 2n coordinates.
    let images = der
        .generators()
        .iter()
        .map(|g| Ok([g.apply(u)?, g.apply(v)?].concat()))
        .collect::<Result<Vec<_>>>()?;
    let system = MatrixQ::from_fn(2 * n, m, |r, c| images[c][r].clone());
    let augmented = MatrixQ::from_fn(2 * n, m + 1, |r, c| {
        if c < m {
            images[c][r].clone()
        } else {
            rhs[r].clone()
        }
    });
    Ok(system.rank() == augmented.rank())
}

/// A finite 2-local check: every pair of samples (including a sample with
/// itself) must be matched by a single derivation.
pub fn two_local_pairwise_feasible(
    e: &EvolutionAlgebra,
    samples: &[(Vec<Rational>, Vec<Rational>)],
) -> Result<LocalVerdict> {
    e.require_max_form()?;
    let der = derivations_solver(e);
    pairwise_with(&der, samples)
}

fn pairwise_with(der: &MatrixSpace, samples: &[(Vec<Rational>, Vec<Rational>)]) -> Result<LocalVerdict> {
    let n = der.n();
    for (u, w) in samples {
        if u.len() != n || w.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if u.len() != n { u.len() } else { w.len() },
            });
        }
    }
    for i in 0..samples.len() {
        for j in i..samples.len() {
            let (u, wu) = &samples[i];
            let (v, wv) = &samples[j];
            if !pair_feasible(der, (u, wu), (v, wv))? {
                return Ok(LocalVerdict::rejected(
                    Method::Definitional,
                    Some(Witness::Pair(u.clone(), v.clone())),
                ));
            }
        }
    }
    Ok(LocalVerdict::accepted(Method::Definitional))
}

/// Theorem route: a linear 2-local derivation is a derivation. A rejection
/// is backed by a failing pair taken from the probe set, or from a point
/// where the map is not even local.
pub fn is_two_local_derivation_linear(e: &EvolutionAlgebra, delta: &MatrixQ) -> Result<LocalVerdict> {
    e.require_max_form()?;
    check_map(e, delta)?;
    let der = derivations_solver(e);
    let member = der.contains(delta)?;
    let mut points = probe_points(e.n());
    let samples = |points: &[Vec<Rational>]| -> Result<Vec<(Vec<Rational>, Vec<Rational>)>> {
        points
            .iter()
            .map(|u| Ok((u.clone(), delta.apply(u)?)))
            .collect()
    };
    let mut cross = pairwise_with(&der, &samples(&points)?)?;
    if !member && cross.is_accepted() {
        let analysis = StrataAnalysis::new(e.n(), der.generators())?;
        if let Some(u) = analysis.find_violation(delta) {
            points.push(u);
            cross = pairwise_with(&der, &samples(&points)?)?;
        }
    }
    if member && !cross.is_accepted() {
        // A derivation is matched by itself at every pair.
        unreachable!("derivation rejected by pairwise check");
    }
    Ok(LocalVerdict {
        verdict: Verdict::from_bool(member),
        method: Method::Theorem,
        witness: cross.witness,
    })
}

/// Candidate `alpha` values for which some automorphism could send `u` to
/// `w`; the matching test is done by the caller.
fn alpha_candidates(family: &AutomorphismFamily, u: &[Rational], w: &[Rational]) -> Vec<Rational> {
    let n = family.n();
    let mut out = match family.domain() {
        AlphaDomain::RootOfUnity { .. } => vec![-Rational::one(), Rational::one()],
        AlphaDomain::Free => {
            if !u[0].is_zero() {
                vec![&w[0] / &u[0]]
            } else {
                // The first nonzero coordinate k is scaled by alpha^(2^(k-1)).
                match (1..n).find(|&k| !u[k].is_zero()) {
                    Some(k) => (&w[k] / &u[k]).rational_roots(1u32 << k),
                    None => Vec::new(),
                }
            }
        }
    };
    out.retain(|a| !a.is_zero());
    out
}

/// `psi(u)` equals `phi(u)` for some automorphism `phi`.
pub fn pointwise_local_automorphism(
    family: &AutomorphismFamily,
    psi: &MatrixQ,
    u: &[Rational],
) -> Result<bool> {
    pointwise_cached(family, psi, u, &mut HashMap::new())
}

fn pointwise_cached(
    family: &AutomorphismFamily,
    psi: &MatrixQ,
    u: &[Rational],
    cache: &mut HashMap<Rational, MatrixQ>,
) -> Result<bool> {
    let n = family.n();
    if u.iter().all(Rational::is_zero) {
        return Ok(true);
    }
    let w = psi.apply(u)?;
    for alpha in alpha_candidates(family, u, &w) {
        let phi = cache
            .entry(alpha.clone())
            .or_insert_with(|| family.evaluate_unchecked(&alpha, &Rational::zero()));
        let image = phi.apply(u)?;
        let head_matches = (0..n - 1).all(|k| image[k] == w[k]);
        // With u_1 != 0 the free (1, n) entry absorbs the last coordinate.
        let tail_matches = !u[0].is_zero() || image[n - 1] == w[n - 1];
        if head_matches && tail_matches {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Definitional sampler: probes, then `samples` random points.
pub fn local_automorphism_witness<R: Rng + ?Sized>(
    family: &AutomorphismFamily,
    psi: &MatrixQ,
    samples: usize,
    rng: &mut R,
) -> Result<Option<Vec<Rational>>> {
    let n = family.n();
    let mut cache = HashMap::new();
    for u in probe_points(n) {
        if !pointwise_cached(family, psi, &u, &mut cache)? {
            return Ok(Some(u));
        }
    }
    for _ in 0..samples {
        let u = random_point(rng, n);
        if !pointwise_cached(family, psi, &u, &mut cache)? {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

fn require_invertible(e: &EvolutionAlgebra, psi: &MatrixQ) -> Result<()> {
    check_map(e, psi)?;
    if !psi.is_invertible() {
        return Err(Error::SingularMap);
    }
    Ok(())
}

/// Sampling verdict straight from the definition.
pub fn local_automorphism_definitional<R: Rng + ?Sized>(
    e: &EvolutionAlgebra,
    psi: &MatrixQ,
    samples: usize,
    rng: &mut R,
) -> Result<LocalVerdict> {
    require_invertible(e, psi)?;
    let family = automorphism_family(e)?;
    Ok(match local_automorphism_witness(&family, psi, samples, rng)? {
        Some(u) => LocalVerdict::rejected(Method::Definitional, Some(Witness::Point(u))),
        None => LocalVerdict::accepted(Method::Definitional),
    })
}

/// Theorem route (`n > 2`: automorphism; `n = 2`: `[[a, b], [0, c]]` with
/// `a != 0` and `c` a nonzero rational square), with a witness from the
/// sampler when one exists.
pub fn is_local_automorphism<R: Rng + ?Sized>(
    e: &EvolutionAlgebra,
    psi: &MatrixQ,
    rng: &mut R,
) -> Result<LocalVerdict> {
    require_invertible(e, psi)?;
    let ok = if e.n() == 2 {
        let c = &psi[(1, 1)];
        psi[(1, 0)].is_zero() && !psi[(0, 0)].is_zero() && !c.is_zero() && c.is_square()
    } else {
        is_automorphism(e, psi)?
    };
    let witness = if ok {
        None
    } else {
        let family = automorphism_family(e)?;
        local_automorphism_witness(&family, psi, DEFAULT_SAMPLES, rng)?.map(Witness::Point)
    };
    Ok(LocalVerdict {
        verdict: Verdict::from_bool(ok),
        method: Method::Theorem,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(x: i64) -> Rational {
        Rational::from_integer(x)
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn n2() -> EvolutionAlgebra {
        EvolutionAlgebra::from_i64(&[&[0, 1], &[0, 0]]).unwrap()
    }

    #[test]
    fn derivations_are_local() {
        let e = EvolutionAlgebra::chain(4).unwrap();
        let checker = LocalDerivationChecker::new(&e).unwrap();
        for g in checker.der().generators() {
            assert!(checker.check(g, &mut rng()).unwrap().is_accepted());
        }
        assert_eq!(checker.space().dim(), 2);
    }

    #[test]
    fn n2_examples() {
        let e = n2();
        let second_family = MatrixQ::from_i64(&[&[1, 5], &[0, 0]]);
        assert!(is_local_derivation(&e, &second_family, &mut rng()).unwrap().is_accepted());
        let lower = MatrixQ::from_i64(&[&[0, 0], &[1, 0]]);
        let verdict = is_local_derivation(&e, &lower, &mut rng()).unwrap();
        assert_eq!(verdict.verdict, Verdict::Rejected);
        let Some(Witness::Point(u)) = verdict.witness else { panic!("no witness") };
        assert!(u[0].is_zero() && !u[1].is_zero());
        // diag(1, 3) is a local derivation outside both stated families.
        let odd = MatrixQ::diagonal(&[q(1), q(3)]);
        assert!(is_local_derivation(&e, &odd, &mut rng()).unwrap().is_accepted());
        assert!(!local_derivation_by_theorem(&e, &odd).unwrap().is_accepted());
    }

    #[test]
    fn n2_description() {
        let report = local_derivation_set_description(&n2()).unwrap();
        assert_eq!(report.definitional.dim(), 3);
        assert!(!report.equals_der);
        assert_eq!(report.stated_contained, Some(true));
        assert!(report.discrepancy.is_some());
        let chain = local_derivation_set_description(&EvolutionAlgebra::chain(4).unwrap()).unwrap();
        assert!(chain.equals_der);
        assert_eq!(chain.summary(), "equals Der(E), dim 2");
    }

    #[test]
    fn pairwise_examples() {
        let e = EvolutionAlgebra::chain(4).unwrap();
        let id = MatrixQ::identity(4);
        let samples: Vec<_> = probe_points(4)
            .into_iter()
            .map(|u| {
                let w = id.apply(&u).unwrap();
                (u, w)
            })
            .collect();
        let verdict = two_local_pairwise_feasible(&e, &samples).unwrap();
        assert!(matches!(verdict.witness, Some(Witness::Pair(_, _))));
        assert!(two_local_pairwise_feasible(&e, &samples[..0]).unwrap().is_accepted());
        // Each e_i alone is an eigenvector of the scaling derivation.
        assert!(two_local_pairwise_feasible(&e, &samples[..1]).unwrap().is_accepted());
    }

    #[test]
    fn two_local_linear() {
        let e = EvolutionAlgebra::chain(3).unwrap();
        let v = is_two_local_derivation_linear(&e, &MatrixQ::unit(3, 0, 2)).unwrap();
        assert!(v.is_accepted());
        let v = is_two_local_derivation_linear(&e, &MatrixQ::unit(3, 1, 0)).unwrap();
        assert_eq!(v.verdict, Verdict::Rejected);
        assert!(matches!(v.witness, Some(Witness::Pair(_, _))));
    }

    #[test]
    fn local_automorphisms_n2() {
        let e = n2();
        let square = MatrixQ::from_i64(&[&[1, 0], &[0, 4]]);
        assert!(is_local_automorphism(&e, &square, &mut rng()).unwrap().is_accepted());
        assert!(local_automorphism_definitional(&e, &square, 200, &mut rng())
            .unwrap()
            .is_accepted());
        let three = MatrixQ::from_i64(&[&[1, 0], &[0, 3]]);
        let v = is_local_automorphism(&e, &three, &mut rng()).unwrap();
        assert_eq!(v.verdict, Verdict::Rejected);
        assert!(v.witness.is_some());
        assert!(matches!(
            is_local_automorphism(&e, &MatrixQ::zeros(2, 2), &mut rng()),
            Err(Error::SingularMap)
        ));
    }

    #[test]
    fn local_automorphisms_n3() {
        let e = EvolutionAlgebra::from_i64(&[&[0, 1, 5], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        let family = automorphism_family(&e).unwrap();
        let phi = family.build(&q(2), &q(3)).unwrap();
        assert!(local_automorphism_definitional(&e, &phi, 100, &mut rng())
            .unwrap()
            .is_accepted());
        let mut bent = phi.to_rows();
        bent[1][2] += q(1);
        let bent = MatrixQ::from_rows(bent).unwrap();
        let v = local_automorphism_definitional(&e, &bent, 100, &mut rng()).unwrap();
        let Some(Witness::Point(u)) = v.witness else { panic!("accepted a non-automorphism") };
        assert!(!pointwise_local_automorphism(&family, &bent, &u).unwrap());
    }
}
