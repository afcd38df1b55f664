//! Exact decision of `for all u: delta(u) in span{ D_k(u) }` for a linear
//! `delta` and a finite family of maps `D_k`.
//!
//! Coordinate space splits into strata by which coordinates of `u` are
//! nonzero. On a stratum the images `D_k(u)` have linear-form entries.
//! When their rank `r` is the same at every point of the stratum (certified
//! by an `r`-minor that is a single monomial), membership of `delta(u)`
//! holds on the whole stratum iff every `(r+1)`-minor of
//! `[D_1(u) .. D_m(u) | delta(u)]` that uses the `delta` column vanishes as
//! a polynomial. Those minors are linear in `delta`.

use std::collections::BTreeMap;

use super::poly::{determinant, Poly};
use crate::error::{Error, Result};
use crate::exact_linear::{MatrixQ, Rational, Subspace};

/// Cofactor expansion of one `(r+1)`-minor along the `delta` column:
/// the minor equals `sum sign * delta(u)_row * cofactor`.
#[derive(Clone, Debug)]
struct Obstruction {
    terms: Vec<(usize, Rational, Poly)>,
}

#[derive(Clone, Debug)]
struct Stratum {
    support: Vec<usize>,
    obstructions: Vec<Obstruction>,
}

/// Every `k`-subset of `0..n`, lexicographic.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// `column[t]` is the linear form giving coordinate `t` of `u * m`, with
/// coordinates outside `support` set to zero.
fn image_columns(m: &MatrixQ, support: &[usize]) -> Vec<Poly> {
    let n = m.rows();
    (0..m.cols())
        .map(|t| {
            let mut coeffs = vec![Rational::zero(); n];
            for &i in support {
                coeffs[i] = m[(i, t)].clone();
            }
            Poly::linear(&coeffs)
        })
        .collect()
}

fn minor(columns: &[Vec<Poly>], rows: &[usize], cols: &[usize], nvars: usize) -> Poly {
    let m: Vec<Vec<&Poly>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| &columns[c][r]).collect())
        .collect();
    determinant(nvars, &m)
}

/// Analysis of all strata for a fixed spanning family.
#[derive(Clone, Debug)]
pub(crate) struct StrataAnalysis {
    n: usize,
    strata: Vec<Stratum>,
}

impl StrataAnalysis {
    pub fn new(n: usize, maps: &[MatrixQ]) -> Result<Self> {
        let mut strata = Vec::new();
        for mask in 1u32..(1u32 << n) {
            let support: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            strata.push(Self::analyze(n, maps, support)?);
        }
        Ok(StrataAnalysis { n, strata })
    }

    fn analyze(n: usize, maps: &[MatrixQ], support: Vec<usize>) -> Result<Stratum> {
        let columns: Vec<Vec<Poly>> = maps.iter().map(|m| image_columns(m, &support)).collect();
        let m = maps.len();
        let mut rank = 0;
        'search: for r in (1..=m.min(n)).rev() {
            let mut nonzero = false;
            for cols in subsets(m, r) {
                for rows in subsets(n, r) {
                    let det = minor(&columns, &rows, &cols, n);
                    if det.is_monomial() {
                        rank = r;
                        break 'search;
                    }
                    nonzero |= !det.is_zero();
                }
            }
            if nonzero {
                return Err(Error::Precondition(format!(
                    "rank of the images is not constant on the stratum with support {:?}",
                    support.iter().map(|i| i + 1).collect::<Vec<_>>()
                )));
            }
        }

        let mut obstructions = Vec::new();
        for cols in subsets(m, rank) {
            for rows in subsets(n, rank + 1) {
                let mut terms = Vec::new();
                for (pos, &row) in rows.iter().enumerate() {
                    let rest: Vec<usize> = rows.iter().copied().filter(|&x| x != row).collect();
                    let cofactor = minor(&columns, &rest, &cols, n);
                    if cofactor.is_zero() {
                        continue;
                    }
                    let sign = if (pos + rank) % 2 == 0 {
                        Rational::one()
                    } else {
                        -Rational::one()
                    };
                    terms.push((row, sign, cofactor));
                }
                if !terms.is_empty() {
                    obstructions.push(Obstruction { terms });
                }
            }
        }
        Ok(Stratum {
            support,
            obstructions,
        })
    }

    /// The obstruction polynomial for a concrete `delta`.
    fn evaluate(&self, stratum: &Stratum, obstruction: &Obstruction, delta: &MatrixQ) -> Poly {
        let delta_cols = image_columns(delta, &stratum.support);
        let mut out = Poly::zero();
        for (row, sign, cofactor) in &obstruction.terms {
            out.add_scaled(&delta_cols[*row].mul(cofactor), sign);
        }
        out
    }

    /// A point where `delta(u)` leaves the span, or `None` if there is none.
    pub fn find_violation(&self, delta: &MatrixQ) -> Option<Vec<Rational>> {
        for stratum in &self.strata {
            for obstruction in &stratum.obstructions {
                let p = self.evaluate(stratum, obstruction, delta);
                if !p.is_zero() {
                    return Some(nonvanishing_point(self.n, &stratum.support, &p));
                }
            }
        }
        None
    }

    /// All linear `delta` satisfying every stratum, as a flattened kernel.
    pub fn solution_space(&self) -> Subspace {
        let n = self.n;
        let mut equations: BTreeMap<(usize, Vec<u32>), Vec<Rational>> = BTreeMap::new();
        let mut next_id = 0usize;
        for stratum in &self.strata {
            for obstruction in &stratum.obstructions {
                // Coefficient of delta_ij is sign * u_i * cofactor(row j).
                let id = next_id;
                next_id += 1;
                for (row, sign, cofactor) in &obstruction.terms {
                    for &i in &stratum.support {
                        for (exp, c) in cofactor.terms() {
                            let mut e = exp.clone();
                            e[i] += 1;
                            let eq = equations
                                .entry((id, e))
                                .or_insert_with(|| vec![Rational::zero(); n * n]);
                            eq[i * n + row] += sign * c;
                        }
                    }
                }
            }
        }
        let rows: Vec<Vec<Rational>> = equations
            .into_values()
            .filter(|eq| eq.iter().any(|x| !x.is_zero()))
            .collect();
        if rows.is_empty() {
            return Subspace::full(n * n);
        }
        let count = rows.len();
        MatrixQ::from_flat(count, n * n, rows.into_iter().flatten().collect())
            .expect("rectangular")
            .nullspace()
    }
}

/// Small nonzero values tried per coordinate.
fn grid_value(index: usize) -> Rational {
    let magnitude = (index / 2 + 1) as i64;
    Rational::from_integer(if index % 2 == 0 { magnitude } else { -magnitude })
}

/// A point with exactly the coordinates in `support` nonzero at which `p`
/// does not vanish. A grid of `deg + 1` values per variable always contains
/// one when `p` is a nonzero polynomial.
fn nonvanishing_point(n: usize, support: &[usize], p: &Poly) -> Vec<Rational> {
    let radix = p.max_var_degree() as usize + 1;
    let mut digits = vec![0usize; support.len()];
    loop {
        let mut point = vec![Rational::zero(); n];
        for (&i, &d) in support.iter().zip(&digits) {
            point[i] = grid_value(d);
        }
        if !p.eval(&point).is_zero() {
            return point;
        }
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                unreachable!("nonzero polynomial vanishes on a full grid");
            }
            digits[pos] += 1;
            if digits[pos] < radix {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerate() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(1, 2).is_empty());
    }

    #[test]
    fn identity_family_accepts_only_scalars() {
        // span{ I } on Q^2: delta(u) must be parallel to u everywhere.
        let analysis = StrataAnalysis::new(2, &[MatrixQ::identity(2)]).unwrap();
        let space = analysis.solution_space();
        assert_eq!(space.dim(), 1);
        assert!(analysis.find_violation(&MatrixQ::identity(2).scale(&Rational::from_integer(3))).is_none());
        let shear = MatrixQ::from_i64(&[&[1, 1], &[0, 1]]);
        let u = analysis.find_violation(&shear).unwrap();
        let image = shear.apply(&u).unwrap();
        assert!(!Subspace::span(2, [u.clone()]).unwrap().contains(&image).unwrap());
    }

    #[test]
    fn nonconstant_rank_is_reported() {
        // u * [[1],[ -1]] spans a line except on u1 = u2.
        let m = MatrixQ::from_i64(&[&[1, 0], &[-1, 0]]);
        assert!(StrataAnalysis::new(2, &[m]).is_err());
    }
}
