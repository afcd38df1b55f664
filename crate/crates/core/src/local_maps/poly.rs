//! Sparse multivariate polynomials over the rationals, just enough to take
//! small determinants of matrices with linear-form entries.

use std::collections::BTreeMap;

use crate::exact_linear::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Poly {
    /// Exponent vector -> nonzero coefficient.
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let nvars = coeffs.len();
        let mut p = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut exp = vec![0; nvars];
            exp[i] = 1;
            p.terms.insert(exp, c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A single term, hence nonvanishing wherever all variables are.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Largest exponent of any single variable.
    pub fn max_var_degree(&self) -> u32 {
        self.terms.keys().flatten().copied().max().unwrap_or(0)
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, scale: &Rational) {
        for (exp, c) in &other.terms {
            self.add_term(exp.clone(), c * scale);
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(exp, c)| {
                exp.iter()
                    .zip(point)
                    .filter(|(e, _)| **e > 0)
                    .fold(c.clone(), |acc, (e, x)| acc * x.pow(u64::from(*e)))
            })
            .sum()
    }
}

/// Determinant by cofactor expansion along the first row; sizes here stay
/// at three or below in practice.
pub(crate) fn determinant(nvars: usize, m: &[Vec<&Poly>]) -> Poly {
    let size = m.len();
    match size {
        0 => Poly::constant(nvars, Rational::one()),
        1 => m[0][0].clone(),
        _ => {
            let mut out = Poly::zero();
            for col in 0..size {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<&Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, p)| *p)
                            .collect()
                    })
                    .collect();
                let sign = if col % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                out.add_scaled(&m[0][col].mul(&determinant(nvars, &minor)), &sign);
            }
            out
        }
    }
}
