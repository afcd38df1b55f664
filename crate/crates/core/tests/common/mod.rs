#![allow(dead_code)]

use evoalg::{EvolutionAlgebra, MatrixQ, Rational};
use rand::Rng;

pub fn q(x: i64) -> Rational {
    Rational::from_integer(x)
}

pub fn nonzero<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// Strictly upper triangular with a nonzero superdiagonal. Off-superdiagonal
/// entries are kept with a per-algebra density so both derivation cases
/// show up.
pub fn random_max_form<R: Rng + ?Sized>(rng: &mut R, n: usize) -> EvolutionAlgebra {
    let density = [0.0, 0.25, 1.0][rng.gen_range(0..3)];
    let mut a = MatrixQ::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            a[(i, j)] = if j == i + 1 {
                q(nonzero(rng, 9))
            } else if rng.gen_bool(density) {
                q(rng.gen_range(-9..=9))
            } else {
                q(0)
            };
        }
    }
    EvolutionAlgebra::new(a).unwrap()
}

/// Rows carry only columns `i+1` and `n`.
pub fn random_two_entry<R: Rng + ?Sized>(rng: &mut R, n: usize, zero_subdiag: bool) -> EvolutionAlgebra {
    let mut a = MatrixQ::zeros(n, n);
    for i in 0..n - 1 {
        a[(i, i + 1)] = q(nonzero(rng, 9));
        if i + 1 < n - 1 {
            a[(i, n - 1)] = q(rng.gen_range(-9..=9));
        }
    }
    if zero_subdiag {
        let k = rng.gen_range(0..n - 1);
        a[(k, k + 1)] = q(0);
    }
    EvolutionAlgebra::new(a).unwrap()
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> MatrixQ {
    MatrixQ::from_fn(rows, cols, |_, _| q(rng.gen_range(-bound..=bound)))
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| q(rng.gen_range(-9..=9))).collect()
}
