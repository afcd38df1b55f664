//! Reading algebra, map and spec files.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use evoalg::derivations::DerivationSpec;
use evoalg::{EvolutionAlgebra, MatrixQ, Rational};
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// A rational written as a JSON string (`"p/q"`, `"p"`) or integer.
struct Q(Rational);

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Q;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string such as \"-3/4\" or an integer")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Q, E> {
                s.parse().map(Q).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
                Ok(Q(Rational::from_bigint(v.into())))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    n: usize,
    matrix: Vec<Vec<Q>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    matrix: Vec<Vec<Q>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    d: Vec<Q>,
}

/// An input file with its SHA-256 digest.
pub struct Loaded<T> {
    pub path: PathBuf,
    pub sha256: String,
    pub value: T,
}

fn read(path: &Path) -> CliResult<(String, String)> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    Ok((text, digest))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

/// serde_json appends " at line L column C"; the position is reported
/// separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

fn shape_error(path: &Path, message: String) -> CliError {
    // Shape problems are found after parsing; point at the start.
    CliError::Parse {
        path: path.to_path_buf(),
        line: 1,
        column: 1,
        message,
    }
}

fn square(path: &Path, rows: Vec<Vec<Q>>, n: usize) -> CliResult<MatrixQ> {
    if rows.len() != n {
        return Err(shape_error(path, format!("matrix has {} rows, expected {n}", rows.len())));
    }
    let rows: Vec<Vec<Rational>> = rows
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() == n {
                Ok(row.into_iter().map(|q| q.0).collect())
            } else {
                Err(shape_error(
                    path,
                    format!("row {} has {} entries, expected {n}", i + 1, row.len()),
                ))
            }
        })
        .collect::<CliResult<_>>()?;
    Ok(MatrixQ::from_rows(rows)?)
}

pub fn load_algebra(path: &Path) -> CliResult<Loaded<EvolutionAlgebra>> {
    let (text, sha256) = read(path)?;
    let file: AlgebraFile = parse_json(path, &text)?;
    if file.n < 2 {
        return Err(shape_error(path, format!("n must be at least 2, got {}", file.n)));
    }
    let value = EvolutionAlgebra::new(square(path, file.matrix, file.n)?)?;
    Ok(Loaded {
        path: path.to_path_buf(),
        sha256,
        value,
    })
}

pub fn load_map(path: &Path, n: usize) -> CliResult<Loaded<MatrixQ>> {
    let (text, sha256) = read(path)?;
    let file: MapFile = parse_json(path, &text)?;
    let value = square(path, file.matrix, n)?;
    Ok(Loaded {
        path: path.to_path_buf(),
        sha256,
        value,
    })
}

pub fn load_spec(path: &Path) -> CliResult<Loaded<DerivationSpec>> {
    let (text, sha256) = read(path)?;
    let file: SpecFile = parse_json(path, &text)?;
    Ok(Loaded {
        path: path.to_path_buf(),
        sha256,
        value: DerivationSpec::new(file.d.into_iter().map(|q| q.0).collect()),
    })
}

/// Comma-separated rationals, as given to `--subdiag`.
pub fn parse_list(text: &str) -> CliResult<Vec<Rational>> {
    text.split(',')
        .map(|item| {
            item.trim()
                .parse::<Rational>()
                .map_err(|e| CliError::Argument(format!("--subdiag: {e}")))
        })
        .collect()
}
