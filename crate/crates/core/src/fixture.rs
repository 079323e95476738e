//! The bundled 8×8 complex-scaled EC Hamiltonian (θ = 20°, λ = 1) and the
//! reference data printed alongside it, guarded by SHA-256 checksums.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::linalg::{ComplexMatrix, ComplexVector};

pub const MATRIX_FILE: &str = "h_theta20.json";
pub const REFERENCE_FILE: &str = "reference.json";
pub const CHECKSUM_FILE: &str = "SHA256SUMS";

const EMBEDDED_MATRIX: &[u8] = include_bytes!("../fixtures/h_theta20.json");
const EMBEDDED_REFERENCE: &[u8] = include_bytes!("../fixtures/reference.json");
const EMBEDDED_SUMS: &str = include_str!("../fixtures/SHA256SUMS");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("fixture not found: {0}")]
    NotFound(PathBuf),
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("checksum mismatch for {file}: expected {expected}, found {actual}")]
    Checksum { file: String, expected: String, actual: String },
    #[error("no checksum listed for {0}")]
    MissingChecksum(String),
    #[error("cannot parse {file}: {message}")]
    Parse { file: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceSpectrum {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl ReferenceSpectrum {
    pub fn values(&self) -> Vec<Complex64> {
        self.re.iter().zip(&self.im).map(|(&r, &i)| Complex64::new(r, i)).collect()
    }
}

/// Reference data shipped with the matrix. Printed to four or five decimals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceData {
    pub description: String,
    pub seed_first: ComplexVector,
    pub seed_second: ComplexVector,
    pub eigenvector_first: ComplexVector,
    pub eigenvector_second: ComplexVector,
    converged_first: [f64; 2],
    converged_second: [f64; 2],
    diagonalization: Vec<[f64; 2]>,
    /// Iterative eigenvalues, ascending real part.
    pub table_iterative: ReferenceSpectrum,
    /// Direct-diagonalization eigenvalues, ascending real part.
    pub table_diagonalization: ReferenceSpectrum,
    pub first_iterations: usize,
    pub second_iterations: usize,
    r_matrix_resonance: [f64; 2],
}

fn complex(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

impl ReferenceData {
    /// Tabulated iterative value of the first eigenvalue.
    pub fn converged_first(&self) -> Complex64 {
        complex(self.converged_first)
    }

    pub fn converged_second(&self) -> Complex64 {
        complex(self.converged_second)
    }

    /// Direct-diagonalization eigenvalues in the printed order.
    pub fn diagonalization(&self) -> Vec<Complex64> {
        self.diagonalization.iter().copied().map(complex).collect()
    }

    /// Independent R-matrix value of the resonance.
    pub fn r_matrix_resonance(&self) -> Complex64 {
        complex(self.r_matrix_resonance)
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub hamiltonian: ComplexMatrix,
    pub reference: ReferenceData,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn parse_sums(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|line| {
            let mut parts = line.split_whitespace();
            Some((parts.next()?.to_string(), parts.next()?.trim_start_matches('*').to_string()))
        })
        .map(|(sum, file)| (file, sum))
        .collect()
}

fn verify(file: &str, bytes: &[u8], sums: &[(String, String)]) -> Result<(), FixtureError> {
    let expected =
        sums.iter().find(|(f, _)| f == file).map(|(_, s)| s.clone()).ok_or_else(|| FixtureError::MissingChecksum(file.into()))?;
    let actual = sha256_hex(bytes);
    if actual != expected {
        return Err(FixtureError::Checksum { file: file.into(), expected, actual });
    }
    Ok(())
}

fn parse<T: for<'de> Deserialize<'de>>(file: &str, bytes: &[u8]) -> Result<T, FixtureError> {
    serde_json::from_slice(bytes).map_err(|e| FixtureError::Parse { file: file.into(), message: e.to_string() })
}

impl Fixture {
    /// The copy compiled into the library.
    pub fn embedded() -> Result<Self, FixtureError> {
        Self::from_bytes(EMBEDDED_MATRIX, EMBEDDED_REFERENCE, EMBEDDED_SUMS)
    }

    /// Load `h_theta20.json` and `reference.json` from `dir`, checked against `SHA256SUMS`.
    pub fn from_dir(dir: &Path) -> Result<Self, FixtureError> {
        let loaded = Self::from_dir_unverified(dir)?;
        match loaded.integrity.into_iter().next() {
            Some(problem) => Err(problem),
            None => Ok(loaded.fixture),
        }
    }

    /// Load from `dir` even when checksums disagree; mismatches are reported
    /// in [`LoadedFixture::integrity`]. Missing or unparsable files still fail.
    pub fn from_dir_unverified(dir: &Path) -> Result<LoadedFixture, FixtureError> {
        let read = |name: &str| {
            let path = dir.join(name);
            fs::read(&path).map_err(|e| match e.kind() {
                std::io::ErrorKind::NotFound => FixtureError::NotFound(path.clone()),
                _ => FixtureError::Io { path: path.clone(), message: e.to_string() },
            })
        };
        let matrix = read(MATRIX_FILE)?;
        let reference = read(REFERENCE_FILE)?;
        let sums = read(CHECKSUM_FILE)?;
        Self::load(&matrix, &reference, &String::from_utf8_lossy(&sums))
    }

    fn from_bytes(matrix: &[u8], reference: &[u8], sums: &str) -> Result<Self, FixtureError> {
        let loaded = Self::load(matrix, reference, sums)?;
        match loaded.integrity.into_iter().next() {
            Some(problem) => Err(problem),
            None => Ok(loaded.fixture),
        }
    }

    fn load(matrix: &[u8], reference: &[u8], sums: &str) -> Result<LoadedFixture, FixtureError> {
        let sums = parse_sums(sums);
        let integrity = [verify(MATRIX_FILE, matrix, &sums), verify(REFERENCE_FILE, reference, &sums)]
            .into_iter()
            .filter_map(Result::err)
            .collect();
        let fixture = Self { hamiltonian: parse(MATRIX_FILE, matrix)?, reference: parse(REFERENCE_FILE, reference)? };
        Ok(LoadedFixture { fixture, integrity })
    }

    pub fn embedded_unverified() -> Result<LoadedFixture, FixtureError> {
        Self::load(EMBEDDED_MATRIX, EMBEDDED_REFERENCE, EMBEDDED_SUMS)
    }
}

#[derive(Debug, Clone)]
pub struct LoadedFixture {
    pub fixture: Fixture,
    /// Checksum problems; empty when every file matches `SHA256SUMS`.
    pub integrity: Vec<FixtureError>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_fixture_loads() {
        let f = Fixture::embedded().unwrap();
        assert_eq!(f.hamiltonian.rows(), 8);
        assert_eq!(f.hamiltonian[(0, 0)], Complex64::new(5.916, -7.1245));
        assert_eq!(f.reference.first_iterations, 6);
        assert_eq!(f.reference.diagonalization().len(), 8);
    }

    #[test]
    fn tampering_is_detected() {
        let mut bytes = EMBEDDED_MATRIX.to_vec();
        let pos = bytes.iter().position(|&b| b == b'5').unwrap();
        bytes[pos] = b'6';
        assert!(matches!(
            Fixture::from_bytes(&bytes, EMBEDDED_REFERENCE, EMBEDDED_SUMS),
            Err(FixtureError::Checksum { .. })
        ));
    }
}
