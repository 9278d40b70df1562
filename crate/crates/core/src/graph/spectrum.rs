//! Adjacency spectra by a dense symmetric eigensolver.

use nalgebra::DMatrix;

use super::Graph;
use crate::error::{Error, Result};

/// Largest matrix handed to the dense eigensolver.
pub const SPECTRUM_LIMIT: usize = 10_000;

/// Eigenvalues of the symmetric matrix `m` (row-major, `n × n`), ascending.
pub fn symmetric_eigenvalues(n: usize, m: &[f64]) -> Result<Vec<f64>> {
    if n > SPECTRUM_LIMIT {
        return Err(Error::Budget(format!("dense eigensolver limited to {SPECTRUM_LIMIT} rows, got {n}")));
    }
    assert_eq!(m.len(), n * n, "matrix must be n × n");
    if n == 0 {
        return Ok(Vec::new());
    }
    let mat = DMatrix::from_row_slice(n, n, m);
    let eig = mat
        .try_symmetric_eigen(1e-14, 10_000)
        .ok_or_else(|| Error::Budget("eigensolver did not converge".into()))?;
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Eigenvalues of the adjacency matrix; a loop puts 1 on the diagonal.
pub fn adjacency_spectrum(g: &Graph) -> Result<Vec<f64>> {
    let a: Vec<f64> = g.adjacency_matrix().into_iter().map(f64::from).collect();
    symmetric_eigenvalues(g.n(), &a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn known_spectra() {
        // C4: 2, 0, 0, -2
        let s = adjacency_spectrum(&cycle(4)).unwrap();
        for (a, b) in s.iter().zip([-2.0, 0.0, 0.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        // Petersen: 3, 1 (×5), -2 (×4)
        let s = adjacency_spectrum(&petersen()).unwrap();
        assert!((s[9] - 3.0).abs() < 1e-12);
        assert_eq!(s.iter().filter(|x| (*x - 1.0).abs() < 1e-9).count(), 5);
        assert_eq!(s.iter().filter(|x| (*x + 2.0).abs() < 1e-9).count(), 4);
        // K_n: trace zero
        let s = adjacency_spectrum(&complete(6)).unwrap();
        assert!(s.iter().sum::<f64>().abs() < 1e-12);
        assert!(adjacency_spectrum(&Graph::empty(0)).unwrap().is_empty());
    }
}
