//! Independent spectra for cross-checking: the normalized Laplacian is built
//! from scratch and diagonalised with nalgebra.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use nlap::Graph;

/// Ascending eigenvalues and unit eigenvectors.
pub fn oracle(g: &Graph) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = g.order();
    let d: Vec<f64> = (0..n).map(|x| g.degree(x) as f64).collect();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for x in 0..n {
        if d[x] > 0.0 {
            m[(x, x)] = 1.0;
        }
    }
    for (a, b) in g.edges() {
        let w = -1.0 / (d[a] * d[b]).sqrt();
        m[(a, b)] = w;
        m[(b, a)] = w;
    }
    let e = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| e.eigenvalues[i].total_cmp(&e.eigenvalues[j]));
    let values = order.iter().map(|&i| e.eigenvalues[i]).collect();
    let vectors = order.iter().map(|&i| e.eigenvectors.column(i).iter().copied().collect()).collect();
    (values, vectors)
}

pub fn lambda2(g: &Graph) -> f64 {
    oracle(g).0[1]
}

pub fn rho(g: &Graph) -> f64 {
    *oracle(g).0.last().unwrap()
}
