//! Normalized Laplacian spectra, harmonic eigenfunctions and the generalized
//! Rayleigh quotient `fᵀLf / fᵀDf`.
//!
//! Eigenvectors `g` of `𝓛 = D^{-1/2} L D^{-1/2}` and vertex functions `f` are
//! related by `g = D^{1/2} f`; the quotient of `g` under `𝓛` equals the
//! quotient of `f` under the pencil `(L, D)`. Isolated vertices get a zero
//! diagonal entry, so the matrix stays defined for every graph.

use serde::{Deserialize, Serialize};

use crate::eigen::{self, EigenDecomposition, SymMatrix, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Bound applied to residual, orthonormality and trace checks on every spectrum.
pub const CERTIFY_TOL: f64 = 1e-8;
/// Local averaging equation residual allowed for a harmonic eigenfunction.
pub const HARMONIC_TOL: f64 = 1e-7;
/// Coordinates below this are treated as zero when fixing the sign.
pub const SIGN_THRESHOLD: f64 = 1e-9;

pub fn normalized_laplacian(g: &Graph) -> SymMatrix {
    let n = g.order();
    let inv_sqrt: Vec<f64> = g
        .degrees()
        .iter()
        .map(|&d| if d == 0 { 0.0 } else { 1.0 / (d as f64).sqrt() })
        .collect();
    let mut m = SymMatrix::zeros(n);
    for v in 0..n {
        if g.degree(v) > 0 {
            m.set(v, v, 1.0);
        }
    }
    for (u, v) in g.edges() {
        m.set(u, v, -inv_sqrt[u] * inv_sqrt[v]);
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Which {
    #[serde(rename = "lambda2")]
    SecondSmallest,
    #[serde(rename = "rho")]
    Largest,
}

/// A certified spectrum of `𝓛(G)`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    graph: Graph,
    decomposition: EigenDecomposition,
}

impl Spectrum {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Eigenvalues, ascending.
    pub fn values(&self) -> &[f64] {
        &self.decomposition.values
    }

    /// Orthonormal eigenvectors of `𝓛`; `eigvecs()[k]` pairs with `values()[k]`.
    pub fn eigvecs(&self) -> &[Vec<f64>] {
        &self.decomposition.vectors
    }

    pub fn decomposition(&self) -> &EigenDecomposition {
        &self.decomposition
    }

    pub fn lambda2(&self) -> Result<f64> {
        let n = self.graph.order();
        if n < 2 {
            return Err(Error::TooSmall { need: 2, have: n });
        }
        Ok(self.values()[1])
    }

    pub fn rho(&self) -> f64 {
        *self.values().last().expect("spectrum is never empty")
    }

    /// One harmonic eigenfunction per basis vector of the eigenspace of `λ₂`
    /// or `ρ`, normalized to `‖D^{1/2} f‖ = 1` with its first non-negligible
    /// coordinate positive.
    pub fn harmonic_eigenfunctions(&self, which: Which) -> Result<Vec<HarmonicEigenfunction>> {
        let g = &self.graph;
        let n = g.order();
        if n < 2 {
            return Err(Error::TooSmall { need: 2, have: n });
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let k = match which {
            Which::SecondSmallest => 1,
            Which::Largest => n - 1,
        };
        let lambda = self.values()[k];
        let mut out = Vec::new();
        for idx in self.decomposition.eigenspace_of(k) {
            let mut f: Vec<f64> = self.eigvecs()[idx]
                .iter()
                .zip(g.degrees())
                .map(|(x, &d)| x / (d as f64).sqrt())
                .collect();
            canonical_sign(&mut f);
            let h = HarmonicEigenfunction { f, lambda, graph: g.clone() };
            h.certify()?;
            out.push(h);
        }
        Ok(out)
    }

    fn certify(&self) -> Result<()> {
        let g = &self.graph;
        let d = &self.decomposition;
        let fail = |what: String| Err(Error::Certification(what));
        if d.residual > CERTIFY_TOL {
            return fail(format!("residual {:e}", d.residual));
        }
        let ortho = d.orthonormality_error();
        if ortho > CERTIFY_TOL {
            return fail(format!("orthonormality error {ortho:e}"));
        }
        if d.values[0] < -CERTIFY_TOL {
            return fail(format!("negative eigenvalue {}", d.values[0]));
        }
        let active = (0..g.order()).filter(|&v| !g.is_isolated(v)).count() as f64;
        let trace: f64 = d.values.iter().sum();
        if (trace - active).abs() > CERTIFY_TOL {
            return fail(format!("eigenvalue sum {trace} vs {active} non-isolated vertices"));
        }
        if g.is_connected() && g.order() > 1 {
            let mut kernel: Vec<f64> = g.degrees().iter().map(|&x| (x as f64).sqrt()).collect();
            let norm = eigen::dot(&kernel, &kernel).sqrt();
            kernel.iter_mut().for_each(|x| *x /= norm);
            let lk = normalized_laplacian(g).mul_vec(&kernel);
            let worst = lk.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            if worst > CERTIFY_TOL {
                return fail(format!("D^1/2 e is not in the kernel (residual {worst:e})"));
            }
        }
        Ok(())
    }
}

pub fn spectrum(g: &Graph) -> Result<Spectrum> {
    spectrum_with_tol(g, DEFAULT_TOL)
}

pub fn spectrum_with_tol(g: &Graph, tol: f64) -> Result<Spectrum> {
    let decomposition = eigen::eigh(&normalized_laplacian(g), tol)?;
    let s = Spectrum { graph: g.clone(), decomposition };
    s.certify()?;
    Ok(s)
}

pub fn lambda2(g: &Graph) -> Result<f64> {
    if g.order() < 2 {
        return Err(Error::TooSmall { need: 2, have: g.order() });
    }
    spectrum(g)?.lambda2()
}

pub fn rho(g: &Graph) -> Result<f64> {
    Ok(spectrum(g)?.rho())
}

pub fn harmonic_eigenfunctions(g: &Graph, which: Which) -> Result<Vec<HarmonicEigenfunction>> {
    if g.order() >= 2 && !g.is_connected() {
        return Err(Error::Disconnected);
    }
    spectrum(g)?.harmonic_eigenfunctions(which)
}

/// A vertex function `f` with `D^{1/2} f` an eigenvector of `𝓛(G)` for `lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicEigenfunction {
    pub f: Vec<f64>,
    pub lambda: f64,
    pub graph: Graph,
}

impl HarmonicEigenfunction {
    pub fn sup_norm(&self) -> f64 {
        sup_norm(&self.f)
    }

    /// The same eigenfunction with the opposite sign.
    pub fn negated(&self) -> Self {
        HarmonicEigenfunction {
            f: self.f.iter().map(|x| -x).collect(),
            lambda: self.lambda,
            graph: self.graph.clone(),
        }
    }

    fn certify(&self) -> Result<()> {
        let g = &self.graph;
        let scale = self.sup_norm();
        if scale == 0.0 {
            return Err(Error::Certification("zero harmonic eigenfunction".into()));
        }
        let tilt = degree_sum(g, &self.f)?.abs();
        if tilt > CERTIFY_TOL * g.volume() as f64 * scale {
            return Err(Error::Certification(format!("fᵀDe = {tilt:e} is not zero")));
        }
        let res = check_harmonic_equation(g, &self.f, self.lambda)?;
        if res > HARMONIC_TOL {
            return Err(Error::Certification(format!("local equation residual {res:e}")));
        }
        Ok(())
    }
}

/// Flips `f` so that its first coordinate above [`SIGN_THRESHOLD`] is positive.
pub(crate) fn canonical_sign(f: &mut [f64]) {
    if let Some(first) = f.iter().find(|x| x.abs() > SIGN_THRESHOLD) {
        if *first < 0.0 {
            f.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

pub(crate) fn sup_norm(f: &[f64]) -> f64 {
    f.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

fn check_len(g: &Graph, f: &[f64]) -> Result<()> {
    if f.len() != g.order() {
        return Err(Error::LengthMismatch { expected: g.order(), found: f.len() });
    }
    Ok(())
}

/// `fᵀLf = Σ_{uv∈E} (f(u) − f(v))²`.
pub fn laplacian_form(g: &Graph, f: &[f64]) -> Result<f64> {
    check_len(g, f)?;
    Ok(g.edges().iter().map(|&(u, v)| (f[u] - f[v]).powi(2)).sum())
}

/// `fᵀDf = Σ_v d(v) f(v)²`.
pub fn degree_form(g: &Graph, f: &[f64]) -> Result<f64> {
    check_len(g, f)?;
    Ok(g.degrees().iter().zip(f).map(|(&d, x)| d as f64 * x * x).sum())
}

/// `fᵀDe = Σ_v d(v) f(v)`.
pub fn degree_sum(g: &Graph, f: &[f64]) -> Result<f64> {
    check_len(g, f)?;
    Ok(g.degrees().iter().zip(f).map(|(&d, x)| d as f64 * x).sum())
}

pub fn rayleigh_quotient(g: &Graph, f: &[f64]) -> Result<f64> {
    let den = degree_form(g, f)?;
    if den <= 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(laplacian_form(g, f)? / den)
}

/// `max_v |(1/d(v)) Σ_{u∼v} (f(v) − f(u)) − λ f(v)|`.
pub fn check_harmonic_equation(g: &Graph, f: &[f64], lambda: f64) -> Result<f64> {
    check_len(g, f)?;
    let mut worst = 0.0f64;
    for v in 0..g.order() {
        let d = g.degree(v);
        if d == 0 {
            return Err(Error::IsolatedVertex(v));
        }
        let local: f64 = g.neighbors(v).map(|u| f[v] - f[u]).sum::<f64>() / d as f64;
        worst = worst.max((local - lambda * f[v]).abs());
    }
    Ok(worst)
}

/// `max_v |Σ_{u∼v} f(u)|`.
pub fn check_neighbor_sum_zero(g: &Graph, f: &[f64]) -> Result<f64> {
    check_len(g, f)?;
    Ok((0..g.order())
        .map(|v| g.neighbors(v).map(|u| f[u]).sum::<f64>().abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, pair_count, star};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn laplacian_entries() {
        let k2 = normalized_laplacian(&complete(2).unwrap());
        assert_eq!(k2, SymMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap());
        let p3 = normalized_laplacian(&path(3).unwrap());
        for i in 0..3 {
            assert_eq!(p3.get(i, i), 1.0);
        }
        assert!(close(p3.get(0, 1), -1.0 / 2f64.sqrt(), 1e-15));
        assert_eq!(p3.get(0, 2), 0.0);
        let c4 = normalized_laplacian(&cycle(4).unwrap());
        assert!(close(c4.get(0, 1), -0.5, 1e-15) && c4.get(0, 2) == 0.0);
        let iso = normalized_laplacian(&Graph::from_edges(3, &[(0, 1)]).unwrap());
        assert_eq!(iso.get(2, 2), 0.0);
    }

    #[test]
    fn spectrum_examples() {
        let c4 = spectrum(&cycle(4).unwrap()).unwrap();
        for (a, b) in c4.values().iter().zip([0.0, 1.0, 1.0, 2.0]) {
            assert!(close(*a, b, 1e-12));
        }
        // S4 characteristic polynomial: x (x - 1)^2 (x - 2)
        let s4 = spectrum(&star(4).unwrap()).unwrap();
        for (a, b) in s4.values().iter().zip([0.0, 1.0, 1.0, 2.0]) {
            assert!(close(*a, b, 1e-12));
        }
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let s = spectrum(&two_k2).unwrap();
        for (a, b) in s.values().iter().zip([0.0, 0.0, 2.0, 2.0]) {
            assert!(close(*a, b, 1e-12));
        }
        assert!(close(s.lambda2().unwrap(), 0.0, 1e-12));
    }

    #[test]
    fn lambda2_examples() {
        for n in 3..=12 {
            assert!(close(lambda2(&star(n).unwrap()).unwrap(), 1.0, 1e-9));
        }
        assert!(close(lambda2(&complete(3).unwrap()).unwrap(), 1.5, 1e-12));
        let c5 = 1.0 - (2.0 * PI / 5.0).cos();
        assert!(close(lambda2(&cycle(5).unwrap()).unwrap(), c5, 1e-12));
        assert!(close(c5, 0.690983, 1e-6));
        assert_eq!(lambda2(&Graph::empty(1).unwrap()), Err(Error::TooSmall { need: 2, have: 1 }));
        for n in 2..=8 {
            let want = n as f64 / (n as f64 - 1.0);
            assert!(close(lambda2(&complete(n).unwrap()).unwrap(), want, 1e-8));
        }
    }

    #[test]
    fn rho_examples() {
        assert!(close(rho(&cycle(4).unwrap()).unwrap(), 2.0, 1e-12));
        let c5 = 1.0 - (4.0 * PI / 5.0).cos();
        assert!(close(rho(&cycle(5).unwrap()).unwrap(), c5, 1e-12));
        assert!(close(c5, 1.809017, 1e-6));
        assert!(close(rho(&complete(2).unwrap()).unwrap(), 2.0, 1e-12));
        assert_eq!(rho(&Graph::empty(1).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn harmonic_examples() {
        let s4 = harmonic_eigenfunctions(&star(4).unwrap(), Which::SecondSmallest).unwrap();
        assert_eq!(s4.len(), 2);
        for h in &s4 {
            assert!(h.f[0].abs() <= 1e-7);
            assert!(check_neighbor_sum_zero(&h.graph, &h.f).unwrap() <= 1e-7);
        }
        let k2 = harmonic_eigenfunctions(&complete(2).unwrap(), Which::Largest).unwrap();
        assert_eq!(k2.len(), 1);
        assert!(close(k2[0].f[0], -k2[0].f[1], 1e-12) && k2[0].f[0] > 0.0);
        let c4 = harmonic_eigenfunctions(&cycle(4).unwrap(), Which::Largest).unwrap();
        assert_eq!(c4.len(), 1);
        let f = &c4[0].f;
        for i in 0..4 {
            assert!(close(f[i].abs(), f[0].abs(), 1e-12));
            assert!(f[i] * f[(i + 1) % 4] < 0.0);
        }
        assert_eq!(
            harmonic_eigenfunctions(&Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap(), Which::Largest),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn normalization_and_sign() {
        let g = path(5).unwrap();
        for which in [Which::SecondSmallest, Which::Largest] {
            for h in harmonic_eigenfunctions(&g, which).unwrap() {
                assert!(close(degree_form(&g, &h.f).unwrap(), 1.0, 1e-12));
                let first = h.f.iter().find(|x| x.abs() > SIGN_THRESHOLD).unwrap();
                assert!(*first > 0.0);
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let k2 = complete(2).unwrap();
        assert_eq!(rayleigh_quotient(&k2, &[1.0, -1.0]).unwrap(), 2.0);
        let c4 = cycle(4).unwrap();
        assert_eq!(rayleigh_quotient(&c4, &[1.0, 0.0, -1.0, 0.0]).unwrap(), 1.0);
        assert_eq!(rayleigh_quotient(&c4, &[3.0; 4]).unwrap(), 0.0);
        assert_eq!(rayleigh_quotient(&c4, &[0.0; 4]), Err(Error::ZeroDenominator));
        let iso = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(rayleigh_quotient(&iso, &[0.0, 0.0, 1.0]), Err(Error::ZeroDenominator));
        assert!(matches!(rayleigh_quotient(&c4, &[1.0]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn harmonic_equation_examples() {
        let k3 = complete(3).unwrap();
        assert_eq!(check_harmonic_equation(&k3, &[0.0, 1.0, -1.0], 1.5).unwrap(), 0.0);
        let s4 = star(4).unwrap();
        for h in harmonic_eigenfunctions(&s4, Which::SecondSmallest).unwrap() {
            assert!(check_harmonic_equation(&s4, &h.f, h.lambda).unwrap() <= 1e-7);
            let wrong = check_harmonic_equation(&s4, &h.f, 0.5).unwrap();
            assert!(wrong >= 0.4 * h.sup_norm());
        }
        let iso = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(check_harmonic_equation(&iso, &[1.0, 1.0, 1.0], 0.0), Err(Error::IsolatedVertex(2)));
    }

    #[test]
    fn neighbor_sum_examples() {
        for n in [4, 5] {
            let s = star(n).unwrap();
            for h in harmonic_eigenfunctions(&s, Which::SecondSmallest).unwrap() {
                assert!(check_neighbor_sum_zero(&s, &h.f).unwrap() <= 1e-7);
            }
        }
        assert_eq!(check_neighbor_sum_zero(&complete(2).unwrap(), &[1.0, -1.0]).unwrap(), 1.0);
    }

    #[test]
    fn exhaustive_small_graph_properties() {
        for n in 1..=7usize {
            for mask in 0..1u64 << pair_count(n) {
                let g = Graph::from_mask(n, mask).unwrap();
                let s = spectrum(&g).unwrap();
                assert!(s.values()[0] >= -1e-8);
                assert!(s.rho() <= 2.0 + 1e-8);
                if g.is_connected() && n >= 2 {
                    let ones = vec![1.0; n];
                    assert_eq!(check_harmonic_equation(&g, &ones, 0.0).unwrap(), 0.0);
                    assert_eq!(rayleigh_quotient(&g, &ones).unwrap(), 0.0);
                    if n <= 6 {
                        if g.has_bipartite_nontrivial_component() {
                            assert!(close(s.rho(), 2.0, 1e-8));
                        } else {
                            assert!(s.rho() < 2.0 - 1e-4);
                        }
                        if !g.is_complete() {
                            assert!(s.lambda2().unwrap() <= 1.0 + 1e-8);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn variational_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in [path(6).unwrap(), cycle(7).unwrap(), star(5).unwrap(), complete(4).unwrap()] {
            let s = spectrum(&g).unwrap();
            let vol = g.volume() as f64;
            for _ in 0..100 {
                let mut f: Vec<f64> = (0..g.order()).map(|_| rng.gen_range(-1.0..1.0)).collect();
                // project out the D e direction in the D inner product
                let shift = degree_sum(&g, &f).unwrap() / vol;
                f.iter_mut().for_each(|x| *x -= shift);
                let q = rayleigh_quotient(&g, &f).unwrap();
                assert!(s.lambda2().unwrap() <= q + 1e-8);
                assert!(q <= s.rho() + 1e-8);
            }
            for (which, target) in [(Which::SecondSmallest, s.lambda2().unwrap()), (Which::Largest, s.rho())] {
                for h in s.harmonic_eigenfunctions(which).unwrap() {
                    assert!(close(rayleigh_quotient(&g, &h.f).unwrap(), target, 1e-10));
                }
            }
        }
    }
}
