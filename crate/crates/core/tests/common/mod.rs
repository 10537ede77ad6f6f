//! Dense numerical oracles shared by the integration suites.
//!
//! Deliberately independent of the character-sum evaluation paths they
//! check: adjacency matrices come straight from the definition, eigenvalues
//! from Jacobi rotations, and transition matrices from a scaling-and-squaring
//! Taylor exponential over hand-rolled complex matrices.

use pgstlab_core::graph::CirculantGraph;

/// Explicit 0/1 adjacency matrix straight from the definition.
pub fn adjacency_matrix(g: &CirculantGraph) -> Vec<Vec<f64>> {
    let n = g.order() as usize;
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let diff = ((i + n - j) % n) as u64;
            if g.connection().contains(diff) {
                a[i][j] = 1.0;
            }
        }
    }
    a
}

/// Jacobi rotation eigensolver for real symmetric matrices, ascending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-15 {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
    pub fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }
    pub fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }
    pub fn mul(self, o: C64) -> C64 {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
    pub fn scale(self, s: f64) -> C64 {
        C64::new(self.re * s, self.im * s)
    }
    pub fn norm(self) -> f64 {
        (self.re * self.re + self.im * self.im).sqrt()
    }
}

pub fn mat_mul(a: &[Vec<C64>], b: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let n = a.len();
    let mut out = vec![vec![C64::ZERO; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == C64::ZERO {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j].add(aik.mul(b[k][j]));
            }
        }
    }
    out
}

/// exp(-itA) by scaling-and-squaring with a Taylor core on the scaled
/// matrix. Independent of any spectral knowledge.
pub fn dense_transition_matrix(g: &CirculantGraph, t: f64) -> Vec<Vec<C64>> {
    let n = g.order() as usize;
    let adj = adjacency_matrix(g);
    let norm_bound = t.abs() * g.degree() as f64;
    let s = norm_bound.max(1.0).log2().ceil() as u32 + 2;
    let scale = (0.5f64).powi(s as i32);
    let mut m = vec![vec![C64::ZERO; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = C64::new(0.0, -t * adj[i][j] * scale);
        }
    }
    let mut result = vec![vec![C64::ZERO; n]; n];
    let mut term = vec![vec![C64::ZERO; n]; n];
    for i in 0..n {
        result[i][i] = C64::new(1.0, 0.0);
        term[i][i] = C64::new(1.0, 0.0);
    }
    for k in 1..=24 {
        term = mat_mul(&term, &m);
        let inv = 1.0 / k as f64;
        for row in term.iter_mut() {
            for x in row.iter_mut() {
                *x = x.scale(inv);
            }
        }
        for i in 0..n {
            for j in 0..n {
                result[i][j] = result[i][j].add(term[i][j]);
            }
        }
    }
    for _ in 0..s {
        result = mat_mul(&result, &result);
    }
    result
}
