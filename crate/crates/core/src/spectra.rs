//! Circulant spectra: closed-form eigenvalues, exact cyclotomic coordinates,
//! rational-independence certificates and integer dependency witnesses.
//!
//! The eigenvectors of a circulant are the characters of Z_n and do not
//! depend on the connection set, so the eigenvalue indexed by character `l`
//! is the character sum `lambda_l = sum_{s in S} cos(2 pi l s / n)`.

use crate::arith::{euler_phi, is_power_of_two, is_prime};
use crate::cyclotomic::CyclotomicInteger;
use crate::dd::{cos_two_pi_ratio, Dd};
use crate::error::{Error, Result};
use crate::graph::{is_gcd_set, CirculantGraph, ConnectionSet};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

/// Floating eigenvalues of a circulant graph, indexed by character.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub n: u64,
    pub values: Vec<f64>,
    pub integral: bool,
}

/// Eigenvalues by the character sum; `integral` is decided exactly through
/// the gcd-set test rather than by inspecting floats.
pub fn eigenvalues(g: &CirculantGraph) -> Spectrum {
    let n = g.order();
    let values = (0..n)
        .map(|l| {
            g.connection()
                .elements()
                .iter()
                .map(|&s| {
                    let k = (l % n).wrapping_mul(s) % n;
                    (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos()
                })
                .sum()
        })
        .collect();
    Spectrum {
        n,
        values,
        integral: is_gcd_set(g.connection()),
    }
}

/// Eigenvalue of character `l` in double-double precision.
pub fn eigenvalue_dd(g: &CirculantGraph, l: u64) -> Dd {
    let n = g.order();
    g.connection()
        .elements()
        .iter()
        .fold(Dd::ZERO, |acc, &s| acc.add(cos_two_pi_ratio((l % n) * s % n, n)))
}

/// All eigenvalues in double-double precision.
pub fn eigenvalues_dd(g: &CirculantGraph) -> Vec<Dd> {
    (0..g.order()).map(|l| eigenvalue_dd(g, l)).collect()
}

/// Cycle eigenvalue 2 cos(2 pi l / n) in double-double precision.
pub fn cycle_eigenvalue_dd(n: u64, l: u64) -> Dd {
    cos_two_pi_ratio(l % n, n).scale2(2.0)
}

/// Spectrum of the complement graph: a regular graph of degree lambda_0
/// has complement eigenvalues n - 1 - lambda_0 at the trivial character and
/// -lambda_l - 1 elsewhere, over the same eigenvectors.
pub fn complement_spectrum(spec: &Spectrum) -> Spectrum {
    let n = spec.n;
    let values = spec
        .values
        .iter()
        .enumerate()
        .map(|(l, &lam)| {
            if l == 0 {
                n as f64 - lam - 1.0
            } else {
                -lam - 1.0
            }
        })
        .collect();
    Spectrum {
        n,
        values,
        integral: spec.integral,
    }
}

/// Exact eigenvalue `sum_{s in S} w^(l s)` as a cyclotomic integer.
pub fn exact_eigenvalue(n: u64, l: u64, s: &ConnectionSet) -> Result<CyclotomicInteger> {
    if s.modulus() != n {
        return Err(Error::IncompatibleOrder {
            left: n,
            right: s.modulus(),
        });
    }
    let mut acc = CyclotomicInteger::zero(n)?;
    for &elem in s.elements() {
        acc = acc.add(&CyclotomicInteger::root_power(n, (l % n) * elem % n)?);
    }
    Ok(acc)
}

/// True iff every eigenvalue reduces to a rational integer in exact
/// cyclotomic coordinates. Agrees with the gcd-set test on all inputs.
pub fn is_integral(g: &CirculantGraph) -> Result<bool> {
    let n = g.order();
    for l in 0..n {
        if exact_eigenvalue(n, l, g.connection())?.as_integer().is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact-rank certificate that the tested eigenvalues are linearly
/// independent over Q.
#[derive(Clone, Debug)]
pub struct IndependenceCertificate {
    pub n: u64,
    pub indices: Vec<u64>,
    pub matrix: Vec<Vec<BigInt>>,
    pub rank: usize,
    pub independent: bool,
}

impl Serialize for IndependenceCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("IndependenceCertificate", 5)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("indices", &self.indices)?;
        let rows: Vec<Vec<String>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect();
        st.serialize_field("matrix", &rows)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("independent", &self.independent)?;
        st.end()
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination; no
/// floating tolerance anywhere.
pub fn integer_rank(matrix: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev_pivot = BigInt::from(1);
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        // find a pivot in this column
        let pivot_row = (row..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot_row else { continue };
        m.swap(row, p);
        for r in row + 1..rows {
            for c in col + 1..cols {
                let t = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                m[r][c] = t / &prev_pivot;
            }
            m[r][col] = BigInt::zero();
        }
        prev_pivot = m[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}

/// Exact rational-independence certificate for the distinct positive
/// eigenvalues lambda_0 .. lambda_{n/4 - 1} of the cycle C_n, n = 2^k >= 8.
///
/// The coordinate matrix lives in the phi(n)-dimensional power basis of the
/// conductor-n cyclotomic field and its rank is computed fraction-free.
pub fn rational_independence(n: u64) -> Result<IndependenceCertificate> {
    if !is_power_of_two(n) || n < 8 {
        return Err(Error::UnsupportedOrder { n, min: 8 });
    }
    let cycle = CirculantGraph::cycle(n)?;
    let count = (n / 4) as usize;
    let phi = euler_phi(n) as usize;
    let mut matrix = Vec::with_capacity(count);
    let mut indices = Vec::with_capacity(count);
    for l in 0..count as u64 {
        let exact = exact_eigenvalue(n, l, cycle.connection())?;
        debug_assert_eq!(exact.coefficients().len(), phi);
        matrix.push(exact.coefficients().to_vec());
        indices.push(l);
    }
    let rank = integer_rank(&matrix);
    Ok(IndependenceCertificate {
        n,
        indices,
        matrix,
        rank,
        independent: rank == count,
    })
}

/// Integer eigenvalue relation certifying that the cycle C_{mp} (and, for
/// m >= 4, the complement as well) admits no transfer sequence: the relation
/// evaluates to exactly zero while any limiting sequence would force it to
/// carry phase -1.
#[derive(Clone, Debug)]
pub struct DependencyWitness {
    pub m: u64,
    pub p: u64,
    pub n: u64,
    /// (character index, integer coefficient), merged and sorted by index.
    pub terms: Vec<(u64, i64)>,
    pub residual: CyclotomicInteger,
}

impl Serialize for DependencyWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("DependencyWitness", 6)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &self.terms)?;
        st.serialize_field("residual", &self.residual)?;
        st.serialize_field("residual_is_zero", &self.residual.is_zero())?;
        st.end()
    }
}

impl DependencyWitness {
    /// Exact check that the same coefficients annihilate the shifted
    /// complement eigenvalues -lambda_l - 1. Requires every term index >= 1
    /// and a zero coefficient sum, which the m >= 4 difference relation has.
    pub fn annihilates_complement(&self) -> Result<bool> {
        if self.terms.iter().any(|&(l, _)| l == 0) {
            return Ok(false);
        }
        let cycle = CirculantGraph::cycle(self.n)?;
        let mut acc = CyclotomicInteger::zero(self.n)?;
        let mut coeff_sum: i64 = 0;
        for &(l, c) in &self.terms {
            let lam = exact_eigenvalue(self.n, l, cycle.connection())?;
            acc = acc.add(&lam.neg().scale(c));
            coeff_sum += c;
        }
        acc = acc.add(&CyclotomicInteger::from_integer(self.n, -coeff_sum)?);
        Ok(acc.is_zero())
    }
}

/// Build the dependency witness for n = m p with even m and odd prime p.
///
/// For m = 2 the witness is the plain relation
///   lambda_1 + sum_r (lambda_{mr+1} + lambda_{mr-1}) = 0,
/// whose mr-2 companion would degenerate onto the trivial character. For
/// m >= 4 it is the difference relation over indices {1,2} u {mr+-1} u
/// {mr+-2} with coefficients +-1, whose zero coefficient sum also kills the
/// complement shift.
pub fn dependency_witness(m: u64, p: u64) -> Result<DependencyWitness> {
    if m < 2 || m % 2 != 0 || p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::InvalidFactorization { m, p });
    }
    let n = m * p;
    let half = (p - 1) / 2;
    let mut raw_terms: Vec<(u64, i64)> = Vec::new();
    if m == 2 {
        raw_terms.push((1, 1));
        for r in 1..=half {
            raw_terms.push(((m * r + 1) % n, 1));
            raw_terms.push(((m * r - 1) % n, 1));
        }
    } else {
        raw_terms.push((2, 1));
        raw_terms.push((1, -1));
        for r in 1..=half {
            raw_terms.push(((m * r + 2) % n, 1));
            raw_terms.push(((m * r + 1) % n, -1));
            raw_terms.push(((m * r - 2) % n, 1));
            raw_terms.push(((m * r - 1) % n, -1));
        }
    }
    // merge repeated indices
    let mut merged = std::collections::BTreeMap::new();
    for (l, c) in raw_terms {
        *merged.entry(l).or_insert(0i64) += c;
    }
    let terms: Vec<(u64, i64)> = merged.into_iter().filter(|&(_, c)| c != 0).collect();

    let cycle = CirculantGraph::cycle(n)?;
    let mut residual = CyclotomicInteger::zero(n)?;
    for &(l, c) in &terms {
        let lam = exact_eigenvalue(n, l, cycle.connection())?;
        residual = residual.add(&lam.scale(c));
    }
    Ok(DependencyWitness {
        m,
        p,
        n,
        terms,
        residual,
    })
}
