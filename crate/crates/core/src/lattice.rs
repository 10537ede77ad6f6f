//! Integer lattice reduction used to propose approximation multipliers.
//!
//! The inhomogeneous simultaneous-approximation problem embeds into a small
//! integer lattice: scale the targets by 2^BITS, weight the multiplier
//! column so a solution with |q| around a chosen scale and errors ~ eps is a
//! short vector, then reduce and round. Candidates come from two routes —
//! reduced vectors of a Kannan-style embedding whose last coefficient is
//! +-1, and Babai nearest-plane points against the offset vector over a
//! ladder of multiplier scales. Callers verify every candidate against the
//! exact problem, so the lattice layer only has to be a good heuristic.
//!
//! The reduction itself is the classic all-integer LLL (exact-division
//! lambda/d bookkeeping, Lovasz ratio 99/100); dimensions stay below ~35 and
//! entries below a few hundred bits, so this is fast and exact.

use crate::dd::Dd;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const BITS: u32 = 128;

/// Round x * 2^bits to a BigInt, keeping both double-double words.
fn dd_to_scaled_bigint(x: Dd, bits: u32) -> BigInt {
    let scale = 2f64.powi(bits as i32);
    let hi = x.hi * scale; // exact: power-of-two scale
    let lo = x.lo * scale;
    let hi_int = f64_to_bigint_trunc(hi);
    let frac = hi - bigint_to_f64(&hi_int); // exact remainder of hi
    hi_int + f64_to_bigint_trunc((lo + frac).round())
}

/// Exact integer part of an f64 (truncation toward zero).
fn f64_to_bigint_trunc(x: f64) -> BigInt {
    if x == 0.0 || !x.is_finite() {
        return BigInt::zero();
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, exponent) = if exp == 0 {
        (frac, -1074i64)
    } else {
        (frac | (1 << 52), exp - 1075)
    };
    let m = BigInt::from(mantissa) * sign;
    if exponent >= 0 {
        m << exponent as usize
    } else {
        m >> (-exponent) as usize
    }
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to num/den for den > 0, halves rounded down consistently.
fn div_round(num: &BigInt, den: &BigInt) -> BigInt {
    let two_num: BigInt = num * 2 + den;
    let two_den: BigInt = den * 2;
    two_num.div_floor(&two_den)
}

/// All-integer LLL state: basis rows plus the exact lambda/d Gram-Schmidt
/// bookkeeping (lambda[i][j] = d_{j+1} * mu_{i,j}, d[i] = Gram determinant
/// of the first i rows, d[0] = 1).
struct IntLll {
    basis: Vec<Vec<BigInt>>,
    lambda: Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
}

impl IntLll {
    /// Requires linearly independent rows (all our constructions are).
    fn new(basis: Vec<Vec<BigInt>>) -> Self {
        let n = basis.len();
        let mut state = IntLll {
            basis,
            lambda: vec![vec![BigInt::zero(); n]; n],
            d: vec![BigInt::one(); n + 1],
        };
        for i in 0..n {
            for j in 0..=i {
                let mut u = dot(&state.basis[i], &state.basis[j]);
                for k in 0..j {
                    u = (&state.d[k + 1] * &u - &state.lambda[i][k] * &state.lambda[j][k])
                        / &state.d[k];
                }
                if j < i {
                    state.lambda[i][j] = u;
                } else {
                    state.d[i + 1] = u;
                }
            }
        }
        state
    }

    /// Size-reduce row k against row l (l < k).
    fn reduce(&mut self, k: usize, l: usize) {
        let dl = self.d[l + 1].clone();
        if self.lambda[k][l].magnitude() * 2u32 <= *dl.magnitude() {
            return;
        }
        let q = div_round(&self.lambda[k][l], &dl);
        if q.is_zero() {
            return;
        }
        let row_l = self.basis[l].clone();
        for (x, y) in self.basis[k].iter_mut().zip(&row_l) {
            *x -= &q * y;
        }
        self.lambda[k][l] -= &q * &dl;
        for i in 0..l {
            let t = &q * &self.lambda[l][i];
            self.lambda[k][i] -= t;
        }
    }

    /// Swap rows k and k-1, updating lambda/d exactly.
    fn swap_rows(&mut self, k: usize) {
        self.basis.swap(k, k - 1);
        for j in 0..k.saturating_sub(1) {
            let t = self.lambda[k][j].clone();
            self.lambda[k][j] = self.lambda[k - 1][j].clone();
            self.lambda[k - 1][j] = t;
        }
        let lam = self.lambda[k][k - 1].clone();
        let new_dk = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..self.basis.len() {
            let t = self.lambda[i][k].clone();
            self.lambda[i][k] =
                (&self.d[k + 1] * &self.lambda[i][k - 1] - &lam * &t) / &self.d[k];
            self.lambda[i][k - 1] = (&new_dk * &t + &lam * &self.lambda[i][k]) / &self.d[k + 1];
        }
        self.d[k] = new_dk;
    }

    /// LLL with Lovasz ratio 99/100.
    fn run(&mut self) {
        let n = self.basis.len();
        let mut k = 1usize;
        let mut guard = 0usize;
        while k < n && guard < 200_000 {
            guard += 1;
            self.reduce(k, k - 1);
            let lam = &self.lambda[k][k - 1];
            let lhs = (&self.d[k + 1] * &self.d[k - 1] + lam * lam) * 100;
            let rhs = &self.d[k] * &self.d[k] * 99;
            if lhs < rhs {
                self.swap_rows(k);
                k = k.max(2) - 1;
            } else {
                for l in (0..k.saturating_sub(1)).rev() {
                    self.reduce(k, l);
                }
                k += 1;
            }
        }
    }

    /// Babai nearest plane: the lattice point closest (per-plane) to target.
    fn babai(&self, target: &[BigInt]) -> Vec<BigInt> {
        let n = self.basis.len();
        // lambda row of the target against the reduced basis
        let mut lam_t = vec![BigInt::zero(); n];
        for j in 0..n {
            let mut u = dot(target, &self.basis[j]);
            for k in 0..j {
                u = (&self.d[k + 1] * &u - &lam_t[k] * &self.lambda[j][k]) / &self.d[k];
            }
            lam_t[j] = u;
        }
        let mut point = vec![BigInt::zero(); target.len()];
        for l in (0..n).rev() {
            let q = div_round(&lam_t[l], &self.d[l + 1]);
            if q.is_zero() {
                continue;
            }
            for (p, b) in point.iter_mut().zip(&self.basis[l]) {
                *p += &q * b;
            }
            lam_t[l] -= &q * &self.d[l + 1];
            for i in 0..l {
                let t = &q * &self.lambda[l][i];
                lam_t[i] -= t;
            }
        }
        point
    }
}

/// Bounded Schnorr-Euchner enumeration of lattice points near `target`,
/// in f64 over the (reduced) basis; yields coefficient vectors. The caller
/// reconstructs exact points, so f64 here only steers the search.
fn enumerate_close(
    basis: &[Vec<BigInt>],
    target: &[BigInt],
    radius_sq: f64,
    max_nodes: usize,
    mut emit: impl FnMut(&[i64]),
) {
    let n = basis.len();
    let bf: Vec<Vec<f64>> = basis
        .iter()
        .map(|r| r.iter().map(bigint_to_f64).collect())
        .collect();
    let tf: Vec<f64> = target.iter().map(bigint_to_f64).collect();

    // f64 Gram-Schmidt
    let mut star = bf.clone();
    let mut mu = vec![vec![0.0f64; n]; n];
    let mut norms = vec![0.0f64; n];
    for i in 0..n {
        for j in 0..i {
            if norms[j] == 0.0 {
                continue;
            }
            let c = dot_f(&bf[i], &star[j]) / norms[j];
            mu[i][j] = c;
            for k in 0..star[i].len() {
                star[i][k] -= c * star[j][k];
            }
        }
        norms[i] = dot_f(&star[i], &star[i]);
    }
    // target coordinates in the GSO frame
    let mut tmu = vec![0.0f64; n];
    for j in 0..n {
        if norms[j] != 0.0 {
            tmu[j] = dot_f(&tf, &star[j]) / norms[j];
        }
    }

    fn dot_f(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    // depth-first from the last GSO level down to 0
    let mut coeffs = vec![0i64; n];
    let mut nodes = 0usize;
    fn descend(
        level: isize,
        partial: f64,
        coeffs: &mut Vec<i64>,
        nodes: &mut usize,
        max_nodes: usize,
        radius_sq: f64,
        mu: &Vec<Vec<f64>>,
        norms: &Vec<f64>,
        tmu: &Vec<f64>,
        emit: &mut impl FnMut(&[i64]),
    ) {
        if *nodes >= max_nodes {
            return;
        }
        *nodes += 1;
        if level < 0 {
            emit(coeffs);
            return;
        }
        let i = level as usize;
        // center: target coordinate minus contributions of chosen coeffs
        let mut center = tmu[i];
        for j in i + 1..coeffs.len() {
            center -= coeffs[j] as f64 * mu[j][i];
        }
        let c0 = center.round();
        // zigzag c0, c0+1, c0-1, c0+2, ...
        for step in 0..24i64 {
            let cand = if step % 2 == 0 {
                c0 + (step / 2) as f64
            } else {
                c0 - (step / 2 + 1) as f64
            };
            let diff = cand - center;
            let add = diff * diff * norms[i];
            if partial + add > radius_sq {
                if step >= 2 {
                    break; // symmetric window exhausted
                }
                continue;
            }
            coeffs[i] = cand as i64;
            descend(
                level - 1,
                partial + add,
                coeffs,
                nodes,
                max_nodes,
                radius_sq,
                mu,
                norms,
                tmu,
                emit,
            );
            coeffs[i] = 0;
            if *nodes >= max_nodes {
                return;
            }
        }
    }
    descend(
        (n as isize) - 1,
        0.0,
        &mut coeffs,
        &mut nodes,
        max_nodes,
        radius_sq,
        &mu,
        &norms,
        &tmu,
        &mut emit,
    );
}

/// Candidate multipliers for `|q theta_j - p_j - alpha_j| < eps`, 1 <= q <=
/// q_bound, ascending. Callers must verify feasibility of each.
pub fn propose_multipliers(thetas: &[Dd], alphas: &[f64], eps: f64, q_bound: i128) -> Vec<i128> {
    let l = thetas.len();
    if l == 0 {
        return vec![1];
    }
    let scale = BigInt::one() << BITS as usize;
    let t_scaled: Vec<BigInt> = thetas
        .iter()
        .map(|t| dd_to_scaled_bigint(*t, BITS))
        .collect();
    let a_scaled: Vec<BigInt> = alphas
        .iter()
        .map(|a| dd_to_scaled_bigint(Dd::from_f64(*a), BITS))
        .collect();
    let eps_scaled = dd_to_scaled_bigint(Dd::from_f64(eps), BITS).max(BigInt::one());

    let mut candidates: Vec<i128> = Vec::new();
    let mut push = |q: BigInt| {
        if let Some(q) = q.to_i128() {
            let q = q.abs();
            if q >= 1 && q <= q_bound {
                candidates.push(q);
            }
        }
    };

    // ladder of multiplier scales: each scale weights the q column so that a
    // solution with q around the scale is a nearly isotropic short vector
    let mut q_scale = BigInt::from(1000);
    let bound_big = BigInt::from(q_bound);
    while &q_scale <= &(&bound_big * 16) {
        let w0 = (&eps_scaled / &q_scale).max(BigInt::one());

        // homogeneous lattice + Babai against the offsets
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(l + 1);
        let mut row0 = vec![BigInt::zero(); l + 1];
        row0[0] = w0.clone();
        for j in 0..l {
            row0[j + 1] = t_scaled[j].clone();
        }
        rows.push(row0);
        for j in 0..l {
            let mut row = vec![BigInt::zero(); l + 1];
            row[j + 1] = scale.clone();
            rows.push(row);
        }
        let mut lll = IntLll::new(rows);
        lll.run();
        let mut target = vec![BigInt::zero(); l + 1];
        for j in 0..l {
            target[j + 1] = a_scaled[j].clone();
        }
        let point = lll.babai(&target);
        let q_babai = &point[0] / &w0;
        push(q_babai.clone());
        // neighbors: Babai point nudged by the shortest reduced vectors
        for v in lll.basis.iter().take(4) {
            let dq = &v[0] / &w0;
            if dq.is_zero() {
                continue;
            }
            for s in [-2i32, -1, 1, 2] {
                push(&q_babai + &dq * s);
            }
        }
        // bounded enumeration around the target: a genuine solution at this
        // scale is a lattice point within sqrt(L+1) * eps * 2^BITS
        let eps_f = bigint_to_f64(&eps_scaled);
        let radius_sq = (l as f64 + 1.0) * eps_f * eps_f * 1.21;
        let mut enum_qs: Vec<BigInt> = Vec::new();
        enumerate_close(&lll.basis, &target, radius_sq, 60_000, |coeffs| {
            let mut q_scaled = BigInt::zero();
            for (c, row) in coeffs.iter().zip(&lll.basis) {
                if *c != 0 {
                    q_scaled += &row[0] * *c;
                }
            }
            enum_qs.push(q_scaled / &w0);
        });
        for q in enum_qs {
            push(q);
        }

        // Kannan embedding: short vectors with last coefficient +-wt carry q
        let wt = eps_scaled.clone();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(l + 2);
        let mut row0 = vec![BigInt::zero(); l + 2];
        row0[0] = w0.clone();
        for j in 0..l {
            row0[j + 1] = t_scaled[j].clone();
        }
        rows.push(row0);
        for j in 0..l {
            let mut row = vec![BigInt::zero(); l + 2];
            row[j + 1] = scale.clone();
            rows.push(row);
        }
        let mut emb = vec![BigInt::zero(); l + 2];
        for j in 0..l {
            emb[j + 1] = -a_scaled[j].clone();
        }
        emb[l + 1] = wt.clone();
        rows.push(emb);
        let mut lll = IntLll::new(rows);
        lll.run();
        for v in &lll.basis {
            if v[l + 1].magnitude() == wt.magnitude() {
                push(&v[0] / &w0);
            }
        }

        q_scale *= 32;
    }

    candidates.sort_unstable();
    candidates.dedup();
    candidates
}
