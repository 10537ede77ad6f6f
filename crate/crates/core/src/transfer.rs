//! Transition-matrix entries, fidelities and fidelity scans.
//!
//! A circulant on Z_n is diagonalized by the characters, so a single entry of
//! `H(t) = exp(-itA)` is the O(n) sum
//! `H(t)_{u,v} = (1/n) sum_l exp(-i lambda_l t) w^(l (v-u))`,
//! never a dense exponential. Phases are reduced mod 2pi in double-double
//! before the trig calls, which keeps entries accurate at large `t` and at
//! exact multiples of 2pi.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::graph::{CirculantGraph, CompositeGraph};
use crate::spectra::eigenvalues_dd;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::io::Write;

/// One evaluated transfer amplitude.
#[derive(Clone, Copy, Debug)]
pub struct TransferResult {
    pub amplitude: Complex64,
    pub fidelity: f64,
    pub phase: f64,
}

impl TransferResult {
    fn from_amplitude(a: Complex64) -> Self {
        TransferResult {
            amplitude: a,
            fidelity: a.norm(),
            phase: a.arg(),
        }
    }
}

impl Serialize for TransferResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("TransferResult", 4)?;
        st.serialize_field("re", &self.amplitude.re)?;
        st.serialize_field("im", &self.amplitude.im)?;
        st.serialize_field("fidelity", &self.fidelity)?;
        st.serialize_field("phase", &self.phase)?;
        st.end()
    }
}

/// Precomputed per-(graph, u, v) data for repeated amplitude evaluation.
///
/// Holds the double-double eigenvalues and the character offsets
/// `2 l d / n` (in half turns) for the vertex difference `d = v - u`.
pub struct WalkKernel {
    n: u64,
    lambdas: Vec<Dd>,
    /// character phase offsets in half turns: 2 l d / n
    offsets: Vec<Dd>,
}

impl WalkKernel {
    pub fn new(g: &CirculantGraph, u: u64, v: u64) -> Result<Self> {
        let n = g.order();
        if u >= n {
            return Err(Error::VertexOutOfRange { v: u, n });
        }
        if v >= n {
            return Err(Error::VertexOutOfRange { v, n });
        }
        let d = (v + n - u) % n;
        let lambdas = eigenvalues_dd(g);
        let offsets = (0..n)
            .map(|l| Dd::from_f64((2 * (l * d % n)) as f64).div_f64(n as f64))
            .collect();
        Ok(WalkKernel {
            n,
            lambdas,
            offsets,
        })
    }

    /// Entry of H(t) at real time `t`.
    pub fn amplitude(&self, t: f64) -> Complex64 {
        let t_half_turns = Dd::from_f64(t).div(Dd::PI);
        let mut acc = Complex64::new(0.0, 0.0);
        for l in 0..self.n as usize {
            // phase in half turns: -lambda_l t / pi + 2 l d / n
            let h = self.lambdas[l]
                .mul(t_half_turns)
                .neg()
                .add(self.offsets[l])
                .rem_two();
            let phase = std::f64::consts::PI * h.to_f64();
            acc += Complex64::new(phase.cos(), phase.sin());
        }
        acc / self.n as f64
    }

    /// Entry of H(2 q pi) with the multiplier kept exact; accurate even for
    /// q far beyond what f64 time values could resolve.
    pub fn amplitude_at_two_pi_multiple(&self, q: i128) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for l in 0..self.n as usize {
            let h = self.lambdas[l]
                .mul_i128(2 * q)
                .neg()
                .add(self.offsets[l])
                .rem_two();
            let phase = std::f64::consts::PI * h.to_f64();
            acc += Complex64::new(phase.cos(), phase.sin());
        }
        acc / self.n as f64
    }
}

/// `H(t)_{u,v}` for a circulant graph.
pub fn amplitude(g: &CirculantGraph, u: u64, v: u64, t: f64) -> Result<TransferResult> {
    let kernel = WalkKernel::new(g, u, v)?;
    Ok(TransferResult::from_amplitude(kernel.amplitude(t)))
}

/// `H(2 q pi)_{u,v}` with the 2pi multiple kept exact.
pub fn amplitude_at_two_pi_multiple(
    g: &CirculantGraph,
    u: u64,
    v: u64,
    q: i128,
) -> Result<TransferResult> {
    let kernel = WalkKernel::new(g, u, v)?;
    Ok(TransferResult::from_amplitude(
        kernel.amplitude_at_two_pi_multiple(q),
    ))
}

/// One factor query of a product evaluation.
#[derive(Clone, Debug)]
pub struct AmplitudeQuery<'a> {
    pub graph: &'a CirculantGraph,
    pub u: u64,
    pub v: u64,
    pub t: f64,
}

/// Product-graph amplitude: the transition matrix of a Cartesian product is
/// the tensor product of the factor transition matrices, so the entry is the
/// product of factor entries. All queries must share one time.
pub fn product_amplitude(queries: &[AmplitudeQuery<'_>]) -> Result<TransferResult> {
    let Some(first) = queries.first() else {
        return Err(Error::InvalidArgument(
            "product of zero amplitude queries".into(),
        ));
    };
    for q in &queries[1..] {
        if q.t != first.t {
            return Err(Error::InconsistentQuery {
                left: first.t,
                right: q.t,
            });
        }
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for q in queries {
        acc *= amplitude(q.graph, q.u, q.v, q.t)?.amplitude;
    }
    Ok(TransferResult::from_amplitude(acc))
}

/// Amplitude on a Cartesian product graph with flat vertex indices.
pub fn composite_amplitude(g: &CompositeGraph, u: u64, v: u64, t: f64) -> Result<TransferResult> {
    let us = g.coordinates(u)?;
    let vs = g.coordinates(v)?;
    let mut acc = Complex64::new(1.0, 0.0);
    for (f, (cu, cv)) in g.factors().iter().zip(us.iter().zip(&vs)) {
        acc *= amplitude(&f.graph, *cu, *cv, t)?.amplitude;
    }
    Ok(TransferResult::from_amplitude(acc))
}

/// Product amplitude at an exact 2pi multiple.
pub fn composite_amplitude_at_two_pi_multiple(
    g: &CompositeGraph,
    u: u64,
    v: u64,
    q: i128,
) -> Result<TransferResult> {
    let us = g.coordinates(u)?;
    let vs = g.coordinates(v)?;
    let mut acc = Complex64::new(1.0, 0.0);
    for (f, (cu, cv)) in g.factors().iter().zip(us.iter().zip(&vs)) {
        acc *= amplitude_at_two_pi_multiple(&f.graph, *cu, *cv, q)?.amplitude;
    }
    Ok(TransferResult::from_amplitude(acc))
}

/// Amplitude on the complement graph. Complements of circulants are
/// circulants, so this is a direct evaluation; it agrees with substituting
/// the complement spectrum into the character sum.
pub fn complement_amplitude(g: &CirculantGraph, u: u64, v: u64, t: f64) -> Result<TransferResult> {
    amplitude(&g.complement(), u, v, t)
}

/// Whether `|H(t)_{u,u}| = 1` within 1e-9; by vertex transitivity one vertex
/// decides for all. Integral graphs pass at every multiple of 2pi.
pub fn periodicity_check(g: &CirculantGraph, t: f64) -> bool {
    match amplitude(g, 0, 0, t) {
        Ok(r) => r.fidelity >= 1.0 - 1e-9,
        Err(_) => false,
    }
}

/// Sampled fidelity curve over a uniform time grid.
#[derive(Clone, Debug, Serialize)]
pub struct FidelityCurve {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    #[serde(skip)]
    pub fidelities: Vec<f64>,
    pub argmax: f64,
    pub max: f64,
}

impl FidelityCurve {
    /// CSV export, full round-trip precision, header `t,fidelity`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,fidelity")?;
        for (i, f) in self.fidelities.iter().enumerate() {
            let t = self.start + i as f64 * self.step;
            writeln!(out, "{:.16e},{:.16e}", t, f)?;
        }
        Ok(())
    }
}

/// Grid-search the fidelity |H(t)_{u,v}| over `t = start + i*step`.
///
/// The grid is evaluated in parallel chunks; the reported maximum is the
/// earliest grid point attaining it, identical to a sequential left-to-right
/// scan.
pub fn fidelity_scan(
    g: &CirculantGraph,
    u: u64,
    v: u64,
    start: f64,
    stop: f64,
    step: f64,
) -> Result<FidelityCurve> {
    if !(step > 0.0) || !(start < stop) || !start.is_finite() || !stop.is_finite() {
        return Err(Error::InvalidGrid { start, stop, step });
    }
    let kernel = WalkKernel::new(g, u, v)?;
    let count = ((stop - start) / step).floor() as usize + 1;
    let fidelities: Vec<f64> = (0..count)
        .into_par_iter()
        .map(|i| kernel.amplitude(start + i as f64 * step).norm())
        .collect();
    let mut best = 0usize;
    for (i, f) in fidelities.iter().enumerate() {
        if *f > fidelities[best] {
            best = i;
        }
    }
    Ok(FidelityCurve {
        start,
        stop,
        step,
        argmax: start + best as f64 * step,
        max: fidelities[best],
        fidelities,
    })
}
