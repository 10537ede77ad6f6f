//! Exact arithmetic in Z[w] for w a primitive n-th root of unity.
//!
//! Elements are integer coefficient vectors of length phi(n) in the power
//! basis 1, w, ..., w^(phi(n)-1), reduced modulo the n-th cyclotomic
//! polynomial. Phi_n is monic, so reduction stays over the integers and the
//! representation is canonical: two elements are equal iff their vectors are.

use crate::arith::{divisors, euler_phi};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Coefficients of the n-th cyclotomic polynomial, low degree first;
/// the result has degree phi(n) and is monic.
///
/// Computed by exact division: Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
pub fn cyclotomic_poly(n: u64) -> Result<Vec<BigInt>> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "cyclotomic polynomial index must be >= 1".into(),
        ));
    }
    if n == 1 {
        return Ok(vec![BigInt::from(-1), BigInt::one()]);
    }
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_poly(d)?;
        num = poly_div_exact(&num, &phi_d);
    }
    Ok(num)
}

/// Exact division of `num` by monic `den`; panics if the remainder is
/// nonzero, which cannot happen for the cyclotomic cascade.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                let t = &c * d;
                rem[k + j] -= t;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quot
}

/// Exact element of Z[w_n] in the power basis mod Phi_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicInteger {
    conductor: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInteger {
    pub fn zero(conductor: u64) -> Result<Self> {
        if conductor < 1 {
            return Err(Error::InvalidArgument("conductor must be >= 1".into()));
        }
        Ok(CyclotomicInteger {
            conductor,
            coeffs: vec![BigInt::zero(); euler_phi(conductor) as usize],
        })
    }

    pub fn from_integer(conductor: u64, value: impl Into<BigInt>) -> Result<Self> {
        let mut z = Self::zero(conductor)?;
        z.coeffs[0] = value.into();
        Ok(z)
    }

    /// w^k reduced mod Phi_n.
    pub fn root_power(conductor: u64, k: u64) -> Result<Self> {
        let n = conductor;
        if n < 1 {
            return Err(Error::InvalidArgument("conductor must be >= 1".into()));
        }
        let k = (k % n) as usize;
        let mut raw = vec![BigInt::zero(); k + 1];
        raw[k] = BigInt::one();
        Ok(Self::reduce_raw(n, raw))
    }

    /// Reduce an arbitrary-degree polynomial in w to canonical form.
    fn reduce_raw(conductor: u64, mut raw: Vec<BigInt>) -> Self {
        let phi =
            cyclotomic_poly(conductor).expect("conductor validated by caller");
        let deg = phi.len() - 1;
        while raw.len() > deg {
            let top = raw.pop().unwrap();
            if !top.is_zero() {
                // popped term was top * x^(deg + e); x^deg = -sum Phi_j x^j
                let e = raw.len() - deg;
                for (j, c) in phi.iter().take(deg).enumerate() {
                    let t = &top * c;
                    raw[e + j] -= t;
                }
            }
        }
        raw.resize(deg, BigInt::zero());
        CyclotomicInteger {
            conductor,
            coeffs: raw,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(value) iff the element lies in Z (all non-constant coordinates
    /// vanish).
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor, "conductor mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicInteger {
            conductor: self.conductor,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor, "conductor mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CyclotomicInteger {
            conductor: self.conductor,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicInteger {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        CyclotomicInteger {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor, "conductor mismatch");
        let mut raw = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Self::reduce_raw(self.conductor, raw)
    }

    /// Numeric value at w = exp(2 pi i / n).
    pub fn eval_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * (j as f64) / n;
            let c = bigint_to_f64(c);
            acc += Complex64::new(c * angle.cos(), c * angle.sin());
        }
        acc
    }
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    // num-bigint's to_f64 never fails for values in f64 range; our
    // coefficients stay tiny (sums of roots of unity).
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::INFINITY)
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = c.abs();
            if j == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "w^{j}")?;
            } else {
                write!(f, "{a}*w^{j}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicWire {
    conductor: u64,
    coefficients: Vec<String>,
}

impl Serialize for CyclotomicInteger {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicWire {
            conductor: self.conductor,
            coefficients: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CyclotomicInteger {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = CyclotomicWire::deserialize(deserializer)?;
        let phi = euler_phi(wire.conductor) as usize;
        if wire.coefficients.len() != phi {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for conductor {}",
                phi, wire.conductor
            )));
        }
        let coeffs = wire
            .coefficients
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CyclotomicInteger {
            conductor: wire.conductor,
            coeffs,
        })
    }
}
