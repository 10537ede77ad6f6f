//! Double-double arithmetic for phase reduction at large evolution times.
//!
//! A [`Dd`] is an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, carrying
//! roughly 31 significant decimal digits. Phases `q * lambda` for multipliers
//! `q` up to ~1e18 keep enough fractional precision after reduction mod 2pi
//! that plain `f64` would lose to catastrophic cancellation.

use serde::{Deserialize, Serialize};

/// Unevaluated double-double value `hi + lo`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b| or a == 0
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

#[inline]
fn renorm(a: f64, b: f64) -> Dd {
    let (hi, lo) = quick_two_sum(a, b);
    Dd { hi, lo }
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// pi to double-double precision.
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };
    /// 2*pi to double-double precision.
    pub const TWO_PI: Dd = Dd {
        hi: 6.283_185_307_179_586,
        lo: 2.449_293_598_294_706_4e-16,
    };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        renorm(s, e + self.lo + o.lo)
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Dd {
        let (s, e) = two_sum(self.hi, b);
        renorm(s, e + self.lo)
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    pub fn sub_f64(self, b: f64) -> Dd {
        self.add_f64(-b)
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        renorm(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        renorm(p, self.lo.mul_add(b, e))
    }

    /// Multiply by an exact power of two (error free).
    #[inline]
    pub fn scale2(self, s: f64) -> Dd {
        Dd {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    #[inline]
    pub fn div_f64(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let (p, e) = two_prod(q1, d);
        let r = ((self.hi - p) - e) + self.lo;
        let q2 = r / d;
        renorm(q1, q2)
    }

    pub fn div(self, d: Dd) -> Dd {
        let q1 = self.hi / d.hi;
        let r1 = self.sub(d.mul_f64(q1));
        let q2 = r1.hi / d.hi;
        let r2 = r1.sub(d.mul_f64(q2));
        let q3 = r2.hi / d.hi;
        renorm(q1, q2).add_f64(q3)
    }

    /// Multiply by an integer of magnitude below 2^106, splitting into
    /// f64-exact chunks.
    pub fn mul_i128(self, q: i128) -> Dd {
        let neg = q < 0;
        let mut a = q.unsigned_abs();
        debug_assert!(a < (1u128 << 106));
        let mut parts = [0.0f64; 3];
        let mut scale = 1.0f64;
        let mut scales = [1.0f64; 3];
        let mut k = 0;
        while a > 0 {
            parts[k] = (a & ((1u128 << 53) - 1)) as f64;
            scales[k] = scale;
            a >>= 53;
            scale *= 9_007_199_254_740_992.0; // 2^53
            k += 1;
        }
        let mut acc = Dd::ZERO;
        for i in 0..k {
            acc = acc.add(self.mul_f64(parts[i]).scale2(scales[i]));
        }
        if neg {
            acc.neg()
        } else {
            acc
        }
    }

    /// Nearest integer, with the low word deciding exact halves.
    ///
    /// Beyond 2^53 the high word alone no longer locates the nearest
    /// integer (its spacing exceeds 1), so the remainder is folded in twice.
    pub fn round_i128(self) -> i128 {
        let r0 = self.hi.round();
        let rem = self.sub_f64(r0); // exact
        let r1 = rem.hi.round();
        let rem2 = rem.sub_f64(r1); // exact, |rem2| <= 0.5 + tiny
        let mut k = r0 as i128 + r1 as i128;
        if rem2.hi > 0.5 || (rem2.hi == 0.5 && rem2.lo > 0.0) {
            k += 1;
        } else if rem2.hi < -0.5 || (rem2.hi == -0.5 && rem2.lo < 0.0) {
            k -= 1;
        }
        k
    }

    /// Reduce modulo 2 into the half-open interval (-1, 1].
    ///
    /// Used for phases measured in half turns: `x` half turns equal `pi*x`
    /// radians, so this is reduction mod 2pi without ever multiplying the
    /// unreduced phase by pi. Above 2^53 one subtraction leaves a remainder
    /// as large as ulp(hi)/2, so the reduction loops until the head settles.
    pub fn rem_two(self) -> Dd {
        let mut r = self;
        loop {
            let k = (r.hi * 0.5).round();
            if k == 0.0 {
                break;
            }
            let two_k = 2.0 * k;
            let (s, e) = two_sum(r.hi, -two_k);
            r = renorm(s, e + r.lo);
            if r.hi.abs() <= 1.0 {
                break;
            }
        }
        if r.hi > 1.0 || (r.hi == 1.0 && r.lo > 0.0) {
            r = r.sub_f64(2.0);
        } else if r.hi < -1.0 || (r.hi == -1.0 && r.lo <= 0.0) {
            r = r.add_f64(2.0);
        }
        r
    }

    /// cos for |x| <= ~1.6 by Taylor series in double-double.
    fn cos_small(self) -> Dd {
        let neg_x2 = self.mul(self).neg();
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        let mut k = 0u32;
        loop {
            k += 2;
            term = term.mul(neg_x2).div_f64(((k - 1) * k) as f64);
            sum = sum.add(term);
            if term.hi.abs() < 1e-35 {
                break;
            }
        }
        sum
    }
}

/// cos(2*pi*num/den) in double-double, for 0 <= num < den.
///
/// Symmetries fold the argument into [0, pi/2] before the series, and the
/// rational multiples with exact cosines 0, +-1 short-circuit.
pub fn cos_two_pi_ratio(num: u64, den: u64) -> Dd {
    debug_assert!(den > 0);
    let num = num % den;
    let m = num.min(den - num);
    if m == 0 {
        return Dd::ONE;
    }
    if 2 * m == den {
        return Dd::ONE.neg();
    }
    if 4 * m == den {
        return Dd::ZERO;
    }
    if 4 * m < den {
        Dd::TWO_PI.mul_f64(m as f64).div_f64(den as f64).cos_small()
    } else {
        // cos(2pi m/den) = -cos(pi (den - 2m)/den), argument now below pi/2
        Dd::PI
            .mul_f64((den - 2 * m) as f64)
            .div_f64(den as f64)
            .cos_small()
            .neg()
    }
}
