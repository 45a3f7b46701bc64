//! Outward-rounded fixed-point intervals over big integers.
//!
//! An [`Interval`] holds `[lo, hi] * 2^-bits`. Every operation rounds the
//! lower endpoint down and the upper endpoint up, so the true value of any
//! expression stays enclosed regardless of the working precision.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

impl Interval {
    pub fn from_rational(x: &BigRational, bits: u32) -> Self {
        let scaled = x.numer() << bits;
        Interval {
            lo: floor_div(&scaled, x.denom()),
            hi: ceil_div(&scaled, x.denom()),
            bits,
        }
    }

    /// Smallest interval at `bits` containing `[lo, hi]`.
    pub fn hull(lo: &BigRational, hi: &BigRational, bits: u32) -> Self {
        debug_assert!(lo <= hi);
        Interval {
            lo: Self::from_rational(lo, bits).lo,
            hi: Self::from_rational(hi, bits).hi,
            bits,
        }
    }

    pub fn width(&self) -> f64 {
        let w = &self.hi - &self.lo;
        ratio_to_f64(&w, self.bits)
    }

    #[cfg(test)]
    fn lower_f64(&self) -> f64 {
        ratio_to_f64(&self.lo, self.bits)
    }

    #[cfg(test)]
    fn upper_f64(&self) -> f64 {
        ratio_to_f64(&self.hi, self.bits)
    }

    /// Smallest `f64` not below the upper endpoint.
    pub fn upper_bound_f64(&self) -> f64 {
        let hi = BigRational::new(self.hi.clone(), pow2(self.bits));
        let mut v = hi.to_f64().unwrap_or(f64::INFINITY);
        while v.is_finite() && BigRational::from_float(v).is_some_and(|f| f < hi) {
            v = v.next_up();
        }
        v
    }

    /// Largest `f64` not above the lower endpoint.
    pub fn lower_bound_f64(&self) -> f64 {
        let lo = BigRational::new(self.lo.clone(), pow2(self.bits));
        let mut v = lo.to_f64().unwrap_or(f64::NEG_INFINITY);
        while v.is_finite() && BigRational::from_float(v).is_some_and(|f| f > lo) {
            v = v.next_down();
        }
        v
    }

    /// Multiplies a nonnegative interval by a positive rational.
    pub fn scale_positive(&self, factor: &BigRational) -> Self {
        debug_assert!(factor.is_positive());
        debug_assert!(!self.lo.is_negative());
        Interval {
            lo: floor_div(&(&self.lo * factor.numer()), factor.denom()),
            hi: ceil_div(&(&self.hi * factor.numer()), factor.denom()),
            bits: self.bits,
        }
    }

    /// Enclosure of `exp` over the interval.
    pub fn exp(&self) -> Self {
        Interval {
            lo: exp_enclosure(&self.lo, self.bits).0,
            hi: exp_enclosure(&self.hi, self.bits).1,
            bits: self.bits,
        }
    }

    /// The integers contained in the interval, as `(first, last)`, or `None`
    /// when it holds no integer.
    pub fn integer_range(&self) -> Option<(BigInt, BigInt)> {
        let unit = pow2(self.bits);
        let first = ceil_div(&self.lo, &unit);
        let last = floor_div(&self.hi, &unit);
        (first <= last).then_some((first, last))
    }
}

fn ratio_to_f64(x: &BigInt, bits: u32) -> f64 {
    BigRational::new(x.clone(), pow2(bits))
        .to_f64()
        .unwrap_or(f64::NAN)
}

/// Bounds `(lo, hi)` on `exp(x * 2^-bits)`, both scaled by `2^bits`.
fn exp_enclosure(x: &BigInt, bits: u32) -> (BigInt, BigInt) {
    // Reduce to |y| <= 1/2 with y = x / 2^(bits + r), then square r times.
    let magnitude_bits = x.bits() as i64;
    let r = (magnitude_bits - bits as i64 + 1).max(0) as u32;
    let guard = r + 64;
    let q = bits + guard;
    let unit = pow2(q);
    // Exact: y at scale q.
    let y = x << (q - bits - r);

    let mut term_lo = unit.clone();
    let mut term_hi = unit.clone();
    let mut sum_lo = unit.clone();
    let mut sum_hi = unit.clone();
    let mut j: u64 = 1;
    loop {
        let a = &term_lo * &y;
        let b = &term_hi * &y;
        let (pmin, pmax) = if a <= b { (a, b) } else { (b, a) };
        let denom = &unit * BigInt::from(j);
        term_lo = floor_div(&pmin, &denom);
        term_hi = ceil_div(&pmax, &denom);
        sum_lo += &term_lo;
        sum_hi += &term_hi;
        let largest = term_lo.abs().max(term_hi.abs());
        if largest <= BigInt::one() {
            break;
        }
        j += 1;
    }
    // With |y| <= 1/2 the remainder is at most the last term in magnitude.
    sum_lo -= 2;
    sum_hi += 2;
    if sum_lo.sign() == Sign::Minus {
        sum_lo = BigInt::zero();
    }

    for _ in 0..r {
        sum_lo = floor_div(&(&sum_lo * &sum_lo), &unit);
        sum_hi = ceil_div(&(&sum_hi * &sum_hi), &unit);
    }

    let down = pow2(guard);
    (floor_div(&sum_lo, &down), ceil_div(&sum_hi, &down))
}
