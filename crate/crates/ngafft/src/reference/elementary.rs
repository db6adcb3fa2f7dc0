//! Elementary functions (exp, sin, cos) at reference precision.
//!
//! Arguments are reduced with three-part Cody-Waite constants carrying 368
//! significant bits, then evaluated with Horner polynomials at 128-bit
//! precision. Within the argument ranges the benchmarks use (|x| well below
//! 2^8) results are accurate to a couple of final-bit ulps, far inside the
//! one-ulp-at-113-bits contract. Twiddle-style angles are handled by the
//! `*_2pi_ratio` entry points, which reduce the rational angle exactly in
//! integer arithmetic so multiples of pi/2 come out exact.

use super::RefReal;
use once_cell::sync::Lazy;

// 448-bit big-endian significands; value = 0.w0w1... * 2^(top_exp + 1).
const PI_WORDS: [u64; 7] = [
    0xc90fdaa22168c234,
    0xc4c6628b80dc1cd1,
    0x29024e088a67cc74,
    0x020bbea63b139b22,
    0x514a08798e3404dd,
    0xef9519b3cd3a431b,
    0x302b0a6df25f1437,
];
const PI_TOP_EXP: i32 = 1;

const LN2_WORDS: [u64; 7] = [
    0xb17217f7d1cf79ab,
    0xc9e3b39803f2f6af,
    0x40f343267298b62d,
    0x8a0d175b8baafa2b,
    0xe7b876206debac98,
    0x559552fb4afa1b10,
    0xed2eae35c1382144,
];
const LN2_TOP_EXP: i32 = -1;

/// Extracts bits [start, start+len) (0 = msb) as an integer; len <= 128.
fn bit_window(words: &[u64; 7], start: u32, len: u32) -> u128 {
    debug_assert!(len <= 128 && start + len <= 448);
    let mut out: u128 = 0;
    for i in start..start + len {
        let bit = (words[(i / 64) as usize] >> (63 - i % 64)) & 1;
        out = (out << 1) | bit as u128;
    }
    out
}

/// Exact constant from a bit slice: integer(bits) * 2^(top_exp - start - len + 1).
fn const_part(words: &[u64; 7], top_exp: i32, start: u32, len: u32) -> RefReal {
    RefReal::from_parts(false, top_exp - (start + len) as i32 + 1 + 127, bit_window(words, start, len))
}

/// Top 128 bits, correctly rounded from the full 448.
fn const_rounded(words: &[u64; 7], top_exp: i32) -> RefReal {
    let mant = bit_window(words, 0, 128);
    let guard = bit_window(words, 128, 1) == 1;
    let sticky = (129..448).step_by(64).any(|s| {
        let l = (448 - s).min(64) as u32;
        bit_window(words, s as u32, l) != 0
    });
    let mut m = mant;
    let mut e = top_exp;
    if guard && (sticky || m & 1 == 1) {
        let (mm, c) = m.overflowing_add(1);
        if c {
            m = 1 << 127;
            e += 1;
        } else {
            m = mm;
        }
    }
    RefReal::from_parts(false, e, m)
}

struct Reduction {
    c1: RefReal,
    c2: RefReal,
    c3: RefReal,
}

fn reduction(words: &'static [u64; 7], top_exp: i32) -> Reduction {
    Reduction {
        c1: const_part(words, top_exp, 0, 120),
        c2: const_part(words, top_exp, 120, 120),
        c3: const_part(words, top_exp, 240, 128),
    }
}

static PI_FULL: Lazy<RefReal> = Lazy::new(|| const_rounded(&PI_WORDS, PI_TOP_EXP));
static LN2_FULL: Lazy<RefReal> = Lazy::new(|| const_rounded(&LN2_WORDS, LN2_TOP_EXP));
static INV_LN2: Lazy<RefReal> = Lazy::new(|| RefReal::ONE / *LN2_FULL);
static TWO_OVER_PI: Lazy<RefReal> = Lazy::new(|| RefReal::TWO / *PI_FULL);
// pi/2 shares pi's significand with the exponent dropped by one.
static PI2_PARTS: Lazy<Reduction> = Lazy::new(|| reduction(&PI_WORDS, PI_TOP_EXP - 1));
static LN2_PARTS: Lazy<Reduction> = Lazy::new(|| reduction(&LN2_WORDS, LN2_TOP_EXP));

/// Pi correctly rounded to reference precision.
pub fn pi() -> RefReal {
    *PI_FULL
}

fn factorial_coeffs(n: usize, stride: usize, offset: usize, alternating: bool) -> Vec<RefReal> {
    // coeffs[m] = (+-1)^m / (stride*m + offset)!
    let mut out = Vec::with_capacity(n + 1);
    let mut fact = RefReal::ONE;
    let mut idx: u64 = 0;
    for m in 0..=n {
        let target = (stride * m + offset) as u64;
        while idx < target {
            idx += 1;
            fact = fact * RefReal::from_i64(idx as i64);
        }
        let c = RefReal::ONE / fact;
        out.push(if alternating && m % 2 == 1 { -c } else { c });
    }
    out
}

static EXP_COEFFS: Lazy<Vec<RefReal>> = Lazy::new(|| factorial_coeffs(30, 1, 0, false));
static SIN_COEFFS: Lazy<Vec<RefReal>> = Lazy::new(|| factorial_coeffs(17, 2, 1, true));
static COS_COEFFS: Lazy<Vec<RefReal>> = Lazy::new(|| factorial_coeffs(17, 2, 0, true));

fn horner(coeffs: &[RefReal], x: RefReal) -> RefReal {
    let mut p = coeffs[coeffs.len() - 1];
    for c in coeffs.iter().rev().skip(1) {
        p = p * x + *c;
    }
    p
}

/// sin on the reduced range |r| <= pi/4 (plus reduction slack).
fn sin_core(r: RefReal) -> RefReal {
    if r.is_zero() {
        return r;
    }
    r * horner(&SIN_COEFFS, r * r)
}

/// cos on the reduced range |r| <= pi/4.
fn cos_core(r: RefReal) -> RefReal {
    horner(&COS_COEFFS, r * r)
}

impl RefReal {
    /// e^x, accurate to a few ulps at reference precision. exp(-inf) = 0.
    pub fn exp(self) -> RefReal {
        if self.is_nan() {
            return RefReal::NAN;
        }
        if self.is_infinite() {
            return if self.is_sign_negative() { RefReal::ZERO } else { RefReal::INFINITY };
        }
        if self.is_zero() {
            return RefReal::ONE;
        }
        // Beyond 2^30 the result exponent leaves the representable range.
        if self.exponent() >= 30 {
            return if self.is_sign_negative() { RefReal::ZERO } else { RefReal::INFINITY };
        }
        let k = (self * *INV_LN2).round_to_i64();
        let kr = RefReal::from_i64(k);
        let p = &*LN2_PARTS;
        let r = ((self - kr * p.c1) - kr * p.c2) - kr * p.c3;
        horner(&EXP_COEFFS, r).scale2(k as i32)
    }

    /// sin x; argument reduction supports |x| < 2^61 (NaN beyond).
    pub fn sin(self) -> RefReal {
        if self.is_nan() || self.is_infinite() {
            return RefReal::NAN;
        }
        if self.is_zero() {
            return self;
        }
        if self.exponent() >= 61 {
            return RefReal::NAN;
        }
        let k = (self * *TWO_OVER_PI).round_to_i64();
        let r = reduce_pi_over_2(self, k);
        match k.rem_euclid(4) {
            0 => sin_core(r),
            1 => cos_core(r),
            2 => -sin_core(r),
            _ => -cos_core(r),
        }
    }

    /// cos x; argument reduction supports |x| < 2^61 (NaN beyond).
    pub fn cos(self) -> RefReal {
        if self.is_nan() || self.is_infinite() {
            return RefReal::NAN;
        }
        if self.is_zero() {
            return RefReal::ONE;
        }
        if self.exponent() >= 61 {
            return RefReal::NAN;
        }
        let k = (self * *TWO_OVER_PI).round_to_i64();
        let r = reduce_pi_over_2(self, k);
        match k.rem_euclid(4) {
            0 => cos_core(r),
            1 => -sin_core(r),
            2 => -cos_core(r),
            _ => sin_core(r),
        }
    }
}

fn reduce_pi_over_2(x: RefReal, k: i64) -> RefReal {
    let kr = RefReal::from_i64(k);
    let p = &*PI2_PARTS;
    ((x - kr * p.c1) - kr * p.c2) - kr * p.c3
}

/// cos(2*pi*j/n) with the rational angle reduced exactly in integers, so
/// quadrant-boundary angles produce exact 0/1/-1.
pub fn cos_2pi_ratio(j: i128, n: u128) -> RefReal {
    let (quad, delta) = reduce_2pi_ratio(j, n);
    match (quad, delta) {
        (0, None) => RefReal::ONE,
        (1, None) | (3, None) => RefReal::ZERO,
        (2, None) => -RefReal::ONE,
        (0, Some(d)) => cos_core(d),
        (1, Some(d)) => -sin_core(d),
        (2, Some(d)) => -cos_core(d),
        (_, Some(d)) => sin_core(d),
        _ => unreachable!(),
    }
}

/// sin(2*pi*j/n); see [`cos_2pi_ratio`].
pub fn sin_2pi_ratio(j: i128, n: u128) -> RefReal {
    let (quad, delta) = reduce_2pi_ratio(j, n);
    match (quad, delta) {
        (0, None) | (2, None) => RefReal::ZERO,
        (1, None) => RefReal::ONE,
        (3, None) => -RefReal::ONE,
        (0, Some(d)) => sin_core(d),
        (1, Some(d)) => cos_core(d),
        (2, Some(d)) => -sin_core(d),
        (_, Some(d)) => -cos_core(d),
        _ => unreachable!(),
    }
}

/// Reduces 2*pi*j/n to quadrant k (angle = k*pi/2 + delta, |delta| <= pi/4).
/// Returns `None` for delta when the angle is an exact quadrant boundary.
fn reduce_2pi_ratio(j: i128, n: u128) -> (u8, Option<RefReal>) {
    assert!(n > 0 && n <= 1 << 100, "ratio denominator out of range");
    let n = n as i128;
    let j = j.rem_euclid(n);
    // k = round(4j/n), e = 4j - k*n, |e| <= n/2.
    let k = (8 * j + n) / (2 * n);
    let e = 4 * j - k * n;
    if e == 0 {
        return ((k % 4) as u8, None);
    }
    let delta = *PI_FULL * RefReal::from_parts(e < 0, 127, e.unsigned_abs())
        / RefReal::from_u128(2 * n as u128);
    ((k % 4) as u8, Some(delta))
}
