//! Extended-precision real arithmetic used as ground truth everywhere else.
//!
//! `RefReal` is a software float with a 128-bit significand and an `i32`
//! binary exponent. All basic operations (+, -, *, /, sqrt) are correctly
//! rounded (round-to-nearest, ties-to-even) at 128 significand bits, which
//! comfortably exceeds the binary128 precision the benchmarks are defined
//! against. The wide exponent range means intermediate quantities in
//! unstable PDE runs never overflow the reference path.

mod elementary;
pub(crate) mod wide;

use wide::*;

/// Significand bits carried by every finite `RefReal`.
pub const PRECISION: u32 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Zero,
    Finite,
    Infinite,
    Nan,
}

/// Extended-precision real number (128-bit significand, i32 exponent).
///
/// Finite nonzero values are `(-1)^sign * mant * 2^(exp - 127)` with
/// `mant` normalized to `[2^127, 2^128)`, i.e. the magnitude lies in
/// `[2^exp, 2^(exp+1))`. Zero keeps its sign so IEEE -0 encodings survive
/// round trips.
#[derive(Clone, Copy, Debug)]
pub struct RefReal {
    class: Class,
    sign: bool,
    exp: i32,
    mant: u128,
}

const TOP_BIT: u128 = 1 << 127;

impl RefReal {
    pub const ZERO: RefReal = RefReal { class: Class::Zero, sign: false, exp: 0, mant: 0 };
    pub const NEG_ZERO: RefReal = RefReal { class: Class::Zero, sign: true, exp: 0, mant: 0 };
    pub const ONE: RefReal = RefReal { class: Class::Finite, sign: false, exp: 0, mant: TOP_BIT };
    pub const TWO: RefReal = RefReal { class: Class::Finite, sign: false, exp: 1, mant: TOP_BIT };
    pub const INFINITY: RefReal = RefReal { class: Class::Infinite, sign: false, exp: 0, mant: 0 };
    pub const NEG_INFINITY: RefReal =
        RefReal { class: Class::Infinite, sign: true, exp: 0, mant: 0 };
    pub const NAN: RefReal = RefReal { class: Class::Nan, sign: false, exp: 0, mant: 0 };

    /// Builds a finite value `(-1)^sign * mant * 2^(exp - 127)`; `mant` need
    /// not be normalized. Exact.
    pub fn from_parts(sign: bool, exp: i32, mant: u128) -> RefReal {
        if mant == 0 {
            return if sign { RefReal::NEG_ZERO } else { RefReal::ZERO };
        }
        let lz = mant.leading_zeros();
        RefReal { class: Class::Finite, sign, exp: exp - lz as i32, mant: mant << lz }
    }

    pub fn from_u128(v: u128) -> RefReal {
        RefReal::from_parts(false, 127, v)
    }

    pub fn from_i64(v: i64) -> RefReal {
        RefReal::from_parts(v < 0, 127, v.unsigned_abs() as u128)
    }

    pub fn from_usize(v: usize) -> RefReal {
        RefReal::from_u128(v as u128)
    }

    /// Correctly rounded rational `num / den`.
    pub fn from_ratio(num: i128, den: u128) -> RefReal {
        RefReal::from_parts(num < 0, 127, num.unsigned_abs()) / RefReal::from_u128(den)
    }

    /// Exact conversion from `f64` (every double is representable).
    pub fn from_f64(v: f64) -> RefReal {
        if v.is_nan() {
            return RefReal::NAN;
        }
        if v.is_infinite() {
            return if v < 0.0 { RefReal::NEG_INFINITY } else { RefReal::INFINITY };
        }
        let bits = v.to_bits();
        let sign = bits >> 63 != 0;
        let biased = ((bits >> 52) & 0x7FF) as i32;
        let frac = (bits & 0xF_FFFF_FFFF_FFFF) as u128;
        if biased == 0 {
            // Subnormal or zero: value = frac * 2^-1074.
            if frac == 0 {
                return if sign { RefReal::NEG_ZERO } else { RefReal::ZERO };
            }
            RefReal::from_parts(sign, -1074 + 127, frac)
        } else {
            // value = (2^52 + frac) * 2^(biased - 1075)
            RefReal::from_parts(sign, biased - 1075 + 127, (1u128 << 52) | frac)
        }
    }

    /// Nearest `f64` (ties to even); overflows to +-inf, underflows to +-0.
    pub fn to_f64(self) -> f64 {
        match self.class {
            Class::Nan => f64::NAN,
            Class::Infinite => {
                if self.sign {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            }
            Class::Zero => {
                if self.sign {
                    -0.0
                } else {
                    0.0
                }
            }
            Class::Finite => {
                if self.exp > 1024 {
                    return if self.sign { f64::NEG_INFINITY } else { f64::INFINITY };
                }
                if self.exp < -1080 {
                    return if self.sign { -0.0 } else { 0.0 };
                }
                // Round the significand to 54 bits, then let scaling by exact
                // powers of two perform the final (possibly subnormal) fit.
                let keep = 54u32;
                let dropped = PRECISION - keep;
                let mut top = (self.mant >> dropped) as u64;
                let tail = self.mant << keep;
                let guard = tail >> 127 != 0;
                let sticky = tail << 1 != 0;
                if guard && (sticky || top & 1 == 1) {
                    top += 1;
                }
                let mut x = top as f64;
                let mut s = self.exp - 127 + dropped as i32;
                while s > 0 {
                    let step = s.min(1000);
                    x *= f64::from_bits(((1023 + step) as u64) << 52);
                    s -= step;
                }
                while s < 0 {
                    let step = (-s).min(1000);
                    x *= f64::from_bits(((1023 - step) as u64) << 52);
                    s += step;
                }
                if self.sign {
                    -x
                } else {
                    x
                }
            }
        }
    }

    pub fn is_nan(self) -> bool {
        self.class == Class::Nan
    }

    pub fn is_infinite(self) -> bool {
        self.class == Class::Infinite
    }

    pub fn is_finite(self) -> bool {
        matches!(self.class, Class::Zero | Class::Finite)
    }

    pub fn is_zero(self) -> bool {
        self.class == Class::Zero
    }

    pub fn is_sign_negative(self) -> bool {
        self.sign
    }

    /// Floor of log2(|x|); requires a finite nonzero value.
    pub fn exponent(self) -> i32 {
        debug_assert_eq!(self.class, Class::Finite);
        self.exp
    }

    /// Normalized 128-bit significand (top bit set); requires finite nonzero.
    pub fn significand(self) -> u128 {
        debug_assert_eq!(self.class, Class::Finite);
        self.mant
    }

    pub fn abs(self) -> RefReal {
        let mut r = self;
        r.sign = false;
        r
    }

    /// `2^k`, exact.
    pub fn pow2(k: i32) -> RefReal {
        RefReal { class: Class::Finite, sign: false, exp: k, mant: TOP_BIT }
    }

    /// Multiplies by `2^k`, exact.
    pub fn scale2(self, k: i32) -> RefReal {
        match self.class {
            Class::Finite => RefReal { exp: self.exp + k, ..self },
            _ => self,
        }
    }

    fn cmp_magnitude(a: RefReal, b: RefReal) -> core::cmp::Ordering {
        use core::cmp::Ordering;
        match (a.class, b.class) {
            (Class::Zero, Class::Zero) => Ordering::Equal,
            (Class::Zero, _) => Ordering::Less,
            (_, Class::Zero) => Ordering::Greater,
            _ => a.exp.cmp(&b.exp).then(a.mant.cmp(&b.mant)),
        }
    }

    /// Rounds a 256-bit window to 128 significand bits (RNE). Bit 255 of the
    /// window carries binary exponent `top_exp`; `extra_sticky` accounts for
    /// bits already discarded below the window (always strictly below the
    /// rounding guard position for every caller).
    fn round_from_window(sign: bool, top_exp: i32, window: U256, extra_sticky: bool) -> RefReal {
        if is_zero256(window) {
            debug_assert!(!extra_sticky);
            return if sign { RefReal::NEG_ZERO } else { RefReal::ZERO };
        }
        let lz = leading_zeros256(window);
        let norm = shl256(window, lz);
        let mut mant = norm.0;
        let guard = norm.1 >> 127 != 0;
        let sticky = extra_sticky || norm.1 << 1 != 0;
        let mut exp = top_exp - lz as i32;
        if guard && (sticky || mant & 1 == 1) {
            let (m, carry) = mant.overflowing_add(1);
            if carry {
                mant = TOP_BIT;
                exp += 1;
            } else {
                mant = m;
            }
        }
        RefReal { class: Class::Finite, sign, exp, mant }
    }

    fn add_magnitudes(big: RefReal, small: RefReal, sign: bool) -> RefReal {
        // |big| >= |small|, both finite nonzero. Mantissas are placed with
        // their top bit at window position 254, so the sum never overflows.
        let d = (big.exp - small.exp) as u32;
        let a: U256 = (big.mant >> 1, (big.mant & 1) << 127);
        let (b, sticky) = if d >= 255 {
            (ZERO256, true)
        } else {
            shr256_sticky((small.mant >> 1, (small.mant & 1) << 127), d)
        };
        let (sum, carry) = add256(a, b);
        debug_assert!(!carry);
        RefReal::round_from_window(sign, big.exp + 1, sum, sticky)
    }

    fn sub_magnitudes(big: RefReal, small: RefReal, sign: bool) -> RefReal {
        // |big| > |small|, both finite nonzero; the result carries `sign`.
        let d = (big.exp - small.exp) as u32;
        let a: U256 = (big.mant >> 1, (big.mant & 1) << 127);
        if d >= 256 {
            // The subtrahend lies entirely below the window: borrow one
            // window ulp and mark sticky (value = diff + (1 - eps)).
            let diff = sub256(a, (0, 1));
            return RefReal::round_from_window(sign, big.exp + 1, diff, true);
        }
        let (b, dropped) = shr256_sticky((small.mant >> 1, (small.mant & 1) << 127), d);
        let mut diff = sub256(a, b);
        if dropped {
            // True value is diff - eps with eps in (0, 1) window ulps. Heavy
            // cancellation requires d <= 1, which never drops bits, so this
            // correction stays below the rounding guard.
            diff = sub256(diff, (0, 1));
        }
        RefReal::round_from_window(sign, big.exp + 1, diff, dropped)
    }

    fn add_impl(a: RefReal, b: RefReal) -> RefReal {
        use Class::*;
        match (a.class, b.class) {
            (Nan, _) | (_, Nan) => RefReal::NAN,
            (Infinite, Infinite) => {
                if a.sign == b.sign {
                    a
                } else {
                    RefReal::NAN
                }
            }
            (Infinite, _) => a,
            (_, Infinite) => b,
            (Zero, Zero) => {
                if a.sign && b.sign {
                    RefReal::NEG_ZERO
                } else {
                    RefReal::ZERO
                }
            }
            (Zero, _) => b,
            (_, Zero) => a,
            (Finite, Finite) => {
                if a.sign == b.sign {
                    if RefReal::cmp_magnitude(a, b) == core::cmp::Ordering::Less {
                        RefReal::add_magnitudes(b, a, a.sign)
                    } else {
                        RefReal::add_magnitudes(a, b, a.sign)
                    }
                } else {
                    match RefReal::cmp_magnitude(a, b) {
                        core::cmp::Ordering::Equal => RefReal::ZERO,
                        core::cmp::Ordering::Greater => RefReal::sub_magnitudes(a, b, a.sign),
                        core::cmp::Ordering::Less => RefReal::sub_magnitudes(b, a, b.sign),
                    }
                }
            }
        }
    }

    fn mul_impl(a: RefReal, b: RefReal) -> RefReal {
        use Class::*;
        let sign = a.sign ^ b.sign;
        match (a.class, b.class) {
            (Nan, _) | (_, Nan) => RefReal::NAN,
            (Infinite, Zero) | (Zero, Infinite) => RefReal::NAN,
            (Infinite, _) | (_, Infinite) => {
                if sign {
                    RefReal::NEG_INFINITY
                } else {
                    RefReal::INFINITY
                }
            }
            (Zero, _) | (_, Zero) => {
                if sign {
                    RefReal::NEG_ZERO
                } else {
                    RefReal::ZERO
                }
            }
            (Finite, Finite) => {
                // Product of two normalized mantissas is in [2^254, 2^256);
                // bit 255 of the window carries exponent a.exp + b.exp + 1.
                let prod = mul_128x128(a.mant, b.mant);
                RefReal::round_from_window(sign, a.exp + b.exp + 1, prod, false)
            }
        }
    }

    fn div_impl(a: RefReal, b: RefReal) -> RefReal {
        use Class::*;
        let sign = a.sign ^ b.sign;
        match (a.class, b.class) {
            (Nan, _) | (_, Nan) => RefReal::NAN,
            (Infinite, Infinite) | (Zero, Zero) => RefReal::NAN,
            (Infinite, _) => {
                if sign {
                    RefReal::NEG_INFINITY
                } else {
                    RefReal::INFINITY
                }
            }
            (_, Infinite) | (Zero, _) => {
                if sign {
                    RefReal::NEG_ZERO
                } else {
                    RefReal::ZERO
                }
            }
            (_, Zero) => {
                if sign {
                    RefReal::NEG_INFINITY
                } else {
                    RefReal::INFINITY
                }
            }
            (Finite, Finite) => {
                // Shift-subtract division developing 130 quotient bits; the
                // first bit carries exponent a.exp - b.exp. 130 bits leave the
                // guard and one sticky bit below a 128-bit significand even
                // when the leading bit is zero; the remainder feeds sticky.
                let divisor: U256 = (0, b.mant);
                let mut rem: U256 = (0, a.mant);
                let mut q: U256 = ZERO256;
                for _ in 0..130 {
                    q = shl256(q, 1);
                    if cmp256(rem, divisor) != core::cmp::Ordering::Less {
                        rem = sub256(rem, divisor);
                        q = add256(q, (0, 1)).0;
                    }
                    rem = shl256(rem, 1);
                }
                let sticky = !is_zero256(rem);
                // Place the first developed bit at window position 255.
                let window = shl256(q, 256 - 130);
                RefReal::round_from_window(sign, a.exp - b.exp, window, sticky)
            }
        }
    }

    /// Correctly rounded square root; negative input yields NaN.
    pub fn sqrt(self) -> RefReal {
        use Class::*;
        match self.class {
            Nan => RefReal::NAN,
            Zero => self,
            Infinite => {
                if self.sign {
                    RefReal::NAN
                } else {
                    RefReal::INFINITY
                }
            }
            Finite => {
                if self.sign {
                    return RefReal::NAN;
                }
                // Write |x| = (mant << shift) * 2^(2t): choosing shift in
                // {127, 128} makes the scaled exponent even and the integer
                // root land in [2^127, 2^128).
                let e = self.exp;
                let (shift, res_exp) = if e & 1 == 0 { (127u32, e / 2) } else { (128u32, (e - 1) / 2) };
                let a: U256 = shl256((0, self.mant), shift);
                let root = isqrt256(a);
                // Round up iff the true root's fraction exceeds one half:
                // sqrt(a) > root + 1/2  <=>  a > root^2 + root (a integral).
                let (t, carry) = add256(mul_128x128(root, root), (0, root));
                debug_assert!(!carry);
                let round_up = cmp256(a, t) == core::cmp::Ordering::Greater;
                let mut mant = root;
                let mut exp = res_exp;
                if round_up {
                    let (m, c) = mant.overflowing_add(1);
                    if c {
                        mant = TOP_BIT;
                        exp += 1;
                    } else {
                        mant = m;
                    }
                }
                RefReal { class: Class::Finite, sign: false, exp, mant }
            }
        }
    }

    /// Rounds to the nearest integer (ties away from zero); saturates at the
    /// i64 range. Used for argument reduction where any nearest integer works.
    pub(crate) fn round_to_i64(self) -> i64 {
        match self.class {
            Class::Zero => 0,
            Class::Finite => {
                let e = self.exp;
                if e < -1 {
                    0
                } else if e == -1 {
                    // Magnitude in [0.5, 1): half rounds away from zero.
                    if self.sign {
                        -1
                    } else {
                        1
                    }
                } else if e >= 62 {
                    if self.sign {
                        i64::MIN
                    } else {
                        i64::MAX
                    }
                } else {
                    let int_bits = (self.mant >> (127 - e)) as i64;
                    let frac_top = if e < 127 { (self.mant >> (126 - e)) & 1 } else { 0 };
                    let v = int_bits + frac_top as i64;
                    if self.sign {
                        -v
                    } else {
                        v
                    }
                }
            }
            _ => 0,
        }
    }
}

fn isqrt256(a: U256) -> u128 {
    // Bitwise integer square root over 256 bits; the result fits in 128.
    let mut rem: U256 = ZERO256;
    let mut root: U256 = ZERO256;
    let mut x = a;
    for _ in 0..128 {
        rem = shl256(rem, 2);
        rem.1 |= x.0 >> 126;
        x = shl256(x, 2);
        let candidate = add256(shl256(root, 2), (0, 1)).0;
        root = shl256(root, 1);
        if cmp256(rem, candidate) != core::cmp::Ordering::Less {
            rem = sub256(rem, candidate);
            root = add256(root, (0, 1)).0;
        }
    }
    debug_assert_eq!(root.0, 0);
    root.1
}

impl core::ops::Add for RefReal {
    type Output = RefReal;
    fn add(self, rhs: RefReal) -> RefReal {
        RefReal::add_impl(self, rhs)
    }
}

impl core::ops::Sub for RefReal {
    type Output = RefReal;
    fn sub(self, rhs: RefReal) -> RefReal {
        RefReal::add_impl(self, -rhs)
    }
}

impl core::ops::Mul for RefReal {
    type Output = RefReal;
    fn mul(self, rhs: RefReal) -> RefReal {
        RefReal::mul_impl(self, rhs)
    }
}

impl core::ops::Div for RefReal {
    type Output = RefReal;
    fn div(self, rhs: RefReal) -> RefReal {
        RefReal::div_impl(self, rhs)
    }
}

impl core::ops::Neg for RefReal {
    type Output = RefReal;
    fn neg(self) -> RefReal {
        let mut r = self;
        if r.class != Class::Nan {
            r.sign = !r.sign;
        }
        r
    }
}

impl PartialEq for RefReal {
    fn eq(&self, other: &RefReal) -> bool {
        use Class::*;
        match (self.class, other.class) {
            (Nan, _) | (_, Nan) => false,
            (Zero, Zero) => true,
            (Infinite, Infinite) => self.sign == other.sign,
            (Finite, Finite) => {
                self.sign == other.sign && self.exp == other.exp && self.mant == other.mant
            }
            _ => false,
        }
    }
}

impl PartialOrd for RefReal {
    fn partial_cmp(&self, other: &RefReal) -> Option<core::cmp::Ordering> {
        use core::cmp::Ordering;
        use Class::*;
        if self.class == Nan || other.class == Nan {
            return None;
        }
        if self.class == Zero && other.class == Zero {
            return Some(Ordering::Equal);
        }
        let sa = if self.class == Zero { other.sign } else { self.sign };
        let sb = if other.class == Zero { self.sign } else { other.sign };
        if sa != sb && !(self.class == Zero || other.class == Zero) {
            return Some(if sa { Ordering::Less } else { Ordering::Greater });
        }
        // Signed zeros compare equal to each other but must order correctly
        // against nonzero values of either sign.
        if self.class == Zero {
            return Some(if other.sign { Ordering::Greater } else { Ordering::Less });
        }
        if other.class == Zero {
            return Some(if self.sign { Ordering::Less } else { Ordering::Greater });
        }
        let mag = match (self.class, other.class) {
            (Infinite, Infinite) => Ordering::Equal,
            (Infinite, _) => Ordering::Greater,
            (_, Infinite) => Ordering::Less,
            _ => RefReal::cmp_magnitude(*self, *other),
        };
        Some(if self.sign { mag.reverse() } else { mag })
    }
}

impl core::fmt::Display for RefReal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

pub use elementary::{cos_2pi_ratio, pi, sin_2pi_ratio};
