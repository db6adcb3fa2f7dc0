//! Shared test oracles, kept independent of the library's implementation
//! paths.
//!
//! - `Dyadic`/`OracleValue`: exact big-integer scaled-binary arithmetic.
//! - Format decoders written from the published value formulas (posit and
//!   takum use the direct sign-formula on the raw pattern, not the two's
//!   complement walk the production code uses).
//! - A value-table rounding oracle: arithmetic midpoints for the IEEE-style
//!   families, encoding midpoints (one extra appended bit) for the tapered
//!   ones, ties to the even pattern, with each family's overflow rules.

#![allow(dead_code)]

use ngafft::{Family, FormatDescriptor, RefReal};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Mutex;

/// Exact value mant * 2^exp, mant != 0.
#[derive(Clone, Debug)]
pub struct Dyadic {
    pub mant: BigInt,
    pub exp: i64,
}

impl Dyadic {
    pub fn new(mant: i128, exp: i64) -> Dyadic {
        Dyadic { mant: BigInt::from(mant), exp }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn half(&self) -> Dyadic {
        Dyadic { mant: self.mant.clone(), exp: self.exp - 1 }
    }

    pub fn add(&self, o: &Dyadic) -> BigInt2 {
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &o.mant << (o.exp - e) as usize;
        BigInt2 { mant: a + b, exp: e }
    }

    pub fn mul(&self, o: &Dyadic) -> BigInt2 {
        BigInt2 { mant: &self.mant * &o.mant, exp: self.exp + o.exp }
    }

    pub fn cmp(&self, o: &Dyadic) -> Ordering {
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &o.mant << (o.exp - e) as usize;
        a.cmp(&b)
    }
}

/// Result of an exact operation; may be zero.
pub struct BigInt2 {
    pub mant: BigInt,
    pub exp: i64,
}

impl BigInt2 {
    pub fn into_value(self, zero_sign: bool) -> OracleValue {
        if self.mant.is_zero() {
            OracleValue::Zero { neg: zero_sign }
        } else {
            OracleValue::Real(Dyadic { mant: self.mant, exp: self.exp })
        }
    }
}

#[derive(Clone, Debug)]
pub enum OracleValue {
    Zero { neg: bool },
    Real(Dyadic),
    PosInf,
    NegInf,
    Nan,
}

impl OracleValue {
    pub fn is_negative(&self) -> bool {
        match self {
            OracleValue::Zero { neg } => *neg,
            OracleValue::Real(d) => d.is_negative(),
            OracleValue::NegInf => true,
            _ => false,
        }
    }
}

pub fn refreal_to_oracle(x: RefReal) -> OracleValue {
    if x.is_nan() {
        OracleValue::Nan
    } else if x.is_infinite() {
        if x.is_sign_negative() {
            OracleValue::NegInf
        } else {
            OracleValue::PosInf
        }
    } else if x.is_zero() {
        OracleValue::Zero { neg: x.is_sign_negative() }
    } else {
        let m = BigInt::from(x.significand());
        let m = if x.is_sign_negative() { -m } else { m };
        OracleValue::Real(Dyadic { mant: m, exp: x.exponent() as i64 - 127 })
    }
}

// ---------------------------------------------------------------------------
// Independent decoders.
// ---------------------------------------------------------------------------

struct IeeeShape {
    eb: u32,
    fb: u32,
    w: u32,
    has_inf: bool,
}

fn ieee_shape(fmt: FormatDescriptor) -> Option<IeeeShape> {
    match (fmt.family(), fmt.width()) {
        (Family::Ieee, 16) => Some(IeeeShape { eb: 5, fb: 10, w: 16, has_inf: true }),
        (Family::Ieee, 32) => Some(IeeeShape { eb: 8, fb: 23, w: 32, has_inf: true }),
        (Family::Ieee, 64) => Some(IeeeShape { eb: 11, fb: 52, w: 64, has_inf: true }),
        (Family::Bfloat16, _) => Some(IeeeShape { eb: 8, fb: 7, w: 16, has_inf: true }),
        (Family::OfpE5M2, _) => Some(IeeeShape { eb: 5, fb: 2, w: 8, has_inf: true }),
        (Family::OfpE4M3, _) => Some(IeeeShape { eb: 4, fb: 3, w: 8, has_inf: false }),
        _ => None,
    }
}

fn ones_u64(n: u32) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn ieee_oracle_decode(bits: u64, s: &IeeeShape) -> OracleValue {
    let neg = bits >> (s.w - 1) & 1 == 1;
    let e = (bits >> s.fb) & ones_u64(s.eb);
    let f = bits & ones_u64(s.fb);
    let bias = (1i64 << (s.eb - 1)) - 1;
    if e == ones_u64(s.eb) {
        if s.has_inf {
            if f == 0 {
                return if neg { OracleValue::NegInf } else { OracleValue::PosInf };
            }
            return OracleValue::Nan;
        }
        if f == ones_u64(s.fb) {
            return OracleValue::Nan;
        }
    }
    let (int_bit, unbiased) = if e == 0 { (0u64, 1 - bias) } else { (1, e as i64 - bias) };
    let mant = (int_bit << s.fb) | f;
    if mant == 0 {
        return OracleValue::Zero { neg };
    }
    let m = if neg { -BigInt::from(mant) } else { BigInt::from(mant) };
    OracleValue::Real(Dyadic { mant: m, exp: unbiased - s.fb as i64 })
}

/// Posit decode via the 2022 standard's direct formula on the raw pattern:
/// value = ((1 - 3s) + f) * 2^((1 - 2s)(4r + e + s)).
fn posit_oracle_decode(bits: u64, n: u32) -> OracleValue {
    let bits = bits & ones_u64(n);
    if bits == 0 {
        return OracleValue::Zero { neg: false };
    }
    if bits == 1 << (n - 1) {
        return OracleValue::Nan;
    }
    let s = (bits >> (n - 1)) & 1;
    let first = (bits >> (n - 2)) & 1;
    let mut k = 0u32;
    let mut i = n as i32 - 2;
    while i >= 0 && (bits >> i) & 1 == first {
        k += 1;
        i -= 1;
    }
    let r: i64 = if first == 1 { k as i64 - 1 } else { -(k as i64) };
    let mut pos = i - 1;
    let mut e: i64 = 0;
    for _ in 0..2 {
        e <<= 1;
        if pos >= 0 {
            e |= ((bits >> pos) & 1) as i64;
            pos -= 1;
        }
    }
    let nf = (pos + 1).max(0) as u32;
    let frac = if nf > 0 { bits & ones_u64(nf) } else { 0 };
    let num: i128 = ((1 - 3 * s as i128) << nf) + frac as i128;
    let scale = (1 - 2 * s as i64) * (4 * r + e + s as i64);
    OracleValue::Real(Dyadic::new(num, scale - nf as i64))
}

/// Takum decode via the analogous direct formula on the raw pattern:
/// value = ((1 - 3s) + f) * 2^((1 - 2s)(c + s)), with D/R/C parsed from the
/// pattern as stored.
fn takum_oracle_decode(bits: u64, n: u32) -> OracleValue {
    let bits = bits & ones_u64(n);
    if bits == 0 {
        return OracleValue::Zero { neg: false };
    }
    if bits == 1 << (n - 1) {
        return OracleValue::Nan;
    }
    let s = (bits >> (n - 1)) & 1;
    let d = (bits >> (n - 2)) & 1;
    let rf = ((bits >> (n - 5)) & 7) as i64;
    let r = if d == 1 { rf } else { 7 - rf };
    let t = n - 5;
    let rest = bits & ones_u64(t);
    let cb = (r as u32).min(t);
    let stored = if cb > 0 { rest >> (t - cb) } else { 0 };
    let c_field = (stored as i64) << (r as u32 - cb);
    let c = if d == 1 { (1 << r) - 1 + c_field } else { -(1 << (r + 1)) + 1 + c_field };
    let pm = t - cb;
    let m = rest & ones_u64(pm);
    let num: i128 = ((1 - 3 * s as i128) << pm) + m as i128;
    let scale = (1 - 2 * s as i64) * (c + s as i64);
    OracleValue::Real(Dyadic::new(num, scale - pm as i64))
}

pub fn oracle_decode(bits: u64, fmt: FormatDescriptor) -> OracleValue {
    if let Some(s) = ieee_shape(fmt) {
        ieee_oracle_decode(bits, &s)
    } else if fmt.family() == Family::Posit {
        posit_oracle_decode(bits, fmt.width())
    } else {
        takum_oracle_decode(bits, fmt.width())
    }
}

/// Decode at an extended width (used for tapered encoding midpoints).
fn tapered_decode_width(bits: u64, fmt: FormatDescriptor, width: u32) -> OracleValue {
    if fmt.family() == Family::Posit {
        posit_oracle_decode(bits, width)
    } else {
        takum_oracle_decode(bits, width)
    }
}

// ---------------------------------------------------------------------------
// Exact operations with IEEE-style special handling.
// ---------------------------------------------------------------------------

pub fn oracle_add(a: &OracleValue, b: &OracleValue) -> OracleValue {
    use OracleValue::*;
    match (a, b) {
        (Nan, _) | (_, Nan) => Nan,
        (PosInf, NegInf) | (NegInf, PosInf) => Nan,
        (PosInf, _) | (_, PosInf) => PosInf,
        (NegInf, _) | (_, NegInf) => NegInf,
        (Zero { neg: n1 }, Zero { neg: n2 }) => Zero { neg: *n1 && *n2 },
        (Zero { .. }, Real(d)) | (Real(d), Zero { .. }) => Real(d.clone()),
        (Real(x), Real(y)) => x.add(y).into_value(false),
    }
}

pub fn oracle_mul(a: &OracleValue, b: &OracleValue) -> OracleValue {
    use OracleValue::*;
    let sign = a.is_negative() ^ b.is_negative();
    match (a, b) {
        (Nan, _) | (_, Nan) => Nan,
        (Zero { .. }, PosInf | NegInf) | (PosInf | NegInf, Zero { .. }) => Nan,
        (PosInf | NegInf, _) | (_, PosInf | NegInf) => {
            if sign {
                NegInf
            } else {
                PosInf
            }
        }
        (Zero { .. }, _) | (_, Zero { .. }) => Zero { neg: sign },
        (Real(x), Real(y)) => x.mul(y).into_value(sign),
    }
}

// ---------------------------------------------------------------------------
// Rounding oracle.
// ---------------------------------------------------------------------------

/// Positive finite values of a format, indexed by pattern (pattern 0 is
/// omitted). entries[i] is the value of pattern i+1.
fn positive_table(fmt: FormatDescriptor) -> &'static Vec<Dyadic> {
    static TABLES: Lazy<Mutex<HashMap<FormatDescriptor, &'static Vec<Dyadic>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    let mut guard = TABLES.lock().unwrap();
    if let Some(t) = guard.get(&fmt) {
        return t;
    }
    let max_pattern: u64 = if let Some(s) = ieee_shape(fmt) {
        if s.has_inf {
            (ones_u64(s.eb) << s.fb) - 1
        } else {
            (ones_u64(s.eb) << s.fb) | (ones_u64(s.fb) - 1)
        }
    } else {
        (1 << (fmt.width() - 1)) - 1
    };
    let mut v = Vec::with_capacity(max_pattern as usize);
    for p in 1..=max_pattern {
        match oracle_decode(p, fmt) {
            OracleValue::Real(d) => {
                assert!(!d.is_negative());
                v.push(d);
            }
            other => panic!("pattern {p:#x} of {fmt} should be finite, got {other:?}"),
        }
    }
    for i in 1..v.len() {
        assert_eq!(v[i - 1].cmp(&v[i]), Ordering::Less, "{fmt} table not monotone at {i}");
    }
    let leaked: &'static Vec<Dyadic> = Box::leak(Box::new(v));
    guard.insert(fmt, leaked);
    leaked
}

fn oracle_nan_pattern(fmt: FormatDescriptor) -> u64 {
    match (fmt.family(), fmt.width()) {
        (Family::Ieee, 16) => 0x7E00,
        (Family::Ieee, 32) => 0x7FC0_0000,
        (Family::Ieee, 64) => 0x7FF8_0000_0000_0000,
        (Family::Bfloat16, _) => 0x7FC0,
        (Family::OfpE5M2, _) => 0x7E,
        (Family::OfpE4M3, _) => 0x7F,
        (_, w) => 1 << (w - 1), // NaR
    }
}

fn negate_pattern(p: u64, fmt: FormatDescriptor) -> u64 {
    if fmt.is_tapered() {
        p.wrapping_neg() & ones_u64(fmt.width())
    } else {
        p | 1 << (fmt.width() - 1)
    }
}

/// Rounds an exact positive magnitude into `fmt`, returning the positive
/// pattern, or the overflow special (inf pattern / NaN / maxpos). The value
/// is presented as a comparator against exact dyadic probes so quotients and
/// roots can be rounded without representing them.
fn oracle_round_magnitude(fmt: FormatDescriptor, cmp: &dyn Fn(&Dyadic) -> Ordering) -> u64 {
    let table = positive_table(fmt);
    let shape = ieee_shape(fmt);
    let minv = &table[0];
    match cmp(minv) {
        Ordering::Less => {
            return match &shape {
                Some(_) => {
                    // IEEE gradual underflow: tie at half the least subnormal
                    // goes to the even pattern, zero.
                    match cmp(&minv.half()) {
                        Ordering::Greater => 1,
                        _ => 0,
                    }
                }
                None => 1, // tapered: never round a nonzero real to zero
            };
        }
        Ordering::Equal => return 1,
        Ordering::Greater => {}
    }
    let maxv = table.last().unwrap();
    if cmp(maxv) == Ordering::Greater {
        let max_pattern = table.len() as u64;
        match &shape {
            Some(s) => {
                // Overflow threshold: max + half the top ulp (as if unbounded).
                let ulp = maxv.add(&table[table.len() - 2].neg());
                let thresh = maxv.add(&Dyadic { mant: ulp.mant, exp: ulp.exp - 1 });
                let thresh = Dyadic { mant: thresh.mant, exp: thresh.exp };
                match cmp(&thresh) {
                    Ordering::Less => return max_pattern,
                    Ordering::Equal => {
                        // Tie against the unbounded next (even) slot.
                        return if s.has_inf {
                            ones_u64(s.eb) << s.fb // infinity
                        } else {
                            // E4M3: max has an even mantissa, the NaN slot is odd.
                            max_pattern
                        };
                    }
                    Ordering::Greater => {
                        return if s.has_inf {
                            ones_u64(s.eb) << s.fb
                        } else {
                            oracle_nan_pattern(fmt)
                        };
                    }
                }
            }
            None => return max_pattern, // tapered saturation
        }
    }
    // In range: binary search the smallest index with table[i] >= x.
    let mut lo = 0usize;
    let mut hi = table.len() - 1;
    while lo < hi {
        let mid = (lo + hi) / 2;
        if cmp(&table[mid]) == Ordering::Greater {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let i = lo;
    if cmp(&table[i]) == Ordering::Equal {
        return i as u64 + 1;
    }
    debug_assert!(i > 0);
    let (p_lo, p_hi) = (i as u64, i as u64 + 1);
    let midpoint = match &shape {
        Some(_) => {
            let s = table[i - 1].add(&table[i]);
            Dyadic { mant: s.mant, exp: s.exp - 1 }
        }
        None => {
            // Encoding midpoint: the (n+1)-bit pattern formed by appending a
            // one bit to the lower pattern.
            match tapered_decode_width((p_lo << 1) | 1, fmt, fmt.width() + 1) {
                OracleValue::Real(d) => d,
                other => panic!("extended decode not finite: {other:?}"),
            }
        }
    };
    match cmp(&midpoint) {
        Ordering::Less => p_lo,
        Ordering::Greater => p_hi,
        Ordering::Equal => {
            if p_lo & 1 == 0 {
                p_lo
            } else {
                p_hi
            }
        }
    }
}

/// Full rounding oracle: exact value -> canonical pattern under the format's
/// rules (overflow, saturation, NaN/NaR, signed zero).
pub fn oracle_round(fmt: FormatDescriptor, v: &OracleValue) -> u64 {
    match v {
        OracleValue::Nan => oracle_nan_pattern(fmt),
        OracleValue::PosInf | OracleValue::NegInf => {
            let neg = matches!(v, OracleValue::NegInf);
            if let Some(s) = ieee_shape(fmt) {
                if s.has_inf {
                    let inf = ones_u64(s.eb) << s.fb;
                    if neg {
                        inf | 1 << (s.w - 1)
                    } else {
                        inf
                    }
                } else {
                    oracle_nan_pattern(fmt)
                }
            } else {
                let m = (1 << (fmt.width() - 1)) - 1;
                if neg {
                    negate_pattern(m, fmt)
                } else {
                    m
                }
            }
        }
        OracleValue::Zero { neg } => {
            if *neg && !fmt.is_tapered() {
                1 << (fmt.width() - 1)
            } else {
                0
            }
        }
        OracleValue::Real(d) => {
            let mag = {
                let a = d.abs();
                oracle_round_magnitude(fmt, &|v| a.cmp(v))
            };
            // Magnitude rounding may produce a special pattern (inf/NaN);
            // specials other than plain magnitudes need their own signs.
            if let Some(s) = ieee_shape(fmt) {
                if s.has_inf && mag == ones_u64(s.eb) << s.fb {
                    return if d.is_negative() { mag | 1 << (s.w - 1) } else { mag };
                }
                if !s.has_inf && mag == oracle_nan_pattern(fmt) {
                    return mag;
                }
                if mag == 0 {
                    // Underflowed to zero: keep the operand sign.
                    return if d.is_negative() { 1 << (s.w - 1) } else { 0 };
                }
            }
            if d.is_negative() {
                negate_pattern(mag, fmt)
            } else {
                mag
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Direct DFT oracle at reference precision.
// ---------------------------------------------------------------------------

/// O(n^2) DFT with independently evaluated twiddles; `inverse` applies the
/// conjugate kernel and 1/n scaling.
pub fn dft_direct(re: &[RefReal], im: &[RefReal], inverse: bool) -> (Vec<RefReal>, Vec<RefReal>) {
    let n = re.len();
    let mut out_re = Vec::with_capacity(n);
    let mut out_im = Vec::with_capacity(n);
    let sign: i128 = if inverse { 1 } else { -1 };
    for k in 0..n {
        let mut acc_re = RefReal::ZERO;
        let mut acc_im = RefReal::ZERO;
        for j in 0..n {
            let idx = sign * (j as i128) * (k as i128);
            let c = ngafft::reference::cos_2pi_ratio(idx, n as u128);
            let s = ngafft::reference::sin_2pi_ratio(idx, n as u128);
            acc_re = acc_re + re[j] * c - im[j] * s;
            acc_im = acc_im + re[j] * s + im[j] * c;
        }
        if inverse {
            let scale = RefReal::ONE / RefReal::from_usize(n);
            acc_re = acc_re * scale;
            acc_im = acc_im * scale;
        }
        out_re.push(acc_re);
        out_im.push(acc_im);
    }
    (out_re, out_im)
}

/// Division oracle: full per-family semantics including specials. Returns
/// the expected pattern for a_bits / b_bits.
pub fn oracle_div_pattern(fmt: FormatDescriptor, a_bits: u64, b_bits: u64) -> u64 {
    use OracleValue::*;
    let a = oracle_decode(a_bits, fmt);
    let b = oracle_decode(b_bits, fmt);
    let sign = a.is_negative() ^ b.is_negative();
    match (&a, &b) {
        (Nan, _) | (_, Nan) => oracle_nan_pattern(fmt),
        (PosInf | NegInf, PosInf | NegInf) => oracle_nan_pattern(fmt),
        (Zero { .. }, Zero { .. }) => oracle_nan_pattern(fmt),
        (_, Zero { .. }) => {
            if fmt.is_tapered() {
                oracle_nan_pattern(fmt) // NaR
            } else {
                oracle_round(fmt, &if sign { NegInf } else { PosInf })
            }
        }
        (Zero { .. }, _) | (_, PosInf | NegInf) => oracle_round(fmt, &Zero { neg: sign }),
        (PosInf | NegInf, _) => oracle_round(fmt, &if sign { NegInf } else { PosInf }),
        (Real(x), Real(y)) => {
            let (xa, ya) = (x.abs(), y.abs());
            // |x|/|y| vs probe v  <=>  |x| vs v*|y|
            let mag = oracle_round_magnitude(fmt, &|v: &Dyadic| {
                let rhs = v.mul(&ya);
                xa.cmp(&Dyadic { mant: rhs.mant, exp: rhs.exp })
            });
            finish_signed(fmt, mag, sign)
        }
    }
}

/// Square-root oracle for nonnegative finite operands.
pub fn oracle_sqrt_pattern(fmt: FormatDescriptor, a_bits: u64) -> u64 {
    use OracleValue::*;
    match oracle_decode(a_bits, fmt) {
        Nan => oracle_nan_pattern(fmt),
        PosInf => oracle_round(fmt, &PosInf),
        NegInf => oracle_nan_pattern(fmt),
        Zero { neg } => oracle_round(fmt, &Zero { neg }),
        Real(d) => {
            if d.is_negative() {
                return oracle_nan_pattern(fmt);
            }
            // sqrt(x) vs v  <=>  x vs v^2 (v > 0)
            let mag = oracle_round_magnitude(fmt, &|v: &Dyadic| {
                let sq = v.mul(v);
                d.cmp(&Dyadic { mant: sq.mant, exp: sq.exp })
            });
            finish_signed(fmt, mag, false)
        }
    }
}

/// Applies a sign to a magnitude-rounding result, routing special patterns
/// (inf / NaN from overflow) unchanged where signless.
fn finish_signed(fmt: FormatDescriptor, mag: u64, neg: bool) -> u64 {
    if let Some(s) = ieee_shape(fmt) {
        if s.has_inf && mag == ones_u64(s.eb) << s.fb {
            return if neg { mag | 1 << (s.w - 1) } else { mag };
        }
        if !s.has_inf && mag == oracle_nan_pattern(fmt) {
            return mag;
        }
        if mag == 0 {
            return if neg { 1 << (s.w - 1) } else { 0 };
        }
    }
    if neg {
        negate_pattern(mag, fmt)
    } else {
        mag
    }
}

// ---------------------------------------------------------------------------
// Reusable exhaustive / randomized drivers (shared with the acceptance suite).
// ---------------------------------------------------------------------------

/// Compares a production decode against the oracle decode.
pub fn decodes_agree(v: &OracleValue, x: RefReal) -> bool {
    match (v, refreal_to_oracle(x)) {
        (OracleValue::Nan, OracleValue::Nan) => true,
        (OracleValue::PosInf, OracleValue::PosInf) => true,
        (OracleValue::NegInf, OracleValue::NegInf) => true,
        (OracleValue::Zero { neg: a }, OracleValue::Zero { neg: b }) => *a == b,
        (OracleValue::Real(a), OracleValue::Real(b)) => a.cmp(&b) == Ordering::Equal,
        _ => false,
    }
}

/// Exhaustive decode agreement plus round-trip identity over every pattern
/// of the format (requires width <= 16). Patterns that decode to NaN/NaR
/// must round-trip to the canonical NaN/NaR pattern.
pub fn check_decode_and_roundtrip_exhaustive(fmt: FormatDescriptor) -> usize {
    use ngafft::{round_to_format, TargetScalar};
    let width = fmt.width();
    assert!(width <= 16);
    let count = 1u64 << width;
    for p in 0..count {
        let scalar = TargetScalar::from_bits(p, fmt);
        let x = scalar.to_ref();
        let oracle = oracle_decode(p, fmt);
        assert!(decodes_agree(&oracle, x), "{fmt} decode mismatch at {p:#x}: {x:?} vs {oracle:?}");
        let back = round_to_format(x, fmt);
        if x.is_nan() {
            assert_eq!(back.bits(), oracle_nan_pattern(fmt), "{fmt} NaN canonicalization at {p:#x}");
        } else {
            assert_eq!(back.bits(), p, "{fmt} round-trip failed at {p:#x}");
        }
    }
    count as usize
}

/// Exhaustive 256x256 add and mul tables against the exact-then-round oracle.
pub fn check_add_mul_exhaustive_8bit(fmt: FormatDescriptor) -> usize {
    use ngafft::TargetScalar;
    assert_eq!(fmt.width(), 8);
    let decoded: Vec<OracleValue> = (0..256).map(|p| oracle_decode(p, fmt)).collect();
    let mut checked = 0;
    for a in 0..256u64 {
        let sa = TargetScalar::from_bits(a, fmt);
        for b in 0..256u64 {
            let sb = TargetScalar::from_bits(b, fmt);
            let got_add = (sa + sb).bits();
            let want_add = oracle_round(fmt, &oracle_add(&decoded[a as usize], &decoded[b as usize]));
            assert_eq!(got_add, want_add, "{fmt} add mismatch at ({a:#x}, {b:#x})");
            let got_mul = (sa * sb).bits();
            let want_mul = oracle_round(fmt, &oracle_mul(&decoded[a as usize], &decoded[b as usize]));
            assert_eq!(got_mul, want_mul, "{fmt} mul mismatch at ({a:#x}, {b:#x})");
            checked += 2;
        }
    }
    checked
}

/// Randomized add/mul checks against the oracle (any width).
pub fn check_add_mul_random(fmt: FormatDescriptor, count: usize, seed: u64) -> usize {
    use ngafft::TargetScalar;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mask = if fmt.width() == 64 { u64::MAX } else { (1u64 << fmt.width()) - 1 };
    let mut checked = 0;
    for _ in 0..count / 2 {
        let a = rng.gen::<u64>() & mask;
        let b = rng.gen::<u64>() & mask;
        let (sa, sb) = (TargetScalar::from_bits(a, fmt), TargetScalar::from_bits(b, fmt));
        let (da, db) = (oracle_decode(a, fmt), oracle_decode(b, fmt));
        assert_eq!(
            (sa + sb).bits(),
            oracle_round(fmt, &oracle_add(&da, &db)),
            "{fmt} add mismatch at ({a:#x}, {b:#x})"
        );
        assert_eq!(
            (sa * sb).bits(),
            oracle_round(fmt, &oracle_mul(&da, &db)),
            "{fmt} mul mismatch at ({a:#x}, {b:#x})"
        );
        checked += 2;
    }
    checked
}
