//! Linear takum codec. Layout after the sign: direction bit D, 3-bit regime
//! R, characteristic field C of r bits (r = R when D = 1, else 7 - R), then
//! the mantissa. The characteristic is c = 2^r - 1 + C for D = 1 and
//! c = -2^(r+1) + 1 + C for D = 0, giving c in [-255, 254]. Widths too small
//! for the full C/M fields truncate trailing bits (missing bits decode as
//! zero). NaR is the sign-bit-only pattern, negation is two's complement,
//! and rounding saturates: a nonzero real never becomes zero or NaR.

use super::tapered::{negate, ones, round_saturating, BitWriter};
use crate::reference::RefReal;

pub(crate) fn nar(width: u32) -> u64 {
    1 << (width - 1)
}

pub(crate) fn max_pos(width: u32) -> u64 {
    (1 << (width - 1)) - 1
}

pub(crate) fn decode(bits: u64, width: u32) -> RefReal {
    let bits = bits & ones(width);
    if bits == 0 {
        return RefReal::ZERO;
    }
    if bits == nar(width) {
        return RefReal::NAN;
    }
    let neg = bits >> (width - 1) & 1 == 1;
    let body = if neg { negate(bits, width) } else { bits };
    let d = (body >> (width - 2)) & 1;
    let rfield = ((body >> (width - 5)) & 7) as i32;
    let r = if d == 1 { rfield } else { 7 - rfield };
    let avail = width - 5;
    let rest = body & ones(avail);
    let c_bits = (r as u32).min(avail);
    let c_stored = if c_bits > 0 { rest >> (avail - c_bits) } else { 0 };
    let c_field = (c_stored as i64) << (r as u32 - c_bits);
    let c = if d == 1 {
        (1i64 << r) - 1 + c_field
    } else {
        -(1i64 << (r + 1)) + 1 + c_field
    };
    let pm = avail - c_bits;
    let m = rest & ones(pm);
    // value = (2^pm + m) * 2^(c - pm)
    let v = RefReal::from_parts(false, 127 + c as i32 - pm as i32, ((1u64 << pm) | m) as u128);
    if neg {
        -v
    } else {
        v
    }
}

/// Rounds a finite nonzero reference value into an n-bit takum.
pub(crate) fn encode(x: RefReal, width: u32) -> u64 {
    debug_assert!(x.is_finite() && !x.is_zero());
    let c = x.exponent() as i64;
    let mag = if c > 254 {
        max_pos(width)
    } else if c < -255 {
        1
    } else {
        let (d, r, c_field) = if c >= 0 {
            let r = 63 - (c + 1).leading_zeros(); // floor(log2(c + 1))
            (true, r, (c + 1 - (1 << r)) as u128)
        } else {
            let r = 63 - (-c).leading_zeros(); // floor(log2(-c))
            (false, r, (c + (1 << (r + 1)) - 1) as u128)
        };
        let mut w = BitWriter::new();
        w.push_bit(d);
        w.push_bits(if d { r as u128 } else { (7 - r) as u128 }, 3);
        w.push_bits(c_field, r);
        w.push_bits(x.significand() & !(1u128 << 127), 127);
        round_saturating(&w, width)
    };
    if x.is_sign_negative() {
        negate(mag, width)
    } else {
        mag
    }
}
