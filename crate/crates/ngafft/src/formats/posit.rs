//! Posit codec per the 2022 standard: two exponent bits at every width,
//! regime run-length encoding, NaR at the sign-bit-only pattern, negation by
//! two's complement, saturation at minpos/maxpos (a nonzero real never
//! rounds to zero or NaR).

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
    // body is a positive posit; scan the regime below the (zero) sign bit.
    let first = body >> (width - 2) & 1;
    let mut run = 0u32;
    let mut i = width as i32 - 2;
    while i >= 0 && (body >> i) & 1 == first {
        run += 1;
        i -= 1;
    }
    let r: i32 = if first == 1 { run as i32 - 1 } else { -(run as i32) };
    let mut pos = i - 1; // past the regime terminator (i == -1 if none)
    let mut e = 0u32;
    for _ in 0..2 {
        e <<= 1;
        if pos >= 0 {
            e |= ((body >> pos) & 1) as u32;
            pos -= 1;
        }
    }
    let nf = (pos + 1).max(0) as u32;
    let f = if nf > 0 { body & ones(nf) } else { 0 };
    let scale = 4 * r + e as i32;
    let v = RefReal::from_parts(false, 127 + scale - nf as i32, ((1u64 << nf) | f) as u128);
    if neg {
        -v
    } else {
        v
    }
}

/// Rounds a finite nonzero reference value into an n-bit posit.
pub(crate) fn encode(x: RefReal, width: u32) -> u64 {
    debug_assert!(x.is_finite() && !x.is_zero());
    let c = x.exponent();
    let cmax = 4 * (width as i32 - 2);
    let mag = if c >= cmax {
        max_pos(width)
    } else if c < -cmax {
        1
    } else {
        let r = c.div_euclid(4);
        let e = c.rem_euclid(4) as u128;
        let mut w = BitWriter::new();
        if r >= 0 {
            w.push_run(true, r as u32 + 1);
            w.push_bit(false);
        } else {
            w.push_run(false, (-r) as u32);
            w.push_bit(true);
        }
        w.push_bits(e, 2);
        w.push_bits(x.significand() & !(1u128 << 127), 127);
        round_saturating(&w, width)
    };
    if x.is_sign_negative() {
        negate(mag, width)
    } else {
        mag
    }
}
