//! Minimal 256-bit unsigned helpers for the softfloat core.

/// (hi, lo) pair, value = hi * 2^128 + lo.
pub(crate) type U256 = (u128, u128);

pub(crate) const ZERO256: U256 = (0, 0);

#[inline]
pub(crate) fn add256(a: U256, b: U256) -> (U256, bool) {
    let (lo, c) = a.1.overflowing_add(b.1);
    let (hi, c1) = a.0.overflowing_add(b.0);
    let (hi, c2) = hi.overflowing_add(c as u128);
    ((hi, lo), c1 || c2)
}

#[inline]
pub(crate) fn sub256(a: U256, b: U256) -> U256 {
    let (lo, borrow) = a.1.overflowing_sub(b.1);
    let hi = a.0.wrapping_sub(b.0).wrapping_sub(borrow as u128);
    (hi, lo)
}

#[inline]
pub(crate) fn cmp256(a: U256, b: U256) -> core::cmp::Ordering {
    a.0.cmp(&b.0).then(a.1.cmp(&b.1))
}

#[inline]
pub(crate) fn is_zero256(a: U256) -> bool {
    a.0 == 0 && a.1 == 0
}

/// Logical left shift by `n` (0 <= n < 256); bits shifted past the top are lost.
#[inline]
pub(crate) fn shl256(a: U256, n: u32) -> U256 {
    if n == 0 {
        a
    } else if n < 128 {
        ((a.0 << n) | (a.1 >> (128 - n)), a.1 << n)
    } else {
        (a.1.wrapping_shl(n - 128), 0)
    }
}

/// Logical right shift by `n` (0 <= n < 256).
#[inline]
pub(crate) fn shr256(a: U256, n: u32) -> U256 {
    if n == 0 {
        a
    } else if n < 128 {
        (a.0 >> n, (a.1 >> n) | (a.0 << (128 - n)))
    } else {
        (0, a.0.wrapping_shr(n - 128))
    }
}

/// Right shift that reports whether any dropped bit was set.
#[inline]
pub(crate) fn shr256_sticky(a: U256, n: u32) -> (U256, bool) {
    if n == 0 {
        (a, false)
    } else if n >= 256 {
        (ZERO256, !is_zero256(a))
    } else {
        let dropped = !is_zero256(sub256(a, shl256(shr256(a, n), n)));
        (shr256(a, n), dropped)
    }
}

#[inline]
pub(crate) fn leading_zeros256(a: U256) -> u32 {
    if a.0 != 0 {
        a.0.leading_zeros()
    } else {
        128 + a.1.leading_zeros()
    }
}

/// Full 128x128 -> 256 bit multiply.
#[inline]
pub(crate) fn mul_128x128(a: u128, b: u128) -> U256 {
    let (a_hi, a_lo) = (a >> 64, a & 0xFFFF_FFFF_FFFF_FFFF);
    let (b_hi, b_lo) = (b >> 64, b & 0xFFFF_FFFF_FFFF_FFFF);
    let ll = a_lo * b_lo;
    let lh = a_lo * b_hi;
    let hl = a_hi * b_lo;
    let hh = a_hi * b_hi;
    let mid = (ll >> 64) + (lh & 0xFFFF_FFFF_FFFF_FFFF) + (hl & 0xFFFF_FFFF_FFFF_FFFF);
    let lo = (ll & 0xFFFF_FFFF_FFFF_FFFF) | (mid << 64);
    let hi = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    (hi, lo)
}
