//! Shared machinery for the tapered formats (posit, takum).
//!
//! Both families are encoded by writing the ideal unbounded bit string
//! (sign excluded) and cutting it at `width - 1` bits with round-to-nearest,
//! ties-to-even on the encoding. Both are monotone in their two's-complement
//! patterns, so rounding the encoding string is rounding the value.

/// MSB-first bit accumulator, 256 bit capacity.
pub(crate) struct BitWriter {
    hi: u128,
    lo: u128,
    pos: u32,
}

impl BitWriter {
    pub fn new() -> BitWriter {
        BitWriter { hi: 0, lo: 0, pos: 0 }
    }

    pub fn push_bit(&mut self, bit: bool) {
        self.push_bits(bit as u128, 1);
    }

    pub fn push_run(&mut self, bit: bool, count: u32) {
        for _ in 0..count {
            self.push_bit(bit);
        }
    }

    /// Appends the low `count` bits of `v`, MSB first.
    pub fn push_bits(&mut self, v: u128, count: u32) {
        debug_assert!(self.pos + count <= 256);
        if count == 0 {
            return;
        }
        let v = if count == 128 { v } else { v & ((1u128 << count) - 1) };
        let at = 256 - self.pos - count; // bit offset of v's lsb from the bottom
        if at >= 128 {
            self.hi |= v.wrapping_shl(at - 128);
        } else if at + count <= 128 {
            self.lo |= v << at;
        } else {
            self.hi |= v >> (128 - at);
            self.lo |= v.wrapping_shl(at);
        }
        self.pos += count;
    }

    /// Truncates to the top `keep` bits: returns (base, guard, sticky).
    /// Bits never written are zero, so they cannot set guard or sticky.
    pub fn cut(&self, keep: u32) -> (u64, bool, bool) {
        debug_assert!(keep < 64 && keep >= 1);
        let base = (self.hi >> (128 - keep)) as u64;
        let guard = (self.hi >> (127 - keep)) & 1 == 1;
        let below_hi = self.hi & ((1u128 << (127 - keep)) - 1);
        let sticky = below_hi != 0 || self.lo != 0;
        (base, guard, sticky)
    }
}

/// Applies encoding-level RNE and the tapered saturation rules: the result
/// never rounds to zero or wraps into NaR.
pub(crate) fn round_saturating(writer: &BitWriter, width: u32) -> u64 {
    let keep = width - 1;
    let (mut p, guard, sticky) = writer.cut(keep);
    if guard && (sticky || p & 1 == 1) {
        p += 1;
    }
    if p == 0 {
        1 // minpos
    } else if p >= 1 << keep {
        (1 << keep) - 1 // maxpos; never NaR
    } else {
        p
    }
}

pub(crate) fn ones(n: u32) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Two's-complement negation within `width` bits.
pub(crate) fn negate(bits: u64, width: u32) -> u64 {
    bits.wrapping_neg() & ones(width)
}
