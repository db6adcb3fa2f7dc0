//! Encode/decode for the IEEE-style families: binary16/32/64, bfloat16 and
//! the OFP8 types E4M3/E5M2. One parameterized codec covers all six; E4M3 is
//! the only one without infinities (its all-ones pattern is the NaN).

use crate::reference::RefReal;

pub(crate) struct IeeeParams {
    pub exp_bits: u32,
    pub frac_bits: u32,
    pub width: u32,
    pub has_inf: bool,
}

pub(crate) const F16: IeeeParams = IeeeParams { exp_bits: 5, frac_bits: 10, width: 16, has_inf: true };
pub(crate) const F32: IeeeParams = IeeeParams { exp_bits: 8, frac_bits: 23, width: 32, has_inf: true };
pub(crate) const F64: IeeeParams = IeeeParams { exp_bits: 11, frac_bits: 52, width: 64, has_inf: true };
pub(crate) const BF16: IeeeParams = IeeeParams { exp_bits: 8, frac_bits: 7, width: 16, has_inf: true };
pub(crate) const E5M2: IeeeParams = IeeeParams { exp_bits: 5, frac_bits: 2, width: 8, has_inf: true };
pub(crate) const E4M3: IeeeParams = IeeeParams { exp_bits: 4, frac_bits: 3, width: 8, has_inf: false };

impl IeeeParams {
    pub fn bias(&self) -> i32 {
        (1 << (self.exp_bits - 1)) - 1
    }

    fn exp_mask(&self) -> u64 {
        (1 << self.exp_bits) - 1
    }

    fn frac_mask(&self) -> u64 {
        (1 << self.frac_bits) - 1
    }

    pub fn sign_bit(&self) -> u64 {
        1 << (self.width - 1)
    }

    /// The single quiet NaN this module emits.
    pub fn canonical_nan(&self) -> u64 {
        if self.has_inf {
            (self.exp_mask() << self.frac_bits) | (1 << (self.frac_bits - 1))
        } else {
            // E4M3: all-ones exponent and mantissa.
            (self.exp_mask() << self.frac_bits) | self.frac_mask()
        }
    }

    pub fn infinity(&self, negative: bool) -> u64 {
        debug_assert!(self.has_inf);
        let mag = self.exp_mask() << self.frac_bits;
        if negative {
            mag | self.sign_bit()
        } else {
            mag
        }
    }

    pub fn is_nan(&self, bits: u64) -> bool {
        let e = (bits >> self.frac_bits) & self.exp_mask();
        let f = bits & self.frac_mask();
        if self.has_inf {
            e == self.exp_mask() && f != 0
        } else {
            e == self.exp_mask() && f == self.frac_mask()
        }
    }

    pub fn is_inf(&self, bits: u64) -> bool {
        if !self.has_inf {
            return false;
        }
        let e = (bits >> self.frac_bits) & self.exp_mask();
        e == self.exp_mask() && bits & self.frac_mask() == 0
    }
}

pub(crate) fn decode(bits: u64, p: &IeeeParams) -> RefReal {
    let sign = bits & p.sign_bit() != 0;
    let e = (bits >> p.frac_bits) & p.exp_mask();
    let f = bits & p.frac_mask();
    if p.is_nan(bits) {
        return RefReal::NAN;
    }
    if p.is_inf(bits) {
        return if sign { RefReal::NEG_INFINITY } else { RefReal::INFINITY };
    }
    let fb = p.frac_bits as i32;
    let v = if e == 0 {
        if f == 0 {
            return if sign { RefReal::NEG_ZERO } else { RefReal::ZERO };
        }
        // subnormal: f * 2^(1 - bias - fb)
        RefReal::from_parts(false, 127 + 1 - p.bias() - fb, f as u128)
    } else {
        RefReal::from_parts(false, 127 + e as i32 - p.bias() - fb, (1u128 << p.frac_bits) | f as u128)
    };
    if sign {
        -v
    } else {
        v
    }
}

/// Rounds a finite nonzero reference value into the format (RNE with IEEE
/// overflow and gradual underflow).
pub(crate) fn encode(x: RefReal, p: &IeeeParams) -> u64 {
    debug_assert!(x.is_finite() && !x.is_zero());
    let sign = if x.is_sign_negative() { p.sign_bit() } else { 0 };
    let c = x.exponent();
    let fb = p.frac_bits;
    let emin = 1 - p.bias(); // smallest normal exponent
    let ulp_exp = if c < emin { emin - fb as i32 } else { c - fb as i32 };
    // q = RNE(|x| / 2^ulp_exp)
    let mant = x.significand();
    let shift = (127 - c + ulp_exp) as u32; // >= 67 for every supported format
    let (mut q, guard, sticky) = if shift <= 127 {
        (
            (mant >> shift) as u64,
            (mant >> (shift - 1)) & 1 == 1,
            mant & ((1u128 << (shift - 1)) - 1) != 0,
        )
    } else if shift == 128 {
        (0, mant >> 127 == 1, mant & (u128::MAX >> 1) != 0)
    } else {
        (0, false, true)
    };
    if guard && (sticky || q & 1 == 1) {
        q += 1;
    }
    let pattern = if c < emin {
        // Subnormal lattice; q == 2^fb rolls into the smallest normal.
        q
    } else {
        // q in [2^fb, 2^(fb+1)]: adding (E-1)*2^fb keeps the carry implicit.
        (((c + p.bias() - 1) as u64) << fb) + q
    };
    if p.has_inf {
        if pattern >= p.exp_mask() << fb {
            return sign | p.infinity(false);
        }
    } else if pattern >= p.canonical_nan() {
        // E4M3 overflows straight to NaN; it has no infinity.
        return p.canonical_nan();
    }
    sign | pattern
}
