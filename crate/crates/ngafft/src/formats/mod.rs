//! Bit-exact encode/decode and correctly rounded arithmetic for every
//! machine-number format under test.
//!
//! Arithmetic is exact-then-round: operands decode exactly into [`RefReal`],
//! the operation is correctly rounded at reference precision, and the result
//! rounds once into the target format. With 128 significand bits against
//! targets of at most 60, the double rounding is provably innocuous, so each
//! operation is correctly rounded end to end.

mod ieee;
mod posit;
mod takum;
mod tapered;

use crate::reference::RefReal;
use ieee::IeeeParams;

/// Format family under test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Ieee,
    OfpE4M3,
    OfpE5M2,
    Bfloat16,
    Posit,
    TakumLinear,
}

/// Identifies one of the 14 machine-number formats (family x bit width).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormatDescriptor {
    family: Family,
    width: u8,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid format combination: {family:?} at {width} bits")]
    InvalidCombination { family: Family, width: u8 },
    #[error("unknown format name: {0:?}")]
    UnknownName(String),
}

impl FormatDescriptor {
    pub const FLOAT16: FormatDescriptor = FormatDescriptor { family: Family::Ieee, width: 16 };
    pub const FLOAT32: FormatDescriptor = FormatDescriptor { family: Family::Ieee, width: 32 };
    pub const FLOAT64: FormatDescriptor = FormatDescriptor { family: Family::Ieee, width: 64 };
    pub const BFLOAT16: FormatDescriptor = FormatDescriptor { family: Family::Bfloat16, width: 16 };
    pub const E4M3: FormatDescriptor = FormatDescriptor { family: Family::OfpE4M3, width: 8 };
    pub const E5M2: FormatDescriptor = FormatDescriptor { family: Family::OfpE5M2, width: 8 };
    pub const POSIT8: FormatDescriptor = FormatDescriptor { family: Family::Posit, width: 8 };
    pub const POSIT16: FormatDescriptor = FormatDescriptor { family: Family::Posit, width: 16 };
    pub const POSIT32: FormatDescriptor = FormatDescriptor { family: Family::Posit, width: 32 };
    pub const POSIT64: FormatDescriptor = FormatDescriptor { family: Family::Posit, width: 64 };
    pub const TAKUM8: FormatDescriptor = FormatDescriptor { family: Family::TakumLinear, width: 8 };
    pub const TAKUM16: FormatDescriptor =
        FormatDescriptor { family: Family::TakumLinear, width: 16 };
    pub const TAKUM32: FormatDescriptor =
        FormatDescriptor { family: Family::TakumLinear, width: 32 };
    pub const TAKUM64: FormatDescriptor =
        FormatDescriptor { family: Family::TakumLinear, width: 64 };

    pub fn new(family: Family, width: u8) -> Result<FormatDescriptor, FormatError> {
        let ok = match family {
            Family::Ieee => matches!(width, 16 | 32 | 64),
            Family::OfpE4M3 | Family::OfpE5M2 => width == 8,
            Family::Bfloat16 => width == 16,
            Family::Posit | Family::TakumLinear => matches!(width, 8 | 16 | 32 | 64),
        };
        if ok {
            Ok(FormatDescriptor { family, width })
        } else {
            Err(FormatError::InvalidCombination { family, width })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn width(self) -> u32 {
        self.width as u32
    }

    /// True for posit and takum (saturating, NaR-carrying) families.
    pub fn is_tapered(self) -> bool {
        matches!(self.family, Family::Posit | Family::TakumLinear)
    }

    /// All 14 formats, ordered by width then name.
    pub fn all() -> [FormatDescriptor; 14] {
        [
            Self::E4M3,
            Self::E5M2,
            Self::POSIT8,
            Self::TAKUM8,
            Self::BFLOAT16,
            Self::FLOAT16,
            Self::POSIT16,
            Self::TAKUM16,
            Self::FLOAT32,
            Self::POSIT32,
            Self::TAKUM32,
            Self::FLOAT64,
            Self::POSIT64,
            Self::TAKUM64,
        ]
    }

    pub fn name(self) -> &'static str {
        match (self.family, self.width) {
            (Family::Ieee, 16) => "float16",
            (Family::Ieee, 32) => "float32",
            (Family::Ieee, 64) => "float64",
            (Family::Bfloat16, _) => "bfloat16",
            (Family::OfpE4M3, _) => "e4m3",
            (Family::OfpE5M2, _) => "e5m2",
            (Family::Posit, 8) => "posit8",
            (Family::Posit, 16) => "posit16",
            (Family::Posit, 32) => "posit32",
            (Family::Posit, 64) => "posit64",
            (Family::TakumLinear, 8) => "takum8",
            (Family::TakumLinear, 16) => "takum16",
            (Family::TakumLinear, 32) => "takum32",
            (Family::TakumLinear, 64) => "takum64",
            _ => unreachable!(),
        }
    }

    pub fn parse(s: &str) -> Result<FormatDescriptor, FormatError> {
        for fmt in Self::all() {
            if fmt.name() == s {
                return Ok(fmt);
            }
        }
        Err(FormatError::UnknownName(s.to_string()))
    }

    fn ieee_params(self) -> Option<&'static IeeeParams> {
        match (self.family, self.width) {
            (Family::Ieee, 16) => Some(&ieee::F16),
            (Family::Ieee, 32) => Some(&ieee::F32),
            (Family::Ieee, 64) => Some(&ieee::F64),
            (Family::Bfloat16, _) => Some(&ieee::BF16),
            (Family::OfpE4M3, _) => Some(&ieee::E4M3),
            (Family::OfpE5M2, _) => Some(&ieee::E5M2),
            _ => None,
        }
    }

    fn bit_mask(self) -> u64 {
        if self.width == 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        }
    }
}

impl core::fmt::Display for FormatDescriptor {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Non-finite classification of a scalar; posit/takum carry NaR, IEEE-style
/// families carry infinities and NaN.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialClass {
    Finite,
    PosInf,
    NegInf,
    Nan,
    Nar,
}

/// A value in a target format: canonical bit pattern plus descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TargetScalar {
    bits: u64,
    fmt: FormatDescriptor,
}

/// Rounds a reference value into the format: round-to-nearest ties-to-even
/// over the format's value set. IEEE/E5M2/bfloat16 overflow to infinity,
/// E4M3 overflows to NaN, posit/takum saturate and map NaN to NaR.
pub fn round_to_format(x: RefReal, fmt: FormatDescriptor) -> TargetScalar {
    let bits = if let Some(p) = fmt.ieee_params() {
        if x.is_nan() {
            p.canonical_nan()
        } else if x.is_infinite() {
            if p.has_inf {
                p.infinity(x.is_sign_negative())
            } else {
                p.canonical_nan()
            }
        } else if x.is_zero() {
            if x.is_sign_negative() {
                p.sign_bit()
            } else {
                0
            }
        } else {
            ieee::encode(x, p)
        }
    } else {
        let w = fmt.width();
        let tapered_encode = match fmt.family {
            Family::Posit => posit::encode,
            _ => takum::encode,
        };
        if x.is_nan() {
            1 << (w - 1) // NaR
        } else if x.is_zero() {
            0
        } else if x.is_infinite() {
            // Reference-precision overflow of a real quantity: saturate.
            let m = (1 << (w - 1)) - 1;
            if x.is_sign_negative() {
                tapered::negate(m, w)
            } else {
                m
            }
        } else {
            tapered_encode(x, w)
        }
    };
    TargetScalar { bits, fmt }
}

impl TargetScalar {
    /// Wraps a raw pattern; bits above the format width are discarded.
    pub fn from_bits(bits: u64, fmt: FormatDescriptor) -> TargetScalar {
        TargetScalar { bits: bits & fmt.bit_mask(), fmt }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn format(self) -> FormatDescriptor {
        self.fmt
    }

    pub fn zero(fmt: FormatDescriptor) -> TargetScalar {
        TargetScalar { bits: 0, fmt }
    }

    pub fn one(fmt: FormatDescriptor) -> TargetScalar {
        round_to_format(RefReal::ONE, fmt)
    }

    /// Exact value of the encoding; infinities map to +-inf, NaN/NaR to NaN.
    pub fn to_ref(self) -> RefReal {
        if let Some(p) = self.fmt.ieee_params() {
            ieee::decode(self.bits, p)
        } else {
            match self.fmt.family {
                Family::Posit => posit::decode(self.bits, self.fmt.width()),
                _ => takum::decode(self.bits, self.fmt.width()),
            }
        }
    }

    pub fn classify(self) -> SpecialClass {
        if let Some(p) = self.fmt.ieee_params() {
            if p.is_nan(self.bits) {
                SpecialClass::Nan
            } else if p.is_inf(self.bits) {
                if self.bits & p.sign_bit() != 0 {
                    SpecialClass::NegInf
                } else {
                    SpecialClass::PosInf
                }
            } else {
                SpecialClass::Finite
            }
        } else if self.bits == 1 << (self.fmt.width() - 1) {
            SpecialClass::Nar
        } else {
            SpecialClass::Finite
        }
    }

    pub fn is_finite(self) -> bool {
        self.classify() == SpecialClass::Finite
    }

    fn binary_op(self, rhs: TargetScalar, op: impl FnOnce(RefReal, RefReal) -> RefReal) -> TargetScalar {
        assert_eq!(self.fmt, rhs.fmt, "mixed-format arithmetic is forbidden");
        round_to_format(op(self.to_ref(), rhs.to_ref()), self.fmt)
    }

    pub fn abs(self) -> TargetScalar {
        if self.fmt.is_tapered() {
            if self.classify() == SpecialClass::Nar || self.bits >> (self.fmt.width() - 1) & 1 == 0
            {
                self
            } else {
                -self
            }
        } else {
            let p = self.fmt.ieee_params().unwrap();
            if p.is_nan(self.bits) {
                TargetScalar { bits: p.canonical_nan(), fmt: self.fmt }
            } else {
                TargetScalar { bits: self.bits & !p.sign_bit(), fmt: self.fmt }
            }
        }
    }

    /// Orders by real value; NaR/NaN are unordered.
    pub fn compare(self, rhs: TargetScalar) -> Option<core::cmp::Ordering> {
        assert_eq!(self.fmt, rhs.fmt, "mixed-format comparison is forbidden");
        self.to_ref().partial_cmp(&rhs.to_ref())
    }

    pub fn sqrt(self) -> TargetScalar {
        round_to_format(self.to_ref().sqrt(), self.fmt)
    }

    pub fn exp(self) -> TargetScalar {
        round_to_format(self.to_ref().exp(), self.fmt)
    }

    pub fn cos(self) -> TargetScalar {
        round_to_format(self.to_ref().cos(), self.fmt)
    }

    pub fn sin(self) -> TargetScalar {
        round_to_format(self.to_ref().sin(), self.fmt)
    }
}

impl core::ops::Add for TargetScalar {
    type Output = TargetScalar;
    fn add(self, rhs: TargetScalar) -> TargetScalar {
        self.binary_op(rhs, |a, b| a + b)
    }
}

impl core::ops::Sub for TargetScalar {
    type Output = TargetScalar;
    fn sub(self, rhs: TargetScalar) -> TargetScalar {
        self.binary_op(rhs, |a, b| a - b)
    }
}

impl core::ops::Mul for TargetScalar {
    type Output = TargetScalar;
    fn mul(self, rhs: TargetScalar) -> TargetScalar {
        self.binary_op(rhs, |a, b| a * b)
    }
}

impl core::ops::Div for TargetScalar {
    type Output = TargetScalar;
    fn div(self, rhs: TargetScalar) -> TargetScalar {
        assert_eq!(self.fmt, rhs.fmt, "mixed-format arithmetic is forbidden");
        if self.fmt.is_tapered() && rhs.bits == 0 {
            // Division by zero is NaR for the tapered families, not an
            // overflow, so it must bypass the saturating rounder.
            return TargetScalar { bits: 1 << (self.fmt.width() - 1), fmt: self.fmt };
        }
        round_to_format(self.to_ref() / rhs.to_ref(), self.fmt)
    }
}

impl core::ops::Neg for TargetScalar {
    type Output = TargetScalar;
    fn neg(self) -> TargetScalar {
        let bits = if self.fmt.is_tapered() {
            tapered::negate(self.bits, self.fmt.width())
        } else {
            let p = self.fmt.ieee_params().unwrap();
            if p.is_nan(self.bits) {
                p.canonical_nan()
            } else {
                self.bits ^ p.sign_bit()
            }
        };
        TargetScalar { bits, fmt: self.fmt }
    }
}

impl core::fmt::Display for TargetScalar {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}:0x{:0w$X}", self.fmt.name(), self.bits, w = self.fmt.width() as usize / 4)
    }
}
