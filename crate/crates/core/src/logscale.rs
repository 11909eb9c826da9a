//! Signed values carried as natural-log magnitudes.

use std::fmt;

/// `sign * exp(ln_abs)`. Used wherever a value can leave `f64` range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue {
    pub sign: f64,
    pub ln_abs: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        sign: 0.0,
        ln_abs: f64::NEG_INFINITY,
    };

    pub fn from_ln(ln_abs: f64) -> Self {
        Self { sign: 1.0, ln_abs }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self {
                sign: x.signum(),
                ln_abs: x.abs().ln(),
            }
        }
    }

    /// The plain value; may be `inf` or `0` when out of range.
    pub fn value(self) -> f64 {
        self.sign * self.ln_abs.exp()
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0.0
    }

    pub fn mul(self, other: LogValue) -> LogValue {
        if self.is_zero() || other.is_zero() {
            return Self::ZERO;
        }
        LogValue {
            sign: self.sign * other.sign,
            ln_abs: self.ln_abs + other.ln_abs,
        }
    }

    /// `self / other`; `other` must be nonzero.
    pub fn div(self, other: LogValue) -> LogValue {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Self::ZERO;
        }
        LogValue {
            sign: self.sign * other.sign,
            ln_abs: self.ln_abs - other.ln_abs,
        }
    }

    pub fn add(self, other: LogValue) -> LogValue {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) = if self.ln_abs >= other.ln_abs {
            (self, other)
        } else {
            (other, self)
        };
        let r = small.sign * big.sign * (small.ln_abs - big.ln_abs).exp();
        let m = 1.0 + r;
        if m == 0.0 {
            return Self::ZERO;
        }
        LogValue {
            sign: big.sign * m.signum(),
            ln_abs: big.ln_abs + m.abs().ln(),
        }
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // sign * m * 10^e
        let log10 = self.ln_abs / std::f64::consts::LN_10;
        let e = log10.floor();
        let m = 10f64.powf(log10 - e);
        let s = if self.sign < 0.0 { "-" } else { "" };
        write!(f, "{s}{m:.12}e{e}")
    }
}
