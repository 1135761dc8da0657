//! Arithmetic abstraction over the two precision tiers.
//!
//! Every numerical routine in the crate is generic over [`Real`], so the
//! same code runs in hardware `f64` (the working tier) and in [`Ext`],
//! a 256-bit software float with roughly 77 significant decimal digits
//! (the extended tier). The extended tier exists to separate method
//! error from roundoff: identity residuals must collapse when rerun in
//! it, approximation errors must not, and the N = 51 transform inverse
//! is only meaningful there.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

/// Number type usable by the evaluation, identity, and transform code.
///
/// Implementations must be deterministic: the same operation on the same
/// operands yields the same bits, independent of threads or call order.
pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Precision tier name as reported in conditioning diagnostics.
    const LABEL: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(v: f64) -> Self;
    fn from_i64(v: i64) -> Self;
    /// Nearest `f64`, for reporting. Values beyond `f64` range map to
    /// 0 or infinity in the usual way.
    fn to_f64(&self) -> f64;
    fn pi() -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn abs(&self) -> Self;
    fn log10(&self) -> Self;
    fn is_finite(&self) -> bool;
    /// Unit roundoff scale of the tier (2^−52 for `f64`, 2^−255 for [`Ext`]).
    fn epsilon() -> Self;
}

impl Real for f64 {
    const LABEL: &'static str = "working";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn log10(&self) -> Self {
        f64::log10(*self)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
}

/// Mantissa precision of the extended tier, in bits.
const P: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    // Cache of computed constants (pi etc.) used by the trig and log
    // routines. Per-thread so Ext stays Send-free of locking; values are
    // deterministic, so thread count cannot affect results.
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache allocation"));
}

/// Extended-precision float: 256 mantissa bits, round-to-even.
#[derive(Clone, Debug)]
pub struct Ext(BigFloat);

impl Ext {
    /// Parses a decimal literal at full extended precision. Used by tests
    /// to load frozen oracle constants without going through `f64`.
    pub fn parse_decimal(s: &str) -> Ext {
        CONSTS.with(|c| Ext(BigFloat::parse(s, Radix::Dec, P, RM, &mut c.borrow_mut())))
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl PartialEq for Ext {
    fn eq(&self, other: &Ext) -> bool {
        matches!(self.0.cmp(&other.0), Some(0))
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Ext) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|s| s.cmp(&0))
    }
}

impl Add for Ext {
    type Output = Ext;
    fn add(self, rhs: Ext) -> Ext {
        Ext(self.0.add(&rhs.0, P, RM))
    }
}

impl Sub for Ext {
    type Output = Ext;
    fn sub(self, rhs: Ext) -> Ext {
        Ext(self.0.sub(&rhs.0, P, RM))
    }
}

impl Mul for Ext {
    type Output = Ext;
    fn mul(self, rhs: Ext) -> Ext {
        Ext(self.0.mul(&rhs.0, P, RM))
    }
}

impl Div for Ext {
    type Output = Ext;
    fn div(self, rhs: Ext) -> Ext {
        Ext(self.0.div(&rhs.0, P, RM))
    }
}

impl Neg for Ext {
    type Output = Ext;
    fn neg(self) -> Ext {
        Ext(self.0.neg())
    }
}

impl Real for Ext {
    const LABEL: &'static str = "extended";

    fn zero() -> Self {
        Ext(BigFloat::new(P))
    }
    fn one() -> Self {
        Ext(BigFloat::from_f64(1.0, P))
    }
    fn from_f64(v: f64) -> Self {
        Ext(BigFloat::from_f64(v, P))
    }
    fn from_i64(v: i64) -> Self {
        Ext(BigFloat::from_i64(v, P))
    }
    fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        // Decimal round trip; Rust's parser rounds correctly, so this is
        // the nearest f64.
        format!("{}", self.0).parse::<f64>().unwrap_or(f64::NAN)
    }
    fn pi() -> Self {
        CONSTS.with(|c| Ext(c.borrow_mut().pi(P, RM)))
    }
    fn sin(&self) -> Self {
        CONSTS.with(|c| Ext(self.0.sin(P, RM, &mut c.borrow_mut())))
    }
    fn cos(&self) -> Self {
        CONSTS.with(|c| Ext(self.0.cos(P, RM, &mut c.borrow_mut())))
    }
    fn abs(&self) -> Self {
        Ext(self.0.abs())
    }
    fn log10(&self) -> Self {
        CONSTS.with(|c| Ext(self.0.log10(P, RM, &mut c.borrow_mut())))
    }
    fn is_finite(&self) -> bool {
        !(self.0.is_nan() || self.0.is_inf())
    }
    fn epsilon() -> Self {
        // 2^−255: mantissa 0.5 with binary exponent −254.
        let mut e = BigFloat::from_f64(1.0, P);
        e.set_exponent(-254);
        Ext(e)
    }
}
