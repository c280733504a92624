//! Exact integer and rational arithmetic in two interchangeable modes.
//!
//! Every algorithm in this crate is generic over [`Int`]. The `i64`
//! implementation detects every overflow and aborts the enclosing
//! computation (callers escalate to the big-integer mode); the
//! [`BigInt`] implementation never overflows. Both modes compute the
//! same mathematical values, so results serialize identically.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::panic::{self, AssertUnwindSafe};
use std::str::FromStr;
use std::sync::Once;

use num_bigint::BigInt;
use num_integer::Integer as _;


/// Panic payload used to signal a 64-bit overflow out of deep call stacks.
///
/// Arithmetic in checked64 mode panics with this payload instead of
/// threading `Result` through every inner loop; [`catch_overflow`]
/// converts it back into an error at the operation boundary.
pub struct OverflowSignal;

#[cold]
#[inline(never)]
pub fn raise_overflow() -> ! {
    panic::panic_any(OverflowSignal)
}

static HOOK: Once = Once::new();

fn install_silent_hook() {
    HOOK.call_once(|| {
        let previous = panic::take_hook();
        panic::set_hook(Box::new(move |info| {
            if info.payload().is::<OverflowSignal>() {
                return;
            }
            previous(info);
        }));
    });
}

/// Runs `f`, mapping a checked64 overflow panic to `None`.
///
/// Any other panic is resumed unchanged.
pub fn catch_overflow<T>(f: impl FnOnce() -> T) -> Option<T> {
    install_silent_hook();
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(value) => Some(value),
        Err(payload) => {
            if payload.is::<OverflowSignal>() {
                None
            } else {
                panic::resume_unwind(payload)
            }
        }
    }
}

/// Exact integer arithmetic, panicking with [`OverflowSignal`] when the
/// representation cannot hold a result.
pub trait Int:
    Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn parse_decimal(s: &str) -> Option<Self>;

    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_positive(&self) -> bool {
        !self.is_zero() && !self.is_negative()
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    /// Greatest common divisor, always nonnegative.
    fn gcd(&self, rhs: &Self) -> Self;
    /// Division known to be exact; quotient of `self / rhs`.
    fn div_exact(&self, rhs: &Self) -> Self;
    /// Precomputed state for repeated exact division by one positive
    /// divisor (the tableau denominator).
    type Divisor: Send + Sync;
    fn divisor(d: &Self) -> Self::Divisor;
    /// `(a * b - c * d) / div`, with the division known exact. The
    /// i64 implementation works in 128 bits, so intermediate products
    /// cannot spuriously overflow; only a result outside the 64-bit
    /// range aborts.
    fn fused_pivot(a: &Self, b: &Self, c: &Self, d: &Self, div: &Self::Divisor) -> Self;
    /// Exact comparison of the products `a * b` and `c * d`.
    ///
    /// Never overflows: the products are formed in a wider type (or are
    /// unbounded to begin with). Used for rational comparison and
    /// simplex ratio tests.
    fn cross_cmp(a: &Self, b: &Self, c: &Self, d: &Self) -> Ordering;
}

impl Int for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        s.parse().ok()
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(*rhs).unwrap_or_else(|| raise_overflow())
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(*rhs).unwrap_or_else(|| raise_overflow())
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(*rhs).unwrap_or_else(|| raise_overflow())
    }
    fn neg(&self) -> Self {
        self.checked_neg().unwrap_or_else(|| raise_overflow())
    }
    fn abs(&self) -> Self {
        self.checked_abs().unwrap_or_else(|| raise_overflow())
    }
    fn gcd(&self, rhs: &Self) -> Self {
        let g = (self.unsigned_abs()).gcd(&rhs.unsigned_abs());
        i64::try_from(g).unwrap_or_else(|_| raise_overflow())
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(*rhs != 0 && self % rhs == 0, "inexact division");
        self.checked_div(*rhs).unwrap_or_else(|| raise_overflow())
    }
    fn cross_cmp(a: &Self, b: &Self, c: &Self, d: &Self) -> Ordering {
        (*a as i128 * *b as i128).cmp(&(*c as i128 * *d as i128))
    }
    type Divisor = ExactDiv64;
    fn divisor(d: &Self) -> ExactDiv64 {
        ExactDiv64::new(*d)
    }
    #[inline]
    fn fused_pivot(a: &Self, b: &Self, c: &Self, d: &Self, div: &ExactDiv64) -> Self {
        let num = *a as i128 * *b as i128 - *c as i128 * *d as i128;
        let q = div.div(num);
        if q < i64::MIN as i128 || q > i64::MAX as i128 {
            raise_overflow()
        }
        q as i64
    }
}

/// Exact division by a fixed positive divisor via the two's complement
/// inverse: for odd m, multiplication by inv(m) mod 2^128 recovers the
/// exact quotient; a power of two is split off as a shift.
#[derive(Clone, Copy, Debug)]
pub struct ExactDiv64 {
    shift: u32,
    inv: u128,
}

impl ExactDiv64 {
    fn new(d: i64) -> Self {
        debug_assert!(d > 0);
        let d = d as u128;
        let shift = d.trailing_zeros();
        let odd = d >> shift;
        // Newton iteration doubles correct low bits each round.
        let mut inv: u128 = odd;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(odd.wrapping_mul(inv)));
        }
        debug_assert_eq!(odd.wrapping_mul(inv), 1);
        ExactDiv64 { shift, inv }
    }

    #[inline]
    fn div(&self, num: i128) -> i128 {
        // Exact signed division in two's complement: arithmetic shift,
        // then wrapping multiply by the inverse of the odd part.
        let shifted = num >> self.shift;
        (shifted as u128).wrapping_mul(self.inv) as i128
    }
}

impl Int for BigInt {
    fn zero() -> Self {
        BigInt::ZERO
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        BigInt::from_str(s).ok()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        num_traits::Signed::is_negative(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        num_traits::Signed::abs(self)
    }
    fn gcd(&self, rhs: &Self) -> Self {
        num_integer::Integer::gcd(self, rhs)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(
            !num_traits::Zero::is_zero(rhs) && num_traits::Zero::is_zero(&(self % rhs)),
            "inexact division"
        );
        self / rhs
    }
    fn cross_cmp(a: &Self, b: &Self, c: &Self, d: &Self) -> Ordering {
        (a * b).cmp(&(c * d))
    }
    type Divisor = BigInt;
    fn divisor(d: &Self) -> BigInt {
        d.clone()
    }
    fn fused_pivot(a: &Self, b: &Self, c: &Self, d: &Self, div: &BigInt) -> Self {
        (a * b - c * d) / div
    }
}

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat<I: Int> {
    num: I,
    den: I,
}

impl<I: Int> Rat<I> {
    pub fn new(num: I, den: I) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = Rat { num, den };
        r.normalize();
        r
    }

    pub fn from_int(v: I) -> Self {
        Rat { num: v, den: I::one() }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_int(I::from_i64(v))
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn numer(&self) -> &I {
        &self.num
    }

    pub fn denom(&self) -> &I {
        &self.den
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.num = I::zero();
            self.den = I::one();
            return;
        }
        if self.den.is_negative() {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
        let g = self.num.gcd(&self.den);
        if g != I::one() {
            self.num = self.num.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        // Knuth's gcd trick keeps intermediates small in checked64 mode.
        let g = self.den.gcd(&rhs.den);
        let ld = self.den.div_exact(&g);
        let rd = rhs.den.div_exact(&g);
        let num = self.num.mul(&rd).add(&rhs.num.mul(&ld));
        let den = self.den.mul(&rd);
        Rat::new(num, den)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = self.num.div_exact(&g1).mul(&rhs.num.div_exact(&g2));
        let den = self.den.div_exact(&g2).mul(&rhs.den.div_exact(&g1));
        Rat { num, den }
    }

    pub fn mul_int(&self, rhs: &I) -> Self {
        let g = rhs.gcd(&self.den);
        Rat {
            num: self.num.mul(&rhs.div_exact(&g)),
            den: self.den.div_exact(&g),
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        let inv = Rat {
            num: rhs.den.clone(),
            den: rhs.num.clone(),
        };
        let mut out = self.mul(&inv);
        if out.den.is_negative() {
            out.num = out.num.neg();
            out.den = out.den.neg();
        }
        out
    }

    pub fn neg(&self) -> Self {
        Rat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Parses "p", "p/q", or "-p/q".
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let num = I::parse_decimal(p.trim())?;
                let den = I::parse_decimal(q.trim())?;
                if den.is_zero() {
                    return None;
                }
                Some(Rat::new(num, den))
            }
            None => Some(Rat::from_int(I::parse_decimal(s)?)),
        }
    }
}

impl<I: Int> PartialOrd for Rat<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<I: Int> Ord for Rat<I> {
    fn cmp(&self, other: &Self) -> Ordering {
        // Denominators are positive, so the cross product preserves order.
        I::cross_cmp(&self.num, &other.den, &other.num, &self.den)
    }
}

impl<I: Int> fmt::Display for Rat<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl<I: Int> fmt::Debug for Rat<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl<I: Int> FromStr for Rat<I> {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rat::parse(s).ok_or_else(|| format!("invalid rational: {s:?}"))
    }
}

impl<I: Int> serde::Serialize for Rat<I> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de, I: Int> serde::Deserialize<'de> for Rat<I> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(deserializer)?;
        Rat::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("invalid rational {s:?}")))
    }
}
