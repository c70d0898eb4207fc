//! Exact integer and rational arithmetic for the q-analog counting formulas.
//!
//! Everything here works over [`ExactInt`] / [`ExactRational`]; nothing in the
//! crate touches floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type ExactInt = BigInt;
pub type ExactRational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MathError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("inexact division: {num} / {den}")]
    InexactDivision { num: String, den: String },
    #[error("domain error: {0}")]
    Domain(String),
}

/// A prime power `q = p^e` with `q >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    p: u32,
    e: u32,
    q: u32,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self, MathError> {
        if q < 2 || q > u32::MAX as u64 {
            return Err(MathError::NotPrimePower(q));
        }
        let p = smallest_prime_factor(q);
        let mut rest = q;
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(MathError::NotPrimePower(q));
        }
        Ok(PrimePower {
            p: p as u32,
            e,
            q: q as u32,
        })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn e(self) -> u32 {
        self.e
    }

    pub fn q(self) -> u32 {
        self.q
    }

    pub fn is_prime(self) -> bool {
        self.e == 1
    }

    pub fn as_int(self) -> ExactInt {
        ExactInt::from(self.q)
    }

    pub fn pow(self, exp: u32) -> ExactInt {
        num_traits::pow(self.as_int(), exp as usize)
    }

    /// `q + 1`, the modulus of most congruences in this crate.
    pub fn q_plus_one(self) -> ExactInt {
        ExactInt::from(self.q as u64 + 1)
    }

    /// `2(q + 1)`.
    pub fn two_q_plus_one(self) -> ExactInt {
        ExactInt::from(2 * (self.q as u64 + 1))
    }
}

impl std::fmt::Display for PrimePower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.q)
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

/// Divides `num` by `den`, failing unless the quotient is an integer.
pub fn exact_div(num: &ExactInt, den: &ExactInt) -> Result<ExactInt, MathError> {
    if den.is_zero() {
        return Err(MathError::Domain("division by zero".into()));
    }
    let (quo, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return Err(MathError::InexactDivision {
            num: num.to_string(),
            den: den.to_string(),
        });
    }
    Ok(quo)
}

/// Returns the integer value of `r`, or an error naming the fraction.
pub fn to_integer(r: &ExactRational) -> Result<ExactInt, MathError> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(MathError::InexactDivision {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        })
    }
}

pub fn rational(num: impl Into<ExactInt>, den: impl Into<ExactInt>) -> ExactRational {
    ExactRational::new(num.into(), den.into())
}

pub fn int_rational(v: impl Into<ExactInt>) -> ExactRational {
    ExactRational::from_integer(v.into())
}

/// Least nonnegative residue of `a` modulo `m > 0`.
pub fn modulo(a: &ExactInt, m: &ExactInt) -> ExactInt {
    a.mod_floor(m)
}

/// `(q^a - 1)/(q - 1) = 1 + q + ... + q^(a-1)`, the number of points of
/// PG(a-1, q). `theta(0) = 0`.
pub fn theta(a: u32, q: PrimePower) -> ExactInt {
    let qq = q.as_int();
    let mut acc = ExactInt::zero();
    let mut pow = ExactInt::one();
    for _ in 0..a {
        acc += &pow;
        pow *= &qq;
    }
    acc
}

/// Gaussian binomial coefficient `[n k]_q`: the number of `k`-dimensional
/// subspaces of `GF(q)^n`. Zero when `k < 0` or `k > n`.
pub fn gaussian_binomial(n: i64, k: i64, q: PrimePower) -> ExactInt {
    if n < 0 || k < 0 || k > n {
        return ExactInt::zero();
    }
    let k = k.min(n - k);
    let qq = q.as_int();
    let one = ExactInt::one();
    let mut num = ExactInt::one();
    let mut den = ExactInt::one();
    for i in 0..k {
        num *= num_traits::pow(qq.clone(), (n - i) as usize) - &one;
        den *= num_traits::pow(qq.clone(), (i + 1) as usize) - &one;
    }
    exact_div(&num, &den).expect("Gaussian binomial product is always integral")
}

/// Number of `j`-spaces of PG(n,q) disjoint from a fixed `m`-space:
/// `q^((m+1)(j+1)) [n-m, j+1]_q`.
pub fn segre_disjoint_count(n: u32, m: u32, j: u32, q: PrimePower) -> Result<ExactInt, MathError> {
    if m + j >= n {
        return Err(MathError::Domain(format!(
            "a {m}-space and a {j}-space of PG({n},q) always meet (m + j >= n)"
        )));
    }
    let factor = q.pow((m + 1) * (j + 1));
    Ok(factor * gaussian_binomial((n - m) as i64, (j + 1) as i64, q))
}

/// Outcome of the three elementary congruences used to reduce counts
/// modulo `2(q+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactsCheck {
    /// `2 theta(a) ≡ 0 mod 2(q+1)` whenever `a` is even.
    pub theta_vanishes: bool,
    /// `a q^2 ≡ a mod 2(q+1)` whenever `a` is even.
    pub q_squared_is_one: bool,
    /// `x(x-1) ≡ 0 mod 2`.
    pub pair_product_even: bool,
}

impl FactsCheck {
    pub fn all(self) -> bool {
        self.theta_vanishes && self.q_squared_is_one && self.pair_product_even
    }
}

/// Evaluates the three congruences for the given inputs. The first two are
/// implications on `a` being even and hold vacuously for odd `a`.
pub fn facts_check(a: u32, x: &ExactInt, q: PrimePower) -> FactsCheck {
    let m2 = q.two_q_plus_one();
    let a_even = a.is_multiple_of(2);
    let theta_vanishes = !a_even || modulo(&(theta(a, q) * 2), &m2).is_zero();
    let a_int = ExactInt::from(a);
    let lhs = &a_int * q.pow(2);
    let q_squared_is_one = !a_even || modulo(&(lhs - &a_int), &m2).is_zero();
    let pair = x * (x - 1);
    let pair_product_even = modulo(&pair, &ExactInt::from(2)).is_zero();
    FactsCheck {
        theta_vanishes,
        q_squared_is_one,
        pair_product_even,
    }
}

/// `binom(x, 2) = x(x-1)/2` for integer `x`.
pub fn choose_two(x: &ExactInt) -> ExactInt {
    exact_div(&(x * (x - 1)), &ExactInt::from(2)).expect("x(x-1) is even")
}

/// Renders a rational as `num/den` (always with a denominator, for
/// lossless interchange).
pub fn fmt_rational(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `a`, `a/b` or `-a/b`.
pub fn parse_rational(s: &str) -> Result<ExactRational, MathError> {
    let bad = || MathError::Domain(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: ExactInt = num.parse().map_err(|_| bad())?;
    let den: ExactInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(ExactRational::new(num, den))
}

/// Converts to `u64` when it fits; used for small counts only.
pub fn small(v: &ExactInt) -> Option<u64> {
    if v.is_negative() {
        None
    } else {
        v.to_u64()
    }
}
