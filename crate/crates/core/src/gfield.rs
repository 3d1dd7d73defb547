//! Exact arithmetic in the golden field `Q(τ)` where `τ² = τ + 1`.
//!
//! Elements are stored as `a + b·τ` with exact rational coefficients. The
//! real embedding fixes `τ = (1+√5)/2`, the positive root; [`GoldenNumber::sign`]
//! decides signs of arbitrary elements by pure rational comparisons, so no
//! floating point is ever consulted for a mathematical decision.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Rational scalar usable as the coefficient type of [`GoldenNumber`].
///
/// Satisfied by `num_rational::Rational64`, `Ratio<i128>` and `BigRational`.
/// The `Ord` requirement is what keeps floats out: sign determination and
/// pivot selection need exact comparisons.
pub trait GoldenScalar:
    Clone
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + FromStr
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> GoldenScalar for T where
    T: Clone
        + Eq
        + Ord
        + Hash
        + fmt::Debug
        + fmt::Display
        + FromStr
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

fn scalar<R: GoldenScalar>(n: i64) -> R {
    R::from_i64(n).expect("small integer fits any rational scalar")
}

/// An element `a + b·τ` of the golden field, exact.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GoldenNumber<R> {
    a: R,
    b: R,
}

impl<R: GoldenScalar> GoldenNumber<R> {
    pub fn new(a: R, b: R) -> Self {
        GoldenNumber { a, b }
    }

    /// `a + b·τ` from integer coefficients.
    pub fn from_ints(a: i64, b: i64) -> Self {
        GoldenNumber { a: scalar(a), b: scalar(b) }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ints(n, 0)
    }

    pub fn tau() -> Self {
        Self::from_ints(0, 1)
    }

    /// `τ² = 1 + τ`.
    pub fn tau_sq() -> Self {
        Self::from_ints(1, 1)
    }

    /// Coefficient of 1.
    pub fn rational_part(&self) -> &R {
        &self.a
    }

    /// Coefficient of τ.
    pub fn tau_part(&self) -> &R {
        &self.b
    }

    /// Multiplicative inverse; zero is a domain error, never a sentinel.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        // 1/(a+bτ) = (a+b-bτ)/(a²+ab-b²); the norm is nonzero for nonzero
        // elements because τ is irrational.
        let n = self.norm();
        Ok(GoldenNumber {
            a: (self.a.clone() + self.b.clone()) / n.clone(),
            b: -self.b.clone() / n,
        })
    }

    /// Field norm `x·conj(x) = a² + ab - b²`, a plain rational.
    pub fn norm(&self) -> R {
        self.a.clone() * self.a.clone() + self.a.clone() * self.b.clone()
            - self.b.clone() * self.b.clone()
    }

    /// The field automorphism `τ ↦ 1 - τ` (conjugation in `Q(√5)`).
    pub fn conj(&self) -> Self {
        GoldenNumber {
            a: self.a.clone() + self.b.clone(),
            b: -self.b.clone(),
        }
    }

    /// Sign of `a + b·(1+√5)/2` in the real embedding: -1, 0 or +1.
    ///
    /// Writing the value as `(p + q√5)/2` with `p = 2a+b`, `q = b`, the sign
    /// follows from rational comparisons of `p²` against `5q²`.
    pub fn sign(&self) -> i8 {
        let p = scalar::<R>(2) * self.a.clone() + self.b.clone();
        let q = self.b.clone();
        let ps = sign_of(&p);
        let qs = sign_of(&q);
        match (ps, qs) {
            (0, 0) => 0,
            (s, 0) => s,
            (0, s) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            // Mixed signs: compare |p| and |q|√5 by squaring. Equality is
            // impossible since √5 is irrational and q ≠ 0.
            (1, -1) => {
                let lhs = p.clone() * p;
                let rhs = scalar::<R>(5) * q.clone() * q;
                if lhs > rhs {
                    1
                } else {
                    -1
                }
            }
            (-1, 1) => {
                let lhs = p.clone() * p;
                let rhs = scalar::<R>(5) * q.clone() * q;
                if rhs > lhs {
                    1
                } else {
                    -1
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    /// Approximate value in the real embedding. Display helper only; never
    /// used for a mathematical decision.
    pub fn to_f64(&self) -> f64 {
        const TAU: f64 = 1.618033988749895;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * TAU
    }

    /// Exact fixed-point decimal rendering (round half up), e.g. τ with 6
    /// places is `"1.618034"`. The float estimate only seeds the search; the
    /// sign-based fixup makes the result exact and platform-independent.
    pub fn to_decimal_string(&self, places: u32) -> String {
        let scale = 10i64.pow(places);
        // floor(self·scale + 1/2)
        let half = GoldenNumber::new(scalar::<R>(1) / scalar::<R>(2), R::zero());
        let y = self * &GoldenNumber::from_int(scale) + half;
        let mut n = y.to_f64().floor() as i64;
        while (y.clone() - GoldenNumber::from_int(n)).sign() < 0 {
            n -= 1;
        }
        while (y.clone() - GoldenNumber::from_int(n + 1)).sign() >= 0 {
            n += 1;
        }
        let neg = n < 0;
        let m = n.unsigned_abs();
        let whole = m / scale as u64;
        let frac = m % scale as u64;
        if places == 0 {
            format!("{}{}", if neg { "-" } else { "" }, whole)
        } else {
            format!(
                "{}{}.{:0width$}",
                if neg { "-" } else { "" },
                whole,
                frac,
                width = places as usize
            )
        }
    }
}

fn sign_of<R: GoldenScalar>(r: &R) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl<R: GoldenScalar> Zero for GoldenNumber<R> {
    fn zero() -> Self {
        GoldenNumber { a: R::zero(), b: R::zero() }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<R: GoldenScalar> One for GoldenNumber<R> {
    fn one() -> Self {
        GoldenNumber { a: R::one(), b: R::zero() }
    }
}

impl<'a, R: GoldenScalar> Add for &'a GoldenNumber<R> {
    type Output = GoldenNumber<R>;

    fn add(self, rhs: Self) -> GoldenNumber<R> {
        GoldenNumber {
            a: self.a.clone() + rhs.a.clone(),
            b: self.b.clone() + rhs.b.clone(),
        }
    }
}

impl<'a, R: GoldenScalar> Sub for &'a GoldenNumber<R> {
    type Output = GoldenNumber<R>;

    fn sub(self, rhs: Self) -> GoldenNumber<R> {
        GoldenNumber {
            a: self.a.clone() - rhs.a.clone(),
            b: self.b.clone() - rhs.b.clone(),
        }
    }
}

impl<'a, R: GoldenScalar> Mul for &'a GoldenNumber<R> {
    type Output = GoldenNumber<R>;

    // (a+bτ)(c+dτ) = (ac+bd) + (ad+bc+bd)τ, using τ² = τ+1.
    fn mul(self, rhs: Self) -> GoldenNumber<R> {
        let ac = self.a.clone() * rhs.a.clone();
        let bd = self.b.clone() * rhs.b.clone();
        let ad = self.a.clone() * rhs.b.clone();
        let bc = self.b.clone() * rhs.a.clone();
        GoldenNumber { a: ac + bd.clone(), b: ad + bc + bd }
    }
}

impl<'a, R: GoldenScalar> Div for &'a GoldenNumber<R> {
    type Output = GoldenNumber<R>;

    fn div(self, rhs: Self) -> GoldenNumber<R> {
        self * &rhs.inverse().expect("division by zero golden number")
    }
}

impl<R: GoldenScalar> Neg for &GoldenNumber<R> {
    type Output = GoldenNumber<R>;

    fn neg(self) -> GoldenNumber<R> {
        GoldenNumber { a: -self.a.clone(), b: -self.b.clone() }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<R: GoldenScalar> $trait for GoldenNumber<R> {
            type Output = GoldenNumber<R>;
            fn $method(self, rhs: Self) -> GoldenNumber<R> {
                (&self).$method(&rhs)
            }
        }
        impl<R: GoldenScalar> $trait<&GoldenNumber<R>> for GoldenNumber<R> {
            type Output = GoldenNumber<R>;
            fn $method(self, rhs: &GoldenNumber<R>) -> GoldenNumber<R> {
                (&self).$method(rhs)
            }
        }
        impl<R: GoldenScalar> $trait<GoldenNumber<R>> for &GoldenNumber<R> {
            type Output = GoldenNumber<R>;
            fn $method(self, rhs: GoldenNumber<R>) -> GoldenNumber<R> {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl<R: GoldenScalar> Neg for GoldenNumber<R> {
    type Output = GoldenNumber<R>;

    fn neg(self) -> GoldenNumber<R> {
        -&self
    }
}

/// Total order of the real embedding (consistent with `Eq`).
impl<R: GoldenScalar> Ord for GoldenNumber<R> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl<R: GoldenScalar> PartialOrd for GoldenNumber<R> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical wire form `a+b*t`, e.g. `3/2+-1/2*t`. Both coefficients are
/// always present so the grammar stays unambiguous.
impl<R: GoldenScalar> fmt::Display for GoldenNumber<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*t", self.a, self.b)
    }
}

impl<R> FromStr for GoldenNumber<R>
where
    R: GoldenScalar,
    <R as FromStr>::Err: fmt::Display,
{
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .strip_suffix("*t")
            .ok_or_else(|| Error::Parse(format!("missing `*t` suffix in {s:?}")))?;
        // b never contains '+' (a single signed rational), so the last '+'
        // separates the two coefficients.
        let cut = body
            .rfind('+')
            .ok_or_else(|| Error::Parse(format!("missing `+` separator in {s:?}")))?;
        let (a_str, b_str) = (&body[..cut], &body[cut + 1..]);
        let a = a_str
            .parse::<R>()
            .map_err(|e| Error::Parse(format!("bad rational part {a_str:?}: {e}")))?;
        let b = b_str
            .parse::<R>()
            .map_err(|e| Error::Parse(format!("bad tau part {b_str:?}: {e}")))?;
        Ok(GoldenNumber::new(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Golden, GoldenBig, Rat};

    fn g(a: i64, b: i64) -> Golden {
        Golden::from_ints(a, b)
    }

    fn gr(an: i64, ad: i64, bn: i64, bd: i64) -> Golden {
        Golden::new(Rat::new(an, ad), Rat::new(bn, bd))
    }

    /// Oracle: τ^k = F(k-1) + F(k)·τ by repeated reduction τ² = τ+1.
    fn tau_power_oracle(k: u32) -> Golden {
        let mut x = Golden::one();
        for _ in 0..k {
            // multiply by τ symbolically: (a+bτ)·τ = bτ² + aτ = b + (a+b)τ
            let a = x.rational_part().clone();
            let b = x.tau_part().clone();
            x = Golden::new(b.clone(), a + b);
        }
        x
    }

    #[test]
    fn add_examples() {
        assert_eq!(g(1, 0) + g(0, 1), g(1, 1));
        let x = gr(7, 3, -2, 5);
        assert_eq!(x.clone() + Golden::zero(), x);
        assert_eq!(gr(1, 2, 1, 1) + gr(1, 2, -1, 1), Golden::one());
    }

    #[test]
    fn mul_examples() {
        // τ·τ = 1 + τ, the defining relation
        assert_eq!(Golden::tau() * Golden::tau(), g(1, 1));
        // τ(1-τ) = τ - τ² = -1
        assert_eq!(Golden::tau() * g(1, -1), g(-1, 0));
        // τ²·τ² = τ⁴; oracle by symbolic reduction, frozen as 2+3τ
        let lhs = Golden::tau_sq() * Golden::tau_sq();
        assert_eq!(lhs, tau_power_oracle(4));
        assert_eq!(lhs, g(2, 3));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Golden::one().inverse().unwrap(), Golden::one());
        // τ(τ-1) = τ² - τ = 1
        assert_eq!(Golden::tau().inverse().unwrap(), g(-1, 1));
        // (2+τ)(a+bτ) = 1 as the 2x2 rational system
        //   2a + b  = 1   (coefficient of 1:  2a + 1·b·(τ·τ -> +b))
        //   a + 3b  = 0   (coefficient of τ)
        // solved by Cramer's rule in the oracle below.
        let oracle = {
            // (2+τ)(a+bτ) = (2a+b) + (a+3b)τ; solve 2a+b=1, a+3b=0.
            let det = Rat::new(2 * 3 - 1, 1);
            let a = Rat::new(3, 1) / det;
            let b = Rat::new(-1, 1) / det;
            Golden::new(a, b)
        };
        let inv = g(2, 1).inverse().unwrap();
        assert_eq!(inv, oracle);
        assert_eq!(inv, gr(3, 5, -1, 5));
        assert_eq!(g(2, 1) * inv, Golden::one());
        assert!(matches!(Golden::zero().inverse(), Err(Error::ZeroInverse)));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(Golden::zero().sign(), 0);
        assert_eq!(Golden::tau().sign(), 1);
        // 1 - τ = (1-√5)/2 < 0; oracle: compare 1 against √5 by squaring.
        assert!(1i64 * 1 < 5);
        assert_eq!(g(1, -1).sign(), -1);
        // a few spot checks on both sides of zero
        assert_eq!(g(-2, 1).sign(), -1); // τ - 2 ≈ -0.38
        assert_eq!(g(-1, 1).sign(), 1); // τ - 1 ≈ 0.62
        assert_eq!(g(5, -3).sign(), 1); // 5 - 3τ ≈ 0.15
        assert_eq!(g(8, -5).sign(), -1); // 8 - 5τ ≈ -0.09
    }

    #[test]
    fn conj_examples() {
        assert_eq!(Golden::tau().conj(), g(1, -1));
        let x = gr(3, 7, -5, 2);
        assert_eq!(x.conj().conj(), x);
        // conj(τ²) = conj(1+τ) = 2 - τ
        assert_eq!(Golden::tau_sq().conj(), g(2, -1));
        assert_eq!(Golden::tau_sq().conj(), tau_power_oracle(2).conj());
    }

    #[test]
    fn norm_is_rational_and_multiplicative() {
        let x = gr(3, 2, -1, 3);
        let xc = x.conj();
        let prod = &x * &xc;
        assert!(prod.tau_part().is_zero());
        assert_eq!(prod.rational_part(), &x.norm());
    }

    #[test]
    fn ordering_follows_real_embedding() {
        assert!(g(1, 0) < Golden::tau());
        assert!(g(2, 0) > Golden::tau());
        assert!(g(0, 1) == Golden::tau());
        let mut v = vec![g(2, 0), g(1, -1), Golden::tau(), Golden::zero()];
        v.sort();
        assert_eq!(v, vec![g(1, -1), Golden::zero(), Golden::tau(), g(2, 0)]);
    }

    #[test]
    fn display_parse_roundtrip() {
        let x = gr(3, 2, -1, 2);
        assert_eq!(x.to_string(), "3/2+-1/2*t");
        assert_eq!("3/2+-1/2*t".parse::<Golden>().unwrap(), x);
        for y in [Golden::zero(), Golden::one(), g(-4, 7), gr(22, 7, -3, 11)] {
            assert_eq!(y.to_string().parse::<Golden>().unwrap(), y);
        }
        assert!("1.5+2*t".parse::<Golden>().is_err());
        assert!("1+2".parse::<Golden>().is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Golden::tau().to_decimal_string(6), "1.618034");
        assert_eq!(g(0, -1).to_decimal_string(6), "-1.618034");
        assert_eq!(g(1, -1).to_decimal_string(3), "-0.618");
        assert_eq!(gr(1, 2, 0, 1).to_decimal_string(0), "1"); // half rounds up
        assert_eq!(Golden::zero().to_decimal_string(2), "0.00");
    }

    #[test]
    fn bigrational_backend_agrees() {
        let x64 = g(2, 1).inverse().unwrap();
        let xbig = GoldenBig::from_ints(2, 1).inverse().unwrap();
        assert_eq!(x64.to_string(), xbig.to_string());
        assert_eq!(GoldenBig::tau().sign(), 1);
        assert_eq!(GoldenBig::from_ints(1, -1).sign(), -1);
    }
}
