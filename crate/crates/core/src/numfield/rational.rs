//! Arbitrary-precision rationals and their `p/q` text form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FieldError;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Formats as `p/q` with `q > 0`, including `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, `p`, or a terminating decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let s = s.trim();
    let bad = || FieldError::Parse(format!("invalid rational `{s}`"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let int: BigInt = match int.trim() {
            "" | "-" | "+" => BigInt::zero(),
            t => t.parse().map_err(|_| bad())?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let mut value = Rational::from_integer(int.abs()) + Rational::new(frac, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Exact square root of a rational, if it has one.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// gcd that avoids the quadratic binary algorithm when one side is small,
/// which is the common case of large numerators over tiny denominators.
fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let small = |x: &BigInt| x.magnitude().to_u64();
    match (small(a), small(b)) {
        (Some(x), Some(y)) => BigInt::from(x.gcd(&y)),
        (_, Some(0)) => a.abs(),
        (Some(0), _) => b.abs(),
        (_, Some(y)) => {
            let r = (a.magnitude() % y).to_u64().expect("remainder below a u64");
            BigInt::from(y.gcd(&r))
        }
        (Some(x), _) => {
            let r = (b.magnitude() % x).to_u64().expect("remainder below a u64");
            BigInt::from(x.gcd(&r))
        }
        _ => a.gcd(b),
    }
}

fn reduced(numer: BigInt, denom: BigInt) -> Rational {
    let g = gcd(&numer, &denom);
    let (mut n, mut d) = if g.is_one() {
        (numer, denom)
    } else {
        (numer / &g, denom / &g)
    };
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    Rational::new_raw(n, d)
}

pub(crate) fn add(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.denom() == b.denom() {
        if a.denom().is_one() {
            return Rational::from_integer(a.numer() + b.numer());
        }
        return reduced(a.numer() + b.numer(), a.denom().clone());
    }
    reduced(
        a.numer() * b.denom() + b.numer() * a.denom(),
        a.denom() * b.denom(),
    )
}

pub(crate) fn neg(a: &Rational) -> Rational {
    Rational::new_raw(-a.numer(), a.denom().clone())
}

pub(crate) fn sub(a: &Rational, b: &Rational) -> Rational {
    add(a, &neg(b))
}

pub(crate) fn mul(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    if a.denom().is_one() && b.denom().is_one() {
        return Rational::from_integer(a.numer() * b.numer());
    }
    reduced(a.numer() * b.numer(), a.denom() * b.denom())
}

pub(crate) fn mul_int(a: &Rational, k: i64) -> Rational {
    mul(a, &Rational::from_integer(k.into()))
}
