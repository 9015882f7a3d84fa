//! Exact rationals and decisions about numbers of the form `a + b*sqrt(r)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn sign_of(x: &Rational) -> Ordering {
    x.cmp(&Rational::zero())
}

/// Sign of `a + b*sqrt(r)` for `r >= 0`, decided by squaring.
pub fn sign_lin_sqrt(a: &Rational, b: &Rational, r: &Rational) -> Ordering {
    assert!(!r.is_negative(), "radicand must be nonnegative");
    if b.is_zero() || r.is_zero() {
        return sign_of(a);
    }
    let (sa, sb) = (sign_of(a), sign_of(b));
    if sa != Ordering::Less && sb == Ordering::Greater {
        return Ordering::Greater;
    }
    if sa != Ordering::Greater && sb == Ordering::Less {
        return Ordering::Less;
    }
    // Opposite signs: the larger magnitude wins.
    let lhs = a * a;
    let rhs = b * b * r;
    match lhs.cmp(&rhs) {
        Ordering::Equal => Ordering::Equal,
        Ordering::Greater => sa,
        Ordering::Less => sb,
    }
}

/// Compares `x` with `y*sqrt(r)`.
pub fn cmp_with_sqrt(x: &Rational, y: &Rational, r: &Rational) -> Ordering {
    sign_lin_sqrt(x, &-y, r)
}

/// The rational square root of `r`, when there is one.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A real quantity: exact when every radical involved was a perfect
/// square, otherwise a double.
#[derive(Debug, Clone, PartialEq)]
pub enum RealValue {
    Exact(Rational),
    Approx(f64),
}

impl RealValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            RealValue::Exact(r) => to_f64(r),
            RealValue::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            RealValue::Exact(r) => Some(r),
            RealValue::Approx(_) => None,
        }
    }

    /// The exact integer value, if this is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.as_exact().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_i64())
    }
}

impl fmt::Display for RealValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealValue::Exact(r) => write!(f, "{r}"),
            RealValue::Approx(x) => write!(f, "{x:.6}"),
        }
    }
}

/// `sqrt(r)` as a `RealValue`.
pub fn sqrt_value(r: &Rational) -> RealValue {
    match exact_sqrt(r) {
        Some(s) => RealValue::Exact(s),
        None => RealValue::Approx(to_f64(r).sqrt()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn perfect_squares() {
        assert_eq!(exact_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(exact_sqrt(&int(0)), Some(int(0)));
        assert_eq!(exact_sqrt(&int(2)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
        assert_eq!(sqrt_value(&int(49)).as_integer(), Some(7));
    }

    #[test]
    fn radical_signs() {
        // 3 - sqrt(9) = 0, 3 - sqrt(8) > 0, 3 - sqrt(10) < 0
        assert_eq!(sign_lin_sqrt(&int(3), &int(-1), &int(9)), Ordering::Equal);
        assert_eq!(sign_lin_sqrt(&int(3), &int(-1), &int(8)), Ordering::Greater);
        assert_eq!(sign_lin_sqrt(&int(3), &int(-1), &int(10)), Ordering::Less);
        assert_eq!(sign_lin_sqrt(&int(-3), &int(1), &int(10)), Ordering::Greater);
        assert_eq!(sign_lin_sqrt(&int(0), &int(0), &int(10)), Ordering::Equal);
        assert_eq!(cmp_with_sqrt(&int(5), &int(2), &int(6)), Ordering::Greater);
    }

    proptest! {
        #[test]
        fn agrees_with_floating_point_away_from_ties(
            a in -1000i64..1000, b in -50i64..50, r in 0i64..2000,
        ) {
            let exact = sign_lin_sqrt(&int(a), &int(b), &int(r));
            let approx = a as f64 + b as f64 * (r as f64).sqrt();
            if approx.abs() > 1e-6 {
                prop_assert_eq!(exact, approx.partial_cmp(&0.0).unwrap());
            } else {
                prop_assert_eq!(exact, Ordering::Equal);
            }
        }
    }
}
