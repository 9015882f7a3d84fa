//! Exact Laurent polynomials in one variable with big-integer coefficients.
//!
//! The same type carries the Kauffman bracket (variable `A`) and the Jones
//! polynomial (variable `q`); only the rendering differs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("exponent {exponent} is not divisible by {divisor}")]
    IndivisibleExponent { exponent: i64, divisor: i64 },
    #[error("exponent divisor must be nonzero")]
    ZeroDivisor,
}

/// A sparse Laurent polynomial. Zero coefficients are never stored, so
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::mono(1, 0)
    }

    /// The single term `coeff * x^exp`.
    pub fn mono(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn exponents(&self) -> impl DoubleEndedIterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at `x = 1`, the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The `n`-th derivative evaluated at `x = 1`:
    /// `sum_k a_k * k (k-1) ... (k-n+1)`.
    pub fn falling_factorial_sum(&self, n: u32) -> BigInt {
        self.terms
            .iter()
            .map(|(&k, a)| {
                let ff: BigInt = (0..i64::from(n)).map(|j| BigInt::from(k - j)).product();
                a * ff
            })
            .sum()
    }

    /// Replaces every exponent `k` by `k / divisor`. A negative divisor also
    /// inverts the variable.
    pub fn reindex_exponents(&self, divisor: i64) -> Result<Self, LaurentError> {
        if divisor == 0 {
            return Err(LaurentError::ZeroDivisor);
        }
        let mut out = BTreeMap::new();
        for (&e, c) in &self.terms {
            if e % divisor != 0 {
                return Err(LaurentError::IndivisibleExponent { exponent: e, divisor });
            }
            out.insert(e / divisor, c.clone());
        }
        Ok(Self { terms: out })
    }

    /// Substitutes `x -> x^-1`.
    pub fn invert_variable(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Renders with the given variable name, highest exponent first.
    pub fn display_in(&self, var: &str) -> impl fmt::Display + '_ {
        Rendered { poly: self, var: var.to_owned() }
    }
}

struct Rendered<'a> {
    poly: &'a LaurentPoly,
    var: String,
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.poly.terms().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str(&self.var)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in("q").fmt(f)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| acc * p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trefoil_jones() -> LaurentPoly {
        LaurentPoly::from_terms([(4, -1), (3, 1), (1, 1)])
    }

    #[test]
    fn exponents_cancel() {
        let p = LaurentPoly::mono(1, 2) * LaurentPoly::mono(1, -2);
        assert_eq!(p, LaurentPoly::mono(1, 0));
    }

    #[test]
    fn cancelling_sum_is_empty() {
        let p = LaurentPoly::mono(1, 3) + LaurentPoly::mono(-1, 3);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
        assert_eq!(p, LaurentPoly::zero());
    }

    #[test]
    fn one_is_identity() {
        assert_eq!(&trefoil_jones() * &LaurentPoly::one(), trefoil_jones());
    }

    #[test]
    fn derivatives_at_one() {
        assert_eq!(LaurentPoly::mono(1, 1).falling_factorial_sum(2), BigInt::zero());
        assert_eq!(trefoil_jones().falling_factorial_sum(2), BigInt::from(-6));
        assert_eq!(trefoil_jones().falling_factorial_sum(3), BigInt::from(-18));
        assert_eq!(trefoil_jones().falling_factorial_sum(0), BigInt::from(1));
    }

    #[test]
    fn derivative_of_negative_powers() {
        // d²/dq² q^-2 = 6 q^-4
        assert_eq!(LaurentPoly::mono(1, -2).falling_factorial_sum(2), BigInt::from(6));
    }

    #[test]
    fn reindex() {
        let p = LaurentPoly::from_terms([(-4, 1), (8, 1)]);
        let exps: Vec<_> = p.reindex_exponents(4).unwrap().exponents().collect();
        assert_eq!(exps, vec![-1, 2]);
        let exps: Vec<_> = p.reindex_exponents(-4).unwrap().exponents().collect();
        assert_eq!(exps, vec![-2, 1]);
        assert_eq!(
            LaurentPoly::mono(1, 3).reindex_exponents(4),
            Err(LaurentError::IndivisibleExponent { exponent: 3, divisor: 4 })
        );
        assert_eq!(p.reindex_exponents(0), Err(LaurentError::ZeroDivisor));
    }

    #[test]
    fn rendering() {
        assert_eq!(trefoil_jones().to_string(), "-q^4 + q^3 + q");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let p = LaurentPoly::from_terms([(-2, 3), (0, -1), (5, 2)]);
        assert_eq!(p.display_in("A").to_string(), "2A^5 - 1 + 3A^-2");
    }

    #[test]
    fn coefficients_exceed_machine_words() {
        let p = LaurentPoly::from_terms([(1, 1), (0, 1)]).pow(200);
        let expected: BigInt = (1..=100u32).fold(BigInt::one(), |acc, k| acc * (100 + k) / k);
        // C(200, 100)
        assert_eq!(p.coeff(100), expected);
        assert_eq!(p.eval_at_one(), BigInt::one() << 200);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-12i64..12, -(1i64 << 40)..(1i64 << 40)), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn zeroth_derivative_is_value_at_one(a in arb_poly()) {
            prop_assert_eq!(a.falling_factorial_sum(0), a.eval_at_one());
        }

        #[test]
        fn reindex_inverts_scaling(a in arb_poly(), d in prop::sample::select(vec![-4i64, -2, 3, 4])) {
            let scaled = LaurentPoly::from_terms(a.terms().map(|(e, c)| (e * d, c.clone())));
            prop_assert_eq!(scaled.reindex_exponents(d).unwrap(), a.clone());
            prop_assert_eq!(a.reindex_exponents(-1).unwrap(), a.invert_variable());
        }
    }
}
