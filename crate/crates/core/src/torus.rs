//! Closed forms for torus knots and the relations among `v2`, `v3`, the
//! unknotting number `u` and the crossing number `c`.
//!
//! For coprime `p`, `q`:
//!
//! ```text
//! v2 = (p^2-1)(q^2-1)/24      v3 = pq(p^2-1)(q^2-1)/144
//! u  = (|p|-1)(|q|-1)/2       c  = |q|(|p|-1)  when |p| < |q|
//! ```
//!
//! Every inequality below is decided exactly: rationals throughout, and
//! comparisons involving a square root are settled by sign analysis and
//! squaring (see [`crate::exact`]). Equality flags are therefore exact.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{cmp_with_sqrt, exact_sqrt, int, ratio, sqrt_value, to_f64, Rational, RealValue};
use crate::generators::TorusParams;
use crate::jones::InvariantPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("{0} is the unknot; the crossing-number relations do not apply")]
    Unknot(TorusParams),
    #[error("({p},{q}): {quantity} numerator {numerator} is not divisible by {divisor}")]
    NonExactDivision { p: i64, q: i64, quantity: &'static str, numerator: i128, divisor: i128 },
    #[error("v2 = 0: ratio 6v3/v2 is undefined")]
    ZeroV2,
    #[error("{pair} is not a torus pair: the unknotting relation has no positive integer root")]
    NoIntegerRoot { pair: InvariantPair },
    #[error("radicand {radicand} is negative")]
    NegativeRadicand { radicand: Rational },
    #[error("{pair} violates (6|v3|-|v2|)^2 >= 24 v2^3")]
    ConditionViolated { pair: InvariantPair },
    #[error("{0}")]
    InvalidRange(String),
}

/// `(v2, v3)` of `T(p, q)` for arbitrary integers, failing when a division
/// is inexact (which only happens for non-coprime input).
pub fn torus_v2v3_raw(p: i64, q: i64) -> Result<InvariantPair, TorusError> {
    let (pp, qq) = (i128::from(p), i128::from(q));
    let base = (pp * pp - 1) * (qq * qq - 1);
    let div = |quantity, numerator: i128, divisor: i128| {
        if numerator % divisor != 0 {
            Err(TorusError::NonExactDivision { p, q, quantity, numerator, divisor })
        } else {
            Ok((numerator / divisor) as i64)
        }
    };
    Ok(InvariantPair::new(div("v2", base, 24)?, div("v3", pp * qq * base, 144)?))
}

pub fn torus_v2v3(t: TorusParams) -> InvariantPair {
    torus_v2v3_raw(t.p(), t.q()).expect("coprime parameters give integral invariants")
}

/// `u = (|p|-1)(|q|-1)/2`.
pub fn torus_unknotting(t: TorusParams) -> i64 {
    let (a, b) = (t.p().abs() - 1, t.q().abs() - 1);
    a * b / 2
}

/// `c = |q|(|p|-1)` after ordering so that `|p| < |q|`.
pub fn torus_crossing(t: TorusParams) -> Result<i64, TorusError> {
    if t.is_unknot() {
        return Err(TorusError::Unknot(t));
    }
    let n = t.normalized();
    Ok(n.q().abs() * (n.p() - 1))
}

/// Whether `T(p, q)` is a `(2, q)` torus knot, up to symmetry.
pub fn is_two_q_family(t: TorusParams) -> bool {
    !t.is_unknot() && (t.p().abs() == 2 || t.q().abs() == 2)
}

/// Whether `||p| - |q|| = 1`.
pub fn is_adjacent_family(t: TorusParams) -> bool {
    !t.is_unknot() && (t.p().abs() - t.q().abs()).abs() == 1
}

/// The three cubic inequalities between `v2` and `v3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CubicBoundsReport {
    /// `(2/3)v2^3 + (1/3)v2^2 <= v3^2`
    pub lower1_holds: bool,
    pub lower1_equality: bool,
    /// `v3^2 <= (8/9)v2^3 + (1/9)v2^2`
    pub upper_holds: bool,
    pub upper_equality: bool,
    /// `(2/3)v2^3 + (1/3)v2 v3 <= v3^2`
    pub lower2_holds: bool,
    pub lower2_equality: bool,
}

impl CubicBoundsReport {
    pub fn all_hold(&self) -> bool {
        self.lower1_holds && self.upper_holds && self.lower2_holds
    }
}

pub fn check_cubic_bounds(pair: InvariantPair) -> CubicBoundsReport {
    // Cleared of denominators: 2v2^3 + v2^2 <= 3v3^2, 9v3^2 <= 8v2^3 + v2^2,
    // 2v2^3 + v2 v3 <= 3v3^2.
    let v2 = BigInt::from(pair.v2);
    let v3 = BigInt::from(pair.v3);
    let v2sq = &v2 * &v2;
    let v2cu = &v2sq * &v2;
    let v3sq = &v3 * &v3;
    let k = |n: i64| BigInt::from(n);
    let l1 = (&v2cu * k(2) + &v2sq).cmp(&(&v3sq * k(3)));
    let up = (&v3sq * k(9)).cmp(&(&v2cu * k(8) + &v2sq));
    let l2 = (&v2cu * k(2) + &v2 * &v3).cmp(&(&v3sq * k(3)));
    CubicBoundsReport {
        lower1_holds: l1 != Ordering::Greater,
        lower1_equality: l1 == Ordering::Equal,
        upper_holds: up != Ordering::Greater,
        upper_equality: up == Ordering::Equal,
        lower2_holds: l2 != Ordering::Greater,
        lower2_equality: l2 == Ordering::Equal,
    }
}

/// `v2^2 + (1/6) u (u-1) v2 = u |v3|`.
pub fn unknotting_relation_holds(pair: InvariantPair, u: i64) -> bool {
    let (v2, v3, u) = (i128::from(pair.v2), i128::from(pair.v3.abs()), i128::from(u));
    6 * v2 * v2 + u * (u - 1) * v2 == 6 * u * v3
}

/// The smaller root `u` of `v2 u^2 - (v2 + 6|v3|) u + 6 v2^2 = 0`, which is
/// the unknotting number when `pair` comes from a nontrivial torus knot.
pub fn unknotting_from_invariants(pair: InvariantPair) -> Result<i64, TorusError> {
    let none = TorusError::NoIntegerRoot { pair };
    if pair.v2 <= 0 {
        return Err(none);
    }
    let v2 = BigInt::from(pair.v2);
    let b: BigInt = &v2 + BigInt::from(pair.v3.abs()) * BigInt::from(6);
    let disc: BigInt = &b * &b - BigInt::from(24) * &v2 * &v2 * &v2;
    if disc.is_negative() {
        return Err(none);
    }
    let root = disc.sqrt();
    if &root * &root != disc {
        return Err(none);
    }
    let (u, rem) = (b - root).div_rem(&(v2 * BigInt::from(2)));
    if !rem.is_zero() || !u.is_positive() {
        return Err(none);
    }
    u.to_i64().ok_or(none)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknottingBoundsReport {
    pub u: i64,
    pub v2: i64,
    /// `u(u+1)/2 >= v2`
    pub upper_holds: bool,
    pub upper_equality: bool,
    /// `v2 >= (1/6) u (u + sqrt(8u+1) + 2)`
    pub lower_holds: bool,
    pub lower_equality: bool,
    /// `sqrt(1 + 8 v2) - 1 <= 2u`
    pub corollary_lower_holds: bool,
    pub corollary_lower_equality: bool,
    /// `2u <= sqrt(24 v2 + 25) - 5`
    pub corollary_upper_holds: bool,
}

impl UnknottingBoundsReport {
    pub fn all_hold(&self) -> bool {
        self.upper_holds && self.lower_holds && self.corollary_lower_holds && self.corollary_upper_holds
    }
}

pub fn check_unknotting_bounds(t: TorusParams) -> Result<UnknottingBoundsReport, TorusError> {
    if t.is_unknot() {
        return Err(TorusError::Unknot(t));
    }
    let u = torus_unknotting(t);
    let v2 = torus_v2v3(t).v2;
    let (ur, vr) = (int(u), int(v2));
    let upper = (&ur * (&ur + int(1))).cmp(&(&vr * int(2)));
    let lower = cmp_with_sqrt(&(&vr * int(6) - &ur * &ur - &ur * int(2)), &ur, &(&ur * int(8) + int(1)));
    let cor_lower = cmp_with_sqrt(&(&ur * int(2) + int(1)), &int(1), &(&vr * int(8) + int(1)));
    let cor_upper = cmp_with_sqrt(&(&ur * int(2) + int(5)), &int(1), &(&vr * int(24) + int(25)));
    Ok(UnknottingBoundsReport {
        u,
        v2,
        upper_holds: upper != Ordering::Less,
        upper_equality: upper == Ordering::Equal,
        lower_holds: lower != Ordering::Less,
        lower_equality: lower == Ordering::Equal,
        corollary_lower_holds: cor_lower != Ordering::Less,
        corollary_lower_equality: cor_lower == Ordering::Equal,
        corollary_upper_holds: cor_upper != Ordering::Greater,
    })
}

/// `|6 v3 / v2|`, which is `|pq|` on torus knots.
pub fn rho(pair: InvariantPair) -> Result<Rational, TorusError> {
    if pair.v2 == 0 {
        return Err(TorusError::ZeroV2);
    }
    Ok(ratio(6 * pair.v3, pair.v2).abs())
}

fn radicands(pair: InvariantPair) -> Result<(Rational, Rational, Rational), TorusError> {
    let r = rho(pair)?;
    let v24 = int(24 * pair.v2);
    let plus = (&r + int(1)) * (&r + int(1)) - &v24;
    let minus = (&r - int(1)) * (&r - int(1)) - &v24;
    Ok((r, plus, minus))
}

/// `c = rho - (sqrt((rho-1)^2 - 24 v2) + sqrt((rho+1)^2 - 24 v2)) / 2`.
pub fn crossing_recovery(pair: InvariantPair) -> Result<RealValue, TorusError> {
    let (r, plus, minus) = radicands(pair)?;
    for d in [&minus, &plus] {
        if d.is_negative() {
            return Err(TorusError::NegativeRadicand { radicand: d.clone() });
        }
    }
    Ok(match (exact_sqrt(&minus), exact_sqrt(&plus)) {
        (Some(a), Some(b)) => RealValue::Exact(r - (a + b) / int(2)),
        _ => RealValue::Approx(to_f64(&r) - 0.5 * (to_f64(&minus).sqrt() + to_f64(&plus).sqrt())),
    })
}

/// `24 v2 (c - rho)^2 = c ((c - rho)^2 - 1)(2 rho - c)`, evaluated exactly.
pub fn check_crossing_quartic(t: TorusParams) -> Result<bool, TorusError> {
    let c = int(torus_crossing(t)?);
    let pair = torus_v2v3(t);
    let r = rho(pair)?;
    let diff = &c - &r;
    let lhs = int(24 * pair.v2) * &diff * &diff;
    let rhs = &c * (&diff * &diff - int(1)) * (r * int(2) - &c);
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingBoundsReport {
    pub c: i64,
    pub v2: i64,
    /// `(c^2 - 1)/8 >= v2`
    pub upper_holds: bool,
    pub upper_equality: bool,
    /// `v2 >= (1/24) c (c + 1 + 2 sqrt(c+1))`
    pub lower_holds: bool,
    pub lower_equality: bool,
    /// `(sqrt(25 + 96 v2) - 5)/2 >= c`, from `v2 >= c(c+5)/24`
    pub corollary_upper_holds: bool,
    /// `c >= sqrt(8 v2 + 1)`, from `v2 <= (c^2-1)/8`
    pub corollary_lower_holds: bool,
    pub corollary_lower_equality: bool,
    /// The same pair of inequalities with the constants as commonly printed,
    /// `(sqrt(25 + 96 v2) - 5)/24 >= c >= 2 sqrt(8 v2 + 1)`. These fail on
    /// every torus knot; kept so reports can show the discrepancy.
    pub printed_corollary_holds: bool,
}

impl CrossingBoundsReport {
    pub fn all_hold(&self) -> bool {
        self.upper_holds && self.lower_holds && self.corollary_upper_holds && self.corollary_lower_holds
    }
}

pub fn check_crossing_bounds(t: TorusParams) -> Result<CrossingBoundsReport, TorusError> {
    let c = torus_crossing(t)?;
    let v2 = torus_v2v3(t).v2;
    let (cr, vr) = (int(c), int(v2));
    let upper = (&cr * &cr - int(1)).cmp(&(&vr * int(8)));
    let lower = cmp_with_sqrt(&(&vr * int(24) - &cr * &cr - &cr), &(&cr * int(2)), &(&cr + int(1)));
    let disc = &vr * int(96) + int(25);
    let cor_upper = cmp_with_sqrt(&(&cr * int(2) + int(5)), &int(1), &disc);
    let cor_lower = cmp_with_sqrt(&cr, &int(1), &(&vr * int(8) + int(1)));
    let printed_upper = cmp_with_sqrt(&(&cr * int(24) + int(5)), &int(1), &disc);
    let printed_lower = cmp_with_sqrt(&cr, &int(2), &(&vr * int(8) + int(1)));
    Ok(CrossingBoundsReport {
        c,
        v2,
        upper_holds: upper != Ordering::Less,
        upper_equality: upper == Ordering::Equal,
        lower_holds: lower != Ordering::Less,
        lower_equality: lower == Ordering::Equal,
        corollary_upper_holds: cor_upper != Ordering::Greater,
        corollary_lower_holds: cor_lower != Ordering::Less,
        corollary_lower_equality: cor_lower == Ordering::Equal,
        printed_corollary_holds: printed_upper != Ordering::Greater && printed_lower != Ordering::Less,
    })
}

/// Real-valued stand-ins for `u` and `c` defined from `(v2, v3)` alone.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoInvariants {
    pub unknotting: RealValue,
    pub crossing: RealValue,
}

/// Pseudo-unknotting and pseudo-crossing numbers:
///
/// ```text
/// u~ = (1 + rho - sqrt((1+rho)^2 - 24 v2)) / 2
/// c~ = rho - (sqrt((1+rho)^2 - 24 v2) + sqrt((1-rho)^2 - 24 v2)) / 2
/// ```
///
/// defined when `(6|v3| - |v2|)^2 >= 24 v2^3` and `v2 != 0`.
pub fn pseudo_invariants(pair: InvariantPair) -> Result<PseudoInvariants, TorusError> {
    if pair.v2 == 0 {
        return Err(TorusError::ZeroV2);
    }
    let (v2, v3) = (i128::from(pair.v2), i128::from(pair.v3));
    let gap = 6 * v3.abs() - v2.abs();
    if gap * gap < 24 * v2 * v2 * v2 {
        return Err(TorusError::ConditionViolated { pair });
    }
    let (r, plus, _) = radicands(pair)?;
    let unknotting = match sqrt_value(&plus) {
        RealValue::Exact(s) => RealValue::Exact((&r + int(1) - s) / int(2)),
        // Rationalized to avoid cancellation: (1+rho-sqrt(D))/2 = 12 v2 / (1+rho+sqrt(D)).
        RealValue::Approx(s) => RealValue::Approx(12.0 * pair.v2 as f64 / (1.0 + to_f64(&r) + s)),
    };
    Ok(PseudoInvariants { unknotting, crossing: crossing_recovery(pair)? })
}

/// The torus knot invariants gathered in one place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusReport {
    pub params: TorusParams,
    pub invariants: InvariantPair,
    pub unknotting: i64,
    pub crossing: i64,
    pub rho: Rational,
}

pub fn torus_report(t: TorusParams) -> Result<TorusReport, TorusError> {
    let invariants = torus_v2v3(t);
    Ok(TorusReport {
        params: t,
        invariants,
        unknotting: torus_unknotting(t),
        crossing: torus_crossing(t)?,
        rho: rho(invariants)?,
    })
}

/// Every relation checked on one torus knot.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusAudit {
    pub report: TorusReport,
    pub cubic: CubicBoundsReport,
    pub unknotting_relation: bool,
    pub recovered_unknotting: Result<i64, TorusError>,
    pub unknotting_bounds: UnknottingBoundsReport,
    pub quartic: bool,
    pub recovered_crossing: Result<RealValue, TorusError>,
    pub crossing_bounds: CrossingBoundsReport,
    pub pseudo: Result<PseudoInvariants, TorusError>,
}

impl TorusAudit {
    pub fn new(t: TorusParams) -> Result<Self, TorusError> {
        let report = torus_report(t)?;
        let pair = report.invariants;
        Ok(Self {
            cubic: check_cubic_bounds(pair),
            unknotting_relation: unknotting_relation_holds(pair, report.unknotting),
            recovered_unknotting: unknotting_from_invariants(pair),
            unknotting_bounds: check_unknotting_bounds(t)?,
            quartic: check_crossing_quartic(t)?,
            recovered_crossing: crossing_recovery(pair),
            crossing_bounds: check_crossing_bounds(t)?,
            pseudo: pseudo_invariants(pair),
            report,
        })
    }

    /// Inequalities hold, recoveries are exact, and the pseudo-invariants
    /// coincide with `u` and `c`.
    pub fn all_pass(&self) -> bool {
        let u = self.report.unknotting;
        let c = self.report.crossing;
        self.cubic.all_hold()
            && self.unknotting_relation
            && self.recovered_unknotting == Ok(u)
            && self.unknotting_bounds.all_hold()
            && self.quartic
            && self.recovered_crossing.as_ref().ok().and_then(RealValue::as_integer) == Some(c)
            && self.crossing_bounds.all_hold()
            && self
                .pseudo
                .as_ref()
                .is_ok_and(|p| p.unknotting.as_integer() == Some(u) && p.crossing.as_integer() == Some(c))
    }

    /// Equality flags agree with the families where the bounds are tight:
    /// `(2, q)` for the upper cubic, upper unknotting, lower corollary and
    /// upper crossing bounds; `(p, p+1)` for the second cubic and the lower
    /// unknotting and crossing bounds.
    pub fn equality_cases_match(&self) -> bool {
        let t = self.report.params;
        let two_q = is_two_q_family(t);
        let adjacent = is_adjacent_family(t);
        let positive = self.report.invariants.v3 > 0;
        let trefoil = t.normalized().p() == 2 && t.normalized().q().abs() == 3;
        self.cubic.upper_equality == two_q
            && self.cubic.lower1_equality == trefoil
            && self.cubic.lower2_equality == (adjacent && positive)
            && self.unknotting_bounds.upper_equality == two_q
            && self.unknotting_bounds.lower_equality == adjacent
            && self.unknotting_bounds.corollary_lower_equality == two_q
            && self.crossing_bounds.upper_equality == two_q
            && self.crossing_bounds.lower_equality == adjacent
            && self.crossing_bounds.corollary_lower_equality == two_q
    }
}

/// Torus knot curves in the `(v2, v3)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveMode {
    /// Knots of fixed unknotting number: `|v3| = v2^2/u + (u-1) v2 / 6`.
    Unknotting,
    /// Knots of fixed crossing number, parameterized by real `p` with
    /// `q = c/(p-1)`.
    Crossing,
}

/// Samples of one curve, both branches. `positive` has `v3 >= 0`; the
/// other branch is its reflection.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSamples {
    pub mode: CurveMode,
    pub value: i64,
    pub positive: Vec<(f64, f64)>,
    pub negative: Vec<(f64, f64)>,
}

/// Positive torus knots `T(p, q)`, `2 <= p < q`, with the given unknotting
/// or crossing number.
pub fn torus_knots_with(mode: CurveMode, value: i64) -> Vec<TorusParams> {
    let mut out = Vec::new();
    if value < 1 {
        return out;
    }
    let target = match mode {
        CurveMode::Unknotting => 2 * value,
        CurveMode::Crossing => value,
    };
    for p in 2..=target + 1 {
        let (num, den) = match mode {
            CurveMode::Unknotting => (target, p - 1),
            CurveMode::Crossing => (target, p - 1),
        };
        if num % den != 0 {
            continue;
        }
        let q = match mode {
            CurveMode::Unknotting => num / den + 1,
            CurveMode::Crossing => num / den,
        };
        if q > p && p.gcd(&q) == 1 {
            out.push(TorusParams::new(p, q).expect("coprime"));
        }
    }
    out
}

fn merge_samples(mut xs: Vec<f64>) -> Vec<f64> {
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
    xs
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

/// Samples the unknotting (`value = u`) or crossing (`value = c`) curve,
/// clipped to the interval where the corresponding bounds are tight, with
/// the torus knots on the curve included as sample points.
pub fn torus_curve_samples(mode: CurveMode, value: i64, n: usize) -> Result<CurveSamples, TorusError> {
    if value < 1 {
        return Err(TorusError::InvalidRange(format!("curve value must be at least 1, got {value}")));
    }
    if n < 2 {
        return Err(TorusError::InvalidRange(format!("need at least 2 samples, got {n}")));
    }
    let lattice = torus_knots_with(mode, value);
    let positive: Vec<(f64, f64)> = match mode {
        CurveMode::Unknotting => {
            let u = value as f64;
            let lo = u * (u + (8.0 * u + 1.0).sqrt() + 2.0) / 6.0;
            let hi = u * (u + 1.0) / 2.0;
            let mut xs = if hi - lo <= 1e-12 * hi { vec![hi] } else { linspace(lo, hi, n) };
            xs.extend(lattice.iter().map(|&t| torus_v2v3(t).v2 as f64));
            merge_samples(xs).into_iter().map(|x| (x, x * x / u + (u - 1.0) * x / 6.0)).collect()
        }
        CurveMode::Crossing => {
            let c = value as f64;
            let hi = (c + 1.0).sqrt();
            if hi < 2.0 {
                return Err(TorusError::InvalidRange(format!("no torus knot has crossing number {value}")));
            }
            let mut ps = if hi - 2.0 <= 1e-12 { vec![2.0] } else { linspace(2.0, hi, n) };
            ps.extend(lattice.iter().map(|t| t.p() as f64));
            merge_samples(ps)
                .into_iter()
                .map(|p| {
                    let q = c / (p - 1.0);
                    let base = (p * p - 1.0) * (q * q - 1.0);
                    (base / 24.0, p * q * base / 144.0)
                })
                .collect()
        }
    };
    let negative = positive.iter().map(|&(x, y)| (x, -y)).collect();
    Ok(CurveSamples { mode, value, positive, negative })
}
