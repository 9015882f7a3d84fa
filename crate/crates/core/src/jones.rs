//! Kauffman bracket state sum, Jones polynomial, and the invariants `v2`, `v3`.
//!
//! `v2 = -J''(1) / 6` and `v3 = -(J'''(1) + 3 J''(1)) / 36`, where `J` is the
//! Jones polynomial in `q`. Both divisions must be exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::Diagram;
use crate::laurent::{LaurentError, LaurentPoly};

/// Largest diagram the state sum accepts unless configured otherwise.
pub const DEFAULT_CROSSING_CAP: usize = 20;

/// Environment variable overriding the crossing cap.
pub const CROSSING_CAP_ENV: &str = "VASSILIEV_CROSSING_CAP";

/// Divides bracket exponents (in `A`) into Jones exponents (in `q`). The sign
/// is pinned by requiring `v3 = +1` on the positive trefoil.
pub const REINDEX_DIVISOR: i64 = -4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("diagram has {crossings} crossings, above the cap of {cap}; raise it with --cap or {CROSSING_CAP_ENV}")]
    CrossingCap { crossings: usize, cap: usize },
    #[error("{quantity}: {numerator} is not divisible by {divisor}")]
    NonExactDivision { quantity: &'static str, numerator: BigInt, divisor: i64 },
    #[error("normalized bracket is not a polynomial in q: {0}")]
    Normalization(#[from] LaurentError),
    #[error("{quantity} = {value} does not fit in 64 bits")]
    Overflow { quantity: &'static str, value: BigInt },
}

/// The pair `(v2, v3)` of a knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct InvariantPair {
    pub v2: i64,
    pub v3: i64,
}

impl InvariantPair {
    pub const fn new(v2: i64, v3: i64) -> Self {
        Self { v2, v3 }
    }

    /// Values on the mirror image.
    pub fn mirror(self) -> Self {
        Self { v2: self.v2, v3: -self.v3 }
    }

    /// `v2 mod 2`, the Arf invariant.
    pub fn arf(self) -> u8 {
        self.v2.rem_euclid(2) as u8
    }
}

impl Add for InvariantPair {
    type Output = InvariantPair;
    fn add(self, rhs: Self) -> Self {
        Self { v2: self.v2 + rhs.v2, v3: self.v3 + rhs.v3 }
    }
}

impl fmt::Display for InvariantPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.v2, self.v3)
    }
}

/// Evaluates bracket, Jones polynomial and invariants of diagrams up to a
/// crossing cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JonesEngine {
    pub crossing_cap: usize,
}

impl Default for JonesEngine {
    fn default() -> Self {
        Self { crossing_cap: DEFAULT_CROSSING_CAP }
    }
}

impl JonesEngine {
    pub fn with_cap(crossing_cap: usize) -> Self {
        Self { crossing_cap }
    }

    /// Default engine, with the cap taken from `VASSILIEV_CROSSING_CAP` when
    /// that is set to a number.
    pub fn from_env() -> Self {
        std::env::var(CROSSING_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).map(Self::with_cap).unwrap_or_default()
    }

    /// Kauffman bracket `<D>` in `A`, normalized so that the crossingless
    /// circle has bracket 1.
    pub fn kauffman_bracket(&self, d: &Diagram) -> Result<LaurentPoly, EngineError> {
        let n = d.crossing_count();
        if n > self.crossing_cap {
            return Err(EngineError::CrossingCap { crossings: n, cap: self.crossing_cap });
        }
        if n == 0 {
            return Ok(LaurentPoly::one());
        }
        let tally = state_tally(d);
        // delta = -A^2 - A^-2
        let delta = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
        let max_loops = tally.keys().map(|&(_, l)| l).max().unwrap_or(1);
        let delta_pows: Vec<LaurentPoly> = (0..max_loops)
            .scan(LaurentPoly::one(), |acc, _| {
                let cur = acc.clone();
                *acc = &*acc * &delta;
                Some(cur)
            })
            .collect();
        let mut bracket = LaurentPoly::zero();
        for (&(a_minus_b, loops), &count) in &tally {
            let term = &LaurentPoly::mono(count, a_minus_b) * &delta_pows[loops - 1];
            bracket += &term;
        }
        Ok(bracket)
    }

    /// Jones polynomial in `q`: `(-A^3)^(-w) <D>` with `A^k -> q^(k / REINDEX_DIVISOR)`.
    pub fn jones(&self, d: &Diagram) -> Result<LaurentPoly, EngineError> {
        let bracket = self.kauffman_bracket(d)?;
        let w = d.writhe();
        let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
        let f = bracket.shift(-3 * w);
        let f = if sign < 0 { -f } else { f };
        Ok(f.reindex_exponents(REINDEX_DIVISOR)?)
    }

    pub fn v2_v3(&self, d: &Diagram) -> Result<InvariantPair, EngineError> {
        invariants_from_jones(&self.jones(d)?)
    }
}

/// `v2` and `v3` from a Jones polynomial in `q`.
pub fn invariants_from_jones(jones: &LaurentPoly) -> Result<InvariantPair, EngineError> {
    let j2 = jones.falling_factorial_sum(2);
    let j3 = jones.falling_factorial_sum(3);
    let v2 = exact_div("v2", -j2.clone(), 6)?;
    let v3 = exact_div("v3", -(j3 + &j2 * BigInt::from(3)), 36)?;
    Ok(InvariantPair { v2: to_i64("v2", v2)?, v3: to_i64("v3", v3)? })
}

fn exact_div(quantity: &'static str, numerator: BigInt, divisor: i64) -> Result<BigInt, EngineError> {
    let (q, r) = numerator.div_rem(&BigInt::from(divisor));
    if !r.is_zero() {
        return Err(EngineError::NonExactDivision { quantity, numerator, divisor });
    }
    Ok(q)
}

fn to_i64(quantity: &'static str, value: BigInt) -> Result<i64, EngineError> {
    value.to_i64().ok_or(EngineError::Overflow { quantity, value })
}

/// Counts states by `(#A - #B, loop count)`.
fn state_tally(d: &Diagram) -> BTreeMap<(i64, usize), u64> {
    let n = d.crossing_count();
    let tuples: Vec<[usize; 4]> = d.crossings().iter().map(|c| c.edges().map(|l| l as usize - 1)).collect();
    let edges = 2 * n;
    let states: u64 = 1 << n;
    (0..states)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc, mask| {
            let mut uf = LoopCounter::new(edges);
            for (k, &[a, b, c, e]) in tuples.iter().enumerate() {
                if mask >> k & 1 == 0 {
                    // A-smoothing
                    uf.union(a, e);
                    uf.union(b, c);
                } else {
                    uf.union(a, b);
                    uf.union(c, e);
                }
            }
            let b_count = mask.count_ones() as i64;
            let a_minus_b = n as i64 - 2 * b_count;
            *acc.entry((a_minus_b, uf.components)).or_insert(0u64) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut x, y| {
            for (k, v) in y {
                *x.entry(k).or_insert(0) += v;
            }
            x
        })
}

/// Union-find over edge indices that tracks the number of classes.
struct LoopCounter {
    parent: Vec<usize>,
    components: usize,
}

impl LoopCounter {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), components: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.components -= 1;
        }
    }
}
