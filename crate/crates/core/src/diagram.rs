//! Oriented knot diagrams in planar-diagram (PD) form, plus signed Gauss codes.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise
//! starting from the incoming under-strand, so the under-strand runs
//! `a -> c`. Edges are numbered `1..=2n` along the orientation; the over
//! strand runs `b -> d` when `d = b + 1` (a positive crossing) and `d -> b`
//! when `b = d + 1` (a negative crossing), arithmetic mod `2n`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax { position: usize, expected: &'static str },
    #[error("edge labels must each appear exactly twice in 1..={edge_count}; offending (label, count): {offenders:?}")]
    EdgeMultiplicity { edge_count: u32, offenders: Vec<(u32, usize)> },
    #[error("crossing {crossing}: {strand}-strand edges {from} and {to} are not consecutive along the orientation")]
    NotConsecutive { crossing: usize, strand: &'static str, from: u32, to: u32 },
    #[error("Gauss code crossing {id}: {reason}")]
    GaussPairing { id: u32, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// One crossing of a validated diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    edges: [u32; 4],
    sign: Sign,
}

impl Crossing {
    /// The tuple `(a, b, c, d)`.
    pub fn edges(&self) -> [u32; 4] {
        self.edges
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Edge along which the over-strand enters.
    pub fn over_in(&self) -> u32 {
        match self.sign {
            Sign::Positive => self.edges[1],
            Sign::Negative => self.edges[3],
        }
    }

    /// Edge along which the over-strand leaves.
    pub fn over_out(&self) -> u32 {
        match self.sign {
            Sign::Positive => self.edges[3],
            Sign::Negative => self.edges[1],
        }
    }
}

/// A validated single-component oriented knot diagram. Zero crossings is
/// the standard unknot diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    name: Option<String>,
}

fn succ(label: u32, edge_count: u32) -> u32 {
    if label == edge_count {
        1
    } else {
        label + 1
    }
}

impl Diagram {
    pub fn unknot() -> Self {
        Self::default()
    }

    /// Validates raw `X(a,b,c,d)` tuples and derives the crossing signs.
    pub fn from_tuples(tuples: &[[u32; 4]]) -> Result<Self, DiagramError> {
        let n = tuples.len();
        let edge_count = 2 * n as u32;
        let mut counts = vec![0usize; 2 * n + 1];
        let mut out_of_range = Vec::new();
        for &label in tuples.iter().flatten() {
            if (1..=edge_count).contains(&label) {
                counts[label as usize] += 1;
            } else {
                out_of_range.push(label);
            }
        }
        let mut offenders: Vec<(u32, usize)> =
            counts.iter().enumerate().skip(1).filter(|&(_, &k)| k != 2).map(|(l, &k)| (l as u32, k)).collect();
        out_of_range.sort_unstable();
        out_of_range.dedup();
        for label in out_of_range {
            let k = tuples.iter().flatten().filter(|&&l| l == label).count();
            offenders.push((label, k));
        }
        if !offenders.is_empty() {
            return Err(DiagramError::EdgeMultiplicity { edge_count, offenders });
        }

        let mut crossings = Vec::with_capacity(n);
        for (i, &[a, b, c, d]) in tuples.iter().enumerate() {
            if c != succ(a, edge_count) {
                return Err(DiagramError::NotConsecutive { crossing: i, strand: "under", from: a, to: c });
            }
            let b_to_d = d == succ(b, edge_count);
            let d_to_b = b == succ(d, edge_count);
            let sign = match (b_to_d, d_to_b) {
                (true, false) => Sign::Positive,
                (false, true) => Sign::Negative,
                // Only possible with two edges: every label is its own
                // successor's successor, so use which occurrence of the
                // shared label is the incoming end.
                (true, true) => {
                    if b == c || d == a {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    }
                }
                (false, false) => {
                    return Err(DiagramError::NotConsecutive { crossing: i, strand: "over", from: b, to: d })
                }
            };
            crossings.push(Crossing { edges: [a, b, c, d], sign });
        }
        Ok(Self { crossings, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> u32 {
        2 * self.crossings.len() as u32
    }

    pub fn is_trivial(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Counts of (positive, negative) crossings.
    pub fn sign_counts(&self) -> (usize, usize) {
        let pos = self.crossings.iter().filter(|c| c.sign == Sign::Positive).count();
        (pos, self.crossings.len() - pos)
    }

    pub fn tuples(&self) -> Vec<[u32; 4]> {
        self.crossings.iter().map(|c| c.edges).collect()
    }

    /// The mirror image: every crossing switched, keeping edge labels. The
    /// former over-strand becomes the under-strand, so each tuple is rotated
    /// to start at its new incoming under-edge.
    pub fn mirror(&self) -> Self {
        let tuples: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                match c.sign {
                    Sign::Positive => [b, cc, d, a],
                    Sign::Negative => [d, a, b, cc],
                }
            })
            .collect();
        let mut m = Self::from_tuples(&tuples).expect("mirror of a valid diagram is valid");
        m.name = self.name.as_ref().map(|n| format!("mirror({n})"));
        m
    }

    /// Connected sum, cutting `self` at edge `2n` and `other` at its last
    /// edge. Labels of `other` are shifted past those of `self`.
    pub fn connect_sum(&self, other: &Diagram) -> Self {
        if self.is_trivial() {
            return other.clone();
        }
        if other.is_trivial() {
            return self.clone();
        }
        let n1 = self.edge_count();
        let n2 = other.edge_count();
        let total = n1 + n2;
        let mut tuples = Vec::with_capacity(self.crossings.len() + other.crossings.len());
        // In self, the incoming end of edge n1 now arrives from other's last edge.
        for c in &self.crossings {
            let mut t = c.edges;
            let in_slot = if t[0] == n1 { Some(0) } else { incoming_over_slot(c, n1) };
            if let Some(slot) = in_slot {
                t[slot] = total;
            }
            tuples.push(t);
        }
        // In other, the incoming end of its last edge now arrives from self's edge n1.
        for c in &other.crossings {
            let mut t = c.edges.map(|l| l + n1);
            let in_slot = if c.edges[0] == n2 { Some(0) } else { incoming_over_slot(c, n2) };
            if let Some(slot) = in_slot {
                t[slot] = n1;
            }
            tuples.push(t);
        }
        Self::from_tuples(&tuples).expect("connected sum of valid diagrams is valid")
    }

    /// Renders as `PD[X(a,b,c,d),...]`.
    pub fn to_pd_text(&self) -> String {
        self.to_string()
    }

    /// Signed Gauss code, crossings numbered by first passage starting
    /// from the head of edge 1.
    pub fn to_gauss(&self) -> GaussCode {
        let m = self.edge_count();
        let mut ids = vec![0u32; self.crossings.len()];
        let mut next_id = 1;
        let mut entries = Vec::with_capacity(m as usize);
        for edge in 1..=m {
            let (idx, over) = self
                .crossings
                .iter()
                .enumerate()
                .find_map(|(i, c)| {
                    if c.edges[0] == edge {
                        Some((i, false))
                    } else if c.over_in() == edge {
                        Some((i, true))
                    } else {
                        None
                    }
                })
                .expect("every edge enters exactly one crossing");
            if ids[idx] == 0 {
                ids[idx] = next_id;
                next_id += 1;
            }
            entries.push(GaussEntry { crossing: ids[idx], over, sign: self.crossings[idx].sign });
        }
        GaussCode { entries }
    }
}

fn incoming_over_slot(c: &Crossing, label: u32) -> Option<usize> {
    if c.over_in() != label {
        return None;
    }
    match c.sign {
        Sign::Positive => Some(1),
        Sign::Negative => Some(3),
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PD[")?;
        for (i, c) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let [a, b, cc, d] = c.edges;
            write!(f, "X({a},{b},{cc},{d})")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pd(s)
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self { bytes: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, token: &'static str) -> Result<(), DiagramError> {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(DiagramError::Syntax { position: self.pos, expected: token })
        }
    }

    fn number(&mut self) -> Result<u32, DiagramError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse::<u32>().ok())
            .filter(|&v| v > 0)
            .ok_or(DiagramError::Syntax { position: start, expected: "a positive edge label" })
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.bytes.len()
    }
}

/// Parses `PD[X(i,j,k,l),...]`. Whitespace is ignored everywhere.
pub fn parse_pd(text: &str) -> Result<Diagram, DiagramError> {
    let mut cur = Cursor::new(text);
    cur.expect("PD")?;
    cur.expect("[")?;
    let mut tuples = Vec::new();
    if cur.peek() != Some(b']') {
        loop {
            cur.expect("X")?;
            cur.expect("(")?;
            let mut t = [0u32; 4];
            for (k, slot) in t.iter_mut().enumerate() {
                if k > 0 {
                    cur.expect(",")?;
                }
                *slot = cur.number()?;
            }
            cur.expect(")")?;
            tuples.push(t);
            if cur.peek() == Some(b',') {
                cur.expect(",")?;
            } else {
                break;
            }
        }
    }
    cur.expect("]")?;
    if !cur.at_end() {
        return Err(DiagramError::Syntax { position: cur.pos, expected: "end of input" });
    }
    Diagram::from_tuples(&tuples)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussEntry {
    pub crossing: u32,
    pub over: bool,
    pub sign: Sign,
}

/// A signed Gauss code: the crossings met along the knot, in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussCode {
    pub entries: Vec<GaussEntry>,
}

impl GaussCode {
    /// Converts to a PD diagram. Token `j` (1-based) is the crossing at
    /// the head of edge `j`.
    pub fn to_diagram(&self) -> Result<Diagram, DiagramError> {
        let m = self.entries.len() as u32;
        let mut ids: Vec<u32> = Vec::new();
        for e in &self.entries {
            if !ids.contains(&e.crossing) {
                ids.push(e.crossing);
            }
        }
        let mut tuples = Vec::with_capacity(ids.len());
        for &id in &ids {
            let passes: Vec<(u32, &GaussEntry)> = self
                .entries
                .iter()
                .enumerate()
                .filter(|(_, e)| e.crossing == id)
                .map(|(j, e)| (j as u32 + 1, e))
                .collect();
            let [(j1, e1), (j2, e2)] = passes[..] else {
                return Err(DiagramError::GaussPairing {
                    id,
                    reason: format!("appears {} times, expected 2", passes.len()),
                });
            };
            if e1.over == e2.over {
                let which = if e1.over { "over" } else { "under" };
                return Err(DiagramError::GaussPairing { id, reason: format!("both passes are {which}") });
            }
            if e1.sign != e2.sign {
                return Err(DiagramError::GaussPairing { id, reason: "sign mismatch".into() });
            }
            let (under, over) = if e1.over { (j2, j1) } else { (j1, j2) };
            let (a, c) = (under, succ(under, m));
            let (o_in, o_out) = (over, succ(over, m));
            tuples.push(match e1.sign {
                Sign::Positive => [a, o_in, c, o_out],
                Sign::Negative => [a, o_out, c, o_in],
            });
        }
        Diagram::from_tuples(&tuples)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            write!(f, "{}{}{}", if e.over { 'O' } else { 'U' }, e.crossing, e.sign.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for GaussCode {
    type Err = DiagramError;
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(text);
        let mut entries = Vec::new();
        while !cur.at_end() {
            let over = match cur.peek() {
                Some(b'O') => true,
                Some(b'U') => false,
                _ => return Err(DiagramError::Syntax { position: cur.pos, expected: "O or U" }),
            };
            cur.pos += 1;
            let crossing = cur.number()?;
            let sign = match cur.peek() {
                Some(b'+') => Sign::Positive,
                Some(b'-') => Sign::Negative,
                _ => return Err(DiagramError::Syntax { position: cur.pos, expected: "+ or -" }),
            };
            cur.pos += 1;
            entries.push(GaussEntry { crossing, over, sign });
        }
        Ok(GaussCode { entries })
    }
}

/// Parses a signed Gauss code such as `O1+U2+O3+U1+O2+U3+`.
pub fn parse_gauss(text: &str) -> Result<Diagram, DiagramError> {
    text.parse::<GaussCode>()?.to_diagram()
}
