//! PD diagrams for parameterized families: torus-knot braid closures and
//! twisted Whitehead doubles of the unknot.
//!
//! Both are produced by [`PlanarBuilder`], which stacks cups, crossings and
//! caps on vertical positions and then labels edges by walking the knot.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::diagram::Diagram;
use crate::jones::InvariantPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("torus parameters must be nonzero, got ({p},{q})")]
    ZeroParameter { p: i64, q: i64 },
    #[error("torus parameters ({p},{q}) are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("position {position} is out of range for {width} strands")]
    Position { position: usize, width: usize },
    #[error("closure has more than one component")]
    MultipleComponents,
    #[error("{0} strand ends left open")]
    OpenEnds(usize),
}

/// A coprime pair `(p, q)` naming the torus knot `T(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusParams {
    p: i64,
    q: i64,
}

impl TorusParams {
    pub fn new(p: i64, q: i64) -> Result<Self, GeneratorError> {
        if p == 0 || q == 0 {
            return Err(GeneratorError::ZeroParameter { p, q });
        }
        if p.gcd(&q) != 1 {
            return Err(GeneratorError::NotCoprime { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `T(p, q)` is the unknot exactly when `|p| = 1` or `|q| = 1`.
    pub fn is_unknot(&self) -> bool {
        self.p.abs() == 1 || self.q.abs() == 1
    }

    /// `T(p, -q)`, the mirror image.
    pub fn mirror(&self) -> Self {
        Self { p: self.p, q: -self.q }
    }

    pub fn swapped(&self) -> Self {
        Self { p: self.q, q: self.p }
    }

    /// Representative with `0 < |p| <= |q|` and `p > 0`, which names the
    /// same knot.
    pub fn normalized(&self) -> Self {
        let (mut p, mut q) = if self.p.abs() <= self.q.abs() { (self.p, self.q) } else { (self.q, self.p) };
        if p < 0 {
            p = -p;
            q = -q;
        }
        Self { p, q }
    }

    /// Crossings in the braid closure `(s_1 ... s_{|p|-1})^|q|`.
    pub fn braid_crossings(&self) -> u64 {
        if self.is_unknot() {
            0
        } else {
            self.q.unsigned_abs() * (self.p.unsigned_abs() - 1)
        }
    }
}

impl fmt::Display for TorusParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.p, self.q)
    }
}

/// Index `i` of the twisted Whitehead double `Wh(i)`: `i` full twists,
/// negative `i` meaning `-i` negative full twists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WhiteheadIndex(pub i64);

/// A braid generator `s_i` (strands `i`, `i+1`, zero-based) or its inverse.
/// Positive generators give positive crossings when strands run upward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraidLetter {
    pub index: usize,
    pub positive: bool,
}

/// Closure of a braid on `strands` strands.
pub fn braid_closure(strands: usize, word: &[BraidLetter]) -> Result<Diagram, GeneratorError> {
    let mut b = PlanarBuilder::braid(strands);
    for l in word {
        // Upward strands: the over-strand running bottom-right to top-left
        // is a positive crossing.
        b.crossing(l.index, if l.positive { Over::RightToLeft } else { Over::LeftToRight })?;
    }
    b.close_braid();
    b.finish()
}

/// Closure of `(s_1 ... s_{|p|-1})^|q|`, with inverted generators when
/// `pq < 0`. The unknot cases give the crossingless diagram.
pub fn torus_pd(t: TorusParams) -> Diagram {
    if t.is_unknot() {
        return Diagram::unknot();
    }
    let strands = t.p.unsigned_abs() as usize;
    let positive = (t.p > 0) == (t.q > 0);
    let word: Vec<BraidLetter> =
        (0..t.q.unsigned_abs()).flat_map(|_| (0..strands - 1).map(|index| BraidLetter { index, positive })).collect();
    braid_closure(strands, &word).expect("torus braid closure is a knot").with_name(t.to_string())
}

/// Twisted Whitehead double of the unknot: a twist region of `2|i|`
/// crossings followed by a two-crossing clasp, in a four-position plat.
/// `i = 0` gives the two-crossing clasp diagram of the unknot.
pub fn whitehead_pd(w: WhiteheadIndex) -> Diagram {
    let twist = if w.0 >= 0 { Over::LeftToRight } else { Over::RightToLeft };
    let mut b = PlanarBuilder::default();
    b.cup(0).expect("empty builder");
    b.cup(1).expect("two open ends");
    for _ in 0..2 * w.0.unsigned_abs() {
        b.crossing(0, twist).expect("four positions");
    }
    // Clasp chirality pinned so that Wh(1) has (v2, v3) = (1, 1).
    for _ in 0..2 {
        b.crossing(1, Over::LeftToRight).expect("four positions");
    }
    b.cap(0).expect("four positions");
    b.cap(0).expect("two positions");
    b.finish().expect("twist knot plat is a knot").with_name(format!("Wh({})", w.0))
}

/// `(i, i(i+1)/2)`, the invariants of `Wh(i)`.
pub fn whitehead_closed_form(w: WhiteheadIndex) -> InvariantPair {
    let i = w.0;
    InvariantPair::new(i, i * (i + 1) / 2)
}

/// Which diagonal of a crossing passes over, as seen with both strands
/// drawn from the bottom of the crossing to the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Over {
    /// Bottom-left to top-right passes over.
    LeftToRight,
    /// Bottom-right to top-left passes over.
    RightToLeft,
}

// Crossing slots in counterclockwise order.
const BL: u8 = 0;
const BR: u8 = 1;
const TR: u8 = 2;
const TL: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Port {
    node: usize,
    slot: u8,
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Crossing(Over),
    /// A pass-through point joining two arcs (cups and braid closure arcs).
    Joint,
}

/// Builds planar knot diagrams from bottom to top on a row of open strand
/// ends.
#[derive(Debug, Default)]
pub struct PlanarBuilder {
    nodes: Vec<Node>,
    links: HashMap<Port, Port>,
    open: Vec<Port>,
    braid_bottoms: Vec<usize>,
}

impl PlanarBuilder {
    /// `strands` upward strands, each starting at its own joint so that
    /// [`close_braid`](Self::close_braid) can connect top to bottom.
    pub fn braid(strands: usize) -> Self {
        let mut b = Self::default();
        for _ in 0..strands {
            let j = b.add(Node::Joint);
            b.braid_bottoms.push(j);
            b.open.push(Port { node: j, slot: 1 });
        }
        b
    }

    fn add(&mut self, node: Node) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn link(&mut self, a: Port, b: Port) {
        self.links.insert(a, b);
        self.links.insert(b, a);
    }

    fn check(&self, position: usize, span: usize) -> Result<(), GeneratorError> {
        if position + span > self.open.len() {
            return Err(GeneratorError::Position { position, width: self.open.len() });
        }
        Ok(())
    }

    /// Opens a cup whose two ends become positions `i` and `i + 1`.
    pub fn cup(&mut self, i: usize) -> Result<(), GeneratorError> {
        self.check(i, 0)?;
        let j = self.add(Node::Joint);
        self.open.insert(i, Port { node: j, slot: 1 });
        self.open.insert(i, Port { node: j, slot: 0 });
        Ok(())
    }

    /// Crosses positions `i` and `i + 1`.
    pub fn crossing(&mut self, i: usize, over: Over) -> Result<(), GeneratorError> {
        self.check(i, 2)?;
        let k = self.add(Node::Crossing(over));
        self.link(self.open[i], Port { node: k, slot: BL });
        self.link(self.open[i + 1], Port { node: k, slot: BR });
        self.open[i] = Port { node: k, slot: TL };
        self.open[i + 1] = Port { node: k, slot: TR };
        Ok(())
    }

    /// Joins positions `i` and `i + 1` with a cap.
    pub fn cap(&mut self, i: usize) -> Result<(), GeneratorError> {
        self.check(i, 2)?;
        let (a, b) = (self.open[i], self.open[i + 1]);
        self.link(a, b);
        self.open.drain(i..i + 2);
        Ok(())
    }

    /// Connects each top end to the bottom of its braid strand.
    pub fn close_braid(&mut self) {
        let bottoms = std::mem::take(&mut self.braid_bottoms);
        let tops = std::mem::take(&mut self.open);
        for (top, j) in tops.into_iter().zip(bottoms) {
            self.link(top, Port { node: j, slot: 0 });
        }
    }

    /// Follows links through joints until reaching a crossing port.
    fn next_crossing_port(&self, from: Port, seen_joints: &mut [bool]) -> Port {
        let mut p = self.links[&from];
        while let Node::Joint = self.nodes[p.node] {
            seen_joints[p.node] = true;
            p = self.links[&Port { node: p.node, slot: 1 - p.slot }];
        }
        p
    }

    /// Labels edges along the knot and emits the diagram.
    pub fn finish(&self) -> Result<Diagram, GeneratorError> {
        if !self.open.is_empty() || !self.braid_bottoms.is_empty() {
            return Err(GeneratorError::OpenEnds(self.open.len().max(self.braid_bottoms.len())));
        }
        let crossings: Vec<usize> =
            (0..self.nodes.len()).filter(|&i| matches!(self.nodes[i], Node::Crossing(_))).collect();
        let joints = self.nodes.len() - crossings.len();
        if crossings.is_empty() {
            return match joints {
                0 | 1 => Ok(Diagram::unknot()),
                _ => Err(GeneratorError::MultipleComponents),
            };
        }
        // label[node][slot]
        let mut label = vec![[0u32; 4]; self.nodes.len()];
        let mut entered = vec![[false; 4]; self.nodes.len()];
        let mut seen_joints = vec![false; self.nodes.len()];
        let start = Port { node: crossings[0], slot: BL };
        let mut here = start;
        let mut edge = 0u32;
        loop {
            entered[here.node][here.slot as usize] = true;
            let exit = Port { node: here.node, slot: (here.slot + 2) % 4 };
            let next = self.next_crossing_port(exit, &mut seen_joints);
            edge += 1;
            label[exit.node][exit.slot as usize] = edge;
            label[next.node][next.slot as usize] = edge;
            here = next;
            if here == start {
                break;
            }
        }
        let all_joints_seen = (0..self.nodes.len()).all(|i| !matches!(self.nodes[i], Node::Joint) || seen_joints[i]);
        if edge as usize != 2 * crossings.len() || !all_joints_seen {
            return Err(GeneratorError::MultipleComponents);
        }
        let tuples: Vec<[u32; 4]> = crossings
            .iter()
            .map(|&k| {
                let Node::Crossing(over) = self.nodes[k] else { unreachable!() };
                let under_slots = match over {
                    Over::LeftToRight => [BR, TL],
                    Over::RightToLeft => [BL, TR],
                };
                let first = if entered[k][under_slots[0] as usize] { under_slots[0] } else { under_slots[1] };
                std::array::from_fn(|j| label[k][((first as usize) + j) % 4])
            })
            .collect();
        Ok(Diagram::from_tuples(&tuples).expect("walk labels form a valid diagram"))
    }
}
