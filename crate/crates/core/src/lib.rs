//! Exact degree two and three Vassiliev invariants of knots.
//!
//! Diagrams ([`diagram`]) go through a Kauffman bracket state sum
//! ([`jones`]) over big-integer Laurent polynomials ([`laurent`]); `v2` and
//! `v3` are read off from derivatives of the Jones polynomial at `q = 1`.
//! [`generators`] builds torus knots and Whitehead doubles, [`torus`] checks
//! the relations among torus knot invariants in exact arithmetic
//! ([`exact`]), and [`table`] and [`plot`] handle knot tables, CSV and SVG.
//!
//! ```
//! use vassiliev::diagram::Diagram;
//! use vassiliev::jones::{InvariantPair, JonesEngine};
//!
//! let fig8: Diagram = "PD[X(4,1,5,2),X(8,5,1,6),X(6,4,7,3),X(2,8,3,7)]".parse().unwrap();
//! assert_eq!(JonesEngine::default().v2_v3(&fig8).unwrap(), InvariantPair::new(-1, 0));
//! ```

pub mod diagram;
pub mod exact;
pub mod generators;
pub mod jones;
pub mod laurent;
pub mod plot;
pub mod table;
pub mod torus;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/diagrams.md")]
    mod diagrams {}
    #[doc = include_str!("../../../book/src/jones.md")]
    mod jones {}
    #[doc = include_str!("../../../book/src/generators.md")]
    mod generators {}
    #[doc = include_str!("../../../book/src/torus.md")]
    mod torus {}
    #[doc = include_str!("../../../book/src/tables.md")]
    mod tables {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
