//! Rumer diagrams and the SL(2) bracket algebra.
//!
//! A *valence scheme* on `n` atoms is a loop-free multigraph whose vertices
//! sit clockwise on a circle; it records the factors of a bracket monomial
//! `p_{i1 j1} ... p_{im jm}`. Schemes without crossing chords are *Rumer
//! diagrams*, and their monomials form a basis of the degree-`m` invariants.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`diagram`]: edges, schemes, Rumer diagrams, crossing tests and
//!   enumeration;
//! * [`counting`]: closed formulas and the even-triangle recurrence;
//! * [`bracket`]: bracket polynomials, the quadratic Plücker rewrite and
//!   straightening into the Rumer basis;
//! * [`oracle`]: expansion into coordinates, the SL(2) action and exact
//!   rank computation, used as independent ground truth;
//! * [`bijection`]: the vertex-merge map behind the recurrence;
//! * [`render`]: static SVG output;
//! * [`cli`]: the `rumer` command-line front end.
//!
//! ```
//! use rumer::bracket::{straighten, BracketPolynomial};
//!
//! let p: BracketPolynomial = BracketPolynomial::parse("[1,3][2,4]", 4).unwrap();
//! let s = straighten(&p).unwrap();
//! assert_eq!(s.to_string(), "[1,2][3,4] + [1,4][2,3]");
//! ```

pub mod bijection;
pub mod bracket;
pub mod cli;
pub mod counting;
pub mod diagram;
mod error;
mod json;
pub mod oracle;
pub mod render;

pub use error::{Error, ParseError, Result};
