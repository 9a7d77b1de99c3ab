//! Diagram reduction calculus, admissible-tail enumeration and randomized
//! non-speciality certification for homogeneous linear systems
//! `L_n(a, b; m^r)` on Hirzebruch surfaces.
//!
//! The modules follow the computation bottom-up:
//!
//! - [`diagram`]: diagram values, sets and their text format;
//! - [`reduction`]: the m-reduction step and its iterates;
//! - [`tails`]: h-tails, ltails, atails and symbolic tail enumeration;
//! - [`setgen`]: the diagram families to be certified;
//! - [`field`] and [`speciality`]: interpolation matrices over `F_p` and the
//!   `ns`/`check`/`ch`/`finalnba` procedures;
//! - [`cremona`]: (-1)-speciality via Cremona reduction of plane systems;
//! - [`cli`]: the batch interpreter and its log channels.

pub mod cli;
pub mod cremona;
pub mod diagram;
pub mod error;
pub mod field;
pub mod reduction;
pub mod setgen;
pub mod speciality;
pub mod tails;

pub use diagram::{Diagram, DiagramSet, SymbolicDiagram};
pub use error::{Error, Result};
