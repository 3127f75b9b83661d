//! Chord indices and smoothing invariants of virtual and flat virtual knots,
//! computed on Gauss diagrams.

pub mod diagrams;
pub mod audit;
pub mod census;
pub mod error;
pub mod generate;
pub mod indices;
pub mod invariants;
pub mod module;
pub mod moves;
pub mod poly;
pub mod smoothing;

pub use diagrams::{
    lattice_diagram, parse_gauss_code, AnyDiagram, ChordDiagram, ChordId, DiagramKind, Endpoint,
    FlatDiagram, FlatLinkDiagram, GaussDiagram, Role, Sign, VirtualLinkDiagram,
};
pub use error::{Error, ParseError, Result};
pub use poly::LaurentPoly;
