//! Complexity of closed 3-manifolds from coloured graphs and Heegaard diagrams.
//!
//! A gem (4-coloured graph) is drawn on three surfaces, one per splitting of
//! the colours into pairs. Its GM-complexity is computed directly from the
//! regions of those drawings, and independently as the modified Heegaard
//! complexity of the induced generalized Heegaard diagrams.

pub mod bridge;
pub mod census;
pub mod diagram;
pub(crate) mod dsu;
pub mod embedding;
pub mod error;
pub mod forest;
pub mod gem;
pub mod gm;
pub mod report;
pub mod snf;

pub use bridge::{cross_check, first_homology, induce_diagram, CrossCheck, H1Fingerprint, InducedDiagram};
pub use census::{Catalogue, CatalogueEntry, CensusOptions};
pub use diagram::{
    modified_complexity, modified_complexity_reduced, parse_hdg, reduce_all, serialize_hdg,
    GeneralizedHeegaardDiagram, SurfaceDiagram, System,
};
pub use embedding::RegularEmbedding;
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use gem::{parse_gem, Colour, ColourSet, Gem, GemInvariants};
pub use gm::{gm_value, gm_value_crystallization, ComplexityWitness, GmOptions};
pub use report::ComplexityReport;
