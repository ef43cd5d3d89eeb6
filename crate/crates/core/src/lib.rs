//! Independence complexes of circle graphs.
//!
//! The crate computes the homotopy type of independence complexes (as a
//! wedge of spheres whenever the reduction rules certify one), their exact
//! integral reduced homology, and the extreme Khovanov homology of link
//! diagrams through the Lando graph of the all-B state.
//!
//! Module map:
//!
//! * [`chords`]: chord diagrams, interlacement graphs and constructive builders.
//! * [`graphs`]: graphs with loops and the graph moves used by the reduction rules.
//! * [`complexes`]: abstract simplicial complexes, joins, suspensions, wedges.
//! * [`homology`]: Smith normal form and reduced simplicial homology over Z.
//! * [`homotopy`]: wedge-of-spheres expressions and the reduction engine.
//! * [`knots`]: braids, planar diagrams, B-smoothing, extreme Khovanov homology.
//! * [`cli`]: command implementations behind the `spherand` binary, including
//!   the seeded conjecture fuzzer.

pub(crate) mod bits;
pub mod chords;
pub mod cli;
pub mod complexes;
pub mod graphs;
pub mod homology;
pub mod homotopy;
pub mod knots;

pub use chords::ChordDiagram;
pub use complexes::SimplicialComplex;
pub use graphs::{Graph, Vertex};
pub use homology::{HomologyGroup, HomologyTable};
pub use homotopy::{HomotopyExpr, ReductionTrace};
