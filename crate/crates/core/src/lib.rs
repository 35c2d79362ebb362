//! Split semisimple groups through their Weyl groups: degrees, characteristic
//! polynomials of Weyl group elements, orders over finite fields, order
//! coincidences, and split octonion / Albert algebra arithmetic.

pub mod cyclotomic;
pub mod rootsystem;
pub mod weylchar;
pub mod reconstruct;
pub mod orders;
pub mod coincidence;
pub mod compalg;

pub use coincidence::{CoincidenceError, CoincidencePair, GeneratorId, GeneratorWord};
pub use cyclotomic::{CycloError, CycloProduct, IntPoly};
pub use orders::{FactoredOrder, OrderError, PrimePower};
pub use reconstruct::{CharPolyFamily, ReconstructError};
pub use rootsystem::{parse_type, DegreeMultiset, Letter, SemisimpleType, SimpleType, TypeError};
pub use weylchar::{CharPolyTable, InvariantProfile, WeylError};
