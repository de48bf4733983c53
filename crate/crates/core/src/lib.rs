//! Explicit minimal embeddings of product spheres and projective spaces into
//! round spheres, with numerical measurement of their extrinsic geometry and
//! closed-form conformal invariants.

pub mod algebra;
pub mod campaigns;
pub mod cli;
pub mod closed_forms;
pub mod embedding;
pub mod error;
pub mod extrinsic;
pub mod jet;
pub mod linalg;
pub mod scalar;
pub mod special;

pub use algebra::{AlgebraElement, Convention, FieldTag, HVector};
pub use embedding::{EmbeddingSpec, FramePoint, ProductSphereSpec, ProjectiveSpec};
pub use error::{GeometryError, Result};
pub use extrinsic::{measure, ExtrinsicReport};
pub use jet::{Jet2, JetMap};
