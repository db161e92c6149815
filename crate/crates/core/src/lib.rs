pub mod algebra;
pub mod blocks;
pub mod error;
pub mod identities;
pub mod io;
pub mod localization;
pub mod mirror;
pub mod vsc;

pub use algebra::{ExactRational, RatFunExpr, ResidueOrder, SparsePoly};
pub use blocks::{CharacterAssignment, OrderedPartition};
pub use error::{Error, Result};
pub use identities::{identity_suite, IdentityCheck, IdentityReport};
pub use io::{cache_read, cache_write, CACHE_ENV, SCHEMA_VERSION};
pub use localization::{GwRequest, GwValue, Pipeline};
pub use mirror::{mirror_transform, verify_transform, TransformReport};
pub use vsc::{Provenance, VscKey, VscTable};
