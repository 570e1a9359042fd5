//! Killing forms of conjugacy-class differential calculi on finite groups.

pub mod algebra;
pub mod characters;
pub mod field;
pub mod group;
pub mod killing;
pub mod linalg;
pub mod named;
pub mod perm;
pub mod specht;
pub mod survey;

pub use group::{ClassTable, ConjClass, Group, GroupError, DEFAULT_ELEMENT_CAP};
pub use named::{build_named_group, NamedGroupError};
pub use perm::{Perm, PermError};
