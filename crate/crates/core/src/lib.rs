//! Rotation distance between binary trees.
//!
//! Exact distances and diameters by search, lower bounds from leaf
//! addresses, coverings and leaf collapsing, Thompson's group F acting on
//! trees, and the polygon-triangulation view of rotations.

pub mod bounds;
pub mod collapse;
pub mod covering;
pub mod error;
pub mod families;
pub mod rotation;
pub mod search;
pub mod thompson;
pub mod tree;
pub mod triangulation;
pub mod verify;

pub use collapse::LabelSet;
pub use error::{Error, Result};
pub use rotation::{PairName, RotationEdge, Sign};
pub use search::SearchReport;
pub use tree::{Address, ExtendedTree, Label, Shape, Tree};
