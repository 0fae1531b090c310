//! Tree-models, SC-trees, tree-depth, linear clique-width and CMSO1 tools for
//! graphs of bounded shrub-depth.

pub mod caps;
pub mod constructions;
pub mod depth;
pub mod error;
pub mod graph;
pub mod lincw;
pub mod mso;
pub mod registry;
pub mod sc_model;
pub mod solver;
pub mod tree_model;

pub use caps::Caps;
pub use error::{Error, Result};
pub use graph::Graph;
pub use sc_model::{ScNode, ScTree};
pub use tree_model::{Leaf, RootedTree, Signature, TreeModel};
