//! Cubillages of cyclic zonotopes as bi-convex inversion sets, flip digraphs
//! of types A, B and C, and the structure maps between them.

pub mod checks;
pub mod colors;
pub mod digraph;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod flips;
pub mod geometry;
pub mod inversion;
pub mod io;
pub mod morphisms;

pub use colors::{cs, enumerate_packets, stick_members, ColorSet, Stick};
pub use digraph::{build_digraph, Chain, ChainSet, Edge, FlipDigraph};
pub use enumerate::{bfs_closure, enumerate, Budget, Class};
pub use error::{Error, Result};
pub use flips::{apply_flip, Direction, EdgeKind, Flip, Generator, SymFlip};
pub use inversion::{validate, Cubillage, InversionSet};
