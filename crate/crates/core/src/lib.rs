// SPDX-License-Identifier: Apache-2.0

pub mod disc;
pub mod embeddings;
pub mod error;
pub mod lattice;
pub mod og10;
pub mod text;

pub use disc::{discriminant_group, genus_tag, FiniteQuadraticForm, GenusTag};
pub use error::{Error, Result};
pub use lattice::{Lattice, Signature, Sublattice};
