//! Finite frames, their sublocale coframes, and the subsystems of sublocales
//! (Boolean-generated, closed-generated, D-sublocales, spatial) compared on
//! them. Also finite topological spaces and an exact model of the ω-chain.

pub mod element_set;
pub mod formats;
pub mod generate;
pub mod interior;
pub mod lattice;
pub mod mutation;
pub mod omega;
pub mod assembly;
pub mod classify;
pub mod dot;
pub mod structures;
pub mod sublocale;
pub mod topology;
pub mod verify;

pub use element_set::ElementSet;
pub use lattice::{verify_frame, Elem, FiniteFrame, FiniteLattice, FrameError};
pub use mutation::{with_mutant, Mutant};
pub use sublocale::{Nucleus, Sublocale, SublocaleError};
