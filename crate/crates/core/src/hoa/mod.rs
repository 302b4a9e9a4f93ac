//! Reading and writing automata in the Hanoi Omega-Automata format, v1.

mod label;
mod read;
mod write;

pub use label::{cover, label, Cube};
pub use read::{parse_hoa, HoaAutomaton, HoaEdge, HoaError};
pub use write::{nba_to_hoa, tgba_to_hoa, HoaOptions};
