pub mod alphabet;
pub mod bits;
pub mod ltl;
pub mod vwaa;
pub mod gba;
pub mod disambiguation;
pub mod degeneralize;
pub mod oracle;
pub mod hoa;
pub mod pipeline;
