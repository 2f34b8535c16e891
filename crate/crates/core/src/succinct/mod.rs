//! Bit-level building blocks: raw and indexed bitvectors, packed integer
//! arrays, lookup tables, and range-minimum indexes.

pub mod bitvector;
pub mod packed;
pub mod raw;
pub mod rmq;
pub mod sampled_rmq;
pub mod tables;

pub use bitvector::BitVector;
pub use packed::PackedInts;
pub use raw::RawBits;
pub use rmq::{Direction, RmqIndex};
pub use sampled_rmq::SampledRmq;
