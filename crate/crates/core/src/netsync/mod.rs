//! Networked pose synchronization: wire codecs and a deterministic
//! simulated sender → channel → receiver pipeline.

pub mod codec;
pub mod sim;

pub use codec::{decode, encode, Codec, CodecError, Transform, WireMessage, HEADER_BYTES};
pub use sim::{run_simulation, ChannelModel, MotionModel, Pipeline, Receiver, SimConfig, SimError, SyncReport};
