//! Conformal geometric algebra (R4,1) motors for pose transformation,
//! interpolation and networked pose synchronization.
// `!(x > t)` is used deliberately so NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod bench;
pub mod geom;
pub mod interp;
pub mod motor;
pub mod netsync;
pub mod playground;
