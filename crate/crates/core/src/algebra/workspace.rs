//! Buffer providers for multi-step computations.
//!
//! Routines such as motor decomposition need several temporary multivectors.
//! They are written once against [`Workspace`] and run unchanged on stack
//! buffers, on a [`MultivectorPool`], or on freshly heap-allocated buffers.

use std::ops::{Deref, DerefMut};

use super::blade::{ALL, BLADE_COUNT, EVEN, ODD};
use super::multivector::{gp_dense_into, gp_into, Coeffs};
use super::pool::{MultivectorPool, PoolBuffer};

/// Which blades of an operand may be nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    Even,
    Odd,
    All,
}

impl Support {
    pub fn indices(self) -> &'static [usize] {
        match self {
            Support::Even => &EVEN,
            Support::Odd => &ODD,
            Support::All => &ALL,
        }
    }
}

pub trait Workspace {
    type Buf: DerefMut<Target = Coeffs>;

    /// A zero-filled buffer.
    fn take(&mut self) -> Self::Buf;

    fn give(&mut self, buf: Self::Buf);

    /// `out = a * b`, where each operand is zero outside its support.
    fn gp(&self, a: &Coeffs, sa: Support, b: &Coeffs, sb: Support, out: &mut Coeffs);
}

/// Owned coefficient array living wherever its owner lives.
pub struct StackBuf(pub Coeffs);

impl Deref for StackBuf {
    type Target = Coeffs;
    fn deref(&self) -> &Coeffs {
        &self.0
    }
}

impl DerefMut for StackBuf {
    fn deref_mut(&mut self) -> &mut Coeffs {
        &mut self.0
    }
}

/// Plain value buffers with support-aware products. No heap use.
#[derive(Debug, Default, Clone, Copy)]
pub struct StackWorkspace;

impl Workspace for StackWorkspace {
    type Buf = StackBuf;

    fn take(&mut self) -> StackBuf {
        StackBuf([0.0; BLADE_COUNT])
    }

    fn give(&mut self, _buf: StackBuf) {}

    fn gp(&self, a: &Coeffs, sa: Support, b: &Coeffs, sb: Support, out: &mut Coeffs) {
        gp_into(a, sa.indices(), b, sb.indices(), out);
    }
}

impl Workspace for MultivectorPool {
    type Buf = PoolBuffer;

    fn take(&mut self) -> PoolBuffer {
        self.acquire()
    }

    fn give(&mut self, buf: PoolBuffer) {
        self.release(buf).expect("workspace buffers come from this pool");
    }

    fn gp(&self, a: &Coeffs, sa: Support, b: &Coeffs, sb: Support, out: &mut Coeffs) {
        gp_into(a, sa.indices(), b, sb.indices(), out);
    }
}

/// Allocates a fresh 32-slot heap buffer for every temporary and multiplies
/// densely, the way an unpooled general-purpose multivector class does.
#[derive(Debug, Default)]
pub struct HeapWorkspace {
    allocations: u64,
}

impl HeapWorkspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Heap buffers allocated so far.
    pub fn allocation_count(&self) -> u64 {
        self.allocations
    }
}

impl Workspace for HeapWorkspace {
    type Buf = Box<Coeffs>;

    fn take(&mut self) -> Box<Coeffs> {
        self.allocations += 1;
        Box::new([0.0; BLADE_COUNT])
    }

    fn give(&mut self, _buf: Box<Coeffs>) {}

    fn gp(&self, a: &Coeffs, _sa: Support, b: &Coeffs, _sb: Support, out: &mut Coeffs) {
        gp_dense_into(a, b, out);
    }
}
